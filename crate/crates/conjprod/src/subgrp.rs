//! Subgroups and element sets as membership bit-vectors over a parent
//! group table, with setwise products, conjugation, normalizers, Sylow
//! subgroups, solvability predicates and exhaustive enumeration of
//! nilpotent or solvable subgroups.

use crate::bits::BitVec;
use crate::group::{generating_set_in, is_closed_subgroup, GroupTable};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SubgroupError {
    #[error("sets belong to different parent tables")]
    ParentMismatch,
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error("input is not a p-group")]
    NotPGroup,
    #[error("prime {0} does not divide the group order")]
    PrimeDoesNotDivide(u64),
    #[error("group order {0} exceeds the enumeration bound {1}")]
    BoundExceeded(usize, usize),
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// An arbitrary subset of a group, no closure requirement.
#[derive(Clone)]
pub struct ElementSet {
    parent: Arc<GroupTable>,
    bits: BitVec,
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ElementSet(|{}| of {})", self.count(), self.parent.order())
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.bits == other.bits
    }
}
impl Eq for ElementSet {}

impl ElementSet {
    pub fn empty(parent: &Arc<GroupTable>) -> Self {
        ElementSet {
            parent: parent.clone(),
            bits: BitVec::new(parent.order()),
        }
    }

    pub fn full(parent: &Arc<GroupTable>) -> Self {
        ElementSet {
            parent: parent.clone(),
            bits: BitVec::full(parent.order()),
        }
    }

    pub fn from_indices(parent: &Arc<GroupTable>, idx: &[usize]) -> Self {
        let mut bits = BitVec::new(parent.order());
        for &i in idx {
            bits.set(i);
        }
        ElementSet {
            parent: parent.clone(),
            bits,
        }
    }

    pub fn from_bits(parent: &Arc<GroupTable>, bits: BitVec) -> Self {
        assert_eq!(bits.len(), parent.order());
        ElementSet {
            parent: parent.clone(),
            bits,
        }
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn count(&self) -> usize {
        self.bits.count()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn insert(&mut self, i: usize) -> bool {
        self.bits.set(i)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        debug_assert!(Arc::ptr_eq(&self.parent, &other.parent));
        self.bits.union_with(&other.bits);
    }

    /// g^-1 * S * g, same cardinality.
    pub fn conjugate(&self, g: usize) -> ElementSet {
        let p = &self.parent;
        let ginv = p.inverse(g);
        let mut bits = BitVec::new(p.order());
        for x in self.bits.iter_ones() {
            bits.set(p.mult(p.mult(ginv, x), g));
        }
        ElementSet {
            parent: p.clone(),
            bits,
        }
    }

    /// S * g
    pub fn translate_right(&self, g: usize) -> ElementSet {
        let p = &self.parent;
        let mut bits = BitVec::new(p.order());
        for x in self.bits.iter_ones() {
            bits.set(p.mult(x, g));
        }
        ElementSet {
            parent: p.clone(),
            bits,
        }
    }

    /// g * S
    pub fn translate_left(&self, g: usize) -> ElementSet {
        let p = &self.parent;
        let mut bits = BitVec::new(p.order());
        for x in self.bits.iter_ones() {
            bits.set(p.mult(g, x));
        }
        ElementSet {
            parent: p.clone(),
            bits,
        }
    }
}

/// Setwise product {a*b : a in x, b in y}.
///
/// Union over a in x of the translated set a*y, traversed in increasing
/// index order; exits early once the accumulator covers the whole
/// group, which is the common case in verification products.
pub fn setwise_product(x: &ElementSet, y: &ElementSet) -> Result<ElementSet, SubgroupError> {
    if !Arc::ptr_eq(&x.parent, &y.parent) {
        return Err(SubgroupError::ParentMismatch);
    }
    let p = &x.parent;
    let n = p.order();
    let ys: Vec<usize> = y.bits.iter_ones().collect();
    let mut acc = BitVec::new(n);
    let mut count = 0usize;
    'rows: for a in x.bits.iter_ones() {
        for &b in &ys {
            if acc.set(p.mult(a, b)) {
                count += 1;
                if count == n {
                    break 'rows;
                }
            }
        }
    }
    Ok(ElementSet {
        parent: p.clone(),
        bits: acc,
    })
}

/// A verified subgroup: contains the identity and is closed under
/// multiplication and inversion.
#[derive(Clone, PartialEq, Eq)]
pub struct SubgroupSet {
    set: ElementSet,
    order: usize,
}

impl std::fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SubgroupSet(|{}| of {})", self.order, self.set.parent.order())
    }
}

impl SubgroupSet {
    /// Least subgroup containing the given element indices.
    pub fn closure(parent: &Arc<GroupTable>, gens: &[usize]) -> SubgroupSet {
        let mut bits = BitVec::new(parent.order());
        bits.set(0);
        let mut order = 1usize;
        let mut stack: Vec<usize> = vec![0];
        // close under right multiplication by the generators and their
        // inverses; containing 1 this yields the generated subgroup
        let mut step: Vec<usize> = Vec::new();
        for &g in gens {
            step.push(g);
            step.push(parent.inverse(g));
        }
        while let Some(x) = stack.pop() {
            for &g in &step {
                let y = parent.mult(x, g);
                if bits.set(y) {
                    order += 1;
                    stack.push(y);
                }
            }
        }
        SubgroupSet {
            set: ElementSet {
                parent: parent.clone(),
                bits,
            },
            order,
        }
    }

    pub fn trivial(parent: &Arc<GroupTable>) -> SubgroupSet {
        SubgroupSet::closure(parent, &[])
    }

    pub fn whole(parent: &Arc<GroupTable>) -> SubgroupSet {
        SubgroupSet {
            set: ElementSet::full(parent),
            order: parent.order(),
        }
    }

    pub fn from_bits_checked(
        parent: &Arc<GroupTable>,
        bits: BitVec,
    ) -> Result<SubgroupSet, SubgroupError> {
        if !is_closed_subgroup(parent, &bits) {
            return Err(SubgroupError::NotSubgroup);
        }
        let order = bits.count();
        Ok(SubgroupSet {
            set: ElementSet {
                parent: parent.clone(),
                bits,
            },
            order,
        })
    }

    /// Wraps bits already known to form a subgroup (e.g. images of
    /// verified subgroups under automorphisms).
    pub(crate) fn from_bits_unchecked(parent: &Arc<GroupTable>, bits: BitVec) -> SubgroupSet {
        debug_assert!(is_closed_subgroup(parent, &bits));
        let order = bits.count();
        SubgroupSet {
            set: ElementSet {
                parent: parent.clone(),
                bits,
            },
            order,
        }
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.set.parent
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits(&self) -> &BitVec {
        &self.set.bits
    }

    pub fn as_set(&self) -> &ElementSet {
        &self.set
    }

    pub fn to_set(&self) -> ElementSet {
        self.set.clone()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set.contains(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.iter()
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.set.parent.order()
    }

    pub fn generating_set(&self) -> Vec<usize> {
        generating_set_in(&self.set.parent, &self.set.bits)
    }

    pub fn conjugate(&self, g: usize) -> SubgroupSet {
        let set = self.set.conjugate(g);
        SubgroupSet {
            set,
            order: self.order,
        }
    }

    pub fn contains_subgroup(&self, other: &SubgroupSet) -> bool {
        other.set.bits.is_subset_of(&self.set.bits)
    }

    /// N_G(S) = {g : S^g = S}, computed by scanning all of G.
    pub fn normalizer(&self) -> SubgroupSet {
        self.normalizer_in_members(None)
    }

    /// Normalizer intersected with an ambient subgroup (scan restricted
    /// to its members).
    pub fn normalizer_in(&self, ambient: &SubgroupSet) -> SubgroupSet {
        self.normalizer_in_members(Some(ambient.bits()))
    }

    fn normalizer_in_members(&self, ambient: Option<&BitVec>) -> SubgroupSet {
        let p = &self.set.parent;
        let gens = self.generating_set();
        let mut bits = BitVec::new(p.order());
        let candidates: Box<dyn Iterator<Item = usize>> = match ambient {
            Some(a) => Box::new(a.iter_ones()),
            None => Box::new(0..p.order()),
        };
        for g in candidates {
            let ginv = p.inverse(g);
            let ok = gens
                .iter()
                .all(|&m| self.set.bits.get(p.mult(p.mult(ginv, m), g)));
            if ok {
                bits.set(g);
            }
        }
        SubgroupSet::from_bits_unchecked(p, bits)
    }

    /// C_G(S) = {g : gs = sg for all s in S}.
    pub fn centralizer(&self) -> SubgroupSet {
        let p = &self.set.parent;
        let gens = self.generating_set();
        let mut bits = BitVec::new(p.order());
        for g in 0..p.order() {
            if gens.iter().all(|&m| p.mult(g, m) == p.mult(m, g)) {
                bits.set(g);
            }
        }
        SubgroupSet::from_bits_unchecked(p, bits)
    }

    /// Largest normal subgroup of G contained in S: the intersection of
    /// all conjugates.
    pub fn core(&self) -> SubgroupSet {
        let p = &self.set.parent;
        let mut core = self.set.bits.clone();
        for orbit_rep in self.conjugates() {
            core.intersect_with(orbit_rep.bits());
        }
        SubgroupSet::from_bits_unchecked(p, core)
    }

    /// Least normal subgroup of G containing S.
    pub fn normal_closure(&self) -> SubgroupSet {
        let p = &self.set.parent;
        let ggens: Vec<usize> = p.generators().iter().map(|&g| g as usize).collect();
        let mut seeds: Vec<usize> = Vec::new();
        let mut seen = BitVec::new(p.order());
        let mut stack: Vec<usize> = Vec::new();
        for m in self.generating_set() {
            if seen.set(m) {
                stack.push(m);
            }
        }
        while let Some(x) = stack.pop() {
            seeds.push(x);
            for &g in &ggens {
                let y = p.conj(x, g);
                if seen.set(y) {
                    stack.push(y);
                }
            }
        }
        closure_greedy(p, &seeds)
    }

    /// Full conjugation orbit of this subgroup, deduplicated.
    pub fn conjugates(&self) -> Vec<SubgroupSet> {
        let p = &self.set.parent;
        let ggens: Vec<usize> = p.generators().iter().map(|&g| g as usize).collect();
        let mut seen: Vec<BitVec> = vec![self.set.bits.clone()];
        let mut out = vec![self.clone()];
        let mut cursor = 0;
        while cursor < out.len() {
            let cur = out[cursor].clone();
            cursor += 1;
            for &g in &ggens {
                let c = cur.conjugate(g);
                if !seen.contains(c.bits()) {
                    seen.push(c.bits().clone());
                    out.push(c);
                }
            }
        }
        out
    }

    /// The conjugate with the lexicographically least sorted index
    /// list; a canonical representative of the conjugacy class.
    pub fn least_conjugate(&self) -> SubgroupSet {
        let mut best = self.clone();
        for c in self.conjugates() {
            if c.bits().cmp_index_lex(best.bits()) == std::cmp::Ordering::Less {
                best = c;
            }
        }
        best
    }

    pub fn is_normal(&self) -> bool {
        crate::group::is_normal(&self.set.parent, &self.set.bits)
    }

    /// All Sylow subgroups normal.
    pub fn is_nilpotent(&self) -> bool {
        let gens = self.generating_set();
        let p = &self.set.parent;
        for (q, _) in factorize(self.order as u64) {
            let syl = sylow_in(p, self, q).expect("prime divides subgroup order");
            let sgens = syl.generating_set();
            let normal = gens.iter().all(|&g| {
                let ginv = p.inverse(g);
                sgens
                    .iter()
                    .all(|&m| syl.contains(p.mult(p.mult(ginv, m), g)))
            });
            if !normal {
                return false;
            }
        }
        true
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series()
            .last()
            .map(|d| d.order() == 1)
            .unwrap_or(true)
    }

    /// Strictly descending derived series S >= S' >= S'' ... until it
    /// stabilizes; ends with the trivial subgroup exactly when solvable.
    pub fn derived_series(&self) -> Vec<SubgroupSet> {
        let mut chain = vec![self.clone()];
        loop {
            let cur = chain.last().unwrap();
            let next = cur.derived_subgroup();
            if next.order() == cur.order() {
                break;
            }
            let done = next.order() == 1;
            chain.push(next);
            if done {
                break;
            }
        }
        chain
    }

    /// Commutator subgroup [S, S]: generated by the commutators of all
    /// members with a generating set, closed under conjugation by S.
    pub fn derived_subgroup(&self) -> SubgroupSet {
        let p = &self.set.parent;
        let gens = self.generating_set();
        let mut seeds: Vec<usize> = Vec::new();
        let mut seen = BitVec::new(p.order());
        for x in self.set.bits.iter_ones() {
            for &g in &gens {
                let xg = p.mult(x, g);
                let gx = p.mult(g, x);
                let c = p.mult(p.inverse(gx), xg);
                if seen.set(c) {
                    seeds.push(c);
                }
            }
        }
        // conjugation orbit of the seeds under S
        let mut cursor = 0;
        while cursor < seeds.len() {
            let x = seeds[cursor];
            cursor += 1;
            for &g in &gens {
                let y = p.conj(x, g);
                if seen.set(y) {
                    seeds.push(y);
                }
            }
        }
        closure_greedy(p, &seeds)
    }
}

/// Subgroup generated by a (possibly large) seed list; only seeds
/// outside the running closure become generators.
fn closure_greedy(parent: &Arc<GroupTable>, seeds: &[usize]) -> SubgroupSet {
    let mut gens: Vec<usize> = Vec::new();
    let mut cur = SubgroupSet::trivial(parent);
    for &s in seeds {
        if !cur.contains(s) {
            gens.push(s);
            cur = SubgroupSet::closure(parent, &gens);
        }
    }
    cur
}

fn p_prime_part(mut n: u64, p: u64) -> u64 {
    while n % p == 0 {
        n /= p;
    }
    n
}

/// A Sylow p-subgroup of the whole group.
pub fn sylow_subgroup(parent: &Arc<GroupTable>, p: u64) -> Result<SubgroupSet, SubgroupError> {
    sylow_in(parent, &SubgroupSet::whole(parent), p)
}

/// A Sylow p-subgroup of the ambient subgroup, found by normalizer
/// ascent within it.
pub fn sylow_in(
    parent: &Arc<GroupTable>,
    ambient: &SubgroupSet,
    p: u64,
) -> Result<SubgroupSet, SubgroupError> {
    let n = ambient.order() as u64;
    if n % p != 0 {
        return Err(SubgroupError::PrimeDoesNotDivide(p));
    }
    let coprime = p_prime_part(n, p);
    let target = n / coprime;
    // seed: the first nontrivial p-element power
    let mut seed = 0usize;
    for x in ambient.iter() {
        let y = parent.power(x, coprime);
        if y != 0 {
            seed = y;
            break;
        }
    }
    let start = SubgroupSet::closure(parent, if seed == 0 { &[] } else { std::slice::from_ref(&seed) });
    sylow_ascend(parent, ambient, start, p, target, coprime)
}

/// Grows a p-subgroup to a full Sylow p-subgroup of the ambient group
/// by normalizer ascent; the result contains the input.
pub fn sylow_over(
    parent: &Arc<GroupTable>,
    p_subgroup: &SubgroupSet,
    p: u64,
) -> Result<SubgroupSet, SubgroupError> {
    sylow_over_in(parent, &SubgroupSet::whole(parent), p_subgroup, p)
}

pub fn sylow_over_in(
    parent: &Arc<GroupTable>,
    ambient: &SubgroupSet,
    p_subgroup: &SubgroupSet,
    p: u64,
) -> Result<SubgroupSet, SubgroupError> {
    let k = p_subgroup.order() as u64;
    if factorize(k).iter().any(|&(q, _)| q != p) {
        return Err(SubgroupError::NotPGroup);
    }
    if !ambient.contains_subgroup(p_subgroup) {
        return Err(SubgroupError::NotSubgroup);
    }
    let n = ambient.order() as u64;
    let coprime = p_prime_part(n, p);
    let target = n / coprime;
    sylow_ascend(parent, ambient, p_subgroup.clone(), p, target, coprime)
}

fn sylow_ascend(
    parent: &Arc<GroupTable>,
    ambient: &SubgroupSet,
    mut cur: SubgroupSet,
    p: u64,
    target: u64,
    coprime: u64,
) -> Result<SubgroupSet, SubgroupError> {
    while (cur.order() as u64) < target {
        let norm = cur.normalizer_in(ambient);
        let mut extended = false;
        for x in norm.iter() {
            if cur.contains(x) {
                continue;
            }
            // x^coprime is a p-element; outside cur it extends cur to a
            // strictly larger p-group inside the normalizer
            let y = parent.power(x, coprime);
            if y != 0 && !cur.contains(y) {
                let mut gens = cur.generating_set();
                gens.push(y);
                cur = SubgroupSet::closure(parent, &gens);
                extended = true;
                break;
            }
        }
        if !extended {
            // cannot happen for a proper p-subgroup of a finite group
            return Err(SubgroupError::NotPGroup);
        }
        let _ = p;
    }
    Ok(cur)
}

/// Filter for exhaustive subgroup enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupFilter {
    Nilpotent,
    Solvable,
}

impl SubgroupFilter {
    fn passes(&self, s: &SubgroupSet) -> bool {
        match self {
            SubgroupFilter::Nilpotent => s.is_nilpotent(),
            SubgroupFilter::Solvable => s.is_solvable(),
        }
    }
}

/// Exhaustive enumeration of nilpotent or solvable subgroups by
/// breadth-first cyclic prime extension: each found subgroup K is
/// extended by elements x of its normalizer with x^q in K for a prime
/// q. Every maximal subgroup of a nilpotent group, and every
/// composition step of a solvable group, is normal of prime index, so
/// walking prime extensions reaches every subgroup passing the filter.
///
/// Returns class representatives (lexicographically least conjugates)
/// when `up_to_conjugacy` is set, the full conjugation-closed list
/// otherwise.
pub fn enumerate_subgroups(
    parent: &Arc<GroupTable>,
    filter: SubgroupFilter,
    up_to_conjugacy: bool,
    bound: usize,
) -> Result<Vec<SubgroupSet>, SubgroupError> {
    if parent.order() > bound {
        return Err(SubgroupError::BoundExceeded(parent.order(), bound));
    }
    let mut reps: Vec<SubgroupSet> = Vec::new();
    let mut seen: std::collections::HashMap<u128, Vec<usize>> = std::collections::HashMap::new();
    let push_candidate =
        |s: SubgroupSet, reps: &mut Vec<SubgroupSet>, seen: &mut std::collections::HashMap<u128, Vec<usize>>| -> bool {
            let canon = s.least_conjugate();
            let key = canon.bits().digest();
            if let Some(ids) = seen.get(&key) {
                if ids.iter().any(|&i| reps[i].bits() == canon.bits()) {
                    return false;
                }
            }
            seen.entry(key).or_default().push(reps.len());
            reps.push(canon);
            true
        };

    let trivial = SubgroupSet::trivial(parent);
    push_candidate(trivial, &mut reps, &mut seen);
    let mut cursor = 0usize;
    while cursor < reps.len() {
        let k = reps[cursor].clone();
        cursor += 1;
        let norm = k.normalizer();
        for x in norm.iter() {
            if k.contains(x) {
                continue;
            }
            // order of x modulo K
            let mut y = x;
            let mut m = 1u64;
            while !k.contains(y) {
                y = parent.mult(y, x);
                m += 1;
            }
            if factorize(m).len() != 1 || factorize(m)[0].1 != 1 {
                continue; // not prime; the prime-power step below x reaches it anyway
            }
            let mut gens = k.generating_set();
            gens.push(x);
            let ext = SubgroupSet::closure(parent, &gens);
            debug_assert_eq!(ext.order() as u64, m * k.order() as u64);
            if filter.passes(&ext) {
                push_candidate(ext, &mut reps, &mut seen);
            }
        }
    }
    reps.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.bits().cmp_index_lex(b.bits()))
    });
    if up_to_conjugacy {
        return Ok(reps);
    }
    // expand each class orbit
    let mut all: Vec<SubgroupSet> = Vec::new();
    let mut seen_full: std::collections::HashSet<u128> = std::collections::HashSet::new();
    for r in &reps {
        for c in r.conjugates() {
            if seen_full.insert(c.bits().digest()) {
                all.push(c);
            }
        }
    }
    all.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.bits().cmp_index_lex(b.bits()))
    });
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::Element;
    use crate::group::enumerate_group;
    use crate::perm::Perm;

    fn sym(n: usize) -> Arc<GroupTable> {
        let mut gens = vec![Element::from_perm(&Perm::from_cycles(n, &[vec![0, 1]])).unwrap()];
        if n > 2 {
            gens.push(Element::from_perm(&Perm::from_cycles(n, &[(0..n).collect()])).unwrap());
        }
        enumerate_group(&gens, 1 << 24).unwrap()
    }

    fn alt(n: usize) -> Arc<GroupTable> {
        let mut gens = vec![Element::from_perm(&Perm::from_cycles(n, &[vec![0, 1, 2]])).unwrap()];
        if n > 3 {
            let big: Vec<usize> = if n % 2 == 1 {
                (0..n).collect()
            } else {
                (1..n).collect()
            };
            gens.push(Element::from_perm(&Perm::from_cycles(n, &[big])).unwrap());
        }
        enumerate_group(&gens, 1 << 24).unwrap()
    }

    fn idx_of(g: &Arc<GroupTable>, p: &Perm) -> usize {
        g.index_of_code(g.domain().perm_to_code(p)).unwrap()
    }

    #[test]
    fn closure_orders() {
        let s3 = sym(3);
        let c3 = SubgroupSet::closure(&s3, &[idx_of(&s3, &Perm::from_cycles(3, &[vec![0, 1, 2]]))]);
        assert_eq!(c3.order(), 3);

        let s4 = sym(4);
        let v = SubgroupSet::closure(
            &s4,
            &[
                idx_of(&s4, &Perm::from_cycles(4, &[vec![0, 1]])),
                idx_of(&s4, &Perm::from_cycles(4, &[vec![2, 3]])),
            ],
        );
        assert_eq!(v.order(), 4);
    }

    #[test]
    fn subgroup_product_idempotent() {
        let s4 = sym(4);
        let a = SubgroupSet::closure(&s4, &[idx_of(&s4, &Perm::from_cycles(4, &[vec![0, 1, 2]]))]);
        let prod = setwise_product(a.as_set(), a.as_set()).unwrap();
        assert_eq!(prod.bits(), a.bits());
    }

    #[test]
    fn conjugate_preserves_size_and_roundtrips() {
        let s4 = sym(4);
        let a = SubgroupSet::closure(&s4, &[idx_of(&s4, &Perm::from_cycles(4, &[vec![0, 1]]))]);
        let g = idx_of(&s4, &Perm::from_cycles(4, &[vec![0, 2, 3]]));
        let c = a.conjugate(g);
        assert_eq!(c.order(), a.order());
        assert_eq!(a.conjugate(0).bits(), a.bits());
        let back = c.conjugate(s4.inverse(g));
        assert_eq!(back.bits(), a.bits());
    }

    #[test]
    fn normalizer_of_sylow2_in_s4_is_itself() {
        let s4 = sym(4);
        let d8 = sylow_subgroup(&s4, 2).unwrap();
        assert_eq!(d8.order(), 8);
        let n = d8.normalizer();
        assert_eq!(n.bits(), d8.bits());
    }

    #[test]
    fn core_of_point_stabilizer_trivial() {
        let s5 = sym(5);
        let mut bits = BitVec::new(120);
        for i in 0..120 {
            if s5.domain().code_to_perm(s5.code_of(i)).apply(4) == 4 {
                bits.set(i);
            }
        }
        let s4 = SubgroupSet::from_bits_checked(&s5, bits).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.core().order(), 1);
    }

    #[test]
    fn normal_closure_of_a4_in_a5() {
        let a5 = alt(5);
        assert_eq!(a5.order(), 60);
        let mut bits = BitVec::new(60);
        for i in 0..60 {
            if a5.domain().code_to_perm(a5.code_of(i)).apply(4) == 4 {
                bits.set(i);
            }
        }
        let a4 = SubgroupSet::from_bits_checked(&a5, bits).unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.normal_closure().order(), 60);
    }

    #[test]
    fn sylow_over_four_cycle_in_s5() {
        let s5 = sym(5);
        let c4 = SubgroupSet::closure(
            &s5,
            &[idx_of(&s5, &Perm::from_cycles(5, &[vec![0, 1, 2, 3]]))],
        );
        assert_eq!(c4.order(), 4);
        let p = sylow_over(&s5, &c4, 2).unwrap();
        assert_eq!(p.order(), 8);
        assert!(p.contains_subgroup(&c4));
    }

    #[test]
    fn sylow_over_rejects_non_p_group() {
        let s5 = sym(5);
        let s3ish = SubgroupSet::closure(
            &s5,
            &[
                idx_of(&s5, &Perm::from_cycles(5, &[vec![0, 1]])),
                idx_of(&s5, &Perm::from_cycles(5, &[vec![0, 1, 2]])),
            ],
        );
        assert!(matches!(
            sylow_over(&s5, &s3ish, 2),
            Err(SubgroupError::NotPGroup)
        ));
    }

    #[test]
    fn predicates() {
        let s4 = sym(4);
        let d8 = sylow_subgroup(&s4, 2).unwrap();
        assert!(d8.is_nilpotent());
        let whole = SubgroupSet::whole(&s4);
        assert!(whole.is_solvable());
        assert!(!whole.is_nilpotent());
        let a5 = alt(5);
        assert!(!SubgroupSet::whole(&a5).is_solvable());
    }

    #[test]
    fn derived_series_s4() {
        let s4 = sym(4);
        let chain = SubgroupSet::whole(&s4).derived_series();
        let orders: Vec<usize> = chain.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
    }

    #[test]
    fn nilpotent_subgroups_of_s3() {
        let s3 = sym(3);
        let subs = enumerate_subgroups(&s3, SubgroupFilter::Nilpotent, false, 2000).unwrap();
        // {1}, three C2, C3 (S3 itself is not nilpotent)
        assert_eq!(subs.len(), 5);
        let mut orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3]);
    }

    #[test]
    fn solvable_subgroups_of_a5_hit_known_maximals() {
        let a5 = alt(5);
        let subs = enumerate_subgroups(&a5, SubgroupFilter::Solvable, true, 2000).unwrap();
        let orders: std::collections::HashSet<usize> = subs.iter().map(|s| s.order()).collect();
        for expect in [12, 10, 6] {
            assert!(orders.contains(&expect), "missing order {}", expect);
        }
        assert!(!orders.contains(&60));
    }

    #[test]
    fn cyclic_group_all_subgroups_nilpotent() {
        let c12 = enumerate_group(
            &[Element::from_perm(&Perm::from_cycles(12, &[(0..12).collect()])).unwrap()],
            100,
        )
        .unwrap();
        let subs = enumerate_subgroups(&c12, SubgroupFilter::Nilpotent, false, 2000).unwrap();
        // subgroups of C12: one per divisor of 12
        assert_eq!(subs.len(), 6);
    }

    #[test]
    fn sylow_counts() {
        let s4 = sym(4);
        for p in [2u64, 3] {
            let syl = sylow_subgroup(&s4, p).unwrap();
            let count = syl.conjugates().len() as u64;
            assert_eq!(count % p, 1);
            assert_eq!(24 % (count * syl.order() as u64), 0);
        }
    }

    #[test]
    fn product_parent_mismatch() {
        let a = sym(3);
        let b = sym(3);
        let x = ElementSet::full(&a);
        let y = ElementSet::full(&b);
        assert!(matches!(
            setwise_product(&x, &y),
            Err(SubgroupError::ParentMismatch)
        ));
    }
}
