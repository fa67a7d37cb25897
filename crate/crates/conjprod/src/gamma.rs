//! Exact minimal-length conjugate-product factorizations.
//!
//! For A <= G the quantity computed here is the least k such that G is
//! a setwise product of k conjugates of A, or infinity when the normal
//! closure of A is proper. Products of conjugates correspond to words
//! over double-coset representatives: A x1 A x2 A ... x_{k-1} A, so the
//! search runs over subsets of double-coset ids. A state is the support
//! mask of the partial product; appending a representative r_j sends a
//! mask S to the union of support(i, j) over i in S, and the answer is
//! one more than the shortest word reaching the full mask.
//!
//! An independent brute-force oracle recomputes the same quantity with
//! raw bit-vector products and no support table; solver and oracle must
//! agree wherever both are defined.

use crate::bits::BitVec;
use crate::dcoset::{DcosetError, DoubleCosetTable};
use crate::group::GroupTable;
use crate::subgrp::{setwise_product, ElementSet, SubgroupError, SubgroupSet};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

/// Visited-state ceiling for the mask search.
pub const STATE_CAP: usize = 1 << 24;

#[derive(Debug, Error)]
pub enum GammaError {
    #[error(transparent)]
    Dcoset(#[from] DcosetError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error("search state space exceeded {0} masks")]
    StateSpaceExceeded(usize),
    #[error("oracle exceeded depth {0} without covering the group")]
    DepthExceeded(usize),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("no admissible base subgroup")]
    NoCandidate,
}

/// Minimal factorization length; infinity is an explicit variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gamma {
    Finite(usize),
    Infinite,
}

impl Gamma {
    pub fn finite(self) -> Option<usize> {
        match self {
            Gamma::Finite(k) => Some(k),
            Gamma::Infinite => None,
        }
    }
}

impl std::fmt::Display for Gamma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Gamma::Finite(k) => write!(f, "{}", k),
            Gamma::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    ExactSearch,
    Oracle,
    UnipotentProduct,
    SymmetricSylow,
    AlternatingSylow,
    AffineStabilizer,
    CarterInduction,
    DirectPower,
    NormalSplitting,
}

/// An ordered list of conjugators x_1..x_k certifying
/// G = A^{x_1} * ... * A^{x_k}; checkable by direct setwise product.
#[derive(Clone)]
pub struct FactorizationWitness {
    parent: Arc<GroupTable>,
    base: SubgroupSet,
    conjugators: Vec<usize>,
    provenance: Provenance,
}

impl std::fmt::Debug for FactorizationWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Witness(k={}, |A|={}, {:?})",
            self.conjugators.len(),
            self.base.order(),
            self.provenance
        )
    }
}

impl FactorizationWitness {
    pub fn new(
        parent: &Arc<GroupTable>,
        base: SubgroupSet,
        conjugators: Vec<usize>,
        provenance: Provenance,
    ) -> Self {
        assert!(Arc::ptr_eq(parent, base.parent()));
        assert!(!conjugators.is_empty());
        FactorizationWitness {
            parent: parent.clone(),
            base,
            conjugators,
            provenance,
        }
    }

    pub fn k(&self) -> usize {
        self.conjugators.len()
    }

    pub fn base(&self) -> &SubgroupSet {
        &self.base
    }

    pub fn conjugators(&self) -> &[usize] {
        &self.conjugators
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn factors(&self) -> Vec<ElementSet> {
        self.conjugators
            .iter()
            .map(|&x| self.base.conjugate(x).to_set())
            .collect()
    }

    /// The witness with one factor removed, for minimality probes.
    pub fn drop_factor(&self, idx: usize) -> FactorizationWitness {
        let mut conj = self.conjugators.clone();
        conj.remove(idx);
        FactorizationWitness {
            parent: self.parent.clone(),
            base: self.base.clone(),
            conjugators: conj,
            provenance: self.provenance,
        }
    }
}

/// Recomputes the claimed product by direct setwise products.
pub fn verify_witness(w: &FactorizationWitness) -> bool {
    let mut acc = w.base.conjugate(w.conjugators[0]).to_set();
    for &x in &w.conjugators[1..] {
        if acc.is_full() {
            // remaining factors contain the identity, product stays G
            return true;
        }
        let next = w.base.conjugate(x).to_set();
        acc = setwise_product(&acc, &next).expect("same parent");
    }
    acc.is_full()
}

/// Exact minimal length by breadth-first search over support masks.
///
/// Returns `Infinite` exactly when the normal closure of the base is
/// proper. Transitions are tried in increasing coset id and the first
/// shortest word is kept, so witnesses are deterministic.
pub fn gamma_cp_exact(
    parent: &Arc<GroupTable>,
    base: &SubgroupSet,
) -> Result<(Gamma, Option<FactorizationWitness>), GammaError> {
    let table = DoubleCosetTable::build(parent, base)?;
    gamma_cp_exact_with(parent, base, &table)
}

pub fn gamma_cp_exact_with(
    parent: &Arc<GroupTable>,
    base: &SubgroupSet,
    table: &DoubleCosetTable,
) -> Result<(Gamma, Option<FactorizationWitness>), GammaError> {
    if base.normal_closure().order() != parent.order() {
        return Ok((Gamma::Infinite, None));
    }
    let kappa = table.coset_count();
    let full: u128 = if kappa == 128 {
        !0u128
    } else {
        (1u128 << kappa) - 1
    };
    let start: u128 = 1;
    if start == full {
        let w = FactorizationWitness::new(parent, base.clone(), vec![0], Provenance::ExactSearch);
        return Ok((Gamma::Finite(1), Some(w)));
    }

    // visited set: dense bitmap when masks fit 24 bits, hashed otherwise
    let mut dense: Option<BitVec> = if kappa <= 24 {
        Some(BitVec::new(1usize << kappa))
    } else {
        None
    };
    let mut hashed: std::collections::HashSet<u128> = std::collections::HashSet::new();
    let visit = |m: u128, dense: &mut Option<BitVec>, hashed: &mut std::collections::HashSet<u128>| -> bool {
        match dense {
            Some(bits) => bits.set(m as usize),
            None => hashed.insert(m),
        }
    };

    let mut parents: HashMap<u128, (u128, u16)> = HashMap::new();
    let mut frontier: Vec<u128> = vec![start];
    visit(start, &mut dense, &mut hashed);
    let mut visited_count = 1usize;
    let mut depth = 0usize;
    loop {
        depth += 1;
        let mut next_frontier: Vec<u128> = Vec::new();
        for &state in &frontier {
            for j in 1..kappa {
                let mut next = 0u128;
                let mut rest = state;
                while rest != 0 {
                    let i = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    next |= table.support(i, j);
                }
                if next == full {
                    parents.insert(next, (state, j as u16));
                    let word = backtrack(&parents, start, full);
                    debug_assert_eq!(word.len(), depth);
                    let witness = witness_from_word(parent, base, table, &word);
                    let k = depth + 1;
                    debug_assert!(k >= 3 || base.is_whole());
                    return Ok((Gamma::Finite(k), Some(witness)));
                }
                if visit(next, &mut dense, &mut hashed) {
                    visited_count += 1;
                    if visited_count > STATE_CAP {
                        return Err(GammaError::StateSpaceExceeded(STATE_CAP));
                    }
                    parents.insert(next, (state, j as u16));
                    next_frontier.push(next);
                }
            }
        }
        if next_frontier.is_empty() {
            // unreachable for a base with full normal closure
            return Err(GammaError::StateSpaceExceeded(visited_count));
        }
        frontier = next_frontier;
    }
}

fn backtrack(parents: &HashMap<u128, (u128, u16)>, start: u128, end: u128) -> Vec<usize> {
    let mut word = Vec::new();
    let mut cur = end;
    while cur != start {
        let &(prev, j) = parents.get(&cur).expect("backtrack chain");
        word.push(j as usize);
        cur = prev;
    }
    word.reverse();
    word
}

/// Converts a word of double-coset representatives g_1..g_{k-1} into
/// conjugators: A g1 A g2 A ... = A * A^{g1^-1} * A^{(g1 g2)^-1} * ...
/// followed by a right translation that a full product absorbs.
fn witness_from_word(
    parent: &Arc<GroupTable>,
    base: &SubgroupSet,
    table: &DoubleCosetTable,
    word: &[usize],
) -> FactorizationWitness {
    let mut conjugators = vec![0usize];
    let mut prefix = 0usize;
    for &j in word {
        prefix = parent.mult(prefix, table.rep(j));
        conjugators.push(parent.inverse(prefix));
    }
    FactorizationWitness::new(parent, base.clone(), conjugators, Provenance::ExactSearch)
}

/// Brute-force reference: breadth-first search over the raw partial
/// product sets themselves, one right factor r_j * A at a time, with
/// its own double-coset representative scan and no support table.
pub fn gamma_cp_oracle(
    parent: &Arc<GroupTable>,
    base: &SubgroupSet,
    k_max: usize,
    bound: usize,
) -> Result<Gamma, GammaError> {
    if parent.order() > bound {
        return Err(SubgroupError::BoundExceeded(parent.order(), bound).into());
    }
    if base.normal_closure().order() != parent.order() {
        return Ok(Gamma::Infinite);
    }
    // independent double-coset representative scan: greedy sweep
    // marking A x A for each unmarked x
    let n = parent.order();
    let a_bits = base.bits();
    let members: Vec<usize> = base.iter().collect();
    let mut reps: Vec<usize> = Vec::new();
    let mut marked = BitVec::new(n);
    for x in 0..n {
        if marked.get(x) {
            continue;
        }
        reps.push(x);
        for &a in &members {
            let ax = parent.mult(a, x);
            for &b in &members {
                marked.set(parent.mult(ax, b));
            }
        }
    }

    let start = ElementSet::from_bits(parent, a_bits.clone());
    if start.is_full() {
        return Ok(Gamma::Finite(1));
    }
    let base_set = base.to_set();
    let mut seen: std::collections::HashSet<BitVec> = std::collections::HashSet::new();
    seen.insert(start.bits().clone());
    let mut frontier = vec![start];
    for depth in 1..k_max {
        let mut next_frontier = Vec::new();
        for s in &frontier {
            for &r in &reps[1..] {
                let translated = s.translate_right(r);
                let prod = setwise_product(&translated, &base_set).expect("same parent");
                if prod.is_full() {
                    return Ok(Gamma::Finite(depth + 1));
                }
                if seen.insert(prod.bits().clone()) {
                    next_frontier.push(prod);
                }
            }
        }
        if next_frontier.is_empty() {
            return Err(GammaError::DepthExceeded(k_max));
        }
        frontier = next_frontier;
    }
    Err(GammaError::DepthExceeded(k_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::Element;
    use crate::group::enumerate_group;
    use crate::perm::Perm;
    use crate::subgrp::sylow_subgroup;

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
    fn whole_group_is_one_factor() {
        let s3 = sym(3);
        let (g, w) = gamma_cp_exact(&s3, &SubgroupSet::whole(&s3)).unwrap();
        assert_eq!(g, Gamma::Finite(1));
        assert!(verify_witness(&w.unwrap()));
    }

    #[test]
    fn a5_by_point_stabilizer_is_three() {
        let a5 = alt(5);
        let mut bits = BitVec::new(60);
        for i in 0..60 {
            if a5.domain().code_to_perm(a5.code_of(i)).apply(4) == 4 {
                bits.set(i);
            }
        }
        let a4 = SubgroupSet::from_bits_checked(&a5, bits).unwrap();
        let (g, w) = gamma_cp_exact(&a5, &a4).unwrap();
        assert_eq!(g, Gamma::Finite(3));
        let w = w.unwrap();
        assert!(verify_witness(&w));
        // dropping any factor from a minimal witness breaks it
        for i in 0..3 {
            assert!(!verify_witness(&w.drop_factor(i)));
        }
        // oracle agrees
        assert_eq!(
            gamma_cp_oracle(&a5, &a4, 6, 2000).unwrap(),
            Gamma::Finite(3)
        );
    }

    #[test]
    fn s3_by_c2_is_three() {
        let s3 = sym(3);
        let c2 = SubgroupSet::closure(&s3, &[idx_of(&s3, &Perm::from_cycles(3, &[vec![0, 1]]))]);
        let (g, w) = gamma_cp_exact(&s3, &c2).unwrap();
        assert_eq!(g, Gamma::Finite(3));
        assert!(verify_witness(&w.unwrap()));
        assert_eq!(gamma_cp_oracle(&s3, &c2, 6, 2000).unwrap(), Gamma::Finite(3));
    }

    #[test]
    fn a4_by_c3_is_three() {
        let a4 = alt(4);
        let c3 = SubgroupSet::closure(&a4, &[idx_of(&a4, &Perm::from_cycles(4, &[vec![0, 1, 2]]))]);
        let (g, _) = gamma_cp_exact(&a4, &c3).unwrap();
        assert_eq!(g, Gamma::Finite(3));
        assert_eq!(gamma_cp_oracle(&a4, &c3, 6, 2000).unwrap(), Gamma::Finite(3));
    }

    #[test]
    fn normal_proper_subgroup_gives_infinity() {
        let a4 = alt(4);
        // V4 is normal in A4
        let v4 = sylow_subgroup(&a4, 2).unwrap();
        assert!(v4.is_normal());
        let (g, w) = gamma_cp_exact(&a4, &v4).unwrap();
        assert_eq!(g, Gamma::Infinite);
        assert!(w.is_none());
        assert_eq!(gamma_cp_oracle(&a4, &v4, 6, 2000).unwrap(), Gamma::Infinite);
    }

    #[test]
    fn conjugation_invariance() {
        use rand::{Rng, SeedableRng};
        let s4 = sym(4);
        let d8 = sylow_subgroup(&s4, 2).unwrap();
        let (g0, _) = gamma_cp_exact(&s4, &d8).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let x = rng.gen_range(0..24);
            let (g1, _) = gamma_cp_exact(&s4, &d8.conjugate(x)).unwrap();
            assert_eq!(g0, g1);
        }
    }

    #[test]
    fn oracle_bound_respected() {
        let s5 = sym(5);
        let c2 = SubgroupSet::closure(&s5, &[idx_of(&s5, &Perm::from_cycles(5, &[vec![0, 1]]))]);
        assert!(matches!(
            gamma_cp_oracle(&s5, &c2, 10, 100),
            Err(GammaError::Subgroup(SubgroupError::BoundExceeded(120, 100)))
        ));
    }

    #[test]
    fn solver_oracle_agree_on_s4_nilpotent_pairs() {
        let s4 = sym(4);
        let subs =
            crate::subgrp::enumerate_subgroups(&s4, crate::subgrp::SubgroupFilter::Nilpotent, true, 2000)
                .unwrap();
        let mut compared = 0;
        for s in &subs {
            if s.order() == 1 {
                continue;
            }
            let (exact, w) = gamma_cp_exact(&s4, s).unwrap();
            let oracle = gamma_cp_oracle(&s4, s, 8, 2000).unwrap();
            assert_eq!(exact, oracle, "disagreement on |A|={}", s.order());
            if let Some(w) = w {
                assert!(verify_witness(&w));
            }
            compared += 1;
        }
        assert!(compared >= 5);
    }
}
