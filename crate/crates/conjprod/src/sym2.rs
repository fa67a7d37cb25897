//! Sylow 2-subgroups of symmetric and alternating groups, and the
//! constructive factorizations of S_n and A_n into boundedly many of
//! them.
//!
//! A Sylow 2-subgroup of S_n is the full stabilizer of a binary block
//! forest: one complete binary tree per summand in the binary expansion
//! of n. Trees are stored as ordered leaf sequences; the nodes of a
//! tree are its aligned power-of-two leaf ranges. This gives direct
//! constructions of a Sylow 2-subgroup containing any given 2-subgroup
//! (adapt a forest to its orbits and block systems), explicit
//! conjugators between any two such Sylows, and cheap membership
//! certificates, all without enumerating S_n.

use crate::gamma::{FactorizationWitness, Provenance};
use crate::group::GroupTable;
use crate::perm::Perm;
use crate::subgrp::SubgroupSet;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Sym2Error {
    #[error("degree {0} is out of range for this construction")]
    UnsupportedDegree(usize),
    #[error("generators do not lie in a 2-subgroup: {0}")]
    NotA2Subgroup(String),
    #[error("element does not belong to the expected group table")]
    TableMismatch,
}

/// A binary block forest on {0..n-1}: disjoint complete binary trees
/// with pairwise distinct power-of-two sizes covering every point. The
/// stabilizer of the forest (all permutations mapping every aligned
/// leaf range onto an aligned leaf range) is a Sylow 2-subgroup of S_n.
#[derive(Clone, Debug)]
pub struct Forest {
    degree: usize,
    /// Leaf sequences ordered by decreasing length.
    trees: Vec<Vec<usize>>,
}

fn is_pow2(x: usize) -> bool {
    x != 0 && x & (x - 1) == 0
}

impl Forest {
    /// Consecutive point ranges following the binary expansion of n.
    pub fn standard(n: usize) -> Forest {
        assert!(n >= 1);
        let mut trees = Vec::new();
        let mut base = 0usize;
        for bit in (0..usize::BITS).rev() {
            let size = 1usize << bit;
            if n & size != 0 {
                trees.push((base..base + size).collect());
                base += size;
            }
        }
        Forest { degree: n, trees }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn trees(&self) -> &[Vec<usize>] {
        &self.trees
    }

    /// log2 of the stabilizer order: sum over trees of (size - 1).
    pub fn stabilizer_order_log2(&self) -> u32 {
        self.trees.iter().map(|t| (t.len() - 1) as u32).sum()
    }

    /// A forest whose stabilizer contains the given 2-subgroup.
    ///
    /// Orbits of the subgroup become subtrees via invariant pair block
    /// systems; equal-size trees are then joined pairwise until all
    /// sizes are distinct, which lands exactly on the binary expansion
    /// of n. Errors if the generated group is not a 2-group.
    pub fn adapted_to(degree: usize, gens: &[Perm]) -> Result<Forest, Sym2Error> {
        for g in gens {
            if g.degree() != degree {
                return Err(Sym2Error::UnsupportedDegree(g.degree()));
            }
        }
        // orbits
        let mut orbit_of = vec![usize::MAX; degree];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..degree {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orb = vec![start];
            orbit_of[start] = id;
            let mut cursor = 0;
            while cursor < orb.len() {
                let x = orb[cursor];
                cursor += 1;
                for g in gens {
                    let y = g.apply(x);
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = id;
                        orb.push(y);
                    }
                }
            }
            orb.sort_unstable();
            orbits.push(orb);
        }
        let mut trees: Vec<Vec<usize>> = Vec::new();
        for orb in &orbits {
            if !is_pow2(orb.len()) {
                return Err(Sym2Error::NotA2Subgroup(format!(
                    "orbit size {} is not a power of two",
                    orb.len()
                )));
            }
            let action: Vec<Vec<usize>> = gens
                .iter()
                .map(|g| orb.iter().map(|&x| pos_of(orb, g.apply(x))).collect())
                .collect();
            let local = build_tree_transitive(orb.len(), &action)?;
            trees.push(local.into_iter().map(|i| orb[i]).collect());
        }
        // join equal sizes, smallest-min-leaf first for determinism
        loop {
            trees.sort_by_key(|t| (std::cmp::Reverse(t.len()), t.iter().min().copied()));
            let mut joined = false;
            for i in 0..trees.len().saturating_sub(1) {
                if trees[i].len() == trees[i + 1].len() {
                    let right = trees.remove(i + 1);
                    trees[i].extend(right);
                    joined = true;
                    break;
                }
            }
            if !joined {
                break;
            }
        }
        let forest = Forest { degree, trees };
        debug_assert_eq!(forest.stabilizer_order_log2(), nu2_factorial(degree));
        // final certificate: every generator stabilizes the forest
        for g in gens {
            if !forest.contains(g) {
                return Err(Sym2Error::NotA2Subgroup(format!(
                    "generator {} does not stabilize the adapted forest",
                    g
                )));
            }
        }
        Ok(forest)
    }

    /// Generators of the forest stabilizer: per tree, the positional
    /// half-swaps down the left spine.
    pub fn stabilizer_gens(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        for tree in &self.trees {
            // half-swaps down the left spine; each swap conjugates the
            // right-hand copy onto the left one, so these generate the
            // full iterated wreath stabilizer
            let mut len = tree.len();
            while len >= 2 {
                let mut images: Vec<u8> = (0..self.degree as u8).collect();
                for i in 0..len / 2 {
                    let a = tree[i];
                    let b = tree[len / 2 + i];
                    images[a] = b as u8;
                    images[b] = a as u8;
                }
                out.push(Perm::from_images(images));
                len /= 2;
            }
        }
        out
    }

    /// Forest-stabilizer membership: the image of every aligned leaf
    /// range is again an aligned leaf range of the same tree.
    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        for tree in &self.trees {
            let mut size = tree.len();
            while size >= 2 {
                let mut node_sets: std::collections::HashSet<Vec<usize>> =
                    std::collections::HashSet::new();
                for chunk in tree.chunks(size) {
                    let mut s: Vec<usize> = chunk.to_vec();
                    s.sort_unstable();
                    node_sets.insert(s);
                }
                for chunk in tree.chunks(size) {
                    let mut img: Vec<usize> = chunk.iter().map(|&x| p.apply(x)).collect();
                    img.sort_unstable();
                    if !node_sets.contains(&img) {
                        return false;
                    }
                }
                size /= 2;
            }
        }
        true
    }

    /// A permutation g with g(other) = self positionally on each tree,
    /// so that g * stab(other) * g^-1 = stab(self).
    pub fn conjugator_from(&self, other: &Forest) -> Perm {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.trees.len(), other.trees.len());
        let mut images = vec![0u8; self.degree];
        for (mine, theirs) in self.trees.iter().zip(&other.trees) {
            assert_eq!(mine.len(), theirs.len());
            for (m, t) in mine.iter().zip(theirs) {
                images[*t] = *m as u8;
            }
        }
        Perm::from_images(images)
    }
}

fn pos_of(sorted: &[usize], x: usize) -> usize {
    sorted.binary_search(&x).expect("point must lie in its orbit")
}

/// 2-adic valuation of n!.
pub fn nu2_factorial(n: usize) -> u32 {
    (n - n.count_ones() as usize) as u32
}

/// Builds a complete binary tree (as a leaf order on 0..m-1) invariant
/// under a transitive 2-group given by its action images.
fn build_tree_transitive(m: usize, action: &[Vec<usize>]) -> Result<Vec<usize>, Sym2Error> {
    if m == 1 {
        return Ok(vec![0]);
    }
    // find an invariant pairing: the finest block system gluing 0 to
    // some b must have blocks of size 2 for a transitive 2-group
    let mut pairing: Option<Vec<usize>> = None;
    for b in 1..m {
        let block_of = minimal_block_partition(m, action, 0, b);
        let size = (0..m).filter(|&x| block_of[x] == block_of[0]).count();
        if size == 2 {
            pairing = Some(block_of);
            break;
        }
    }
    let block_of = pairing.ok_or_else(|| {
        Sym2Error::NotA2Subgroup("transitive constituent admits no invariant pairing".into())
    })?;
    // collect pairs ordered by least member
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut seen = vec![false; m];
    for x in 0..m {
        if seen[x] {
            continue;
        }
        let partner = (0..m)
            .find(|&y| y != x && block_of[y] == block_of[x])
            .expect("pair block has two members");
        seen[x] = true;
        seen[partner] = true;
        pairs.push((x, partner));
    }
    let pair_index_of = |x: usize| pairs.iter().position(|&(a, b)| a == x || b == x).unwrap();
    // induced action on pairs
    let induced: Vec<Vec<usize>> = action
        .iter()
        .map(|g| pairs.iter().map(|&(a, _)| pair_index_of(g[a])).collect())
        .collect();
    let upper = build_tree_transitive(m / 2, &induced)?;
    let mut leaves = Vec::with_capacity(m);
    for &pi in &upper {
        let (a, b) = pairs[pi];
        leaves.push(a);
        leaves.push(b);
    }
    Ok(leaves)
}

/// Finest block partition of a transitive action identifying a and b
/// (union-find congruence closure).
fn minimal_block_partition(m: usize, action: &[Vec<usize>], a: usize, b: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut stack = vec![(a, b)];
    while let Some((x, y)) = stack.pop() {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            continue;
        }
        parent[rx.max(ry)] = rx.min(ry);
        for g in action {
            stack.push((g[x], g[y]));
        }
    }
    (0..m).map(|x| find(&mut parent, x)).collect()
}

/// Generators of the even-permutation subgroup of the group generated
/// by `gens` (Schreier generators for the index-2 sign kernel).
pub fn even_subgroup_gens(gens: &[Perm]) -> Vec<Perm> {
    let odd = gens.iter().find(|g| !g.is_even());
    let t = match odd {
        None => return gens.to_vec(),
        Some(t) => t.clone(),
    };
    let tinv = t.inverse();
    let mut out = Vec::new();
    for g in gens {
        if g.is_even() {
            out.push(g.clone());
            out.push(t.compose(g).compose(&tinv));
        } else {
            out.push(g.compose(&tinv));
            out.push(t.compose(g));
        }
    }
    out.retain(|p| !p.is_identity());
    out
}

/// One factor of a Sylow-2 product: the raw 2-subgroup produced by the
/// recursion together with the adapted Sylow containing it and the
/// conjugator carrying the base (standard-forest) Sylow onto it.
pub struct Sylow2Factor {
    pub raw_gens: Vec<Perm>,
    pub forest: Forest,
    pub sylow_gens: Vec<Perm>,
    /// x with stab(standard)^x = stab(forest) (conjugation x^-1 . x).
    pub conjugator: Perm,
}

/// An ordered product of conjugates of the standard Sylow 2-subgroup
/// covering S_n (or A_n with everything intersected with A_n).
pub struct Sylow2ProductWitness {
    pub degree: usize,
    pub alternating: bool,
    pub base_gens: Vec<Perm>,
    pub factors: Vec<Sylow2Factor>,
}

impl Sylow2ProductWitness {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Converts to an index-level witness over an enumerated table of
    /// the same group, ready for direct product verification.
    pub fn to_table_witness(
        &self,
        table: &Arc<GroupTable>,
    ) -> Result<FactorizationWitness, Sym2Error> {
        let domain = table.domain().clone();
        let lookup = |p: &Perm| -> Result<usize, Sym2Error> {
            table
                .index_of_code(domain.perm_to_code(p))
                .ok_or(Sym2Error::TableMismatch)
        };
        let base_idx: Result<Vec<usize>, _> = self.base_gens.iter().map(&lookup).collect();
        let base = SubgroupSet::closure(table, &base_idx?);
        let expected_log2 = nu2_factorial(self.degree) - if self.alternating { 1 } else { 0 };
        if base.order() != 1usize << expected_log2 {
            return Err(Sym2Error::NotA2Subgroup(format!(
                "base order {} is not the full Sylow order",
                base.order()
            )));
        }
        let conj: Result<Vec<usize>, _> = self
            .factors
            .iter()
            .map(|f| lookup(&f.conjugator.inverse()))
            .collect();
        let provenance = if self.alternating {
            Provenance::AlternatingSylow
        } else {
            Provenance::SymmetricSylow
        };
        Ok(FactorizationWitness::new(table, base, conj?, provenance))
    }
}

fn standard_sylow_factor(degree: usize, raw_gens: Vec<Perm>) -> Result<Sylow2Factor, Sym2Error> {
    let forest = Forest::adapted_to(degree, &raw_gens)?;
    let sylow_gens = forest.stabilizer_gens();
    let standard = Forest::standard(degree);
    let conjugator = forest.conjugator_from(&standard).inverse();
    Ok(Sylow2Factor {
        raw_gens,
        forest,
        sylow_gens,
        conjugator,
    })
}

/// Raw 2-subgroup factor lists whose ordered product is S_n, following
/// the halving recursion on even degrees (S_n = B A B over the block
/// bijection with {1,2} x {1..n/2}) and the point-stabilizer transversal
/// step on odd degrees (S_n = S_{n-1} P Q with P, Q Sylow 2-subgroups
/// containing the two long power-of-two cycles).
fn raw_factors(n: usize) -> Vec<Vec<Perm>> {
    assert!(n >= 2);
    if n == 2 {
        return vec![vec![Perm::from_cycles(2, &[vec![0, 1]])]];
    }
    if n % 2 == 0 {
        let m = n / 2;
        let b: Vec<Perm> = (0..m)
            .map(|i| Perm::from_cycles(n, &[vec![i, i + m]]))
            .collect();
        let inner = raw_factors(m);
        let block1: Vec<usize> = (0..m).collect();
        let block2: Vec<usize> = (m..n).collect();
        let mut out = vec![b.clone()];
        for f in inner {
            let mut gens = Vec::new();
            for p in &f {
                gens.push(p.embed(n, &block1));
                gens.push(p.embed(n, &block2));
            }
            out.push(gens);
        }
        out.push(b);
        out
    } else {
        // stabilizer of 0 carries S_{n-1} on {1..n-1}
        let shift: Vec<usize> = (1..n).collect();
        let mut out: Vec<Vec<Perm>> = raw_factors(n - 1)
            .into_iter()
            .map(|f| f.iter().map(|p| p.embed(n, &shift)).collect())
            .collect();
        let k = (usize::BITS - 1 - n.leading_zeros()) as usize;
        let size = 1usize << k;
        let c1 = Perm::from_cycles(n, &[(0..size).collect()]);
        let c2 = Perm::from_cycles(n, &[(n - size..n).collect()]);
        out.push(vec![c1]);
        out.push(vec![c2]);
        out
    }
}

/// Factorization of S_n into fewer than 4 log2 n Sylow 2-subgroups,
/// each extending one raw factor of the halving/transversal recursion.
pub fn symmetric_sylow2(n: usize) -> Result<Sylow2ProductWitness, Sym2Error> {
    if n < 2 {
        return Err(Sym2Error::UnsupportedDegree(n));
    }
    let factors: Result<Vec<Sylow2Factor>, _> = raw_factors(n)
        .into_iter()
        .map(|raw| standard_sylow_factor(n, raw))
        .collect();
    let factors = factors?;
    let bound = 4.0 * (n as f64).log2();
    assert!(
        (factors.len() as f64) < bound,
        "length {} must stay below 4 log2 {}",
        factors.len(),
        n
    );
    Ok(Sylow2ProductWitness {
        degree: n,
        alternating: false,
        base_gens: Forest::standard(n).stabilizer_gens(),
        factors,
    })
}

/// The two 2-point setwise stabilizers realizing A_n = H1 H2 H1,
/// returned as generator sets inside A_n (each isomorphic to S_{n-2}).
pub fn alternating_triple_stabilizers(n: usize) -> (Vec<Perm>, Vec<Perm>) {
    assert!(n >= 6);
    let h_from = |fixed: [usize; 2]| -> Vec<Perm> {
        let rest: Vec<usize> = (0..n).filter(|x| !fixed.contains(x)).collect();
        let swap = Perm::from_cycles(n, &[vec![fixed[0], fixed[1]]]);
        crate::families::sym_gens(n - 2)
            .iter()
            .map(|p| {
                let e = p.embed(n, &rest);
                if e.is_even() {
                    e
                } else {
                    e.compose(&swap)
                }
            })
            .collect()
    };
    (h_from([0, 1]), h_from([n - 2, n - 1]))
}

/// Factorization of A_n (n >= 6) into fewer than 12 log2 n Sylow
/// 2-subgroups: A_n = H1 H2 H1 for the stabilizers of {0,1} and
/// {n-2,n-1}, with each H expanded through its isomorphism onto
/// S_{n-2}. A_5 is excluded: it is handled as a rank-1 group of Lie
/// type in characteristic 2.
pub fn alternating_sylow2(n: usize) -> Result<Sylow2ProductWitness, Sym2Error> {
    if n < 6 {
        return Err(Sym2Error::UnsupportedDegree(n));
    }
    let inner = raw_factors(n - 2);
    let transport = |fixed: [usize; 2]| -> Vec<Vec<Perm>> {
        let rest: Vec<usize> = (0..n).filter(|x| !fixed.contains(x)).collect();
        let swap = Perm::from_cycles(n, &[vec![fixed[0], fixed[1]]]);
        inner
            .iter()
            .map(|f| {
                f.iter()
                    .map(|p| {
                        let e = p.embed(n, &rest);
                        if e.is_even() {
                            e
                        } else {
                            e.compose(&swap)
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let h1_factors = transport([0, 1]);
    let h2_factors = transport([n - 2, n - 1]);
    let mut raw: Vec<Vec<Perm>> = Vec::new();
    raw.extend(h1_factors.clone());
    raw.extend(h2_factors);
    raw.extend(h1_factors);

    let standard = Forest::standard(n);
    let std_odd = standard
        .stabilizer_gens()
        .into_iter()
        .find(|g| !g.is_even())
        .expect("a Sylow 2-subgroup of S_n contains odd elements");
    let factors: Result<Vec<Sylow2Factor>, _> = raw
        .into_iter()
        .map(|raw_gens| {
            let mut f = standard_sylow_factor(n, raw_gens)?;
            // conjugators must live inside A_n; odd ones are fixed up
            // by an odd element of the standard-forest stabilizer
            if !f.conjugator.is_even() {
                f.conjugator = std_odd.compose(&f.conjugator);
            }
            f.sylow_gens = even_subgroup_gens(&f.sylow_gens);
            Ok(f)
        })
        .collect();
    let factors = factors?;
    let bound = 12.0 * (n as f64).log2();
    assert!(
        (factors.len() as f64) < bound,
        "length {} must stay below 12 log2 {}",
        factors.len(),
        n
    );
    Ok(Sylow2ProductWitness {
        degree: n,
        alternating: true,
        base_gens: even_subgroup_gens(&standard.stabilizer_gens()),
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alt, sym};
    use crate::gamma::verify_witness;
    use crate::subgrp::{setwise_product, sylow_subgroup};

    #[test]
    fn standard_forest_shape() {
        let f = Forest::standard(11); // 8 + 2 + 1
        let sizes: Vec<usize> = f.trees().iter().map(|t| t.len()).collect();
        assert_eq!(sizes, vec![8, 2, 1]);
        assert_eq!(f.stabilizer_order_log2(), nu2_factorial(11));
        assert_eq!(nu2_factorial(10), 8);
    }

    #[test]
    fn standard_sylow_has_sylow_order() {
        for n in [3usize, 4, 5, 6, 7, 8] {
            let table = sym(n);
            let gens = Forest::standard(n).stabilizer_gens();
            let idx: Vec<usize> = gens
                .iter()
                .map(|p| table.index_of_code(table.domain().perm_to_code(p)).unwrap())
                .collect();
            let sub = SubgroupSet::closure(&table, &idx);
            assert_eq!(sub.order(), 1usize << nu2_factorial(n), "n = {}", n);
            // matches the normalizer-ascent Sylow order
            let syl = sylow_subgroup(&table, 2).unwrap();
            assert_eq!(sub.order(), syl.order());
        }
    }

    #[test]
    fn adapted_forest_contains_the_cycle() {
        for n in [4usize, 6, 7, 11, 13, 16, 21, 32] {
            let k = (usize::BITS - 1 - n.leading_zeros()) as usize;
            let size = 1usize << k;
            let c = Perm::from_cycles(n, &[(0..size).collect()]);
            let f = Forest::adapted_to(n, std::slice::from_ref(&c)).unwrap();
            assert!(f.contains(&c), "n = {}", n);
            assert_eq!(f.stabilizer_order_log2(), nu2_factorial(n));
            // suffix cycle
            let c2 = Perm::from_cycles(n, &[(n - size..n).collect()]);
            let f2 = Forest::adapted_to(n, std::slice::from_ref(&c2)).unwrap();
            assert!(f2.contains(&c2), "n = {}", n);
        }
    }

    #[test]
    fn adapted_rejects_non_2_groups() {
        let c3 = Perm::from_cycles(5, &[vec![0, 1, 2]]);
        assert!(Forest::adapted_to(5, &[c3]).is_err());
    }

    #[test]
    fn conjugator_carries_standard_onto_adapted() {
        let n = 9;
        let c = Perm::from_cycles(n, &[(0..8).collect()]);
        let f = Forest::adapted_to(n, std::slice::from_ref(&c)).unwrap();
        let standard = Forest::standard(n);
        let g = f.conjugator_from(&standard);
        for p in standard.stabilizer_gens() {
            let moved = g.compose(&p).compose(&g.inverse());
            assert!(f.contains(&moved));
        }
    }

    #[test]
    fn symmetric_witness_lengths() {
        let expected = [
            (2, 1),
            (3, 3),
            (4, 3),
            (5, 5),
            (6, 5),
            (8, 5),
            (10, 7),
            (16, 7),
            (32, 9),
        ];
        for (n, len) in expected {
            let w = symmetric_sylow2(n).unwrap();
            assert_eq!(w.len(), len, "n = {}", n);
            assert!((w.len() as f64) < 4.0 * (n as f64).log2());
        }
    }

    #[test]
    fn symmetric_products_cover_small_sn() {
        for n in [2usize, 3, 4, 5, 6] {
            let table = sym(n);
            let w = symmetric_sylow2(n).unwrap();
            let tw = w.to_table_witness(&table).unwrap();
            assert!(verify_witness(&tw), "n = {}", n);
            // raw factors sit inside the promoted Sylows
            for f in &w.factors {
                for raw in &f.raw_gens {
                    assert!(f.forest.contains(raw));
                }
            }
        }
    }

    #[test]
    fn s4_three_conjugate_sylows_suffice() {
        let table = sym(4);
        let w = symmetric_sylow2(4).unwrap();
        assert_eq!(w.len(), 3);
        let tw = w.to_table_witness(&table).unwrap();
        assert!(verify_witness(&tw));
        assert_eq!(tw.base().order(), 8);
    }

    #[test]
    fn alternating_triple_product_covers_a6_a7() {
        for n in [6usize, 7] {
            let table = alt(n);
            let (h1, h2) = alternating_triple_stabilizers(n);
            let lookup = |ps: &Vec<Perm>| -> SubgroupSet {
                let idx: Vec<usize> = ps
                    .iter()
                    .map(|p| table.index_of_code(table.domain().perm_to_code(p)).unwrap())
                    .collect();
                SubgroupSet::closure(&table, &idx)
            };
            let s1 = lookup(&h1);
            let s2 = lookup(&h2);
            assert_eq!(s1.order(), factorial(n - 2), "|H1| in A_{}", n);
            let p12 = setwise_product(s1.as_set(), s2.as_set()).unwrap();
            let p121 = setwise_product(&p12, s1.as_set()).unwrap();
            assert!(p121.is_full(), "A_{} = H1 H2 H1", n);
        }
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn alternating_witness_verifies_on_a6() {
        let table = alt(6);
        let w = alternating_sylow2(6).unwrap();
        assert!((w.len() as f64) < 12.0 * 6f64.log2());
        let tw = w.to_table_witness(&table).unwrap();
        assert_eq!(tw.base().order(), 1 << (nu2_factorial(6) - 1));
        assert!(verify_witness(&tw));
    }

    #[test]
    fn alternating_rejects_small_degrees() {
        assert!(alternating_sylow2(5).is_err());
    }

    #[test]
    fn even_subgroup_gens_give_index_two() {
        let gens = Forest::standard(6).stabilizer_gens();
        let table = sym(6);
        let idx = |ps: &[Perm]| -> SubgroupSet {
            let v: Vec<usize> = ps
                .iter()
                .map(|p| table.index_of_code(table.domain().perm_to_code(p)).unwrap())
                .collect();
            SubgroupSet::closure(&table, &v)
        };
        let full = idx(&gens);
        let even = idx(&even_subgroup_gens(&gens));
        assert_eq!(full.order(), 2 * even.order());
    }
}
