//! Factorizations of affine primitive groups G = V H by conjugates of
//! the point stabilizer H.
//!
//! V is elementary abelian of order p^n, viewed as a vector space with
//! H acting irreducibly and core-freely. A cyclic line <w> spanned by a
//! commutator w = v^{h^-1} - v is covered by ceil(log2 p) + 1 conjugates
//! of H via binary scalar decomposition, the translation conjugators
//! chosen so adjacent factors merge; an H-orbit basis of V chains n
//! such blocks into a product of at most 1 + n ceil(log2 p) conjugates
//! covering all of G.

use crate::bits::BitVec;
use crate::gamma::{verify_witness, FactorizationWitness, Provenance};
use crate::group::GroupTable;
use crate::subgrp::{setwise_product, SubgroupError, SubgroupSet};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AffineError {
    #[error("V is not elementary abelian of prime-power order")]
    NotElementaryAbelian,
    #[error("V is not normal")]
    NotNormal,
    #[error("H does not complement V")]
    NotComplement,
    #[error("point stabilizer is trivial")]
    TrivialStabilizer,
    #[error("H does not act irreducibly on V")]
    NotIrreducible,
    #[error("H is not core-free")]
    NotCoreFree,
    #[error("the chosen vector is fixed by the chosen stabilizer element")]
    FixedVector,
    #[error("witness failed direct verification")]
    VerificationFailed,
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
}

/// An affine primitive pair (V, H) inside an enumerated group, with a
/// chosen basis of V and coordinate maps.
pub struct AffineDatum {
    group: Arc<GroupTable>,
    v: SubgroupSet,
    h: SubgroupSet,
    p: u64,
    n: usize,
    /// Element indices of the chosen basis translations.
    basis: Vec<usize>,
    /// V element index -> coordinates over the basis.
    coords: HashMap<usize, Vec<u64>>,
}

impl AffineDatum {
    pub fn new(
        group: &Arc<GroupTable>,
        v: SubgroupSet,
        h: SubgroupSet,
    ) -> Result<AffineDatum, AffineError> {
        // elementary abelian: |V| = p^n, every nontrivial element of order p
        let order = v.order() as u64;
        let factors = crate::subgrp::factorize(order);
        if factors.len() != 1 {
            return Err(AffineError::NotElementaryAbelian);
        }
        let (p, n) = (factors[0].0, factors[0].1 as usize);
        for x in v.iter() {
            if x != 0 && group.element_order(x) != p as usize {
                return Err(AffineError::NotElementaryAbelian);
            }
            for y in v.iter() {
                if group.mult(x, y) != group.mult(y, x) {
                    return Err(AffineError::NotElementaryAbelian);
                }
            }
        }
        if !v.is_normal() {
            return Err(AffineError::NotNormal);
        }
        if h.order() <= 1 {
            return Err(AffineError::TrivialStabilizer);
        }
        let mut meet = v.bits().clone();
        meet.intersect_with(h.bits());
        if meet.count() != 1 || v.order() * h.order() != group.order() {
            return Err(AffineError::NotComplement);
        }
        if h.core().order() != 1 {
            return Err(AffineError::NotCoreFree);
        }

        // basis and coordinates by greedy span extension
        let mut basis: Vec<usize> = Vec::new();
        let mut coords: HashMap<usize, Vec<u64>> = HashMap::new();
        coords.insert(0, Vec::new());
        for x in v.iter() {
            if coords.contains_key(&x) {
                continue;
            }
            basis.push(x);
            // extend every known combination by powers of x
            let snapshot: Vec<(usize, Vec<u64>)> =
                coords.iter().map(|(&i, c)| (i, c.clone())).collect();
            for (idx, c) in snapshot {
                let mut cur = idx;
                for e in 1..p {
                    cur = group.mult(cur, x);
                    let mut cc = c.clone();
                    cc.push(e);
                    coords.insert(cur, cc);
                }
                let mut c0 = c;
                c0.push(0);
                coords.insert(idx, c0);
            }
        }
        debug_assert_eq!(basis.len(), n);
        debug_assert_eq!(coords.len(), v.order());

        let datum = AffineDatum {
            group: group.clone(),
            v,
            h,
            p,
            n,
            basis,
            coords,
        };
        // irreducibility: the H-orbit of any nonzero vector spans V
        for x in datum.v.iter() {
            if x == 0 {
                continue;
            }
            let orbit: Vec<usize> = datum.h.iter().map(|g| group.conj(x, g)).collect();
            if datum.span(&orbit).count() != datum.v.order() {
                return Err(AffineError::NotIrreducible);
            }
        }
        Ok(datum)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }
    pub fn v(&self) -> &SubgroupSet {
        &self.v
    }
    pub fn h(&self) -> &SubgroupSet {
        &self.h
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Coordinates of a V element over the chosen basis.
    pub fn coordinates_of(&self, v_elem: usize) -> Option<&[u64]> {
        self.coords.get(&v_elem).map(|c| c.as_slice())
    }

    fn span(&self, vectors: &[usize]) -> BitVec {
        let mut bits = BitVec::new(self.group.order());
        bits.set(0);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &w in vectors {
                let y = self.group.mult(x, w);
                if bits.set(y) {
                    frontier.push(y);
                }
            }
        }
        bits
    }

    /// v + v (s times) in the additive notation for V.
    fn scale(&self, v_elem: usize, s: u64) -> usize {
        self.group.power(v_elem, s)
    }

    /// v^{h^-1} - v
    fn difference(&self, v_elem: usize, h_elem: usize) -> usize {
        let g = &self.group;
        let conj = g.conj(v_elem, g.inverse(h_elem));
        g.mult(conj, g.inverse(v_elem))
    }
}

/// Cover of the line <w> spanned by w = v^{h^-1} - v using
/// ceil(log2 p) + 1 conjugates of H, all by translations.
pub struct ScalarCover {
    pub w: usize,
    pub k: usize,
    /// Translation conjugators, most-significant block first; the last
    /// entry is always the identity.
    pub conjugators: Vec<usize>,
    /// Binary decompositions (MSB first) of the verified scalars.
    pub decompositions: Vec<(u64, Vec<u8>)>,
    pub verified: bool,
}

/// Builds the telescoped product (H^v H)(H^{2v} H)...(H^{2^{k-1}v} H)
/// with translation choices making adjacent factors merge, and checks
/// that each requested scalar multiple of w lies in the product.
pub fn scalar_cover(
    d: &AffineDatum,
    v_elem: usize,
    h_elem: usize,
    scalars: &[u64],
) -> Result<ScalarCover, AffineError> {
    assert!(d.v.contains(v_elem) && d.h.contains(h_elem));
    let w = d.difference(v_elem, h_elem);
    if w == 0 {
        return Err(AffineError::FixedVector);
    }
    let k = (64 - (d.p - 1).leading_zeros()) as usize; // ceil(log2 p)
    let conjugators = cover_conjugators(d, v_elem, k);
    debug_assert_eq!(conjugators.len(), k + 1);
    // direct membership scan
    let product = product_of_h_conjugates(d, &conjugators)?;
    let mut verified = true;
    let mut decompositions = Vec::new();
    for &s in scalars {
        let sw = d.scale(w, s);
        verified &= product.get(sw);
        let bits: Vec<u8> = (0..k).rev().map(|j| ((s >> j) & 1) as u8).collect();
        decompositions.push((s, bits));
    }
    Ok(ScalarCover {
        w,
        k,
        conjugators,
        decompositions,
        verified,
    })
}

/// Translations [v + u_0, u_0, u_1, .., u_{k-2}, 0] with
/// u_{k-1} = 0 and u_i = u_{i+1} + 2^{i+1} v.
fn cover_conjugators(d: &AffineDatum, v_elem: usize, k: usize) -> Vec<usize> {
    let g = d.group();
    let mut u = vec![0usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        let step = d.scale(v_elem, (1u64 << (i + 1)) % d.p);
        u[i] = g.mult(u[i + 1], step);
    }
    let mut out = Vec::with_capacity(k + 1);
    out.push(g.mult(v_elem, u[0]));
    for item in u.iter().take(k.saturating_sub(1)) {
        out.push(*item);
    }
    out.push(0);
    out
}

fn product_of_h_conjugates(
    d: &AffineDatum,
    conjugators: &[usize],
) -> Result<BitVec, AffineError> {
    let mut acc = d.h.conjugate(conjugators[0]).to_set();
    for &t in &conjugators[1..] {
        if acc.is_full() {
            break;
        }
        acc = setwise_product(&acc, &d.h.conjugate(t).to_set())?;
    }
    Ok(acc.bits().clone())
}

/// Product of at most 1 + n ceil(log2 p) conjugates of H covering G,
/// built from an H-orbit basis of V with one scalar-cover block per
/// basis vector, blocks chained by telescoping translations.
pub fn affine_factorization(d: &AffineDatum) -> Result<FactorizationWitness, AffineError> {
    let g = d.group();
    // first non-central pair (v, h), scanned deterministically
    let mut seed: Option<(usize, usize)> = None;
    'outer: for v_elem in d.v.iter() {
        if v_elem == 0 {
            continue;
        }
        for h_elem in d.h.iter() {
            if h_elem == 0 {
                continue;
            }
            if d.difference(v_elem, h_elem) != 0 {
                seed = Some((v_elem, h_elem));
                break 'outer;
            }
        }
    }
    let (v0, h0) = seed.ok_or(AffineError::NotCoreFree)?;
    let w0 = d.difference(v0, h0);
    // basis w0^{h_1}, ..., w0^{h_n}: scan H, keep extending vectors
    let mut basis_conj: Vec<usize> = Vec::new();
    let mut span_vecs: Vec<usize> = Vec::new();
    for h in d.h.iter() {
        let wv = g.conj(w0, h);
        let span = d.span(&span_vecs);
        if !span.get(wv) {
            basis_conj.push(h);
            span_vecs.push(wv);
            if span_vecs.len() == d.n {
                break;
            }
        }
    }
    if span_vecs.len() != d.n {
        return Err(AffineError::NotIrreducible);
    }
    let k = (64 - (d.p - 1).leading_zeros()) as usize;
    // per-basis blocks: translate the seed pair through the orbit
    let blocks: Vec<Vec<usize>> = basis_conj
        .iter()
        .map(|&hc| {
            let vi = g.conj(v0, hc);
            cover_conjugators(d, vi, k)
        })
        .collect();
    // chain the blocks: conjugating block i by t_i shifts all its
    // translations by t_i; choose t_n = 0 and
    // t_i = first(block_{i+1}) + t_{i+1} so the seams merge
    let m = blocks.len();
    let mut shifts = vec![0usize; m];
    for i in (0..m.saturating_sub(1)).rev() {
        shifts[i] = g.mult(blocks[i + 1][0], shifts[i + 1]);
    }
    let mut conjugators: Vec<usize> = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        let shifted: Vec<usize> = block.iter().map(|&t| g.mult(t, shifts[i])).collect();
        let skip = usize::from(i > 0); // seam factor merges with the previous block's tail
        conjugators.extend(&shifted[skip..]);
    }
    debug_assert_eq!(conjugators.len(), d.n * k + 1);
    debug_assert_eq!(*conjugators.last().unwrap(), 0);
    let witness = FactorizationWitness::new(
        g,
        d.h.clone(),
        conjugators,
        Provenance::AffineStabilizer,
    );
    if !verify_witness(&witness) {
        return Err(AffineError::VerificationFailed);
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alt, enumerate_perms};
    use crate::gamma::{gamma_cp_exact, gamma_cp_oracle, Gamma};
    use crate::perm::Perm;

    /// AGL(1, p) for prime p: x -> ax + b on {0..p-1}.
    fn agl1(p: u64) -> (Arc<GroupTable>, SubgroupSet, SubgroupSet) {
        let n = p as usize;
        let translate = Perm::from_images((0..n).map(|x| ((x + 1) % n) as u8).collect());
        // multiplication by a primitive root
        let root = (2..p).find(|&a| {
            let mut x = 1u64;
            let mut ord = 0;
            loop {
                x = x * a % p;
                ord += 1;
                if x == 1 {
                    break;
                }
            }
            ord == p - 1
        });
        let a = root.unwrap_or(1);
        let scale = Perm::from_images((0..n).map(|x| (x as u64 * a % p) as u8).collect());
        let g = enumerate_perms(&[translate.clone(), scale.clone()], 10_000).unwrap();
        assert_eq!(g.order() as u64, p * (p - 1));
        let vi = g
            .index_of_code(g.domain().perm_to_code(&translate))
            .unwrap();
        let hi = g.index_of_code(g.domain().perm_to_code(&scale)).unwrap();
        let v = SubgroupSet::closure(&g, &[vi]);
        let h = SubgroupSet::closure(&g, &[hi]);
        (g, v, h)
    }

    #[test]
    fn agl15_cover_and_factorization() {
        let (g, v, h) = agl1(5);
        let d = AffineDatum::new(&g, v, h).unwrap();
        assert_eq!((d.p(), d.dim()), (5, 1));
        // k = 3: four conjugates of H cover <w>
        let v1 = d.v().iter().nth(1).unwrap();
        let h1 = d.h().iter().nth(1).unwrap();
        let cover = scalar_cover(&d, v1, h1, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(cover.k, 3);
        assert_eq!(cover.conjugators.len(), 4);
        assert!(cover.verified);
        let w = affine_factorization(&d).unwrap();
        assert_eq!(w.k(), 4); // 1 + 1 * ceil(log2 5)
        assert!(verify_witness(&w));
        // the exact minimum is 3, below the constructive bound
        let (exact, _) = gamma_cp_exact(&g, d.h()).unwrap();
        assert_eq!(exact, Gamma::Finite(3));
        assert_eq!(gamma_cp_oracle(&g, d.h(), 6, 2000).unwrap(), Gamma::Finite(3));
    }

    #[test]
    fn a4_as_affine_group() {
        // A4 = C2^2 : C3 acting on 4 points; H = C3 is a point stabilizer
        let a4 = alt(4);
        let v = crate::subgrp::sylow_subgroup(&a4, 2).unwrap();
        let hi = a4
            .index_of_code(
                a4.domain()
                    .perm_to_code(&Perm::from_cycles(4, &[vec![1, 2, 3]])),
            )
            .unwrap();
        let h = SubgroupSet::closure(&a4, &[hi]);
        let d = AffineDatum::new(&a4, v, h).unwrap();
        assert_eq!((d.p(), d.dim()), (2, 2));
        let w = affine_factorization(&d).unwrap();
        assert_eq!(w.k(), 3); // 1 + 2 * 1, and exactly gamma
        assert!(verify_witness(&w));
        let (exact, _) = gamma_cp_exact(&a4, d.h()).unwrap();
        assert_eq!(exact, Gamma::Finite(3));
    }

    #[test]
    fn agl13_is_s3() {
        let (g, v, h) = agl1(3);
        assert_eq!(g.order(), 6);
        let d = AffineDatum::new(&g, v, h).unwrap();
        let v1 = d.v().iter().nth(1).unwrap();
        let h1 = d.h().iter().nth(1).unwrap();
        let cover = scalar_cover(&d, v1, h1, &[0, 1, 2]).unwrap();
        assert_eq!(cover.k, 2);
        assert_eq!(cover.conjugators.len(), 3);
        assert!(cover.verified);
        let w = affine_factorization(&d).unwrap();
        assert_eq!(w.k(), 3);
        assert!(verify_witness(&w));
    }

    #[test]
    fn p2_line_needs_two_conjugates() {
        let a4 = alt(4);
        let v = crate::subgrp::sylow_subgroup(&a4, 2).unwrap();
        let hi = a4
            .index_of_code(
                a4.domain()
                    .perm_to_code(&Perm::from_cycles(4, &[vec![1, 2, 3]])),
            )
            .unwrap();
        let h = SubgroupSet::closure(&a4, &[hi]);
        let d = AffineDatum::new(&a4, v, h).unwrap();
        let v1 = d.v().iter().nth(1).unwrap();
        let h1 = d.h().iter().nth(1).unwrap();
        let cover = scalar_cover(&d, v1, h1, &[0, 1]).unwrap();
        assert_eq!(cover.k, 1);
        assert_eq!(cover.conjugators.len(), 2);
        assert!(cover.verified);
    }

    #[test]
    fn fixed_vector_rejected() {
        // in AGL(1,5) the stabilizer H fixes 0, i.e. conjugating the
        // identity translation changes nothing
        let (g, v, h) = agl1(5);
        let d = AffineDatum::new(&g, v, h).unwrap();
        // v = 0 (identity translation) is fixed by every h
        let h1 = d.h().iter().nth(1).unwrap();
        assert!(matches!(
            scalar_cover(&d, 0, h1, &[0, 1]),
            Err(AffineError::FixedVector)
        ));
    }

    #[test]
    fn reducible_pair_rejected() {
        // C2 x C2 with H = C3 acting... instead take V = V4 inside S4
        // with H = <(0 1)> x nothing: use D8's center-ish pair: simpler,
        // V = V4 in S4 and H = C2 generated by a transposition fails
        // complement/irreducibility
        let s4 = crate::families::sym(4);
        let v = crate::subgrp::sylow_subgroup(&alt(4), 2).unwrap();
        // rebuild V4 inside S4
        let mut bits = crate::bits::BitVec::new(24);
        for i in 0..24 {
            let p = s4.domain().code_to_perm(s4.code_of(i));
            if p.is_identity() || ((0..4).all(|x| p.apply(x) != x) && p.compose(&p).is_identity())
            {
                bits.set(i);
            }
        }
        let _ = v;
        let v4 = SubgroupSet::from_bits_checked(&s4, bits).unwrap();
        let t = s4
            .index_of_code(s4.domain().perm_to_code(&Perm::from_cycles(4, &[vec![0, 1]])))
            .unwrap();
        let h = SubgroupSet::closure(&s4, &[t]);
        assert!(matches!(
            AffineDatum::new(&s4, v4, h),
            Err(AffineError::NotComplement)
        ));
    }
}
