//! Split BN-pair data for small groups of Lie type, and the unipotent
//! product computations built on it: the rank-1 double-coset criterion
//! for G = (UU^-)^2, and verified minimal-length factorizations of G by
//! conjugates of the unipotent Sylow subgroup U.

use crate::dcoset::DoubleCosetTable;
use crate::elem::{Domain, Element};
use crate::gamma::{
    gamma_cp_exact, verify_witness, FactorizationWitness, Gamma, GammaError, Provenance,
};
use crate::gf::GfParams;
use crate::group::{enumerate_group, GroupError, GroupTable};
use crate::mat::Mat;
use crate::subgrp::{setwise_product, ElementSet, SubgroupSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BnError {
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("Weyl group is not of order 2")]
    NotRankOne,
    #[error("build-time verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
}

/// A concrete split BN-pair: the unipotent Sylow U, its opposite
/// U^- = U^{n0}, the torus H, the Borel subgroup B = H U, and a
/// representative n0 of the longest Weyl element.
pub struct BNDatum {
    pub group: Arc<GroupTable>,
    pub label: String,
    pub u: SubgroupSet,
    pub u_minus: SubgroupSet,
    pub h: SubgroupSet,
    pub b: SubgroupSet,
    /// Longest Weyl element representative.
    pub n0: usize,
    /// Simple reflection representative; equals n0 in rank 1.
    pub n1: usize,
    pub weyl_order: usize,
    pub char_p: u64,
}

fn field_for(q: u64) -> Result<Arc<GfParams>, BnError> {
    let res = match q {
        2 | 3 | 5 | 7 | 11 | 13 => GfParams::prime(q as u8),
        4 => GfParams::with_default_modulus(2, 2),
        8 => GfParams::with_default_modulus(2, 3),
        9 => GfParams::with_default_modulus(3, 2),
        _ => {
            return Err(BnError::UnsupportedParameter(format!(
                "no field of order {}",
                q
            )))
        }
    };
    res.map_err(|e| BnError::UnsupportedParameter(e.to_string()))
}

/// Generators of SL2(q): all elementary transvections.
pub fn sl2_generators(q: u64) -> Result<(Vec<Element>, Arc<GfParams>), BnError> {
    let f = field_for(q)?;
    let domain = Domain::matrix(2, f.clone());
    let mut gens = Vec::new();
    for c in 1..f.q() {
        for m in [
            Mat::from_rows(&[vec![1, c], vec![0, 1]]),
            Mat::from_rows(&[vec![1, 0], vec![c, 1]]),
        ] {
            gens.push(Element {
                domain: domain.clone(),
                code: domain.mat_to_code_checked(&m),
            });
        }
    }
    Ok((gens, f))
}

pub fn build_sl2(q: u64) -> Result<BNDatum, BnError> {
    if ![2, 3, 4, 5, 7, 8, 9].contains(&q) {
        return Err(BnError::UnsupportedParameter(format!(
            "SL2({}) is not in the supported range",
            q
        )));
    }
    let (gens, f) = sl2_generators(q)?;
    let domain = gens[0].domain.clone();
    let group = enumerate_group(&gens, 1 << 22)?;
    let expected = q * (q * q - 1);
    if group.order() as u64 != expected {
        return Err(BnError::VerificationFailed(format!(
            "|SL2({})| = {} != {}",
            q,
            group.order(),
            expected
        )));
    }
    let idx = |m: &Mat| -> usize {
        group
            .index_of_code(domain.mat_to_code_checked(m))
            .expect("element must lie in the group")
    };
    let u_gens: Vec<usize> = (1..f.q())
        .map(|c| idx(&Mat::from_rows(&[vec![1, c], vec![0, 1]])))
        .collect();
    let u = SubgroupSet::closure(&group, &u_gens);
    let h_gens: Vec<usize> = if q == 2 {
        Vec::new()
    } else {
        let w = f.primitive_element();
        vec![idx(&Mat::from_rows(&[vec![w, 0], vec![0, f.inv(w)]]))]
    };
    let h = SubgroupSet::closure(&group, &h_gens);
    let one = f.neg(1);
    let n0 = idx(&Mat::from_rows(&[vec![0, 1], vec![one, 0]]));
    finish_datum(group, format!("sl:2,{}", q), u, h, n0, 2, f.p() as u64)
}

pub fn build_sl3_2() -> Result<BNDatum, BnError> {
    let f = field_for(2)?;
    let domain = Domain::matrix(3, f.clone());
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let mut m = Mat::identity(3);
            m.set(i, j, 1);
            gens.push(Element {
                domain: domain.clone(),
                code: domain.mat_to_code_checked(&m),
            });
        }
    }
    let group = enumerate_group(&gens, 1 << 20)?;
    if group.order() != 168 {
        return Err(BnError::VerificationFailed(format!(
            "|SL3(2)| = {} != 168",
            group.order()
        )));
    }
    let idx = |m: &Mat| group.index_of_code(domain.mat_to_code_checked(m)).unwrap();
    let mut u_gens = Vec::new();
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let mut m = Mat::identity(3);
        m.set(i, j, 1);
        u_gens.push(idx(&m));
    }
    let u = SubgroupSet::closure(&group, &u_gens);
    let h = SubgroupSet::trivial(&group);
    let n0 = idx(&Mat::from_rows(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]));
    finish_datum(group, "sl:3,2".into(), u, h, n0, 6, 2)
}

/// The unitary form is the antidiagonal one over GF(9), so the
/// unipotent Sylow is literally upper unitriangular: matrices
/// [[1,a,b],[0,1,-a^3],[0,0,1]] with b + b^3 + a^4 = 0.
pub fn build_su3_3() -> Result<BNDatum, BnError> {
    let f = field_for(9)?;
    let domain = Domain::matrix(3, f.clone());
    let unitriangular: Vec<Mat> = {
        let mut out = Vec::new();
        for a in 0..f.q() {
            for b in 0..f.q() {
                let trace_b = f.add(b, f.frobenius(b));
                let norm_a = f.mul(a, f.frobenius(a));
                if f.add(trace_b, norm_a) != 0 {
                    continue;
                }
                let c = f.neg(f.frobenius(a));
                out.push(Mat::from_rows(&[vec![1, a, b], vec![0, 1, c], vec![0, 0, 1]]));
            }
        }
        out
    };
    if unitriangular.len() != 27 {
        return Err(BnError::VerificationFailed(format!(
            "expected 27 unitriangular unitary matrices, found {}",
            unitriangular.len()
        )));
    }
    let j = Mat::from_rows(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    let is_unitary =
        |m: &Mat| -> bool { m.conj_transpose(&f).mul(&j, &f).mul(m, &f) == j && m.det(&f) == 1 };
    for m in &unitriangular {
        if !is_unitary(m) {
            return Err(BnError::VerificationFailed(format!(
                "non-unitary unitriangular matrix {:?}",
                m
            )));
        }
    }
    let n0_mat = Mat::from_rows(&[vec![0, 0, 1], vec![0, f.neg(1), 0], vec![1, 0, 0]]);
    if !is_unitary(&n0_mat) {
        return Err(BnError::VerificationFailed("n0 is not unitary".into()));
    }
    // G = <U, U^{n0}>
    let n0_inv = n0_mat.inverse(&f);
    let mut gens: Vec<Element> = Vec::new();
    for m in &unitriangular {
        gens.push(Element {
            domain: domain.clone(),
            code: domain.mat_to_code_checked(m),
        });
        let opp = n0_inv.mul(m, &f).mul(&n0_mat, &f);
        gens.push(Element {
            domain: domain.clone(),
            code: domain.mat_to_code_checked(&opp),
        });
    }
    let group = enumerate_group(&gens, 1 << 20)?;
    if group.order() != 6048 {
        return Err(BnError::VerificationFailed(format!(
            "|SU3(3)| = {} != 6048",
            group.order()
        )));
    }
    let idx = |m: &Mat| group.index_of_code(domain.mat_to_code_checked(m)).unwrap();
    let u_gens: Vec<usize> = unitriangular.iter().map(idx).collect();
    let u = SubgroupSet::closure(&group, &u_gens);
    // H = {diag(t, t^{q-1}, t^{-q})}, cyclic of order q^2 - 1 = 8
    let w = f.primitive_element();
    let h_mat = Mat::from_rows(&[
        vec![w, 0, 0],
        vec![0, f.pow(w, 2), 0],
        vec![0, 0, f.pow(f.inv(w), 3)],
    ]);
    if !is_unitary(&h_mat) {
        return Err(BnError::VerificationFailed("torus generator not unitary".into()));
    }
    let h = SubgroupSet::closure(&group, &[idx(&h_mat)]);
    let n0 = idx(&n0_mat);
    finish_datum(group, "su:3,3".into(), u, h, n0, 2, 3)
}

fn finish_datum(
    group: Arc<GroupTable>,
    label: String,
    u: SubgroupSet,
    h: SubgroupSet,
    n0: usize,
    weyl_order: usize,
    char_p: u64,
) -> Result<BNDatum, BnError> {
    let u_minus = u.conjugate(n0);
    let mut b_gens = u.generating_set();
    b_gens.extend(h.generating_set());
    let b = SubgroupSet::closure(&group, &b_gens);
    let datum = BNDatum {
        group,
        label,
        u,
        u_minus,
        h,
        b,
        n0,
        n1: n0,
        weyl_order,
        char_p,
    };
    verify_datum(&datum)?;
    Ok(datum)
}

/// Build-time invariants: B = H*U with trivial intersections,
/// U^- = U^{n0} meets B trivially, and H normalizes U and U^-.
fn verify_datum(d: &BNDatum) -> Result<(), BnError> {
    let fail = |msg: &str| Err(BnError::VerificationFailed(msg.into()));
    let hu = setwise_product(d.h.as_set(), d.u.as_set()).expect("same parent");
    if hu.bits() != d.b.bits() {
        return fail("B != H * U");
    }
    let mut meet = d.h.bits().clone();
    meet.intersect_with(d.u.bits());
    if meet.count() != 1 {
        return fail("H meets U nontrivially");
    }
    let mut meet = d.b.bits().clone();
    meet.intersect_with(d.u_minus.bits());
    if meet.count() != 1 {
        return fail("B meets U^- nontrivially");
    }
    for hh in d.h.iter() {
        if d.u.conjugate(hh).bits() != d.u.bits() {
            return fail("H does not normalize U");
        }
        if d.u_minus.conjugate(hh).bits() != d.u_minus.bits() {
            return fail("H does not normalize U^-");
        }
    }
    // U is a Sylow p-subgroup
    let p = d.char_p;
    let mut p_part = 1u64;
    let mut n = d.group.order() as u64;
    while n % p == 0 {
        p_part *= p;
        n /= p;
    }
    if d.u.order() as u64 != p_part {
        return fail("U is not a full Sylow p-subgroup");
    }
    Ok(())
}

impl BNDatum {
    /// (U^-)* = U^- minus the identity.
    pub fn u_minus_star(&self) -> ElementSet {
        let mut bits = self.u_minus.bits().clone();
        bits.clear(0);
        ElementSet::from_bits(&self.group, bits)
    }

    /// The alternating product U U^- U U^- ... with k factors.
    pub fn alternating_product(&self, k: usize) -> ElementSet {
        let mut acc = self.u.to_set();
        for i in 1..k {
            let next = if i % 2 == 1 { &self.u_minus } else { &self.u };
            acc = setwise_product(&acc, next.as_set()).expect("same parent");
        }
        acc
    }
}

/// The three equivalent rank-1 conditions, computed independently.
pub struct Rank1Report {
    /// Elements h of H whose double coset U n1 h U meets (U^-)*.
    pub h_tilde: Vec<usize>,
    /// H~ = H.
    pub cond_a: bool,
    /// U (U^-)* U = U n1 H U.
    pub cond_b: bool,
    /// G = (U U^-)^2.
    pub cond_c: bool,
}

pub fn rank1_criterion(d: &BNDatum) -> Result<Rank1Report, BnError> {
    if d.weyl_order != 2 {
        return Err(BnError::NotRankOne);
    }
    let g = &d.group;
    let table = DoubleCosetTable::build(g, &d.u).map_err(GammaError::from)?;
    let star = d.u_minus_star();
    let star_cosets: std::collections::HashSet<usize> =
        star.iter().map(|x| table.coset_of(x)).collect();
    let mut h_tilde = Vec::new();
    for h in d.h.iter() {
        let n1h = g.mult(d.n1, h);
        if star_cosets.contains(&table.coset_of(n1h)) {
            h_tilde.push(h);
        }
    }
    let cond_a = h_tilde.len() == d.h.order();

    // cond b by raw products
    let u = d.u.as_set();
    let lhs = setwise_product(&setwise_product(u, &star).unwrap(), u).unwrap();
    let mut n1h_bits = crate::bits::BitVec::new(g.order());
    for h in d.h.iter() {
        n1h_bits.set(g.mult(d.n1, h));
    }
    let n1h_set = ElementSet::from_bits(g, n1h_bits);
    let rhs = setwise_product(&setwise_product(u, &n1h_set).unwrap(), u).unwrap();
    let cond_b = lhs == rhs;

    let cond_c = d.alternating_product(4).is_full();
    Ok(Rank1Report {
        h_tilde,
        cond_a,
        cond_b,
        cond_c,
    })
}

/// Verified unipotent-Sylow factorization of a BN-pair group.
pub struct UnipotentReport {
    /// (U U^-)^2 = G.
    pub four_product_covers: bool,
    /// U U^- U = G; happens exactly when U is a Carter subgroup.
    pub three_product_covers: bool,
    /// H meets U U^- U only in the identity.
    pub h_meets_triple_trivially: bool,
    /// U self-normalizing, i.e. H = 1.
    pub u_is_carter: bool,
    pub witness: FactorizationWitness,
    pub gamma_exact: Gamma,
    /// Witness length agrees with the exact minimum.
    pub minimal: bool,
}

/// Checks G = (UU^-)^2, emits the corresponding witness (length 3 when
/// H = 1, else 4), certifies minimality against the exact solver and
/// records the H-intersection invariant that forces length 4.
pub fn verify_unipotent_products(d: &BNDatum) -> Result<UnipotentReport, BnError> {
    let g = &d.group;
    let four_product_covers = d.alternating_product(4).is_full();
    if !four_product_covers {
        return Err(BnError::VerificationFailed(
            "(U U^-)^2 does not cover the group".into(),
        ));
    }
    let triple = d.alternating_product(3);
    let three_product_covers = triple.is_full();
    let mut meet = d.h.bits().clone();
    meet.intersect_with(triple.bits());
    let h_meets_triple_trivially = meet.count() == 1;
    if !h_meets_triple_trivially {
        return Err(BnError::VerificationFailed(
            "H meets U U^- U beyond the identity".into(),
        ));
    }
    let u_is_carter = d.u.normalizer().order() == d.u.order();
    if u_is_carter != (d.h.order() == 1) {
        return Err(BnError::VerificationFailed(
            "self-normalizing U must coincide with H = 1".into(),
        ));
    }
    // conjugators 1, n0, 1, n0 realize U U^- U U^-; drop to three
    // factors when H = 1
    let conjugators = if d.h.order() == 1 {
        vec![0, d.n0, 0]
    } else {
        vec![0, d.n0, 0, d.n0]
    };
    let witness =
        FactorizationWitness::new(g, d.u.clone(), conjugators, Provenance::UnipotentProduct);
    if !verify_witness(&witness) {
        return Err(BnError::VerificationFailed(
            "unipotent witness failed direct verification".into(),
        ));
    }
    let (gamma_exact, _) = gamma_cp_exact(g, &d.u)?;
    let minimal = gamma_exact == Gamma::Finite(witness.k());
    if three_product_covers != (d.h.order() == 1) {
        return Err(BnError::VerificationFailed(
            "three-factor cover must coincide with the Carter case".into(),
        ));
    }
    Ok(UnipotentReport {
        four_product_covers,
        three_product_covers,
        h_meets_triple_trivially,
        u_is_carter,
        witness,
        gamma_exact,
        minimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_orders() {
        for q in [2u64, 3, 4, 5] {
            let d = build_sl2(q).unwrap();
            assert_eq!(d.group.order() as u64, q * (q * q - 1));
            assert_eq!(d.u.order() as u64, q);
            assert_eq!(d.h.order() as u64, q - 1);
            assert_eq!(d.b.order() as u64, q * (q - 1));
            // U and U^- intersect trivially
            let mut meet = d.u.bits().clone();
            meet.intersect_with(d.u_minus.bits());
            assert_eq!(meet.count(), 1);
        }
        assert!(build_sl2(6).is_err());
        assert!(build_sl2(11).is_err());
    }

    #[test]
    fn sl2_3_product_counts() {
        let d = build_sl2(3).unwrap();
        // |U| = |U^-| = 3 and U meets U^- trivially, so |U U^-| = 9
        let prod = setwise_product(d.u.as_set(), d.u_minus.as_set()).unwrap();
        assert_eq!(prod.count(), 9);
    }

    #[test]
    fn sl2_5_double_product_covers() {
        let d = build_sl2(5).unwrap();
        assert!(d.alternating_product(4).is_full());
        let r = rank1_criterion(&d).unwrap();
        assert!(r.cond_a && r.cond_b && r.cond_c);
    }

    #[test]
    fn sl2_2_is_carter_case() {
        let d = build_sl2(2).unwrap();
        assert_eq!(d.h.order(), 1);
        let rep = verify_unipotent_products(&d).unwrap();
        assert!(rep.three_product_covers);
        assert!(rep.u_is_carter);
        assert_eq!(rep.witness.k(), 3);
        assert_eq!(rep.gamma_exact, Gamma::Finite(3));
        assert!(rep.minimal);
    }

    #[test]
    fn sl2_7_gamma_is_four() {
        let d = build_sl2(7).unwrap();
        let rep = verify_unipotent_products(&d).unwrap();
        assert!(rep.four_product_covers);
        assert!(!rep.three_product_covers);
        assert!(rep.h_meets_triple_trivially);
        assert_eq!(rep.witness.k(), 4);
        assert_eq!(rep.gamma_exact, Gamma::Finite(4));
        assert!(rep.minimal);
    }

    #[test]
    fn sl3_2_double_product_covers_and_not_rank_one() {
        let d = build_sl3_2().unwrap();
        assert_eq!(d.group.order(), 168);
        assert_eq!(d.u.order(), 8);
        assert_eq!(d.h.order(), 1);
        assert!(d.alternating_product(4).is_full());
        assert!(matches!(rank1_criterion(&d), Err(BnError::NotRankOne)));
    }

    #[test]
    fn su3_3_builds() {
        let d = build_su3_3().unwrap();
        assert_eq!(d.group.order(), 6048);
        assert_eq!(d.u.order(), 27);
        assert_eq!(d.h.order(), 8);
        let r = rank1_criterion(&d).unwrap();
        assert!(r.cond_a && r.cond_b && r.cond_c);
    }

    #[test]
    fn alternating_pattern_matches_gamma() {
        for q in [2u64, 3, 4, 5, 7] {
            let d = build_sl2(q).unwrap();
            let (gamma, _) = gamma_cp_exact(&d.group, &d.u).unwrap();
            let k = gamma.finite().unwrap();
            assert!(d.alternating_product(k).is_full(), "q = {}", q);
            if k > 1 {
                assert!(!d.alternating_product(k - 1).is_full(), "q = {}", q);
            }
        }
    }
}
