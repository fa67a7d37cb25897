//! Structural decompositions: normal-subgroup lattice, solvable
//! radical, socle, the alternating radical/socle normal series with its
//! non-abelian layer data, and Carter subgroups of solvable groups.

use crate::bits::BitVec;
use crate::group::{quotient_group, subgroup_table, GroupError, GroupTable};
use crate::subgrp::{
    enumerate_subgroups, factorize, SubgroupError, SubgroupFilter, SubgroupSet,
};
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("group order {0} exceeds the lattice bound {1}")]
    BoundExceeded(usize, usize),
    #[error("group is not solvable")]
    NotSolvable,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
}

/// A normal subgroup with its lattice flags.
#[derive(Clone)]
pub struct NormalEntry {
    pub subgroup: SubgroupSet,
    pub solvable: bool,
    pub minimal_normal: bool,
}

/// The complete list of normal subgroups, closed under join. Normal
/// subgroups are unions of conjugacy classes, so joining the normal
/// closures of single classes generates everything.
pub struct NormalLattice {
    pub entries: Vec<NormalEntry>,
}

pub fn normal_lattice(
    parent: &Arc<GroupTable>,
    bound: usize,
) -> Result<NormalLattice, StructureError> {
    if parent.order() > bound {
        return Err(StructureError::BoundExceeded(parent.order(), bound));
    }
    let classes = parent.conjugacy_classes();
    let mut subs: Vec<SubgroupSet> = Vec::new();
    let mut seen: std::collections::HashSet<u128> = std::collections::HashSet::new();
    let push = |s: SubgroupSet, subs: &mut Vec<SubgroupSet>, seen: &mut std::collections::HashSet<u128>| {
        if seen.insert(s.bits().digest()) {
            subs.push(s);
            true
        } else {
            false
        }
    };
    for class in &classes {
        let idx: Vec<usize> = class.iter().map(|&i| i as usize).collect();
        let s = SubgroupSet::closure(parent, &idx);
        push(s, &mut subs, &mut seen);
    }
    // close under join
    let mut i = 0;
    while i < subs.len() {
        for j in 0..i {
            if subs[j].contains_subgroup(&subs[i]) || subs[i].contains_subgroup(&subs[j]) {
                continue;
            }
            let mut gens = subs[i].generating_set();
            gens.extend(subs[j].generating_set());
            let join = SubgroupSet::closure(parent, &gens);
            push(join, &mut subs, &mut seen);
        }
        i += 1;
    }
    debug_assert!(subs.iter().all(|s| s.is_normal()));
    subs.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.bits().cmp_index_lex(b.bits()))
    });
    let entries: Vec<NormalEntry> = subs
        .iter()
        .map(|s| {
            let minimal_normal = s.order() > 1
                && subs
                    .iter()
                    .all(|t| t.order() == 1 || !(t.order() < s.order() && s.contains_subgroup(t)));
            NormalEntry {
                subgroup: s.clone(),
                solvable: s.is_solvable(),
                minimal_normal,
            }
        })
        .collect();
    Ok(NormalLattice { entries })
}

impl NormalLattice {
    pub fn minimal_normals(&self) -> Vec<&NormalEntry> {
        self.entries.iter().filter(|e| e.minimal_normal).collect()
    }

    /// Largest solvable normal subgroup; the lattice is join-closed and
    /// joins of solvable normals are solvable, so the maximum is unique.
    pub fn solvable_radical(&self) -> SubgroupSet {
        self.entries
            .iter()
            .filter(|e| e.solvable)
            .max_by_key(|e| e.subgroup.order())
            .map(|e| e.subgroup.clone())
            .expect("trivial subgroup is always present")
    }

    /// Join of the minimal normal subgroups.
    pub fn socle(&self) -> SubgroupSet {
        let parent = self.entries[0].subgroup.parent().clone();
        let mut gens: Vec<usize> = Vec::new();
        for e in self.minimal_normals() {
            gens.extend(e.subgroup.generating_set());
        }
        SubgroupSet::closure(&parent, &gens)
    }
}

pub fn solvable_radical(
    parent: &Arc<GroupTable>,
    bound: usize,
) -> Result<SubgroupSet, StructureError> {
    Ok(normal_lattice(parent, bound)?.solvable_radical())
}

pub fn socle(parent: &Arc<GroupTable>, bound: usize) -> Result<SubgroupSet, StructureError> {
    Ok(normal_lattice(parent, bound)?.socle())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LayerKind {
    Radical,
    Socle,
}

#[derive(Clone, Serialize)]
pub struct SocleLayer {
    pub kind: LayerKind,
    /// Order of the accumulated normal subgroup H_t after this step.
    pub reached_order: usize,
    /// For socle layers: number of simple direct factors of the layer.
    pub simple_factor_count: Option<usize>,
    /// For socle layers: orders of the simple direct factors.
    pub factor_orders: Option<Vec<usize>>,
}

/// The alternating radical/socle normal series of G, with the count of
/// simple non-abelian factors per socle layer and the product of all
/// non-abelian composition factor orders (2 for solvable groups).
#[derive(Clone, Serialize)]
pub struct SocleSeriesReport {
    pub group_order: usize,
    pub layers: Vec<SocleLayer>,
    /// Non-abelian socle length: the number of socle layers.
    pub m: usize,
    pub nab_order: u128,
}

/// Per-layer n_i and the outer bound m < (1/log2 5) log2 log2 nab.
#[derive(Clone, Serialize)]
pub struct SocleLengthCheck {
    pub m: usize,
    pub nab_order: u128,
    pub bound: f64,
    pub pass: bool,
    /// (i, n_i, n_{i-1}, 5*n_i <= n_{i-1}) for i >= 2.
    pub layer_ratios: Vec<(usize, usize, usize, bool)>,
}

pub fn socle_series(
    parent: &Arc<GroupTable>,
    bound: usize,
) -> Result<SocleSeriesReport, StructureError> {
    let mut layers: Vec<SocleLayer> = Vec::new();
    let mut nab: u128 = 1;
    let mut m = 0usize;
    // H1 = R(G)
    let lattice = normal_lattice(parent, bound)?;
    let mut reached = lattice.solvable_radical();
    layers.push(SocleLayer {
        kind: LayerKind::Radical,
        reached_order: reached.order(),
        simple_factor_count: None,
        factor_orders: None,
    });
    while reached.order() < parent.order() {
        // socle step on G/H
        let q = quotient_group(parent, reached.bits())?;
        let q_lat = normal_lattice(&q.group, bound)?;
        debug_assert_eq!(
            q_lat.solvable_radical().order(),
            1,
            "solvable radical must vanish before a socle step"
        );
        let q_soc = q_lat.socle();
        // count simple direct factors of the socle layer
        let soc_table = subgroup_table(&q.group, q_soc.bits())?;
        let soc_lat = normal_lattice(&soc_table.group, bound)?;
        let factors = soc_lat.minimal_normals();
        let mut factor_orders: Vec<usize> = factors.iter().map(|e| e.subgroup.order()).collect();
        factor_orders.sort_unstable();
        debug_assert_eq!(
            factor_orders.iter().product::<usize>(),
            q_soc.order(),
            "socle layer must be the direct product of its minimal normals"
        );
        debug_assert!(factors.iter().all(|e| !e.solvable));
        m += 1;
        for &f in &factor_orders {
            nab *= f as u128;
        }
        let n_i = factor_orders.len();
        // pull back to G
        let mut bits = BitVec::new(parent.order());
        for i in 0..parent.order() {
            if q_soc.contains(q.projection[i] as usize) {
                bits.set(i);
            }
        }
        reached = SubgroupSet::from_bits_unchecked(parent, bits);
        layers.push(SocleLayer {
            kind: LayerKind::Socle,
            reached_order: reached.order(),
            simple_factor_count: Some(n_i),
            factor_orders: Some(factor_orders),
        });
        if reached.order() == parent.order() {
            break;
        }
        // radical step on the new quotient
        let q2 = quotient_group(parent, reached.bits())?;
        let q2_lat = normal_lattice(&q2.group, bound)?;
        let q2_rad = q2_lat.solvable_radical();
        let mut bits = BitVec::new(parent.order());
        for i in 0..parent.order() {
            if q2_rad.contains(q2.projection[i] as usize) {
                bits.set(i);
            }
        }
        reached = SubgroupSet::from_bits_unchecked(parent, bits);
        layers.push(SocleLayer {
            kind: LayerKind::Radical,
            reached_order: reached.order(),
            simple_factor_count: None,
            factor_orders: None,
        });
    }
    if m == 0 {
        nab = 2;
    }
    Ok(SocleSeriesReport {
        group_order: parent.order(),
        layers,
        m,
        nab_order: nab,
    })
}

/// m < (1/log2 5) * log2 log2 |G|_nab, vacuous at m = 0, plus the
/// per-layer decay 5 n_i <= n_{i-1} for i >= 2.
pub fn check_socle_length_bound(report: &SocleSeriesReport) -> SocleLengthCheck {
    let loglog = if report.nab_order >= 2 {
        (report.nab_order as f64).log2().log2()
    } else {
        0.0
    };
    let bound = loglog / 5f64.log2();
    let pass = report.m == 0 || (report.m as f64) < bound;
    let counts: Vec<usize> = report
        .layers
        .iter()
        .filter_map(|l| l.simple_factor_count)
        .collect();
    let mut layer_ratios = Vec::new();
    for i in 1..counts.len() {
        layer_ratios.push((i + 1, counts[i], counts[i - 1], 5 * counts[i] <= counts[i - 1]));
    }
    let pass = pass && layer_ratios.iter().all(|&(_, _, _, ok)| ok);
    SocleLengthCheck {
        m: report.m,
        nab_order: report.nab_order,
        bound,
        pass,
        layer_ratios,
    }
}

/// A Carter subgroup with its certificate: a normal-Sylow nilpotency
/// witness and the self-normalizer check.
#[derive(Clone)]
pub struct CarterSubgroup {
    pub subgroup: SubgroupSet,
    /// (prime, sylow order) pairs, each Sylow normal in the subgroup.
    pub nilpotency: Vec<(u64, usize)>,
    pub self_normalizing: bool,
}

/// Carter subgroup of a solvable group: nilpotent and self-normalizing.
///
/// Strategy: if G is nilpotent it is its own Carter subgroup. Otherwise
/// take a minimal normal N, pull back a Carter subgroup of G/N to
/// D <= G; when D is proper, a Carter subgroup of D is one of G (the
/// image of D in G/N is self-normalizing, which traps any G-normalizer
/// inside D). When D = G the quotient was nilpotent and we fall back to
/// a certified search through the nilpotent subgroups by decreasing
/// order for a self-normalizing one.
pub fn carter_subgroup(
    parent: &Arc<GroupTable>,
    limits: &crate::Limits,
) -> Result<CarterSubgroup, StructureError> {
    carter_subgroup_impl(parent, limits, None)
}

/// Seeded variant used for conjugacy testing: randomizes the choice of
/// minimal normal subgroup and the fallback scan order.
pub fn carter_subgroup_seeded(
    parent: &Arc<GroupTable>,
    limits: &crate::Limits,
    seed: u64,
) -> Result<CarterSubgroup, StructureError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    carter_subgroup_impl(parent, limits, Some(&mut rng))
}

fn carter_subgroup_impl(
    parent: &Arc<GroupTable>,
    limits: &crate::Limits,
    mut rng: Option<&mut rand_chacha::ChaCha8Rng>,
) -> Result<CarterSubgroup, StructureError> {
    if !SubgroupSet::whole(parent).is_solvable() {
        return Err(StructureError::NotSolvable);
    }
    let bits = carter_rec(parent, limits, &mut rng)?;
    let subgroup = SubgroupSet::from_bits_unchecked(parent, bits);
    let mut nilpotency = Vec::new();
    for (p, _) in factorize(subgroup.order() as u64) {
        let syl = crate::subgrp::sylow_in(parent, &subgroup, p)?;
        let normal_in = syl.normalizer_in(&subgroup).order() == subgroup.order();
        debug_assert!(normal_in);
        nilpotency.push((p, syl.order()));
    }
    let self_normalizing = subgroup.normalizer().order() == subgroup.order();
    debug_assert!(self_normalizing);
    Ok(CarterSubgroup {
        subgroup,
        nilpotency,
        self_normalizing,
    })
}

fn carter_rec(
    parent: &Arc<GroupTable>,
    limits: &crate::Limits,
    rng: &mut Option<&mut rand_chacha::ChaCha8Rng>,
) -> Result<BitVec, StructureError> {
    let whole = SubgroupSet::whole(parent);
    if whole.is_nilpotent() {
        return Ok(whole.bits().clone());
    }
    let lattice = normal_lattice(parent, limits.lattice_bound)?;
    let minimals = lattice.minimal_normals();
    debug_assert!(!minimals.is_empty());
    let n = match rng {
        Some(r) => {
            use rand::Rng;
            minimals[r.gen_range(0..minimals.len())].subgroup.clone()
        }
        None => {
            // least element count, ties broken by least bit-vector
            minimals
                .iter()
                .min_by(|a, b| {
                    a.subgroup
                        .order()
                        .cmp(&b.subgroup.order())
                        .then_with(|| a.subgroup.bits().cmp_index_lex(b.subgroup.bits()))
                })
                .unwrap()
                .subgroup
                .clone()
        }
    };
    let q = quotient_group(parent, n.bits())?;
    let cq_bits = carter_rec(&q.group, limits, rng)?;
    // preimage of the quotient Carter subgroup
    let mut d_bits = BitVec::new(parent.order());
    for i in 0..parent.order() {
        if cq_bits.get(q.projection[i] as usize) {
            d_bits.set(i);
        }
    }
    if d_bits.count() < parent.order() {
        let sub = subgroup_table(parent, &d_bits)?;
        let c_sub = carter_rec(&sub.group, limits, rng)?;
        let mut bits = BitVec::new(parent.order());
        for i in c_sub.iter_ones() {
            bits.set(sub.members[i] as usize);
        }
        return Ok(bits);
    }
    // G/N nilpotent: certified search through nilpotent subgroups
    let mut cands = enumerate_subgroups(
        parent,
        SubgroupFilter::Nilpotent,
        true,
        limits.subgroup_enum_bound,
    )?;
    cands.sort_by(|a, b| b.order().cmp(&a.order()));
    if let Some(r) = rng {
        // shuffle within equal orders to vary the representative found
        use rand::seq::SliceRandom;
        cands.shuffle(*r);
        cands.sort_by(|a, b| b.order().cmp(&a.order()));
        // also randomize which conjugate is reported
        for c in &mut cands {
            use rand::Rng;
            let x = r.gen_range(0..parent.order());
            *c = c.conjugate(x);
        }
    }
    for c in &cands {
        if c.normalizer().order() == c.order() {
            return Ok(c.bits().clone());
        }
    }
    unreachable!("a solvable group always has a self-normalizing nilpotent subgroup")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alt, direct_product_gens, enumerate_perms, sym, sym_gens, cyclic_gens};
    use crate::Limits;

    #[test]
    fn s4_normal_lattice() {
        let s4 = sym(4);
        let lat = normal_lattice(&s4, 50_000).unwrap();
        let orders: Vec<usize> = lat.entries.iter().map(|e| e.subgroup.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert!(lat.entries.iter().all(|e| e.subgroup.is_normal()));
    }

    #[test]
    fn a5_is_simple() {
        let a5 = alt(5);
        let lat = normal_lattice(&a5, 50_000).unwrap();
        let orders: Vec<usize> = lat.entries.iter().map(|e| e.subgroup.order()).collect();
        assert_eq!(orders, vec![1, 60]);
    }

    #[test]
    fn s3_times_c2_normal_subgroups_match_exhaustive_scan() {
        let g = enumerate_perms(&direct_product_gens(&sym_gens(3), &cyclic_gens(2)), 100).unwrap();
        let lat = normal_lattice(&g, 50_000).unwrap();
        // independent oracle: scan all 2^12 subsets for normal subgroups
        let n = g.order();
        let mut expected: Vec<BitVec> = Vec::new();
        for mask in 0..(1u32 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let closed = members.iter().all(|&a| {
                members.iter().all(|&b| mask >> g.mult(a, b) & 1 == 1)
            });
            if !closed {
                continue;
            }
            let normal = members
                .iter()
                .all(|&a| (0..n).all(|x| mask >> g.conj(a, x) & 1 == 1));
            if !normal {
                continue;
            }
            let mut bits = BitVec::new(n);
            for &m in &members {
                bits.set(m);
            }
            expected.push(bits);
        }
        // 1, the central C2, A3, three index-2 subgroups, G itself
        assert_eq!(expected.len(), 7);
        assert_eq!(lat.entries.len(), expected.len());
        for e in &lat.entries {
            assert!(expected.contains(e.subgroup.bits()));
        }
    }

    #[test]
    fn radicals_and_socles() {
        let s4 = sym(4);
        let lat4 = normal_lattice(&s4, 50_000).unwrap();
        assert_eq!(lat4.solvable_radical().order(), 24);

        let s5 = sym(5);
        let lat5 = normal_lattice(&s5, 50_000).unwrap();
        assert_eq!(lat5.solvable_radical().order(), 1);
        assert_eq!(lat5.socle().order(), 60);
    }

    #[test]
    fn radical_of_a5_times_c6() {
        let g = enumerate_perms(
            &direct_product_gens(&crate::families::alt_gens(5), &cyclic_gens(6)),
            1000,
        )
        .unwrap();
        assert_eq!(g.order(), 360);
        let rad = solvable_radical(&g, 50_000).unwrap();
        assert_eq!(rad.order(), 6);
        // the radical contains every solvable normal subgroup
        let lat = normal_lattice(&g, 50_000).unwrap();
        for e in &lat.entries {
            if e.solvable {
                assert!(rad.contains_subgroup(&e.subgroup));
            }
        }
    }

    #[test]
    fn socle_series_s5() {
        let s5 = sym(5);
        let rep = socle_series(&s5, 50_000).unwrap();
        assert_eq!(rep.m, 1);
        assert_eq!(rep.nab_order, 60);
        let reached: Vec<usize> = rep.layers.iter().map(|l| l.reached_order).collect();
        assert_eq!(reached, vec![1, 60, 120]);
        assert_eq!(rep.layers[1].simple_factor_count, Some(1));
        let check = check_socle_length_bound(&rep);
        assert!(check.pass);
        // 1 < 0.4307 * log2 log2 60 ~ 1.104
        assert!((check.bound - 1.104).abs() < 0.01);
    }

    #[test]
    fn socle_series_solvable() {
        let s4 = sym(4);
        let rep = socle_series(&s4, 50_000).unwrap();
        assert_eq!(rep.m, 0);
        assert_eq!(rep.nab_order, 2);
        let check = check_socle_length_bound(&rep);
        assert!(check.pass);
    }

    #[test]
    fn socle_series_wreath() {
        let g = enumerate_perms(&crate::families::wreath_cyclic_gens(&crate::families::alt_gens(5), 2), 10_000)
            .unwrap();
        let rep = socle_series(&g, 50_000).unwrap();
        assert_eq!(rep.m, 1);
        assert_eq!(rep.layers[1].simple_factor_count, Some(2));
        assert_eq!(rep.nab_order, 3600);
        let check = check_socle_length_bound(&rep);
        assert!(check.pass);
        assert!((check.bound - 1.526).abs() < 0.01);
    }

    #[test]
    fn carter_of_s4_is_sylow2() {
        let s4 = sym(4);
        let c = carter_subgroup(&s4, &Limits::default()).unwrap();
        assert_eq!(c.subgroup.order(), 8);
        assert!(c.self_normalizing);
        assert!(c.subgroup.is_nilpotent());
    }

    #[test]
    fn carter_of_s3_is_c2() {
        let s3 = sym(3);
        let c = carter_subgroup(&s3, &Limits::default()).unwrap();
        assert_eq!(c.subgroup.order(), 2);
    }

    #[test]
    fn carter_of_nilpotent_is_whole() {
        let d8 = enumerate_perms(&crate::families::dihedral_gens(4), 100).unwrap();
        assert_eq!(d8.order(), 8);
        let c = carter_subgroup(&d8, &Limits::default()).unwrap();
        assert_eq!(c.subgroup.order(), 8);
    }

    #[test]
    fn carter_rejects_non_solvable() {
        let a5 = alt(5);
        assert!(matches!(
            carter_subgroup(&a5, &Limits::default()),
            Err(StructureError::NotSolvable)
        ));
    }

    #[test]
    fn carter_outputs_conjugate_across_seeds() {
        let s4 = sym(4);
        let c0 = carter_subgroup(&s4, &Limits::default()).unwrap();
        for seed in 0..4 {
            let c1 = carter_subgroup_seeded(&s4, &Limits::default(), seed).unwrap();
            assert_eq!(c1.subgroup.order(), c0.subgroup.order());
            let conjugate = (0..24).any(|x| c0.subgroup.conjugate(x).bits() == c1.subgroup.bits());
            assert!(conjugate, "seed {} produced a non-conjugate output", seed);
        }
    }

    #[test]
    fn carter_is_maximal_nilpotent_and_covers() {
        // no nilpotent subgroup strictly contains a Carter subgroup,
        // and its normal closure is the whole group
        let s4 = sym(4);
        let c = carter_subgroup(&s4, &Limits::default()).unwrap();
        let all_nil = enumerate_subgroups(&s4, SubgroupFilter::Nilpotent, false, 2000).unwrap();
        for n in &all_nil {
            if n.order() > c.subgroup.order() {
                assert!(!n.contains_subgroup(&c.subgroup));
            }
        }
        assert_eq!(c.subgroup.normal_closure().order(), 24);
    }

    #[test]
    fn carter_image_in_quotient_is_carter() {
        let s4 = sym(4);
        let c = carter_subgroup(&s4, &Limits::default()).unwrap();
        let lat = normal_lattice(&s4, 50_000).unwrap();
        for e in lat.minimal_normals() {
            let q = quotient_group(&s4, e.subgroup.bits()).unwrap();
            let mut img = BitVec::new(q.group.order());
            for i in c.subgroup.iter() {
                img.set(q.projection[i] as usize);
            }
            let img = SubgroupSet::from_bits_checked(&q.group, img).unwrap();
            assert!(img.is_nilpotent());
            assert_eq!(img.normalizer().order(), img.order());
        }
    }
}
