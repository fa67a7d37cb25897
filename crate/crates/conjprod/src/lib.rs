//! Finite-group computation library built around factorizations of a
//! group into setwise products of conjugate subgroups.
//!
//! The core objects are exhaustively enumerated group tables
//! ([`group::GroupTable`]), subgroups as membership bit-vectors
//! ([`subgrp::SubgroupSet`]), double-coset decompositions with their
//! boolean product-support tables ([`dcoset::DoubleCosetTable`]), and
//! verifiable factorization witnesses ([`gamma::FactorizationWitness`]).
//!
//! On top of those sit an exact minimal-length solver driven by
//! breadth-first search over double-coset support masks, an independent
//! brute-force oracle, structural decompositions (solvable radical,
//! socle series, Carter subgroups), and constructive factorizations:
//! unipotent products in rank-1 groups of Lie type, Sylow-2 products of
//! symmetric and alternating groups, affine-primitive stabilizer
//! products, and Carter-subgroup products of solvable groups.
//!
//! See the `examples/` directory for runnable entry points into each
//! capability, and the `conjprod` binary for the batch CLI.

pub mod affine;
pub mod bits;
pub mod sym2;
pub mod bn;
pub mod families;
pub mod structure;
pub mod dcoset;
pub mod gamma;
pub mod subgrp;
pub mod elem;
pub mod gf;
pub mod group;
pub mod mat;
pub mod perm;

pub use bits::BitVec;
pub use elem::{Domain, Element};
pub use group::{enumerate_group, quotient_group, subgroup_table, GroupTable};

/// Configurable computation ceilings.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Maximum enumerated group order.
    pub enumeration_cap: usize,
    /// Maximum group order for exhaustive subgroup enumeration.
    pub subgroup_enum_bound: usize,
    /// Maximum group order for the brute-force oracle.
    pub oracle_bound: usize,
    /// Maximum group order for normal-lattice construction.
    pub lattice_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: group::DEFAULT_CAP,
            subgroup_enum_bound: 2000,
            oracle_bound: 2000,
            lattice_bound: 50_000,
        }
    }
}
