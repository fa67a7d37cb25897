//! (A,A)-double-coset decomposition of a group plus the boolean
//! product-support table: for cosets D_i, D_j the set of coset ids k
//! with D_k contained in D_i * D_j. The support table is the boolean
//! shadow of the Hecke algebra structure constants and is all the
//! minimal-length solver needs.

use crate::bits::BitVec;
use crate::group::GroupTable;
use crate::subgrp::SubgroupSet;
use std::io::{Read, Write};
use std::sync::Arc;
use thiserror::Error;

/// Supports are stored as u128 masks.
pub const MAX_COSETS: usize = 128;

#[derive(Debug, Error)]
pub enum DcosetError {
    #[error("{0} double cosets exceed the supported maximum {MAX_COSETS}")]
    TooManyCosets(usize),
    #[error("cache io: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache file does not match this group/subgroup: {0}")]
    CacheMismatch(String),
}

pub struct DoubleCosetTable {
    parent: Arc<GroupTable>,
    base: SubgroupSet,
    reps: Vec<u32>,
    coset_of: Vec<u32>,
    sizes: Vec<u32>,
    support: Vec<u128>,
}

impl DoubleCosetTable {
    /// Full decomposition and product supports. The support of (i, j)
    /// is read off by multiplying D_i with one representative of D_j;
    /// right-saturating by A cannot leave the cosets already touched.
    pub fn build(parent: &Arc<GroupTable>, base: &SubgroupSet) -> Result<Self, DcosetError> {
        assert!(Arc::ptr_eq(parent, base.parent()));
        let n = parent.order();
        let base_gens = base.generating_set();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps: Vec<u32> = Vec::new();
        let mut sizes: Vec<u32> = Vec::new();
        let mut members: Vec<Vec<u32>> = Vec::new();
        for x in 0..n {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x as u32);
            // saturate A x A from x under left/right multiplication by
            // generators of A
            let mut mem: Vec<u32> = vec![x as u32];
            coset_of[x] = id;
            let mut cursor = 0;
            while cursor < mem.len() {
                let y = mem[cursor] as usize;
                cursor += 1;
                for &g in &base_gens {
                    for z in [parent.mult(g, y), parent.mult(y, g)] {
                        if coset_of[z] == u32::MAX {
                            coset_of[z] = id;
                            mem.push(z as u32);
                        }
                    }
                }
            }
            sizes.push(mem.len() as u32);
            members.push(mem);
        }
        let kappa = reps.len();
        if kappa > MAX_COSETS {
            return Err(DcosetError::TooManyCosets(kappa));
        }
        debug_assert_eq!(sizes.iter().map(|&s| s as usize).sum::<usize>(), n);
        debug_assert_eq!(reps[0], 0, "identity double coset comes first");
        debug_assert_eq!(sizes[0] as usize, base.order());

        let mut support = vec![0u128; kappa * kappa];
        for i in 0..kappa {
            for j in 0..kappa {
                let rj = reps[j] as usize;
                let mut mask = 0u128;
                for &d in &members[i] {
                    mask |= 1u128 << coset_of[parent.mult(d as usize, rj)];
                }
                support[i * kappa + j] = mask;
            }
        }
        for j in 0..kappa {
            debug_assert_eq!(support[j], 1u128 << j, "identity coset must act neutrally");
        }
        Ok(DoubleCosetTable {
            parent: parent.clone(),
            base: base.clone(),
            reps,
            coset_of,
            sizes,
            support,
        })
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn base(&self) -> &SubgroupSet {
        &self.base
    }

    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, i: usize) -> usize {
        self.reps[i] as usize
    }

    pub fn coset_of(&self, elem: usize) -> usize {
        self.coset_of[elem] as usize
    }

    pub fn size(&self, i: usize) -> usize {
        self.sizes[i] as usize
    }

    #[inline]
    pub fn support(&self, i: usize, j: usize) -> u128 {
        self.support[i * self.reps.len() + j]
    }

    /// Members of coset i as a bit-vector.
    pub fn coset_bits(&self, i: usize) -> BitVec {
        let mut bits = BitVec::new(self.parent.order());
        for (x, &c) in self.coset_of.iter().enumerate() {
            if c as usize == i {
                bits.set(x);
            }
        }
        bits
    }

    /// Coset id of the inverse coset D_i^-1.
    pub fn inverse_coset(&self, i: usize) -> usize {
        self.coset_of[self.parent.inverse(self.reps[i] as usize)] as usize
    }

    const MAGIC: &'static [u8; 4] = b"CPDC";
    const VERSION: u32 = 1;

    /// Binary cache layout (all little-endian):
    /// magic "CPDC", u32 version, u64 group order, u128 base digest,
    /// u64 coset count, coset_of as u32s, reps as u32s, sizes as u32s,
    /// support masks as pairs (low u64, high u64).
    pub fn save(&self, w: &mut impl Write) -> Result<(), DcosetError> {
        w.write_all(Self::MAGIC)?;
        w.write_all(&Self::VERSION.to_le_bytes())?;
        w.write_all(&(self.parent.order() as u64).to_le_bytes())?;
        w.write_all(&self.base.bits().digest().to_le_bytes())?;
        w.write_all(&(self.reps.len() as u64).to_le_bytes())?;
        for &c in &self.coset_of {
            w.write_all(&c.to_le_bytes())?;
        }
        for &r in &self.reps {
            w.write_all(&r.to_le_bytes())?;
        }
        for &s in &self.sizes {
            w.write_all(&s.to_le_bytes())?;
        }
        for &m in &self.support {
            w.write_all(&m.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn load(
        r: &mut impl Read,
        parent: &Arc<GroupTable>,
        base: &SubgroupSet,
    ) -> Result<Self, DcosetError> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != Self::MAGIC {
            return Err(DcosetError::CacheMismatch("bad magic".into()));
        }
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4)?;
        if u32::from_le_bytes(b4) != Self::VERSION {
            return Err(DcosetError::CacheMismatch("version".into()));
        }
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b8)?;
        if u64::from_le_bytes(b8) != parent.order() as u64 {
            return Err(DcosetError::CacheMismatch("group order".into()));
        }
        let mut b16 = [0u8; 16];
        r.read_exact(&mut b16)?;
        if u128::from_le_bytes(b16) != base.bits().digest() {
            return Err(DcosetError::CacheMismatch("base subgroup digest".into()));
        }
        r.read_exact(&mut b8)?;
        let kappa = u64::from_le_bytes(b8) as usize;
        if kappa > MAX_COSETS {
            return Err(DcosetError::CacheMismatch("coset count".into()));
        }
        let mut coset_of = vec![0u32; parent.order()];
        for c in coset_of.iter_mut() {
            r.read_exact(&mut b4)?;
            *c = u32::from_le_bytes(b4);
        }
        let mut reps = vec![0u32; kappa];
        for v in reps.iter_mut() {
            r.read_exact(&mut b4)?;
            *v = u32::from_le_bytes(b4);
        }
        let mut sizes = vec![0u32; kappa];
        for v in sizes.iter_mut() {
            r.read_exact(&mut b4)?;
            *v = u32::from_le_bytes(b4);
        }
        let mut support = vec![0u128; kappa * kappa];
        for v in support.iter_mut() {
            r.read_exact(&mut b16)?;
            *v = u128::from_le_bytes(b16);
        }
        Ok(DoubleCosetTable {
            parent: parent.clone(),
            base: base.clone(),
            reps,
            coset_of,
            sizes,
            support,
        })
    }
}
