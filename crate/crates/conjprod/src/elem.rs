//! Canonical element encodings.
//!
//! Both supported element kinds (permutations of degree <= 16 and
//! matrices of dimension <= 4 over a field with at most 16 elements)
//! pack into a u64 of 4-bit slots. The packed code is the canonical
//! encoding: it orders elements totally for deduplication and gives
//! O(1) equality, and multiplication works directly on codes.

use crate::gf::GfParams;
use crate::mat::Mat;
use crate::perm::Perm;
use serde_json::json;
use std::sync::Arc;
use thiserror::Error;

pub const MAX_PERM_DEGREE: usize = 16;

#[derive(Debug, Error)]
pub enum ElemError {
    #[error("permutation degree {0} exceeds the packed limit {MAX_PERM_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("elements live in different domains")]
    DomainMismatch,
}

/// The ambient element kind a group lives in.
#[derive(Clone, PartialEq, Eq)]
pub enum Domain {
    Perm { degree: usize },
    Matrix { dim: usize, field: Arc<GfParams> },
}

impl std::fmt::Debug for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Domain::Perm { degree } => write!(f, "Perm({})", degree),
            Domain::Matrix { dim, field } => write!(f, "Mat({}, GF({}))", dim, field.q()),
        }
    }
}

#[inline]
fn nib(code: u64, i: usize) -> u8 {
    ((code >> (4 * i)) & 0xf) as u8
}

#[inline]
fn set_nib(code: &mut u64, i: usize, v: u8) {
    *code |= (v as u64) << (4 * i);
}

impl Domain {
    pub fn perm(degree: usize) -> Result<Domain, ElemError> {
        if degree == 0 || degree > MAX_PERM_DEGREE {
            return Err(ElemError::DegreeTooLarge(degree));
        }
        Ok(Domain::Perm { degree })
    }

    pub fn matrix(dim: usize, field: Arc<GfParams>) -> Domain {
        assert!(dim >= 1 && dim <= 4);
        Domain::Matrix { dim, field }
    }

    pub fn slots(&self) -> usize {
        match self {
            Domain::Perm { degree } => *degree,
            Domain::Matrix { dim, .. } => dim * dim,
        }
    }

    pub fn identity(&self) -> u64 {
        match self {
            Domain::Perm { degree } => {
                let mut c = 0u64;
                for i in 0..*degree {
                    set_nib(&mut c, i, i as u8);
                }
                c
            }
            Domain::Matrix { dim, .. } => {
                let mut c = 0u64;
                for i in 0..*dim {
                    set_nib(&mut c, i * dim + i, 1);
                }
                c
            }
        }
    }

    /// Code of a*b (right factor acts first for permutations).
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            Domain::Perm { degree } => {
                let mut out = 0u64;
                for i in 0..*degree {
                    let bi = nib(b, i) as usize;
                    out |= ((a >> (4 * bi)) & 0xf) << (4 * i);
                }
                out
            }
            Domain::Matrix { dim, field } => {
                let n = *dim;
                let mut out = 0u64;
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = 0u8;
                        for l in 0..n {
                            acc = field.add(acc, field.mul(nib(a, i * n + l), nib(b, l * n + j)));
                        }
                        set_nib(&mut out, i * n + j, acc);
                    }
                }
                out
            }
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        match self {
            Domain::Perm { degree } => {
                let mut out = 0u64;
                for i in 0..*degree {
                    set_nib(&mut out, nib(a, i) as usize, i as u8);
                }
                out
            }
            Domain::Matrix { dim, field } => {
                mat_to_code(&code_to_mat(a, *dim).inverse(field))
            }
        }
    }

    pub fn is_valid(&self, code: u64) -> bool {
        match self {
            Domain::Perm { degree } => {
                let mut seen = 0u32;
                for i in 0..*degree {
                    let v = nib(code, i) as usize;
                    if v >= *degree || seen >> v & 1 != 0 {
                        return false;
                    }
                    seen |= 1 << v;
                }
                code >> (4 * degree) == 0
            }
            Domain::Matrix { dim, field } => {
                let n = *dim;
                if (0..n * n).any(|i| nib(code, i) >= field.q()) || code >> (4 * n * n) != 0 {
                    return false;
                }
                code_to_mat(code, n).det(field) != 0
            }
        }
    }

    /// Human-readable form used in reports and witness files.
    pub fn code_to_json(&self, code: u64) -> serde_json::Value {
        match self {
            Domain::Perm { .. } => json!(format!("{}", self.code_to_perm(code))),
            Domain::Matrix { dim, .. } => json!(code_to_mat(code, *dim).rows()),
        }
    }

    pub fn code_to_string(&self, code: u64) -> String {
        match self {
            Domain::Perm { .. } => format!("{}", self.code_to_perm(code)),
            Domain::Matrix { dim, .. } => format!("{:?}", code_to_mat(code, *dim)),
        }
    }

    pub fn perm_to_code(&self, p: &Perm) -> u64 {
        match self {
            Domain::Perm { degree } => {
                assert_eq!(p.degree(), *degree);
                let mut c = 0u64;
                for (i, &img) in p.images().iter().enumerate() {
                    set_nib(&mut c, i, img);
                }
                c
            }
            _ => panic!("not a permutation domain"),
        }
    }

    pub fn code_to_perm(&self, code: u64) -> Perm {
        match self {
            Domain::Perm { degree } => {
                Perm::from_images((0..*degree).map(|i| nib(code, i)).collect())
            }
            _ => panic!("not a permutation domain"),
        }
    }

    pub fn mat_to_code_checked(&self, m: &Mat) -> u64 {
        match self {
            Domain::Matrix { dim, field } => {
                assert_eq!(m.dim as usize, *dim);
                assert!(m.det(field) != 0, "group elements must be invertible");
                mat_to_code(m)
            }
            _ => panic!("not a matrix domain"),
        }
    }

    pub fn code_to_matrix(&self, code: u64) -> Mat {
        match self {
            Domain::Matrix { dim, .. } => code_to_mat(code, *dim),
            _ => panic!("not a matrix domain"),
        }
    }
}

pub fn mat_to_code(m: &Mat) -> u64 {
    let n = m.dim as usize;
    let mut c = 0u64;
    for i in 0..n * n {
        set_nib(&mut c, i, m.e[i]);
    }
    c
}

fn code_to_mat(code: u64, dim: usize) -> Mat {
    let mut m = Mat::zero(dim);
    for i in 0..dim * dim {
        m.e[i] = nib(code, i);
    }
    m
}

/// A group element carrying its domain; the user-facing element type.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    pub domain: Domain,
    pub code: u64,
}

impl Element {
    pub fn from_perm(p: &Perm) -> Result<Element, ElemError> {
        let domain = Domain::perm(p.degree())?;
        let code = domain.perm_to_code(p);
        Ok(Element { domain, code })
    }

    pub fn from_matrix(m: &Mat, field: Arc<GfParams>) -> Element {
        let domain = Domain::matrix(m.dim as usize, field);
        let code = domain.mat_to_code_checked(m);
        Element { domain, code }
    }
}

impl std::fmt::Debug for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.domain.code_to_string(self.code))
    }
}

/// Deterministic hasher for u64 element codes; avoids per-process
/// randomness so enumeration-dependent diagnostics are reproducible.
#[derive(Default)]
pub struct CodeHasher(u64);

impl std::hash::Hasher for CodeHasher {
    fn finish(&self) -> u64 {
        let mut h = self.0;
        h ^= h >> 33;
        h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
        h ^= h >> 29;
        h
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ b as u64).wrapping_mul(0x0100_0000_01b3);
        }
    }

    fn write_u64(&mut self, x: u64) {
        self.0 = (self.0 ^ x).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }

    fn write_u32(&mut self, x: u32) {
        self.write_u64(x as u64);
    }

    fn write_usize(&mut self, x: usize) {
        self.write_u64(x as u64);
    }

    fn write_u128(&mut self, x: u128) {
        self.write_u64(x as u64);
        self.write_u64((x >> 64) as u64);
    }
}

pub type CodeBuildHasher = std::hash::BuildHasherDefault<CodeHasher>;
pub type CodeMap<V> = std::collections::HashMap<u64, V, CodeBuildHasher>;
pub type CodeSet = std::collections::HashSet<u64, CodeBuildHasher>;
