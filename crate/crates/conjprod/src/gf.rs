//! Arithmetic in GF(p^k) for p^k <= 16, table-driven.
//!
//! Elements are codes in 0..q encoding polynomials over GF(p) of degree
//! < k in base-p digits: code = sum c_i * p^i. Arithmetic is reduced
//! modulo a configured irreducible polynomial of degree k. Irreducible
//! polynomials are configuration inputs with shipped defaults for
//! GF(4), GF(8) and GF(9); they are never searched for at runtime, so
//! element codes are reproducible bit-for-bit.

use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

pub const MAX_Q: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported field parameters: {0}")]
    UnsupportedParameter(String),
}

/// Field description plus full operation tables.
#[derive(Clone, Serialize, Deserialize)]
pub struct GfParams {
    p: u8,
    k: u8,
    q: u8,
    /// Monic irreducible modulus as coefficient codes c_0..c_k.
    modulus: Vec<u8>,
    #[serde(skip)]
    add: Vec<u8>,
    #[serde(skip)]
    mul: Vec<u8>,
    #[serde(skip)]
    neg: Vec<u8>,
    #[serde(skip)]
    inv: Vec<u8>,
}

impl PartialEq for GfParams {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for GfParams {}

impl std::fmt::Debug for GfParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn is_prime(n: u8) -> bool {
    n >= 2 && (2..n).all(|d| n % d != 0)
}

/// Shipped default moduli: x^2+x+1 over GF(2), x^3+x+1 over GF(2),
/// x^2+1 over GF(3).
pub fn default_modulus(p: u8, k: u8) -> Option<Vec<u8>> {
    match (p, k) {
        (_, 1) => Some(vec![0, 1]), // x; unused beyond degree bookkeeping
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        _ => None,
    }
}

impl GfParams {
    pub fn prime(p: u8) -> Result<Arc<GfParams>, FieldError> {
        GfParams::new(p, 1, default_modulus(p, 1).unwrap())
    }

    pub fn with_default_modulus(p: u8, k: u8) -> Result<Arc<GfParams>, FieldError> {
        let modulus = default_modulus(p, k).ok_or_else(|| {
            FieldError::UnsupportedParameter(format!("no shipped modulus for GF({}^{})", p, k))
        })?;
        GfParams::new(p, k, modulus)
    }

    pub fn new(p: u8, k: u8, modulus: Vec<u8>) -> Result<Arc<GfParams>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::UnsupportedParameter(format!(
                "{} is not prime",
                p
            )));
        }
        let q = (p as u32).checked_pow(k as u32).filter(|&q| q <= MAX_Q as u32);
        let q = q.ok_or_else(|| {
            FieldError::UnsupportedParameter(format!("p^k = {}^{} exceeds {}", p, k, MAX_Q))
        })? as u8;
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return Err(FieldError::UnsupportedParameter(
                "modulus must be monic of degree k".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::UnsupportedParameter(
                "modulus coefficients must lie in [0, p)".into(),
            ));
        }
        if k > 1 && !poly_irreducible(p, &modulus) {
            return Err(FieldError::UnsupportedParameter(
                "modulus is reducible".into(),
            ));
        }

        let n = q as usize;
        let mut gf = GfParams {
            p,
            k,
            q,
            modulus,
            add: vec![0; n * n],
            mul: vec![0; n * n],
            neg: vec![0; n],
            inv: vec![0; n],
        };
        for a in 0..n {
            for b in 0..n {
                gf.add[a * n + b] = gf.add_slow(a as u8, b as u8);
                gf.mul[a * n + b] = gf.mul_slow(a as u8, b as u8);
            }
        }
        for a in 0..n {
            gf.neg[a] = (0..n as u8)
                .find(|&b| gf.add[a * n + b as usize] == 0)
                .unwrap();
            if a != 0 {
                gf.inv[a] = (1..n as u8)
                    .find(|&b| gf.mul[a * n + b as usize] == 1)
                    .ok_or(())
                    .expect("every nonzero element must be invertible");
            }
        }
        Ok(Arc::new(gf))
    }

    fn digits(&self, code: u8) -> Vec<u8> {
        let mut c = code;
        (0..self.k)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    fn from_digits(&self, digits: &[u8]) -> u8 {
        digits
            .iter()
            .rev()
            .fold(0u8, |acc, &d| acc * self.p + d)
    }

    fn add_slow(&self, a: u8, b: u8) -> u8 {
        let da = self.digits(a);
        let db = self.digits(b);
        let sum: Vec<u8> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        self.from_digits(&sum)
    }

    fn mul_slow(&self, a: u8, b: u8) -> u8 {
        let da = self.digits(a);
        let db = self.digits(b);
        let k = self.k as usize;
        let mut prod = vec![0u16; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u16 * y as u16) % self.p as u16;
            }
        }
        // reduce modulo the monic modulus
        for d in (k..2 * k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(k) {
                let idx = d - k + j;
                let sub = (c * m as u16) % self.p as u16;
                prod[idx] = (prod[idx] + self.p as u16 - sub) % self.p as u16;
            }
        }
        let digits: Vec<u8> = prod[..k].iter().map(|&x| x as u8).collect();
        self.from_digits(&digits)
    }

    pub fn p(&self) -> u8 {
        self.p
    }
    pub fn k(&self) -> u8 {
        self.k
    }
    pub fn q(&self) -> u8 {
        self.q
    }
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; panics on 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "division by zero");
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// x -> x^p, the generating automorphism over the prime field.
    pub fn frobenius(&self, a: u8) -> u8 {
        self.pow(a, self.p as u64)
    }

    /// Smallest code generating the multiplicative group.
    pub fn primitive_element(&self) -> u8 {
        let ord = self.q as u64 - 1;
        (2..self.q)
            .chain(std::iter::once(1))
            .find(|&g| {
                let mut x = g;
                let mut n = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    n += 1;
                }
                n == ord
            })
            .expect("multiplicative group is cyclic")
    }
}

fn poly_eval(p: u8, poly: &[u8], x: u8) -> u8 {
    poly.iter()
        .rev()
        .fold(0u16, |acc, &c| (acc * x as u16 + c as u16) % p as u16) as u8
}

/// Degree 2 and 3 polynomials are irreducible over GF(p) exactly when
/// they have no roots; that covers every shipped extension degree.
fn poly_irreducible(p: u8, poly: &[u8]) -> bool {
    let deg = poly.len() - 1;
    assert!(deg <= 3, "only extension degrees up to 3 are supported");
    (0..p).all(|x| poly_eval(p, poly, x) != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_tables() {
        let f = GfParams::with_default_modulus(2, 2).unwrap();
        assert_eq!(f.q(), 4);
        // x * x = x + 1 under x^2 + x + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 3), 1);
        for a in 1..4u8 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn gf9_multiplicative_group_cyclic() {
        let f = GfParams::with_default_modulus(3, 2).unwrap();
        let g = f.primitive_element();
        let mut seen = vec![false; 9];
        let mut x = 1u8;
        for _ in 0..8 {
            x = f.mul(x, g);
            assert!(!seen[x as usize]);
            seen[x as usize] = true;
        }
        assert_eq!(x, 1);
        assert_eq!(seen.iter().filter(|&&s| s).count(), 8);
    }

    #[test]
    fn gf8_field_laws() {
        let f = GfParams::with_default_modulus(2, 3).unwrap();
        for a in 0..8u8 {
            for b in 0..8u8 {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..8u8 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn prime_fields() {
        for p in [2u8, 3, 5, 7, 11, 13] {
            let f = GfParams::prime(p).unwrap();
            assert_eq!(f.q(), p);
            assert_eq!(f.add(p - 1, 1), 0);
        }
        assert!(GfParams::prime(4).is_err());
        assert!(GfParams::with_default_modulus(2, 5).is_err());
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 2x + 1 = (x+1)^2 over GF(3)
        assert!(GfParams::new(3, 2, vec![1, 2, 1]).is_err());
    }

    #[test]
    fn frobenius_is_automorphism() {
        let f = GfParams::with_default_modulus(3, 2).unwrap();
        for a in 0..9u8 {
            for b in 0..9u8 {
                assert_eq!(
                    f.frobenius(f.mul(a, b)),
                    f.mul(f.frobenius(a), f.frobenius(b))
                );
                assert_eq!(
                    f.frobenius(f.add(a, b)),
                    f.add(f.frobenius(a), f.frobenius(b))
                );
            }
        }
        // order 2 over the prime field
        for a in 0..9u8 {
            assert_eq!(f.frobenius(f.frobenius(a)), a);
        }
    }
}
