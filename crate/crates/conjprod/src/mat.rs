//! Square matrices of dimension <= 4 over a small finite field.

use crate::gf::GfParams;

pub const MAX_DIM: usize = 4;

/// Row-major entries as field codes; only the first dim*dim slots are used.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat {
    pub dim: u8,
    pub e: [u8; MAX_DIM * MAX_DIM],
}

impl Mat {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1 && dim <= MAX_DIM);
        Mat {
            dim: dim as u8,
            e: [0; MAX_DIM * MAX_DIM],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Mat::zero(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let dim = rows.len();
        let mut m = Mat::zero(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.e[i * self.dim as usize + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.e[i * self.dim as usize + j] = v;
    }

    pub fn mul(&self, rhs: &Mat, f: &GfParams) -> Mat {
        debug_assert_eq!(self.dim, rhs.dim);
        let n = self.dim as usize;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u8;
                for l in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, l), rhs.get(l, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn det(&self, f: &GfParams) -> u8 {
        let n = self.dim as usize;
        let mut m = *self;
        let mut det = 1u8;
        for col in 0..n {
            let pivot = (col..n).find(|&r| m.get(r, col) != 0);
            let pivot = match pivot {
                Some(p) => p,
                None => return 0,
            };
            if pivot != col {
                for j in 0..n {
                    let tmp = m.get(col, j);
                    m.set(col, j, m.get(pivot, j));
                    m.set(pivot, j, tmp);
                }
                det = f.neg(det);
            }
            let pv = m.get(col, col);
            det = f.mul(det, pv);
            let pv_inv = f.inv(pv);
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), pv_inv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; panics if singular.
    pub fn inverse(&self, f: &GfParams) -> Mat {
        let n = self.dim as usize;
        let mut m = *self;
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| m.get(r, col) != 0)
                .expect("matrix is singular");
            if pivot != col {
                for j in 0..n {
                    let (a, b) = (m.get(col, j), m.get(pivot, j));
                    m.set(col, j, b);
                    m.set(pivot, j, a);
                    let (a, b) = (inv.get(col, j), inv.get(pivot, j));
                    inv.set(col, j, b);
                    inv.set(pivot, j, a);
                }
            }
            let pv_inv = f.inv(m.get(col, col));
            for j in 0..n {
                m.set(col, j, f.mul(m.get(col, j), pv_inv));
                inv.set(col, j, f.mul(inv.get(col, j), pv_inv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    m.set(r, j, f.sub(m.get(r, j), f.mul(factor, m.get(col, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(factor, inv.get(col, j))));
                }
            }
        }
        inv
    }

    /// Conjugate-transpose with respect to x -> x^p.
    pub fn conj_transpose(&self, f: &GfParams) -> Mat {
        let n = self.dim as usize;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, f.frobenius(self.get(i, j)));
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        let n = self.dim as usize;
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        let n = self.dim as usize;
        for i in 0..n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_identity_inverse() {
        let f = GfParams::prime(5).unwrap();
        let a = Mat::from_rows(&[vec![1, 2], vec![3, 4]]);
        let id = Mat::identity(2);
        assert_eq!(a.mul(&id, &f), a);
        // det = 4 - 6 = -2 = 3 mod 5
        assert_eq!(a.det(&f), 3);
        let inv = a.inverse(&f);
        assert_eq!(a.mul(&inv, &f), id);
        assert_eq!(inv.mul(&a, &f), id);
    }

    #[test]
    fn det_multiplicative() {
        let f = GfParams::with_default_modulus(3, 2).unwrap();
        let a = Mat::from_rows(&[vec![1, 2, 0], vec![0, 1, 5], vec![3, 0, 1]]);
        let b = Mat::from_rows(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 4, 1]]);
        assert_eq!(
            a.mul(&b, &f).det(&f),
            f.mul(a.det(&f), b.det(&f))
        );
    }

    #[test]
    fn singular_det_zero() {
        let f = GfParams::prime(7).unwrap();
        let a = Mat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(a.det(&f), 0);
    }
}
