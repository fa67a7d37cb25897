//! Permutations on {0..n-1} as image arrays.
//!
//! Composition is function composition: `(a * b)(x) = a(b(x))`, so in a
//! product the right factor acts first. Conjugation is `a^g = g^-1 a g`.

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds from an image array; panics if it is not a bijection.
    pub fn from_images(images: Vec<u8>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!((i as usize) < n && !seen[i as usize], "not a bijection");
            seen[i as usize] = true;
        }
        Perm { images }
    }

    /// Product of cycles over a fixed degree, e.g. `[(0 1 2), (3 4)]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Self {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                let from = cyc[w];
                let to = cyc[(w + 1) % cyc.len()];
                assert!(from < degree && to < degree, "cycle point out of range");
                images[from] = to as u8;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn compose(&self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), rhs.degree());
        Perm {
            images: rhs.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u8;
        }
        Perm { images }
    }

    /// g^-1 * self * g
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().compose(self).compose(g)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        let mut transpositions = 0;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut x = start;
            let mut cycle_len = 0;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                cycle_len += 1;
            }
            transpositions += cycle_len - 1;
        }
        transpositions % 2 == 0
    }

    /// Re-labels onto a larger domain through the point map `embed`,
    /// fixing every point not in the image of `embed`.
    pub fn embed(&self, degree: usize, embed: &[usize]) -> Perm {
        assert_eq!(embed.len(), self.degree());
        let mut images: Vec<u8> = (0..degree as u8).collect();
        for (i, &img) in self.images.iter().enumerate() {
            images[embed[i]] = embed[img as usize] as u8;
        }
        Perm::from_images(images)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_inverse() {
        let a = Perm::from_cycles(5, &[vec![0, 1, 2]]);
        let b = Perm::from_cycles(5, &[vec![2, 3, 4]]);
        let ab = a.compose(&b);
        // right factor first: 2 -> b -> 3 -> a -> 3
        assert_eq!(ab.apply(2), 3);
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(ab.compose(&ab.inverse()).is_identity());
    }

    #[test]
    fn parity() {
        assert!(Perm::from_cycles(4, &[vec![0, 1, 2]]).is_even());
        assert!(!Perm::from_cycles(4, &[vec![0, 1]]).is_even());
        assert!(Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).is_even());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let a = Perm::from_cycles(4, &[vec![0, 1]]);
        let g = Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]);
        let c = a.conjugate_by(&g);
        assert_eq!(c, Perm::from_cycles(4, &[vec![2, 3]]));
    }

    #[test]
    fn display_cycles() {
        let a = Perm::from_cycles(5, &[vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(format!("{}", a), "(0 1 2)(3 4)");
        assert_eq!(format!("{}", Perm::identity(3)), "()");
    }
}
