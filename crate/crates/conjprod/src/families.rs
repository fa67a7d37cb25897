//! Generator sets for standard permutation-group families.

use crate::elem::Element;
use crate::group::{enumerate_group, GroupError, GroupTable};
use crate::perm::Perm;
use std::sync::Arc;

pub fn sym_gens(n: usize) -> Vec<Perm> {
    assert!(n >= 1);
    if n == 1 {
        return vec![Perm::identity(1)];
    }
    let mut gens = vec![Perm::from_cycles(n, &[vec![0, 1]])];
    if n > 2 {
        gens.push(Perm::from_cycles(n, &[(0..n).collect()]));
    }
    gens
}

pub fn alt_gens(n: usize) -> Vec<Perm> {
    assert!(n >= 3);
    let mut gens = vec![Perm::from_cycles(n, &[vec![0, 1, 2]])];
    if n > 3 {
        let long: Vec<usize> = if n % 2 == 1 {
            (0..n).collect()
        } else {
            (1..n).collect()
        };
        gens.push(Perm::from_cycles(n, &[long]));
    }
    gens
}

pub fn cyclic_gens(n: usize) -> Vec<Perm> {
    assert!(n >= 1);
    if n == 1 {
        return vec![Perm::identity(1)];
    }
    vec![Perm::from_cycles(n, &[(0..n).collect()])]
}

/// Dihedral group of order 2m on m points.
pub fn dihedral_gens(m: usize) -> Vec<Perm> {
    assert!(m >= 3);
    let rot = Perm::from_cycles(m, &[(0..m).collect()]);
    let refl = Perm::from_images((0..m).map(|i| ((m - i) % m) as u8).collect());
    vec![rot, refl]
}

/// Places the two factors on disjoint point sets.
pub fn direct_product_gens(a: &[Perm], b: &[Perm]) -> Vec<Perm> {
    let da = a.first().map(|p| p.degree()).unwrap_or(0);
    let db = b.first().map(|p| p.degree()).unwrap_or(0);
    let n = da + db;
    let mut gens = Vec::new();
    for p in a {
        gens.push(p.embed(n, &(0..da).collect::<Vec<_>>()));
    }
    for p in b {
        gens.push(p.embed(n, &(da..da + db).collect::<Vec<_>>()));
    }
    gens
}

/// Wreath product base ^ k with a cyclic top group rotating the k
/// blocks; acts on k * degree(base) points.
pub fn wreath_cyclic_gens(base: &[Perm], k: usize) -> Vec<Perm> {
    assert!(k >= 1);
    let d = base[0].degree();
    let n = d * k;
    let mut gens = Vec::new();
    for p in base {
        // one copy suffices: the block rotation conjugates it around
        gens.push(p.embed(n, &(0..d).collect::<Vec<_>>()));
    }
    if k > 1 {
        let rot = Perm::from_images(
            (0..n)
                .map(|i| {
                    let (block, off) = (i / d, i % d);
                    (((block + 1) % k) * d + off) as u8
                })
                .collect(),
        );
        gens.push(rot);
    }
    gens
}

pub fn enumerate_perms(gens: &[Perm], cap: usize) -> Result<Arc<GroupTable>, GroupError> {
    let elems: Result<Vec<Element>, _> = gens.iter().map(Element::from_perm).collect();
    let elems = elems.map_err(|_| GroupError::DomainMismatch)?;
    enumerate_group(&elems, cap)
}

pub fn sym(n: usize) -> Arc<GroupTable> {
    enumerate_perms(&sym_gens(n), crate::group::DEFAULT_CAP).unwrap()
}

pub fn alt(n: usize) -> Arc<GroupTable> {
    enumerate_perms(&alt_gens(n), crate::group::DEFAULT_CAP).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(sym(4).order(), 24);
        assert_eq!(alt(5).order(), 60);
        assert_eq!(enumerate_perms(&cyclic_gens(7), 100).unwrap().order(), 7);
        assert_eq!(enumerate_perms(&dihedral_gens(6), 100).unwrap().order(), 12);
        let s3xc2 = direct_product_gens(&sym_gens(3), &cyclic_gens(2));
        assert_eq!(enumerate_perms(&s3xc2, 100).unwrap().order(), 12);
        let w = wreath_cyclic_gens(&alt_gens(5), 2);
        assert_eq!(enumerate_perms(&w, 10_000).unwrap().order(), 7200);
    }
}
