use std::collections::HashMap;

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::linalg::Presentation;

/// An abelian group written as `Z/d₁ × … × Z/d_k` with `d₁ | d₂ | …`.
#[derive(Clone, Debug)]
pub struct AbelianDecomposition {
    group: FiniteGroup,
    invariants: Vec<i64>,
    coords: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl AbelianDecomposition {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        if !g.is_abelian() {
            return Err(Error::KernelNotAbelian);
        }
        let n = g.order();
        let mut p = Presentation::new(n, g.exponent() as i64);
        for a in 0..n {
            for b in a..n {
                p.relate([(a, 1), (b, 1), (g.mul(a, b), -1)]);
            }
        }
        let s = p.simplify();
        let invariants = s.invariants().to_vec();
        let coords: Vec<Vec<i64>> = (0..n).map(|x| s.image(x).to_vec()).collect();
        let index: HashMap<Vec<i64>, usize> = coords.iter().cloned().zip(0..n).collect();
        assert_eq!(index.len(), n, "coordinate map must be a bijection");
        Ok(AbelianDecomposition {
            group: g.clone(),
            invariants,
            coords,
            index,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Nontrivial invariant factors; empty for the trivial group.
    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    pub fn coords(&self, x: usize) -> &[i64] {
        &self.coords[x]
    }

    /// Element with the given coordinates (reduced modulo the factors).
    pub fn element(&self, c: &[i64]) -> usize {
        let c: Vec<i64> = c
            .iter()
            .zip(&self.invariants)
            .map(|(x, d)| x.rem_euclid(*d))
            .collect();
        self.index[&c]
    }

    /// The element with a 1 in coordinate `k`.
    pub fn generator(&self, k: usize) -> usize {
        let mut c = vec![0; self.invariants.len()];
        c[k] = 1;
        self.element(&c)
    }
}

/// Invariant factors of an abelian group.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<Vec<i64>> {
    Ok(AbelianDecomposition::new(g)?.invariants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn invariants_of_products() {
        let z = |n| cyclic(n).unwrap();
        let p = direct_product(&z(2), &z(4)).unwrap();
        assert_eq!(abelian_invariants(&p).unwrap(), vec![2, 4]);
        let q = direct_product(&z(6), &z(4)).unwrap();
        assert_eq!(abelian_invariants(&q).unwrap(), vec![2, 12]);
        assert!(abelian_invariants(&z(1)).unwrap().is_empty());
        assert_eq!(abelian_invariants(&z(9)).unwrap(), vec![9]);
    }

    #[test]
    fn coordinates_are_a_homomorphism() {
        let g = direct_product(&cyclic(6).unwrap(), &cyclic(2).unwrap()).unwrap();
        let d = AbelianDecomposition::new(&g).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                let sum: Vec<i64> = d.coords(a).iter().zip(d.coords(b)).map(|(x, y)| x + y).collect();
                assert_eq!(d.element(&sum), g.mul(a, b));
            }
        }
    }

    #[test]
    fn non_abelian_is_rejected() {
        assert!(matches!(AbelianDecomposition::new(&quaternion8()), Err(Error::KernelNotAbelian)));
    }
}
