use serde::Serialize;

use super::RightLoopTable;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TransversalWitness {
    /// The right coset `Hg` meets `S` in this many points instead of one.
    CosetMiss { g: usize, hits: usize },
    /// `x ∈ S` but `x⁻¹ ∉ S`.
    NotSymmetric { x: usize },
    /// `h⁻¹xh ∉ S`.
    NotConjugationClosed { x: usize, h: usize },
}

#[derive(Clone, Debug)]
pub struct TransversalReport {
    pub is_transversal: bool,
    pub symmetric: bool,
    pub conjugation_closed: bool,
    pub witness: Option<TransversalWitness>,
    /// The loop induced on `S` (elements in increasing index order).
    pub induced: Option<RightLoopTable>,
    pub elements: Vec<usize>,
}

impl TransversalReport {
    pub fn verdict(&self) -> bool {
        self.is_transversal && self.symmetric && self.conjugation_closed
    }
}

/// Tests whether `s` is a right transversal to the subgroup `h`, closed under
/// inverses and under conjugation by `h`.
pub fn is_gyro_transversal(g: &FiniteGroup, h: &[usize], s: &[usize]) -> Result<TransversalReport> {
    if !g.is_subgroup(h) {
        return Err(Error::NotSubgroup(format!("{} elements given", h.len())));
    }
    let mut elems = s.to_vec();
    elems.sort_unstable();
    elems.dedup();
    if elems.first() != Some(&0) {
        return Err(Error::InvalidParameter("the transversal must contain the identity".into()));
    }
    let n = g.order();
    let mut in_s = vec![false; n];
    for &x in &elems {
        in_s[x] = true;
    }
    // rep[g] = the element of S in Hg, when unique.
    let mut rep = vec![usize::MAX; n];
    let mut witness = None;
    for x in 0..n {
        let hits: Vec<usize> = h.iter().map(|&k| g.mul(k, x)).filter(|&y| in_s[y]).collect();
        if hits.len() == 1 {
            rep[x] = hits[0];
        } else if witness.is_none() {
            witness = Some(TransversalWitness::CosetMiss { g: x, hits: hits.len() });
        }
    }
    let is_transversal = witness.is_none();
    let sym = elems.iter().find(|&&x| !in_s[g.inv(x)]).copied();
    if witness.is_none() {
        witness = sym.map(|x| TransversalWitness::NotSymmetric { x });
    }
    let conj = elems
        .iter()
        .flat_map(|&x| h.iter().map(move |&k| (x, k)))
        .find(|&(x, k)| !in_s[g.conj(x, k)]);
    if witness.is_none() {
        witness = conj.map(|(x, h)| TransversalWitness::NotConjugationClosed { x, h });
    }
    let induced = if is_transversal {
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let labels = elems.iter().map(|&x| g.label(x).to_string()).collect();
        Some(RightLoopTable::from_fn(labels, |a, b| {
            pos[rep[g.mul(elems[a], elems[b])]]
        })?)
    } else {
        None
    };
    Ok(TransversalReport {
        is_transversal,
        symmetric: sym.is_none(),
        conjugation_closed: conj.is_none(),
        witness,
        induced,
        elements: elems,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn whole_group_over_trivial_subgroup() {
        let g = dihedral(3).unwrap();
        let all: Vec<usize> = g.elements().collect();
        let r = is_gyro_transversal(&g, &[0], &all).unwrap();
        assert!(r.verdict());
        assert_eq!(r.induced.unwrap().table(), g.table());
    }

    #[test]
    fn translations_in_the_holomorph_of_s3() {
        // Ĝ = S3 ⋊ Inn(S3) acting on S3: right translations and conjugations.
        let g = symmetric(3).unwrap();
        let right = |a: usize| Permutation::from_images(g.elements().map(|x| g.mul(x, a)).collect()).unwrap();
        let inner = |a: usize| Permutation::from_images(g.elements().map(|x| g.conj(x, a)).collect()).unwrap();
        let gens: Vec<Permutation> = g.elements().skip(1).flat_map(|a| [right(a), inner(a)]).collect();
        let (big, elems) = FiniteGroup::from_permutations_capped(6, &gens, 100).unwrap();
        assert_eq!(big.order(), 36);
        let find = |p: &Permutation| elems.iter().position(|q| q == p).unwrap();
        let s: Vec<usize> = g.elements().map(|a| find(&right(a))).collect();
        let h: Vec<usize> = g.elements().map(|a| find(&inner(a))).collect();
        let r = is_gyro_transversal(&big, &h, &s).unwrap();
        assert!(r.verdict());
        assert!(r.induced.unwrap().is_associative());
    }

    #[test]
    fn asymmetric_transversal_of_the_center() {
        let g = extraspecial27(3).unwrap();
        let z = g.center();
        // Smallest element of each coset, then break symmetry in one coset.
        let mut reps: Vec<usize> = Vec::new();
        for x in g.elements() {
            if !reps.iter().any(|&r| z.contains(&g.mul(x, g.inv(r)))) {
                reps.push(x);
            }
        }
        let t = reps[1];
        let zt = g.mul(z[1], t);
        let s: Vec<usize> = reps.iter().map(|&r| if r == t { zt } else { r }).collect();
        let r = is_gyro_transversal(&g, &z, &s).unwrap();
        assert!(r.is_transversal);
        assert!(!r.symmetric);
        let Some(TransversalWitness::NotSymmetric { x }) = r.witness else {
            panic!("expected a symmetry witness, got {:?}", r.witness);
        };
        assert!(!s.contains(&g.inv(x)));
    }

    #[test]
    fn non_subgroup_is_rejected() {
        let g = cyclic(4).unwrap();
        assert!(matches!(is_gyro_transversal(&g, &[0, 1], &[0, 2]), Err(Error::NotSubgroup(_))));
    }
}
