use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{is_gyro_transversal, RightLoopTable};
use crate::error::Result;
use crate::group::{FiniteGroup, Permutation, PERM_CAP};

/// Outcome of the right gyro-group test, flag by flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GyroReport {
    pub is_right_loop: bool,
    pub inner_maps_are_automorphisms: bool,
    pub f_leftinv_identity: bool,
    /// `(y, z, a, b)`: `f(y,z)(a∘b) ≠ f(y,z)(a)∘f(y,z)(b)`.
    pub automorphism_witness: Option<(usize, usize, usize, usize)>,
    /// `x` with `f(x′, x) ≠ I`.
    pub leftinv_witness: Option<usize>,
}

impl GyroReport {
    pub fn verdict(&self) -> bool {
        self.is_right_loop && self.inner_maps_are_automorphisms && self.f_leftinv_identity
    }
}

impl RightLoopTable {
    /// Distinct inner maps with one `(y, z)` producing each, in first-seen order.
    pub fn distinct_inner_maps(&self) -> Vec<((usize, usize), Vec<usize>)> {
        let n = self.order();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for y in 0..n {
            for z in 0..n {
                let f = self.inner_map(y, z);
                if seen.insert(f.clone()) {
                    out.push(((y, z), f));
                }
            }
        }
        out
    }

    /// Checks that every inner map is an automorphism and `f(x′, x) = I`.
    ///
    /// Tables are right loops by construction, so the first flag is always set.
    pub fn is_right_gyrogroup(&self) -> GyroReport {
        let n = self.order();
        let mut automorphism_witness = None;
        'maps: for ((y, z), f) in self.distinct_inner_maps() {
            for a in 0..n {
                for b in 0..n {
                    if f[self.op(a, b)] != self.op(f[a], f[b]) {
                        automorphism_witness = Some((y, z, a, b));
                        break 'maps;
                    }
                }
            }
        }
        let leftinv_witness = (0..n).find(|&x| {
            let xp = self.left_inv(x);
            (0..n).any(|v| self.inner_apply(xp, x, v) != v)
        });
        GyroReport {
            is_right_loop: true,
            inner_maps_are_automorphisms: automorphism_witness.is_none(),
            f_leftinv_identity: leftinv_witness.is_none(),
            automorphism_witness,
            leftinv_witness,
        }
    }

    /// First `y` where `R_y⁻¹ ≠ f(y′,y)⁻¹ then R_{y′}`.
    pub fn right_inverse_identity_witness(&self) -> Option<usize> {
        (0..self.order()).find(|&y| {
            let yp = self.left_inv(y);
            let f = Permutation::from_images(self.inner_map(yp, y)).expect("inner maps are bijective");
            self.right_mult(y).inverse() != f.inverse().then(&self.right_mult(yp))
        })
    }

    /// First `(y, z)` where `R_y then R_z ≠ f(y,z) then R_{y∘z}`.
    pub fn factorization_witness(&self) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n)
            .flat_map(|y| (0..n).map(move |z| (y, z)))
            .find(|&(y, z)| {
                let f = Permutation::from_images(self.inner_map(y, z)).expect("bijective");
                self.right_mult(y).then(&self.right_mult(z)) != f.then(&self.right_mult(self.op(y, z)))
            })
    }
}

/// The two candidate identities compared against central-by-2-Engel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LoopProperty {
    /// `f(y, z) = f(y∘z, z)`.
    LeftAbsorbing,
    /// `f(y, z) = f(y, z∘y)`.
    RightAbsorbing,
}

impl LoopProperty {
    pub const ALL: [LoopProperty; 2] = [LoopProperty::LeftAbsorbing, LoopProperty::RightAbsorbing];

    pub fn formula(self) -> &'static str {
        match self {
            LoopProperty::LeftAbsorbing => "f(y,z) = f(y∘z,z)",
            LoopProperty::RightAbsorbing => "f(y,z) = f(y,z∘y)",
        }
    }

    /// First `(y, z)` violating the identity.
    pub fn witness(self, s: &RightLoopTable) -> Option<(usize, usize)> {
        let n = s.order();
        (0..n)
            .flat_map(|y| (0..n).map(move |z| (y, z)))
            .find(|&(y, z)| {
                let (y2, z2) = match self {
                    LoopProperty::LeftAbsorbing => (s.op(y, z), z),
                    LoopProperty::RightAbsorbing => (y, s.op(z, y)),
                };
                (0..n).any(|x| s.inner_apply(y, z, x) != s.inner_apply(y2, z2, x))
            })
    }
}

/// Evaluates every candidate identity on `(G, ∘₁)` next to the predicate.
pub fn loop_property_candidates(g: &FiniteGroup) -> (bool, Vec<(LoopProperty, bool)>) {
    let s = super::circ_n(g, 1);
    let props = LoopProperty::ALL
        .iter()
        .map(|&p| (p, p.witness(&s).is_none()))
        .collect();
    (g.is_central_by_2_engel(), props)
}

/// `G_S = ⟨f(y,z)⟩` and `R(S) = ⟨R_y⟩` as permutation groups on `S`.
#[derive(Clone, Debug)]
pub struct Torsion {
    pub gs: FiniteGroup,
    pub rs: FiniteGroup,
    /// Elements of `R(S)` as permutations of `S`.
    pub rs_elements: Vec<Permutation>,
    /// Index in `R(S)` of each element of `G_S`.
    pub gs_in_rs: Vec<usize>,
    /// Index in `R(S)` of `R_y`, for each `y ∈ S`.
    pub right_mults: Vec<usize>,
    /// Every element of `R(S)` is uniquely `h then R_y` with `h ∈ G_S`.
    pub factorization_holds: bool,
    pub trivial_intersection: bool,
    /// `{R_y}` is a gyro-transversal to `G_S` (checked when `S` is a right gyro-group).
    pub gyro_transversal: Option<bool>,
}

impl RightLoopTable {
    pub fn group_torsion_and_extension(&self) -> Result<Torsion> {
        let n = self.order();
        let inner: Vec<Permutation> = self
            .distinct_inner_maps()
            .into_iter()
            .map(|(_, f)| Permutation::from_images(f).expect("bijective"))
            .filter(|p| !p.is_identity())
            .collect();
        let rights: Vec<Permutation> = (0..n).map(|y| self.right_mult(y)).collect();
        let (gs, gs_elems) = FiniteGroup::from_permutations_capped(n, &inner, PERM_CAP)?;
        let (rs, rs_elems) = FiniteGroup::from_permutations_capped(n, &rights[1..], PERM_CAP)?;
        let index: HashMap<&Permutation, usize> = rs_elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let gs_in_rs: Vec<usize> = gs_elems
            .iter()
            .map(|p| *index.get(p).expect("inner maps lie in R(S)"))
            .collect();
        let right_mults: Vec<usize> = rights.iter().map(|p| index[p]).collect();

        let mut hit = vec![false; rs.order()];
        let mut factorization_holds = gs.order() * n == rs.order();
        for &h in &gs_in_rs {
            for &r in &right_mults {
                let x = rs.mul(h, r);
                factorization_holds &= !std::mem::replace(&mut hit[x], true);
            }
        }
        let mut in_gs = vec![false; rs.order()];
        for &h in &gs_in_rs {
            in_gs[h] = true;
        }
        let trivial_intersection = right_mults.iter().filter(|&&r| in_gs[r]).count() == 1;
        let gyro_transversal = if self.is_right_gyrogroup().verdict() {
            Some(is_gyro_transversal(&rs, &gs_in_rs, &right_mults)?.verdict())
        } else {
            None
        };
        Ok(Torsion {
            gs,
            rs,
            rs_elements: rs_elems,
            gs_in_rs,
            right_mults,
            factorization_holds,
            trivial_intersection,
            gyro_transversal,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::loops::circ_n;

    #[test]
    fn circ_n_is_right_gyrogroup() {
        for g in [symmetric(3).unwrap(), quaternion8(), alternating(4).unwrap()] {
            for n in -2..=2 {
                let r = circ_n(&g, n).is_right_gyrogroup();
                assert!(r.verdict(), "{g:?} n={n}: {r:?}");
            }
        }
    }

    #[test]
    fn factorization_identities() {
        let s = circ_n(&symmetric(3).unwrap(), 1);
        assert_eq!(s.factorization_witness(), None);
        assert_eq!(s.right_inverse_identity_witness(), None);
    }

    #[test]
    fn torsion_of_a_group_is_trivial() {
        let g = dihedral(4).unwrap();
        let t = RightLoopTable::from_group(&g).group_torsion_and_extension().unwrap();
        assert_eq!(t.gs.order(), 1);
        assert!(isomorphism_search(&t.rs, &g).0.is_some());
        assert!(t.factorization_holds && t.trivial_intersection);
        assert_eq!(t.gyro_transversal, Some(true));
    }

    #[test]
    fn torsion_of_circ1_s3() {
        let s = circ_n(&symmetric(3).unwrap(), 1);
        let t = s.group_torsion_and_extension().unwrap();
        assert!(t.gs.order() > 1);
        assert_eq!(t.rs.order(), t.gs.order() * 6);
        assert!(t.factorization_holds && t.trivial_intersection);
        assert_eq!(t.gyro_transversal, Some(true));
    }

    #[test]
    fn s3_fails_both_engel_sides() {
        let (c2e, props) = loop_property_candidates(&symmetric(3).unwrap());
        assert!(!c2e);
        assert_eq!(props[0], (LoopProperty::LeftAbsorbing, false));
    }
}
