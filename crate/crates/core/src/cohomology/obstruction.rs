//! Realizability of an outer action `ψ : K → Out(H)`.
//!
//! Pick `φ(x) ∈ Aut(H)` over `ψ(x)` with `φ(e) = 1` and write
//! `φ(x)φ(y) = inn(g(x,y))·φ(xy)`. Automorphisms act on the right and
//! compose left to right, matching permutation groups; `inn(h) : a ↦ h⁻¹ah`.
//! Comparing the two ways of reducing `φ(x)φ(y)φ(z)` gives the central
//! 3-cocycle
//!
//! `c(x,y,z) = σ_x g(y,z) + g(x,yz) − g(x,y) − g(xy,z)`, `σ_x(h) = h^{φ(x)⁻¹}`,
//!
//! whose class in `H³(K, Z(H))` vanishes exactly when `ψ` comes from an
//! extension (Eilenberg–MacLane).

use serde::Serialize;

use super::{coboundary_2, AbstractKernel, Layout};
use crate::error::{Error, Result};
use crate::group::{ExtensionRecord, FiniteGroup, GroupMap, Permutation};
use crate::linalg::Lattice;
use crate::loops::circ_n;
use crate::morphism::{find_gyro_splitting, NODE_CAP};
use crate::search::{generating_sequence, HomSearch};

/// Largest `|H|` whose automorphism group is found by enumeration.
pub const AUT_ENUM_CAP: usize = 64;

/// `H` together with `Aut(H)` acting on it.
#[derive(Clone, Debug)]
pub struct AutData {
    h: FiniteGroup,
    aut: FiniteGroup,
    /// `action[a][x] = x^a`.
    action: Vec<Vec<usize>>,
    inn: GroupMap,
}

impl AutData {
    /// `Aut(H)` by exhaustive search, for `|H| ≤ AUT_ENUM_CAP`.
    pub fn enumerate(h: &FiniteGroup) -> Result<Self> {
        if h.order() > AUT_ENUM_CAP {
            return Err(Error::AutDataMissing(format!(
                "|{}| = {} exceeds the enumeration cap {AUT_ENUM_CAP}",
                h.name(),
                h.order()
            )));
        }
        let gens = generating_sequence(h, &h.elements().collect::<Vec<_>>());
        let out = HomSearch::new(h, h, gens)
            .allowed(|x, y| h.element_order(x) == h.element_order(y))
            .injective(true)
            .run(usize::MAX)?;
        let perms: Vec<Permutation> = out
            .solutions
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<_>>()?;
        let (aut, elems) = FiniteGroup::from_permutations_capped(h.order(), &perms, crate::group::PERM_CAP)?;
        let action: Vec<Vec<usize>> = elems.iter().map(|p| p.images().to_vec()).collect();
        let index: std::collections::HashMap<&[usize], usize> =
            action.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
        let inn_values = h
            .elements()
            .map(|g| {
                let img: Vec<usize> = h.elements().map(|x| h.conj(x, g)).collect();
                index[img.as_slice()]
            })
            .collect();
        let inn = GroupMap::new(h.clone(), aut.clone(), inn_values)?;
        Ok(AutData {
            h: h.clone(),
            aut: aut.named(&format!("Aut({})", h.name())),
            action,
            inn,
        })
    }

    /// Uses a group `aut` containing `H` as a normal subgroup with trivial
    /// centralizer, acting by conjugation.
    pub fn from_overgroup(aut: &FiniteGroup, h_elems: &[usize]) -> Result<Self> {
        if !aut.is_normal(h_elems) {
            return Err(Error::NotNormal("H is not normal in the automorphism group".into()));
        }
        let (h, incl) = aut.subgroup(h_elems)?;
        if aut.elements().any(|a| a != 0 && incl.values().iter().all(|&x| aut.commutes(a, x))) {
            return Err(Error::InvalidParameter("H has a nontrivial centralizer in the overgroup".into()));
        }
        let mut pos = vec![usize::MAX; aut.order()];
        for (i, &v) in incl.values().iter().enumerate() {
            pos[v] = i;
        }
        let action = aut
            .elements()
            .map(|a| incl.values().iter().map(|&x| pos[aut.conj(x, a)]).collect())
            .collect();
        Ok(AutData {
            h,
            aut: aut.clone(),
            action,
            inn: incl,
        })
    }

    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn aut(&self) -> &FiniteGroup {
        &self.aut
    }

    pub fn inn(&self) -> &GroupMap {
        &self.inn
    }

    /// `x^a`.
    pub fn act(&self, a: usize, x: usize) -> usize {
        self.action[a][x]
    }

    /// `Out(H) = Aut(H)/Inn(H)` with the projection.
    pub fn out(&self) -> Result<(FiniteGroup, GroupMap)> {
        let mut inn = self.inn.image();
        inn.sort_unstable();
        self.aut.quotient(&inn)
    }
}

/// `ψ : K → Out(H)` given by a representative automorphism for each `x`.
#[derive(Clone, Debug)]
pub struct OuterAction {
    pub k: FiniteGroup,
    pub reps: Vec<usize>,
}

/// A lifting `K → Aut(H)` of `ψ` that is a gyro-homomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct GyroLifting {
    pub found: bool,
    /// Labels of `L(x)` in `Aut(H)`, in the order of `K`.
    pub lifting: Option<Vec<String>>,
    pub nodes: u64,
    /// The same question asked of the pull-back extension, when it is small.
    pub pullback_agrees: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub h: String,
    pub k: String,
    pub center_order: usize,
    pub cocycle_closed: bool,
    pub obstruction_vanishes: bool,
    pub gyro: Option<GyroLifting>,
}

impl ObstructionReport {
    pub fn realizable(&self) -> bool {
        self.obstruction_vanishes && self.gyro.as_ref().is_none_or(|g| g.found)
    }
}

/// Largest pull-back group built for the cross-check.
const PULLBACK_CAP: usize = 512;

pub fn obstruction_realizable(data: &AutData, psi: &OuterAction, gyro: bool) -> Result<ObstructionReport> {
    let (h, aut, k) = (&data.h, &data.aut, &psi.k);
    if psi.reps.len() != k.order() || psi.reps.iter().any(|&a| a >= aut.order()) {
        return Err(Error::InvalidMap("ψ needs one automorphism per element of K".into()));
    }
    let (_, proj) = data.out()?;
    let psi_bar: Vec<usize> = psi.reps.iter().map(|&a| proj.apply(a)).collect();
    let out = proj.codomain();
    if psi_bar[0] != 0 {
        return Err(Error::InvalidMap("ψ(e) is not inner".into()));
    }
    for x in k.elements() {
        for y in k.elements() {
            if out.mul(psi_bar[x], psi_bar[y]) != psi_bar[k.mul(x, y)] {
                return Err(Error::InvalidMap(format!(
                    "ψ is not a homomorphism at ({}, {})",
                    k.label(x),
                    k.label(y)
                )));
            }
        }
    }
    let mut phi = psi.reps.clone();
    phi[0] = 0;
    // inner[a] = first h with inn(h) = a.
    let mut inner = vec![usize::MAX; aut.order()];
    for x in h.elements().rev() {
        inner[data.inn.apply(x)] = x;
    }
    let n = k.order();
    let mut g = vec![0usize; n * n];
    for x in k.elements() {
        for y in k.elements() {
            let a = aut.mul(aut.mul(phi[x], phi[y]), aut.inv(phi[k.mul(x, y)]));
            g[x * n + y] = inner[a];
        }
    }

    let center = h.center();
    let (zg, incl) = h.subgroup(&center)?;
    let mut zpos = vec![usize::MAX; h.order()];
    for (i, &v) in incl.values().iter().enumerate() {
        zpos[v] = i;
    }
    let c = |x: usize, y: usize, z: usize| -> usize {
        let phi_inv = aut.inv(phi[x]);
        let a = h.mul(data.act(phi_inv, g[y * n + z]), g[x * n + k.mul(y, z)]);
        let b = h.mul(g[x * n + y], g[k.mul(x, y) * n + z]);
        h.mul(h.inv(b), a)
    };
    let kernel = AbstractKernel::from_action(k, &zg, |x, a| {
        zpos[data.act(aut.inv(phi[x]), incl.apply(a))]
    })?;
    let mut cocycle = Vec::new();
    for x in 1..n {
        for y in 1..n {
            for z in 1..n {
                let v = zpos[c(x, y, z)];
                if v == usize::MAX {
                    return Err(Error::RelationViolation("obstruction value is not central".into()));
                }
                cocycle.push(v);
            }
        }
    }
    let dec = kernel.decomposition();
    let three = Layout::<3>::new(&kernel)?;
    let two = Layout::<2>::new(&kernel)?;
    let r = three.rank();
    let mut cvec = vec![0i64; three.dim()];
    for (blk, &v) in cocycle.iter().enumerate() {
        cvec[blk * r..(blk + 1) * r].copy_from_slice(dec.coords(v));
    }
    let cval = |x: usize, y: usize, z: usize| -> usize {
        three.block(&[x, y, z]).map_or(0, |b| cocycle[b])
    };
    let cocycle_closed = k.elements().all(|w| {
        k.elements().all(|x| {
            k.elements().all(|y| {
                k.elements().all(|z| {
                    let s = |v: usize| kernel.sigma(w).apply(v);
                    let lhs = zg.mul(zg.mul(s(cval(x, y, z)), cval(w, k.mul(x, y), z)), cval(w, x, y));
                    let rhs = zg.mul(cval(k.mul(w, x), y, z), cval(w, x, k.mul(y, z)));
                    lhs == rhs
                })
            })
        })
    });
    // B³ = ∂(normalized 2-cochains) plus the zero lattice.
    let zero3 = three.zero();
    let r2 = two.rank();
    let rows = (0..two.dim()).map(|col| {
        let mut f = vec![0i64; two.dim()];
        f[col] = 1;
        let mut v = vec![0i64; three.dim()];
        for (blk, [x, y, z]) in three.tuples().enumerate() {
            v[blk * r..(blk + 1) * r].copy_from_slice(&two.eval(&kernel, &f, &coboundary_2(k, x, y, z)));
        }
        debug_assert_eq!(r, r2);
        v
    });
    let b3 = Lattice::from_generators(three.dim(), *zero3.modulus(), rows.chain(zero3.rows().iter().cloned()));
    let obstruction_vanishes = b3.contains(&cvec);

    let gyro = if gyro {
        Some(gyro_lifting(data, psi, &proj)?)
    } else {
        None
    };
    Ok(ObstructionReport {
        h: h.name().to_string(),
        k: k.name().to_string(),
        center_order: zg.order(),
        cocycle_closed,
        obstruction_vanishes,
        gyro,
    })
}

fn gyro_lifting(data: &AutData, psi: &OuterAction, proj: &GroupMap) -> Result<GyroLifting> {
    let (aut, k) = (&data.aut, &psi.k);
    let psi_bar: Vec<usize> = psi.reps.iter().map(|&a| proj.apply(a)).collect();
    let (sk, sa) = (circ_n(k, 1), circ_n(aut, 1));
    let mut pref: Vec<usize> = k.elements().collect();
    pref.sort_by_key(|&x| (std::cmp::Reverse(k.element_order(x)), x));
    let gens = generating_sequence(&sk, &pref);
    let out = HomSearch::new(&sk, &sa, gens)
        .allowed(|x, a| proj.apply(a) == psi_bar[x] && k.element_order(x) % aut.element_order(a) == 0)
        .node_cap(NODE_CAP)
        .run(1)?;
    let lifting = out
        .first()
        .map(|v| v.iter().map(|&a| aut.label(a).to_string()).collect::<Vec<_>>());
    let pullback_agrees = if aut.order() * k.order() <= PULLBACK_CAP {
        let e = pullback(aut, k, proj, &psi_bar)?;
        Some(find_gyro_splitting(&e)?.section.is_some() == lifting.is_some())
    } else {
        None
    };
    Ok(GyroLifting {
        found: lifting.is_some(),
        lifting,
        nodes: out.nodes,
        pullback_agrees,
    })
}

/// `Aut(H) ×_{Out(H)} K` as an extension of `Inn(H)` by `K`.
fn pullback(aut: &FiniteGroup, k: &FiniteGroup, proj: &GroupMap, psi_bar: &[usize]) -> Result<ExtensionRecord> {
    let elems: Vec<(usize, usize)> = k
        .elements()
        .flat_map(|x| aut.elements().filter(move |&a| proj.apply(a) == psi_bar[x]).map(move |a| (a, x)))
        .collect();
    let index: std::collections::HashMap<(usize, usize), usize> =
        elems.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let labels = elems.iter().map(|&(a, x)| format!("({},{})", aut.label(a), k.label(x))).collect();
    let p = FiniteGroup::from_fn_unchecked("pullback", labels, |i, j| {
        let ((a, x), (b, y)) = (elems[i], elems[j]);
        index[&(aut.mul(a, b), k.mul(x, y))]
    });
    let inn: Vec<usize> = (0..elems.len()).filter(|&i| elems[i].1 == 0).collect();
    ExtensionRecord::from_normal_subgroup(&p, &inn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn aut_of_small_groups() {
        assert_eq!(AutData::enumerate(&cyclic(3).unwrap()).unwrap().aut().order(), 2);
        assert_eq!(AutData::enumerate(&quaternion8()).unwrap().aut().order(), 24);
        assert_eq!(AutData::enumerate(&symmetric(3).unwrap()).unwrap().aut().order(), 6);
        let v4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(AutData::enumerate(&v4).unwrap().aut().order(), 6);
    }

    #[test]
    fn inversion_on_z3_is_realizable_and_split() {
        let h = cyclic(3).unwrap();
        let data = AutData::enumerate(&h).unwrap();
        let inv = (0..2).find(|&a| data.act(a, 1) == 2).unwrap();
        let psi = OuterAction {
            k: cyclic(2).unwrap(),
            reps: vec![0, inv],
        };
        let r = obstruction_realizable(&data, &psi, true).unwrap();
        assert_eq!(r.center_order, 3);
        assert!(r.cocycle_closed);
        assert!(r.obstruction_vanishes);
        let g = r.gyro.unwrap();
        assert!(g.found);
        assert_eq!(g.pullback_agrees, Some(true));
    }

    #[test]
    fn centerless_h_vanishes_trivially() {
        let h = symmetric(3).unwrap();
        let data = AutData::enumerate(&h).unwrap();
        let psi = OuterAction {
            k: cyclic(2).unwrap(),
            reps: vec![0, 0],
        };
        let r = obstruction_realizable(&data, &psi, true).unwrap();
        assert_eq!(r.center_order, 1);
        assert!(r.obstruction_vanishes && r.realizable());
    }

    #[test]
    fn q8_outer_actions_vanish_for_every_choice_of_representatives() {
        // GL(2,3) realizes Out(Q8) ≅ S3; the class must vanish whatever lifts are chosen.
        let h = quaternion8();
        let data = AutData::enumerate(&h).unwrap();
        let (out, proj) = data.out().unwrap();
        assert_eq!(out.order(), 6);
        let k = out.clone();
        let fibers: Vec<Vec<usize>> = k
            .elements()
            .map(|x| data.aut().elements().filter(|&a| proj.apply(a) == x).collect())
            .collect();
        for shift in 0..4 {
            let reps = fibers.iter().map(|f| f[shift % f.len()]).collect();
            let r = obstruction_realizable(&data, &OuterAction { k: k.clone(), reps }, shift == 0).unwrap();
            assert!(r.cocycle_closed);
            assert!(r.obstruction_vanishes);
            if let Some(g) = r.gyro {
                assert_eq!(g.pullback_agrees, Some(true));
            }
        }
    }

    #[test]
    fn non_homomorphic_psi_is_rejected() {
        let h = cyclic(3).unwrap();
        let data = AutData::enumerate(&h).unwrap();
        let inv = (0..2).find(|&a| data.act(a, 1) == 2).unwrap();
        let psi = OuterAction {
            k: cyclic(3).unwrap(),
            reps: vec![0, inv, inv],
        };
        assert!(matches!(obstruction_realizable(&data, &psi, false), Err(Error::InvalidMap(_))));
    }

    #[test]
    fn overgroup_data_matches_enumeration() {
        // S3 inside S3: conjugation gives Aut(S3).
        let s3 = symmetric(3).unwrap();
        let all: Vec<usize> = s3.elements().collect();
        let data = AutData::from_overgroup(&s3, &all).unwrap();
        assert_eq!(data.out().unwrap().0.order(), 1);
        for a in s3.elements() {
            for x in s3.elements() {
                for y in s3.elements() {
                    assert_eq!(data.act(a, s3.mul(x, y)), s3.mul(data.act(a, x), data.act(a, y)));
                }
            }
        }
    }
}
