//! Gyro-homomorphisms and the searches built on them.
//!
//! A map `f : K → G` is a gyro-homomorphism exactly when it is a homomorphism
//! of right loops `(K, ∘₁) → (G, ∘₁)`, so enumeration, isomorphism and
//! section search all run through [`crate::search::HomSearch`].

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{abelian_invariants, ExtensionRecord, FiniteGroup, GroupMap};
use crate::loops::{circ_n, RightLoopTable};
use crate::search::{generating_sequence, HomSearch, SearchOutcome};

/// Default bound on `|G|·|K|` for enumeration.
pub const HOM_CAP: usize = 1 << 16;
/// Default bound on explored search nodes.
pub const NODE_CAP: u64 = 50_000_000;
/// Largest loop handled by subloop enumeration.
pub const SUBLOOP_CAP: usize = 128;

/// The three equivalent descriptions of a gyro-homomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Criterion {
    /// `f(y⁻¹xy²) = f(y)⁻¹f(x)f(y)²`.
    Definition,
    /// `f(e) = e` and `f(y⁻¹xy²) = f(y⁻¹)f(x)f(y²)`.
    SplitPowers,
    /// `f(e) = e` and `∂f(y⁻¹, x)·∂f(y⁻¹x, y²) = e` with `∂f(x, y) = f(x)f(y)f(xy)⁻¹`.
    Coboundary,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [Criterion::Definition, Criterion::SplitPowers, Criterion::Coboundary];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GyroHomReport {
    pub verdict: bool,
    /// First `(x, y)` violating the criterion.
    pub witness: Option<(usize, usize)>,
    pub checked_criterion: Criterion,
}

/// Decides whether `f` is a gyro-homomorphism under the chosen criterion.
pub fn is_gyro_hom(f: &GroupMap, criterion: Criterion) -> GyroHomReport {
    let (k, g) = (f.domain(), f.codomain());
    let t = |x: usize| f.apply(x);
    let delta = |x: usize, y: usize| g.mul(g.mul(t(x), t(y)), g.inv(t(k.mul(x, y))));
    let holds = |x: usize, y: usize| -> bool {
        let yi = k.inv(y);
        let y2 = k.mul(y, y);
        let lhs = t(k.mul(k.mul(yi, x), y2));
        match criterion {
            Criterion::Definition => {
                let fy = t(y);
                lhs == g.mul(g.mul(g.inv(fy), t(x)), g.mul(fy, fy))
            }
            Criterion::SplitPowers => lhs == g.mul(g.mul(t(yi), t(x)), t(y2)),
            Criterion::Coboundary => g.mul(delta(yi, x), delta(k.mul(yi, x), y2)) == 0,
        }
    };
    let witness = if criterion != Criterion::Definition && t(0) != 0 {
        Some((0, 0))
    } else {
        k.elements()
            .flat_map(|x| k.elements().map(move |y| (x, y)))
            .find(|&(x, y)| !holds(x, y))
    };
    GyroHomReport {
        verdict: witness.is_none(),
        witness,
        checked_criterion: criterion,
    }
}

fn power_preference(g: &FiniteGroup) -> Vec<usize> {
    let mut pref: Vec<usize> = g.elements().collect();
    pref.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    pref
}

/// `GHom(G, K)` with, for abelian `K`, its invariant factors under pointwise
/// product when the set fits in a Cayley table.
#[derive(Clone, Debug)]
pub struct GyroHomSet {
    pub maps: Vec<GroupMap>,
    pub nodes: u64,
    pub group_invariants: Option<Vec<i64>>,
}

/// All gyro-homomorphisms `G → K`.
pub fn enumerate_gyro_homs(g: &FiniteGroup, k: &FiniteGroup, cap: usize) -> Result<GyroHomSet> {
    if g.order().saturating_mul(k.order()) > cap {
        return Err(Error::CapExceeded { cap });
    }
    let (sg, sk) = (circ_n(g, 1), circ_n(k, 1));
    let gens = generating_sequence(&sg, &power_preference(g));
    let out = HomSearch::new(&sg, &sk, gens)
        .allowed(|a, b| g.element_order(a) % k.element_order(b) == 0)
        .node_cap(NODE_CAP)
        .run(usize::MAX)?;
    let maps: Vec<GroupMap> = out
        .solutions
        .iter()
        .map(|s| GroupMap::new(g.clone(), k.clone(), s.clone()))
        .collect::<Result<_>>()?;
    let group_invariants = if k.is_abelian() && maps.len() <= crate::group::TABLE_CAP {
        Some(pointwise_group_invariants(&maps, k)?)
    } else {
        None
    };
    Ok(GyroHomSet {
        maps,
        nodes: out.nodes,
        group_invariants,
    })
}

fn pointwise_group_invariants(maps: &[GroupMap], k: &FiniteGroup) -> Result<Vec<i64>> {
    let index: std::collections::HashMap<&[usize], usize> =
        maps.iter().enumerate().map(|(i, m)| (m.values(), i)).collect();
    let mut table = Vec::with_capacity(maps.len());
    for a in maps {
        let mut row = Vec::with_capacity(maps.len());
        for b in maps {
            let v: Vec<usize> = a.values().iter().zip(b.values()).map(|(&x, &y)| k.mul(x, y)).collect();
            let idx = index.get(v.as_slice()).ok_or_else(|| {
                Error::RelationViolation("pointwise product left the hom set".into())
            })?;
            row.push(*idx);
        }
        table.push(row);
    }
    let labels = (0..maps.len()).map(|i| format!("f{i}")).collect();
    let grp = FiniteGroup::from_table(labels, table)?;
    abelian_invariants(&grp)
}

/// Loop invariants preserved by right-loop isomorphisms.
fn loop_profile(s: &RightLoopTable) -> Vec<(usize, usize, usize)> {
    let n = s.order();
    let mut roots = vec![0; n];
    for y in 0..n {
        roots[s.op(y, y)] += 1;
    }
    (0..n)
        .map(|x| {
            let commuting = (0..n).filter(|&y| s.op(x, y) == s.op(y, x)).count();
            (s.power_order(x), commuting, roots[x])
        })
        .collect()
}

/// A right-loop isomorphism `a → b`, or an exhaustion certificate.
pub fn loop_isomorphism(a: &RightLoopTable, b: &RightLoopTable) -> Result<(Option<Vec<usize>>, SearchOutcome)> {
    let empty = SearchOutcome {
        solutions: Vec::new(),
        nodes: 0,
    };
    if a.order() != b.order() {
        return Ok((None, empty));
    }
    let (pa, pb) = (loop_profile(a), loop_profile(b));
    let (mut sa, mut sb) = (pa.clone(), pb.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok((None, empty));
    }
    let mut pref: Vec<usize> = (0..a.order()).collect();
    pref.sort_by_key(|&x| (std::cmp::Reverse(pa[x].0), x));
    let gens = generating_sequence(a, &pref);
    let out = HomSearch::new(a, b, gens)
        .allowed(|x, y| pa[x] == pb[y])
        .injective(true)
        .node_cap(NODE_CAP)
        .run(1)?;
    Ok((out.first().cloned(), out))
}

/// A bijective gyro-homomorphism `g → k`, found as an isomorphism of the ∘₁ loops.
pub fn are_gyro_isomorphic(g: &FiniteGroup, k: &FiniteGroup) -> Result<(Option<GroupMap>, SearchOutcome)> {
    let (found, out) = loop_isomorphism(&circ_n(g, 1), &circ_n(k, 1))?;
    let map = found
        .map(|v| GroupMap::new(g.clone(), k.clone(), v))
        .transpose()?;
    Ok((map, out))
}

/// All sub right loops of `s`, optionally only those of one order, sorted by
/// (order, elements).
pub fn sub_right_loops(s: &RightLoopTable, order: Option<usize>) -> Result<Vec<Vec<usize>>> {
    let n = s.order();
    if n > SUBLOOP_CAP {
        return Err(Error::CapExceeded { cap: SUBLOOP_CAP });
    }
    let key = |set: &[usize]| set.iter().fold(0u128, |acc, &x| acc | (1u128 << x));
    let start = s.subloop_closure(&[]);
    let mut seen: HashSet<u128> = HashSet::from([key(&start)]);
    let mut all = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(l) = queue.pop_front() {
        let k = key(&l);
        for x in 0..n {
            if k & (1u128 << x) != 0 {
                continue;
            }
            let mut seed = l.clone();
            seed.push(x);
            let m = s.subloop_closure(&seed);
            if seen.insert(key(&m)) {
                all.push(m.clone());
                queue.push_back(m);
            }
        }
    }
    all.retain(|m| order.is_none_or(|o| m.len() == o));
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(all)
}

/// All subgroups of `g` (of one order if given), via the same closure walk.
pub fn subgroups(g: &FiniteGroup, order: Option<usize>) -> Result<Vec<Vec<usize>>> {
    sub_right_loops(&RightLoopTable::from_group(g), order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemidirectReport {
    /// `G = HS`.
    pub product_covers: bool,
    /// `Hy² ∩ S = {y²}` for all `y ∈ S`.
    pub squares_separated: bool,
    /// `S` is a right transversal to `H`.
    pub is_transversal: bool,
    pub verdict: bool,
}

/// Whether `g` is an internal gyro-semidirect product of `h` with `s`.
///
/// Decided by the two-condition test and independently by the transversal
/// test; disagreement is reported as a relation violation.
pub fn is_gyro_semidirect(g: &FiniteGroup, h: &[usize], s: &[usize]) -> Result<SemidirectReport> {
    if !g.is_normal(h) {
        return Err(Error::NotNormal(format!("{} elements given", h.len())));
    }
    let loop1 = circ_n(g, 1);
    if !loop1.is_subloop(s) {
        return Err(Error::NotSubloop(format!("{} elements given", s.len())));
    }
    let n = g.order();
    let mut in_s = vec![false; n];
    for &x in s {
        in_s[x] = true;
    }
    let mut covered = vec![false; n];
    for &a in h {
        for &b in s {
            covered[g.mul(a, b)] = true;
        }
    }
    let product_covers = covered.iter().all(|&c| c);
    let squares_separated = s.iter().all(|&y| {
        let y2 = g.mul(y, y);
        h.iter().all(|&a| {
            let v = g.mul(a, y2);
            !in_s[v] || v == y2
        })
    });
    let mut hits = vec![0usize; n];
    for &a in h {
        for &b in s {
            hits[g.mul(a, b)] += 1;
        }
    }
    let is_transversal = hits.iter().all(|&c| c == 1);
    let verdict = product_covers && squares_separated;
    if verdict != is_transversal {
        return Err(Error::RelationViolation(
            "the two gyro-semidirect characterizations disagree".into(),
        ));
    }
    Ok(SemidirectReport {
        product_covers,
        squares_separated,
        is_transversal,
        verdict,
    })
}

/// A gyro-homomorphic section of `e`, or the size of the exhausted tree.
#[derive(Clone, Debug)]
pub struct SplittingOutcome {
    pub section: Option<GroupMap>,
    pub nodes: u64,
}

/// Backtracking search for a gyro-splitting `K → G` of `e`.
///
/// Each `x ∈ K` may only map into its fiber `β⁻¹(x)`, and to an element whose
/// order divides that of `x`.
pub fn find_gyro_splitting(e: &ExtensionRecord) -> Result<SplittingOutcome> {
    find_gyro_splitting_capped(e, NODE_CAP)
}

pub fn find_gyro_splitting_capped(e: &ExtensionRecord, node_cap: u64) -> Result<SplittingOutcome> {
    let (sections, nodes) = search_splittings(e, 1, node_cap)?;
    Ok(SplittingOutcome {
        section: sections.into_iter().next(),
        nodes,
    })
}

/// Up to `limit` gyro-splittings of `e`, in search order.
pub fn gyro_splittings(e: &ExtensionRecord, limit: usize) -> Result<Vec<GroupMap>> {
    Ok(search_splittings(e, limit, NODE_CAP)?.0)
}

fn search_splittings(e: &ExtensionRecord, limit: usize, node_cap: u64) -> Result<(Vec<GroupMap>, u64)> {
    let (k, g) = (e.k(), e.g());
    let (sk, sg) = (circ_n(k, 1), circ_n(g, 1));
    let gens = generating_sequence(&sk, &power_preference(k));
    let beta = &e.beta;
    let out = HomSearch::new(&sk, &sg, gens)
        .allowed(|x, y| beta.apply(y) == x && k.element_order(x) % g.element_order(y) == 0)
        .node_cap(node_cap)
        .run(limit)?;
    let sections = out
        .solutions
        .iter()
        .map(|s| GroupMap::new(k.clone(), g.clone(), s.clone()))
        .collect::<Result<_>>()?;
    Ok((sections, out.nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    fn z(n: usize) -> FiniteGroup {
        cyclic(n).unwrap()
    }

    #[test]
    fn group_homs_are_gyro_homs() {
        let s3 = symmetric(3).unwrap();
        let sign = GroupMap::from_fn(&s3, &z(2), |x| (s3.element_order(x) == 2) as usize).unwrap();
        for c in Criterion::ALL {
            assert!(is_gyro_hom(&sign, c).verdict);
        }
    }

    #[test]
    fn squaring_on_s3_is_not_a_gyro_hom() {
        let s3 = symmetric(3).unwrap();
        let sq = GroupMap::from_fn(&s3, &s3, |x| s3.mul(x, x)).unwrap();
        for c in Criterion::ALL {
            let r = is_gyro_hom(&sq, c);
            assert!(!r.verdict);
            assert!(r.witness.is_some());
        }
    }

    #[test]
    fn ghom_counts() {
        assert_eq!(enumerate_gyro_homs(&z(2), &z(3), HOM_CAP).unwrap().maps.len(), 1);
        let z3sq = direct_product(&z(3), &z(3)).unwrap();
        let r = enumerate_gyro_homs(&z3sq, &z(3), HOM_CAP).unwrap();
        assert_eq!(r.maps.len(), 9);
        assert_eq!(r.group_invariants, Some(vec![3, 3]));
    }

    #[test]
    fn ghom_from_e27_matches_linear_maps() {
        let e27 = extraspecial27(3).unwrap();
        let r = enumerate_gyro_homs(&e27, &z(3), HOM_CAP).unwrap();
        assert_eq!(r.maps.len(), 27);
        assert_eq!(r.group_invariants, Some(vec![3, 3, 3]));
        // Only the 9 that kill the center are group homomorphisms.
        assert_eq!(r.maps.iter().filter(|m| m.is_homomorphism()).count(), 9);
    }

    #[test]
    fn gyro_isomorphism_examples() {
        let z3 = z(3);
        let z3cubed = direct_product(&direct_product(&z3, &z3).unwrap(), &z3).unwrap();
        let e27 = extraspecial27(3).unwrap();
        let (f, _) = are_gyro_isomorphic(&e27, &z3cubed).unwrap();
        let f = f.unwrap();
        assert!(is_gyro_hom(&f, Criterion::Definition).verdict && f.is_bijective());
        assert!(are_gyro_isomorphic(&quaternion8(), &quaternion8()).unwrap().0.is_some());
        let v4 = direct_product(&z(2), &z(2)).unwrap();
        assert!(are_gyro_isomorphic(&z(4), &v4).unwrap().0.is_none());
    }

    #[test]
    fn e27_subloop_and_subgroup_counts() {
        let e27 = extraspecial27(3).unwrap();
        assert_eq!(sub_right_loops(&circ_n(&e27, 1), Some(9)).unwrap().len(), 13);
        assert_eq!(subgroups(&e27, Some(9)).unwrap().len(), 4);
        assert_eq!(sub_right_loops(&circ_n(&z(1), 1), None).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn semidirect_examples() {
        let s3 = symmetric(3).unwrap();
        let a3 = s3.commutator_subgroup();
        let t = s3.element_orders().iter().position(|&o| o == 2).unwrap();
        assert!(is_gyro_semidirect(&s3, &a3, &[0, t]).unwrap().verdict);
        assert!(matches!(is_gyro_semidirect(&z(4), &[0, 2], &[0, 1]), Err(Error::NotSubloop(_))));
    }

    #[test]
    fn e27_is_gyro_semidirect_over_its_center() {
        let e27 = extraspecial27(3).unwrap();
        let center = e27.center();
        let loops = sub_right_loops(&circ_n(&e27, 1), Some(9)).unwrap();
        let groups: Vec<Vec<usize>> = subgroups(&e27, Some(9)).unwrap();
        let non_groups: Vec<&Vec<usize>> = loops.iter().filter(|l| !groups.contains(l)).collect();
        assert_eq!(non_groups.len(), 9);
        for s in non_groups {
            assert!(is_gyro_semidirect(&e27, &center, s).unwrap().verdict);
        }
    }

    #[test]
    fn splitting_examples() {
        let e27 = extraspecial27(3).unwrap();
        let ext = ExtensionRecord::from_normal_subgroup(&e27, &e27.center()).unwrap();
        let s = find_gyro_splitting(&ext).unwrap().section.unwrap();
        assert!(is_gyro_hom(&s, Criterion::Definition).verdict);
        assert!(!s.is_homomorphism());
        assert!(!ext.splits());

        let u5 = heisenberg_mod_p(5).unwrap();
        let ext = ExtensionRecord::from_normal_subgroup(&u5, &u5.center()).unwrap();
        assert!(find_gyro_splitting(&ext).unwrap().section.is_none());

        let ext = ExtensionRecord::from_normal_subgroup(&z(4), &[0, 2]).unwrap();
        let out = find_gyro_splitting(&ext).unwrap();
        assert!(out.section.is_none());
    }
}
