use std::collections::HashSet;

use serde::Serialize;

use super::{cocycle_spaces, AbstractKernel, Cochain2, CocycleSpaces};
use crate::error::{Error, Result};
use crate::group::{abelian_invariants, cyclic, ExtensionRecord, FiniteGroup, GroupMap};
use crate::linalg::Lattice;
use crate::morphism::{gyro_splittings, is_gyro_hom, Criterion};
use crate::search::{generating_sequence, HomSearch};

/// All group homomorphisms `a → b`.
pub fn hom_set(a: &FiniteGroup, b: &FiniteGroup) -> Vec<GroupMap> {
    let gens = generating_sequence(a, &a.elements().collect::<Vec<_>>());
    let out = HomSearch::new(a, b, gens)
        .allowed(|x, y| a.element_order(x) % b.element_order(y) == 0)
        .run(usize::MAX)
        .expect("no node cap set");
    out.solutions
        .into_iter()
        .map(|v| GroupMap::from_fn(a, b, |x| v[x]).expect("values in range"))
        .collect()
}

/// `δ : Hom(H, A) → GH²(K, A)`, `η ↦ [η ∘ fᵗ]`, for a central extension
/// with a gyro-splitting `t`.
#[derive(Clone, Debug)]
pub struct ConnectingDelta {
    pub spaces: CocycleSpaces,
    extension: ExtensionRecord,
    a: FiniteGroup,
    /// `fᵗ(x, y) = α⁻¹(t(x) t(y) t(xy)⁻¹)`, row-major, as `H` indices.
    factor: Vec<usize>,
}

fn factor_set(e: &ExtensionRecord, t: &GroupMap) -> Result<Vec<usize>> {
    let (g, k) = (e.g(), e.k());
    let mut pre = vec![usize::MAX; g.order()];
    for (a, &v) in e.alpha.values().iter().enumerate() {
        pre[v] = a;
    }
    let mut out = Vec::with_capacity(k.order() * k.order());
    for x in k.elements() {
        for y in k.elements() {
            let v = g.mul(g.mul(t.apply(x), t.apply(y)), g.inv(t.apply(k.mul(x, y))));
            if pre[v] == usize::MAX {
                return Err(Error::InvalidMap("section is not a set-theoretic section".into()));
            }
            out.push(pre[v]);
        }
    }
    Ok(out)
}

pub fn connecting_delta(e: &ExtensionRecord, a: &FiniteGroup) -> Result<ConnectingDelta> {
    if !e.is_central() {
        return Err(Error::NotCentral);
    }
    let t = e.section.as_ref().ok_or(Error::NoSection)?;
    if !is_gyro_hom(t, Criterion::Definition).verdict {
        return Err(Error::InvalidMap("the attached section is not a gyro-homomorphism".into()));
    }
    let spaces = cocycle_spaces(&AbstractKernel::trivial(e.k(), a)?)?;
    Ok(ConnectingDelta {
        factor: factor_set(e, t)?,
        spaces,
        extension: e.clone(),
        a: a.clone(),
    })
}

/// Ranks and exactness flags of `0 → Hom(K,A) → Hom(G,A) → Hom(H,A) → GH²(K,A)`.
#[derive(Clone, Debug, Serialize)]
pub struct FundamentalSequence {
    pub hom_k_a: usize,
    pub hom_g_a: usize,
    pub hom_h_a: usize,
    pub restriction_image: usize,
    pub delta_kernel: usize,
    pub gh2_invariants: Vec<i64>,
    pub inflation_injective: bool,
    pub exact_at_hom_g: bool,
    pub exact_at_hom_h: bool,
    pub delta_additive: bool,
    /// `None` when the extension has a single gyro-splitting.
    pub splitting_independent: Option<bool>,
}

impl FundamentalSequence {
    pub fn exact(&self) -> bool {
        self.inflation_injective
            && self.exact_at_hom_g
            && self.exact_at_hom_h
            && self.delta_additive
            && self.splitting_independent != Some(false)
    }
}

impl ConnectingDelta {
    fn cochain(&self, factor: &[usize], eta: &GroupMap) -> Cochain2 {
        let n = self.extension.k().order();
        Cochain2::from_fn(n, |x, y| eta.apply(factor[x * n + y]))
    }

    /// `η ∘ fᵗ` as an `A`-valued cochain.
    pub fn cocycle(&self, eta: &GroupMap) -> Cochain2 {
        self.cochain(&self.factor, eta)
    }

    /// Coordinates of `δ(η)` in `GH²(K, A)`.
    pub fn delta(&self, eta: &GroupMap) -> Result<Vec<i64>> {
        self.class_of(&self.cocycle(eta))
    }

    fn class_of(&self, f: &Cochain2) -> Result<Vec<i64>> {
        self.spaces
            .gh2_class(f)
            .ok_or_else(|| Error::RelationViolation("η∘fᵗ is not a gyro-cocycle".into()))
    }

    pub fn fundamental_sequence(&self) -> Result<FundamentalSequence> {
        let e = &self.extension;
        let (h, g, k, a) = (e.h(), e.g(), e.k(), &self.a);
        let hom_k = hom_set(k, a);
        let hom_g = hom_set(g, a);
        let hom_h = hom_set(h, a);
        let inflated: HashSet<Vec<usize>> = hom_k.iter().map(|p| e.beta.then(p).map(|m| m.values().to_vec())).collect::<Result<_>>()?;
        let killing_h: HashSet<Vec<usize>> = hom_g
            .iter()
            .filter(|phi| e.alpha.values().iter().all(|&x| phi.apply(x) == 0))
            .map(|phi| phi.values().to_vec())
            .collect();
        let restricted: HashSet<Vec<usize>> = hom_g
            .iter()
            .map(|phi| e.alpha.then(phi).map(|m| m.values().to_vec()))
            .collect::<Result<_>>()?;
        let zero = vec![0; self.spaces.gh2_invariants().len()];
        let mut kernel: HashSet<Vec<usize>> = HashSet::new();
        let mut deltas = Vec::with_capacity(hom_h.len());
        for eta in &hom_h {
            let d = self.delta(eta)?;
            if d == zero {
                kernel.insert(eta.values().to_vec());
            }
            deltas.push(d);
        }
        let index: std::collections::HashMap<&[usize], usize> =
            hom_h.iter().enumerate().map(|(i, m)| (m.values(), i)).collect();
        let inv = self.spaces.gh2_invariants();
        let mut delta_additive = true;
        for (i, p) in hom_h.iter().enumerate() {
            for (j, q) in hom_h.iter().enumerate() {
                let sum: Vec<usize> = p.values().iter().zip(q.values()).map(|(&x, &y)| a.mul(x, y)).collect();
                let expected: Vec<i64> = deltas[i]
                    .iter()
                    .zip(&deltas[j])
                    .zip(inv)
                    .map(|((x, y), d)| (x + y).rem_euclid(*d))
                    .collect();
                delta_additive &= index.get(sum.as_slice()).is_some_and(|&s| deltas[s] == expected);
            }
        }
        let t = e.section.as_ref().expect("checked on construction");
        let splitting_independent = match gyro_splittings(e, 2)?.into_iter().find(|s| s != t) {
            Some(t2) => {
                let f2 = factor_set(e, &t2)?;
                let mut same = true;
                for (eta, d) in hom_h.iter().zip(&deltas) {
                    same &= self.class_of(&self.cochain(&f2, eta))? == *d;
                }
                Some(same)
            }
            None => None,
        };
        Ok(FundamentalSequence {
            hom_k_a: hom_k.len(),
            hom_g_a: hom_g.len(),
            hom_h_a: hom_h.len(),
            restriction_image: restricted.len(),
            delta_kernel: kernel.len(),
            gh2_invariants: inv.to_vec(),
            inflation_injective: inflated.len() == hom_k.len(),
            exact_at_hom_g: inflated == killing_h,
            exact_at_hom_h: restricted == kernel,
            delta_additive,
            splitting_independent,
        })
    }
}

/// Both sides of `im δ ≅ Hom([G,G] ∩ α(H), Z_m)`.
#[derive(Clone, Debug, Serialize)]
pub struct Prop64Report {
    pub modulus: usize,
    pub image_invariants: Vec<i64>,
    pub hom_invariants: Vec<i64>,
    pub gh2_invariants: Vec<i64>,
    pub holds: bool,
    /// For the free extension, whether `GH²(K, Z_m)` equals the Hom side too.
    pub gh2_matches: Option<bool>,
}

/// Compares `im δ` with `Hom([G,G] ∩ α(H), Z_m)`, `Z_m` standing in for a
/// divisible coefficient group. `m` must be a multiple of `exp(G)`.
pub fn prop64_check(e: &ExtensionRecord, m: usize, free: bool) -> Result<Prop64Report> {
    let g = e.g();
    if m == 0 || m % g.exponent() != 0 {
        return Err(Error::BadModulus(format!("{m} is not a multiple of exp(G) = {}", g.exponent())));
    }
    let zm = cyclic(m)?;
    let cd = connecting_delta(e, &zm)?;
    let spaces = &cd.spaces;
    let rows: Vec<Vec<i64>> = hom_set(e.h(), &zm)
        .iter()
        .map(|eta| spaces.to_vector(&cd.cocycle(eta)))
        .collect();
    let gb2 = &spaces.gb2;
    let image = Lattice::from_generators(gb2.dim(), *gb2.modulus(), gb2.rows().iter().cloned().chain(rows));
    let image_invariants = image
        .quotient(gb2)
        .map_err(|_| Error::RelationViolation("GB2 ⊄ im δ + GB2".into()))?
        .invariants;

    let alpha_image: HashSet<usize> = e.alpha.values().iter().copied().collect();
    let d: Vec<usize> = g.commutator_subgroup().into_iter().filter(|x| alpha_image.contains(x)).collect();
    let (dg, _) = g.subgroup(&d)?;
    let hom_invariants: Vec<i64> = abelian_invariants(&dg)?
        .into_iter()
        .map(|x| num_integer::gcd(x, m as i64))
        .filter(|&x| x > 1)
        .collect();
    let gh2 = spaces.gh2_invariants().to_vec();
    Ok(Prop64Report {
        modulus: m,
        holds: image_invariants == hom_invariants,
        gh2_matches: free.then(|| gh2 == hom_invariants),
        image_invariants,
        hom_invariants,
        gh2_invariants: gh2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    fn z(n: usize) -> FiniteGroup {
        cyclic(n).unwrap()
    }

    fn e27_over_center() -> ExtensionRecord {
        let g = extraspecial27(3).unwrap();
        let e = ExtensionRecord::from_normal_subgroup(&g, &g.center()).unwrap();
        let t = crate::morphism::find_gyro_splitting(&e).unwrap().section.unwrap();
        e.with_section(t).unwrap()
    }

    #[test]
    fn hom_counts() {
        assert_eq!(hom_set(&z(6), &z(4)).len(), 2);
        assert_eq!(hom_set(&symmetric(3).unwrap(), &z(2)).len(), 2);
    }

    #[test]
    fn e27_sequence_is_exact() {
        let e = e27_over_center();
        for m in [3, 9] {
            let cd = connecting_delta(&e, &z(m)).unwrap();
            let eta0 = GroupMap::trivial(e.h(), &z(m));
            assert!(cd.delta(&eta0).unwrap().iter().all(|&c| c == 0));
            let s = cd.fundamental_sequence().unwrap();
            assert!(s.exact(), "{s:?}");
            assert_eq!(s.delta_kernel, s.restriction_image);
        }
    }

    #[test]
    fn split_extension_has_zero_delta() {
        let k = direct_product(&z(2), &z(2)).unwrap();
        let g = direct_product(&z(2), &k).unwrap();
        let e = ExtensionRecord::from_normal_subgroup(&g, &[0, 4]).unwrap();
        let t = e.find_group_splitting().unwrap();
        let e = e.with_section(t).unwrap();
        let cd = connecting_delta(&e, &z(2)).unwrap();
        for eta in hom_set(e.h(), &z(2)) {
            assert!(cd.delta(&eta).unwrap().iter().all(|&c| c == 0));
        }
        assert!(cd.fundamental_sequence().unwrap().exact());
    }

    #[test]
    fn non_central_is_rejected() {
        let s3 = symmetric(3).unwrap();
        let e = ExtensionRecord::from_normal_subgroup(&s3, &s3.commutator_subgroup()).unwrap();
        assert!(matches!(connecting_delta(&e, &z(3)), Err(Error::NotCentral)));
    }

    #[test]
    fn missing_section_is_rejected() {
        let g = extraspecial27(3).unwrap();
        let e = ExtensionRecord::from_normal_subgroup(&g, &g.center()).unwrap();
        assert!(matches!(connecting_delta(&e, &z(3)), Err(Error::NoSection)));
    }

    #[test]
    fn prop64_on_e27() {
        let r = prop64_check(&e27_over_center(), 3, false).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.hom_invariants, vec![3]);
        assert!(matches!(prop64_check(&e27_over_center(), 2, false), Err(Error::BadModulus(_))));
    }

    #[test]
    fn prop64_abelian_both_trivial() {
        let g = direct_product(&z(2), &z(2)).unwrap();
        let e = ExtensionRecord::from_normal_subgroup(&g, &[0, 2]).unwrap();
        let e = e.clone().with_section(e.find_group_splitting().unwrap()).unwrap();
        let r = prop64_check(&e, 2, false).unwrap();
        assert!(r.holds);
        assert!(r.image_invariants.is_empty() && r.hom_invariants.is_empty());
    }
}
