//! The gyro-square `K⊠K` and the free gyro-split central extension `U`.
//!
//! `K⊠K` is presented on symbols `x⊠y` for all pairs with the relations
//!
//! - (i) `e⊠x = x⊠e = 0`,
//! - (ii) `x⊠y + xy⊠z = y⊠z + x⊠yz`,
//! - (iii) `y⁻¹⊠x + y⁻¹x⊠y² = 0`,
//!
//! and computed modulo `N = |K|·exp(K)`. That modulus is exact: for any
//! `φ ∈ Hom(K⊠K, Q/Z)` the transfer `g(x) = Σ_z φ(x⊠z)` gives `|K|·φ = ∂g`,
//! (iii) forces `g(y⁻¹xy²) = g(x) + g(y)` and `g(y^k) = k·g(y)`, so
//! `exp(K)·g = 0` and `N·φ = 0`. A finitely generated group whose dual is
//! killed by `N` is finite of exponent dividing `N`.

use serde::Serialize;

use crate::cohomology::{cocycle_spaces, AbstractKernel};
use crate::error::{Error, Result};
use crate::group::{abelian_invariants, cyclic, ExtensionRecord, FiniteGroup, GroupMap, TABLE_CAP};
use crate::linalg::SimplifiedPresentation;
use crate::morphism::{is_gyro_hom, Criterion};

/// Largest `|K|` accepted by [`boxed_square`].
pub const BOXED_CAP: usize = 64;

#[derive(Clone, Debug)]
pub struct BoxedSquare {
    k: FiniteGroup,
    p: SimplifiedPresentation<i64>,
}

/// Serializable summary of a [`BoxedSquare`].
#[derive(Clone, Debug, Serialize)]
pub struct BoxedSquareReport {
    pub group: String,
    pub modulus: i64,
    pub invariants: Vec<i64>,
    pub order: u64,
    /// `(x, y, coordinates of x⊠y)` for every pair of non-identity elements.
    pub canonical_form: Vec<(String, String, Vec<i64>)>,
}

pub fn boxed_square(k: &FiniteGroup) -> Result<BoxedSquare> {
    let n = k.order();
    if n > BOXED_CAP {
        return Err(Error::CapExceeded { cap: BOXED_CAP });
    }
    let modulus = (n * k.exponent()) as i64;
    let sym = |x: usize, y: usize| x * n + y;
    let mut p = crate::linalg::Presentation::new(n * n, modulus);
    for x in k.elements() {
        p.relate([(sym(0, x), 1)]);
        p.relate([(sym(x, 0), 1)]);
    }
    for y in k.elements() {
        let yi = k.inv(y);
        let y2 = k.mul(y, y);
        for x in k.elements() {
            p.relate([(sym(yi, x), 1), (sym(k.mul(yi, x), y2), 1)]);
        }
    }
    for x in 1..n {
        for y in 1..n {
            let xy = k.mul(x, y);
            for z in 1..n {
                p.relate([
                    (sym(x, y), 1),
                    (sym(xy, z), 1),
                    (sym(y, z), -1),
                    (sym(x, k.mul(y, z)), -1),
                ]);
            }
        }
    }
    let bs = BoxedSquare {
        k: k.clone(),
        p: p.simplify(),
    };
    if let Some(msg) = bs.relation_violation() {
        return Err(Error::RelationViolation(msg));
    }
    Ok(bs)
}

impl BoxedSquare {
    pub fn k(&self) -> &FiniteGroup {
        &self.k
    }

    pub fn invariants(&self) -> &[i64] {
        self.p.invariants()
    }

    pub fn order(&self) -> usize {
        self.invariants().iter().product::<i64>() as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants().is_empty()
    }

    /// Coordinates of `x⊠y`.
    pub fn symbol(&self, x: usize, y: usize) -> &[i64] {
        self.p.image(x * self.k.order() + y)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.p.add(a, b)
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        self.p.neg(a)
    }

    pub fn zero(&self) -> Vec<i64> {
        self.p.zero()
    }

    /// Mixed-radix index of a coordinate vector; the first coordinate is most significant.
    pub fn index_of(&self, c: &[i64]) -> usize {
        c.iter()
            .zip(self.invariants())
            .fold(0, |acc, (x, d)| acc * *d as usize + x.rem_euclid(*d) as usize)
    }

    pub fn element(&self, mut i: usize) -> Vec<i64> {
        let mut c = vec![0; self.invariants().len()];
        for (slot, d) in c.iter_mut().zip(self.invariants()).rev() {
            *slot = (i % *d as usize) as i64;
            i /= *d as usize;
        }
        c
    }

    /// Checks relations (i)–(iii) on the coordinates.
    pub fn relation_violation(&self) -> Option<String> {
        let k = &self.k;
        let z = self.zero();
        for x in k.elements() {
            if self.symbol(0, x) != z.as_slice() || self.symbol(x, 0) != z.as_slice() {
                return Some(format!("(i) fails at {}", k.label(x)));
            }
        }
        for x in k.elements() {
            for y in k.elements() {
                let xy = k.mul(x, y);
                for zz in k.elements() {
                    let l = self.add(self.symbol(x, y), self.symbol(xy, zz));
                    let r = self.add(self.symbol(y, zz), self.symbol(x, k.mul(y, zz)));
                    if l != r {
                        return Some(format!("(ii) fails at ({}, {}, {})", k.label(x), k.label(y), k.label(zz)));
                    }
                }
                let yi = k.inv(y);
                let s = self.add(self.symbol(yi, x), self.symbol(k.mul(yi, x), k.mul(y, y)));
                if s != z {
                    return Some(format!("(iii) fails at ({}, {})", k.label(x), k.label(y)));
                }
            }
        }
        None
    }

    /// `K⊠K` as a group, elements in [`BoxedSquare::index_of`] order.
    pub fn as_group(&self) -> Result<FiniteGroup> {
        let m = self.order();
        if m > TABLE_CAP {
            return Err(Error::OrderCapExceeded { cap: TABLE_CAP });
        }
        let elems: Vec<Vec<i64>> = (0..m).map(|i| self.element(i)).collect();
        let labels = elems.iter().map(|c| format!("{c:?}")).collect();
        Ok(FiniteGroup::from_fn_unchecked(
            &format!("{0}⊠{0}", self.k.name()),
            labels,
            |a, b| self.index_of(&self.add(&elems[a], &elems[b])),
        ))
    }

    pub fn report(&self) -> BoxedSquareReport {
        let k = &self.k;
        BoxedSquareReport {
            group: k.name().to_string(),
            modulus: *self.p.modulus(),
            invariants: self.invariants().to_vec(),
            order: self.order() as u64,
            canonical_form: (1..k.order())
                .flat_map(|x| (1..k.order()).map(move |y| (x, y)))
                .map(|(x, y)| (k.label(x).to_string(), k.label(y).to_string(), self.symbol(x, y).to_vec()))
                .collect(),
        }
    }

    /// Whether `x ↦ x⊠x` is gyro-crossed and whether it is crossed, for the
    /// trivial action on `K⊠K`.
    pub fn diagonal_map(&self) -> (bool, bool) {
        let k = &self.k;
        let g = |x: usize| self.symbol(x, x).to_vec();
        let mut gyro = true;
        let mut crossed = true;
        for x in k.elements() {
            for y in k.elements() {
                let yi = k.inv(y);
                let y2 = k.mul(y, y);
                let lhs = self.add(&self.add(&g(x), &g(yi)), &g(y2));
                gyro &= lhs == g(k.mul(k.mul(yi, x), y2));
                crossed &= g(k.mul(x, y)) == self.add(&g(x), &g(y));
            }
        }
        (gyro, crossed)
    }
}

/// `U = K⊠K × K` with `(a, x)(b, y) = (a + b + x⊠y, xy)`; `(a, x)` sits at
/// index `index_of(a)·|K| + x`.
#[derive(Clone, Debug)]
pub struct UGroup {
    pub square: BoxedSquare,
    pub group: FiniteGroup,
    pub extension: ExtensionRecord,
    pub section_certified: bool,
}

pub fn u_group(bs: &BoxedSquare) -> Result<UGroup> {
    let k = bs.k();
    let n = k.order();
    let m = bs.order();
    if n * m > TABLE_CAP {
        return Err(Error::OrderCapExceeded { cap: TABLE_CAP });
    }
    let elems: Vec<Vec<i64>> = (0..m).map(|i| bs.element(i)).collect();
    let labels = (0..n * m)
        .map(|i| format!("({:?},{})", elems[i / n], k.label(i % n)))
        .collect();
    let g = FiniteGroup::from_fn_unchecked(&format!("U({})", k.name()), labels, |i, j| {
        let (a, x) = (&elems[i / n], i % n);
        let (b, y) = (&elems[j / n], j % n);
        bs.index_of(&bs.add(&bs.add(a, b), bs.symbol(x, y))) * n + k.mul(x, y)
    });
    g.validate()?;
    let sq = bs.as_group()?;
    let alpha = GroupMap::new(sq, g.clone(), (0..m).map(|a| a * n).collect())?;
    let beta = GroupMap::new(g.clone(), k.clone(), (0..n * m).map(|i| i % n).collect())?;
    let section = GroupMap::new(k.clone(), g.clone(), k.elements().collect())?;
    let section_certified = is_gyro_hom(&section, Criterion::Definition).verdict;
    let extension = ExtensionRecord::new(alpha, beta, Some(section))?;
    if !extension.is_central() {
        return Err(Error::RelationViolation("K⊠K is not central in U".into()));
    }
    Ok(UGroup {
        square: bs.clone(),
        group: g,
        extension,
        section_certified,
    })
}

/// The morphism of extensions `U → E′` over `ν`.
#[derive(Clone, Debug)]
pub struct FreeMorphism {
    pub lambda: GroupMap,
    pub mu: GroupMap,
    pub nu: GroupMap,
}

/// Builds `λ(x⊠y) = fᵗ(ν(x), ν(y))` and `μ(a, x) = α′(λ(a))·t(ν(x))` and
/// verifies that `λ` is well defined, `μ` is a homomorphism and the diagram
/// commutes.
pub fn free_morphism_to(u: &UGroup, target: &ExtensionRecord, nu: &GroupMap) -> Result<FreeMorphism> {
    let t = target.section.as_ref().ok_or(Error::NoSection)?;
    if !target.is_central() {
        return Err(Error::NotCentral);
    }
    let bs = &u.square;
    let k = bs.k();
    if nu.domain() != k || nu.codomain() != target.k() {
        return Err(Error::InvalidMap("ν must map K to the quotient of the target".into()));
    }
    if !is_gyro_hom(nu, Criterion::Definition).verdict {
        return Err(Error::InvalidMap("ν is not a gyro-homomorphism".into()));
    }
    let (h2, g2, k2) = (target.h(), target.g(), target.k());
    let mut pre = vec![usize::MAX; g2.order()];
    for (a, &v) in target.alpha.values().iter().enumerate() {
        pre[v] = a;
    }
    let factor = |x: usize, y: usize| -> usize {
        let v = g2.mul(g2.mul(t.apply(x), t.apply(y)), g2.inv(t.apply(k2.mul(x, y))));
        pre[v]
    };
    let phi = |x: usize, y: usize| factor(nu.apply(x), nu.apply(y));
    for x in k.elements() {
        for y in k.elements() {
            if phi(x, y) == usize::MAX {
                return Err(Error::InvalidMap("the target section is not a section".into()));
            }
        }
    }
    // (i)–(iii) for φ, written in H′.
    for x in k.elements() {
        if phi(0, x) != 0 || phi(x, 0) != 0 {
            return Err(Error::RelationViolation(format!("(i) fails for fᵗ at {}", k.label(x))));
        }
        for y in k.elements() {
            let xy = k.mul(x, y);
            for z in k.elements() {
                let l = h2.mul(phi(x, y), phi(xy, z));
                let r = h2.mul(phi(y, z), phi(x, k.mul(y, z)));
                if l != r {
                    return Err(Error::RelationViolation(format!("(ii) fails for fᵗ at ({x}, {y}, {z})")));
                }
            }
            let yi = k.inv(y);
            if h2.mul(phi(yi, x), phi(k.mul(yi, x), k.mul(y, y))) != 0 {
                return Err(Error::RelationViolation(format!("(iii) fails for fᵗ at ({x}, {y})")));
            }
        }
    }
    // λ on the invariant-factor generators, through their pair-symbol representatives.
    let q = bs.p.quotient();
    let free = bs.p.free_generators();
    let n = k.order();
    let gen_images: Vec<usize> = q
        .generators
        .iter()
        .map(|v| {
            v.iter().zip(free).fold(0, |acc, (&c, &s)| {
                h2.mul(acc, h2.pow(phi(s / n, s % n), c))
            })
        })
        .collect();
    let sq = u.extension.h();
    let lambda_values: Vec<usize> = (0..bs.order())
        .map(|i| {
            bs.element(i)
                .iter()
                .zip(&gen_images)
                .fold(0, |acc, (&c, &g)| h2.mul(acc, h2.pow(g, c)))
        })
        .collect();
    let lambda = GroupMap::new(sq.clone(), h2.clone(), lambda_values)?;
    if !lambda.is_homomorphism() {
        return Err(Error::RelationViolation("λ is not a homomorphism".into()));
    }
    for x in k.elements() {
        for y in k.elements() {
            if lambda.apply(bs.index_of(bs.symbol(x, y))) != phi(x, y) {
                return Err(Error::RelationViolation(format!("λ(x⊠y) ≠ fᵗ at ({x}, {y})")));
            }
        }
    }
    let ug = &u.group;
    let mu = GroupMap::new(
        ug.clone(),
        g2.clone(),
        ug.elements()
            .map(|i| g2.mul(target.alpha.apply(lambda.apply(i / n)), t.apply(nu.apply(i % n))))
            .collect(),
    )?;
    if let Some((a, b)) = mu.homomorphism_violation() {
        return Err(Error::RelationViolation(format!("μ is not a homomorphism at ({a}, {b})")));
    }
    for a in sq.elements() {
        if mu.apply(u.extension.alpha.apply(a)) != target.alpha.apply(lambda.apply(a)) {
            return Err(Error::RelationViolation("left square does not commute".into()));
        }
    }
    for i in ug.elements() {
        if target.beta.apply(mu.apply(i)) != nu.apply(u.extension.beta.apply(i)) {
            return Err(Error::RelationViolation("right square does not commute".into()));
        }
    }
    Ok(FreeMorphism {
        lambda,
        mu,
        nu: nu.clone(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurReport {
    pub group: String,
    pub square_invariants: Vec<i64>,
    /// `(K⊠K × {e}) ∩ [U, U]`.
    pub multiplier_invariants: Vec<i64>,
    pub modulus: usize,
    pub gh2_invariants: Vec<i64>,
    pub consistent: bool,
}

/// The gyro-Schur multiplier, checked against `|GH²(K, Z_m)|` with `m = exp(U)`.
pub fn gyro_schur_multiplier(k: &FiniteGroup) -> Result<SchurReport> {
    let bs = boxed_square(k)?;
    let u = u_group(&bs)?;
    let n = k.order();
    let inter: Vec<usize> = u.group.commutator_subgroup().into_iter().filter(|i| i % n == 0).collect();
    let (sub, _) = u.group.subgroup(&inter)?;
    let multiplier_invariants = abelian_invariants(&sub)?;
    let m = u.group.exponent();
    let spaces = cocycle_spaces(&AbstractKernel::trivial(k, &cyclic(m)?)?)?;
    let gh2_invariants = spaces.gh2_invariants().to_vec();
    let order = |v: &[i64]| v.iter().product::<i64>();
    Ok(SchurReport {
        group: k.name().to_string(),
        square_invariants: bs.invariants().to_vec(),
        consistent: order(&multiplier_invariants) == order(&gh2_invariants),
        multiplier_invariants,
        modulus: m,
        gh2_invariants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    fn z(n: usize) -> FiniteGroup {
        cyclic(n).unwrap()
    }

    #[test]
    fn cyclic_squares_are_trivial() {
        for n in 1..=8 {
            assert!(boxed_square(&z(n)).unwrap().is_trivial(), "Z{n}");
        }
    }

    #[test]
    fn z3_squared() {
        let k = direct_product(&z(3), &z(3)).unwrap();
        let bs = boxed_square(&k).unwrap();
        assert_eq!(bs.invariants(), &[3]);
        let u = u_group(&bs).unwrap();
        assert_eq!(u.group.order(), 27);
        assert!(u.section_certified);
        assert!(isomorphism_search(&u.group, &extraspecial27(3).unwrap()).0.is_some());
    }

    #[test]
    fn small_squares() {
        for k in [direct_product(&z(2), &z(2)).unwrap(), symmetric(3).unwrap(), quaternion8()] {
            let bs = boxed_square(&k).unwrap();
            assert!(bs.is_trivial(), "{}", k.name());
            let u = u_group(&bs).unwrap();
            assert!(u.section_certified);
        }
    }

    #[test]
    fn identity_law_in_u() {
        let k = direct_product(&z(3), &z(3)).unwrap();
        let u = u_group(&boxed_square(&k).unwrap()).unwrap();
        for b in u.group.elements() {
            assert_eq!(u.group.mul(0, b), b);
        }
    }

    #[test]
    fn diagonal_on_e27_vanishes() {
        // Every x⊠x is zero here, so the diagonal map is trivially crossed.
        let k = extraspecial27(3).unwrap();
        let bs = boxed_square(&k).unwrap();
        assert_eq!(bs.invariants(), vec![3]);
        assert!(k.elements().all(|x| bs.symbol(x, x).iter().all(|&c| c == 0)));
        assert_eq!(bs.diagonal_map(), (true, true));
    }

    #[test]
    fn free_morphism_to_itself_is_identity() {
        let k = direct_product(&z(3), &z(3)).unwrap();
        let u = u_group(&boxed_square(&k).unwrap()).unwrap();
        let fm = free_morphism_to(&u, &u.extension, &GroupMap::identity(&k)).unwrap();
        assert!(fm.lambda.values().iter().enumerate().all(|(i, &v)| i == v));
        assert!(fm.mu.values().iter().enumerate().all(|(i, &v)| i == v));
    }

    #[test]
    fn free_morphism_to_e27() {
        let k = direct_product(&z(3), &z(3)).unwrap();
        let u = u_group(&boxed_square(&k).unwrap()).unwrap();
        let g = extraspecial27(3).unwrap();
        let e = ExtensionRecord::from_normal_subgroup(&g, &g.center()).unwrap();
        let t = crate::morphism::find_gyro_splitting(&e).unwrap().section.unwrap();
        let e = e.with_section(t).unwrap();
        // Identify K with the quotient through the generator images.
        let nu = crate::group::isomorphism_search(&k, e.k()).0.unwrap();
        let fm = free_morphism_to(&u, &e, &nu).unwrap();
        assert!(fm.mu.is_bijective());
    }

    #[test]
    fn free_morphism_to_split_target_has_zero_lambda() {
        let k = z(4);
        let u = u_group(&boxed_square(&k).unwrap()).unwrap();
        let g = direct_product(&z(2), &k).unwrap();
        let e = ExtensionRecord::from_normal_subgroup(&g, &[0, 4]).unwrap();
        let e = e.clone().with_section(e.find_group_splitting().unwrap()).unwrap();
        let nu = isomorphism_search(&k, e.k()).0.unwrap();
        let fm = free_morphism_to(&u, &e, &nu).unwrap();
        assert!(fm.lambda.values().iter().all(|&v| v == 0));
    }

    #[test]
    fn schur_consistency() {
        for k in [z(1), z(2), z(3), direct_product(&z(3), &z(3)).unwrap(), symmetric(3).unwrap()] {
            let r = gyro_schur_multiplier(&k).unwrap();
            assert!(r.consistent, "{r:?}");
        }
        let r = gyro_schur_multiplier(&direct_product(&z(3), &z(3)).unwrap()).unwrap();
        assert_eq!(r.multiplier_invariants, vec![3]);
    }
}
