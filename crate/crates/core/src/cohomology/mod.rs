//! Cocycles, coboundaries and their gyro counterparts for abelian kernels.
//!
//! `H` is fixed in coordinates `Z/d₁ × … × Z/d_r`. A normalized `k`-cochain
//! `K^k → H` is a vector in `Z^{(|K|-1)^k · r}` and every group of cochains is
//! a [`Lattice`] containing the zero lattice `⊕ d_j·Z`. Constraints are linear
//! sums of terms `±σ_s f(x₁, …, x_k)`; the same expression drives lattice
//! restriction and pointwise evaluation.

mod crossed;
mod delta;
mod extension;
mod obstruction;

pub use crossed::{gyro_crossed_homs, CrossedReport, GyroCrossedHom, SequenceReport};
pub use delta::{connecting_delta, hom_set, prop64_check, ConnectingDelta, FundamentalSequence, Prop64Report};
pub use extension::{
    classify_gext, extension_from_factor_system, extension_types, FactorExtension, GextClass, TypeCount,
};
pub use obstruction::{obstruction_realizable, AutData, GyroLifting, ObstructionReport, OuterAction};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{AbelianDecomposition, FiniteGroup, GroupMap};
use crate::linalg::{Lattice, Quotient};

/// Largest cochain dimension `(|K|-1)^k · r` handled by the lattice code.
pub const COCHAIN_DIM_CAP: usize = 4096;

/// An abelian group `H` with a left action `σ : K → Aut(H)`.
#[derive(Clone, Debug)]
pub struct AbstractKernel {
    k: FiniteGroup,
    h: AbelianDecomposition,
    sigma: Vec<GroupMap>,
    /// `mats[x][j][i]`: coordinate `j` of `σ_x` applied to generator `i`.
    mats: Vec<Vec<Vec<i64>>>,
}

impl AbstractKernel {
    /// Checks that every `σ_x` is an automorphism, `σ_e = 1` and `σ_{xy} = σ_x σ_y`.
    pub fn new(k: &FiniteGroup, h: &FiniteGroup, sigma: Vec<GroupMap>) -> Result<Self> {
        let dec = AbelianDecomposition::new(h)?;
        if sigma.len() != k.order() {
            return Err(Error::InvalidMap(format!("{} automorphisms for |K| = {}", sigma.len(), k.order())));
        }
        for (x, s) in sigma.iter().enumerate() {
            if s.domain() != h || s.codomain() != h || !s.is_homomorphism() || !s.is_bijective() {
                return Err(Error::InvalidMap(format!("sigma({}) is not an automorphism", k.label(x))));
            }
        }
        if sigma[0] != GroupMap::identity(h) {
            return Err(Error::InvalidMap("sigma(e) is not the identity".into()));
        }
        for x in k.elements() {
            for y in k.elements() {
                let xy = k.mul(x, y);
                if let Some(a) = h.elements().find(|&a| sigma[xy].apply(a) != sigma[x].apply(sigma[y].apply(a))) {
                    return Err(Error::InvalidMap(format!(
                        "sigma is not a homomorphism at ({}, {}) on {}",
                        k.label(x),
                        k.label(y),
                        h.label(a)
                    )));
                }
            }
        }
        let r = dec.invariants().len();
        let mats = sigma
            .iter()
            .map(|s| {
                let images: Vec<&[i64]> = (0..r).map(|i| dec.coords(s.apply(dec.generator(i)))).collect();
                (0..r).map(|j| (0..r).map(|i| images[i][j]).collect()).collect()
            })
            .collect();
        Ok(AbstractKernel {
            k: k.clone(),
            h: dec,
            sigma,
            mats,
        })
    }

    pub fn trivial(k: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        Self::new(k, h, vec![GroupMap::identity(h); k.order()])
    }

    /// Builds `σ` from `act(x, a) = σ_x(a)`.
    pub fn from_action(k: &FiniteGroup, h: &FiniteGroup, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let sigma = k
            .elements()
            .map(|x| GroupMap::from_fn(h, h, |a| act(x, a)))
            .collect::<Result<_>>()?;
        Self::new(k, h, sigma)
    }

    pub fn k(&self) -> &FiniteGroup {
        &self.k
    }

    pub fn h(&self) -> &FiniteGroup {
        self.h.group()
    }

    pub fn decomposition(&self) -> &AbelianDecomposition {
        &self.h
    }

    pub fn sigma(&self, x: usize) -> &GroupMap {
        &self.sigma[x]
    }

    /// Invariant factors `d₁ | … | d_r` of `H`.
    pub fn moduli(&self) -> &[i64] {
        self.h.invariants()
    }

    /// `exp(H)`, or 1 for trivial `H`.
    pub fn exponent(&self) -> i64 {
        self.moduli().last().copied().unwrap_or(1)
    }

    pub fn is_trivial_action(&self) -> bool {
        self.sigma.iter().all(|s| s.values().iter().enumerate().all(|(a, &b)| a == b))
    }

    /// `A = {h : σ_x(h) = h for all x}`.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.h()
            .elements()
            .filter(|&a| self.sigma.iter().all(|s| s.apply(a) == a))
            .collect()
    }

    /// `σ_x` on coordinates.
    pub fn act(&self, x: usize, v: &[i64]) -> Vec<i64> {
        let m = &self.mats[x];
        self.moduli()
            .iter()
            .enumerate()
            .map(|(j, d)| m[j].iter().zip(v).map(|(c, a)| c * a).sum::<i64>().rem_euclid(*d))
            .collect()
    }

    fn reduce(&self, v: &mut [i64]) {
        for (a, d) in v.iter_mut().zip(self.moduli()) {
            *a = a.rem_euclid(*d);
        }
    }
}

/// `±σ_act f(args)`; arguments equal to `e` make the term vanish.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Term<const A: usize> {
    pub args: [usize; A],
    pub act: usize,
    pub sign: i64,
}

pub(crate) fn term<const A: usize>(args: [usize; A], act: usize, sign: i64) -> Term<A> {
    Term { args, act, sign }
}

/// Normalized `A`-cochains `K^A → H` as coordinate vectors.
#[derive(Clone, Debug)]
pub(crate) struct Layout<const A: usize> {
    n: usize,
    moduli: Vec<i64>,
    modulus: i64,
}

impl<const A: usize> Layout<A> {
    pub fn new(kernel: &AbstractKernel) -> Result<Self> {
        let n = kernel.k().order();
        let l = Layout {
            n,
            moduli: kernel.moduli().to_vec(),
            modulus: kernel.exponent(),
        };
        if l.dim() > COCHAIN_DIM_CAP {
            return Err(Error::CapExceeded { cap: COCHAIN_DIM_CAP });
        }
        Ok(l)
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn blocks(&self) -> usize {
        (self.n - 1).pow(A as u32)
    }

    pub fn dim(&self) -> usize {
        self.blocks() * self.rank()
    }

    /// Block index of `f(args)`, or `None` when some argument is `e`.
    pub fn block(&self, args: &[usize; A]) -> Option<usize> {
        let mut b = 0;
        for &x in args {
            if x == 0 {
                return None;
            }
            b = b * (self.n - 1) + (x - 1);
        }
        Some(b)
    }

    pub fn args(&self, mut b: usize) -> [usize; A] {
        let mut out = [0; A];
        for slot in out.iter_mut().rev() {
            *slot = b % (self.n - 1) + 1;
            b /= self.n - 1;
        }
        out
    }

    /// Tuples with no identity entry, in block order.
    pub fn tuples(&self) -> impl Iterator<Item = [usize; A]> + '_ {
        (0..self.blocks()).map(|b| self.args(b))
    }

    pub fn zero(&self) -> Lattice<i64> {
        let r = self.rank();
        let rows = (0..self.dim()).map(|c| {
            let mut v = vec![0; self.dim()];
            v[c] = self.moduli[c % r];
            v
        });
        Lattice::from_generators(self.dim(), self.modulus, rows)
    }

    pub fn whole(&self) -> Lattice<i64> {
        Lattice::whole(self.dim(), self.modulus)
    }

    /// Restricts `lat` to cochains on which `expr` vanishes.
    pub fn restrict(&self, kernel: &AbstractKernel, lat: &mut Lattice<i64>, expr: &[Term<A>]) {
        let r = self.rank();
        for (j, d) in self.moduli.iter().enumerate() {
            let mut f: Vec<(usize, i64)> = Vec::new();
            for t in expr {
                let Some(b) = self.block(&t.args) else { continue };
                for i in 0..r {
                    f.push((b * r + i, t.sign * kernel.mats[t.act][j][i]));
                }
            }
            f.sort_unstable_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(f.len());
            for (c, v) in f {
                match merged.last_mut() {
                    Some((c2, acc)) if *c2 == c => *acc += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| v.rem_euclid(*d) != 0);
            if !merged.is_empty() {
                lat.restrict(&merged, d);
            }
        }
    }

    /// Value of `expr` on the cochain `v`.
    pub fn eval(&self, kernel: &AbstractKernel, v: &[i64], expr: &[Term<A>]) -> Vec<i64> {
        let r = self.rank();
        let mut out = vec![0i64; r];
        for t in expr {
            let Some(b) = self.block(&t.args) else { continue };
            let img = kernel.act(t.act, &v[b * r..(b + 1) * r]);
            for (o, x) in out.iter_mut().zip(img) {
                *o += t.sign * x;
            }
        }
        kernel.reduce(&mut out);
        out
    }

    pub fn reduce(&self, v: &mut [i64]) {
        let r = self.rank();
        for (c, a) in v.iter_mut().enumerate() {
            *a = a.rem_euclid(self.moduli[c % r]);
        }
    }
}

/// Rewrites an expression in `f` as one in `g` under `f = ∂g`.
pub(crate) fn substitute_coboundary_2(k: &FiniteGroup, expr: &[Term<2>]) -> Vec<Term<1>> {
    expr.iter()
        .flat_map(|t| {
            let [a, b] = t.args;
            [
                term([b], k.mul(t.act, a), t.sign),
                term([k.mul(a, b)], t.act, -t.sign),
                term([a], t.act, t.sign),
            ]
        })
        .collect()
}

/// `(∂g)(a, b) = σ_a g(b) − g(ab) + g(a)`.
pub(crate) fn coboundary_1(k: &FiniteGroup, a: usize, b: usize) -> [Term<1>; 3] {
    [term([b], a, 1), term([k.mul(a, b)], 0, -1), term([a], 0, 1)]
}

/// `(∂f)(x, y, z) = σ_x f(y,z) − f(xy,z) + f(x,yz) − f(x,y)`.
pub(crate) fn coboundary_2(k: &FiniteGroup, x: usize, y: usize, z: usize) -> [Term<2>; 4] {
    [
        term([y, z], x, 1),
        term([k.mul(x, y), z], 0, -1),
        term([x, k.mul(y, z)], 0, 1),
        term([x, y], 0, -1),
    ]
}

/// The two gyro conditions at `(x, y)`:
/// `f(y⁻¹, x) + f(y⁻¹x, y²)` and `σ_{y⁻¹} f(x, y²) + f(y⁻¹, xy²)`.
pub(crate) fn gyro_conditions(k: &FiniteGroup, x: usize, y: usize) -> [[Term<2>; 2]; 2] {
    let yi = k.inv(y);
    let y2 = k.mul(y, y);
    [
        [term([yi, x], 0, 1), term([k.mul(yi, x), y2], 0, 1)],
        [term([x, y2], yi, 1), term([yi, k.mul(x, y2)], 0, 1)],
    ]
}

fn pairs(k: &FiniteGroup) -> impl Iterator<Item = (usize, usize)> + '_ {
    k.elements().flat_map(move |x| k.elements().map(move |y| (x, y)))
}

/// A 2-cochain `K × K → H` stored as element indices of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cochain2 {
    n: usize,
    values: Vec<usize>,
}

impl Cochain2 {
    pub fn zero(n: usize) -> Self {
        Cochain2 { n, values: vec![0; n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        Cochain2 {
            n,
            values: (0..n * n).map(|i| f(i / n, i % n)).collect(),
        }
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.values[x * self.n + y]
    }

    /// Row-major `|K|×|K|` table.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `f(e, y) = f(x, e) = 0`.
    pub fn is_normalized(&self) -> bool {
        (0..self.n).all(|x| self.get(0, x) == 0 && self.get(x, 0) == 0)
    }
}

/// `Z², B², GZ², GB²` as lattices of normalized cochains, with `H²` and `GH²`.
#[derive(Clone, Debug)]
pub struct CocycleSpaces {
    kernel: AbstractKernel,
    layout: Layout<2>,
    zero: Lattice<i64>,
    pub z2: Lattice<i64>,
    pub b2: Lattice<i64>,
    pub gz2: Lattice<i64>,
    pub gb2: Lattice<i64>,
    h2: Quotient<i64>,
    gh2: Quotient<i64>,
    split_classes: Lattice<i64>,
}

/// Serializable summary of [`CocycleSpaces`].
#[derive(Clone, Debug, Serialize)]
pub struct CohomologySummary {
    pub k: String,
    pub h: String,
    pub moduli: Vec<i64>,
    pub trivial_action: bool,
    pub normalized_cochains: bool,
    pub cochain_dimension: usize,
    pub z2_order: String,
    pub b2_order: String,
    pub gz2_order: String,
    pub gb2_order: String,
    pub h2_invariants: Vec<i64>,
    pub gh2_invariants: Vec<i64>,
    /// Generators of `GH²` as row-major `|K|×|K|` tables of `H` labels.
    pub gh2_generators: Vec<Vec<String>>,
}

impl CocycleSpaces {
    pub fn new(kernel: &AbstractKernel) -> Result<Self> {
        let k = kernel.k();
        let layout = Layout::<2>::new(kernel)?;
        let one = Layout::<1>::new(kernel)?;
        let zero = layout.zero();

        let mut z2 = layout.whole();
        for x in 1..k.order() {
            for y in 1..k.order() {
                for z in 1..k.order() {
                    layout.restrict(kernel, &mut z2, &coboundary_2(k, x, y, z));
                }
            }
        }
        let mut gz2 = z2.clone();
        for (x, y) in pairs(k) {
            for c in gyro_conditions(k, x, y) {
                layout.restrict(kernel, &mut gz2, &c);
            }
        }

        let image = |l: &Lattice<i64>| -> Lattice<i64> {
            let rows = l.rows().iter().map(|g| layout_coboundary(kernel, &layout, &one, g));
            Lattice::from_generators(layout.dim(), layout.modulus, rows.chain(zero.rows().iter().cloned()))
        };
        let b2 = image(&one.whole());
        // GB² = ∂{g : ∂g satisfies the gyro conditions}.
        let mut gyro_g = one.whole();
        for (x, y) in pairs(k) {
            for c in gyro_conditions(k, x, y) {
                one.restrict(kernel, &mut gyro_g, &substitute_coboundary_2(k, &c));
            }
        }
        let gb2 = image(&gyro_g);

        for (name, big, small) in [("B2 ⊆ Z2", &z2, &b2), ("GZ2 ⊆ Z2", &z2, &gz2), ("GB2 ⊆ GZ2", &gz2, &gb2)] {
            if !big.contains_lattice(small) {
                return Err(Error::RelationViolation(format!("{name} fails")));
            }
        }
        let h2 = z2.quotient(&b2).map_err(|_| Error::RelationViolation("B2 ⊄ Z2".into()))?;
        let gh2 = gz2.quotient(&gb2).map_err(|_| Error::RelationViolation("GB2 ⊄ GZ2".into()))?;
        let split_classes = gz2.sum(&b2);
        Ok(CocycleSpaces {
            kernel: kernel.clone(),
            layout,
            zero,
            z2,
            b2,
            gz2,
            gb2,
            h2,
            gh2,
            split_classes,
        })
    }

    pub fn kernel(&self) -> &AbstractKernel {
        &self.kernel
    }

    pub fn h2_invariants(&self) -> &[i64] {
        &self.h2.invariants
    }

    pub fn gh2_invariants(&self) -> &[i64] {
        &self.gh2.invariants
    }

    pub fn h2_order(&self) -> BigUint {
        self.h2.order()
    }

    pub fn gh2_order(&self) -> BigUint {
        self.gh2.order()
    }

    /// `|L / zero|` for one of the four cochain lattices.
    pub fn order_of(&self, l: &Lattice<i64>) -> BigUint {
        l.quotient(&self.zero).expect("every space contains the zero lattice").order()
    }

    pub fn to_vector(&self, f: &Cochain2) -> Vec<i64> {
        cochain_vector(&self.kernel, &self.layout, f)
    }

    pub fn from_vector(&self, v: &[i64]) -> Cochain2 {
        let r = self.layout.rank();
        let dec = self.kernel.decomposition();
        let l = &self.layout;
        Cochain2::from_fn(self.kernel.k().order(), |x, y| match l.block(&[x, y]) {
            Some(b) => dec.element(&v[b * r..(b + 1) * r]),
            None => 0,
        })
    }

    pub fn cocycle_witness(&self, f: &Cochain2) -> Option<(usize, usize, usize)> {
        cocycle_witness(&self.kernel, f)
    }

    pub fn gyro_witness(&self, f: &Cochain2) -> Option<(usize, usize)> {
        gyro_witness(&self.kernel, f)
    }

    pub fn is_cocycle(&self, f: &Cochain2) -> bool {
        self.cocycle_witness(f).is_none()
    }

    pub fn is_gyro_cocycle(&self, f: &Cochain2) -> bool {
        self.is_cocycle(f) && self.gyro_witness(f).is_none()
    }

    /// Class of a gyro-cocycle in `GH²`.
    pub fn gh2_class(&self, f: &Cochain2) -> Option<Vec<i64>> {
        self.gh2.coordinates(&self.to_vector(f))
    }

    /// Class of a cocycle in `H²`.
    pub fn h2_class(&self, f: &Cochain2) -> Option<Vec<i64>> {
        self.h2.coordinates(&self.to_vector(f))
    }

    /// Representative gyro-cocycle of the `GH²` element with these coordinates.
    pub fn gh2_element(&self, coords: &[i64]) -> Cochain2 {
        self.from_vector(&self.gh2.element(coords))
    }

    pub fn h2_element(&self, coords: &[i64]) -> Cochain2 {
        self.from_vector(&self.h2.element(coords))
    }

    pub fn gh2_elements(&self) -> Vec<Vec<i64>> {
        self.gh2.enumerate()
    }

    pub fn h2_elements(&self) -> Vec<Vec<i64>> {
        self.h2.enumerate()
    }

    /// Whether the cocycle `f` is cohomologous to a gyro-cocycle, i.e. the
    /// extension it defines admits a gyro-homomorphic section.
    pub fn is_gyro_split_class(&self, f: &Cochain2) -> bool {
        self.split_classes.contains(&self.to_vector(f))
    }

    /// Cohomologous cocycles define equivalent extensions.
    pub fn equivalent(&self, f: &Cochain2, g: &Cochain2) -> bool {
        let d = self.sub_vectors(&self.to_vector(f), &self.to_vector(g));
        self.b2.contains(&d)
    }

    /// Pointwise sum; on classes this is the Baer sum.
    pub fn add(&self, f: &Cochain2, g: &Cochain2) -> Cochain2 {
        let mut v: Vec<i64> = self.to_vector(f).iter().zip(self.to_vector(g)).map(|(a, b)| a + b).collect();
        self.layout.reduce(&mut v);
        self.from_vector(&v)
    }

    fn sub_vectors(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.layout.reduce(&mut v);
        v
    }

    /// `∂g` for a normalized 1-cochain `g : K → H` given by element indices.
    pub fn coboundary(&self, g: &[usize]) -> Cochain2 {
        let k = self.kernel.k();
        let h = self.kernel.h();
        let s = &self.kernel;
        Cochain2::from_fn(k.order(), |a, b| {
            h.mul(h.mul(s.sigma(a).apply(g[b]), h.inv(g[k.mul(a, b)])), g[a])
        })
    }

    /// Nonzero basis rows of `Z²`, which span it modulo the zero lattice.
    pub fn z2_spanning_set(&self) -> Vec<Cochain2> {
        self.z2
            .rows()
            .iter()
            .filter(|row| !self.zero.contains(row))
            .map(|row| self.from_vector(row))
            .collect()
    }

    pub fn summary(&self) -> CohomologySummary {
        let h = self.kernel.h();
        CohomologySummary {
            k: self.kernel.k().name().to_string(),
            h: h.name().to_string(),
            moduli: self.kernel.moduli().to_vec(),
            trivial_action: self.kernel.is_trivial_action(),
            normalized_cochains: true,
            cochain_dimension: self.layout.dim(),
            z2_order: self.order_of(&self.z2).to_string(),
            b2_order: self.order_of(&self.b2).to_string(),
            gz2_order: self.order_of(&self.gz2).to_string(),
            gb2_order: self.order_of(&self.gb2).to_string(),
            h2_invariants: self.h2_invariants().to_vec(),
            gh2_invariants: self.gh2_invariants().to_vec(),
            gh2_generators: self
                .gh2
                .generators
                .iter()
                .map(|v| self.from_vector(v).values().iter().map(|&a| h.label(a).to_string()).collect())
                .collect(),
        }
    }
}

fn cochain_vector(kernel: &AbstractKernel, layout: &Layout<2>, f: &Cochain2) -> Vec<i64> {
    let r = layout.rank();
    let dec = kernel.decomposition();
    let mut v = vec![0; layout.dim()];
    for (b, [x, y]) in layout.tuples().enumerate() {
        v[b * r..(b + 1) * r].copy_from_slice(dec.coords(f.get(x, y)));
    }
    v
}

/// First `(x, y, z)` where the cocycle identity fails; `(0, 0, 0)` if `f` is
/// not normalized.
pub fn cocycle_witness(kernel: &AbstractKernel, f: &Cochain2) -> Option<(usize, usize, usize)> {
    if !f.is_normalized() {
        return Some((0, 0, 0));
    }
    let k = kernel.k();
    let layout = Layout::<2>::new(kernel).ok()?;
    let v = cochain_vector(kernel, &layout, f);
    let n = k.order();
    (1..n)
        .flat_map(|x| (1..n).flat_map(move |y| (1..n).map(move |z| (x, y, z))))
        .find(|&(x, y, z)| layout.eval(kernel, &v, &coboundary_2(k, x, y, z)).iter().any(|&c| c != 0))
}

/// First `(x, y)` where a gyro condition fails.
pub fn gyro_witness(kernel: &AbstractKernel, f: &Cochain2) -> Option<(usize, usize)> {
    let k = kernel.k();
    let layout = Layout::<2>::new(kernel).ok()?;
    let v = cochain_vector(kernel, &layout, f);
    pairs(k).find(|&(x, y)| {
        gyro_conditions(k, x, y)
            .iter()
            .any(|c| layout.eval(kernel, &v, c).iter().any(|&a| a != 0))
    })
}

fn layout_coboundary(kernel: &AbstractKernel, two: &Layout<2>, one: &Layout<1>, g: &[i64]) -> Vec<i64> {
    let k = kernel.k();
    let r = two.rank();
    let mut out = vec![0; two.dim()];
    for (b, [x, y]) in two.tuples().enumerate() {
        out[b * r..(b + 1) * r].copy_from_slice(&one.eval(kernel, g, &coboundary_1(k, x, y)));
    }
    out
}

/// `GH²(K, H)` and friends for the kernel.
pub fn cocycle_spaces(kernel: &AbstractKernel) -> Result<CocycleSpaces> {
    CocycleSpaces::new(kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    fn z(n: usize) -> FiniteGroup {
        cyclic(n).unwrap()
    }

    fn spaces(k: &FiniteGroup, h: &FiniteGroup) -> CocycleSpaces {
        cocycle_spaces(&AbstractKernel::trivial(k, h).unwrap()).unwrap()
    }

    #[test]
    fn z2_over_z2() {
        let s = spaces(&z(2), &z(2));
        assert_eq!(s.h2_invariants(), &[2]);
        assert!(s.gh2_invariants().is_empty());
    }

    #[test]
    fn trivial_coefficients() {
        let s = spaces(&symmetric(3).unwrap(), &z(1));
        assert!(s.h2_invariants().is_empty());
        assert!(s.gh2_invariants().is_empty());
        let t = spaces(&z(1), &z(3));
        assert!(t.h2_invariants().is_empty());
    }

    #[test]
    fn z3_squared_over_z3() {
        let k = direct_product(&z(3), &z(3)).unwrap();
        let s = spaces(&k, &z(3));
        assert_eq!(s.h2_invariants(), &[3, 3, 3]);
        assert_eq!(s.gh2_invariants(), &[3]);
    }

    #[test]
    fn known_h2_values() {
        // Schur multipliers: H²(K, Z_m) for trivial action, by universal coefficients.
        let v4 = direct_product(&z(2), &z(2)).unwrap();
        assert_eq!(spaces(&v4, &z(2)).h2_order(), BigUint::from(8u8));
        assert_eq!(spaces(&z(4), &z(2)).h2_order(), BigUint::from(2u8));
        assert_eq!(spaces(&symmetric(3).unwrap(), &z(6)).h2_order(), BigUint::from(2u8));
        assert_eq!(spaces(&quaternion8(), &z(4)).h2_order(), BigUint::from(4u8));
    }

    #[test]
    fn nontrivial_action_on_z3() {
        // Z2 acting on Z3 by inversion: H² vanishes (coprime orders).
        let k = z(2);
        let h = z(3);
        let kernel = AbstractKernel::from_action(&k, &h, |x, a| if x == 0 { a } else { h.inv(a) }).unwrap();
        let s = cocycle_spaces(&kernel).unwrap();
        assert!(s.h2_invariants().is_empty());
        assert_eq!(kernel.fixed_points(), vec![0]);
    }

    #[test]
    fn bad_action_is_rejected() {
        let k = z(3);
        let h = z(3);
        let r = AbstractKernel::from_action(&k, &h, |x, a| if x == 0 { a } else { h.inv(a) });
        assert!(matches!(r, Err(Error::InvalidMap(_))));
    }

    #[test]
    fn vector_roundtrip_and_direct_checks_agree() {
        let k = direct_product(&z(3), &z(3)).unwrap();
        let s = spaces(&k, &z(3));
        for f in s.z2_spanning_set() {
            assert_eq!(s.from_vector(&s.to_vector(&f)), f);
            assert!(s.is_cocycle(&f));
            assert_eq!(s.gz2.contains(&s.to_vector(&f)), s.is_gyro_cocycle(&f));
        }
        let bad = Cochain2::from_fn(9, |x, y| usize::from(x == 1 && y == 2));
        assert!(!s.is_cocycle(&bad));
    }

    #[test]
    fn coboundaries_are_trivial_classes() {
        let k = symmetric(3).unwrap();
        let s = spaces(&k, &z(6));
        let g: Vec<usize> = k.elements().map(|x| (x * 5) % 6).collect();
        let f = s.coboundary(&g);
        assert!(s.is_cocycle(&f));
        assert_eq!(s.h2_class(&f), Some(vec![0; s.h2_invariants().len()]));
        assert!(s.equivalent(&f, &Cochain2::zero(6)));
    }
}
