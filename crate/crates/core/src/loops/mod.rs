//! Right loops and the structures built from a group's multiplication.

mod construct;
mod gyro;
mod small;
mod transversal;

pub use construct::{circ_n, lambda_loop, trivial_relations_witness, LambdaLoop};
pub use gyro::{loop_property_candidates, GyroReport, LoopProperty, Torsion};
pub use small::{canonical_form, find_small_loop};
pub use transversal::{is_gyro_transversal, TransversalReport};

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation};
use crate::search::Magma;

/// Inner maps are cached as a full `(y, z)` table up to this order.
pub const INNER_TABLE_CAP: usize = 128;

/// A finite right loop with identity at index 0.
///
/// `x∘a = b` has exactly one solution `x` for every `a, b`.
#[derive(Clone)]
pub struct RightLoopTable {
    inner: Arc<Data>,
}

struct Data {
    n: usize,
    labels: Vec<String>,
    op: Vec<u16>,
    /// `rdiv[a·n + b]` solves `x∘a = b`.
    rdiv: Vec<u16>,
    left_inv: Vec<u16>,
    inner_maps: OnceLock<Vec<u16>>,
}

impl fmt::Debug for RightLoopTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RightLoopTable(order {})", self.inner.n)
    }
}

impl PartialEq for RightLoopTable {
    fn eq(&self, other: &Self) -> bool {
        self.inner.op == other.inner.op
    }
}

impl Eq for RightLoopTable {}

impl Magma for RightLoopTable {
    fn size(&self) -> usize {
        self.order()
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.op(a, b)
    }
}

impl RightLoopTable {
    /// Validates the right-loop law. The identity is moved to index 0.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || labels.len() != n {
            return Err(Error::MalformedTable(format!("{} labels for {n} rows", labels.len())));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::MalformedTable(format!("row {i} is malformed")));
            }
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotRightLoop("no two-sided identity".into()))?;
        let order: Vec<usize> = std::iter::once(id).chain((0..n).filter(|&x| x != id)).collect();
        let mut pos = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let labels = order.iter().map(|&x| labels[x].clone()).collect();
        Self::from_fn(labels, |a, b| pos[table[order[a]][order[b]]])
    }

    /// Builds from an operation with identity 0, checking the right-loop law.
    pub fn from_fn(labels: Vec<String>, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 || n > u16::MAX as usize {
            return Err(Error::MalformedTable(format!("order {n} out of range")));
        }
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let v = op(a, b);
                if v >= n {
                    return Err(Error::MalformedTable(format!("entry ({a},{b}) out of range")));
                }
                table[a * n + b] = v as u16;
            }
        }
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(Error::NotRightLoop("index 0 is not a two-sided identity".into()));
            }
        }
        let mut rdiv = vec![u16::MAX; n * n];
        for a in 0..n {
            for x in 0..n {
                let b = table[x * n + a] as usize;
                if rdiv[a * n + b] != u16::MAX {
                    return Err(Error::NotRightLoop(format!(
                        "x∘{a} = {b} has two solutions"
                    )));
                }
                rdiv[a * n + b] = x as u16;
            }
        }
        let left_inv = (0..n).map(|x| rdiv[x * n]).collect();
        Ok(RightLoopTable {
            inner: Arc::new(Data {
                n,
                labels,
                op: table,
                rdiv,
                left_inv,
                inner_maps: OnceLock::new(),
            }),
        })
    }

    /// The group itself as a right loop.
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self::from_fn(g.labels().to_vec(), |a, b| g.mul(a, b)).expect("a group is a right loop")
    }

    pub fn order(&self) -> usize {
        self.inner.n
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.inner.labels[x]
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.inner.op[a * self.inner.n + b] as usize
    }

    /// The unique `x` with `x∘a = b`.
    #[inline]
    pub fn rdiv(&self, a: usize, b: usize) -> usize {
        self.inner.rdiv[a * self.inner.n + b] as usize
    }

    /// `x′` with `x′∘x = e`.
    pub fn left_inv(&self, x: usize) -> usize {
        self.inner.left_inv[x] as usize
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|a| (0..self.order()).map(|b| self.op(a, b)).collect())
            .collect()
    }

    /// `x^k` with `x^0 = e` and `x^k = x^(k-1)∘x`.
    pub fn power(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.op(acc, x))
    }

    /// Least `k ≥ 1` with `x^k = e`.
    pub fn power_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != 0 {
            p = self.op(p, x);
            k += 1;
            if k > self.order() + 1 {
                return 0;
            }
        }
        k
    }

    /// The inner mapping `f(y, z)`: `(x∘y)∘z = f(y,z)(x) ∘ (y∘z)`.
    pub fn inner_map(&self, y: usize, z: usize) -> Vec<usize> {
        let n = self.order();
        if let Some(t) = self.inner_table() {
            let base = (y * n + z) * n;
            return t[base..base + n].iter().map(|&v| v as usize).collect();
        }
        self.compute_inner(y, z)
    }

    /// `f(y, z)(x)` without materializing the whole map.
    pub fn inner_apply(&self, y: usize, z: usize, x: usize) -> usize {
        let n = self.order();
        match self.inner_table() {
            Some(t) => t[(y * n + z) * n + x] as usize,
            None => self.rdiv(self.op(y, z), self.op(self.op(x, y), z)),
        }
    }

    fn compute_inner(&self, y: usize, z: usize) -> Vec<usize> {
        let yz = self.op(y, z);
        (0..self.order())
            .map(|x| self.rdiv(yz, self.op(self.op(x, y), z)))
            .collect()
    }

    fn inner_table(&self) -> Option<&[u16]> {
        let n = self.order();
        if n > INNER_TABLE_CAP {
            return None;
        }
        Some(self.inner.inner_maps.get_or_init(|| {
            let mut t = Vec::with_capacity(n * n * n);
            for y in 0..n {
                for z in 0..n {
                    t.extend(self.compute_inner(y, z).into_iter().map(|v| v as u16));
                }
            }
            t
        }))
    }

    /// `R_y : x ↦ x∘y`.
    pub fn right_mult(&self, y: usize) -> Permutation {
        Permutation::from_images((0..self.order()).map(|x| self.op(x, y)).collect())
            .expect("columns of a right loop are permutations")
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// The loop as a group, when it is associative.
    pub fn as_group(&self) -> Option<FiniteGroup> {
        if !self.is_associative() {
            return None;
        }
        Some(FiniteGroup::from_fn_unchecked("", self.labels().to_vec(), |a, b| self.op(a, b)))
    }

    /// Closure of `seed ∪ {e}` under `∘`, sorted. In a finite right loop this
    /// is also closed under right division.
    pub fn subloop_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mark = crate::search::closure(self, seed);
        (0..self.order()).filter(|&x| mark[x]).collect()
    }

    /// Whether `subset` contains `e` and is closed under `∘` and left inverses.
    pub fn is_subloop(&self, subset: &[usize]) -> bool {
        let mut mark = vec![false; self.order()];
        for &x in subset {
            mark[x] = true;
        }
        mark[0]
            && subset.iter().all(|&x| mark[self.left_inv(x)])
            && subset
                .iter()
                .all(|&a| subset.iter().all(|&b| mark[self.op(a, b)]))
    }

    /// Sub right loop on `subset` as a loop of its own.
    pub fn restrict(&self, subset: &[usize]) -> Result<RightLoopTable> {
        let mut elems = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !self.is_subloop(&elems) {
            return Err(Error::NotSubloop(format!("{} elements given", elems.len())));
        }
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let labels = elems.iter().map(|&x| self.label(x).to_string()).collect();
        Self::from_fn(labels, |a, b| pos[self.op(elems[a], elems[b])])
    }

    /// Stable byte encoding of the table, for digests.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = (self.order() as u32).to_le_bytes().to_vec();
        for &x in &self.inner.op {
            out.extend_from_slice(&x.to_le_bytes());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn group_as_loop_has_trivial_inner_maps() {
        let g = cyclic(6).unwrap();
        let s = RightLoopTable::from_group(&g);
        for y in 0..6 {
            for z in 0..6 {
                assert_eq!(s.inner_map(y, z), (0..6).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn non_loop_tables_are_rejected() {
        let labels: Vec<String> = vec!["e".into(), "a".into()];
        let r = RightLoopTable::from_table(labels, vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(r, Err(Error::NotRightLoop(_))));
    }

    #[test]
    fn inner_map_defining_equation_holds_above_table_cap() {
        let g = heisenberg_mod_p(5).unwrap();
        let s = circ_n(&g, 1);
        for (y, z) in [(3, 7), (17, 101), (124, 55)] {
            let f = s.inner_map(y, z);
            for x in 0..s.order() {
                assert_eq!(s.op(s.op(x, y), z), s.op(f[x], s.op(y, z)));
            }
        }
    }
}
