//! Finite groups stored as dense multiplication tables.

mod abelian;
mod builders;
mod extension;
mod invariants;
mod iso;
mod map;
mod perm;

pub use abelian::{abelian_invariants, AbelianDecomposition};
pub use builders::*;
pub use extension::ExtensionRecord;
pub use invariants::GroupInvariants;
pub use iso::isomorphism_search;
pub use map::GroupMap;
pub use perm::Permutation;

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest order accepted by operations that validate a full table.
pub const TABLE_CAP: usize = 512;
/// Largest order produced by permutation closure.
pub const PERM_CAP: usize = 4096;

/// A finite group with identity at index 0.
///
/// Cheap to clone; the table is shared.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Data>,
}

struct Data {
    name: String,
    labels: Vec<String>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    n: usize,
    orders: OnceLock<Vec<usize>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.mul == other.inner.mul && self.inner.labels == other.inner.labels)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({:?}, order {})", self.inner.name, self.inner.n)
    }
}

impl FiniteGroup {
    /// Validates a Cayley table. The identity is moved to index 0; other
    /// elements keep their relative order.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        if n > TABLE_CAP {
            return Err(Error::OrderCapExceeded { cap: TABLE_CAP });
        }
        if labels.len() != n {
            return Err(Error::MalformedTable(format!("{} labels for {n} rows", labels.len())));
        }
        check_unique(&labels)?;
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!("row {i} has length {}", row.len())));
            }
            if let Some(j) = row.iter().position(|&x| x >= n) {
                return Err(Error::MalformedTable(format!("entry ({i},{j}) out of range")));
            }
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::NoIdentity)?;
        for x in 0..n {
            if !(0..n).any(|y| table[x][y] == id && table[y][x] == id) {
                return Err(Error::NoInverse(x));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let order: Vec<usize> = std::iter::once(id).chain((0..n).filter(|&x| x != id)).collect();
        let mut pos = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let labels = order.iter().map(|&x| labels[x].clone()).collect();
        Ok(Self::from_fn_unchecked("", labels, |a, b| pos[table[order[a]][order[b]]]))
    }

    /// Builds from a product function without validation.
    /// The caller guarantees a group law with identity 0.
    pub(crate) fn from_fn_unchecked(
        name: &str,
        labels: Vec<String>,
        op: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = labels.len();
        assert!(n >= 1 && n <= u16::MAX as usize + 1, "group order out of range");
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(op(a, b) as u16);
            }
        }
        Self::from_mul_unchecked(name, labels, mul)
    }

    pub(crate) fn from_mul_unchecked(name: &str, labels: Vec<String>, mul: Vec<u16>) -> Self {
        let n = labels.len();
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row.iter().position(|&x| x == 0).expect("inverse exists") as u16;
        }
        FiniteGroup {
            inner: Arc::new(Data {
                name: name.to_string(),
                labels,
                mul,
                inv,
                n,
                orders: OnceLock::new(),
            }),
        }
    }

    /// Runs the associativity and inverse checks on an existing table.
    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::NoIdentity);
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return Err(Error::NoInverse(x));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn named(&self, name: &str) -> Self {
        let d = &self.inner;
        FiniteGroup {
            inner: Arc::new(Data {
                name: name.to_string(),
                labels: d.labels.clone(),
                mul: d.mul.clone(),
                inv: d.inv.clone(),
                n: d.n,
                orders: OnceLock::new(),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn order(&self) -> usize {
        self.inner.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.inner.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.inner.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.mul[a * self.inner.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inv[a] as usize
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs() % self.element_order(a) as u64;
        let (mut acc, mut sq) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `b⁻¹ a b`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_orders(&self) -> &[usize] {
        self.inner.orders.get_or_init(|| {
            self.elements()
                .map(|a| {
                    let mut k = 1;
                    let mut x = a;
                    while x != 0 {
                        x = self.mul(x, a);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders()[a]
    }

    pub fn exponent(&self) -> usize {
        self.element_orders()
            .iter()
            .fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&z| self.elements().all(|x| self.commutes(z, x)))
            .collect()
    }

    pub fn centralizer_size(&self, a: usize) -> usize {
        self.elements().filter(|&x| self.commutes(a, x)).count()
    }

    /// Smallest subgroup containing `subset`, sorted.
    pub fn subgroup_closure(&self, subset: &[usize]) -> Vec<usize> {
        let n = self.order();
        let gens: Vec<usize> = subset.iter().copied().filter(|&g| g != 0).collect();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..n).filter(|&x| seen[x]).collect()
    }

    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let mut mark = vec![false; self.order()];
        for &x in subset {
            mark[x] = true;
        }
        mark[0]
            && subset
                .iter()
                .all(|&a| subset.iter().all(|&b| mark[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, subset: &[usize]) -> bool {
        let mut mark = vec![false; self.order()];
        for &x in subset {
            mark[x] = true;
        }
        self.is_subgroup(subset)
            && subset
                .iter()
                .all(|&h| self.elements().all(|g| mark[self.conj(h, g)]))
    }

    /// Subgroup generated by all commutators.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        self.commutator_of(&self.elements().collect::<Vec<_>>(), &self.elements().collect::<Vec<_>>())
    }

    /// `[A, B]` for subsets `A`, `B`.
    pub fn commutator_of(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.comm(x, y))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        self.subgroup_closure(&gens)
    }

    /// `G/N` with cosets ordered by their smallest element, plus the projection.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, GroupMap)> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal(format!("{} elements given", normal.len())));
        }
        let n = self.order();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset[g] != usize::MAX {
                continue;
            }
            for &h in normal {
                coset[self.mul(h, g)] = reps.len();
            }
            reps.push(g);
        }
        let labels = reps.iter().map(|&r| self.label(r).to_string()).collect();
        let q = FiniteGroup::from_fn_unchecked(
            &format!("{}/N", self.name()),
            labels,
            |a, b| coset[self.mul(reps[a], reps[b])],
        );
        let proj = GroupMap::new_unchecked(self.clone(), q.clone(), coset);
        Ok((q, proj))
    }

    /// The subgroup on `subset` as a group of its own, with the inclusion.
    pub fn subgroup(&self, subset: &[usize]) -> Result<(FiniteGroup, GroupMap)> {
        let mut elems = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !self.is_subgroup(&elems) {
            return Err(Error::NotSubgroup(format!("{} elements given", elems.len())));
        }
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let labels = elems.iter().map(|&x| self.label(x).to_string()).collect();
        let s = FiniteGroup::from_fn_unchecked(&format!("sub({})", self.name()), labels, |a, b| {
            pos[self.mul(elems[a], elems[b])]
        });
        let incl = GroupMap::new_unchecked(s.clone(), self.clone(), elems);
        Ok((s, incl))
    }

    /// Stable byte encoding of the table, for digests.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + 2 * self.inner.mul.len());
        out.extend_from_slice(&(self.order() as u32).to_le_bytes());
        for &x in &self.inner.mul {
            out.extend_from_slice(&x.to_le_bytes());
        }
        out
    }

    /// Multiplication table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.elements()
            .map(|a| self.elements().map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

fn check_unique(labels: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::MalformedTable(format!("duplicate label {l:?}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_table() -> (Vec<String>, Vec<Vec<usize>>) {
        let g = symmetric(3).unwrap();
        (g.labels().to_vec(), g.table())
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_table(vec!["e".into()], vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn s3_from_table_has_three_involutions() {
        let (labels, table) = s3_table();
        let g = FiniteGroup::from_table(labels, table).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_orders().iter().filter(|&&o| o == 2).count(), 3);
    }

    #[test]
    fn identity_is_moved_to_front() {
        // Z3 with identity stored last.
        let labels = vec!["a".into(), "b".into(), "e".into()];
        let table = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table(labels, table).unwrap();
        assert_eq!(g.label(0), "e");
        assert_eq!(g.mul(1, 1), 2);
    }

    #[test]
    fn non_associative_table_names_a_triple() {
        // A 3-element loop that is not a group.
        let labels: Vec<String> = ["e", "a", "b"].iter().map(|s| s.to_string()).collect();
        let table = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        match FiniteGroup::from_table(labels, table) {
            Err(Error::NotAssociative { a, b, c }) => {
                let t = [[0, 1, 2], [1, 0, 2], [2, 2, 0]];
                assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
            }
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let labels: Vec<String> = vec!["e".into(), "a".into()];
        assert!(matches!(
            FiniteGroup::from_table(labels.clone(), vec![vec![0, 1], vec![1, 2]]),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(labels, vec![vec![0, 1], vec![1, 1]]),
            Err(Error::NoInverse(1))
        ));
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let g = dihedral(4).unwrap();
        let all: Vec<usize> = g.elements().collect();
        let (q, _) = g.quotient(&all).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = symmetric(3).unwrap();
        let t = g.element_orders().iter().position(|&o| o == 2).unwrap();
        assert!(matches!(g.quotient(&[0, t]), Err(Error::NotNormal(_))));
    }
}
