use super::{egcd, reduce, smith_mod, Int, SmithForm};

/// Full-rank sublattice of `Z^n` that contains `modulus·Z^n`.
///
/// Stored as a canonical Hermite basis: row `i` has its pivot in column `i`,
/// the pivot divides the modulus, and entries right of a pivot lie in
/// `[0, pivot_of_that_column)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice<T> {
    dim: usize,
    modulus: T,
    rows: Vec<Vec<T>>,
}

impl<T: Int> Lattice<T> {
    /// `modulus·Z^n`, the smallest lattice this type can represent.
    pub fn scaled(dim: usize, modulus: T) -> Self {
        assert!(modulus.is_positive(), "modulus must be positive");
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { modulus.clone() } else { T::zero() })
                    .collect()
            })
            .collect();
        Lattice { dim, modulus, rows }
    }

    /// All of `Z^n`.
    pub fn whole(dim: usize, modulus: T) -> Self {
        let mut l = Self::scaled(dim, modulus);
        for (i, row) in l.rows.iter_mut().enumerate() {
            row[i] = T::one();
        }
        l
    }

    pub fn from_generators<I>(dim: usize, modulus: T, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<T>>,
    {
        let mut l = Self::scaled(dim, modulus);
        for g in gens {
            l.insert_raw(g);
        }
        l.normalize();
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> &T {
        &self.modulus
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = &T> {
        self.rows.iter().enumerate().map(|(i, r)| &r[i])
    }

    /// Index `[Z^n : L]`, i.e. the product of the pivots.
    pub fn index(&self) -> num_bigint::BigUint {
        self.pivots().fold(num_bigint::BigUint::from(1u8), |acc, p| {
            acc * num_bigint::BigUint::from(p.to_u64().expect("pivot fits u64"))
        })
    }

    pub fn insert(&mut self, v: Vec<T>) {
        self.insert_raw(v);
        self.normalize();
    }

    fn insert_raw(&mut self, v: Vec<T>) {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let n = self.modulus.clone();
        let mut v: Vec<T> = v.iter().map(|x| reduce(x, &n)).collect();
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            let p = self.rows[i][i].clone();
            if (v[i].clone() % p.clone()).is_zero() {
                let q = v[i].clone() / p;
                for j in i..self.dim {
                    v[j] = reduce(&(v[j].clone() - q.clone() * self.rows[i][j].clone()), &n);
                }
                continue;
            }
            let (g, x, y) = egcd(&p, &v[i]);
            let vp = v[i].clone() / g.clone();
            let pp = p / g.clone();
            let row = &mut self.rows[i];
            for j in i..self.dim {
                let r = row[j].clone();
                let s = v[j].clone();
                row[j] = x.clone() * r.clone() + y.clone() * s.clone();
                v[j] = vp.clone() * r - pp.clone() * s;
                if j > i {
                    row[j] = reduce(&row[j], &n);
                }
                v[j] = reduce(&v[j], &n);
            }
            row[i] = g;
        }
    }

    fn normalize(&mut self) {
        let n = self.modulus.clone();
        for i in 0..self.dim {
            if self.rows[i][i].is_negative() {
                for x in self.rows[i].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        for i in (0..self.dim).rev() {
            for j in i + 1..self.dim {
                let p = self.rows[j][j].clone();
                let q = self.rows[i][j].div_floor(&p);
                if q.is_zero() {
                    continue;
                }
                let (head, tail) = self.rows.split_at_mut(j);
                let ri = &mut head[i];
                let rj = &tail[0];
                for k in j..self.dim {
                    ri[k] = ri[k].clone() - q.clone() * rj[k].clone();
                    if k > j {
                        ri[k] = reduce(&ri[k], &n);
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let n = &self.modulus;
        let mut v: Vec<T> = v.iter().map(|x| reduce(x, n)).collect();
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            let p = &self.rows[i][i];
            if !(v[i].clone() % p.clone()).is_zero() {
                return false;
            }
            let q = v[i].clone() / p.clone();
            for j in i..self.dim {
                v[j] = reduce(&(v[j].clone() - q.clone() * self.rows[i][j].clone()), n);
            }
        }
        true
    }

    pub fn contains_lattice(&self, other: &Lattice<T>) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// `L + M`.
    pub fn sum(&self, other: &Lattice<T>) -> Lattice<T> {
        assert_eq!(self.dim, other.dim);
        let modulus = self.modulus.clone().lcm(&other.modulus);
        Lattice::from_generators(
            self.dim,
            modulus,
            self.rows.iter().chain(other.rows.iter()).cloned(),
        )
    }

    /// Replaces `L` with `{v ∈ L : c·v ≡ 0 (mod e)}`; `e` must divide the modulus.
    pub fn restrict(&mut self, functional: &[(usize, T)], e: &T) {
        assert!(
            (self.modulus.clone() % e.clone()).is_zero(),
            "constraint modulus must divide the lattice modulus"
        );
        if e.is_one() {
            return;
        }
        let eval = |row: &[T]| -> T {
            let mut acc = T::zero();
            for (k, c) in functional {
                acc = acc + c.clone() * row[*k].clone();
            }
            reduce(&acc, e)
        };
        let mut basis = self.rows.clone();
        let mut s: Vec<T> = basis.iter().map(|r| eval(r)).collect();
        let Some(p) = s.iter().position(|x| !x.is_zero()) else {
            return;
        };
        for i in p + 1..basis.len() {
            if s[i].is_zero() {
                continue;
            }
            let (g, x, y) = egcd(&s[p], &s[i]);
            let si = s[i].clone() / g.clone();
            let sp = s[p].clone() / g.clone();
            for k in 0..self.dim {
                let a = basis[p][k].clone();
                let b = basis[i][k].clone();
                basis[p][k] = reduce(&(x.clone() * a.clone() + y.clone() * b.clone()), &self.modulus);
                basis[i][k] = reduce(&(si.clone() * a - sp.clone() * b), &self.modulus);
            }
            s[p] = g;
            s[i] = T::zero();
        }
        let scale = e.clone() / s[p].gcd(e);
        for x in basis[p].iter_mut() {
            *x = x.clone() * scale.clone();
        }
        *self = Lattice::from_generators(self.dim, self.modulus.clone(), basis);
    }

    /// Structure of `self / sub` for a sublattice `sub ⊆ self`.
    pub fn quotient(&self, sub: &Lattice<T>) -> Result<Quotient<T>, NotSublattice> {
        assert_eq!(self.dim, sub.dim);
        if !self.contains_lattice(sub) {
            return Err(NotSublattice);
        }
        let n = self.modulus.clone().lcm(&sub.modulus);
        let dim = self.dim;
        // Membership in `sub`: v ∈ sub ⇔ (v·V_sub)_k ≡ 0 mod d_k.
        let sub_snf = smith_mod(&sub.rows, dim, &n);
        let mut kernel = Lattice::whole(dim, n.clone());
        for k in sub_snf.nontrivial() {
            let d = &sub_snf.diag[k];
            let functional: Vec<(usize, T)> = (0..dim)
                .filter_map(|i| {
                    let mut acc = T::zero();
                    for j in 0..dim {
                        acc = acc + self.rows[i][j].clone() * sub_snf.v[j][k].clone();
                    }
                    let c = reduce(&acc, d);
                    (!c.is_zero()).then_some((i, c))
                })
                .collect();
            kernel.restrict(&functional, d);
        }
        let snf = smith_mod(&kernel.rows, dim, &n);
        let keep = snf.nontrivial();
        let generators = keep
            .iter()
            .map(|&k| {
                (0..dim)
                    .map(|j| {
                        let mut acc = T::zero();
                        for i in 0..dim {
                            acc = acc + snf.vinv[k][i].clone() * self.rows[i][j].clone();
                        }
                        reduce(&acc, &n)
                    })
                    .collect()
            })
            .collect();
        Ok(Quotient {
            invariants: keep.iter().map(|&k| snf.diag[k].clone()).collect(),
            generators,
            keep,
            basis: self.rows.clone(),
            snf,
            modulus: n,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("lattice is not contained in the ambient lattice")]
pub struct NotSublattice;

/// `L1 / L2` in invariant-factor form with a coordinate map.
#[derive(Clone, Debug)]
pub struct Quotient<T> {
    pub invariants: Vec<T>,
    /// Ambient-space representatives of the standard generators.
    pub generators: Vec<Vec<T>>,
    keep: Vec<usize>,
    basis: Vec<Vec<T>>,
    snf: SmithForm<T>,
    modulus: T,
}

impl<T: Int> Quotient<T> {
    pub fn order(&self) -> num_bigint::BigUint {
        self.invariants.iter().fold(num_bigint::BigUint::from(1u8), |acc, d| {
            acc * num_bigint::BigUint::from(d.to_u64().expect("factor fits u64"))
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Coordinates of `v ∈ L1` in the quotient; `None` if `v ∉ L1`.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        let n = &self.modulus;
        let dim = self.basis.len();
        let mut r: Vec<T> = v.iter().map(|x| reduce(x, n)).collect();
        let mut a = vec![T::zero(); dim];
        for j in 0..dim {
            let p = &self.basis[j][j];
            if !(r[j].clone() % p.clone()).is_zero() {
                return None;
            }
            let q = reduce(&(r[j].clone() / p.clone()), n);
            for k in j..dim {
                r[k] = reduce(&(r[k].clone() - q.clone() * self.basis[j][k].clone()), n);
            }
            a[j] = q;
        }
        let coords = self.snf.coordinates(&a);
        Some(self.keep.iter().map(|&k| coords[k].clone()).collect())
    }

    /// Ambient representative of the element with the given coordinates.
    pub fn element(&self, coords: &[T]) -> Vec<T> {
        assert_eq!(coords.len(), self.generators.len());
        let dim = self.basis.len();
        let mut out = vec![T::zero(); dim];
        for (c, g) in coords.iter().zip(&self.generators) {
            for j in 0..dim {
                out[j] = out[j].clone() + c.clone() * g[j].clone();
            }
        }
        out.iter().map(|x| reduce(x, &self.modulus)).collect()
    }

    /// Every coordinate tuple, in lexicographic order starting from zero.
    pub fn enumerate(&self) -> Vec<Vec<T>> {
        let mut out = vec![Vec::new()];
        for d in &self.invariants {
            let mut next = Vec::new();
            for prefix in &out {
                let mut c = T::zero();
                while c < *d {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    next.push(p);
                    c = c + T::one();
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_basis_is_canonical() {
        let a = Lattice::from_generators(2, 12i64, vec![vec![2, 4], vec![0, 6]]);
        let b = Lattice::from_generators(2, 12i64, vec![vec![2, 10], vec![4, 2], vec![0, 6]]);
        assert_eq!(a, b);
        assert_eq!(a.rows()[0][0], 2);
    }

    #[test]
    fn restrict_matches_brute_force() {
        // {v ∈ Z_6^2 : v0 + 2 v1 ≡ 0 mod 3}
        let mut l = Lattice::whole(2, 6i64);
        l.restrict(&[(0, 1), (1, 2)], &3);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(l.contains(&[a, b]), (a + 2 * b) % 3 == 0, "({a},{b})");
            }
        }
        assert_eq!(l.index(), 3u32.into());
    }

    #[test]
    fn quotient_of_nested_lattices() {
        let big = Lattice::from_generators(2, 8i64, vec![vec![2, 0], vec![0, 1]]);
        let small = Lattice::from_generators(2, 8i64, vec![vec![8, 0], vec![0, 2]]);
        let q = big.quotient(&small).unwrap();
        assert_eq!(q.invariants, vec![2, 4]);
        for g in &q.generators {
            assert!(big.contains(g));
        }
        assert!(q.coordinates(&[1, 0]).is_none());
        assert_eq!(q.coordinates(&[8, 2]).unwrap(), vec![0, 0]);
    }

    #[test]
    fn quotient_rejects_non_sublattice() {
        let a = Lattice::from_generators(1, 4i64, vec![vec![2]]);
        let b = Lattice::whole(1, 4i64);
        assert!(a.quotient(&b).is_err());
    }
}
