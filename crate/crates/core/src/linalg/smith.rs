use super::{egcd, reduce, Int};

/// Smith form of a relation matrix taken modulo `N`.
///
/// For relation rows `R` (each of length `c`) the quotient
/// `Z^c / (rowspan(R) + N·Z^c)` is isomorphic to `⊕ Z/diag[k]` through
/// `w ↦ (w·V)_k mod diag[k]`. Rows of `vinv` lift the standard generators.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub modulus: T,
    /// `diag[k]` divides `modulus`; a value of 1 marks a trivial factor.
    pub diag: Vec<T>,
    pub v: Vec<Vec<T>>,
    pub vinv: Vec<Vec<T>>,
}

impl<T: Int> SmithForm<T> {
    /// Nontrivial invariant factors in divisibility order.
    pub fn invariants(&self) -> Vec<T> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Indices `k` whose factor is nontrivial.
    pub fn nontrivial(&self) -> Vec<usize> {
        (0..self.diag.len()).filter(|&k| !self.diag[k].is_one()).collect()
    }

    /// Coordinates of `w` against every factor (trivial ones included).
    pub fn coordinates(&self, w: &[T]) -> Vec<T> {
        let c = self.diag.len();
        (0..c)
            .map(|k| {
                let mut acc = T::zero();
                for (i, wi) in w.iter().enumerate() {
                    if !wi.is_zero() {
                        acc = acc + wi.clone() * self.v[i][k].clone();
                    }
                }
                reduce(&acc, &self.diag[k])
            })
            .collect()
    }
}

struct Work<'a, T> {
    a: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
    vinv: Vec<Vec<T>>,
    n: &'a T,
}

impl<T: Int> Work<'_, T> {
    fn red(&self, x: T) -> T {
        reduce(&x, self.n)
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.vinv.swap(i, j);
    }

    /// Rows `t` and `i` become `m00·t + m01·i` and `m10·t + m11·i`.
    fn combine_rows(&mut self, t: usize, i: usize, m: [T; 4]) {
        let [m00, m01, m10, m11] = m;
        for k in 0..self.a[t].len() {
            let x = self.a[t][k].clone();
            let y = self.a[i][k].clone();
            self.a[t][k] = self.red(m00.clone() * x.clone() + m01.clone() * y.clone());
            self.a[i][k] = self.red(m10.clone() * x + m11.clone() * y);
        }
    }

    /// Columns `t` and `j` become `m00·t + m10·j` and `m01·t + m11·j`;
    /// `V` follows and `V⁻¹` takes the inverse row operation.
    fn combine_cols(&mut self, t: usize, j: usize, m: [T; 4]) {
        let [m00, m01, m10, m11] = m;
        for mat in [&mut self.a, &mut self.v] {
            for row in mat.iter_mut() {
                let x = row[t].clone();
                let y = row[j].clone();
                row[t] = reduce(&(m00.clone() * x.clone() + m10.clone() * y.clone()), self.n);
                row[j] = reduce(&(m01.clone() * x + m11.clone() * y), self.n);
            }
        }
        let cols = self.vinv[t].len();
        for k in 0..cols {
            let x = self.vinv[t][k].clone();
            let y = self.vinv[j][k].clone();
            self.vinv[t][k] = self.red(m11.clone() * x.clone() - m01.clone() * y.clone());
            self.vinv[j][k] = self.red(m00.clone() * y - m10.clone() * x);
        }
    }
}

/// Smith form of `rows` over `Z/modulus`, tracking column transforms.
pub fn smith_mod<T: Int>(rows: &[Vec<T>], cols: usize, modulus: &T) -> SmithForm<T> {
    assert!(modulus.is_positive(), "modulus must be positive");
    let ident = |k: usize| -> Vec<Vec<T>> {
        (0..k)
            .map(|i| (0..k).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect()
    };
    let mut w = Work {
        a: rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged relation matrix");
                r.iter().map(|x| reduce(x, modulus)).collect()
            })
            .collect(),
        v: ident(cols),
        vinv: ident(cols),
        n: modulus,
    };
    let nrows = w.a.len();
    let mut diag = Vec::with_capacity(cols);

    for t in 0..cols {
        // Pivot: entry with the smallest gcd against the modulus.
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..nrows {
            for j in t..cols {
                if w.a[i][j].is_zero() {
                    continue;
                }
                let g = w.a[i][j].gcd(modulus);
                if best.as_ref().is_none_or(|(_, _, bg)| g < *bg) {
                    best = Some((i, j, g));
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            diag.extend(std::iter::repeat_n(modulus.clone(), cols - t));
            break;
        };
        w.a.swap(t, pi);
        w.swap_cols(t, pj);

        loop {
            let mut changed = false;
            for i in t + 1..nrows {
                let b = w.a[i][t].clone();
                if b.is_zero() {
                    continue;
                }
                let a = w.a[t][t].clone();
                if (b.clone() % a.clone()).is_zero() {
                    let q = b / a;
                    w.combine_rows(t, i, [T::one(), T::zero(), -q, T::one()]);
                } else {
                    let (g, x, y) = egcd(&a, &b);
                    w.combine_rows(t, i, [x, y, -(b / g.clone()), a / g]);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                let b = w.a[t][j].clone();
                if b.is_zero() {
                    continue;
                }
                let a = w.a[t][t].clone();
                if (b.clone() % a.clone()).is_zero() {
                    let q = b / a;
                    w.combine_cols(t, j, [T::one(), -q, T::zero(), T::one()]);
                } else {
                    let (g, x, y) = egcd(&a, &b);
                    w.combine_cols(t, j, [x, -(b / g.clone()), y, a / g]);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // The pivot must divide the remaining block (as an ideal of Z/N).
            let g = w.a[t][t].gcd(modulus);
            let bad = (t + 1..nrows).find(|&i| {
                (t + 1..cols).any(|j| !(w.a[i][j].clone() % g.clone()).is_zero())
            });
            match bad {
                Some(i) => w.combine_rows(t, i, [T::one(), T::one(), T::zero(), T::one()]),
                None => break,
            }
        }
        diag.push(w.a[t][t].gcd(modulus));
    }

    SmithForm {
        modulus: modulus.clone(),
        diag,
        v: w.v,
        vinv: w.vinv,
    }
}
