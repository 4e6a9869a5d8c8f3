use super::{mod_inverse, reduce, Int, Lattice, Quotient};

type Sparse<T> = Vec<(usize, T)>;

/// Finitely presented module over `Z/N` with sparse relations.
///
/// Relations are consumed one at a time. Whenever a relation has a unit
/// coefficient, that generator is solved for and substituted away; the rest
/// are kept as hard relations and handed to the lattice code at the end.
#[derive(Clone, Debug)]
pub struct Presentation<T> {
    gens: usize,
    modulus: T,
    subst: Vec<Option<Sparse<T>>>,
    occurs: Vec<Vec<usize>>,
    hard: Vec<Sparse<T>>,
}

impl<T: Int> Presentation<T> {
    pub fn new(gens: usize, modulus: T) -> Self {
        assert!(modulus.is_positive(), "modulus must be positive");
        Presentation {
            gens,
            modulus,
            subst: vec![None; gens],
            occurs: vec![Vec::new(); gens],
            hard: Vec::new(),
        }
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn modulus(&self) -> &T {
        &self.modulus
    }

    /// Adds `Σ c·g = 0`. Repeated indices are summed.
    pub fn relate<I>(&mut self, terms: I)
    where
        I: IntoIterator<Item = (usize, T)>,
    {
        let row = self.resolve(terms);
        self.absorb(row);
    }

    fn collect(&self, mut terms: Vec<(usize, T)>) -> Sparse<T> {
        terms.sort_by_key(|(g, _)| *g);
        let mut out: Sparse<T> = Vec::with_capacity(terms.len());
        for (g, c) in terms {
            match out.last_mut() {
                Some((h, acc)) if *h == g => *acc = acc.clone() + c,
                _ => out.push((g, c)),
            }
        }
        out.into_iter()
            .map(|(g, c)| (g, reduce(&c, &self.modulus)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    fn resolve<I>(&self, terms: I) -> Sparse<T>
    where
        I: IntoIterator<Item = (usize, T)>,
    {
        let mut flat = Vec::new();
        for (g, c) in terms {
            assert!(g < self.gens, "generator index out of range");
            match &self.subst[g] {
                None => flat.push((g, c)),
                Some(expr) => flat.extend(expr.iter().map(|(h, d)| (*h, c.clone() * d.clone()))),
            }
        }
        self.collect(flat)
    }

    fn absorb(&mut self, row: Sparse<T>) {
        if row.is_empty() {
            return;
        }
        let pick = row
            .iter()
            .rev()
            .find_map(|(g, c)| mod_inverse(c, &self.modulus).map(|inv| (*g, inv)));
        let Some((g, inv)) = pick else {
            self.hard.push(row);
            return;
        };
        let n = self.modulus.clone();
        // g = -inv · Σ_{h≠g} c_h h
        let expr: Sparse<T> = row
            .iter()
            .filter(|(h, _)| *h != g)
            .map(|(h, c)| (*h, reduce(&(-(inv.clone() * c.clone())), &n)))
            .collect();
        let dependents = std::mem::take(&mut self.occurs[g]);
        for d in dependents {
            let Some(old) = self.subst[d].take() else {
                continue;
            };
            let Some(coef) = old.iter().find(|(h, _)| *h == g).map(|(_, c)| c.clone()) else {
                self.subst[d] = Some(old);
                continue;
            };
            let new = self.resolve_with(&old, g, &coef, &expr);
            for (h, _) in &new {
                self.occurs[*h].push(d);
            }
            self.subst[d] = Some(new);
        }
        for (h, _) in &expr {
            self.occurs[*h].push(g);
        }
        self.subst[g] = Some(expr);
    }

    fn resolve_with(&self, old: &Sparse<T>, g: usize, coef: &T, expr: &Sparse<T>) -> Sparse<T> {
        let terms = old
            .iter()
            .filter(|(h, _)| *h != g)
            .cloned()
            .chain(expr.iter().map(|(h, c)| (*h, coef.clone() * c.clone())))
            .collect();
        self.collect(terms)
    }

    /// Finishes elimination and computes the invariant-factor form.
    pub fn simplify(mut self) -> SimplifiedPresentation<T> {
        loop {
            let hard = std::mem::take(&mut self.hard);
            let mut eliminated = false;
            for row in hard {
                let row = self.resolve(row);
                let had_unit = row.iter().any(|(_, c)| mod_inverse(c, &self.modulus).is_some());
                eliminated |= had_unit;
                self.absorb(row);
            }
            if !eliminated {
                break;
            }
        }
        let free: Vec<usize> = (0..self.gens).filter(|&g| self.subst[g].is_none()).collect();
        let mut slot = vec![usize::MAX; self.gens];
        for (i, &g) in free.iter().enumerate() {
            slot[g] = i;
        }
        let r = free.len();
        let dense = |row: &Sparse<T>| -> Vec<T> {
            let mut v = vec![T::zero(); r];
            for (g, c) in row {
                v[slot[*g]] = c.clone();
            }
            v
        };
        let hard: Vec<Vec<T>> = self.hard.iter().map(|row| dense(&self.resolve(row.clone()))).collect();
        let relations = Lattice::from_generators(r, self.modulus.clone(), hard);
        let quotient = Lattice::whole(r, self.modulus.clone())
            .quotient(&relations)
            .expect("relation lattice lies in Z^r");
        let images = (0..self.gens)
            .map(|g| {
                let row = self.resolve([(g, T::one())]);
                quotient
                    .coordinates(&dense(&row))
                    .expect("every vector lies in Z^r")
            })
            .collect();
        SimplifiedPresentation {
            modulus: self.modulus,
            free,
            quotient,
            images,
        }
    }
}

/// The module `Z^gens / relations` in invariant-factor form.
#[derive(Clone, Debug)]
pub struct SimplifiedPresentation<T> {
    modulus: T,
    free: Vec<usize>,
    quotient: Quotient<T>,
    images: Vec<Vec<T>>,
}

impl<T: Int> SimplifiedPresentation<T> {
    pub fn invariants(&self) -> &[T] {
        &self.quotient.invariants
    }

    pub fn order(&self) -> num_bigint::BigUint {
        self.quotient.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.quotient.is_trivial()
    }

    /// Generators that survived unit elimination.
    pub fn free_generators(&self) -> &[usize] {
        &self.free
    }

    pub fn modulus(&self) -> &T {
        &self.modulus
    }

    /// Invariant-factor coordinates of generator `g`.
    pub fn image(&self, g: usize) -> &[T] {
        &self.images[g]
    }

    /// Coordinates of `Σ c·g`.
    pub fn evaluate<I>(&self, terms: I) -> Vec<T>
    where
        I: IntoIterator<Item = (usize, T)>,
    {
        let inv = self.invariants();
        let mut out = vec![T::zero(); inv.len()];
        for (g, c) in terms {
            for (k, x) in self.images[g].iter().enumerate() {
                out[k] = reduce(&(out[k].clone() + c.clone() * x.clone()), &inv[k]);
            }
        }
        out
    }

    pub fn add(&self, a: &[T], b: &[T]) -> Vec<T> {
        a.iter()
            .zip(b)
            .zip(self.invariants())
            .map(|((x, y), d)| reduce(&(x.clone() + y.clone()), d))
            .collect()
    }

    pub fn neg(&self, a: &[T]) -> Vec<T> {
        a.iter()
            .zip(self.invariants())
            .map(|(x, d)| reduce(&(-x.clone()), d))
            .collect()
    }

    pub fn zero(&self) -> Vec<T> {
        vec![T::zero(); self.invariants().len()]
    }

    pub fn quotient(&self) -> &Quotient<T> {
        &self.quotient
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_invariants(gens: usize, n: i64, rels: &[Vec<(usize, i64)>]) -> Vec<i64> {
        let rows: Vec<Vec<i64>> = rels
            .iter()
            .map(|r| {
                let mut v = vec![0; gens];
                for (g, c) in r {
                    v[*g] += c;
                }
                v
            })
            .collect();
        super::super::smith_mod(&rows, gens, &n).invariants()
    }

    #[test]
    fn unit_elimination_matches_dense_smith() {
        let rels = vec![
            vec![(0, 1), (1, -1), (2, 2)],
            vec![(1, 2), (3, 4)],
            vec![(2, 3), (3, 1)],
            vec![(0, 4)],
        ];
        let mut p = Presentation::new(4, 12i64);
        for r in &rels {
            p.relate(r.iter().cloned());
        }
        let s = p.simplify();
        assert_eq!(s.invariants(), dense_invariants(4, 12, &rels).as_slice());
        for r in &rels {
            assert!(s.evaluate(r.iter().cloned()).iter().all(|c| *c == 0));
        }
    }

    #[test]
    fn cyclic_group_from_its_table() {
        // Z_6 presented by e_a + e_b = e_{a+b}.
        let mut p = Presentation::new(6, 6i64);
        for a in 0..6 {
            for b in 0..6 {
                p.relate([(a, 1), (b, 1), ((a + b) % 6, -1)]);
            }
        }
        let s = p.simplify();
        assert_eq!(s.invariants(), &[6]);
        assert_eq!(s.image(0), &[0]);
    }
}
