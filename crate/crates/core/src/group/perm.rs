use std::collections::HashMap;
use std::fmt;

use super::{FiniteGroup, PERM_CAP};
use crate::error::{Error, Result};

/// A permutation of `{0, …, degree-1}` given by its image list.
///
/// Composition reads left to right: `p.then(q)` maps `x` to `q(p(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    /// Builds from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidParameter(format!("point {x} exceeds degree {degree}")));
                }
                if std::mem::replace(&mut moved[x], true) {
                    return Err(Error::InvalidParameter(format!("point {x} repeated in cycles")));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x] = i;
        }
        Permutation(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl FiniteGroup {
    /// Closure of `generators` under composition.
    ///
    /// Elements are ordered by word length in the generators, then by image
    /// tuple. The product `g·h` applies `g` first.
    pub fn from_permutations(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::from_permutations_capped(degree, generators, PERM_CAP).map(|(g, _)| g)
    }

    /// As [`FiniteGroup::from_permutations`], also returning the elements.
    pub fn from_permutations_capped(
        degree: usize,
        generators: &[Permutation],
        cap: usize,
    ) -> Result<(Self, Vec<Permutation>)> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidParameter(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let cap = cap.min(u16::MAX as usize + 1);
        let mut elems = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(elems[0].clone(), 0)]);
        // parent[i] = (j, k) with elems[i] = elems[j]·gen[k]
        let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next: Vec<(Permutation, usize, usize)> = Vec::new();
            let mut fresh: HashMap<Permutation, ()> = HashMap::new();
            for &i in &level {
                for (k, g) in generators.iter().enumerate() {
                    let p = elems[i].then(g);
                    if index.contains_key(&p) || fresh.contains_key(&p) {
                        continue;
                    }
                    fresh.insert(p.clone(), ());
                    next.push((p, i, k));
                }
            }
            next.sort_by(|a, b| a.0.cmp(&b.0));
            level.clear();
            for (p, i, k) in next {
                if elems.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                index.insert(p.clone(), elems.len());
                level.push(elems.len());
                elems.push(p);
                parent.push((i, k));
            }
        }
        let n = elems.len();
        let gen_idx: Vec<Vec<u16>> = generators
            .iter()
            .map(|g| elems.iter().map(|e| index[&e.then(g)] as u16).collect())
            .collect();
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            mul[a * n] = a as u16;
        }
        // Right multiplication by elems[b] = elems[j]·gen[k] factors through j.
        for b in 1..n {
            let (j, k) = parent[b];
            for a in 0..n {
                let aj = mul[a * n + j] as usize;
                mul[a * n + b] = gen_idx[k][aj];
            }
        }
        let labels = elems.iter().map(|p| p.to_string()).collect();
        Ok((Self::from_mul_unchecked("", labels, mul), elems))
    }
}
