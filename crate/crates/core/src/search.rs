//! Backtracking search for structure-preserving maps between finite magmas.
//!
//! A map is fixed by the images of a generating sequence of the source. Each
//! time a generator is assigned, products of everything assigned so far are
//! propagated, so conflicts surface as early as possible. Candidates are
//! tried in increasing index order, which makes the first solution the
//! lexicographically least one in generator images.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A finite set with a binary operation and identity at index 0.
pub trait Magma {
    fn size(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> usize;
}

impl Magma for FiniteGroup {
    fn size(&self) -> usize {
        self.order()
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.mul(a, b)
    }
}

/// Closure of `seed ∪ {0}` under the operation, as a membership mask.
pub fn closure<M: Magma + ?Sized>(m: &M, seed: &[usize]) -> Vec<bool> {
    let mut mark = vec![false; m.size()];
    let mut known = Vec::new();
    let mut pending: Vec<usize> = std::iter::once(0).chain(seed.iter().copied()).collect();
    while let Some(x) = pending.pop() {
        if mark[x] {
            continue;
        }
        mark[x] = true;
        known.push(x);
        for &y in &known {
            pending.push(m.op(x, y));
            pending.push(m.op(y, x));
        }
    }
    mark
}

/// Greedy generating sequence, trying elements in `preference` order.
pub fn generating_sequence<M: Magma + ?Sized>(m: &M, preference: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut mark = closure(m, &[]);
    for &x in preference {
        if mark.iter().all(|&b| b) {
            break;
        }
        if !mark[x] {
            gens.push(x);
            mark = closure(m, &gens);
        }
    }
    gens
}

/// Result of a search: solutions found and the number of generator
/// assignments tried. When no solution is returned the node count certifies
/// the size of the exhausted tree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    pub solutions: Vec<Vec<usize>>,
    pub nodes: u64,
}

impl SearchOutcome {
    pub fn first(&self) -> Option<&Vec<usize>> {
        self.solutions.first()
    }
}

pub struct HomSearch<'a, A: ?Sized, B: ?Sized> {
    src: &'a A,
    dst: &'a B,
    gens: Vec<usize>,
    allowed: Box<dyn Fn(usize, usize) -> bool + 'a>,
    injective: bool,
    node_cap: u64,
}

struct State {
    img: Vec<usize>,
    used: Vec<bool>,
    known: Vec<usize>,
    nodes: u64,
    solutions: Vec<Vec<usize>>,
}

const UNSET: usize = usize::MAX;

impl<'a, A: Magma + ?Sized, B: Magma + ?Sized> HomSearch<'a, A, B> {
    /// Searches maps `src → dst` respecting the operation, with `gens`
    /// generating `src`.
    pub fn new(src: &'a A, dst: &'a B, gens: Vec<usize>) -> Self {
        HomSearch {
            src,
            dst,
            gens,
            allowed: Box::new(|_, _| true),
            injective: false,
            node_cap: u64::MAX,
        }
    }

    /// Restricts the image of each source element.
    pub fn allowed(mut self, f: impl Fn(usize, usize) -> bool + 'a) -> Self {
        self.allowed = Box::new(f);
        self
    }

    pub fn injective(mut self, yes: bool) -> Self {
        self.injective = yes;
        self
    }

    pub fn node_cap(mut self, cap: u64) -> Self {
        self.node_cap = cap;
        self
    }

    /// Runs the search, stopping after `limit` solutions.
    pub fn run(&self, limit: usize) -> Result<SearchOutcome> {
        let mut st = State {
            img: vec![UNSET; self.src.size()],
            used: vec![false; self.dst.size()],
            known: Vec::new(),
            nodes: 0,
            solutions: Vec::new(),
        };
        if limit > 0 && self.assign(&mut st, 0, 0) {
            self.descend(&mut st, 0, limit)?;
        }
        Ok(SearchOutcome {
            solutions: st.solutions,
            nodes: st.nodes,
        })
    }

    fn descend(&self, st: &mut State, i: usize, limit: usize) -> Result<()> {
        if i == self.gens.len() {
            if st.known.len() == self.src.size() {
                st.solutions.push(st.img.clone());
            }
            return Ok(());
        }
        let g = self.gens[i];
        if st.img[g] != UNSET {
            return self.descend(st, i + 1, limit);
        }
        for b in 0..self.dst.size() {
            if !(self.allowed)(g, b) || (self.injective && st.used[b]) {
                continue;
            }
            st.nodes += 1;
            if st.nodes > self.node_cap {
                return Err(Error::CapExceeded {
                    cap: self.node_cap as usize,
                });
            }
            let mark = st.known.len();
            if self.assign(st, g, b) {
                self.descend(st, i + 1, limit)?;
            }
            self.undo(st, mark);
            if st.solutions.len() >= limit {
                break;
            }
        }
        Ok(())
    }

    fn undo(&self, st: &mut State, mark: usize) {
        for x in st.known.drain(mark..) {
            st.used[st.img[x]] = false;
            st.img[x] = UNSET;
        }
    }

    fn assign(&self, st: &mut State, a: usize, b: usize) -> bool {
        let mut pending = vec![(a, b)];
        while let Some((x, fx)) = pending.pop() {
            if st.img[x] != UNSET {
                if st.img[x] == fx {
                    continue;
                }
                return false;
            }
            if !(self.allowed)(x, fx) || (self.injective && st.used[fx]) {
                return false;
            }
            st.img[x] = fx;
            st.used[fx] = true;
            st.known.push(x);
            for k in 0..st.known.len() {
                let y = st.known[k];
                let fy = st.img[y];
                pending.push((self.src.op(x, y), self.dst.op(fx, fy)));
                pending.push((self.src.op(y, x), self.dst.op(fy, fx)));
            }
        }
        true
    }
}
