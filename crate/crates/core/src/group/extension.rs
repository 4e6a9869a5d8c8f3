use super::{FiniteGroup, GroupMap};
use crate::error::{Error, Result};
use crate::search::{generating_sequence, HomSearch};

/// A short exact sequence `H → G → K`, optionally with a section `K → G`.
#[derive(Clone, Debug)]
pub struct ExtensionRecord {
    pub alpha: GroupMap,
    pub beta: GroupMap,
    pub section: Option<GroupMap>,
}

impl ExtensionRecord {
    pub fn new(alpha: GroupMap, beta: GroupMap, section: Option<GroupMap>) -> Result<Self> {
        if alpha.codomain() != beta.domain() {
            return Err(Error::InvalidMap("alpha and beta do not share the middle group".into()));
        }
        for (name, m) in [("alpha", &alpha), ("beta", &beta)] {
            if let Some((x, y)) = m.homomorphism_violation() {
                return Err(Error::InvalidMap(format!("{name} is not a homomorphism at ({x},{y})")));
            }
        }
        if !alpha.is_injective() {
            return Err(Error::InvalidMap("alpha is not injective".into()));
        }
        if !beta.is_surjective() {
            return Err(Error::InvalidMap("beta is not surjective".into()));
        }
        if alpha.image() != beta.kernel() {
            return Err(Error::InvalidMap("image(alpha) ≠ kernel(beta)".into()));
        }
        let rec = ExtensionRecord { alpha, beta, section: None };
        match section {
            Some(s) => rec.with_section(s),
            None => Ok(rec),
        }
    }

    /// `N → G → G/N`.
    pub fn from_normal_subgroup(g: &FiniteGroup, normal: &[usize]) -> Result<Self> {
        let (_, alpha) = g.subgroup(normal)?;
        let (_, beta) = g.quotient(normal)?;
        Self::new(alpha, beta, None)
    }

    pub fn with_section(mut self, s: GroupMap) -> Result<Self> {
        if s.domain() != self.k() || s.codomain() != self.g() {
            return Err(Error::InvalidMap("section has the wrong domain or codomain".into()));
        }
        if let Some(x) = self.k().elements().find(|&x| self.beta.apply(s.apply(x)) != x) {
            return Err(Error::InvalidMap(format!("beta∘section differs from identity at {x}")));
        }
        self.section = Some(s);
        Ok(self)
    }

    pub fn h(&self) -> &FiniteGroup {
        self.alpha.domain()
    }

    pub fn g(&self) -> &FiniteGroup {
        self.alpha.codomain()
    }

    pub fn k(&self) -> &FiniteGroup {
        self.beta.codomain()
    }

    pub fn is_central(&self) -> bool {
        let g = self.g();
        self.alpha
            .values()
            .iter()
            .all(|&a| g.elements().all(|x| g.commutes(a, x)))
    }

    /// The fiber `β⁻¹(x)` for each `x ∈ K`, each sorted.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k().order()];
        for x in self.g().elements() {
            out[self.beta.apply(x)].push(x);
        }
        out
    }

    /// Preimage under `alpha`, for elements of its image.
    pub fn alpha_preimage(&self, x: usize) -> Option<usize> {
        self.alpha.values().iter().position(|&v| v == x)
    }

    /// A homomorphic section, searched exhaustively over the fibers.
    pub fn find_group_splitting(&self) -> Option<GroupMap> {
        let (k, g) = (self.k(), self.g());
        let gens = generating_sequence(k, &k.elements().collect::<Vec<_>>());
        let out = HomSearch::new(k, g, gens)
            .allowed(|x, y| self.beta.apply(y) == x && k.element_order(x) % g.element_order(y) == 0)
            .run(1)
            .expect("no node cap set");
        out.first()
            .map(|s| GroupMap::new_unchecked(k.clone(), g.clone(), s.clone()))
    }

    pub fn splits(&self) -> bool {
        self.find_group_splitting().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    #[test]
    fn normal_subgroup_extension() {
        let z4 = cyclic(4).unwrap();
        let e = ExtensionRecord::from_normal_subgroup(&z4, &[0, 2]).unwrap();
        assert_eq!((e.h().order(), e.g().order(), e.k().order()), (2, 4, 2));
        assert!(e.is_central());
        assert_eq!(e.fibers(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn s3_over_a3_is_not_central() {
        let s3 = symmetric(3).unwrap();
        let a3 = s3.commutator_subgroup();
        let e = ExtensionRecord::from_normal_subgroup(&s3, &a3).unwrap();
        assert!(!e.is_central());
        assert!(e.splits());
    }

    #[test]
    fn bad_section_is_rejected() {
        let z4 = cyclic(4).unwrap();
        let e = ExtensionRecord::from_normal_subgroup(&z4, &[0, 2]).unwrap();
        let s = GroupMap::new(e.k().clone(), z4.clone(), vec![0, 2]).unwrap();
        assert!(e.with_section(s).is_err());
    }
}
