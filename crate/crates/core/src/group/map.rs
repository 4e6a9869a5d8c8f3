use super::FiniteGroup;
use crate::error::{Error, Result};

/// A function between finite groups given by its value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    domain: FiniteGroup,
    codomain: FiniteGroup,
    values: Vec<usize>,
}

impl GroupMap {
    pub fn new(domain: FiniteGroup, codomain: FiniteGroup, values: Vec<usize>) -> Result<Self> {
        if values.len() != domain.order() {
            return Err(Error::InvalidMap(format!(
                "{} values for a domain of order {}",
                values.len(),
                domain.order()
            )));
        }
        if let Some(x) = values.iter().position(|&v| v >= codomain.order()) {
            return Err(Error::InvalidMap(format!("value at {x} out of range")));
        }
        Ok(GroupMap { domain, codomain, values })
    }

    pub(crate) fn new_unchecked(domain: FiniteGroup, codomain: FiniteGroup, values: Vec<usize>) -> Self {
        debug_assert_eq!(values.len(), domain.order());
        GroupMap { domain, codomain, values }
    }

    pub fn from_fn(domain: &FiniteGroup, codomain: &FiniteGroup, f: impl Fn(usize) -> usize) -> Result<Self> {
        let values = domain.elements().map(f).collect();
        Self::new(domain.clone(), codomain.clone(), values)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupMap::new_unchecked(g.clone(), g.clone(), g.elements().collect())
    }

    pub fn trivial(domain: &FiniteGroup, codomain: &FiniteGroup) -> Self {
        GroupMap::new_unchecked(domain.clone(), codomain.clone(), vec![0; domain.order()])
    }

    pub fn domain(&self) -> &FiniteGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroup {
        &self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn preserves_identity(&self) -> bool {
        self.values[0] == 0
    }

    /// First pair `(x, y)` with `f(xy) ≠ f(x)f(y)`, if any.
    pub fn homomorphism_violation(&self) -> Option<(usize, usize)> {
        let (g, h) = (&self.domain, &self.codomain);
        g.elements()
            .flat_map(|x| g.elements().map(move |y| (x, y)))
            .find(|&(x, y)| self.apply(g.mul(x, y)) != h.mul(self.apply(x), self.apply(y)))
    }

    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism_violation().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        for &v in &self.values {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_injective()
    }

    /// Preimage of the identity, sorted.
    pub fn kernel(&self) -> Vec<usize> {
        self.domain.elements().filter(|&x| self.values[x] == 0).collect()
    }

    /// Image as a sorted set.
    pub fn image(&self) -> Vec<usize> {
        let mut out = self.values.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupMap) -> Result<GroupMap> {
        if self.codomain != other.domain {
            return Err(Error::InvalidMap("composition across different groups".into()));
        }
        Ok(GroupMap::new_unchecked(
            self.domain.clone(),
            other.codomain.clone(),
            self.values.iter().map(|&x| other.apply(x)).collect(),
        ))
    }

    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.values.len()];
        for (x, &y) in self.values.iter().enumerate() {
            inv[y] = x;
        }
        Some(GroupMap::new_unchecked(self.codomain.clone(), self.domain.clone(), inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    #[test]
    fn kernel_and_image_of_sign() {
        let s3 = symmetric(3).unwrap();
        let z2 = cyclic(2).unwrap();
        let sign = GroupMap::from_fn(&s3, &z2, |x| (s3.element_order(x) == 2) as usize).unwrap();
        assert!(sign.is_homomorphism());
        assert_eq!(sign.kernel().len(), 3);
        assert!(sign.is_surjective());
        assert!(!sign.is_injective());
    }

    #[test]
    fn non_homomorphism_has_witness() {
        let z4 = cyclic(4).unwrap();
        let f = GroupMap::from_fn(&z4, &z4, |x| (x * x) % 4).unwrap();
        let (x, y) = f.homomorphism_violation().unwrap();
        assert_ne!(f.apply(z4.mul(x, y)), z4.mul(f.apply(x), f.apply(y)));
    }

    #[test]
    fn rejects_out_of_range_values() {
        let z2 = cyclic(2).unwrap();
        assert!(GroupMap::new(z2.clone(), z2, vec![0, 2]).is_err());
    }
}
