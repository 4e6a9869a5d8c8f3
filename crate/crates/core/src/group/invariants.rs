use serde::Serialize;

use super::FiniteGroup;

/// Structural invariants of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub order: usize,
    pub center: Vec<usize>,
    pub commutator_subgroup: Vec<usize>,
    pub exponent: usize,
    /// `None` when the group is not nilpotent.
    pub nilpotency_class: Option<usize>,
    pub is_perfect: bool,
    pub every_element_commutator: bool,
    pub is_2_engel: bool,
    pub is_central_by_2_engel: bool,
}

impl FiniteGroup {
    pub fn invariants_suite(&self) -> GroupInvariants {
        let center = self.center();
        let commutator_subgroup = self.commutator_subgroup();
        let mut is_comm = vec![false; self.order()];
        for x in self.elements() {
            for y in self.elements() {
                is_comm[self.comm(x, y)] = true;
            }
        }
        GroupInvariants {
            order: self.order(),
            exponent: self.exponent(),
            nilpotency_class: self.nilpotency_class(),
            is_perfect: commutator_subgroup.len() == self.order(),
            every_element_commutator: is_comm.into_iter().all(|b| b),
            is_2_engel: self.is_2_engel(),
            is_central_by_2_engel: self.is_central_by_2_engel_with(&center),
            center,
            commutator_subgroup,
        }
    }

    /// `[[x, y], y] = e` for all `x, y`.
    pub fn is_2_engel(&self) -> bool {
        self.two_engel_witness(|z| z == 0).is_none()
    }

    /// `G/Z(G)` is 2-Engel, i.e. `[[x, y], y] ∈ Z(G)` for all `x, y`.
    pub fn is_central_by_2_engel(&self) -> bool {
        self.is_central_by_2_engel_with(&self.center())
    }

    fn is_central_by_2_engel_with(&self, center: &[usize]) -> bool {
        let mut central = vec![false; self.order()];
        for &z in center {
            central[z] = true;
        }
        self.two_engel_witness(|z| central[z]).is_none()
    }

    fn two_engel_witness(&self, ok: impl Fn(usize) -> bool) -> Option<(usize, usize)> {
        self.elements()
            .flat_map(|x| self.elements().map(move |y| (x, y)))
            .find(|&(x, y)| !ok(self.comm(self.comm(x, y), y)))
    }

    /// Length of the lower central series, or `None` if it stalls above 1.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let all: Vec<usize> = self.elements().collect();
        let mut term = all.clone();
        let mut class = 0;
        while term.len() > 1 {
            let next = self.commutator_of(&term, &all);
            if next.len() == term.len() {
                return None;
            }
            term = next;
            class += 1;
        }
        Some(class)
    }
}

#[cfg(test)]
mod tests {
    use crate::group::*;

    #[test]
    fn q8_suite() {
        let inv = quaternion8().invariants_suite();
        assert_eq!(inv.nilpotency_class, Some(2));
        assert!(inv.is_2_engel);
        assert!(inv.is_central_by_2_engel);
        assert_eq!(inv.center.len(), 2);
    }

    #[test]
    fn s3_is_not_central_by_2_engel() {
        let g = symmetric(3).unwrap();
        let inv = g.invariants_suite();
        assert!(!inv.is_central_by_2_engel);
        assert_eq!(inv.center, vec![0]);
        assert_eq!(inv.nilpotency_class, None);
    }

    #[test]
    fn a5_is_perfect_and_all_commutators() {
        let inv = alternating(5).unwrap().invariants_suite();
        assert!(inv.is_perfect);
        assert!(inv.every_element_commutator);
    }

    #[test]
    fn heisenberg_5_has_class_2() {
        let g = heisenberg_mod_p(5).unwrap();
        assert_eq!(g.nilpotency_class(), Some(2));
        assert_eq!(cyclic(1).unwrap().nilpotency_class(), Some(0));
        assert_eq!(cyclic(6).unwrap().nilpotency_class(), Some(1));
    }

    #[test]
    fn central_by_2_engel_equals_2_engel_of_central_quotient() {
        let groups = [
            symmetric(3).unwrap(),
            symmetric(4).unwrap(),
            dihedral(4).unwrap(),
            dihedral(5).unwrap(),
            quaternion8(),
            alternating(4).unwrap(),
            extraspecial27(9).unwrap(),
        ];
        for g in groups {
            let z = g.center();
            let (q, _) = g.quotient(&z).unwrap();
            assert_eq!(q.order() * z.len(), g.order());
            assert_eq!(g.is_central_by_2_engel(), q.is_2_engel(), "{g:?}");
        }
    }
}
