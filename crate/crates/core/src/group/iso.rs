use super::{FiniteGroup, GroupMap};
use crate::search::{generating_sequence, HomSearch, SearchOutcome};

/// Per-element profile preserved by isomorphisms: order and centralizer size.
fn profile(g: &FiniteGroup) -> Vec<(usize, usize)> {
    g.elements()
        .map(|x| (g.element_order(x), g.centralizer_size(x)))
        .collect()
}

/// Finds an isomorphism `g → h`, or certifies there is none.
///
/// Returns the search outcome alongside the first witness in canonical order.
pub fn isomorphism_search(g: &FiniteGroup, h: &FiniteGroup) -> (Option<GroupMap>, SearchOutcome) {
    let empty = SearchOutcome {
        solutions: Vec::new(),
        nodes: 0,
    };
    if g.order() != h.order() {
        return (None, empty);
    }
    let (pg, ph) = (profile(g), profile(h));
    let (mut sg, mut sh) = (pg.clone(), ph.clone());
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return (None, empty);
    }
    let mut pref: Vec<usize> = g.elements().collect();
    pref.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let gens = generating_sequence(g, &pref);
    let out = HomSearch::new(g, h, gens)
        .allowed(|a, b| pg[a] == ph[b])
        .injective(true)
        .run(1)
        .expect("no node cap set");
    let map = out
        .first()
        .map(|s| GroupMap::new(g.clone(), h.clone(), s.clone()).expect("values in range"));
    (map, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn klein_four_is_not_cyclic() {
        let z2 = cyclic(2).unwrap();
        let v4 = direct_product(&z2, &z2).unwrap();
        let z4 = cyclic(4).unwrap();
        assert!(isomorphism_search(&v4, &z4).0.is_none());
    }

    #[test]
    fn witness_is_an_isomorphism() {
        let d3 = dihedral(3).unwrap();
        let s3 = symmetric(3).unwrap();
        let f = isomorphism_search(&d3, &s3).0.unwrap();
        assert!(f.is_homomorphism() && f.is_bijective());
    }

    #[test]
    fn q8_and_d4_are_distinguished() {
        assert!(isomorphism_search(&quaternion8(), &dihedral(4).unwrap()).0.is_none());
        let e27 = extraspecial27(3).unwrap();
        let m27 = extraspecial27(9).unwrap();
        assert!(isomorphism_search(&e27, &m27).0.is_none());
    }

    #[test]
    fn z6_is_z2_times_z3() {
        let p = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        let (f, _) = isomorphism_search(&p, &cyclic(6).unwrap());
        assert!(f.unwrap().is_bijective());
    }
}
