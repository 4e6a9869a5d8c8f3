use std::collections::{BTreeSet, VecDeque};

use gyro_core::catalog::{group_entry_json, parse_catalog, Catalog};
use gyro_core::cohomology::{cocycle_spaces, AbstractKernel, Cochain2};
use gyro_core::group::{cyclic, direct_product};
use gyro_core::linalg::{smith_mod, Lattice, Presentation};
use gyro_core::loops::circ_n;
use gyro_core::morphism::{is_gyro_hom, Criterion};
use gyro_core::square::boxed_square;
use gyro_core::{FiniteGroup, GroupMap, Permutation};
use num_bigint::BigInt;
use proptest::prelude::*;

/// `|Z_N^c / span(rows)|` by breadth-first closure.
fn brute_quotient_order(rows: &[Vec<i64>], c: usize, n: i64) -> u64 {
    let mut seen = BTreeSet::from([vec![0; c]]);
    let mut queue = VecDeque::from([vec![0; c]]);
    while let Some(v) = queue.pop_front() {
        for r in rows {
            let w: Vec<i64> = v.iter().zip(r).map(|(a, b)| (a + b).rem_euclid(n)).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    (n as u64).pow(c as u32) / seen.len() as u64
}

fn relations() -> impl Strategy<Value = (usize, i64, Vec<Vec<i64>>)> {
    (1usize..=3, 2i64..=12).prop_flat_map(|(c, n)| {
        (Just(c), Just(n), prop::collection::vec(prop::collection::vec(-20i64..20, c), 0..4))
    })
}

fn small_groups() -> Vec<FiniteGroup> {
    Catalog::builtin().up_to(12).cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_invariants_give_the_quotient((c, n, rows) in relations()) {
        let snf = smith_mod(&rows, c, &n);
        let inv = snf.invariants();
        prop_assert!(inv.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert!(inv.iter().all(|d| n % d == 0));
        prop_assert_eq!(inv.iter().product::<i64>() as u64, brute_quotient_order(&rows, c, n));
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let inv_big = smith_mod(&big, c, &BigInt::from(n)).invariants();
        prop_assert_eq!(inv_big, inv.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>());
    }

    #[test]
    fn lattice_index_and_coordinates((c, n, rows) in relations(), v in prop::collection::vec(-50i64..50, 3)) {
        let l = Lattice::from_generators(c, n, rows.clone());
        for r in &rows {
            prop_assert!(l.contains(r));
        }
        let whole = Lattice::whole(c, n);
        let q = whole.quotient(&l).unwrap();
        prop_assert_eq!(q.order(), num_bigint::BigUint::from(brute_quotient_order(&rows, c, n)));
        let v = &v[..c];
        let coords = q.coordinates(v).unwrap();
        let back = q.element(&coords);
        let diff: Vec<i64> = back.iter().zip(v).map(|(a, b)| a - b).collect();
        prop_assert!(l.contains(&diff));
        prop_assert!(whole.contains_lattice(&l));
        prop_assert_eq!(l.sum(&whole), whole);
    }

    #[test]
    fn presentation_order_matches((c, n, rows) in relations()) {
        let mut p = Presentation::new(c, n);
        for r in &rows {
            p.relate(r.iter().enumerate().map(|(g, &x)| (g, x)));
        }
        let s = p.simplify();
        prop_assert_eq!(s.order(), num_bigint::BigUint::from(brute_quotient_order(&rows, c, n)));
    }

    #[test]
    fn circ_n_is_a_right_gyrogroup(i in 0usize..64, n in -3i64..=3) {
        let groups = small_groups();
        let g = &groups[i % groups.len()];
        let s = circ_n(g, n);
        prop_assert!(s.is_right_gyrogroup().verdict(), "{} n={}", g.name(), n);
        if n == 0 || g.is_abelian() {
            prop_assert!(s.is_associative());
        }
    }

    #[test]
    fn gyro_hom_criteria_agree(i in 0usize..64, j in 0usize..64, seed in prop::collection::vec(0usize..1000, 12)) {
        let groups = small_groups();
        let (k, g) = (&groups[i % groups.len()], &groups[j % groups.len()]);
        let values: Vec<usize> = k.elements().map(|x| seed[x] % g.order()).collect();
        let f = GroupMap::new(k.clone(), g.clone(), values).unwrap();
        let verdicts: Vec<bool> = Criterion::ALL.iter().map(|&c| is_gyro_hom(&f, c).verdict).collect();
        prop_assert!(verdicts.iter().all(|&v| v == verdicts[0]), "{:?}", verdicts);
        if f.is_homomorphism() {
            prop_assert!(verdicts[0]);
        }
    }

    #[test]
    fn coboundaries_are_trivial_cocycles(i in 0usize..5, j in 0usize..3, seed in prop::collection::vec(0usize..1000, 12)) {
        let z = |n| cyclic(n).unwrap();
        let ks = [z(2), z(3), z(4), direct_product(&z(2), &z(2)).unwrap(), gyro_core::group::symmetric(3).unwrap()];
        let hs = [z(2), z(3), z(4)];
        let (k, h) = (&ks[i], &hs[j]);
        let spaces = cocycle_spaces(&AbstractKernel::trivial(k, h).unwrap()).unwrap();
        let mut g: Vec<usize> = k.elements().map(|x| seed[x] % h.order()).collect();
        g[0] = 0;
        let f = spaces.coboundary(&g);
        prop_assert!(f.is_normalized());
        prop_assert!(spaces.is_cocycle(&f));
        prop_assert!(spaces.equivalent(&f, &Cochain2::zero(k.order())));
    }

    #[test]
    fn h2_classes_add(i in 0usize..4, a in prop::collection::vec(0i64..12, 4), b in prop::collection::vec(0i64..12, 4)) {
        let z = |n| cyclic(n).unwrap();
        let ks = [z(4), direct_product(&z(2), &z(2)).unwrap(), direct_product(&z(2), &z(4)).unwrap(), direct_product(&z(3), &z(3)).unwrap()];
        let h = if i == 3 { z(3) } else { z(2) };
        let spaces = cocycle_spaces(&AbstractKernel::trivial(&ks[i], &h).unwrap()).unwrap();
        let inv = spaces.h2_invariants().to_vec();
        let ca: Vec<i64> = inv.iter().zip(&a).map(|(d, x)| x % d).collect();
        let cb: Vec<i64> = inv.iter().zip(&b).map(|(d, x)| x % d).collect();
        let (f, g) = (spaces.h2_element(&ca), spaces.h2_element(&cb));
        prop_assert!(spaces.is_cocycle(&f));
        let sum = spaces.add(&f, &g);
        let expect: Vec<i64> = inv.iter().zip(ca.iter().zip(&cb)).map(|(d, (x, y))| (x + y) % d).collect();
        let got: Vec<i64> = spaces.h2_class(&sum).unwrap().iter().zip(&inv).map(|(x, d)| x.rem_euclid(*d)).collect();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn permutation_inverse_and_composition(p in Just((0..7).collect::<Vec<usize>>()).prop_shuffle(), q in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
        let (p, q) = (Permutation::from_images(p).unwrap(), Permutation::from_images(q).unwrap());
        prop_assert!(p.then(&p.inverse()).is_identity());
        let pq = p.then(&q);
        prop_assert!((0..7).all(|x| pq.apply(x) == q.apply(p.apply(x))));
        prop_assert_eq!(pq.inverse(), q.inverse().then(&p.inverse()));
    }

    #[test]
    fn cyclic_groups_have_trivial_boxed_square(n in 1usize..=16) {
        prop_assert!(boxed_square(&cyclic(n).unwrap()).unwrap().is_trivial());
    }
}

#[test]
fn catalog_entries_round_trip_through_json() {
    let c = Catalog::builtin();
    for e in c.entries() {
        let text = serde_json::to_string(&group_entry_json(&e.group)).unwrap();
        let back = parse_catalog(&text, "round-trip").unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].name, e.name);
        assert_eq!(back[0].group.canonical_bytes(), e.group.canonical_bytes());
    }
}

#[test]
fn every_criterion_rejects_maps_moving_the_identity() {
    let (z2, z4) = (cyclic(2).unwrap(), cyclic(4).unwrap());
    let f = GroupMap::new(z2, z4, vec![2, 2]).unwrap();
    for c in Criterion::ALL {
        assert!(!is_gyro_hom(&f, c).verdict, "{c:?}");
    }
}
