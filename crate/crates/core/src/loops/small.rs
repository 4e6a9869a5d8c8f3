use std::collections::HashSet;

use super::RightLoopTable;

/// Largest order searched by [`find_small_loop`].
pub const SMALL_LOOP_CAP: usize = 6;

/// Lexicographically least table over relabelings fixing the identity.
pub fn canonical_form(s: &RightLoopTable) -> Vec<u8> {
    let n = s.order();
    let mut best: Option<Vec<u8>> = None;
    let mut rest: Vec<usize> = (1..n).collect();
    let mut perm = vec![0usize; n];
    permute(&mut rest, 0, &mut |p| {
        perm[0] = 0;
        perm[1..].copy_from_slice(p);
        // perm maps old labels to new ones.
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let t: Vec<u8> = (0..n * n)
            .map(|k| perm[s.op(inv[k / n], inv[k % n])] as u8)
            .collect();
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    });
    best.unwrap_or_default()
}

fn permute(v: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Enumerates right loops of order `1..=max_order` (identity 0), one per
/// isomorphism class, and returns the first satisfying `pred`.
pub fn find_small_loop(max_order: usize, mut pred: impl FnMut(&RightLoopTable) -> bool) -> Option<RightLoopTable> {
    for n in 1..=max_order.min(SMALL_LOOP_CAP) {
        // Column a is x ↦ x∘a: a permutation sending 0 to a.
        let columns: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|a| {
                let mut out = Vec::new();
                let mut rest: Vec<usize> = (0..n).filter(|&x| x != a).collect();
                permute(&mut rest, 0, &mut |p| {
                    let mut col = vec![a];
                    col.extend_from_slice(p);
                    // Row 0 fixed by col[0] = a; column 0 must be the identity.
                    out.push(col);
                });
                if a == 0 {
                    out.retain(|c| c.iter().enumerate().all(|(i, &x)| i == x));
                }
                out
            })
            .collect();
        let mut seen = HashSet::new();
        let mut idx = vec![0usize; n];
        'tables: loop {
            let s = RightLoopTable::from_fn((0..n).map(|x| x.to_string()).collect(), |x, a| columns[a][idx[a]][x])
                .expect("columns are permutations with identity 0");
            if seen.insert(canonical_form(&s)) && pred(&s) {
                return Some(s);
            }
            let mut k = n;
            loop {
                if k == 0 {
                    break 'tables;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < columns[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let z4 = crate::group::cyclic(4).unwrap();
        let a = RightLoopTable::from_group(&z4);
        let swap = [0, 3, 2, 1];
        let b = RightLoopTable::from_fn(a.labels().to_vec(), |x, y| swap[a.op(swap[x], swap[y])]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn class_counts_match_brute_force() {
        // Isomorphism classes of right loops with identity, by order; counted
        // independently with a naive enumerate-and-canonicalize script.
        let mut counts = [0usize; 5];
        let none = find_small_loop(4, |s| {
            counts[s.order()] += 1;
            false
        });
        assert!(none.is_none());
        assert_eq!(counts, [0, 1, 1, 3, 44]);
    }

    #[test]
    fn finds_loop_with_non_automorphic_inner_map() {
        let s = find_small_loop(5, |s| !s.is_right_gyrogroup().inner_maps_are_automorphisms).unwrap();
        let r = s.is_right_gyrogroup();
        assert!(!r.verdict());
        let (y, z, a, b) = r.automorphism_witness.unwrap();
        let f = s.inner_map(y, z);
        assert_ne!(f[s.op(a, b)], s.op(f[a], f[b]));
    }
}
