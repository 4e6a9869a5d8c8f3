//! Named constructions. Each documents its element order; the identity is
//! always index 0.

use super::{FiniteGroup, Permutation};
use crate::error::{Error, Result};

/// `Z/n`, element `k` at index `k`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > super::TABLE_CAP {
        return Err(Error::InvalidParameter(format!("cyclic({n})")));
    }
    let labels = (0..n).map(|k| k.to_string()).collect();
    Ok(FiniteGroup::from_fn_unchecked(&format!("Z{n}"), labels, |a, b| (a + b) % n))
}

/// `G × H`, pair `(g, h)` at index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let m = h.order();
    let n = g.order() * m;
    if n > u16::MAX as usize + 1 {
        return Err(Error::OrderCapExceeded { cap: u16::MAX as usize + 1 });
    }
    let labels = (0..n)
        .map(|i| format!("({},{})", g.label(i / m), h.label(i % m)))
        .collect();
    Ok(FiniteGroup::from_fn_unchecked(
        &format!("{}x{}", g.name(), h.name()),
        labels,
        |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m),
    ))
}

/// Dihedral group of order `2n`; `r^i s^j` at index `i + n·j`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 || 2 * n > super::TABLE_CAP {
        return Err(Error::InvalidParameter(format!("dihedral({n})")));
    }
    let labels = (0..2 * n)
        .map(|x| match (x % n, x / n) {
            (0, 0) => "e".to_string(),
            (i, 0) => format!("r{i}"),
            (0, _) => "s".to_string(),
            (i, _) => format!("r{i}s"),
        })
        .collect();
    Ok(FiniteGroup::from_fn_unchecked(&format!("D{n}"), labels, |a, b| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        let k = if j == 1 { (n - k) % n } else { k };
        (i + k) % n + n * ((j + l) % 2)
    }))
}

/// `Q8` ordered `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> FiniteGroup {
    // Units 1,i,j,k as 0..4 with sign; (u,s) at index 2u + s.
    let unit = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (x, 0),
            (x, y) if x == y => (0, 1),
            (1, 2) => (3, 0),
            (2, 3) => (1, 0),
            (3, 1) => (2, 0),
            (2, 1) => (3, 1),
            (3, 2) => (1, 1),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        }
    };
    let names = ["1", "i", "j", "k"];
    let labels = (0..8)
        .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]))
        .collect();
    FiniteGroup::from_fn_unchecked("Q8", labels, |a, b| {
        let (u, s) = unit(a / 2, b / 2);
        2 * u + (s + a % 2 + b % 2) % 2
    })
}

/// Unitriangular 3×3 matrices over `Z/p`.
///
/// `(a1, a2, a3)` is the matrix with entries 12, 13, 23 equal to `a1, a2, a3`,
/// stored at index `a1·p² + a2·p + a3`. The product is
/// `(a1 + b1, a2 + b2 + a1·b3, a3 + b3)`.
pub fn heisenberg_mod_p(p: usize) -> Result<FiniteGroup> {
    if !is_prime(p) || p * p * p > super::TABLE_CAP {
        return Err(Error::InvalidParameter(format!("heisenberg_mod_p({p})")));
    }
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let labels = (0..p * p * p)
        .map(|x| {
            let (a1, a2, a3) = split(x);
            format!("U({a1},{a2},{a3})")
        })
        .collect();
    Ok(FiniteGroup::from_fn_unchecked(&format!("U3Z{p}"), labels, |a, b| {
        let (a1, a2, a3) = split(a);
        let (b1, b2, b3) = split(b);
        ((a1 + b1) % p) * p * p + ((a2 + b2 + a1 * b3) % p) * p + (a3 + b3) % p
    }))
}

/// Nonabelian groups of order 27.
///
/// Exponent 3 gives the Heisenberg group mod 3. Exponent 9 gives `Z9 ⋊ Z3`
/// with `(a, b)(c, d) = (a + 4^b c, b + d)`, `(a, b)` at index `3a + b`.
pub fn extraspecial27(exponent: usize) -> Result<FiniteGroup> {
    match exponent {
        3 => Ok(heisenberg_mod_p(3)?.named("E27")),
        9 => {
            let labels = (0..27).map(|x| format!("({},{})", x / 3, x % 3)).collect();
            let pow4 = [1, 4, 7];
            Ok(FiniteGroup::from_fn_unchecked("M27", labels, |x, y| {
                let (a, b) = (x / 3, x % 3);
                let (c, d) = (y / 3, y % 3);
                3 * ((a + pow4[b] * c) % 9) + (b + d) % 3
            }))
        }
        _ => Err(Error::InvalidParameter(format!("extraspecial27({exponent})"))),
    }
}

/// `S_n` on `{0, …, n-1}` generated by `(0 1)` and `(0 1 … n-1)`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 7 {
        return Err(Error::InvalidParameter(format!("symmetric({n})")));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
        gens.push(Permutation::from_cycles(n, &[(0..n).collect()])?);
    }
    Ok(FiniteGroup::from_permutations(n, &gens)?.named(&format!("S{n}")))
}

/// `A_n` generated by the 3-cycles `(0 1 k)`.
pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 7 {
        return Err(Error::InvalidParameter(format!("alternating({n})")));
    }
    let gens = (2..n)
        .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]))
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteGroup::from_permutations(n, &gens)?.named(&format!("A{n}")))
}

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_produce_valid_groups() {
        let groups = [
            cyclic(1).unwrap(),
            cyclic(12).unwrap(),
            direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap(),
            dihedral(4).unwrap(),
            dihedral(5).unwrap(),
            quaternion8(),
            extraspecial27(3).unwrap(),
            extraspecial27(9).unwrap(),
            heisenberg_mod_p(5).unwrap(),
            symmetric(4).unwrap(),
            alternating(5).unwrap(),
        ];
        for g in &groups {
            g.validate().unwrap_or_else(|e| panic!("{g:?}: {e}"));
        }
    }

    #[test]
    fn orders_and_exponents() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(dihedral(4).unwrap().exponent(), 4);
        assert_eq!(quaternion8().exponent(), 4);
        let e27 = extraspecial27(3).unwrap();
        assert_eq!((e27.order(), e27.exponent(), e27.center().len()), (27, 3, 3));
        let m27 = extraspecial27(9).unwrap();
        assert_eq!((m27.order(), m27.exponent(), m27.center().len()), (27, 9, 3));
        assert!(!m27.is_abelian());
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(1).unwrap().order(), 1);
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion8();
        let (i, j, k) = (q.index_of("i").unwrap(), q.index_of("j").unwrap(), q.index_of("k").unwrap());
        let m1 = q.index_of("-1").unwrap();
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), q.index_of("-k").unwrap());
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.center(), vec![0, m1]);
    }

    #[test]
    fn heisenberg_matches_matrices() {
        let p = 5;
        let g = heisenberg_mod_p(p).unwrap();
        let mat = |x: usize| {
            let (a1, a2, a3) = (x / (p * p), (x / p) % p, x % p);
            [[1, a1, a2], [0, 1, a3], [0, 0, 1]]
        };
        for a in g.elements().step_by(7) {
            for b in g.elements() {
                let (x, y) = (mat(a), mat(b));
                let mut z = [[0usize; 3]; 3];
                for r in 0..3 {
                    for c in 0..3 {
                        z[r][c] = (0..3).map(|k| x[r][k] * y[k][c]).sum::<usize>() % p;
                    }
                }
                assert_eq!(mat(g.mul(a, b)), z);
            }
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(cyclic(0).is_err());
        assert!(heisenberg_mod_p(4).is_err());
        assert!(extraspecial27(5).is_err());
    }
}
