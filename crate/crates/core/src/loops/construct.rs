use serde::Serialize;

use super::RightLoopTable;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupMap};

/// `x ∘ₙ y = y⁻ⁿ x yⁿ⁺¹`, with `n` reduced modulo the exponent.
pub fn circ_n(g: &FiniteGroup, n: i64) -> RightLoopTable {
    let n = n.rem_euclid(g.exponent() as i64);
    RightLoopTable::from_fn(g.labels().to_vec(), |x, y| {
        let a = g.pow(y, n);
        g.mul(g.mul(g.inv(a), x), g.mul(a, y))
    })
    .expect("∘ₙ is a right loop")
}

/// Which of the two centrality conditions on `λ` failed, and where.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LambdaWitness {
    /// `λ(x⁻¹)λ(x) ∉ Z(G)`.
    NotInverseClosed { x: usize },
    /// `λ(b⁻¹xb)·b⁻¹λ(x)⁻¹b ∉ Z(G)`.
    NotEquivariant { x: usize, b: usize },
}

#[derive(Clone, Debug)]
pub struct LambdaLoop {
    pub table: RightLoopTable,
    /// Both centrality conditions hold; the loop is then a right gyro-group.
    pub valid: bool,
    pub witness: Option<LambdaWitness>,
}

/// The loop `x∘y = λ(y)⁻¹ x λ(y) y` induced by `λ : G → G` with `λ(e) = e`.
///
/// This agrees with `λ(y⁻¹) x λ(y) y` whenever `λ(y⁻¹)λ(y)` is central, and
/// unlike that form it always has `e` as a two-sided identity.
pub fn lambda_loop(g: &FiniteGroup, lam: &GroupMap) -> Result<LambdaLoop> {
    if lam.domain() != g || lam.codomain() != g {
        return Err(Error::InvalidMap("λ must map G to G".into()));
    }
    if !lam.preserves_identity() {
        return Err(Error::IdentityNotPreserved);
    }
    let l = |x: usize| lam.apply(x);
    let mut central = vec![false; g.order()];
    for z in g.center() {
        central[z] = true;
    }
    let mut witness = g
        .elements()
        .find(|&x| !central[g.mul(l(g.inv(x)), l(x))])
        .map(|x| LambdaWitness::NotInverseClosed { x });
    if witness.is_none() {
        witness = g
            .elements()
            .flat_map(|x| g.elements().map(move |b| (x, b)))
            .find(|&(x, b)| {
                let lhs = l(g.conj(x, b));
                !central[g.mul(lhs, g.conj(g.inv(l(x)), b))]
            })
            .map(|(x, b)| LambdaWitness::NotEquivariant { x, b });
    }
    let table = RightLoopTable::from_fn(g.labels().to_vec(), |x, y| {
        let a = l(y);
        g.mul(g.mul(g.inv(a), x), g.mul(a, y))
    })?;
    Ok(LambdaLoop {
        table,
        valid: witness.is_none(),
        witness,
    })
}

/// First `(x, y, z)` violating `(xy)∘₁z = xᶻ(y∘₁z)` or
/// `x∘₁(yz) = (xʸ∘₁z)yᶻ`, where `xᶻ = z⁻¹xz`.
pub fn trivial_relations_witness(g: &FiniteGroup) -> Option<(usize, usize, usize)> {
    let c = |x: usize, y: usize| g.mul(g.mul(g.inv(y), x), g.mul(y, y));
    for x in g.elements() {
        for y in g.elements() {
            let xy = g.mul(x, y);
            for z in g.elements() {
                let first = c(xy, z) == g.mul(g.conj(x, z), c(y, z));
                let second = c(x, g.mul(y, z)) == g.mul(c(g.conj(x, y), z), g.conj(y, z));
                if !(first && second) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn identity_laws() {
        let g = symmetric(3).unwrap();
        for n in -2..=2 {
            let s = circ_n(&g, n);
            for x in g.elements() {
                assert_eq!(s.op(x, 0), x);
                assert_eq!(s.op(0, x), x);
            }
        }
    }

    #[test]
    fn q8_circ1_reverses_products() {
        let q = quaternion8();
        let s = circ_n(&q, 1);
        for x in q.elements() {
            for y in q.elements() {
                assert_eq!(s.op(x, y), q.mul(y, x));
            }
        }
    }

    #[test]
    fn circ0_is_the_group() {
        let g = alternating(4).unwrap();
        let s = circ_n(&g, 0);
        assert_eq!(s.table(), g.table());
        assert_eq!(circ_n(&g, 6).table(), g.table());
    }

    #[test]
    fn constant_lambda_gives_the_group() {
        let g = dihedral(4).unwrap();
        let lam = GroupMap::trivial(&g, &g);
        let l = lambda_loop(&g, &lam).unwrap();
        assert!(l.valid);
        assert_eq!(l.table.table(), g.table());
    }

    #[test]
    fn power_lambdas_are_valid_and_match_circ_n() {
        let g = symmetric(4).unwrap();
        for n in -3..=3 {
            let lam = GroupMap::from_fn(&g, &g, |x| g.pow(x, n)).unwrap();
            let l = lambda_loop(&g, &lam).unwrap();
            assert!(l.valid, "n = {n}");
            assert_eq!(l.table.table(), circ_n(&g, n).table());
        }
    }

    #[test]
    fn lambda_must_fix_identity() {
        let g = cyclic(3).unwrap();
        let lam = GroupMap::from_fn(&g, &g, |_| 1).unwrap();
        assert_eq!(lambda_loop(&g, &lam).unwrap_err(), Error::IdentityNotPreserved);
    }

    #[test]
    fn s3_lambda_violating_inverse_condition() {
        let g = symmetric(3).unwrap();
        let c = g.element_orders().iter().position(|&o| o == 3).unwrap();
        let lam = GroupMap::from_fn(&g, &g, |x| if x == c { c } else { 0 }).unwrap();
        let l = lambda_loop(&g, &lam).unwrap();
        assert!(!l.valid);
        match l.witness.unwrap() {
            LambdaWitness::NotInverseClosed { x } => {
                let v = g.mul(lam.apply(g.inv(x)), lam.apply(x));
                assert!(!g.center().contains(&v));
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn s3_lambda_swapping_three_cycles_is_inversion() {
        // Swapping the two 3-cycles and fixing the rest is x ↦ x⁻¹ on S3.
        let g = symmetric(3).unwrap();
        let lam = GroupMap::from_fn(&g, &g, |x| if g.element_order(x) == 3 { g.inv(x) } else { x }).unwrap();
        assert!(g.elements().all(|x| lam.apply(x) == g.inv(x)));
        assert!(lambda_loop(&g, &lam).unwrap().valid);
    }

    #[test]
    fn trivial_relations_hold_in_small_groups() {
        for g in [symmetric(3).unwrap(), quaternion8(), dihedral(4).unwrap(), alternating(4).unwrap()] {
            assert_eq!(trivial_relations_witness(&g), None);
        }
    }
}
