//! Integer linear algebra for finite abelian groups.
//!
//! Every group handled here is a quotient of `Z^n` by a full-rank lattice that
//! contains `N·Z^n` for a known modulus `N`. That bound lets all arithmetic be
//! reduced modulo `N`, so entries never grow past `N²` during elimination.
//!
//! The code is generic over the integer type through [`Int`]; the crate root
//! exposes `i64` and `BigInt` aliases.


mod lattice;
mod presentation;
mod smith;


pub use lattice::{Lattice, Quotient};
pub use presentation::{Presentation, SimplifiedPresentation};
pub use smith::{smith_mod, SmithForm};

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer scalars usable by the lattice and Smith-form routines.
pub trait Int:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Representative of `a` in `[0, n)`.
pub(crate) fn reduce<T: Int>(a: &T, n: &T) -> T {
    a.mod_floor(n)
}

/// `(g, x, y)` with `x·a + y·b = g = gcd(a, b) ≥ 0`.
pub(crate) fn egcd<T: Int>(a: &T, b: &T) -> (T, T, T) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of `a` modulo `n`, if it exists.
pub(crate) fn mod_inverse<T: Int>(a: &T, n: &T) -> Option<T> {
    let (g, x, _) = egcd(&reduce(a, n), n);
    if g.is_one() {
        Some(reduce(&x, n))
    } else {
        None
    }
}
