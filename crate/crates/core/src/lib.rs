//! Finite right loops, gyro-homomorphisms and gyro-cohomology of finite groups.
//!
//! Groups are dense index tables ([`group::FiniteGroup`]); right loops are
//! operation tables derived from them ([`loops::RightLoopTable`]). Abelian
//! group computations go through the integer lattice code in [`linalg`],
//! which is generic over the integer type.

pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod group;
pub mod linalg;
pub mod loops;
pub mod morphism;
pub mod regress;
pub mod search;
pub mod square;

pub use error::{Error, Result};
pub use group::{ExtensionRecord, FiniteGroup, GroupMap, Permutation};

/// Lattice over machine integers.
pub type Lattice64 = linalg::Lattice<i64>;
/// Lattice over arbitrary-precision integers.
pub type LatticeBig = linalg::Lattice<num_bigint::BigInt>;
/// Sparse presentation over machine integers.
pub type Presentation64 = linalg::Presentation<i64>;
/// Sparse presentation over arbitrary-precision integers.
pub type PresentationBig = linalg::Presentation<num_bigint::BigInt>;
