//! Exact-arithmetic dictionary between multigraded polynomial rings with a
//! chosen irrelevant subset ("conical rings") and simplicial systems of fans.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! there is no floating point anywhere in the crate.
//!
//! The modules build on each other bottom-up:
//!
//! * [`lattice`]: integer matrices, Hermite and Smith normal forms, kernels,
//!   cokernels and saturation.
//! * [`grading`]: finitely generated abelian groups, graded rings, relevance
//!   and the irrelevant ideal.
//! * [`cones`]: rational polyhedral cones via double description.
//! * [`fans`]: the system of fans attached to a conical ring.
//! * [`cox`]: the reverse construction from rays back to a grading.
//! * [`maps`]: morphisms of graded rings and maps of systems of fans.
//! * [`quotient`]: subtorus quotients and invariant semigroups.

pub mod cones;
pub mod cox;
pub mod error;
pub mod fans;
pub mod grading;
pub mod lattice;
pub mod maps;
pub mod quotient;
pub mod random;

pub use cones::{Cone, HalfspaceRep};
pub use cox::RayMatrix;
pub use error::{Error, ErrorKind, Result};
pub use fans::{GluingClass, GluingData, MaximalCone, SystemOfFans};
pub use grading::{ConicalRing, Degree, FgAbGroup, GradedPolyRing, Monomial};
pub use lattice::{IntegerMatrix, SnfResult, Sublattice};
pub use maps::{Classification, FanMap, GroupHom, RationalConeMap, RingMorphism};
pub use num_bigint::BigInt;
pub use quotient::{AffineSemigroup, QuotientPiece, QuotientSystem};

/// Shorthand for building a `BigInt` vector from machine integers.
pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
