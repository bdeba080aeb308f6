//! Exact-arithmetic toolkit for immaculate line bundles on smooth toric
//! Deligne-Mumford stacks.
//!
//! Everything is computed over arbitrary-precision integers and rationals:
//! Smith normal forms and Picard presentations, reduced simplicial homology,
//! forbidden cones and the Thomsen zonotope, sheaf-cohomology dimensions via
//! lattice-point counts, and the decision procedures for whether the set of
//! immaculate line bundles is infinite together with its asymptotic
//! directions.

pub mod asymptotics;
pub mod cohomology;
pub mod error;
pub mod fan;
pub mod homology;
pub mod lp;
pub mod matrix;
pub mod picard;
pub mod polyhedra;

pub use error::Error;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used throughout the crate.
pub type Rat = num_rational::BigRational;

#[cfg(test)]
pub(crate) fn int(v: i64) -> Int {
    Int::from(v)
}

pub(crate) fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Exact dot product of a rational functional with a rational vector.
pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot product dimension mismatch");
    let mut acc = Rat::from_integer(Int::from(0));
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub(crate) fn int_dot(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len(), "dot product dimension mismatch");
    let mut acc = Int::from(0);
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}
