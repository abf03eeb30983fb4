//! Exact arithmetic for elliptic constant cycle curves on Kummer surfaces.
//!
//! The crate computes, with arbitrary-precision integers and no floating
//! point anywhere: Smith normal forms and linear congruences over Z and
//! Z/N, torsion points and zero-cycle classes on elliptic curves presented
//! through their first homology, isogeny classes with their Kunneth (1,1)
//! tensors, the graded algebra of product cycles on triple products
//! E1 x E2 x E3, the torsion order engine for the fiber curves E_t of the
//! natural elliptic fibration on Kum(E1 x E2), and the rank-16 Kummer
//! lattice with its index and discriminant arithmetic.
//!
//! All core math is generic over the integer scalar via [`Scalar`]; the
//! aliases below fix the default arbitrary-precision instantiation.

pub mod chow;
pub mod elliptic;
mod error;
pub mod isogeny;
pub mod jacobian;
pub mod kummer;
pub mod lattice;

pub use error::Error;

use num_integer::Integer;
use num_traits::{NumAssign, Signed};
use std::fmt;

/// Integer scalar the whole crate is generic over.
///
/// [`Int`] is the intended instantiation; fixed-width types such as `i64`
/// also qualify and are convenient for exhaustive sweeps in tests, at the
/// caller's own risk of overflow.
pub trait Scalar:
    Integer
    + Signed
    + NumAssign
    + Clone
    + From<i32>
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + NumAssign
        + Clone
        + From<i32>
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Default arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Exact rational number over [`Int`].
pub type Rat = num_rational::Ratio<Int>;

pub type IntegerMatrix = lattice::Mat<Int>;
pub type IntegerLattice = lattice::Lattice<Int>;
pub type SnfDecomposition = lattice::SnfDecomposition<Int>;
pub type TorsionPoint = elliptic::TorsionPoint<Int>;
pub type ZeroCycleClass = elliptic::ZeroCycleClass<Int>;
pub type EllipticCurveLattice = elliptic::EllipticCurveLattice<Int>;
pub type IsogenyClass = isogeny::IsogenyClass<Int>;
pub type H2Tensor = isogeny::H2Tensor<Int>;
pub type HomGroup = isogeny::HomGroup<Int>;
pub type ProductCycleClass = chow::ProductCycleClass<Int>;
pub type ProductDivisorClass = chow::ProductDivisorClass<Int>;
pub type TorsionTensorClass = jacobian::TorsionTensorClass<Int>;
pub type CurvePairSpec = jacobian::CurvePairSpec<Int>;
pub type OrderResult = jacobian::OrderResult<Int>;
pub type KummerLattice = kummer::KummerLattice<Int>;
