//! Elliptic curves presented through their rank-2 first homology.
//!
//! Only torsion data is modeled: a torsion point is a pair of exact
//! rationals in [0, 1) read in the H1 basis, and a zero-cycle class is a
//! (degree, Jacobian point) pair, which determines the class completely
//! on an elliptic curve. The intersection convention on the basis is
//! (v0 . v1) = +1.

use crate::{Error, Scalar};
use num_rational::Ratio;
use num_traits::Zero;
use std::ops::{Add, Neg, Sub};

/// Reduce an exact rational into [0, 1).
pub(crate) fn frac_mod_one<T: Scalar>(x: &Ratio<T>) -> Ratio<T> {
    x - x.floor()
}

/// d(n): n/2 for even n, n for odd n. The generic order of the fiber
/// constant cycle curve over an order-n torsion point.
pub fn d_of_n<T: Scalar>(n: &T) -> Result<T, Error> {
    if *n < T::one() {
        return Err(Error::NonpositiveN);
    }
    if n.is_even() {
        Ok(n.clone() / T::from(2))
    } else {
        Ok(n.clone())
    }
}

/// A torsion point in the H1 basis, coordinates in [0, 1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorsionPoint<T: Scalar> {
    coords: (Ratio<T>, Ratio<T>),
}

impl<T: Scalar> TorsionPoint<T> {
    pub fn new(a: Ratio<T>, b: Ratio<T>) -> Self {
        TorsionPoint {
            coords: (frac_mod_one(&a), frac_mod_one(&b)),
        }
    }

    /// The origin e, the unique point of order 1.
    pub fn origin() -> Self {
        TorsionPoint {
            coords: (Ratio::zero(), Ratio::zero()),
        }
    }

    /// The canonical order-n point (1/n, 0).
    pub fn canonical(n: &T) -> Result<Self, Error> {
        if *n < T::one() {
            return Err(Error::NonpositiveN);
        }
        Ok(TorsionPoint {
            coords: (Ratio::new(T::one(), n.clone()), Ratio::zero()),
        })
    }

    pub fn coords(&self) -> &(Ratio<T>, Ratio<T>) {
        &self.coords
    }

    /// Order of the point: the lcm of the reduced denominators.
    pub fn order(&self) -> T {
        self.coords.0.denom().lcm(self.coords.1.denom())
    }
}

/// See [`TorsionPoint::order`].
pub fn torsion_point_order<T: Scalar>(p: &TorsionPoint<T>) -> T {
    p.order()
}

/// A zero-cycle class: total degree plus the Abel-Jacobi image of the
/// degree-zero part, a point of (Q/Z)^2 stored in [0, 1)^2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZeroCycleClass<T: Scalar> {
    degree: T,
    aj: (Ratio<T>, Ratio<T>),
}

impl<T: Scalar> ZeroCycleClass<T> {
    pub fn new(degree: T, aj: (Ratio<T>, Ratio<T>)) -> Self {
        ZeroCycleClass {
            degree,
            aj: (frac_mod_one(&aj.0), frac_mod_one(&aj.1)),
        }
    }

    pub fn zero() -> Self {
        ZeroCycleClass {
            degree: T::zero(),
            aj: (Ratio::zero(), Ratio::zero()),
        }
    }

    /// The class of a single point.
    pub fn point(p: &TorsionPoint<T>) -> Self {
        ZeroCycleClass {
            degree: T::one(),
            aj: p.coords().clone(),
        }
    }

    /// The class of the origin [e].
    pub fn origin() -> Self {
        ZeroCycleClass {
            degree: T::one(),
            aj: (Ratio::zero(), Ratio::zero()),
        }
    }

    pub fn degree(&self) -> &T {
        &self.degree
    }

    pub fn aj(&self) -> &(Ratio<T>, Ratio<T>) {
        &self.aj
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_zero() && self.aj.0.is_zero() && self.aj.1.is_zero()
    }

    pub fn scale(&self, k: &T) -> Self {
        let kr = Ratio::from_integer(k.clone());
        ZeroCycleClass::new(
            self.degree.clone() * k.clone(),
            (&self.aj.0 * &kr, &self.aj.1 * &kr),
        )
    }

    /// Pushforward under the addition map: degrees multiply and the
    /// Jacobian points convolve.
    pub fn convolve(&self, other: &Self) -> Self {
        let d1 = Ratio::from_integer(self.degree.clone());
        let d2 = Ratio::from_integer(other.degree.clone());
        ZeroCycleClass::new(
            self.degree.clone() * other.degree.clone(),
            (
                &self.aj.0 * &d2 + &other.aj.0 * &d1,
                &self.aj.1 * &d2 + &other.aj.1 * &d1,
            ),
        )
    }
}

impl<T: Scalar> Add for ZeroCycleClass<T> {
    type Output = ZeroCycleClass<T>;
    fn add(self, rhs: Self) -> Self {
        ZeroCycleClass::new(
            self.degree + rhs.degree,
            (self.aj.0 + rhs.aj.0, self.aj.1 + rhs.aj.1),
        )
    }
}

impl<T: Scalar> Sub for ZeroCycleClass<T> {
    type Output = ZeroCycleClass<T>;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for ZeroCycleClass<T> {
    type Output = ZeroCycleClass<T>;
    fn neg(self) -> Self {
        ZeroCycleClass::new(-self.degree, (-self.aj.0, -self.aj.1))
    }
}

/// The class of k([t] - [e]): degree zero, Jacobian point k * t.
pub fn scaled_difference_class<T: Scalar>(k: &T, t: &TorsionPoint<T>) -> ZeroCycleClass<T> {
    (ZeroCycleClass::point(t) - ZeroCycleClass::origin()).scale(k)
}

/// Order of a degree-zero class in (Q/Z)^2: the lcm of the reduced
/// denominators of its Jacobian point. Every degree-zero class of this
/// torsion model has finite order.
pub fn class_order<T: Scalar>(c: &ZeroCycleClass<T>) -> Result<T, Error> {
    if !c.degree().is_zero() {
        return Err(Error::NonzeroDegree);
    }
    Ok(c.aj.0.denom().lcm(c.aj.1.denom()))
}

/// An elliptic curve presented by its H1 basis. `cm_data = (m, d)` means
/// the period lattice Zm + Z sqrt(d) of the CM family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurveLattice<T: Scalar> {
    label: String,
    basis_names: (String, String),
    cm_data: Option<(T, T)>,
}

impl<T: Scalar> EllipticCurveLattice<T> {
    pub fn new(label: impl Into<String>) -> Self {
        EllipticCurveLattice {
            label: label.into(),
            basis_names: ("v0".into(), "v1".into()),
            cm_data: None,
        }
    }

    pub fn with_cm(label: impl Into<String>, m: T, d: T) -> Result<Self, Error> {
        if m < T::one() || d > -T::one() {
            return Err(Error::InvalidCmParameters);
        }
        Ok(EllipticCurveLattice {
            label: label.into(),
            basis_names: ("v0".into(), "v1".into()),
            cm_data: Some((m, d)),
        })
    }

    pub fn with_basis_names(mut self, first: impl Into<String>, second: impl Into<String>) -> Self {
        self.basis_names = (first.into(), second.into());
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis_names(&self) -> (&str, &str) {
        (&self.basis_names.0, &self.basis_names.1)
    }

    pub fn cm_data(&self) -> Option<&(T, T)> {
        self.cm_data.as_ref()
    }

    pub fn has_cm(&self) -> bool {
        self.cm_data.is_some()
    }
}
