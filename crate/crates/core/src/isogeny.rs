//! Isogeny groups Hom(E1, E2) as 2x2 integer matrices on H1 bases, and
//! their Kunneth (1,1) tensors in H1(E1) (x) H1(E2).
//!
//! Conventions fixed once for the whole crate:
//! - row i of an isogeny matrix M gives f(v_i) in the w-basis;
//! - composition corresponds to matrix product, `f.then(g)` has matrix
//!   M_f * M_g;
//! - the Kunneth tensor is T(f) = v0 (x) f(v1) - v1 (x) f(v0), i.e.
//!   T[0][j] = M[1][j] and T[1][j] = -M[0][j], the expansion of the
//!   pushed fundamental class with orientation v0 ^ v1;
//! - the pairing is the bilinear extension of
//!   Q(x (x) y, x' (x) y') = -(x.x')(y.y') with (v0.v1) = (w0.w1) = 1,
//!   anchored by Q(T(id), T(id)) = -2.
//!
//! Only one global sign convention can be consistent, and this is the
//! one used everywhere; orders, contents and mod-2 solvability are all
//! invariant under a global sign flip of the tensors.

use crate::{Error, Scalar};
use num_traits::Zero;

/// A 2x2 matrix with entries in the scalar type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mat2<T> {
    pub e: [[T; 2]; 2],
}

impl<T: Scalar> Mat2<T> {
    pub fn new(e: [[T; 2]; 2]) -> Self {
        Mat2 { e }
    }

    pub fn from_i32(e: [[i32; 2]; 2]) -> Self {
        Mat2 {
            e: e.map(|row| row.map(T::from)),
        }
    }

    pub fn zero() -> Self {
        Self::from_i32([[0, 0], [0, 0]])
    }

    pub fn identity() -> Self {
        Self::from_i32([[1, 0], [0, 1]])
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(Zero::is_zero)
    }

    pub fn det(&self) -> T {
        self.e[0][0].clone() * self.e[1][1].clone() - self.e[0][1].clone() * self.e[1][0].clone()
    }

    pub fn trace(&self) -> T {
        self.e[0][0].clone() + self.e[1][1].clone()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Mat2::new([
            [
                self.e[0][0].clone() + rhs.e[0][0].clone(),
                self.e[0][1].clone() + rhs.e[0][1].clone(),
            ],
            [
                self.e[1][0].clone() + rhs.e[1][0].clone(),
                self.e[1][1].clone() + rhs.e[1][1].clone(),
            ],
        ])
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Mat2::from_fn(|i, j| {
            self.e[i][0].clone() * rhs.e[0][j].clone() + self.e[i][1].clone() * rhs.e[1][j].clone()
        })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Mat2::new([[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]])
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> Mat2<U> {
        Mat2::new([
            [f(&self.e[0][0]), f(&self.e[0][1])],
            [f(&self.e[1][0]), f(&self.e[1][1])],
        ])
    }

    /// Gcd of the four entries.
    pub fn content(&self) -> T {
        self.e
            .iter()
            .flatten()
            .fold(T::zero(), |acc, x| acc.gcd(x))
    }

    pub fn entries_row_major(&self) -> [T; 4] {
        [
            self.e[0][0].clone(),
            self.e[0][1].clone(),
            self.e[1][0].clone(),
            self.e[1][1].clone(),
        ]
    }
}

/// A homomorphism class in Hom(J(E_source), J(E_target)), presented by
/// its matrix on the H1 bases. The zero matrix is the zero class; any
/// nonzero class is an isogeny of degree |det|.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IsogenyClass<T: Scalar> {
    pub matrix: Mat2<T>,
    pub source: String,
    pub target: String,
}

impl<T: Scalar> IsogenyClass<T> {
    pub fn new(matrix: Mat2<T>, source: impl Into<String>, target: impl Into<String>) -> Self {
        IsogenyClass {
            matrix,
            source: source.into(),
            target: target.into(),
        }
    }

    /// An endomorphism class (source = target).
    pub fn endo(matrix: Mat2<T>, label: impl Into<String>) -> Self {
        let label = label.into();
        IsogenyClass::new(matrix, label.clone(), label)
    }

    pub fn identity(label: impl Into<String>) -> Self {
        Self::endo(Mat2::identity(), label)
    }

    pub fn zero(source: impl Into<String>, target: impl Into<String>) -> Self {
        IsogenyClass::new(Mat2::zero(), source, target)
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn scale(&self, k: &T) -> Self {
        IsogenyClass::new(self.matrix.scale(k), self.source.clone(), self.target.clone())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    /// `self` followed by `g`; matrices multiply as M_self * M_g.
    pub fn then(&self, g: &IsogenyClass<T>) -> Result<IsogenyClass<T>, Error> {
        if self.target != g.source {
            return Err(Error::CompositionMismatch);
        }
        Ok(IsogenyClass::new(
            self.matrix.mul(&g.matrix),
            self.source.clone(),
            g.target.clone(),
        ))
    }
}

/// |det M|, the degree of the isogeny (0 for the zero class).
pub fn degree<T: Scalar>(f: &IsogenyClass<T>) -> T {
    f.matrix.det().abs()
}

/// Matrix trace of an endomorphism; satisfies
/// trace(f) = deg(1 + f) - deg(f) - 1.
pub fn trace<T: Scalar>(f: &IsogenyClass<T>) -> Result<T, Error> {
    if !f.is_endomorphism() {
        return Err(Error::NotAnEndomorphism);
    }
    Ok(f.matrix.trace())
}

/// The graph of f decomposes as
/// [Gamma_f] = [E1 x e2] + deg(f) [e1 x E2] + [f];
/// returns the triple of coefficients (1, deg(f), f).
pub fn graph_decomposition<T: Scalar>(f: &IsogenyClass<T>) -> (T, T, IsogenyClass<T>) {
    (T::one(), degree(f), f.clone())
}

/// The (1,1) Kunneth component of the graph class, as coefficients of
/// v_i (x) w_j.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct H2Tensor<T> {
    pub coeffs: Mat2<T>,
}

impl<T: Scalar> H2Tensor<T> {
    pub fn new(coeffs: Mat2<T>) -> Self {
        H2Tensor { coeffs }
    }

    pub fn zero() -> Self {
        H2Tensor {
            coeffs: Mat2::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        H2Tensor::new(self.coeffs.add(&rhs.coeffs))
    }

    pub fn neg(&self) -> Self {
        H2Tensor::new(self.coeffs.neg())
    }

    pub fn scale(&self, k: &T) -> Self {
        H2Tensor::new(self.coeffs.scale(k))
    }
}

/// Tensors of graph classes have rank one over Q; the alias names that
/// use.
pub type RankOneTensor<T> = H2Tensor<T>;

/// T(f) = v0 (x) f(v1) - v1 (x) f(v0).
pub fn kunneth_tensor<T: Scalar>(f: &IsogenyClass<T>) -> H2Tensor<T> {
    kunneth_of_matrix(&f.matrix)
}

pub fn kunneth_of_matrix<T: Scalar>(m: &Mat2<T>) -> H2Tensor<T> {
    H2Tensor::new(Mat2::new([
        [m.e[1][0].clone(), m.e[1][1].clone()],
        [-m.e[0][0].clone(), -m.e[0][1].clone()],
    ]))
}

/// Bilinear extension of Q(x (x) y, x' (x) y') = -(x.x')(y.y') on the
/// symplectic bases; Q(T(id), T(id)) = -2.
pub fn tensor_pairing<T: Scalar>(a: &H2Tensor<T>, b: &H2Tensor<T>) -> T {
    let t = &a.coeffs.e;
    let s = &b.coeffs.e;
    -(t[0][0].clone() * s[1][1].clone()) + t[0][1].clone() * s[1][0].clone()
        + t[1][0].clone() * s[0][1].clone()
        - t[1][1].clone() * s[0][0].clone()
}

/// Gcd of the four tensor coefficients.
pub fn tensor_content<T: Scalar>(t: &H2Tensor<T>) -> T {
    t.coeffs.content()
}

/// Hom(E1, E2) presented by generators: zero (non-isogenous pair), rank
/// one (isogenous without CM), or rank two (CM).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomGroup<T: Scalar> {
    Zero,
    RankOne { generator: IsogenyClass<T> },
    RankTwo { generators: [IsogenyClass<T>; 2] },
}

impl<T: Scalar> HomGroup<T> {
    pub fn rank(&self) -> usize {
        match self {
            HomGroup::Zero => 0,
            HomGroup::RankOne { .. } => 1,
            HomGroup::RankTwo { .. } => 2,
        }
    }

    pub fn generators(&self) -> Vec<&IsogenyClass<T>> {
        match self {
            HomGroup::Zero => vec![],
            HomGroup::RankOne { generator } => vec![generator],
            HomGroup::RankTwo { generators } => generators.iter().collect(),
        }
    }
}

/// Generators of Hom(E1, E2) for the CM family E1 = C/(Zm + Z sqrt(d)),
/// E2 = C/(Z + Z sqrt(d)): phi_1 with matrix [[m, 0], [0, 1]] and
/// phi_sqrt(d) with matrix [[0, m], [d, 0]] on the bases v0 = m,
/// v1 = sqrt(d) and w0 = 1, w1 = sqrt(d).
pub fn cm_hom_generators<T: Scalar>(m: &T, d: &T) -> Result<HomGroup<T>, Error> {
    if *m < T::one() || *d > -T::one() {
        return Err(Error::InvalidCmParameters);
    }
    let phi_one = IsogenyClass::new(
        Mat2::new([
            [m.clone(), T::zero()],
            [T::zero(), T::one()],
        ]),
        "E1",
        "E2",
    );
    let phi_sqrt_d = IsogenyClass::new(
        Mat2::new([
            [T::zero(), m.clone()],
            [d.clone(), T::zero()],
        ]),
        "E1",
        "E2",
    );
    Ok(HomGroup::RankTwo {
        generators: [phi_one, phi_sqrt_d],
    })
}
