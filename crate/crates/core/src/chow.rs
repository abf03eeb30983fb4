//! Formal cycle-class algebra on triple products E1 x E2 x E3.
//!
//! A product cycle class is stored by its components in the five graded
//! pieces, each a formal sum of tensor terms. A class is determined by
//! the invariants of its factors (degree and Jacobian point for
//! zero-cycles, the matrix for hom classes), which is faithful for
//! rational equivalence on elliptic curves.

use crate::elliptic::ZeroCycleClass;
use crate::isogeny::{kunneth_tensor, tensor_pairing, IsogenyClass, Mat2};
use crate::{elliptic, Error, Scalar};
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

/// The five graded pieces of product cycles on E1 x E2 x E3; the label
/// (p, q, r) records the Kunneth type of the underlying cohomology class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GradedPiece {
    G022,
    G112,
    G202,
    G211,
    G220,
}

impl GradedPiece {
    pub const ALL: [GradedPiece; 5] = [
        GradedPiece::G022,
        GradedPiece::G112,
        GradedPiece::G202,
        GradedPiece::G211,
        GradedPiece::G220,
    ];
}

impl fmt::Display for GradedPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GradedPiece::G022 => "g022",
            GradedPiece::G112 => "g112",
            GradedPiece::G202 => "g202",
            GradedPiece::G211 => "g211",
            GradedPiece::G220 => "g220",
        };
        f.write_str(s)
    }
}

impl FromStr for GradedPiece {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "g022" => Ok(GradedPiece::G022),
            "g112" => Ok(GradedPiece::G112),
            "g202" => Ok(GradedPiece::G202),
            "g211" => Ok(GradedPiece::G211),
            "g220" => Ok(GradedPiece::G220),
            other => Err(Error::UnknownGradedPiece(other.to_string())),
        }
    }
}

/// Merge pairs of zero-cycle classes sharing an equal left factor by
/// adding the right factors; drop terms with a vanishing factor; sort.
fn normalize_cycle_pairs<T: Scalar>(
    mut terms: Vec<(ZeroCycleClass<T>, ZeroCycleClass<T>)>,
) -> Vec<(ZeroCycleClass<T>, ZeroCycleClass<T>)> {
    terms.sort();
    let mut out: Vec<(ZeroCycleClass<T>, ZeroCycleClass<T>)> = Vec::with_capacity(terms.len());
    for (l, r) in terms {
        match out.last_mut() {
            Some((pl, pr)) if *pl == l => *pr = pr.clone() + r,
            _ => out.push((l, r)),
        }
    }
    out.retain(|(l, r)| !l.is_zero() && !r.is_zero());
    out
}

/// g112 terms ([g], beta): merge terms sharing an equal zero-cycle factor
/// beta (and equal curve labels) by adding the isogeny matrices.
fn normalize_g112<T: Scalar>(
    mut terms: Vec<(IsogenyClass<T>, ZeroCycleClass<T>)>,
) -> Vec<(IsogenyClass<T>, ZeroCycleClass<T>)> {
    terms.sort_by(|(g1, b1), (g2, b2)| {
        (b1, &g1.source, &g1.target, &g1.matrix).cmp(&(b2, &g2.source, &g2.target, &g2.matrix))
    });
    let mut out: Vec<(IsogenyClass<T>, ZeroCycleClass<T>)> = Vec::with_capacity(terms.len());
    for (g, b) in terms {
        match out.last_mut() {
            Some((pg, pb))
                if *pb == b && pg.source == g.source && pg.target == g.target =>
            {
                pg.matrix = pg.matrix.add(&g.matrix);
            }
            _ => out.push((g, b)),
        }
    }
    out.retain(|(g, b)| !g.is_zero() && !b.is_zero());
    out
}

/// g211 terms (alpha, [h]): merge terms sharing an equal zero-cycle
/// factor alpha (and equal curve labels) by adding the isogeny matrices.
fn normalize_g211<T: Scalar>(
    mut terms: Vec<(ZeroCycleClass<T>, IsogenyClass<T>)>,
) -> Vec<(ZeroCycleClass<T>, IsogenyClass<T>)> {
    terms.sort_by(|(a1, h1), (a2, h2)| {
        (a1, &h1.source, &h1.target, &h1.matrix).cmp(&(a2, &h2.source, &h2.target, &h2.matrix))
    });
    let mut out: Vec<(ZeroCycleClass<T>, IsogenyClass<T>)> = Vec::with_capacity(terms.len());
    for (a, h) in terms {
        match out.last_mut() {
            Some((pa, ph))
                if *pa == a && ph.source == h.source && ph.target == h.target =>
            {
                ph.matrix = ph.matrix.add(&h.matrix);
            }
            _ => out.push((a, h)),
        }
    }
    out.retain(|(a, h)| !a.is_zero() && !h.is_zero());
    out
}

/// A formal cycle class on E1 x E2 x E3 stored by graded components:
/// g022 terms are (class on E2, class on E3) with factor [E1];
/// g112 terms are (hom class E1 -> E2, class on E3);
/// g202 terms are (class on E1, class on E3) with factor [E2];
/// g211 terms are (class on E1, hom class E2 -> E3);
/// g220 terms are (class on E1, class on E2) with factor [E3].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCycleClass<T: Scalar> {
    g022: Vec<(ZeroCycleClass<T>, ZeroCycleClass<T>)>,
    g112: Vec<(IsogenyClass<T>, ZeroCycleClass<T>)>,
    g202: Vec<(ZeroCycleClass<T>, ZeroCycleClass<T>)>,
    g211: Vec<(ZeroCycleClass<T>, IsogenyClass<T>)>,
    g220: Vec<(ZeroCycleClass<T>, ZeroCycleClass<T>)>,
}

impl<T: Scalar> ProductCycleClass<T> {
    pub fn zero() -> Self {
        ProductCycleClass {
            g022: vec![],
            g112: vec![],
            g202: vec![],
            g211: vec![],
            g220: vec![],
        }
    }

    /// [E1] (x) beta (x) theta.
    pub fn g022(beta: ZeroCycleClass<T>, theta: ZeroCycleClass<T>) -> Self {
        let mut z = Self::zero();
        z.g022 = normalize_cycle_pairs(vec![(beta, theta)]);
        z
    }

    /// [g] (x) beta for a hom class g: E1 -> E2.
    pub fn g112(g: IsogenyClass<T>, beta: ZeroCycleClass<T>) -> Self {
        let mut z = Self::zero();
        z.g112 = normalize_g112(vec![(g, beta)]);
        z
    }

    /// alpha (x) [E2] (x) gamma.
    pub fn g202(alpha: ZeroCycleClass<T>, gamma: ZeroCycleClass<T>) -> Self {
        let mut z = Self::zero();
        z.g202 = normalize_cycle_pairs(vec![(alpha, gamma)]);
        z
    }

    /// alpha (x) [h] for a hom class h: E2 -> E3.
    pub fn g211(alpha: ZeroCycleClass<T>, h: IsogenyClass<T>) -> Self {
        let mut z = Self::zero();
        z.g211 = normalize_g211(vec![(alpha, h)]);
        z
    }

    /// alpha (x) beta (x) [E3].
    pub fn g220(alpha: ZeroCycleClass<T>, beta: ZeroCycleClass<T>) -> Self {
        let mut z = Self::zero();
        z.g220 = normalize_cycle_pairs(vec![(alpha, beta)]);
        z
    }

    pub fn is_zero(&self) -> bool {
        self.g022.is_empty()
            && self.g112.is_empty()
            && self.g202.is_empty()
            && self.g211.is_empty()
            && self.g220.is_empty()
    }

    /// Scalar multiple. The factor lands on a zero-cycle term, where
    /// torsion collapses correctly; in particular k (alpha (x) [h]) is
    /// stored as (k alpha) (x) [h].
    pub fn scale(&self, k: &T) -> Self {
        ProductCycleClass {
            g022: normalize_cycle_pairs(
                self.g022
                    .iter()
                    .map(|(l, r)| (l.scale(k), r.clone()))
                    .collect(),
            ),
            g112: normalize_g112(
                self.g112
                    .iter()
                    .map(|(g, b)| (g.clone(), b.scale(k)))
                    .collect(),
            ),
            g202: normalize_cycle_pairs(
                self.g202
                    .iter()
                    .map(|(l, r)| (l.scale(k), r.clone()))
                    .collect(),
            ),
            g211: normalize_g211(
                self.g211
                    .iter()
                    .map(|(a, h)| (a.scale(k), h.clone()))
                    .collect(),
            ),
            g220: normalize_cycle_pairs(
                self.g220
                    .iter()
                    .map(|(l, r)| (l.scale(k), r.clone()))
                    .collect(),
            ),
        }
    }

    /// The named component, zero elsewhere. Projections are idempotent
    /// and sum to the identity.
    pub fn project_to_graded(&self, piece: GradedPiece) -> Self {
        let mut z = Self::zero();
        match piece {
            GradedPiece::G022 => z.g022 = self.g022.clone(),
            GradedPiece::G112 => z.g112 = self.g112.clone(),
            GradedPiece::G202 => z.g202 = self.g202.clone(),
            GradedPiece::G211 => z.g211 = self.g211.clone(),
            GradedPiece::G220 => z.g220 = self.g220.clone(),
        }
        z
    }

    pub fn g022_terms(&self) -> &[(ZeroCycleClass<T>, ZeroCycleClass<T>)] {
        &self.g022
    }

    pub fn g112_terms(&self) -> &[(IsogenyClass<T>, ZeroCycleClass<T>)] {
        &self.g112
    }

    pub fn g202_terms(&self) -> &[(ZeroCycleClass<T>, ZeroCycleClass<T>)] {
        &self.g202
    }

    pub fn g211_terms(&self) -> &[(ZeroCycleClass<T>, IsogenyClass<T>)] {
        &self.g211
    }

    pub fn g220_terms(&self) -> &[(ZeroCycleClass<T>, ZeroCycleClass<T>)] {
        &self.g220
    }

    /// True when every zero-cycle factor in the hom-bearing components
    /// has degree zero (the homologically trivial slices of g112/g211).
    pub fn is_hom_trivial(&self) -> bool {
        self.g112.iter().all(|(_, b)| b.degree().is_zero())
            && self.g211.iter().all(|(a, _)| a.degree().is_zero())
    }
}

impl<T: Scalar> Add for ProductCycleClass<T> {
    type Output = ProductCycleClass<T>;
    fn add(mut self, mut rhs: Self) -> Self {
        self.g022.append(&mut rhs.g022);
        self.g112.append(&mut rhs.g112);
        self.g202.append(&mut rhs.g202);
        self.g211.append(&mut rhs.g211);
        self.g220.append(&mut rhs.g220);
        ProductCycleClass {
            g022: normalize_cycle_pairs(self.g022),
            g112: normalize_g112(self.g112),
            g202: normalize_cycle_pairs(self.g202),
            g211: normalize_g211(self.g211),
            g220: normalize_cycle_pairs(self.g220),
        }
    }
}

/// k([t] - [e1]) (x) [f] in the g211 component.
pub fn make_diagonal_type_class<T: Scalar>(
    t: &elliptic::TorsionPoint<T>,
    f: &IsogenyClass<T>,
    k: &T,
) -> ProductCycleClass<T> {
    ProductCycleClass::g211(elliptic::scaled_difference_class(k, t), f.clone())
}

/// [Gamma_g] (x) beta expanded in graded pieces via the graph
/// decomposition, with the signed determinant as the fiber coefficient.
pub fn graph_product_class<T: Scalar>(
    g: &IsogenyClass<T>,
    beta: &ZeroCycleClass<T>,
) -> ProductCycleClass<T> {
    let origin = ZeroCycleClass::origin();
    ProductCycleClass::g022(origin.clone(), beta.clone())
        + ProductCycleClass::g202(origin.scale(&g.matrix.det()), beta.clone())
        + ProductCycleClass::g112(g.clone(), beta.clone())
}

/// A divisor class on E1 x E2 in its three-way decomposition: pullback
/// from E1, pullback from E2, and the hom part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductDivisorClass<T: Scalar> {
    pub from_e1: ZeroCycleClass<T>,
    pub from_e2: ZeroCycleClass<T>,
    pub hom: Mat2<T>,
}

impl<T: Scalar> ProductDivisorClass<T> {
    pub fn zero() -> Self {
        ProductDivisorClass {
            from_e1: ZeroCycleClass::zero(),
            from_e2: ZeroCycleClass::zero(),
            hom: Mat2::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.from_e1.is_zero() && self.from_e2.is_zero() && self.hom.is_zero()
    }
}

/// Pushforward under id x (addition map E2 x E3 -> E2), defined when the
/// last two factor curves coincide. Componentwise:
/// g022: [E1] (x) beta (x) theta -> [E1] (x) (beta * theta) (degrees
/// multiply, Jacobian points convolve); g112: [g] (x) beta ->
/// deg(beta) [g]; g202: alpha (x) [E2] (x) gamma -> deg(gamma) alpha x [E2];
/// g211: alpha (x) [h] -> trace(h) alpha x [E2]; g220: alpha (x) beta
/// (x) [E3] -> deg(beta) alpha x [E2].
pub fn pushforward_sum<T: Scalar>(
    z: &ProductCycleClass<T>,
) -> Result<ProductDivisorClass<T>, Error> {
    for (_, h) in &z.g211 {
        if h.source != h.target {
            return Err(Error::MismatchedFactorCurves(
                h.source.clone(),
                h.target.clone(),
            ));
        }
    }
    let mut out = ProductDivisorClass::zero();
    for (beta, theta) in &z.g022 {
        out.from_e2 = out.from_e2.clone() + beta.convolve(theta);
    }
    for (g, beta) in &z.g112 {
        out.hom = out.hom.add(&g.matrix.scale(beta.degree()));
    }
    for (alpha, gamma) in &z.g202 {
        out.from_e1 = out.from_e1.clone() + alpha.scale(gamma.degree());
    }
    for (alpha, h) in &z.g211 {
        out.from_e1 = out.from_e1.clone() + alpha.scale(&h.matrix.trace());
    }
    for (alpha, beta) in &z.g220 {
        out.from_e1 = out.from_e1.clone() + alpha.scale(beta.degree());
    }
    Ok(out)
}

/// Action of the correspondence on the g211 component: each term
/// alpha (x) [h] sends the hom class of `t` to Q(T(h), T(t)) alpha,
/// extended bilinearly. Components other than g211 act by zero.
pub fn correspondence_action<T: Scalar>(
    z: &ProductCycleClass<T>,
    t: &IsogenyClass<T>,
) -> ZeroCycleClass<T> {
    let tt = kunneth_tensor(t);
    let mut out = ZeroCycleClass::zero();
    for (alpha, h) in &z.g211 {
        let q = tensor_pairing(&kunneth_tensor(h), &tt);
        out = out + alpha.scale(&q);
    }
    out
}
