//! Exact linear algebra over Z and Z/N: Smith normal form, vector
//! contents, sublattice indices, gram determinants, and congruence
//! solving. No modular shortcuts and no floating point; entries are
//! arbitrary-precision when instantiated at [`crate::Int`].

use crate::{Error, Scalar};
use std::ops::{Index, IndexMut};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|row| row.len() == c),
            "all rows must have equal length"
        );
        Mat {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc += self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc += self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    /// `v * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len(), "shape mismatch in vector-matrix product");
        (0..self.cols)
            .map(|j| {
                let mut acc = T::zero();
                for k in 0..self.rows {
                    acc += v[k].clone() * self[(k, j)].clone();
                }
                acc
            })
            .collect()
    }

    /// Signed determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[(i, j)].clone() * m[(k, k)].clone()
                        - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = num / prev.clone();
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= q * row_j
    fn row_sub_mul(&mut self, i: usize, j: usize, q: &T) {
        for c in 0..self.cols {
            let delta = q.clone() * self[(j, c)].clone();
            self[(i, c)] = self[(i, c)].clone() - delta;
        }
    }

    /// col_i -= q * col_j
    fn col_sub_mul(&mut self, i: usize, j: usize, q: &T) {
        for r in 0..self.rows {
            let delta = q.clone() * self[(r, j)].clone();
            self[(r, i)] = self[(r, i)].clone() - delta;
        }
    }

    /// row_i += row_j
    fn row_add(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            let delta = self[(j, c)].clone();
            self[(i, c)] = self[(i, c)].clone() + delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            self[(i, c)] = -self[(i, c)].clone();
        }
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }
}

/// Result of [`smith_normal_form`]: `u * m * v = s` with `u`, `v`
/// unimodular and `s` diagonal, nonnegative, each entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition<T> {
    pub u: Mat<T>,
    pub s: Mat<T>,
    pub v: Mat<T>,
}

impl<T: Scalar> SnfDecomposition<T> {
    /// The diagonal of `s` (the elementary divisors, zeros included).
    pub fn diagonal(&self) -> Vec<T> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Number of nonzero elementary divisors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smallest nonzero entry by absolute value in the trailing block starting
/// at `(t, t)`, scanning row-major so ties break at the lowest index.
fn pivot<T: Scalar>(s: &Mat<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if s[(i, j)].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if s[(i, j)].abs() < s[(bi, bj)].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Smith normal form over Z, defined for every integer matrix including
/// empty, zero and non-square ones. Pivoting is deterministic (smallest
/// absolute value, lowest index on ties), so `u` and `v` are reproducible
/// across runs.
pub fn smith_normal_form<T: Scalar>(m: &Mat<T>) -> SnfDecomposition<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = Mat::identity(rows);
    let mut v = Mat::identity(cols);
    let n = rows.min(cols);

    for t in 0..n {
        let Some((pi, pj)) = pivot(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !s[(i, t)].is_zero() {
                    let q = s[(i, t)].clone() / s[(t, t)].clone();
                    s.row_sub_mul(i, t, &q);
                    u.row_sub_mul(i, t, &q);
                    if !s[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !s[(t, j)].is_zero() {
                    let q = s[(t, j)].clone() / s[(t, t)].clone();
                    s.col_sub_mul(j, t, &q);
                    v.col_sub_mul(j, t, &q);
                    if !s[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                let (pi, pj) = pivot(&s, t).expect("pivot cannot vanish during elimination");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // Row and column t are clear; enforce that the pivot divides
            // everything that remains, otherwise pull the offender up.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].clone().rem(s[(t, t)].clone()).is_zero());
            match offender {
                Some((i, _)) => {
                    s.row_add(t, i);
                    u.row_add(t, i);
                }
                None => break,
            }
        }
    }

    for i in 0..n {
        if s[(i, i)].is_negative() {
            s.negate_row(i);
            u.negate_row(i);
        }
    }

    SnfDecomposition { u, s, v }
}

/// Gcd of the entries; 0 for the zero (or empty) vector, so `v` is
/// primitive exactly when the content is 1.
pub fn content<T: Scalar>(v: &[T]) -> T {
    v.iter()
        .fold(T::zero(), |acc, x| acc.gcd(x))
}

fn mod_floor_vec<T: Scalar>(v: &[T], n: &T) -> Vec<T> {
    v.iter().map(|x| x.mod_floor(n)).collect()
}

/// Solvability of `a x = b (mod n)`, decided through the Smith normal
/// form of `a` over Z.
fn solvable_mod<T: Scalar>(a: &Mat<T>, b: &[T], n: &T) -> bool {
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let k = a.rows().min(a.cols());
    for (i, ci) in c.iter().enumerate() {
        let si = if i < k { snf.s[(i, i)].clone() } else { T::zero() };
        let g = si.gcd(n);
        if !ci.mod_floor(&g).is_zero() {
            return false;
        }
    }
    true
}

fn solvable_with_prefix<T: Scalar>(a: &Mat<T>, b: &[T], n: &T, prefix: &[T]) -> bool {
    let mut rows: Vec<Vec<T>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    let mut rhs = b.to_vec();
    for (pos, val) in prefix.iter().enumerate() {
        let mut unit = vec![T::zero(); a.cols()];
        unit[pos] = T::one();
        rows.push(unit);
        rhs.push(val.clone());
    }
    solvable_mod(&Mat::from_rows(rows), &rhs, n)
}

/// Solves `a x = b (mod n)` exactly. Returns `None` when the system is
/// unsolvable, otherwise the lexicographically smallest solution in
/// `[0, n)^cols`.
pub fn solve_mod<T: Scalar>(a: &Mat<T>, b: &[T], n: &T) -> Result<Option<Vec<T>>, Error> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but rhs has {} entries",
            a.rows(),
            b.len()
        )));
    }
    if *n < T::one() {
        return Err(Error::InvalidModulus);
    }
    let a = a.map(|x| x.mod_floor(n));
    let b = mod_floor_vec(b, n);
    if !solvable_mod(&a, &b, n) {
        return Ok(None);
    }
    let mut fixed: Vec<T> = Vec::with_capacity(a.cols());
    for _ in 0..a.cols() {
        let mut val = T::zero();
        loop {
            fixed.push(val.clone());
            if solvable_with_prefix(&a, &b, n, &fixed) {
                break;
            }
            fixed.pop();
            val += T::one();
            debug_assert!(val < *n, "a solvable system must admit some residue");
        }
    }
    Ok(Some(fixed))
}

/// Either a finite index `[L : L']` or infinite (rank drop).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SublatticeIndex<T> {
    Finite(T),
    Infinite,
}

/// A free abelian group of finite rank: basis vectors (rows) in an
/// ambient Z^N, plus an optional gram matrix of pairwise intersection
/// numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice<T> {
    basis: Mat<T>,
    gram: Option<Mat<T>>,
}

impl<T: Scalar> Lattice<T> {
    /// Checks that the basis rows are independent over Q and the gram
    /// matrix, when present, is symmetric of matching size.
    pub fn new(basis: Mat<T>, gram: Option<Mat<T>>) -> Result<Self, Error> {
        let rank = basis.rows();
        if smith_normal_form(&basis).rank() != rank {
            return Err(Error::DependentBasis);
        }
        if let Some(g) = &gram {
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::InvalidGram);
            }
            for i in 0..rank {
                for j in 0..i {
                    if g[(i, j)] != g[(j, i)] {
                        return Err(Error::InvalidGram);
                    }
                }
            }
        }
        Ok(Lattice { basis, gram })
    }

    /// The standard lattice Z^n with no gram matrix.
    pub fn standard(n: usize) -> Self {
        Lattice {
            basis: Mat::identity(n),
            gram: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Mat<T> {
        &self.basis
    }

    pub fn gram(&self) -> Option<&Mat<T>> {
        self.gram.as_ref()
    }

    /// Integer coordinates of `v` in this basis, or `None` when `v` is
    /// not a lattice element. Panics if `v` lives in the wrong ambient
    /// dimension.
    pub fn coords_of(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.ambient_dim(), "ambient dimension mismatch");
        let snf = smith_normal_form(&self.basis);
        coords_from_snf(&snf, self.rank(), v)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coords_of(v).is_some()
    }
}

/// Solve `c * basis = v` for integer `c` given the SNF of the basis.
fn coords_from_snf<T: Scalar>(snf: &SnfDecomposition<T>, rank: usize, v: &[T]) -> Option<Vec<T>> {
    let w = snf.v.vec_mul(v);
    let mut d = Vec::with_capacity(rank);
    for (i, wi) in w.iter().enumerate() {
        if i < rank {
            let si = &snf.s[(i, i)];
            if si.is_zero() {
                return None;
            }
            let (q, r) = wi.div_rem(si);
            if !r.is_zero() {
                return None;
            }
            d.push(q);
        } else if !wi.is_zero() {
            return None;
        }
    }
    Some(snf.u.vec_mul(&d))
}

/// The index `[l : sub]`, computed as the product of the elementary
/// divisors of the change-of-basis matrix. Errors when some basis vector
/// of `sub` lies outside `l`; infinite when the rank drops.
pub fn sublattice_index<T: Scalar>(
    l: &Lattice<T>,
    sub: &Lattice<T>,
) -> Result<SublatticeIndex<T>, Error> {
    if l.ambient_dim() != sub.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions differ: {} vs {}",
            l.ambient_dim(),
            sub.ambient_dim()
        )));
    }
    let snf = smith_normal_form(l.basis());
    let mut rows = Vec::with_capacity(sub.rank());
    for i in 0..sub.rank() {
        match coords_from_snf(&snf, l.rank(), sub.basis().row(i)) {
            Some(c) => rows.push(c),
            None => return Err(Error::NotASublattice(i)),
        }
    }
    if sub.rank() < l.rank() {
        return Ok(SublatticeIndex::Infinite);
    }
    let change = Mat::from_rows(rows);
    let index = smith_normal_form(&change)
        .diagonal()
        .into_iter()
        .fold(T::one(), |acc, d| acc * d);
    Ok(SublatticeIndex::Finite(index))
}

/// Signed determinant of the gram matrix; errors when no gram is present.
pub fn gram_determinant<T: Scalar>(l: &Lattice<T>) -> Result<T, Error> {
    l.gram().map(Mat::det).ok_or(Error::MissingGram)
}
