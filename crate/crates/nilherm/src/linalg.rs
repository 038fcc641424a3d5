//! Dense exact-rational matrices and subspace calculus.
//!
//! Everything here is deterministic: Gaussian elimination always picks the
//! leftmost nonzero pivot and scales it to 1, so reduced echelon forms (and
//! hence `Subspace` bases) are canonical. Two equal subspaces have
//! bit-identical basis matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer shorthand, handy in tests and built-in constructions.
    pub fn from_i64(rows: Vec<Vec<i64>>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
    }

    pub fn column_vector(v: &[Rational]) -> Self {
        RMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    /// Matrix applied to a coordinate vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "apply: dimension mismatch");
        let mut out = vec![Rational::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = Rational::zero();
            for (j, vj) in v.iter().enumerate() {
                let a = self.at(i, j);
                if !a.is_zero() && !vj.is_zero() {
                    acc += a * vj;
                }
            }
            *o = acc;
        }
        out
    }

    /// Columns as a list of vectors.
    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn hcat(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.rows, other.rows);
        RMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vcat(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.cols);
        RMatrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn from_columns(ambient: usize, cols: &[Vec<Rational>]) -> RMatrix {
        for c in cols {
            assert_eq!(c.len(), ambient);
        }
        RMatrix::from_fn(ambient, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn block_diag(blocks: &[RMatrix]) -> RMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = RMatrix::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(ro + i, co + j, b.at(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> RMatrix {
        RMatrix::from_fn(r1 - r0, c1 - c0, |i, j| self.at(r0 + i, c0 + j).clone())
    }

    /// Column-major flattening of the matrix as a single vector, used to treat
    /// operators as vectors of an ambient space.
    pub fn vectorize(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.at(i, j).clone());
            }
        }
        v
    }

    pub fn from_vectorized(rows: usize, cols: usize, v: &[Rational]) -> RMatrix {
        assert_eq!(v.len(), rows * cols);
        RMatrix::from_fn(rows, cols, |i, j| v[j * rows + i].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Exact Sylvester criterion: symmetric with all leading principal minors
    /// positive.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        for k in 1..=self.rows {
            if !self.submatrix(0, k, 0, k).determinant().is_positive() {
                return false;
            }
        }
        true
    }

    pub fn is_negative_definite(&self) -> bool {
        self.is_square() && self.neg().is_positive_definite()
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else {
                return Rational::zero();
            };
            if p != col {
                for j in 0..n {
                    m.data.swap(col * n + j, p * n + j);
                }
                det = -det;
            }
            let pv = m.at(col, col).clone();
            det *= &pv;
            for r in col + 1..n {
                let factor = m.at(r, col) / &pv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.at(r, j) - &factor * m.at(col, j);
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let (rref, pivots) = rref(&self.hcat(&RMatrix::identity(n)));
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(rref.submatrix(0, n, n, 2 * n))
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &RMatrix) -> RMatrix {
        self * other - other * self
    }

    /// Anticommutator `AB + BA`.
    pub fn anticommutator(&self, other: &RMatrix) -> RMatrix {
        self * other + other * self
    }
}

impl Add for &RMatrix {
    type Output = RMatrix;
    fn add(self, rhs: &RMatrix) -> RMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RMatrix {
    type Output = RMatrix;
    fn sub(self, rhs: &RMatrix) -> RMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &RMatrix {
    type Output = RMatrix;
    fn mul(self, rhs: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, rhs.rows, "mul: dimension mismatch");
        let mut out = RMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($trait:ident, $method:ident) => {
        impl $trait for RMatrix {
            type Output = RMatrix;
            fn $method(self, rhs: RMatrix) -> RMatrix {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RMatrix> for RMatrix {
            type Output = RMatrix;
            fn $method(self, rhs: &RMatrix) -> RMatrix {
                (&self).$method(rhs)
            }
        }
        impl $trait<RMatrix> for &RMatrix {
            type Output = RMatrix;
            fn $method(self, rhs: RMatrix) -> RMatrix {
                self.$method(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for &RMatrix {
    type Output = RMatrix;
    fn neg(self) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for RMatrix {
    type Output = RMatrix;
    fn neg(self) -> RMatrix {
        -&self
    }
}

/// Reduced row echelon form together with the pivot columns.
///
/// Pivoting is deterministic: scan columns left to right, take the first row
/// with a nonzero entry, scale it to a leading 1, clear the column.
pub fn rref(m: &RMatrix) -> (RMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).find(|&i| !a.at(i, c).is_zero());
        let Some(p) = pivot else { continue };
        if p != r {
            for j in 0..cols {
                a.data.swap(r * cols + j, p * cols + j);
            }
        }
        let pv = a.at(r, c).clone();
        for j in c..cols {
            let v = a.at(r, j) / &pv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.at(i, c).is_zero() {
                continue;
            }
            let f = a.at(i, c).clone();
            for j in c..cols {
                let v = a.at(i, j) - &f * a.at(r, j);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank and kernel of a matrix. Kernel basis columns satisfy `m * v = 0`
/// exactly and come in the canonical echelon form of [`Subspace`].
pub fn rank_and_kernel(m: &RMatrix) -> (usize, Subspace) {
    let (r, pivots) = rref(m);
    let rank = pivots.len();
    let cols = m.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.at(row, f).clone();
        }
        basis.push(v);
    }
    (rank, Subspace::from_spanning(cols, &basis))
}

/// Solve `a x = b` for all columns of `b` at once; `None` when inconsistent.
/// When the system is underdetermined the free variables are set to zero.
pub fn solve(a: &RMatrix, b: &RMatrix) -> Option<RMatrix> {
    assert_eq!(a.rows, b.rows);
    let aug = a.hcat(b);
    let (r, pivots) = rref(&aug);
    // Any pivot in the b-part means inconsistency.
    if pivots.iter().any(|&p| p >= a.cols) {
        return None;
    }
    let mut x = RMatrix::zeros(a.cols, b.cols);
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(p, j, r.at(row, a.cols + j).clone());
        }
    }
    Some(x)
}

/// A linear subspace of `Q^ambient`, stored via a canonical basis.
///
/// The basis matrix is the reduced column echelon normal form (RREF of the
/// transpose, transposed back), so equal subspaces always have identical
/// representations. The zero subspace has a basis with zero columns.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: RMatrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in Q^{}) {:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RMatrix::identity(ambient),
        }
    }

    /// Canonicalize a spanning set (given as vectors) into a subspace.
    pub fn from_spanning(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vector of wrong length");
        }
        let rows = RMatrix::from_rows(vectors.to_vec());
        let (r, pivots) = rref(&rows);
        let basis = RMatrix::from_fn(ambient, pivots.len(), |i, j| r.at(j, i).clone());
        Subspace { ambient, basis }
    }

    pub fn from_columns(m: &RMatrix) -> Self {
        Self::from_spanning(m.rows(), &m.columns())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, columns.
    pub fn basis(&self) -> &RMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        solve(&self.basis, &RMatrix::column_vector(v))
            .map(|x| &self.basis * &x == RMatrix::column_vector(v))
            .unwrap_or(false)
    }

    /// Coordinates of `v` in the canonical basis; `None` when `v` is outside.
    pub fn coordinates_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let x = solve(&self.basis, &RMatrix::column_vector(v))?;
        if &self.basis * &x == RMatrix::column_vector(v) {
            Some(x.col(0))
        } else {
            None
        }
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other
            .basis
            .columns()
            .iter()
            .all(|c| self.contains_vector(c))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut vs = self.basis.columns();
        vs.extend(other.basis.columns());
        Subspace::from_spanning(self.ambient, &vs)
    }

    /// Intersection via the kernel of `[A | -B]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let stacked = self.basis.hcat(&(-&other.basis));
        let (_, ker) = rank_and_kernel(&stacked);
        let vecs: Vec<Vec<Rational>> = ker
            .basis_vectors()
            .iter()
            .map(|k| self.basis.apply(&k[..self.dim()]))
            .collect();
        Subspace::from_spanning(self.ambient, &vecs)
    }

    /// Orthogonal complement; uses the standard dot product unless a Gram
    /// matrix is supplied.
    pub fn orthogonal_complement(&self, gram: Option<&RMatrix>) -> Result<Subspace> {
        let g = match gram {
            Some(g) => {
                if g.rows() != self.ambient || g.cols() != self.ambient {
                    return Err(Error::DimensionMismatch {
                        expected: self.ambient,
                        got: g.rows(),
                    });
                }
                if !g.is_positive_definite() {
                    return Err(Error::NotPositiveDefinite);
                }
                g.clone()
            }
            None => RMatrix::identity(self.ambient),
        };
        let constraints = &self.basis.transpose() * &g;
        let (_, ker) = rank_and_kernel(&constraints);
        Ok(ker)
    }

    /// Image of the subspace under a linear map.
    pub fn map_by(&self, m: &RMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let vecs: Vec<Vec<Rational>> = self.basis.columns().iter().map(|c| m.apply(c)).collect();
        Subspace::from_spanning(m.rows(), &vecs)
    }

    /// Is the subspace invariant under `m`?
    pub fn is_invariant_under(&self, m: &RMatrix) -> bool {
        self.contains(&self.map_by(m))
    }

    /// Basis vectors in canonical order, or with reversed coordinate
    /// preference (echelonized against the reversed coordinate order).
    fn preference_basis(&self, prefer_late: bool) -> Vec<Vec<Rational>> {
        if prefer_late {
            let reversed: Vec<Vec<Rational>> = self
                .basis_vectors()
                .iter()
                .map(|v| v.iter().rev().cloned().collect())
                .collect();
            let re = Subspace::from_spanning(self.ambient, &reversed);
            re.basis_vectors()
                .iter()
                .map(|v| v.iter().rev().cloned().collect())
                .collect()
        } else {
            self.basis_vectors()
        }
    }

    /// Deterministic complement half for a complex structure: a subspace `w`
    /// with `self = w ⊕ J w`, greedily built from the canonical basis.
    ///
    /// `prefer_late` flips the coordinate preference; the canonical adapted
    /// bases of the 2-step constructions rely on that to keep round trips
    /// bit-exact.
    pub fn j_adapted_half(&self, j: &RMatrix, prefer_late: bool) -> Subspace {
        let candidates = self.preference_basis(prefer_late);
        let mut half: Vec<Vec<Rational>> = Vec::new();
        let mut w = Subspace::zero(self.ambient);
        for cand in candidates {
            if w.contains_vector(&cand) {
                continue;
            }
            half.push(cand.clone());
            let img = j.apply(&cand);
            w = w.sum(&Subspace::from_spanning(self.ambient, &[cand, img]));
        }
        Subspace::from_spanning(self.ambient, &half)
    }

    /// Like [`Self::j_adapted_half`], but the produced half additionally
    /// satisfies `w ⊥ J w` with respect to `gram`: pairs `(u, Ju)` are peeled
    /// off and the remainder is replaced by its orthogonal complement inside
    /// the subspace. Requires the subspace to be J-invariant.
    ///
    /// Rational throughout: only orthogonal complements are taken, never
    /// normalizations. Note `⟨u, Ju⟩ = 0` holds automatically because `gram·J`
    /// is antisymmetric for a gram-orthogonal `J`.
    pub fn j_adapted_half_orthogonal(
        &self,
        j: &RMatrix,
        gram: &RMatrix,
        prefer_late: bool,
    ) -> Result<Subspace> {
        let mut half: Vec<Vec<Rational>> = Vec::new();
        let mut remaining = self.clone();
        while !remaining.is_zero() {
            let cand = remaining
                .preference_basis(prefer_late)
                .into_iter()
                .next()
                .expect("nonzero subspace has a basis vector");
            let jc = j.apply(&cand);
            let pair = Subspace::from_spanning(self.ambient, &[cand.clone(), jc]);
            if pair.dim() != 2 {
                return Err(Error::precondition(
                    "vector and its J-image are dependent; not a complex subspace",
                ));
            }
            half.push(cand);
            remaining = remaining.intersection(&pair.orthogonal_complement(Some(gram))?);
        }
        let w = Subspace::from_spanning(self.ambient, &half);
        let jw = w.map_by(j);
        if w.sum(&jw).dim() != self.dim() || !w.intersection(&jw).is_zero() {
            return Err(Error::precondition(
                "subspace does not split as w ⊕ Jw; is it J-invariant?",
            ));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn identity_has_full_rank_and_zero_kernel() {
        let (rank, ker) = rank_and_kernel(&RMatrix::identity(2));
        assert_eq!(rank, 2);
        assert!(ker.is_zero());
    }

    #[test]
    fn one_by_two_kernel_spanned_by_1_minus_1() {
        // [1 1] has rank 1; rank-nullity forces a 1-dimensional kernel.
        let m = RMatrix::from_i64(vec![vec![1, 1]]);
        let (rank, ker) = rank_and_kernel(&m);
        assert_eq!(rank, 1);
        assert_eq!(ker.dim(), 1);
        assert!(ker.contains_vector(&[rat(1), rat(-1)]));
    }

    #[test]
    fn random_5x7_kernel_annihilated_exactly() {
        // Fixed "random" rational matrix; the oracle is m * K = 0 entrywise.
        let m = RMatrix::from_rows(vec![
            vec![rat(2), ratio(1, 3), rat(0), rat(-1), rat(4), rat(1), rat(5)],
            vec![rat(1), rat(1), rat(1), rat(1), rat(1), rat(1), rat(1)],
            vec![rat(0), rat(2), ratio(-3, 2), rat(1), rat(0), rat(2), rat(0)],
            vec![rat(3), ratio(4, 3), rat(1), rat(0), rat(5), rat(3), rat(6)],
            vec![rat(1), rat(-1), rat(2), rat(1), rat(7), ratio(1, 2), rat(0)],
        ]);
        let (rank, ker) = rank_and_kernel(&m);
        assert_eq!(rank + ker.dim(), 7);
        let prod = &m * ker.basis();
        assert!(prod.is_zero());
    }

    #[test]
    fn subspace_ops_trivial_cases() {
        let a = Subspace::from_spanning(3, &[vec![rat(1), rat(0), rat(0)]]);
        assert_eq!(a.sum(&a), a);
        assert_eq!(a.intersection(&a), a);

        // a ⊥ b in R^4 under identity gram.
        let a4 = Subspace::from_spanning(4, &[vec![rat(1), rat(0), rat(0), rat(0)]]);
        let b4 = Subspace::from_spanning(
            4,
            &[
                vec![rat(0), rat(1), rat(0), rat(0)],
                vec![rat(0), rat(0), rat(1), rat(0)],
            ],
        );
        assert!(a4.intersection(&b4).is_zero());
        assert_eq!(a4.sum(&b4).dim(), 3);
    }

    #[test]
    fn span_e1_plus_e2_meets_span_e2_trivially() {
        // Solved by hand: span(e1+e2) ∩ span(e2) = 0, sum = R^2.
        let a = Subspace::from_spanning(2, &[vec![rat(1), rat(1)]]);
        let b = Subspace::from_spanning(2, &[vec![rat(0), rat(1)]]);
        assert!(a.intersection(&b).is_zero());
        assert_eq!(a.sum(&b), Subspace::full(2));
    }

    #[test]
    fn normal_form_is_deterministic() {
        let s1 = Subspace::from_spanning(
            3,
            &[vec![rat(2), rat(4), rat(0)], vec![rat(1), rat(3), rat(1)]],
        );
        let s2 = Subspace::from_spanning(
            3,
            &[vec![rat(3), rat(7), rat(1)], vec![rat(-1), rat(-1), rat(1)]],
        );
        assert_eq!(s1.basis(), s2.basis());
    }

    #[test]
    fn orthogonal_complement_with_gram() {
        let g = RMatrix::from_i64(vec![vec![2, 0], vec![0, 1]]);
        let a = Subspace::from_spanning(2, &[vec![rat(1), rat(0)]]);
        let c = a.orthogonal_complement(Some(&g)).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains_vector(&[rat(0), rat(1)]));
        // (V^⊥)^⊥ = V.
        assert_eq!(c.orthogonal_complement(Some(&g)).unwrap(), a);
    }

    #[test]
    fn rejects_non_spd_gram() {
        let g = RMatrix::from_i64(vec![vec![0, 1], vec![1, 0]]);
        let a = Subspace::from_spanning(2, &[vec![rat(1), rat(0)]]);
        assert!(matches!(
            a.orthogonal_complement(Some(&g)),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = RMatrix::from_i64(vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(m.determinant(), rat(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RMatrix::identity(2));
    }

    #[test]
    fn j_adapted_half_splits() {
        // Standard J on R^4.
        let j = RMatrix::from_i64(vec![
            vec![0, 0, -1, 0],
            vec![0, 0, 0, -1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
        ]);
        let full = Subspace::full(4);
        let half = full.j_adapted_half(&j, false);
        assert_eq!(half.dim(), 2);
        assert_eq!(half.sum(&half.map_by(&j)), full);
        assert!(half.intersection(&half.map_by(&j)).is_zero());
        // Forward preference picks the first two coordinates.
        assert!(half.contains_vector(&[rat(1), rat(0), rat(0), rat(0)]));
        // Reverse preference picks the last two.
        let half_late = full.j_adapted_half(&j, true);
        assert!(half_late.contains_vector(&[rat(0), rat(0), rat(1), rat(0)]));
    }
}
