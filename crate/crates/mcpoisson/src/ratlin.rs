//! Dense linear algebra over arbitrary-precision rationals.
//!
//! Everything downstream rests on this module: pairings are inverted,
//! differentials are transposed, kernels and quotients are extracted, all
//! in exact arithmetic with zero tolerance. Reduction uses deterministic
//! first-nonzero pivoting, so every decomposition (and hence every report
//! built on one) is byte-for-byte reproducible.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

/// The scalar field: arbitrary-precision rationals.
pub type Q = BigRational;

/// The rational `n`.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// The rational `n / d`. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with optional sign into a rational.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational literal".to_string());
    }
    let mut parts = t.splitn(2, '/');
    let num_part = parts.next().unwrap().trim();
    let num: BigInt = num_part
        .parse()
        .map_err(|_| format!("invalid integer `{num_part}` in rational `{t}`"))?;
    match parts.next() {
        None => Ok(Q::from_integer(num)),
        Some(den_part) => {
            let den_part = den_part.trim();
            let den: BigInt = den_part
                .parse()
                .map_err(|_| format!("invalid denominator `{den_part}` in rational `{t}`"))?;
            if den.is_zero() {
                return Err(format!("zero denominator in rational `{t}`"));
            }
            Ok(Q::new(num, den))
        }
    }
}

/// Renders a rational as `"p"` or `"p/q"`, the inverse of [`parse_q`].
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Returns true when every entry of the slice is zero.
pub fn vec_is_zero(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Componentwise `a + c * b`.
pub fn vec_axpy(a: &[Q], c: &Q, b: &[Q]) -> Vec<Q> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

/// Componentwise sum.
pub fn vec_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Componentwise difference.
pub fn vec_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scalar multiple.
pub fn vec_scale(c: &Q, a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| c * x).collect()
}

/// Euclidean dot product.
pub fn vec_dot(a: &[Q], b: &[Q]) -> Q {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// A dense rational matrix in row-major order. Zero rows or columns are
/// legal; degree components of graded spaces are frequently empty.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_q).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    /// The zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Builds a matrix from explicit rows, which must all have equal
    /// length. An empty row list yields a `0 x cols` matrix.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Q>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        RationalMatrix {
            rows: nrows,
            cols,
            data,
        }
    }

    /// Builds a matrix entrywise.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    /// Borrows row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Copies the rows out as owned vectors.
    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| vec_dot(self.row(i), v)).collect()
    }

    /// Row-vector-matrix product `v^T * self`.
    pub fn vec_mul(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.rows, v.len(), "dimension mismatch");
        let mut out = vec![Q::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] = &out[j] + c * self.get(i, j);
            }
        }
        out
    }

    /// Stacks `other` below `self`; column counts must agree.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form with deterministic first-nonzero pivoting:
    /// columns are scanned left to right and the topmost available row with
    /// a nonzero entry becomes the pivot.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(r) = found else { continue };
            if r != pivot_row {
                for j in 0..m.cols {
                    m.data.swap(r * m.cols + j, pivot_row * m.cols + j);
                }
            }
            let inv = {
                let p = m.get(pivot_row, col).clone();
                Q::one() / p
            };
            for j in col..m.cols {
                let v = m.get(pivot_row, j) * &inv;
                m.set(pivot_row, j, v);
            }
            for r2 in 0..m.rows {
                if r2 == pivot_row || m.get(r2, col).is_zero() {
                    continue;
                }
                let factor = m.get(r2, col).clone();
                for j in col..m.cols {
                    let v = m.get(r2, j) - &factor * m.get(pivot_row, j);
                    m.set(r2, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    /// Full reduction data for `self` viewed as a map `k^cols -> k^rows`:
    /// rank, pivot columns, null space and column space.
    pub fn rref_decompose(&self) -> RrefDecomposition {
        let (rref, pivots) = self.rref();
        let rank = pivots.len();

        // Null space: one basis vector per free column, with the free
        // coordinate set to 1 and pivot coordinates read off the RREF.
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let mut kernel_rows = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref.get(r, free).clone();
            }
            kernel_rows.push(v);
        }
        let kernel = Subspace::from_rref_unchecked(self.cols, kernel_rows);

        // Column space, canonicalized as the row space of the transpose.
        let image = Subspace::span(self.rows, &self.transpose().to_rows());

        RrefDecomposition {
            rref,
            rank,
            pivots,
            kernel,
            image,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solves `self * x = b` exactly, setting all free variables to zero.
    /// Returns `None` when the system is inconsistent.
    pub fn solve_linear(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(self.rows, b.len(), "dimension mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Exact inverse, or `None` when the matrix is singular or not square.
    pub fn invert(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }
}

/// The result of [`RationalMatrix::rref_decompose`].
pub struct RrefDecomposition {
    /// The reduced row echelon form.
    pub rref: RationalMatrix,
    /// Number of pivots.
    pub rank: usize,
    /// Pivot column of each nonzero RREF row, in order.
    pub pivots: Vec<usize>,
    /// Null space of the matrix, inside `k^cols`.
    pub kernel: Subspace,
    /// Column space of the matrix, inside `k^rows`.
    pub image: Subspace,
}

/// A linear subspace of `k^n`, stored as the canonical RREF basis of its
/// span. Two subspaces are equal exactly when their stored bases are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The zero subspace of `k^n`.
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RationalMatrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    /// All of `k^n`.
    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RationalMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of the given vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Q>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "ambient dimension mismatch");
        }
        let m = RationalMatrix::from_rows(ambient, vectors.to_vec());
        let (rref, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| rref.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis: RationalMatrix::from_rows(ambient, rows),
            pivots,
        }
    }

    fn from_rref_unchecked(ambient: usize, rows: Vec<Vec<Q>>) -> Self {
        // Kernel bases from rref_decompose are independent but not in RREF
        // order; renormalize through span for a canonical form.
        Self::span(ambient, &rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical basis, one vector per row.
    pub fn basis_rows(&self) -> Vec<Vec<Q>> {
        self.basis.to_rows()
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, v: &[Q]) -> bool {
        self.coords_of(v).is_some()
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` lies
    /// outside the subspace. Because the basis is in RREF, the coordinate
    /// against row `i` is just the entry of `v` at the pivot column.
    pub fn coords_of(&self, v: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let coords: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = self.basis.row(i);
            for j in 0..self.ambient {
                residual[j] = &residual[j] - c * &row[j];
            }
        }
        if vec_is_zero(&residual) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.to_rows().iter().all(|v| self.contains(v))
    }

    /// Sum of subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis.to_rows();
        rows.extend(other.basis.to_rows());
        Subspace::span(self.ambient, &rows)
    }

    /// Intersection of subspaces: coefficient pairs `(x, y)` with
    /// `x^T A = y^T B` are the null space of `[A^T | -B^T]`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let p = self.dim();
        let q = other.dim();
        if p == 0 || q == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut m = RationalMatrix::zeros(self.ambient, p + q);
        for j in 0..p {
            for i in 0..self.ambient {
                m.set(i, j, self.basis.get(j, i).clone());
            }
        }
        for j in 0..q {
            for i in 0..self.ambient {
                m.set(i, p + j, -other.basis.get(j, i).clone());
            }
        }
        let dec = m.rref_decompose();
        let mut rows = Vec::new();
        for k in dec.kernel.basis_rows() {
            let x = &k[0..p];
            rows.push(self.basis.vec_mul(x));
        }
        Subspace::span(self.ambient, &rows)
    }
}

/// A quotient `V / W` of nested subspaces of `k^n`, with a deterministic
/// choice of representatives: the canonical basis vectors of `V` whose
/// coordinate is free once `W` is written in `V`-coordinates.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    v: Subspace,
    w: Subspace,
    /// `W` in `V`-coordinates, in RREF.
    w_in_v: RationalMatrix,
    w_pivots: Vec<usize>,
    /// Indices of `V`-basis vectors surviving into the quotient.
    free: Vec<usize>,
}

impl QuotientSpace {
    /// Forms `V / W`. Fails when `W` is not contained in `V`.
    pub fn new(v: Subspace, w: Subspace) -> Result<QuotientSpace, String> {
        if v.ambient_dim() != w.ambient_dim() {
            return Err("ambient dimension mismatch in quotient".to_string());
        }
        let mut w_coord_rows = Vec::new();
        for wv in w.basis_rows() {
            match v.coords_of(&wv) {
                Some(c) => w_coord_rows.push(c),
                None => return Err("subspace is not contained in the total space".to_string()),
            }
        }
        let m = RationalMatrix::from_rows(v.dim(), w_coord_rows);
        let (w_in_v_full, w_pivots) = m.rref();
        let w_in_v = RationalMatrix::from_rows(
            v.dim(),
            (0..w_pivots.len())
                .map(|i| w_in_v_full.row(i).to_vec())
                .collect(),
        );
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; v.dim()];
            for &p in &w_pivots {
                s[p] = true;
            }
            s
        };
        let free = (0..v.dim()).filter(|&i| !pivot_set[i]).collect();
        Ok(QuotientSpace {
            v,
            w,
            w_in_v,
            w_pivots,
            free,
        })
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn total(&self) -> &Subspace {
        &self.v
    }

    pub fn subspace(&self) -> &Subspace {
        &self.w
    }

    /// Ambient representatives of the quotient basis, one per dimension.
    pub fn representatives(&self) -> Vec<Vec<Q>> {
        let rows = self.v.basis_rows();
        self.free.iter().map(|&i| rows[i].clone()).collect()
    }

    /// Coordinates of `v + W` in the quotient basis, or `None` when `v`
    /// lies outside the total space.
    pub fn coords_of(&self, vec: &[Q]) -> Option<Vec<Q>> {
        let mut c = self.v.coords_of(vec)?;
        for (row, &p) in self.w_pivots.iter().enumerate() {
            if c[p].is_zero() {
                continue;
            }
            let factor = c[p].clone();
            let wrow = self.w_in_v.row(row);
            for j in 0..c.len() {
                c[j] = &c[j] - &factor * &wrow[j];
            }
        }
        Some(self.free.iter().map(|&i| c[i].clone()).collect())
    }

    /// True when `v` lies in `W`, i.e. projects to zero.
    pub fn projects_to_zero(&self, vec: &[Q]) -> bool {
        matches!(self.coords_of(vec), Some(c) if vec_is_zero(&c))
    }
}

/// True when `m` is square and equal to its own transpose.
pub fn is_symmetric(m: &RationalMatrix) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    for i in 0..m.rows() {
        for j in (i + 1)..m.cols() {
            if m.get(i, j) != m.get(j, i) {
                return false;
            }
        }
    }
    true
}

/// Sign of a rational: -1, 0, or 1.
pub fn q_sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "7/2", "-9/4", "100000000000000000001/3"] {
            let x = parse_q(s).unwrap();
            assert_eq!(format_q(&x), s);
        }
        assert_eq!(parse_q("4/2").unwrap(), qi(2));
        assert_eq!(parse_q(" 1 / 3 ").unwrap(), q(1, 3));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("").is_err());
        assert!(parse_q("a/b").is_err());
        assert!(parse_q("1.5").is_err());
    }

    #[test]
    fn rref_uses_first_nonzero_pivoting() {
        // Column 0 is zero in row 0, so row 1 must be swapped up; no
        // partial-pivot magnitude heuristics are involved.
        let m = RationalMatrix::from_rows(
            3,
            vec![qv(&[0, 2, 4]), qv(&[1, 1, 1]), qv(&[1, 3, 5])],
        );
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.row(0), &qv(&[1, 0, -1])[..]);
        assert_eq!(r.row(1), &qv(&[0, 1, 2])[..]);
        assert!(vec_is_zero(r.row(2)));
    }

    #[test]
    fn decomposition_splits_rank_kernel_image() {
        let m = RationalMatrix::from_rows(
            3,
            vec![qv(&[1, 2, 3]), qv(&[2, 4, 6]), qv(&[1, 0, 1])],
        );
        let dec = m.rref_decompose();
        assert_eq!(dec.rank, 2);
        assert_eq!(dec.kernel.dim(), 1);
        assert_eq!(dec.image.dim(), 2);
        for k in dec.kernel.basis_rows() {
            assert!(vec_is_zero(&m.mul_vec(&k)));
        }
        // Each column of m lies in the image.
        let mt = m.transpose();
        for col in mt.to_rows() {
            assert!(dec.image.contains(&col));
        }
    }

    #[test]
    fn empty_shapes_are_legal() {
        let m = RationalMatrix::zeros(0, 3);
        let dec = m.rref_decompose();
        assert_eq!(dec.rank, 0);
        assert_eq!(dec.kernel.dim(), 3);
        assert_eq!(dec.image.dim(), 0);

        let m = RationalMatrix::zeros(3, 0);
        let dec = m.rref_decompose();
        assert_eq!(dec.rank, 0);
        assert_eq!(dec.kernel.dim(), 0);

        assert_eq!(Subspace::zero(0).dim(), 0);
        assert!(Subspace::zero(4).contains(&qv(&[0, 0, 0, 0])));
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        // x + 2y + 3z = 6 with two free variables: the solver must pick
        // the pivot-only solution (6, 0, 0).
        let m = RationalMatrix::from_rows(3, vec![qv(&[1, 2, 3])]);
        let x = m.solve_linear(&qv(&[6])).unwrap();
        assert_eq!(x, qv(&[6, 0, 0]));

        let m = RationalMatrix::from_rows(
            2,
            vec![qv(&[1, 1]), qv(&[1, 1]), qv(&[0, 0])],
        );
        assert_eq!(m.solve_linear(&qv(&[2, 2, 0])).unwrap(), qv(&[2, 0]));
        assert!(m.solve_linear(&qv(&[2, 3, 0])).is_none());
        assert!(m.solve_linear(&qv(&[0, 0, 1])).is_none());
    }

    #[test]
    fn inverse_round_trips_and_rejects_singular() {
        let m = RationalMatrix::from_rows(
            3,
            vec![qv(&[2, 1, 0]), qv(&[1, 1, 0]), qv(&[0, 3, 1])],
        );
        let inv = m.invert().unwrap();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(3));
        assert_eq!(inv.mul(&m), RationalMatrix::identity(3));

        let s = RationalMatrix::from_rows(2, vec![qv(&[1, 2]), qv(&[2, 4])]);
        assert!(s.invert().is_none());
    }

    #[test]
    fn subspace_operations_are_exact() {
        let a = Subspace::span(3, &[qv(&[1, 0, 0]), qv(&[0, 1, 0])]);
        let b = Subspace::span(3, &[qv(&[0, 1, 0]), qv(&[0, 0, 1])]);
        let cap = a.intersect(&b);
        assert_eq!(cap.dim(), 1);
        assert!(cap.contains(&qv(&[0, 5, 0])));
        let sum = a.sum(&b);
        assert_eq!(sum.dim(), 3);

        // Independent generators presented redundantly still canonicalize.
        let c = Subspace::span(3, &[qv(&[1, 1, 0]), qv(&[2, 2, 0]), qv(&[1, 0, 0])]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c, a);
    }

    #[test]
    fn intersection_of_generic_planes_is_a_line() {
        let a = Subspace::span(3, &[qv(&[1, 0, 1]), qv(&[0, 1, 0])]);
        let b = Subspace::span(3, &[qv(&[1, 1, 0]), qv(&[0, 0, 1])]);
        let cap = a.intersect(&b);
        assert_eq!(cap.dim(), 1);
        for v in cap.basis_rows() {
            assert!(a.contains(&v) && b.contains(&v));
        }
    }

    #[test]
    fn quotient_coordinates_kill_the_subspace() {
        let v = Subspace::full(3);
        let w = Subspace::span(3, &[qv(&[1, 1, 0])]);
        let q = QuotientSpace::new(v, w).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.projects_to_zero(&qv(&[3, 3, 0])));
        assert!(!q.projects_to_zero(&qv(&[1, 0, 0])));
        // Vectors differing by W get equal coordinates.
        let c1 = q.coords_of(&qv(&[2, 0, 5])).unwrap();
        let c2 = q.coords_of(&qv(&[3, 1, 5])).unwrap();
        assert_eq!(c1, c2);

        let not_nested = QuotientSpace::new(
            Subspace::span(3, &[qv(&[1, 0, 0])]),
            Subspace::span(3, &[qv(&[0, 1, 0])]),
        );
        assert!(not_nested.is_err());
    }

    #[test]
    fn quotient_representatives_project_to_unit_coordinates() {
        let v = Subspace::full(4);
        let w = Subspace::span(4, &[qv(&[1, 0, 0, -1]), qv(&[0, 1, 1, 0])]);
        let q = QuotientSpace::new(v, w).unwrap();
        assert_eq!(q.dim(), 2);
        let reps = q.representatives();
        for (i, rep) in reps.iter().enumerate() {
            let c = q.coords_of(rep).unwrap();
            for (j, cj) in c.iter().enumerate() {
                assert_eq!(*cj, if i == j { qi(1) } else { qi(0) });
            }
        }
    }

    #[test]
    fn randomized_rank_nullity_and_solve_consistency() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let rows = rng.gen_range(0..6);
            let cols = rng.gen_range(0..6);
            let m = RationalMatrix::from_fn(rows, cols, |_, _| {
                q(rng.gen_range(-4..5), rng.gen_range(1..4))
            });
            let dec = m.rref_decompose();
            assert_eq!(dec.rank + dec.kernel.dim(), cols);
            assert_eq!(dec.image.dim(), dec.rank);
            for k in dec.kernel.basis_rows() {
                assert!(vec_is_zero(&m.mul_vec(&k)));
            }
            // A right-hand side built from a known solution is solvable,
            // and the solution returned reproduces it.
            if cols > 0 {
                let x0: Vec<Q> = (0..cols).map(|_| qi(rng.gen_range(-3..4))).collect();
                let b = m.mul_vec(&x0);
                let x = m.solve_linear(&b).expect("consistent system");
                assert_eq!(m.mul_vec(&x), b);
            }
        }
    }
}
