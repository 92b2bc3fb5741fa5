//! Dense exact matrices over Q(i) and subspaces in reduced row-echelon form.

use serde::{Deserialize, Serialize};

use crate::field::Q;
use crate::{Error, Result};

pub type Vector = Vec<Q>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn unit_vec(n: usize, k: usize) -> Vector {
    let mut v = zero_vec(n);
    v[k] = Q::one();
    v
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Q::is_zero)
}

pub fn add_vec(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Q, a: &[Q]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Q], c: &Q, v: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

/// Row-major matrix. As a linear map its columns are the images of basis vectors.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Q>>", into = "Vec<Vec<Q>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

pub type LinearMap = Matrix;

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}

impl TryFrom<Vec<Vec<Q>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Q>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<Q>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Q::one());
        }
        m
    }

    pub fn diag(entries: &[Q]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (k, e) in entries.iter().enumerate() {
            m.set(k, k, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, got: bad.len() });
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(cols: &[Vector]) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vector) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    /// Shorthand for integer-literal tables.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::int(x)).collect()).collect())
            .expect("ragged literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn flat(&self) -> &[Q] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn apply(&self, v: &[Q]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        let mut m = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            let out = &mut m.data[r * o.cols..(r + 1) * o.cols];
            for k in 0..self.cols {
                axpy(out, self.get(r, k), o.row(k));
            }
        }
        m
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: add_vec(&self.data, &o.data) }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: sub_vec(&self.data, &o.data) }
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: scale_vec(c, &self.data) }
    }

    /// `self * o - o * self`
    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> Q {
        let mut t = Q::zero();
        for k in 0..self.rows.min(self.cols) {
            t += self.get(k, k);
        }
        t
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols);
        let data = rows.into_iter().flatten().collect();
        (Matrix { rows: self.rows, cols: self.cols, data }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column (that entry set to 1).
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vec(self.cols);
                v[f] = Q::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(k, f);
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut rows: Vec<Vector> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = rows[k][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vector> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend(crate::linalg::unit_vec(n, r));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix { rows: n, cols: n, data: rows.into_iter().flat_map(|r| r[n..].to_vec()).collect() })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Change of basis: `P⁻¹ · self · P` where the columns of `P` are the new basis.
    pub fn conjugate_by(&self, p: &Matrix, p_inv: &Matrix) -> Matrix {
        p_inv.mul(self).mul(p)
    }
}

/// Gauss-Jordan elimination on the first `width` columns; returns pivot columns.
fn rref_in_place(rows: &mut [Vector], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..width {
        if lead == rows.len() {
            break;
        }
        let Some(found) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(lead, found);
        let inv = rows[lead][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[lead].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[lead].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != lead && !row[col].is_zero() {
                let c = -&row[col];
                axpy(row, &c, &pivot_row);
            }
        }
        pivots.push(col);
        lead += 1;
    }
    pivots
}

/// A subspace of `Q(i)^n`, stored as the unique reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<Vector>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace<{}>{:?}", self.ambient_dim, self.basis)
    }
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Self {
        let mut rows: Vec<Vector> = vectors.to_vec();
        for v in &rows {
            assert_eq!(v.len(), ambient_dim, "vector outside ambient space");
        }
        let rank = rref_in_place(&mut rows, ambient_dim).len();
        rows.truncate(rank);
        Subspace { ambient_dim, basis: rows }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: (0..ambient_dim).map(|k| unit_vec(ambient_dim, k)).collect() }
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vector> = indices.iter().map(|&k| unit_vec(ambient_dim, k)).collect();
        Self::span(ambient_dim, &vs)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("RREF rows are nonzero"))
            .collect()
    }

    /// `v` minus its projection along the pivot columns; zero iff `v` lies in the span.
    pub fn residual(&self, v: &[Q]) -> Vector {
        let mut r = v.to_vec();
        for (row, p) in self.basis.iter().zip(self.pivots()) {
            let c = -&r[p];
            axpy(&mut r, &c, row);
        }
        r
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vec(&self.residual(v))
    }

    /// Coordinates of a member `v` in the echelon basis.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // a·U = b·W  <=>  (a, -b) in the nullspace of [Uᵀ | Wᵀ]
        let (k, m) = (self.dim(), other.dim());
        if k == 0 || m == 0 {
            return Subspace::zero(self.ambient_dim);
        }
        let mut cols: Vec<Vector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| scale_vec(&Q::int(-1), w)));
        let sys = Matrix::from_columns(&cols);
        let vs: Vec<Vector> = sys
            .nullspace()
            .into_iter()
            .map(|coef| {
                let mut v = zero_vec(self.ambient_dim);
                for (c, u) in coef[..k].iter().zip(&self.basis) {
                    axpy(&mut v, c, u);
                }
                v
            })
            .collect();
        Subspace::span(self.ambient_dim, &vs)
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let vs: Vec<Vector> = self.basis.iter().map(|v| m.apply(v)).collect();
        Subspace::span(m.rows(), &vs)
    }
}
