//! Finite-dimensional Lie algebras over Q(i) given by structure constants.

use serde::{Deserialize, Serialize};

use crate::field::Q;
use crate::linalg::{axpy, is_zero_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    dim: usize,
    /// `b[i][j]` = coordinates of `[bᵢ, bⱼ]`.
    b: Vec<Vec<Vector>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiDefect {
    pub triple: (usize, usize, usize),
    pub defect: Vector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

impl LieAlgebra {
    pub fn new(b: Vec<Vec<Vector>>) -> Result<Self> {
        let dim = b.len();
        for (i, row) in b.iter().enumerate() {
            if row.len() != dim || row.iter().any(|v| v.len() != dim) {
                return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
            }
            for j in 0..dim {
                let neg: Vector = b[j][i].iter().map(|x| -x).collect();
                if row[j] != neg {
                    return Err(Error::Malformed(format!("bracket not antisymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(LieAlgebra { dim, b })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, b: vec![vec![zero_vec(dim); dim]; dim] }
    }

    /// Builds from entries `[bᵢ, bⱼ] += c·bₖ`, filling in antisymmetry.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Q)]) -> Result<Self> {
        let mut b = vec![vec![zero_vec(dim); dim]; dim];
        let mut set = vec![vec![false; dim]; dim];
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::Malformed(format!("index out of range in ({i}, {j}, {k})")));
            }
            if i == j {
                return Err(Error::Malformed(format!("diagonal bracket ({i}, {i})")));
            }
            if set[*j][*i] {
                return Err(Error::Malformed(format!("both ({i}, {j}) and ({j}, {i}) given")));
            }
            set[*i][*j] = true;
            b[*i][*j][*k] += c;
            b[*j][*i][*k] -= c;
        }
        Ok(LieAlgebra { dim, b })
    }

    /// Nonzero entries `(i, j, k, c)` with `i < j`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Q)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, c) in self.b[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.b[i][j]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vector {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && i != j {
                    axpy(&mut out, &(xi * yj), &self.b[i][j]);
                }
            }
        }
        out
    }

    /// `ad x`, columns `[x, bⱼ]`.
    pub fn ad(&self, x: &[Q]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.bracket(x, &unit_vec(self.dim, j))).collect();
        Matrix::from_columns(&cols)
    }

    pub fn check_jacobi(&self) -> Vec<JacobiDefect> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let e = |t: usize| unit_vec(n, t);
                    let mut d = self.bracket(&self.b[i][j], &e(k));
                    for x in [self.bracket(&self.b[j][k], &e(i)), self.bracket(&self.b[k][i], &e(j))] {
                        for (a, y) in d.iter_mut().zip(&x) {
                            *a += y;
                        }
                    }
                    if !is_zero_vec(&d) {
                        out.push(JacobiDefect { triple: (i, j, k), defect: d });
                    }
                }
            }
        }
        out
    }

    /// `[U, W]`
    pub fn bracket_spaces(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let vs: Vec<Vector> = u.basis.iter().flat_map(|x| w.basis.iter().map(move |y| self.bracket(x, y))).collect();
        Subspace::span(self.dim, &vs)
    }

    /// Descending chain starting at the whole algebra, ending at the first repeated term.
    pub fn series(&self, kind: SeriesKind) -> Vec<Subspace> {
        self.series_of(&Subspace::full(self.dim), kind)
    }

    /// Chain inside a subalgebra `s`: derived `s⁽ᵏ⁺¹⁾ = [s⁽ᵏ⁾, s⁽ᵏ⁾]`, lower central `sᵏ⁺¹ = [s, sᵏ]`.
    pub fn series_of(&self, s: &Subspace, kind: SeriesKind) -> Vec<Subspace> {
        let mut chain = vec![s.clone()];
        loop {
            let last = chain.last().unwrap();
            let next = match kind {
                SeriesKind::Derived => self.bracket_spaces(last, last),
                SeriesKind::LowerCentral => self.bracket_spaces(s, last),
            };
            if next == *last {
                return chain;
            }
            chain.push(next);
        }
    }

    pub fn derived(&self) -> Subspace {
        let full = Subspace::full(self.dim);
        self.bracket_spaces(&full, &full)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived().dim() == self.dim
    }

    pub fn killing_form(&self) -> Matrix {
        let ads: Vec<Matrix> = (0..self.dim).map(|i| self.ad(&unit_vec(self.dim, i))).collect();
        let mut k = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let t = ads[i].mul(&ads[j]).trace();
                k.set(i, j, t.clone());
                k.set(j, i, t);
            }
        }
        k
    }

    /// Killing-orthogonal complement of `[L, L]`.
    pub fn radical(&self) -> Subspace {
        let k = self.killing_form();
        let d = self.derived();
        if d.dim() == 0 {
            return Subspace::full(self.dim);
        }
        let rows: Vec<Vector> = d.basis.iter().map(|v| k.apply(v)).collect();
        Subspace::span(self.dim, &Matrix::from_rows(rows).expect("rectangular").nullspace())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        self.bracket_spaces(s, s).is_subspace_of(s)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        self.bracket_spaces(&Subspace::full(self.dim), s).is_subspace_of(s)
    }

    pub fn is_abelian_on(&self, s: &Subspace) -> bool {
        self.bracket_spaces(s, s).dim() == 0
    }

    pub fn is_solvable_on(&self, s: &Subspace) -> bool {
        self.series_of(s, SeriesKind::Derived).last().is_some_and(|t| t.dim() == 0)
    }

    /// Smallest `k` with `sᵏ = 0` in the lower central series (`s¹ = s`), if nilpotent.
    pub fn nilindex_of(&self, s: &Subspace) -> Option<usize> {
        let chain = self.series_of(s, SeriesKind::LowerCentral);
        let last = chain.last().unwrap();
        if last.dim() != 0 {
            return None;
        }
        Some(chain.len())
    }

    /// Structure constants of a subalgebra in its echelon basis.
    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebra> {
        if !self.is_subalgebra(s) {
            return Err(Error::Malformed("not a subalgebra".into()));
        }
        let b = s
            .basis
            .iter()
            .map(|x| s.basis.iter().map(|y| s.coordinates(&self.bracket(x, y)).expect("closed")).collect())
            .collect();
        Ok(LieAlgebra { dim: s.dim(), b })
    }

    /// `L / I` on the classes of the basis vectors outside the pivot columns of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<LieAlgebra> {
        if !self.is_ideal(ideal) {
            return Err(Error::Malformed("not an ideal".into()));
        }
        let piv = ideal.pivots();
        let keep: Vec<usize> = (0..self.dim).filter(|k| !piv.contains(k)).collect();
        let b = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| {
                        let r = ideal.residual(&self.b[i][j]);
                        keep.iter().map(|&k| r[k].clone()).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(LieAlgebra { dim: keep.len(), b })
    }

    /// Profile of `L / rad L`.
    pub fn levi_profile(&self) -> Result<SemisimpleProfile> {
        self.quotient(&self.radical())?.semisimple_profile()
    }

    /// Same algebra in the basis given by the columns of `p`.
    pub fn transport(&self, p: &Matrix) -> Result<LieAlgebra> {
        let p_inv = p.inverse().ok_or_else(|| Error::Malformed("basis change is singular".into()))?;
        let cols: Vec<Vector> = (0..self.dim).map(|k| p.column(k)).collect();
        let b = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| p_inv.apply(&self.bracket(&cols[i], &cols[j]))).collect())
            .collect();
        Ok(LieAlgebra { dim: self.dim, b })
    }

    /// Endomorphisms commuting with every `ad x`.
    pub fn centroid(&self) -> Vec<Matrix> {
        let n = self.dim;
        let mut rows = Vec::new();
        for x in 0..n {
            let ad = self.ad(&unit_vec(n, x));
            // (C·ad - ad·C)[r][c], unknown C[a][b] at a*n+b
            for r in 0..n {
                for c in 0..n {
                    let mut row = zero_vec(n * n);
                    for m in 0..n {
                        row[r * n + m] += ad.get(m, c);
                        row[m * n + c] -= ad.get(r, m);
                    }
                    if !is_zero_vec(&row) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            rows.push(zero_vec(n * n));
        }
        let ns = Matrix::from_rows(rows).expect("rectangular").nullspace();
        ns.into_iter().map(|v| Matrix::from_flat(n, n, v)).collect()
    }

    /// Minimal ideals of a semisimple algebra, in this algebra's coordinates.
    pub fn simple_ideals(&self) -> Result<Vec<Subspace>> {
        if self.killing_form().rank() != self.dim {
            return Err(Error::DegenerateKilling);
        }
        let mut out = Vec::new();
        self.split_into(&Subspace::full(self.dim), &mut out)?;
        out.sort_by_key(|s| (s.dim(), s.pivots()));
        Ok(out)
    }

    fn split_into(&self, space: &Subspace, out: &mut Vec<Subspace>) -> Result<()> {
        let m = self.restrict(space)?;
        let n = m.dim;
        let id = Matrix::identity(n);
        let cent = m.centroid();
        let Some(c) = cent.iter().find(|c| {
            let scalar = c.get(0, 0).clone();
            **c != id.scale(&scalar)
        }) else {
            out.push(space.clone());
            return Ok(());
        };
        let lambda = eigenvalue(c).ok_or_else(|| Error::Malformed("centroid eigenvalue outside Q(i)".into()))?;
        let shifted = c.sub(&id.scale(&lambda));
        let kernel = Subspace::span(n, &shifted.nullspace());
        let image = Subspace::full(n).image(&shifted);
        let lift = |s: &Subspace| -> Subspace {
            let vs: Vec<Vector> = s
                .basis
                .iter()
                .map(|coef| {
                    let mut v = zero_vec(self.dim);
                    for (c, b) in coef.iter().zip(&space.basis) {
                        axpy(&mut v, c, b);
                    }
                    v
                })
                .collect();
            Subspace::span(self.dim, &vs)
        };
        self.split_into(&lift(&kernel), out)?;
        self.split_into(&lift(&image), out)
    }

    /// Dimension of the centralizer of the best element of the deterministic sweep.
    pub fn rank_by_sweep(&self) -> usize {
        let n = self.dim;
        let mut best = 0;
        for k in [1i64, 2, 3, 5, 7] {
            let mut x = zero_vec(n);
            let mut pow = Q::one();
            for t in x.iter_mut() {
                *t = pow.clone();
                pow = &pow * &Q::int(k);
            }
            best = best.max(self.ad(&x).rank());
        }
        n - best
    }

    pub fn semisimple_profile(&self) -> Result<SemisimpleProfile> {
        let ideals = self.simple_ideals()?;
        let mut comps = Vec::new();
        for s in &ideals {
            let piece = self.restrict(s)?;
            let rank = piece.rank_by_sweep();
            let label = match (s.dim(), rank) {
                (3, 1) => "sl2",
                (8, 2) => "sl3",
                _ => "unknown",
            };
            comps.push((s.dim(), rank, label.to_string()));
        }
        Ok(SemisimpleProfile {
            simple_ideal_dims: comps.iter().map(|c| c.0).collect(),
            ranks: comps.iter().map(|c| c.1).collect(),
            labels: comps.iter().map(|c| c.2.clone()).collect(),
            ideals,
        })
    }

    /// Levi data check: `r` is the radical, `s` a complementary subalgebra with nondegenerate Killing form.
    pub fn levi_verify(&self, cand: &LeviCandidate) -> bool {
        let (s, r) = (&cand.s_basis, &cand.r_basis);
        if s.dim() + r.dim() != self.dim || s.intersection(r).dim() != 0 {
            return false;
        }
        if *r != self.radical() || !self.is_subalgebra(s) {
            return false;
        }
        match self.restrict(s) {
            Ok(piece) => piece.killing_form().rank() == s.dim(),
            Err(_) => false,
        }
    }
}

/// Some eigenvalue in Q(i) of a diagonalizable matrix, read off from a short Krylov chain.
fn eigenvalue(c: &Matrix) -> Option<Q> {
    let n = c.rows();
    for j in 0..n {
        let v = unit_vec(n, j);
        let cv = c.apply(&v);
        // degree one: cv is a multiple of v
        if (0..n).all(|t| t == j || cv[t].is_zero()) {
            return Some(cv[j].clone());
        }
    }
    for j in 0..n {
        let v = unit_vec(n, j);
        let cv = c.apply(&v);
        let ccv = c.apply(&cv);
        // c²v = p·cv + q·v
        let sys = Matrix::from_columns(&[cv.clone(), v.clone()]);
        if let Some(pq) = sys.solve(&ccv) {
            let disc = &(&pq[0] * &pq[0]) + &(&pq[1] * &Q::int(4));
            let root = disc.sqrt_in_field()?;
            return Some(&(&pq[0] + &root) * &Q::frac(1, 2));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimpleProfile {
    pub simple_ideal_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub labels: Vec<String>,
    #[serde(skip)]
    pub ideals: Vec<Subspace>,
}

impl SemisimpleProfile {
    /// `sl2+sl3` style summary, components in increasing dimension.
    pub fn summary(&self) -> String {
        self.labels.join("+")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviCandidate {
    pub s_basis: Subspace,
    pub r_basis: Subspace,
}

/// Lie interchange form: `{"dim", "grades", "brackets": [[i, j, k, "c"], ...]}` with `i < j`, 0-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub grades: Vec<i32>,
    pub brackets: Vec<(usize, usize, usize, Q)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

impl LieJson {
    pub fn from_lie(l: &LieAlgebra, grades: Vec<i32>, labels: Vec<String>) -> Self {
        LieJson { dim: l.dim(), grades, brackets: l.entries(), labels }
    }

    pub fn to_lie(&self) -> Result<LieAlgebra> {
        LieAlgebra::from_entries(self.dim, &self.brackets)
    }
}
