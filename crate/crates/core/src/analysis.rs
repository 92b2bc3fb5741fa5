//! Linear problems over an algebra: derivations, automorphism families,
//! degree-2 functional identities, and the subalgebra lattice.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraWithInvolution, Table};
use crate::expr::{Expr, Params};
use crate::field::Q;
use crate::linalg::{axpy, is_zero_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::{Error, Result};

/// Derivations of a bare multiplication table, as a subspace of flattened
/// (row-major) `n×n` matrices in column convention.
pub fn table_derivations(t: &Table) -> Subspace {
    let sys = Matrix::from_rows(derivation_rows(t)).expect("rectangular");
    Subspace::span(t.dim() * t.dim(), &sys.nullspace())
}

fn derivation_rows(t: &Table) -> Vec<Vector> {
    let n = t.dim();
    let at = |r: usize, c: usize| r * n + c;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // D(eᵢeⱼ) - D(eᵢ)eⱼ - eᵢD(eⱼ), coordinate k
                let mut row = zero_vec(n * n);
                for m in 0..n {
                    row[at(k, m)] += &t.product(i, j)[m];
                }
                for r in 0..n {
                    row[at(r, i)] -= &t.product(r, j)[k];
                    row[at(r, j)] -= &t.product(i, r)[k];
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
    rows
}

/// Derivations of `a`; with `bar_constrained` only those commuting with the involution.
pub fn derivation_algebra(a: &AlgebraWithInvolution, bar_constrained: bool) -> Subspace {
    let n = a.dim();
    let mut rows = derivation_rows(&a.table);
    if bar_constrained {
        for r in 0..n {
            for c in 0..n {
                // (Dσ - σD)[r][c]
                let mut row = zero_vec(n * n);
                for m in 0..n {
                    row[r * n + m] += a.sigma.get(m, c);
                    row[m * n + c] -= a.sigma.get(r, m);
                }
                rows.push(row);
            }
        }
    }
    Subspace::span(n * n, &Matrix::from_rows(rows).expect("rectangular").nullspace())
}

pub fn as_matrices(s: &Subspace, n: usize) -> Vec<Matrix> {
    s.basis.iter().map(|v| Matrix::from_flat(n, n, v.clone())).collect()
}

/// Commutators of basis elements stay inside the space.
pub fn is_lie_closed(s: &Subspace, n: usize) -> bool {
    let ms = as_matrices(s, n);
    ms.iter().all(|x| ms.iter().all(|y| s.contains(x.commutator(y).flat())))
}

/// A matrix whose entries are parameter expressions; columns are images of basis vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixTemplate(pub Vec<Vec<Expr>>);

impl MatrixTemplate {
    pub fn instantiate(&self, p: &Params) -> Result<Matrix> {
        let rows = self.0.iter().map(|r| r.iter().map(|e| e.eval(p)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

/// `φ` is bijective and multiplicative (the involution is ignored).
pub fn is_algebra_automorphism(a: &AlgebraWithInvolution, b: &AlgebraWithInvolution, phi: &Matrix) -> bool {
    if phi.rows() != b.dim() || phi.cols() != a.dim() || !phi.is_invertible() {
        return false;
    }
    let cols: Vec<Vector> = (0..a.dim()).map(|k| phi.column(k)).collect();
    (0..a.dim()).all(|i| {
        (0..a.dim()).all(|j| phi.apply(a.table.product(i, j)) == b.table.multiply(&cols[i], &cols[j]))
    })
}

/// Isomorphism of algebras with involution: bijective, multiplicative, `φσ_A = σ_B φ`.
pub fn verify_isomorphism(a: &AlgebraWithInvolution, b: &AlgebraWithInvolution, phi: &Matrix) -> Result<bool> {
    if a.dim() != b.dim() || phi.rows() != a.dim() || phi.cols() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: phi.rows().max(b.dim()) });
    }
    let ok = is_algebra_automorphism(a, b, phi) && phi.mul(&a.sigma) == b.sigma.mul(phi);
    if ok {
        assert_eq!(phi.apply(&a.one()), b.one(), "isomorphisms fix the unit");
    }
    Ok(ok)
}

/// Samples of the family that fail, with a reason. Errors on a singular sample.
pub fn automorphism_family_failures(
    a: &AlgebraWithInvolution,
    family: &MatrixTemplate,
    samples: &[Params],
    bar: bool,
) -> Result<Vec<(Params, String)>> {
    let mut out = Vec::new();
    for p in samples {
        let m = family.instantiate(p)?;
        if !m.is_invertible() {
            return Err(Error::SingularSample(format!("{p:?}")));
        }
        if !is_algebra_automorphism(a, a, &m) {
            out.push((p.clone(), "not multiplicative".to_string()));
        } else if bar && m.mul(&a.sigma) != a.sigma.mul(&m) {
            out.push((p.clone(), "does not commute with the involution".to_string()));
        }
    }
    Ok(out)
}

pub fn verify_automorphism_family(
    a: &AlgebraWithInvolution,
    family: &MatrixTemplate,
    samples: &[Params],
    bar: bool,
) -> Result<bool> {
    Ok(automorphism_family_failures(a, family, samples, bar)?.is_empty())
}

/// Coefficients of `a1 xy + a2 yx + b1 x̄y + b2 xȳ + b3 ȳx + b4 yx̄ + g1 bar(xy) + g2 bar(yx)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCoefficients {
    pub a1: Q,
    pub a2: Q,
    pub b1: Q,
    pub b2: Q,
    pub b3: Q,
    pub b4: Q,
    pub g1: Q,
    pub g2: Q,
}

pub const WORDS: [&str; 8] = ["xy", "yx", "x̄y", "xȳ", "ȳx", "yx̄", "bar(xy)", "bar(yx)"];

impl IdentityCoefficients {
    pub fn from_vec(v: &[Q]) -> Self {
        let g = |k: usize| v[k].clone();
        IdentityCoefficients { a1: g(0), a2: g(1), b1: g(2), b2: g(3), b3: g(4), b4: g(5), g1: g(6), g2: g(7) }
    }

    pub fn from_ints(v: [i64; 8]) -> Self {
        Self::from_vec(&v.map(Q::int))
    }

    pub fn to_vec(&self) -> Vector {
        [&self.a1, &self.a2, &self.b1, &self.b2, &self.b3, &self.b4, &self.g1, &self.g2].map(Q::clone).to_vec()
    }

    pub fn evaluate(&self, a: &AlgebraWithInvolution, x: &[Q], y: &[Q]) -> Vector {
        let words = identity_words(a, x, y);
        let mut out = zero_vec(a.dim());
        for (c, w) in self.to_vec().iter().zip(&words) {
            axpy(&mut out, c, w);
        }
        out
    }
}

fn identity_words(a: &AlgebraWithInvolution, x: &[Q], y: &[Q]) -> [Vector; 8] {
    let m = |u: &[Q], v: &[Q]| a.table.multiply(u, v);
    let bar = |u: &[Q]| a.sigma.apply(u);
    let (xb, yb) = (bar(x), bar(y));
    [m(x, y), m(y, x), m(&xb, y), m(x, &yb), m(&yb, x), m(y, &xb), bar(&m(x, y)), bar(&m(y, x))]
}

/// All coefficient vectors (in the order of [`WORDS`]) whose identity holds on `a`.
pub fn functional_identity_space(a: &AlgebraWithInvolution) -> Subspace {
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let w = identity_words(a, &unit_vec(n, i), &unit_vec(n, j));
            for k in 0..n {
                rows.push(w.iter().map(|v| v[k].clone()).collect::<Vector>());
            }
        }
    }
    Subspace::span(8, &Matrix::from_rows(rows).expect("rectangular").nullspace())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceChecks {
    pub is_subalgebra: bool,
    pub is_left_ideal: bool,
    pub is_right_ideal: bool,
    pub is_ideal: bool,
    pub is_bar_closed: bool,
}

pub fn subspace_checks(a: &AlgebraWithInvolution, s: &Subspace) -> Result<SubspaceChecks> {
    if s.ambient_dim != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: s.ambient_dim });
    }
    let n = a.dim();
    let m = |u: &[Q], v: &[Q]| a.table.multiply(u, v);
    let is_subalgebra = s.basis.iter().all(|u| s.basis.iter().all(|v| s.contains(&m(u, v))));
    let is_left_ideal = (0..n).all(|k| s.basis.iter().all(|v| s.contains(&m(&unit_vec(n, k), v))));
    let is_right_ideal = (0..n).all(|k| s.basis.iter().all(|v| s.contains(&m(v, &unit_vec(n, k)))));
    let is_bar_closed = s.basis.iter().all(|v| s.contains(&a.sigma.apply(v)));
    Ok(SubspaceChecks {
        is_subalgebra,
        is_left_ideal,
        is_right_ideal,
        is_ideal: is_left_ideal && is_right_ideal,
        is_bar_closed,
    })
}

/// A parametric subspace: the span of vectors whose coordinates are affine in the parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(default)]
    pub params: Vec<String>,
    pub vectors: Vec<Vec<Expr>>,
}

impl FamilySpec {
    pub fn at(&self, p: &Params) -> Result<Subspace> {
        let n = self.vectors.first().map_or(0, Vec::len);
        let vs = self.vectors.iter().map(|v| v.iter().map(|e| e.eval(p)).collect::<Result<Vector>>()).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(n, &vs))
    }

    /// Constant part and per-parameter parts of each spanning vector.
    fn affine_parts(&self) -> Option<Vec<(Vector, Vec<Vector>)>> {
        self.vectors
            .iter()
            .map(|v| {
                let mut c0 = Vec::new();
                let mut lin = vec![Vec::new(); self.params.len()];
                for e in v {
                    let (c, l) = e.affine(&self.params)?;
                    c0.push(c);
                    for (k, x) in l.into_iter().enumerate() {
                        lin[k].push(x);
                    }
                }
                Some((c0, lin))
            })
            .collect()
    }
}

/// Whether some parameter values in Q(i) make the family's span equal to `s`.
pub fn family_membership(s: &Subspace, family: &FamilySpec) -> bool {
    if family.vectors.len() != s.dim() || family.vectors.iter().any(|v| v.len() != s.ambient_dim) {
        return false;
    }
    let Some(parts) = family.affine_parts() else { return false };
    let np = family.params.len();
    // every spanning vector must reduce to zero against s: linear in the parameters
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    for (c0, lin) in &parts {
        let r0 = s.residual(c0);
        let rl: Vec<Vector> = lin.iter().map(|l| s.residual(l)).collect();
        for k in 0..s.ambient_dim {
            rows.push((0..np).map(|t| rl[t][k].clone()).collect());
            rhs.push(-&r0[k]);
        }
    }
    let candidates: Vec<Vector> = if np == 0 {
        if !is_zero_vec(&rhs) {
            return false;
        }
        vec![vec![]]
    } else {
        let sys = Matrix::from_rows(rows).expect("rectangular");
        let Some(x0) = sys.solve(&rhs) else { return false };
        let null = sys.nullspace();
        let mut cands = vec![x0.clone()];
        for d in &null {
            for c in [1, -1, 2] {
                let mut x = x0.clone();
                axpy(&mut x, &Q::int(c), d);
                cands.push(x);
            }
        }
        cands
    };
    candidates.iter().any(|x| {
        let p: Params = family.params.iter().cloned().zip(x.iter().cloned()).collect();
        family.at(&p).map(|f| &f == s).unwrap_or(false)
    })
}

/// Distinct values `p/q + (r/s) i` with `|p|, |r| ≤ bound` and `1 ≤ q, s ≤ bound`.
pub fn grid_values(bound: i64) -> Vec<Q> {
    let mut reals: Vec<Q> = Vec::new();
    for p in -bound..=bound {
        for d in 1..=bound {
            let v = Q::frac(p, d);
            if !reals.contains(&v) {
                reals.push(v);
            }
        }
    }
    let mut out = Vec::new();
    for re in &reals {
        for im in &reals {
            out.push(re + &(im * &Q::i()));
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out.sort();
    out
}

/// All `k`-dimensional subalgebras whose echelon entries lie in the grid.
pub fn enumerate_subalgebras(a: &AlgebraWithInvolution, k: usize, grid_bound: i64) -> Vec<Subspace> {
    let n = a.dim();
    let grid = grid_values(grid_bound.max(1));
    let g = grid.len();
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = g.pow(free.len() as u32);
        let hits: Vec<Subspace> = (0..total)
            .into_par_iter()
            .filter_map(|mut idx| {
                let mut basis: Vec<Vector> = pivots.iter().map(|&p| unit_vec(n, p)).collect();
                for &(r, c) in &free {
                    basis[r][c] = grid[idx % g].clone();
                    idx /= g;
                }
                let s = Subspace { ambient_dim: n, basis };
                let closed = s.basis.iter().all(|u| s.basis.iter().all(|v| s.contains(&a.table.multiply(u, v))));
                closed.then_some(s)
            })
            .collect();
        out.extend(hits);
    }
    out
}

pub fn subalgebra_residual(a: &AlgebraWithInvolution, s: &Subspace) -> Vec<Vector> {
    s.basis.iter().flat_map(|u| s.basis.iter().map(move |v| s.residual(&a.table.multiply(u, v)))).collect()
}

/// Generators given by their nonzero images, e.g. `d(e3) = e2`.
pub fn generator_matrix(n: usize, images: &[(usize, Vector)]) -> Matrix {
    let mut cols: Vec<Vector> = (0..n).map(|_| zero_vec(n)).collect();
    for (src, img) in images {
        cols[*src] = img.clone();
    }
    Matrix::from_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::params;
    use crate::field::q;
    use crate::registry::{canonical, Label, Label::*};
    use proptest::prelude::*;

    fn e(k: usize) -> Vector {
        unit_vec(3, k)
    }

    fn tmpl(rows: [[&str; 3]; 3]) -> MatrixTemplate {
        MatrixTemplate(rows.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect())
    }

    fn fam(ps: &[&str], vs: &[[&str; 3]]) -> FamilySpec {
        FamilySpec {
            params: ps.iter().map(|s| s.to_string()).collect(),
            vectors: vs.iter().map(|v| v.iter().map(|s| s.parse().unwrap()).collect()).collect(),
        }
    }

    #[test]
    fn derivation_dims() {
        let der = [4, 2, 1, 0, 2, 4, 2];
        let bar = [2, 1, 1, 0, 1, 4, 2];
        for (k, l) in Label::seven().into_iter().enumerate() {
            let a = canonical(l);
            let d = derivation_algebra(&a, false);
            let db = derivation_algebra(&a, true);
            assert_eq!((d.dim(), db.dim()), (der[k], bar[k]), "{l}");
            assert!(is_lie_closed(&d, 3) && is_lie_closed(&db, 3));
            for m in as_matrices(&d, 3) {
                assert!(is_zero_vec(&m.apply(&e(0))));
            }
            assert_eq!(table_derivations(&a.table), d);
        }
    }

    #[test]
    fn automorphism_examples() {
        let a1 = canonical(A1);
        assert!(verify_isomorphism(&a1, &a1, &Matrix::diag(&[q("1"), q("2"), q("5")])).unwrap());
        let a2 = canonical(A2);
        assert!(verify_isomorphism(&a2, &a2, &Matrix::diag(&[q("1"), q("4"), q("2")])).unwrap());
        let fam2 = tmpl([["1", "0", "0"], ["0", "a^2", "b"], ["0", "0", "a"]]);
        let mut samples = Vec::new();
        for a in ["1", "2", "3", "i"] {
            for b in ["0", "1"] {
                samples.push(params(&[("a", q(a)), ("b", q(b))]));
            }
        }
        assert!(verify_automorphism_family(&a2, &fam2, &samples, false).unwrap());
        assert!(!verify_automorphism_family(&a2, &fam2, &samples, true).unwrap());
        let a4 = canonical(A4);
        let fam4 = tmpl([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "s"]]);
        let signs = [params(&[("s", q("1"))]), params(&[("s", q("-1"))])];
        assert!(verify_automorphism_family(&a4, &fam4, &signs, true).unwrap());
        let a3 = canonical(A3);
        let off = tmpl([["1", "0", "0"], ["0", "2", "1"], ["0", "0", "3"]]);
        assert!(!verify_automorphism_family(&a3, &off, &[Params::new()], false).unwrap());
        let singular = tmpl([["1", "0", "0"], ["0", "a", "0"], ["0", "0", "1"]]);
        assert!(matches!(
            verify_automorphism_family(&a3, &singular, &[params(&[("a", q("0"))])], false),
            Err(Error::SingularSample(_))
        ));
        assert!(!verify_isomorphism(&a1, &a1, &Matrix::zeros(3, 3)).unwrap());
    }

    #[test]
    fn identity_spaces() {
        let f1 = IdentityCoefficients::from_ints([1, -1, 0, 0, 0, 0, -1, 1]).to_vec();
        let f2 = IdentityCoefficients::from_ints([0, 0, 1, 1, -1, -1, 0, 0]).to_vec();
        let a5 = functional_identity_space(&canonical(A5));
        assert!(a5.contains(&f1) && a5.contains(&f2));
        assert_eq!(a5, Subspace::span(8, &[f1, f2]));
        let g: Vec<Vector> = [[1, -1, 1, 0, 0, -1, 0, 0], [1, -1, 0, 1, -1, 0, 0, 0], [1, -1, 0, 0, 0, 0, 1, -1]]
            .iter()
            .map(|v| IdentityCoefficients::from_ints(*v).to_vec())
            .collect();
        let s2 = functional_identity_space(&canonical(S2));
        assert!(Subspace::span(8, &g).is_subspace_of(&s2));
    }

    #[test]
    fn checks_and_families() {
        let a1 = canonical(A1);
        let s = Subspace::coordinate(3, &[1, 2]);
        let c = subspace_checks(&a1, &s).unwrap();
        assert!(c.is_subalgebra && c.is_ideal && c.is_bar_closed);
        let a4 = canonical(A4);
        let s = Subspace::span(3, &[vec![q("1"), q("0"), q("i")], e(1)]);
        let c = subspace_checks(&a4, &s).unwrap();
        assert!(c.is_ideal && !c.is_bar_closed);
        let c = subspace_checks(&a4, &Subspace::coordinate(3, &[0])).unwrap();
        assert!(c.is_subalgebra && !c.is_ideal);

        let f = fam(&["a"], &[["0", "a", "1"]]);
        assert!(family_membership(&Subspace::span(3, &[vec![q("0"), q("3"), q("1")]]), &f));
        assert!(!family_membership(&Subspace::coordinate(3, &[1]), &f));
        let f2 = fam(&["a"], &[["1", "0", "0"], ["0", "a", "1"]]);
        assert!(family_membership(&Subspace::span(3, &[vec![q("2"), q("1"), q("1/2")], e(0)]), &f2));
    }

    #[test]
    fn enumeration_examples() {
        let a2 = canonical(A2);
        let hits = enumerate_subalgebras(&a2, 1, 3);
        assert!(hits.iter().all(|s| *s == Subspace::coordinate(3, &[0]) || *s == Subspace::coordinate(3, &[1])));
        assert_eq!(hits.len(), 2);
        let a4 = canonical(A4);
        let hits = enumerate_subalgebras(&a4, 1, 2);
        let target = Subspace::span(3, &[vec![q("1"), q("1"), q("i")]]);
        assert!(hits.contains(&target));
        let a5 = canonical(A5);
        let fams = [
            fam(&[], &[["1", "0", "0"]]),
            fam(&[], &[["0", "1", "0"]]),
            fam(&["a"], &[["1", "a", "1"]]),
            fam(&["a"], &[["1", "a", "-1"]]),
        ];
        for s in enumerate_subalgebras(&a5, 1, 2) {
            assert!(fams.iter().any(|f| family_membership(&s, f)), "{s:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn derivations_form_lie_algebras(l in prop::sample::select(Label::registry().to_vec()), c in prop::collection::vec(-2i64..3, 3)) {
            let mut a = canonical(l);
            // perturb towards a generic, possibly non-structurable table
            let mut v = a.table.product(1, 1).clone();
            for (x, d) in v.iter_mut().zip(&c) {
                *x += &Q::int(*d);
            }
            a.table.set_product(1, 1, v);
            let d = derivation_algebra(&a, false);
            prop_assert!(is_lie_closed(&d, 3));
            let db = derivation_algebra(&a, true);
            prop_assert!(db.is_subspace_of(&d));
            prop_assert!(is_lie_closed(&db, 3));
        }
    }
}
