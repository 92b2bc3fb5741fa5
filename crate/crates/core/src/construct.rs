//! The conservative algebra `x ⋆ y = T_x(y)` and the five-graded Lie algebra
//! `F(A) = F₋₂ ⊕ F₋₁ ⊕ F₀ ⊕ F₁ ⊕ F₂` of a structurable algebra.

use serde::Serialize;

use crate::algebra::{AlgebraWithInvolution, Table};
use crate::field::Q;
use crate::lie::{LieAlgebra, LieJson};
use crate::linalg::{add_vec, axpy, sub_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservativeAlgebra {
    pub table: Table,
}

pub fn allison_hein(a: &AlgebraWithInvolution) -> ConservativeAlgebra {
    let n = a.dim();
    let c = (0..n)
        .map(|i| {
            let t = a.t_operator(&a.basis(i));
            (0..n).map(|j| t.column(j)).collect()
        })
        .collect();
    ConservativeAlgebra { table: Table::new(c).expect("square") }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transforms {
    pub delta: Matrix,
    pub eps: Matrix,
    pub eps_delta: Matrix,
    pub bar: Matrix,
}

fn delta(a: &AlgebraWithInvolution, e: &Matrix) -> Matrix {
    let img = e.apply(&a.one());
    e.add(&a.table.right(&a.sigma.apply(&img)))
}

fn eps(a: &AlgebraWithInvolution, e: &Matrix) -> Matrix {
    let img = e.apply(&a.one());
    e.sub(&a.t_operator(&add_vec(&img, &a.sigma.apply(&img))))
}

/// `E^δ = E + R_{Ē(e₁)}`, `E^ε = E - T_{E(e₁)+Ē(e₁)}`, `E^{εδ} = (E^ε)^δ`, `Ē = σEσ`.
pub fn operator_transforms(a: &AlgebraWithInvolution, e: &Matrix) -> Result<Transforms> {
    if e.rows() != a.dim() || e.cols() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: e.rows() });
    }
    let eps_m = eps(a, e);
    Ok(Transforms {
        delta: delta(a, e),
        eps_delta: delta(a, &eps_m),
        eps: eps_m,
        bar: a.sigma.mul(e).mul(&a.sigma),
    })
}

/// Single matrix unit: `D(e_col) = e_row`.
pub fn matrix_unit(n: usize, row: usize, col: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m.set(row, col, Q::one());
    m
}

/// Basis of the inner structure algebra, named after the operators it uses.
pub fn instr(a: &AlgebraWithInvolution) -> Result<Vec<(String, Matrix)>> {
    let n = a.dim();
    let skew = a.hs_split()?.s_basis;
    let mut gens: Vec<Vector> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            gens.push(a.v_op(&a.basis(i), &a.basis(j)).flat().to_vec());
        }
    }
    for s in &skew {
        for r in &skew {
            gens.push(a.table.left(s).mul(&a.table.left(r)).flat().to_vec());
        }
    }
    let mut space = Subspace::span(n * n, &gens);
    let mut rounds = 0;
    loop {
        let ms: Vec<Matrix> = space.basis.iter().map(|v| Matrix::from_flat(n, n, v.clone())).collect();
        let mut vs = space.basis.clone();
        for x in &ms {
            for y in &ms {
                vs.push(x.commutator(y).flat().to_vec());
            }
        }
        let next = Subspace::span(n * n, &vs);
        if next.dim() == space.dim() {
            break;
        }
        space = next;
        rounds += 1;
        if rounds > n * n {
            return Err(Error::ClosureDiverged);
        }
    }
    // prefer T_{e_k}, then D_{e2,e3}
    let mut named: Vec<(String, Matrix)> = (0..n).map(|k| (format!("T_e{}", k + 1), a.t_operator(&a.basis(k)))).collect();
    if n >= 3 {
        named.push(("D_e2,e3".to_string(), matrix_unit(n, 1, 2)));
    }
    let mut chosen: Vec<(String, Matrix)> = Vec::new();
    let mut chosen_span = Subspace::zero(n * n);
    for (name, m) in named {
        if space.contains(m.flat()) && !chosen_span.contains(m.flat()) {
            chosen_span = chosen_span.sum(&Subspace::span(n * n, &[m.flat().to_vec()]));
            chosen.push((name, m));
        }
    }
    if chosen_span.dim() == space.dim() {
        return Ok(chosen);
    }
    Ok(space
        .basis
        .iter()
        .enumerate()
        .map(|(k, v)| (format!("instr_{}", k + 1), Matrix::from_flat(n, n, v.clone())))
        .collect())
}

/// An element `(x, s) + E + hat(y, r)` of `F(A)`.
#[derive(Clone, Debug)]
struct Elem {
    x: Vector,
    s: Vector,
    e: Matrix,
    hy: Vector,
    hr: Vector,
}

impl Elem {
    fn zero(n: usize) -> Self {
        Elem { x: zero_vec(n), s: zero_vec(n), e: Matrix::zeros(n, n), hy: zero_vec(n), hr: zero_vec(n) }
    }

    fn neg(self) -> Self {
        let m1 = Q::int(-1);
        let f = |v: Vector| v.iter().map(|c| -c).collect();
        Elem { x: f(self.x), s: f(self.s), e: self.e.scale(&m1), hy: f(self.hy), hr: f(self.hr) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Part {
    Plus1(usize),
    Plus2(usize),
    Zero(usize),
    Minus1(usize),
    Minus2(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedLieAlgebra {
    #[serde(skip)]
    pub lie: LieAlgebra,
    pub grades: Vec<i32>,
    pub provenance: Vec<String>,
}

impl GradedLieAlgebra {
    pub fn to_json(&self) -> LieJson {
        LieJson::from_lie(&self.lie, self.grades.clone(), self.provenance.clone())
    }

    /// Nonzero brackets landing outside `F_{i+j}`, as `(i, j)` pairs.
    pub fn grading_violations(&self) -> Vec<(usize, usize)> {
        let n = self.lie.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let g = self.grades[i] + self.grades[j];
                let v = self.lie.basis_bracket(i, j);
                if v.iter().enumerate().any(|(k, c)| !c.is_zero() && self.grades[k] != g) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

struct Builder<'a> {
    a: &'a AlgebraWithInvolution,
    n: usize,
    skew: Subspace,
    f0: Vec<Matrix>,
    f0_sys: Matrix,
    parts: Vec<Part>,
}

impl Builder<'_> {
    fn element(&self, p: &Part) -> Elem {
        let n = self.n;
        let mut el = Elem::zero(n);
        match *p {
            Part::Plus1(k) => el.x = unit_vec(n, k),
            Part::Plus2(t) => el.s = self.skew.basis[t].clone(),
            Part::Zero(t) => el.e = self.f0[t].clone(),
            Part::Minus1(k) => el.hy = unit_vec(n, k),
            Part::Minus2(t) => el.hr = self.skew.basis[t].clone(),
        }
        el
    }

    fn m(&self, x: &[Q], y: &[Q]) -> Vector {
        self.a.table.multiply(x, y)
    }

    /// `x ȳ - y x̄`
    fn skew_pair(&self, x: &[Q], y: &[Q]) -> Vector {
        let bar = |v: &[Q]| self.a.sigma.apply(v);
        sub_vec(&self.m(x, &bar(y)), &self.m(y, &bar(x)))
    }

    /// Bracket of two single-component elements, by the defining rules.
    fn rule(&self, p: &Part, u: &Elem, q: &Part, v: &Elem) -> Elem {
        use Part::*;
        let n = self.n;
        let mut out = Elem::zero(n);
        let plus = |p: &Part| matches!(p, Plus1(_) | Plus2(_));
        let minus = |p: &Part| matches!(p, Minus1(_) | Minus2(_));
        match (p, q) {
            (Zero(_), Zero(_)) => out.e = u.e.commutator(&v.e),
            (Zero(_), q) if plus(q) => {
                out.x = u.e.apply(&v.x);
                out.s = delta(self.a, &u.e).apply(&v.s);
            }
            (Zero(_), q) if minus(q) => {
                let ep = eps(self.a, &u.e);
                out.hy = ep.apply(&v.hy);
                out.hr = delta(self.a, &ep).apply(&v.hr);
            }
            (p, Zero(_)) => return self.rule(q, v, p, u).neg(),
            (p, q) if plus(p) && plus(q) => out.s = self.skew_pair(&u.x, &v.x),
            (p, q) if minus(p) && minus(q) => out.hr = self.skew_pair(&u.hy, &v.hy),
            (p, q) if plus(p) && minus(q) => {
                // [(x,s), hat(y,r)] = (sy, 0) - hat(rx, 0) + V_{x,y} + L_s L_r
                let (x, s, y, r) = (&u.x, &u.s, &v.hy, &v.hr);
                out.x = self.m(s, y);
                out.hy = self.m(r, x).iter().map(|c| -c).collect();
                out.e = self.a.v_op(x, y).add(&self.a.table.left(s).mul(&self.a.table.left(r)));
            }
            (p, q) => return self.rule(q, v, p, u).neg(),
        }
        out
    }

    fn coordinates(&self, el: &Elem) -> Result<Vector> {
        let mut out = Vec::new();
        let skew_coords = |v: &Vector| {
            self.skew.coordinates(v).ok_or_else(|| Error::F0NotClosed("bracket leaves the skew part".into()))
        };
        out.extend(el.x.iter().cloned());
        out.extend(skew_coords(&el.s)?);
        let c0 = self
            .f0_sys
            .solve(el.e.flat())
            .ok_or_else(|| Error::F0NotClosed("grade-zero bracket outside the instructure algebra".into()))?;
        out.extend(c0);
        out.extend(el.hy.iter().cloned());
        out.extend(skew_coords(&el.hr)?);
        debug_assert_eq!(out.len(), self.parts.len());
        Ok(out)
    }
}

/// Builds `F(A)` with basis order `F₁, F₂, F₀, F₋₁, F₋₂`.
pub fn ak_construct(a: &AlgebraWithInvolution) -> Result<GradedLieAlgebra> {
    let n = a.dim();
    let split = a.hs_split()?;
    let skew = Subspace::span(n, &split.s_basis);
    let named = instr(a)?;
    let f0: Vec<Matrix> = named.iter().map(|(_, m)| m.clone()).collect();
    let f0_sys = Matrix::from_columns(&f0.iter().map(|m| m.flat().to_vec()).collect::<Vec<_>>());
    let m = skew.dim();

    let mut parts = Vec::new();
    let mut grades = Vec::new();
    let mut provenance = Vec::new();
    let show = |v: &Vector| crate::reproduce::format_element(v);
    for k in 0..n {
        parts.push(Part::Plus1(k));
        grades.push(1);
        provenance.push(format!("F1:(e{},0)", k + 1));
    }
    for t in 0..m {
        parts.push(Part::Plus2(t));
        grades.push(2);
        provenance.push(format!("F2:(0,{})", show(&skew.basis[t])));
    }
    for (name, _) in &named {
        parts.push(Part::Zero(parts.len()));
        grades.push(0);
        provenance.push(format!("F0:{name}"));
    }
    for (t, p) in parts.iter_mut().filter(|p| matches!(p, Part::Zero(_))).enumerate() {
        *p = Part::Zero(t);
    }
    for k in 0..n {
        parts.push(Part::Minus1(k));
        grades.push(-1);
        provenance.push(format!("F-1:hat(e{},0)", k + 1));
    }
    for t in 0..m {
        parts.push(Part::Minus2(t));
        grades.push(-2);
        provenance.push(format!("F-2:hat(0,{})", show(&skew.basis[t])));
    }

    let builder = Builder { a, n, skew, f0, f0_sys, parts };
    let dim = builder.parts.len();
    let elems: Vec<Elem> = builder.parts.iter().map(|p| builder.element(p)).collect();
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let el = builder.rule(&builder.parts[i], &elems[i], &builder.parts[j], &elems[j]);
            for (k, c) in builder.coordinates(&el)?.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    let lie = LieAlgebra::from_entries(dim, &entries)?;
    Ok(GradedLieAlgebra { lie, grades, provenance })
}

/// Expresses `target` in terms of `basis` matrices, if possible.
pub fn decompose(basis: &[Matrix], target: &Matrix) -> Option<Vector> {
    let sys = Matrix::from_columns(&basis.iter().map(|m| m.flat().to_vec()).collect::<Vec<_>>());
    sys.solve(target.flat())
}

pub fn combination(basis: &[Matrix], coef: &[Q]) -> Matrix {
    let n = basis[0].rows();
    let mut acc = zero_vec(n * n);
    for (c, m) in coef.iter().zip(basis) {
        axpy(&mut acc, c, m.flat());
    }
    Matrix::from_flat(n, n, acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;
    use crate::registry::{canonical, Label::*};

    #[test]
    fn conservative_tables() {
        let c = allison_hein(&canonical(A1));
        assert_eq!(c.table.product(2, 0), &vec![q("0"), q("0"), q("3")]);
        let c = allison_hein(&canonical(S2));
        assert_eq!(c.table.product(1, 2), &vec![q("0"), q("-1"), q("0")]);
        for l in crate::registry::Label::registry() {
            let c = allison_hein(&canonical(l));
            for k in 0..3 {
                assert_eq!(c.table.product(0, k), &unit_vec(3, k));
            }
        }
    }

    #[test]
    fn transforms() {
        let a1 = canonical(A1);
        let t1 = a1.t_operator(&a1.basis(0));
        let tr = operator_transforms(&a1, &t1).unwrap();
        assert_eq!(tr.delta, t1.scale(&q("2")));
        assert_eq!(tr.eps, t1.scale(&q("-1")));
        let t3 = a1.t_operator(&a1.basis(2));
        let tr = operator_transforms(&a1, &t3).unwrap();
        assert!(tr.delta.is_zero());
        assert_eq!(tr.eps, t3);
        let s2 = canonical(S2);
        let tr = operator_transforms(&s2, &s2.t_operator(&s2.basis(1))).unwrap();
        assert_eq!(tr.delta, matrix_unit(3, 1, 2).scale(&q("2")));
        // bar-derivations are fixed by every transform
        for d in crate::analysis::as_matrices(&crate::analysis::derivation_algebra(&s2, true), 3) {
            let tr = operator_transforms(&s2, &d).unwrap();
            assert_eq!((&tr.delta, &tr.eps, &tr.bar), (&d, &d, &d));
        }
    }

    #[test]
    fn instr_bases() {
        let names = |l| instr(&canonical(l)).unwrap().into_iter().map(|(n, _)| n).collect::<Vec<_>>();
        assert_eq!(names(A1), ["T_e1", "T_e2", "T_e3"]);
        assert_eq!(names(A4), ["T_e1", "T_e2", "T_e3"]);
        assert_eq!(names(S2), ["T_e1", "T_e2", "T_e3", "D_e2,e3"]);
        let a4 = canonical(A4);
        let l33 = a4.table.left(&a4.basis(2)).mul(&a4.table.left(&a4.basis(2)));
        assert_eq!(l33, a4.t_operator(&a4.basis(1)).sub(&a4.t_operator(&a4.basis(0))));
    }

    #[test]
    fn ak_dims_and_jacobi() {
        let dims = [11, 11, 11, 11, 11, 13, 14];
        for (l, d) in crate::registry::Label::seven().into_iter().zip(dims) {
            let f = ak_construct(&canonical(l)).unwrap();
            assert_eq!(f.lie.dim(), d, "{l}");
            assert!(f.lie.check_jacobi().is_empty(), "{l}");
            assert!(f.grading_violations().is_empty(), "{l}");
        }
        let f = ak_construct(&canonical(A1)).unwrap();
        // [ε1, ε3] = -2ε4
        assert_eq!(f.lie.basis_bracket(0, 2), &{
            let mut v = zero_vec(11);
            v[3] = q("-2");
            v
        });
    }

    #[test]
    fn non_structurable_input_is_rejected_or_fails_jacobi() {
        let mut a5 = canonical(A5);
        a5.sigma = Matrix::identity(3);
        match ak_construct(&a5) {
            Err(_) => {}
            Ok(f) => assert!(!f.lie.check_jacobi().is_empty()),
        }
    }
}
