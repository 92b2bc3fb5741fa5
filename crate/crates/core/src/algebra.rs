//! Unital algebras with involution given by structure constants.

use serde::{Deserialize, Serialize};

use crate::field::Q;
use crate::linalg::{add_vec, axpy, is_zero_vec, sub_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::{Error, Result};

pub type Element = Vector;

/// Structure constants: `table[i][j]` holds the coordinates of `eᵢ·eⱼ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Table {
    dim: usize,
    c: Vec<Vec<Vector>>,
}

impl Table {
    pub fn new(c: Vec<Vec<Vector>>) -> Result<Self> {
        let dim = c.len();
        for row in &c {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
                }
            }
        }
        Ok(Table { dim, c })
    }

    pub fn zero(dim: usize) -> Self {
        Table { dim, c: vec![vec![zero_vec(dim); dim]; dim] }
    }

    /// Table with `e_unit` acting as a two-sided identity and all other products zero.
    pub fn unital(dim: usize, unit: usize) -> Self {
        let mut t = Self::zero(dim);
        for k in 0..dim {
            t.c[unit][k] = unit_vec(dim, k);
            t.c[k][unit] = unit_vec(dim, k);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.c[i][j]
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vector) {
        assert_eq!(v.len(), self.dim);
        self.c[i][j] = v;
    }

    pub fn constants(&self) -> &Vec<Vec<Vector>> {
        &self.c
    }

    pub fn multiply(&self, x: &[Q], y: &[Q]) -> Vector {
        debug_assert!(x.len() == self.dim && y.len() == self.dim);
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &self.c[i][j]);
            }
        }
        out
    }

    pub fn left(&self, x: &[Q]) -> Matrix {
        Matrix::from_columns(&(0..self.dim).map(|j| self.multiply(x, &unit_vec(self.dim, j))).collect::<Vec<_>>())
    }

    pub fn right(&self, x: &[Q]) -> Matrix {
        Matrix::from_columns(&(0..self.dim).map(|j| self.multiply(&unit_vec(self.dim, j), x)).collect::<Vec<_>>())
    }

    /// Table of the same algebra in the basis given by the columns of `p`.
    pub fn transport(&self, p: &Matrix) -> Result<Table> {
        let p_inv = p.inverse().ok_or_else(|| Error::Malformed("basis change is singular".into()))?;
        let cols: Vec<Vector> = (0..self.dim).map(|k| p.column(k)).collect();
        let c = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| p_inv.apply(&self.multiply(&cols[i], &cols[j]))).collect())
            .collect();
        Ok(Table { dim: self.dim, c })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.c[i][j] == self.c[j][i]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    L,
    R,
    T,
}

/// A finite-dimensional algebra with a distinguished unit basis vector and an involution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraWithInvolution {
    pub table: Table,
    pub unit: usize,
    pub sigma: Matrix,
    pub label: Option<String>,
}

/// Hermitian and skew parts of an involution.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HSSplit {
    pub h_basis: Vec<Element>,
    pub s_basis: Vec<Element>,
}

impl HSSplit {
    pub fn kind(&self) -> (usize, usize) {
        (self.h_basis.len(), self.s_basis.len())
    }
}

impl AlgebraWithInvolution {
    /// Only shapes are checked here; see [`AlgebraWithInvolution::defects`] for the axioms.
    pub fn new(table: Table, unit: usize, sigma: Matrix, label: Option<String>) -> Result<Self> {
        let n = table.dim();
        if sigma.rows() != n || sigma.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: sigma.rows() });
        }
        if unit >= n {
            return Err(Error::Malformed(format!("unit index {unit} out of range")));
        }
        Ok(AlgebraWithInvolution { table, unit, sigma, label })
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn basis(&self, k: usize) -> Element {
        unit_vec(self.dim(), k)
    }

    pub fn one(&self) -> Element {
        self.basis(self.unit)
    }

    fn check(&self, x: &[Q]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }

    pub fn multiply(&self, x: &[Q], y: &[Q]) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.table.multiply(x, y))
    }

    pub fn involve(&self, x: &[Q]) -> Result<Element> {
        self.check(x)?;
        Ok(self.sigma.apply(x))
    }

    fn mul(&self, x: &[Q], y: &[Q]) -> Element {
        self.table.multiply(x, y)
    }

    fn bar(&self, x: &[Q]) -> Element {
        self.sigma.apply(x)
    }

    pub fn operator(&self, kind: OperatorKind, x: &[Q]) -> Result<Matrix> {
        self.check(x)?;
        Ok(match kind {
            OperatorKind::L => self.table.left(x),
            OperatorKind::R => self.table.right(x),
            OperatorKind::T => self.t_operator(x),
        })
    }

    /// `T_x(z) = xz + zx - z x̄`
    pub fn t_operator(&self, x: &[Q]) -> Matrix {
        self.table.left(x).add(&self.table.right(x)).sub(&self.table.right(&self.bar(x)))
    }

    /// `V_{x,y}(z) = (x ȳ) z + (z ȳ) x - (z x̄) y`
    pub fn v_operator(&self, x: &[Q], y: &[Q]) -> Result<Matrix> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.v_op(x, y))
    }

    pub(crate) fn v_op(&self, x: &[Q], y: &[Q]) -> Matrix {
        let n = self.dim();
        let (xb, yb) = (self.bar(x), self.bar(y));
        let x_yb = self.mul(x, &yb);
        let cols: Vec<Vector> = (0..n)
            .map(|k| {
                let z = unit_vec(n, k);
                let a = self.mul(&x_yb, &z);
                let b = self.mul(&self.mul(&z, &yb), x);
                let c = self.mul(&self.mul(&z, &xb), y);
                sub_vec(&add_vec(&a, &b), &c)
            })
            .collect();
        Matrix::from_columns(&cols)
    }

    /// The expanded identity, term by term:
    /// `(T_z V_{x,y} - V_{x,y} T_z)(t) - (V_{T_z x, y} - V_{x, T_z̄ y})(t)`.
    pub fn id_defect(&self, x: &[Q], y: &[Q], z: &[Q], t: &[Q]) -> Result<Element> {
        for v in [x, y, z, t] {
            self.check(v)?;
        }
        Ok(self.id_raw(x, y, z, t))
    }

    fn id_raw(&self, x: &[Q], y: &[Q], z: &[Q], t: &[Q]) -> Element {
        let m = |a: &[Q], b: &[Q]| self.mul(a, b);
        let (xb, yb, zb) = (self.bar(x), self.bar(y), self.bar(z));

        let xyb = m(x, &yb);
        let xyb_t = m(&xyb, t);
        let tyb_x = m(&m(t, &yb), x);
        let txb_y = m(&m(t, &xb), y);
        let (zt, tz, tzb) = (m(z, t), m(t, z), m(t, &zb));

        let plus = [
            m(z, &xyb_t),
            m(z, &tyb_x),
            m(&xyb_t, z),
            m(&tyb_x, z),
            m(&txb_y, &zb),
            m(&xyb, &tzb),
            m(&m(&tzb, &yb), x),
            m(&m(&zt, &xb), y),
            m(&m(&tz, &xb), y),
        ];
        let minus = [
            m(z, &txb_y),
            m(&txb_y, z),
            m(&xyb_t, &zb),
            m(&tyb_x, &zb),
            m(&xyb, &zt),
            m(&xyb, &tz),
            m(&m(&zt, &yb), x),
            m(&m(&tz, &yb), x),
            m(&m(&tzb, &xb), y),
        ];
        let first = sub_vec(&sum(&plus), &sum(&minus));

        let tyb = m(t, &yb);
        let txb = m(t, &xb);
        let plus2 = [
            m(&m(&m(z, x), &yb), t),
            m(&m(&m(x, z), &yb), t),
            m(&tyb, &m(z, x)),
            m(&tyb, &m(x, z)),
            m(&m(t, &m(z, &xb)), y),
            m(&m(x, &m(&zb, &yb)), t),
            m(&m(t, &m(&zb, &yb)), x),
            m(&txb, &m(&zb, y)),
            m(&txb, &m(y, &zb)),
        ];
        let minus2 = [
            m(&m(&m(x, &zb), &yb), t),
            m(&tyb, &m(x, &zb)),
            m(&m(t, &m(&xb, &zb)), y),
            m(&m(t, &m(&zb, &xb)), y),
            m(&m(x, &m(&yb, z)), t),
            m(&m(x, &m(z, &yb)), t),
            m(&m(t, &m(&yb, z)), x),
            m(&m(t, &m(z, &yb)), x),
            m(&txb, &m(y, z)),
        ];
        let second = sub_vec(&sum(&plus2), &sum(&minus2));
        sub_vec(&first, &second)
    }

    /// First basis quadruple `(i, j, k, l)` where the identity fails, with its defect.
    pub fn first_violation(&self) -> Option<((usize, usize, usize, usize), Element)> {
        let n = self.dim();
        let e: Vec<Vector> = (0..n).map(|k| unit_vec(n, k)).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let d = self.id_raw(&e[i], &e[j], &e[k], &e[l]);
                        if !is_zero_vec(&d) {
                            return Some(((i, j, k, l), d));
                        }
                    }
                }
            }
        }
        None
    }

    /// Well formed as an algebra with involution and satisfying the identity.
    pub fn is_structurable(&self) -> bool {
        self.defects().is_empty() && self.first_violation().is_none()
    }

    /// Violated axioms of a unital algebra with involution (empty when well formed).
    pub fn defects(&self) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        for k in 0..n {
            let e = self.basis(k);
            if self.mul(&self.one(), &e) != e || self.mul(&e, &self.one()) != e {
                out.push(format!("e{} is not a two-sided unit on e{}", self.unit + 1, k + 1));
            }
        }
        if self.sigma.mul(&self.sigma) != Matrix::identity(n) {
            out.push("involution does not square to the identity".into());
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.basis(i), self.basis(j));
                if self.bar(&self.mul(&a, &b)) != self.mul(&self.bar(&b), &self.bar(&a)) {
                    out.push(format!("involution is not an anti-automorphism on (e{}, e{})", i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn hs_split(&self) -> Result<HSSplit> {
        let n = self.dim();
        let id = Matrix::identity(n);
        let h = Subspace::span(n, &self.sigma.sub(&id).nullspace());
        let s = Subspace::span(n, &self.sigma.add(&id).nullspace());
        if h.dim() + s.dim() != n {
            return Err(Error::InvolutionNotDiagonalizable);
        }
        Ok(HSSplit { h_basis: h.basis, s_basis: s.basis })
    }

    /// The same algebra written in the basis given by the columns of `p`.
    pub fn transport(&self, p: &Matrix) -> Result<AlgebraWithInvolution> {
        let p_inv = p.inverse().ok_or_else(|| Error::Malformed("basis change is singular".into()))?;
        let table = self.table.transport(p)?;
        let sigma = self.sigma.conjugate_by(p, &p_inv);
        let one = p_inv.apply(&self.one());
        let unit = (0..self.dim())
            .find(|&k| one == unit_vec(self.dim(), k))
            .ok_or_else(|| Error::Malformed("basis change does not keep the unit as a basis vector".into()))?;
        Ok(AlgebraWithInvolution { table, unit, sigma, label: self.label.clone() })
    }
}

fn sum(vs: &[Vector]) -> Vector {
    let mut acc = zero_vec(vs[0].len());
    for v in vs {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += x;
        }
    }
    acc
}

/// JSON interchange form: `{"dim", "unit", "table", "involution", "label"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub unit: usize,
    pub table: Vec<Vec<Vec<Q>>>,
    pub involution: Vec<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl From<&AlgebraWithInvolution> for AlgebraJson {
    fn from(a: &AlgebraWithInvolution) -> Self {
        AlgebraJson {
            dim: a.dim(),
            unit: a.unit,
            table: a.table.constants().clone(),
            involution: a.sigma.to_rows(),
            label: a.label.clone(),
        }
    }
}

impl TryFrom<AlgebraJson> for AlgebraWithInvolution {
    type Error = Error;
    fn try_from(j: AlgebraJson) -> Result<Self> {
        let table = Table::new(j.table)?;
        if table.dim() != j.dim {
            return Err(Error::DimensionMismatch { expected: j.dim, got: table.dim() });
        }
        AlgebraWithInvolution::new(table, j.unit, Matrix::from_rows(j.involution)?, j.label)
    }
}

impl AlgebraWithInvolution {
    pub fn from_json(text: &str) -> Result<Self> {
        let j: AlgebraJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        j.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AlgebraJson::from(self)).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;
    use crate::registry::{canonical, Label};
    use proptest::prelude::*;

    fn e(n: usize, k: usize) -> Vector {
        unit_vec(n, k)
    }

    #[test]
    fn products_and_involution() {
        let a2 = canonical(Label::A2);
        assert_eq!(a2.multiply(&e(3, 2), &e(3, 2)).unwrap(), e(3, 1));
        let a5 = canonical(Label::A5);
        assert_eq!(a5.multiply(&e(3, 1), &e(3, 2)).unwrap(), e(3, 1));
        assert_eq!(a5.multiply(&e(3, 2), &e(3, 1)).unwrap(), vec![q("0"), q("-1"), q("0")]);
        let a1 = canonical(Label::A1);
        assert_eq!(a1.involve(&e(3, 2)).unwrap(), vec![q("0"), q("0"), q("-1")]);
        assert_eq!(a1.involve(&e(3, 0)).unwrap(), e(3, 0));
        let s1 = canonical(Label::S1);
        assert_eq!(s1.involve(&e(3, 1)).unwrap(), vec![q("0"), q("-1"), q("0")]);
        assert!(a1.multiply(&e(2, 0), &e(3, 0)).is_err());
    }

    #[test]
    fn operators() {
        let a1 = canonical(Label::A1);
        let t3 = a1.t_operator(&e(3, 2));
        let mut expect = Matrix::zeros(3, 3);
        expect.set(2, 0, q("3"));
        assert_eq!(t3, expect);
        assert_eq!(a1.t_operator(&e(3, 0)), Matrix::identity(3));
        assert_eq!(a1.v_operator(&e(3, 0), &e(3, 2)).unwrap(), t3.scale(&q("-1")));
        let s2 = canonical(Label::S2);
        assert_eq!(s2.t_operator(&e(3, 1)).apply(&e(3, 0)), vec![q("0"), q("3"), q("0")]);
        let mut d = Matrix::zeros(3, 3);
        d.set(1, 2, Q::one());
        let v23 = s2.v_operator(&e(3, 1), &e(3, 2)).unwrap();
        assert_eq!(v23, s2.t_operator(&e(3, 1)).scale(&q("1/3")).sub(&d.scale(&q("8/3"))));
    }

    #[test]
    fn defect_examples() {
        // e2e2 = e1 in the type (2,1) pattern
        let mut t = Table::unital(3, 0);
        t.set_product(1, 1, e(3, 0));
        let a = AlgebraWithInvolution::new(t, 0, Matrix::diag(&[q("1"), q("1"), q("-1")]), None).unwrap();
        let d = a.id_defect(&e(3, 2), &e(3, 0), &e(3, 1), &e(3, 1)).unwrap();
        assert_eq!(d, vec![q("0"), q("0"), q("-2")]);
        assert!(!a.is_structurable());
        let u = canonical(Label::Universal(1, 2));
        assert!(u.is_structurable());
    }

    #[test]
    fn a5_with_trivial_involution_is_not_structurable() {
        let mut a5 = canonical(Label::A5);
        a5.sigma = Matrix::identity(3);
        assert!(!a5.is_structurable());
        assert!(!a5.defects().is_empty());
    }

    #[test]
    fn split_types() {
        assert_eq!(canonical(Label::A1).hs_split().unwrap().kind(), (2, 1));
        let s = canonical(Label::S1).hs_split().unwrap();
        assert_eq!(s.h_basis, vec![e(3, 0)]);
        assert_eq!(s.s_basis, vec![e(3, 1), e(3, 2)]);
        assert_eq!(canonical(Label::J2).hs_split().unwrap().kind(), (3, 0));
    }

    #[test]
    fn json_round_trip() {
        let a = canonical(Label::A4);
        let back = AlgebraWithInvolution::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }

    /// Independent evaluation through composed operators.
    fn id_by_operators(a: &AlgebraWithInvolution, x: &[Q], y: &[Q], z: &[Q], t: &[Q]) -> Vector {
        let tz = a.t_operator(z);
        let vxy = a.v_op(x, y);
        let tzx = tz.apply(x);
        let tzb_y = a.t_operator(&a.bar(z)).apply(y);
        let lhs = tz.mul(&vxy).sub(&vxy.mul(&tz));
        let rhs = a.v_op(&tzx, y).sub(&a.v_op(x, &tzb_y));
        lhs.sub(&rhs).apply(t)
    }

    fn elem() -> impl Strategy<Value = Vector> {
        prop::collection::vec((-3i64..4, -2i64..3).prop_map(|(r, i)| Q::complex(r, 1, i, 1)), 3)
    }

    /// Perturbs a registry table, then symmetrizes `a·b = (a*b + bar(b̄*ā))/2` so the involution stays an anti-automorphism.
    fn perturbed_algebra() -> impl Strategy<Value = AlgebraWithInvolution> {
        (prop::sample::select(Label::registry().to_vec()), prop::collection::vec(-2i64..3, 4)).prop_map(|(l, p)| {
            let mut a = canonical(l);
            let mut v = a.table.product(1, 2).clone();
            v[0] += &Q::int(p[0]);
            v[1] += &Q::int(p[1]);
            a.table.set_product(1, 2, v);
            let mut w = a.table.product(2, 2).clone();
            w[1] += &Q::int(p[2]);
            w[2] += &Q::int(p[3]);
            a.table.set_product(2, 2, w);
            let raw = a.table.clone();
            let half = Q::frac(1, 2);
            for i in 0..3 {
                for j in 0..3 {
                    let (ei, ej) = (a.basis(i), a.basis(j));
                    let swapped = a.sigma.apply(&raw.multiply(&a.sigma.apply(&ej), &a.sigma.apply(&ei)));
                    let sym: Vector = add_vec(raw.product(i, j), &swapped).iter().map(|c| c * &half).collect();
                    a.table.set_product(i, j, sym);
                }
            }
            assert!(a.defects().is_empty());
            a
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn expansion_matches_operator_form(a in perturbed_algebra(), x in elem(), y in elem(), z in elem(), t in elem()) {
            prop_assert_eq!(a.id_defect(&x, &y, &z, &t).unwrap(), id_by_operators(&a, &x, &y, &z, &t));
        }

        #[test]
        fn id_multilinear(a in perturbed_algebra(), x in elem(), x2 in elem(), y in elem(), z in elem(), t in elem(), c in -3i64..4, slot in 0usize..4) {
            let c = Q::int(c);
            let comb: Vector = x.iter().zip(&x2).map(|(u, v)| &(&c * u) + v).collect();
            let mut args = [y.clone(), z.clone(), t.clone()].to_vec();
            args.insert(slot, comb);
            let lhs = a.id_defect(&args[0], &args[1], &args[2], &args[3]).unwrap();
            let mut a1 = [y.clone(), z.clone(), t.clone()].to_vec();
            a1.insert(slot, x.clone());
            let mut a2 = [y, z, t].to_vec();
            a2.insert(slot, x2.clone());
            let d1 = a.id_defect(&a1[0], &a1[1], &a1[2], &a1[3]).unwrap();
            let d2 = a.id_defect(&a2[0], &a2[1], &a2[2], &a2[3]).unwrap();
            let rhs: Vector = d1.iter().zip(&d2).map(|(u, v)| &(&c * u) + v).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn v_with_unit_is_t(l in prop::sample::select(Label::registry().to_vec()), x in elem()) {
            let a = canonical(l);
            prop_assert_eq!(a.v_operator(&x, &a.one()).unwrap(), a.t_operator(&x));
        }

        #[test]
        fn involution_reverses_products(l in prop::sample::select(Label::registry().to_vec()), x in elem(), y in elem()) {
            let a = canonical(l);
            let lhs = a.involve(&a.multiply(&x, &y).unwrap()).unwrap();
            let rhs = a.multiply(&a.involve(&y).unwrap(), &a.involve(&x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
