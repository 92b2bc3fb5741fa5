//! Normal forms for structurable algebras of types (2,1) and (1,2) in
//! dimension three, with explicit basis changes onto the registry tables.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraWithInvolution, Table};
use crate::analysis::{derivation_algebra, functional_identity_space};
use crate::field::Q;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::registry::{canonical, Label};
use crate::{Error, Result};

/// Type (2,1): `e2e2 = α1e1+β1e2`, `e2e3 = α2e1+β2e2+γe3`, `e3e2 = -α2e1-β2e2+γe3`,
/// `e3e3 = α3e1+β3e2`, with `e3` skew.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params21 {
    pub alpha1: Q,
    pub alpha2: Q,
    pub alpha3: Q,
    pub beta1: Q,
    pub beta2: Q,
    pub beta3: Q,
    pub gamma: Q,
}

/// Type (1,2): `e2e2 = α1e1`, `e3e3 = α3e1`, `e2e3 = α2e1+βe2+γe3`,
/// `e3e2 = α2e1-βe2-γe3`, with `e2, e3` skew.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params12 {
    pub alpha1: Q,
    pub alpha2: Q,
    pub alpha3: Q,
    pub beta: Q,
    pub gamma: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub label: Label,
    /// Columns are the new basis vectors in old coordinates.
    pub basis_change: Matrix,
}

fn v3(a: &Q, b: &Q, c: &Q) -> Vector {
    vec![a.clone(), b.clone(), c.clone()]
}

impl Params21 {
    pub fn algebra(&self) -> AlgebraWithInvolution {
        let z = Q::zero();
        let mut t = Table::unital(3, 0);
        t.set_product(1, 1, v3(&self.alpha1, &self.beta1, &z));
        t.set_product(1, 2, v3(&self.alpha2, &self.beta2, &self.gamma));
        t.set_product(2, 1, v3(&-&self.alpha2, &-&self.beta2, &self.gamma));
        t.set_product(2, 2, v3(&self.alpha3, &self.beta3, &z));
        AlgebraWithInvolution::new(t, 0, Matrix::diag(&[Q::one(), Q::one(), Q::int(-1)]), None).expect("3x3")
    }

    /// Reads the parameters back from a table of the right shape.
    pub fn from_algebra(a: &AlgebraWithInvolution) -> Result<Self> {
        let t = &a.table;
        let p = Params21 {
            alpha1: t.product(1, 1)[0].clone(),
            beta1: t.product(1, 1)[1].clone(),
            alpha2: t.product(1, 2)[0].clone(),
            beta2: t.product(1, 2)[1].clone(),
            gamma: t.product(1, 2)[2].clone(),
            alpha3: t.product(2, 2)[0].clone(),
            beta3: t.product(2, 2)[1].clone(),
        };
        if a.dim() != 3 || p.algebra().table != a.table || p.algebra().sigma != a.sigma || a.unit != 0 {
            return Err(Error::Malformed("table is not of the (2,1) parametric shape".into()));
        }
        Ok(p)
    }

    /// Parameters after the substitution `e2 -> e2 - γe1`, which removes `γ`.
    pub fn shifted(&self) -> Params21 {
        let g = &self.gamma;
        let beta1 = &self.beta1 - &(g * &Q::int(2));
        Params21 {
            alpha1: &(&self.alpha1 + &(g * &self.beta1)) - &(g * g),
            alpha2: &self.alpha2 + &(&self.beta2 * g),
            alpha3: &self.alpha3 + &(&self.beta3 * g),
            beta1,
            beta2: self.beta2.clone(),
            beta3: self.beta3.clone(),
            gamma: Q::zero(),
        }
    }

    /// Structurability conditions on the shifted parameters that fail.
    pub fn violated_constraints(&self) -> Vec<String> {
        let p = self.shifted();
        let mut out = Vec::new();
        if !p.alpha1.is_zero() {
            out.push(format!("alpha1 = 0 (after the gamma shift alpha1 = {})", p.alpha1));
        }
        if !p.alpha2.is_zero() {
            out.push(format!("alpha2 = 0 (after the gamma shift alpha2 = {})", p.alpha2));
        }
        let want = &(&p.beta2 * &p.beta2) - &(&p.beta1 * &p.beta3);
        if p.alpha3 != want {
            out.push(format!("alpha3 = beta2^2 - beta1*beta3 (alpha3 = {}, expected {})", p.alpha3, want));
        }
        if !(&p.beta1 * &p.beta2).is_zero() {
            out.push("beta1*beta2 = 0".to_string());
        }
        if !(&p.beta2 * &p.beta3).is_zero() {
            out.push("beta2*beta3 = 0".to_string());
        }
        out
    }
}

impl Params12 {
    pub fn algebra(&self) -> AlgebraWithInvolution {
        let z = Q::zero();
        let mut t = Table::unital(3, 0);
        t.set_product(1, 1, v3(&self.alpha1, &z, &z));
        t.set_product(2, 2, v3(&self.alpha3, &z, &z));
        t.set_product(1, 2, v3(&self.alpha2, &self.beta, &self.gamma));
        t.set_product(2, 1, v3(&self.alpha2, &-&self.beta, &-&self.gamma));
        AlgebraWithInvolution::new(t, 0, Matrix::diag(&[Q::one(), Q::int(-1), Q::int(-1)]), None).expect("3x3")
    }

    pub fn from_algebra(a: &AlgebraWithInvolution) -> Result<Self> {
        let t = &a.table;
        let p = Params12 {
            alpha1: t.product(1, 1)[0].clone(),
            alpha2: t.product(1, 2)[0].clone(),
            alpha3: t.product(2, 2)[0].clone(),
            beta: t.product(1, 2)[1].clone(),
            gamma: t.product(1, 2)[2].clone(),
        };
        if a.dim() != 3 || p.algebra().table != a.table || p.algebra().sigma != a.sigma || a.unit != 0 {
            return Err(Error::Malformed("table is not of the (1,2) parametric shape".into()));
        }
        Ok(p)
    }

    pub fn violated_constraints(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (b, g) = (&self.beta, &self.gamma);
        if self.alpha1 != g * g {
            out.push("alpha1 = gamma^2".to_string());
        }
        if self.alpha2 != -&(b * g) {
            out.push("alpha2 = -beta*gamma".to_string());
        }
        if self.alpha3 != b * b {
            out.push("alpha3 = beta^2".to_string());
        }
        out
    }
}

/// Transports `a` through `p` and compares with the canonical table of `label`.
pub fn transport_matches(a: &AlgebraWithInvolution, p: &Matrix, label: Label) -> bool {
    let c = canonical(label);
    match a.transport(p) {
        Ok(t) => t.table == c.table && t.sigma == c.sigma && t.unit == c.unit,
        Err(_) => false,
    }
}

fn checked(a: &AlgebraWithInvolution, label: Label, basis_change: Matrix) -> Result<ClassificationResult> {
    if !transport_matches(a, &basis_change, label) {
        return Err(Error::Malformed(format!("internal: basis change does not reach {label}")));
    }
    Ok(ClassificationResult { label, basis_change })
}

pub fn classify_21(p: &Params21) -> Result<ClassificationResult> {
    let bad = p.violated_constraints();
    if !bad.is_empty() {
        return Err(Error::NotStructurable(bad.join("; ")));
    }
    let s = p.shifted();
    let (b1, b2, b3) = (&s.beta1, &s.beta2, &s.beta3);
    let one = Q::one();
    // scaling e2 -> A e2, e3 -> C e3 sends (β1, β2, β3) to (Aβ1, Cβ2, C²β3/A)
    let (label, a_scale, c_scale) = match (b1.is_zero(), b2.is_zero(), b3.is_zero()) {
        (true, true, true) => (Label::A1, one.clone(), one.clone()),
        (true, true, false) => (Label::A2, b3.clone(), one.clone()),
        (false, true, true) => (Label::A3, b1.inv()?, one.clone()),
        (false, true, false) => {
            let prod = b1 * b3;
            let root = prod
                .sqrt_in_field()
                .ok_or_else(|| Error::FieldExtensionRequired(format!("sqrt(beta1*beta3) = sqrt({prod})")))?;
            (Label::A4, b1.inv()?, root.inv()?)
        }
        (true, false, true) => (Label::A5, one.clone(), b2.inv()?),
        _ => unreachable!("excluded by beta1*beta2 = beta2*beta3 = 0"),
    };
    let z = Q::zero();
    let change = Matrix::from_columns(&[
        v3(&one, &z, &z),
        v3(&-&(&a_scale * &p.gamma), &a_scale, &z),
        v3(&z, &z, &c_scale),
    ]);
    checked(&p.algebra(), label, change)
}

pub fn classify_12(p: &Params12) -> Result<ClassificationResult> {
    let bad = p.violated_constraints();
    if !bad.is_empty() {
        return Err(Error::NotStructurable(bad.join("; ")));
    }
    let a = p.algebra();
    let (one, z) = (Q::one(), Q::zero());
    if p.beta.is_zero() && p.gamma.is_zero() {
        return checked(&a, Label::S1, Matrix::identity(3));
    }
    // with β = 0 exchange e2 and e3 first: the new β is -γ and the new γ is 0
    let (swap, beta, gamma) = if p.beta.is_zero() {
        (Matrix::from_columns(&[v3(&one, &z, &z), v3(&z, &z, &one), v3(&z, &one, &z)]), -&p.gamma, z.clone())
    } else {
        (Matrix::identity(3), p.beta.clone(), p.gamma.clone())
    };
    // e2' = e2 + (γ/β)e3, e3' = e3/β
    let binv = beta.inv()?;
    let scale = Matrix::from_columns(&[v3(&one, &z, &z), v3(&z, &one, &(&gamma * &binv)), v3(&z, &z, &binv)]);
    checked(&a, Label::S2, swap.mul(&scale))
}

pub use crate::analysis::verify_isomorphism;

/// Isomorphism invariants that separate the registry algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub kind: (usize, usize),
    pub der_dim: usize,
    pub bar_der_dim: usize,
    pub identity_dim: usize,
    /// Dimensions of the span of all `L_x` and of the associative algebra they generate.
    pub left_multiplication_dims: Vec<usize>,
}

pub fn invariant_fingerprint(a: &AlgebraWithInvolution) -> Result<Fingerprint> {
    let n = a.dim();
    let lefts: Vec<Vector> = (0..n).map(|k| a.table.left(&a.basis(k)).flat().to_vec()).collect();
    let span = Subspace::span(n * n, &lefts);
    let mut gen = span.clone();
    loop {
        let mats: Vec<Matrix> = gen.basis.iter().map(|v| Matrix::from_flat(n, n, v.clone())).collect();
        let mut vs = gen.basis.clone();
        for x in &mats {
            for l in &lefts {
                vs.push(x.mul(&Matrix::from_flat(n, n, l.clone())).flat().to_vec());
            }
        }
        let next = Subspace::span(n * n, &vs);
        if next.dim() == gen.dim() {
            break;
        }
        gen = next;
    }
    Ok(Fingerprint {
        dim: n,
        kind: a.hs_split()?.kind(),
        der_dim: derivation_algebra(a, false).dim(),
        bar_der_dim: derivation_algebra(a, true).dim(),
        identity_dim: functional_identity_space(a).dim(),
        left_multiplication_dims: vec![span.dim(), gen.dim()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    fn p21(vals: [&str; 7]) -> Params21 {
        let [alpha1, alpha2, alpha3, beta1, beta2, beta3, gamma] = vals.map(q);
        Params21 { alpha1, alpha2, alpha3, beta1, beta2, beta3, gamma }
    }

    #[test]
    fn cases_21() {
        let r = classify_21(&Params21::default()).unwrap();
        assert_eq!((r.label, r.basis_change), (Label::A1, Matrix::identity(3)));
        let r = classify_21(&p21(["0", "0", "0", "0", "0", "5", "0"])).unwrap();
        assert_eq!(r.label, Label::A2);
        assert_eq!(r.basis_change, Matrix::diag(&[q("1"), q("5"), q("1")]));
        let r = classify_21(&p21(["0", "0", "-4", "1", "0", "4", "0"])).unwrap();
        assert_eq!(r.label, Label::A4);
        assert_eq!(r.basis_change, Matrix::diag(&[q("1"), q("1"), q("1/2")]));
        let r = classify_21(&p21(["0", "0", "-2", "1", "0", "2", "0"]));
        assert!(matches!(r, Err(Error::FieldExtensionRequired(_))));
        let r = classify_21(&p21(["0", "0", "9", "0", "3", "0", "0"])).unwrap();
        assert_eq!(r.label, Label::A5);
        let r = classify_21(&p21(["1", "0", "0", "0", "0", "0", "0"]));
        match r {
            Err(Error::NotStructurable(m)) => assert!(m.starts_with("alpha1 = 0"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gamma_shift() {
        // A3 with e2 replaced by e2 + 2e1
        let p = p21(["-6", "0", "0", "5", "0", "0", "2"]);
        assert!(p.algebra().is_structurable());
        assert_eq!(classify_21(&p).unwrap().label, Label::A3);
    }

    #[test]
    fn cases_12() {
        let r = classify_12(&Params12::default()).unwrap();
        assert_eq!((r.label, r.basis_change), (Label::S1, Matrix::identity(3)));
        let p = Params12 { alpha3: q("1"), beta: q("1"), ..Default::default() };
        let r = classify_12(&p).unwrap();
        assert_eq!((r.label, r.basis_change), (Label::S2, Matrix::identity(3)));
        let p = Params12 { alpha1: q("4"), gamma: q("2"), ..Default::default() };
        assert!(p.algebra().is_structurable());
        assert_eq!(classify_12(&p).unwrap().label, Label::S2);
        let p = Params12 { alpha1: q("1"), ..Default::default() };
        assert!(matches!(classify_12(&p), Err(Error::NotStructurable(_))));
        assert!(!p.algebra().is_structurable());
    }

    #[test]
    fn fingerprints_separate() {
        let fps: Vec<Fingerprint> = Label::seven().iter().map(|&l| invariant_fingerprint(&canonical(l)).unwrap()).collect();
        for i in 0..fps.len() {
            for j in 0..i {
                assert_ne!(fps[i], fps[j]);
            }
        }
        assert_eq!((fps[3].der_dim, fps[3].bar_der_dim, fps[3].kind), (0, 0, (2, 1)));
        let a3 = canonical(Label::A3);
        let a5 = canonical(Label::A5);
        assert!(!verify_isomorphism(&a3, &a5, &Matrix::identity(3)).unwrap());
    }
}
