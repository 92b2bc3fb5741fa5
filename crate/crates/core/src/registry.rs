//! Built-in algebras: the Jordan algebras J1..J6 with trivial involution, the
//! five algebras of type (2,1), the two of type (1,2), and universal ones.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{AlgebraWithInvolution, Table};
use crate::field::Q;
use crate::linalg::{Matrix, Vector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    J1,
    J2,
    J3,
    J4,
    J5,
    J6,
    A1,
    A2,
    A3,
    A4,
    A5,
    S1,
    S2,
    /// Only unit products, involution +1 on the first `k` basis vectors and -1 on the other `m`.
    Universal(usize, usize),
}

use Label::*;

impl Label {
    pub fn registry() -> [Label; 13] {
        [J1, J2, J3, J4, J5, J6, A1, A2, A3, A4, A5, S1, S2]
    }

    /// The seven algebras with nontrivial involution.
    pub fn seven() -> [Label; 7] {
        [A1, A2, A3, A4, A5, S1, S2]
    }

    pub fn name(&self) -> String {
        match self {
            Universal(k, m) => format!("Universal({k},{m})"),
            other => format!("{other:?}"),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(found) = Label::registry().into_iter().find(|l| l.name().eq_ignore_ascii_case(t)) {
            return Ok(found);
        }
        let inner = t
            .strip_prefix("Universal(")
            .or_else(|| t.strip_prefix("U("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))?;
        let (k, m) = inner.split_once(',').ok_or_else(|| Error::UnknownLabel(s.to_string()))?;
        let k: usize = k.trim().parse().map_err(|_| Error::UnknownLabel(s.to_string()))?;
        let m: usize = m.trim().parse().map_err(|_| Error::UnknownLabel(s.to_string()))?;
        if k == 0 {
            return Err(Error::UnknownLabel(s.to_string()));
        }
        Ok(Universal(k, m))
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn vec3(a: i64, b: i64, c: i64) -> Vector {
    vec![Q::int(a), Q::int(b), Q::int(c)]
}

/// Three-dimensional table with unit e1 and the listed products `(i, j, image)` (0-based).
fn table3(products: &[(usize, usize, Vector)]) -> Table {
    let mut t = Table::unital(3, 0);
    for (i, j, v) in products {
        t.set_product(*i, *j, v.clone());
    }
    t
}

fn signs(k: usize, m: usize) -> Matrix {
    let d: Vec<Q> = (0..k + m).map(|t| if t < k { Q::one() } else { Q::int(-1) }).collect();
    Matrix::diag(&d)
}

/// Canonical algebra for a label; J/A/S labels require `dim = 3`.
pub fn canonical_algebra(label: Label, dim: usize) -> Result<AlgebraWithInvolution> {
    match label {
        Universal(k, m) if k >= 1 && k + m == dim => {}
        Universal(..) => return Err(Error::UnknownLabel(format!("{label} in dimension {dim}"))),
        _ if dim != 3 => return Err(Error::UnknownLabel(format!("{label} in dimension {dim}"))),
        _ => {}
    }
    let (table, sigma) = match label {
        J1 => (table3(&[]), signs(3, 0)),
        J2 => (table3(&[(1, 1, vec3(0, 1, 0)), (2, 2, vec3(0, 0, 1))]), signs(3, 0)),
        J3 => (table3(&[(1, 1, vec3(0, 1, 0)), (1, 2, vec3(0, 0, 1)), (2, 1, vec3(0, 0, 1))]), signs(3, 0)),
        J4 => (table3(&[(1, 1, vec3(0, 0, 1))]), signs(3, 0)),
        J5 => (table3(&[(1, 1, vec3(0, 1, 0))]), signs(3, 0)),
        J6 => (table3(&[(1, 1, vec3(1, 0, 0)), (2, 2, vec3(1, 0, 0))]), signs(3, 0)),
        A1 => (table3(&[]), signs(2, 1)),
        A2 => (table3(&[(2, 2, vec3(0, 1, 0))]), signs(2, 1)),
        A3 => (table3(&[(1, 1, vec3(0, 1, 0))]), signs(2, 1)),
        A4 => (table3(&[(1, 1, vec3(0, 1, 0)), (2, 2, vec3(-1, 1, 0))]), signs(2, 1)),
        A5 => (table3(&[(1, 2, vec3(0, 1, 0)), (2, 1, vec3(0, -1, 0)), (2, 2, vec3(1, 0, 0))]), signs(2, 1)),
        S1 => (table3(&[]), signs(1, 2)),
        S2 => (table3(&[(1, 2, vec3(0, 1, 0)), (2, 1, vec3(0, -1, 0)), (2, 2, vec3(1, 0, 0))]), signs(1, 2)),
        Universal(k, m) => (Table::unital(k + m, 0), signs(k, m)),
    };
    AlgebraWithInvolution::new(table, 0, sigma, Some(label.name()))
}

/// Canonical algebra at its natural dimension.
pub fn canonical(label: Label) -> AlgebraWithInvolution {
    let dim = match label {
        Universal(k, m) => k + m,
        _ => 3,
    };
    canonical_algebra(label, dim).expect("registry labels are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn registry_is_structurable_and_well_formed() {
        for l in Label::registry() {
            let a = canonical(l);
            assert!(a.defects().is_empty(), "{l}: {:?}", a.defects());
            assert!(a.is_structurable(), "{l}");
        }
        for (k, m) in [(1, 0), (1, 1), (2, 2), (1, 3), (3, 1)] {
            assert!(canonical(Universal(k, m)).is_structurable());
        }
    }

    #[test]
    fn tables() {
        let a4 = canonical(A4);
        assert_eq!(a4.table.product(2, 2), &vec![q("-1"), q("1"), q("0")]);
        assert_eq!(a4.sigma, Matrix::diag(&[q("1"), q("1"), q("-1")]));
        let u = canonical(Universal(2, 1));
        assert_eq!(u.table, canonical(A1).table);
        assert_eq!(u.sigma, canonical(A1).sigma);
        assert_eq!(canonical(J6).table.product(2, 2), &vec![q("1"), q("0"), q("0")]);
        assert!(canonical_algebra(A1, 4).is_err());
        assert!(canonical_algebra(Universal(2, 2), 3).is_err());
    }

    #[test]
    fn labels_parse() {
        for l in Label::registry() {
            assert_eq!(l.name().parse::<Label>().unwrap(), l);
        }
        assert_eq!("Universal(2,1)".parse::<Label>().unwrap(), Universal(2, 1));
        assert_eq!("U(1, 2)".parse::<Label>().unwrap(), Universal(1, 2));
        assert!("A9".parse::<Label>().is_err());
        assert!("U(0,3)".parse::<Label>().is_err());
    }
}
