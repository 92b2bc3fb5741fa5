//! Transcribed tables bundled with the crate: the registry algebras, the
//! operator matrices, derivations, automorphism families, subalgebra lists,
//! functional identities, conservative tables and the graded Lie algebras.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::algebra::AlgebraWithInvolution;
use crate::analysis::{generator_matrix, FamilySpec, MatrixTemplate};
use crate::expr::{Expr, Params};
use crate::field::Q;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::registry::Label;
use crate::{Error, Result};

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        const FILES: &[(&str, &str)] = &[$(($name, include_str!(concat!("../fixtures/", $name, ".json")))),*];
    };
}

bundle!(
    "algebras/J1", "algebras/J2", "algebras/J3", "algebras/J4", "algebras/J5", "algebras/J6",
    "algebras/A1", "algebras/A2", "algebras/A3", "algebras/A4", "algebras/A5", "algebras/S1", "algebras/S2",
    "ak/F_A1", "ak/F_A2", "ak/F_A3", "ak/F_A4", "ak/F_A5", "ak/F_S1", "ak/F_S2",
    "levi/F_A1", "levi/F_A2", "levi/F_A3", "levi/F_A4", "levi/F_A5", "levi/F_S1", "levi/F_S2",
    "subalgebras/A1", "subalgebras/A2", "subalgebras/A3", "subalgebras/A4", "subalgebras/A5",
    "subalgebras/S1", "subalgebras/S2",
    "t_matrices", "derivations", "automorphisms", "identities", "conservative",
);

pub fn names() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).collect()
}

pub fn raw(name: &str) -> Result<&'static str> {
    let key = name.trim_end_matches(".json");
    FILES
        .iter()
        .find(|(n, _)| *n == key)
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

pub fn load_fixture(name: &str) -> Result<serde_json::Value> {
    load(name)
}

fn load<T: DeserializeOwned>(name: &str) -> Result<T> {
    serde_json::from_str(raw(name)?).map_err(|e| Error::Parse(format!("{name}: {e}")))
}

pub fn algebra(label: Label) -> Result<AlgebraWithInvolution> {
    AlgebraWithInvolution::from_json(raw(&format!("algebras/{label}"))?)
}

/// Bracket list of `F(A)` as printed: `[ε_i, ε_j] ∋ c ε_k`, indices from 1.
#[derive(Clone, Debug, Deserialize)]
pub struct AkFixture {
    pub dim: usize,
    pub basis: Vec<String>,
    pub grades: Vec<i32>,
    pub brackets: Vec<(usize, usize, usize, Q)>,
}

impl AkFixture {
    /// Entries with `i < j`, 0-based, sorted; `None` if an index is out of range,
    /// a bracket `[ε_i, ε_i]` is nonzero or two entries disagree.
    pub fn normalized(&self) -> Option<Vec<(usize, usize, usize, Q)>> {
        let mut seen: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
        for (i, j, k, c) in &self.brackets {
            if [i, j, k].iter().any(|&&t| t == 0 || t > self.dim) || i == j {
                return None;
            }
            let (key, c) = if i < j { ((i - 1, j - 1, k - 1), c.clone()) } else { ((j - 1, i - 1, k - 1), -c) };
            if let Some(old) = seen.insert(key, c.clone()) {
                if old != c {
                    return None;
                }
            }
        }
        Some(seen.into_iter().filter(|(_, c)| !c.is_zero()).map(|((i, j, k), c)| (i, j, k, c)).collect())
    }
}

pub fn ak_table(label: Label) -> Result<AkFixture> {
    load(&format!("ak/F_{label}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadicalKind {
    Zero,
    Abelian,
    Nilpotent,
}

/// Levi data of `F(A)`: index sets from 1 into the bracket basis.
#[derive(Clone, Debug, Deserialize)]
pub struct LeviFixture {
    pub perfect: bool,
    pub s: Vec<usize>,
    pub r: Vec<usize>,
    pub radical: RadicalKind,
    #[serde(default)]
    pub nilindex: Option<usize>,
    pub profile: Vec<String>,
    /// Change of basis `ξ_t = Σ c ε_k` (one coefficient row per `ξ_t`).
    #[serde(default)]
    pub xi_basis: Vec<Vec<Q>>,
    #[serde(default)]
    pub xi_brackets: Vec<(usize, usize, usize, Q)>,
    #[serde(default)]
    pub sl2: Vec<usize>,
    #[serde(default)]
    pub sl3: Vec<usize>,
}

fn coordinate(dim: usize, one_based: &[usize]) -> Result<Subspace> {
    if one_based.iter().any(|&k| k == 0 || k > dim) {
        return Err(Error::Malformed(format!("index out of range 1..={dim}: {one_based:?}")));
    }
    Ok(Subspace::coordinate(dim, &one_based.iter().map(|k| k - 1).collect::<Vec<_>>()))
}

impl LeviFixture {
    pub fn s_space(&self, dim: usize) -> Result<Subspace> {
        coordinate(dim, &self.s)
    }

    pub fn r_space(&self, dim: usize) -> Result<Subspace> {
        coordinate(dim, &self.r)
    }

    /// Spans of the listed `ξ` vectors.
    pub fn xi_span(&self, one_based: &[usize]) -> Result<Subspace> {
        let n = self.xi_basis.len();
        let vs = one_based
            .iter()
            .map(|&k| self.xi_basis.get(k.wrapping_sub(1)).cloned().ok_or_else(|| Error::Malformed(format!("xi index {k}"))))
            .collect::<Result<Vec<Vector>>>()?;
        Ok(Subspace::span(n, &vs))
    }
}

pub fn levi(label: Label) -> Result<LeviFixture> {
    load(&format!("levi/F_{label}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceClass {
    Subalgebra,
    BarSubalgebra,
    Ideal,
    BarIdeal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Subalgebra,
    Ideal,
    BarClosed,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SubalgebraStatement {
    pub class: SubspaceClass,
    pub dim: usize,
    pub members: Vec<FamilySpec>,
    pub predicates: Vec<Predicate>,
    pub complete: bool,
    #[serde(default)]
    pub representatives: Vec<FamilySpec>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SubalgebraCatalog {
    pub algebra: Label,
    pub statements: Vec<SubalgebraStatement>,
}

pub fn subalgebra_catalog(label: Label) -> Result<SubalgebraCatalog> {
    load(&format!("subalgebras/{label}"))
}

/// A generator given by its nonzero images, keyed by basis name (`"e2"`).
#[derive(Clone, Debug, Deserialize)]
#[serde(transparent)]
pub struct GeneratorImages(pub BTreeMap<String, Vec<Q>>);

impl GeneratorImages {
    pub fn matrix(&self, n: usize) -> Result<Matrix> {
        let mut images = Vec::new();
        for (name, img) in &self.0 {
            let k: usize = name
                .strip_prefix('e')
                .and_then(|d| d.parse().ok())
                .filter(|&k| k >= 1 && k <= n)
                .ok_or_else(|| Error::Malformed(format!("basis name {name:?}")))?;
            if img.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: img.len() });
            }
            images.push((k - 1, img.clone()));
        }
        Ok(generator_matrix(n, &images))
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct DerivationFixture {
    pub der: Vec<GeneratorImages>,
    pub bar_der: Vec<GeneratorImages>,
}

pub fn derivations() -> Result<BTreeMap<Label, DerivationFixture>> {
    load("derivations")
}

#[derive(Clone, Debug, Deserialize)]
pub struct AutomorphismFamily {
    pub algebra: Label,
    pub bar: bool,
    pub params: Vec<String>,
    pub matrix: Vec<Vec<Expr>>,
    pub samples: Vec<Params>,
}

impl AutomorphismFamily {
    pub fn template(&self) -> MatrixTemplate {
        MatrixTemplate(self.matrix.clone())
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct AutomorphismNegative {
    pub algebra: Label,
    pub bar: bool,
    pub matrix: Vec<Vec<Q>>,
    pub reason: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AutomorphismFixture {
    pub families: Vec<AutomorphismFamily>,
    pub negatives: Vec<AutomorphismNegative>,
}

pub fn automorphisms() -> Result<AutomorphismFixture> {
    load("automorphisms")
}

#[derive(Clone, Debug, Deserialize)]
pub struct IdentityClaim {
    /// A registry label, or `"*"` for all of them.
    pub algebra: String,
    #[serde(default)]
    pub contains: Vec<String>,
    #[serde(default)]
    pub spanned_by: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct IdentityFixture {
    pub words: Vec<String>,
    pub identities: BTreeMap<String, Vec<Q>>,
    pub claims: Vec<IdentityClaim>,
}

pub fn identities() -> Result<IdentityFixture> {
    load("identities")
}

#[derive(Clone, Debug, Deserialize)]
pub struct ConservativeFixture {
    /// `table[i][j]` is `e_i ⋆ e_j`.
    pub table: Vec<Vec<Vec<Q>>>,
    pub der: Vec<GeneratorImages>,
}

pub fn conservative() -> Result<BTreeMap<Label, ConservativeFixture>> {
    load("conservative")
}

#[derive(Clone, Debug, Deserialize)]
pub struct TMatrixFixture {
    pub element: String,
    /// Rows as printed, in the parameters `alpha, beta, gamma`.
    pub matrices: BTreeMap<Label, Vec<Vec<Expr>>>,
}

pub fn t_matrices() -> Result<TMatrixFixture> {
    load("t_matrices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::canonical;

    #[test]
    fn every_fixture_parses() {
        for name in names() {
            load_fixture(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert_eq!(names().len(), 39);
        assert!(matches!(load_fixture("ak/F_A9"), Err(Error::UnknownFixture(_))));
        derivations().unwrap();
        automorphisms().unwrap();
        identities().unwrap();
        conservative().unwrap();
        t_matrices().unwrap();
    }

    #[test]
    fn algebra_fixtures_are_the_registry() {
        for l in Label::registry() {
            let a = algebra(l).unwrap();
            let c = canonical(l);
            assert_eq!((&a.table, &a.sigma, a.unit), (&c.table, &c.sigma, c.unit), "{l}");
            assert!(a.is_structurable(), "{l}");
        }
        let a4 = algebra(Label::A4).unwrap();
        assert_eq!(a4.table.product(2, 2), &vec![Q::int(-1), Q::one(), Q::zero()]);
    }

    #[test]
    fn ak_fixtures_are_consistent() {
        let expect = [(Label::A1, 21, 11), (Label::A4, 36, 11), (Label::S2, 62, 14)];
        for (l, entries, dim) in expect {
            let f = ak_table(l).unwrap();
            assert_eq!((f.brackets.len(), f.dim), (entries, dim), "{l}");
        }
        for l in Label::seven() {
            let f = ak_table(l).unwrap();
            assert_eq!((f.basis.len(), f.grades.len()), (f.dim, f.dim));
            assert!(f.normalized().is_some(), "{l}");
            let lv = levi(l).unwrap();
            assert_eq!(lv.s.len() + lv.r.len(), f.dim);
            lv.s_space(f.dim).unwrap();
            lv.r_space(f.dim).unwrap();
        }
        let s2 = levi(Label::S2).unwrap();
        assert_eq!(s2.s, vec![1, 3, 5, 6, 8, 10, 12, 14]);
        assert_eq!(s2.r, vec![2, 4, 7, 9, 11, 13]);
    }

    #[test]
    fn a4_xi_data_in_range() {
        let lv = levi(Label::A4).unwrap();
        assert_eq!(lv.xi_basis.len(), 11);
        assert!(lv.xi_basis.iter().all(|v| v.len() == 11));
        assert_eq!(lv.xi_span(&lv.sl2).unwrap().dim(), 3);
        assert_eq!(lv.xi_span(&lv.sl3).unwrap().dim(), 8);
        assert!(lv.xi_brackets.iter().all(|&(i, j, k, _)| [i, j, k].iter().all(|&t| (1..=11).contains(&t))));
    }

    #[test]
    fn subalgebra_vectors_in_range() {
        for l in Label::seven() {
            let cat = subalgebra_catalog(l).unwrap();
            assert_eq!(cat.algebra, l);
            for st in &cat.statements {
                for f in st.members.iter().chain(&st.representatives) {
                    assert!(f.vectors.iter().all(|v| v.len() == 3), "{l}");
                }
            }
        }
    }

    #[test]
    fn generator_images() {
        let d = &derivations().unwrap()[&Label::A1].der[0];
        assert_eq!(d.matrix(3).unwrap(), crate::construct::matrix_unit(3, 1, 1));
        let bad = GeneratorImages([("e7".to_string(), vec![Q::one(); 3])].into_iter().collect());
        assert!(bad.matrix(3).is_err());
    }
}
