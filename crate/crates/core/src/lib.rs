//! Exact computations with small unital structurable algebras over Q(i):
//! the identity check, classification of the three-dimensional ones, their
//! derivations, automorphisms, subalgebras and functional identities, and the
//! conservative and five-graded Lie algebra constructions built from them.

pub mod algebra;
pub mod analysis;
pub mod classify;
pub mod construct;
pub mod expr;
pub mod field;
pub mod fixtures;
pub mod lie;
pub mod linalg;
pub mod registry;
pub mod reproduce;

pub use algebra::{AlgebraWithInvolution, Element, HSSplit, OperatorKind, Table};
pub use field::{q, GaussianRational, Q};
pub use linalg::{LinearMap, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("not structurable: {0}")]
    NotStructurable(String),
    #[error("field extension required: {0}")]
    FieldExtensionRequired(String),
    #[error("involution is not diagonalizable")]
    InvolutionNotDiagonalizable,
    #[error("singular sample {0}")]
    SingularSample(String),
    #[error("instructure closure did not stabilise")]
    ClosureDiverged,
    #[error("grade-zero part not closed: {0}")]
    F0NotClosed(String),
    #[error("Killing form is degenerate")]
    DegenerateKilling,
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
