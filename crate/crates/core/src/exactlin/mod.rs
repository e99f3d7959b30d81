//! Exact linear algebra over ℚ and 𝔽_p.
//!
//! Everything downstream (filtration spaces, page quotients, obstruction
//! systems) is phrased in terms of [`Subspace`] values. A subspace is stored
//! by its canonical reduced echelon basis, so equality of subspaces is plain
//! `==` and results never depend on the order in which spanning vectors were
//! supplied.
//!
//! All values are immutable once built and every operation is a pure
//! function of its arguments.

mod field;
mod matrix;
mod subspace;

use thiserror::Error;

pub use field::{rational_as_i64, Field, FieldSpec, PrimeField, Rationals, MAX_PRIME};
pub use matrix::{Matrix, Rref};
pub use subspace::{avoid_two_subspaces, natural_map, NaturalMap, QuotientMap, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected Q or F<p>)")]
    BadField(String),
    #[error("invalid scalar `{0}`")]
    BadScalar(String),
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the enclosing space")]
    NotContained,
}

pub fn rref<F: Field>(m: &Matrix<F>) -> Rref<F> {
    m.rref()
}

pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    m.kernel()
}

pub fn image<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    m.image()
}

pub fn sum<F: Field>(u: &Subspace<F>, v: &Subspace<F>) -> Subspace<F> {
    u.sum(v)
}

pub fn intersect<F: Field>(u: &Subspace<F>, v: &Subspace<F>) -> Subspace<F> {
    u.intersect(v)
}

/// `{x : m x ∈ w}`.
pub fn preimage<F: Field>(m: &Matrix<F>, w: &Subspace<F>) -> Subspace<F> {
    Subspace::preimage(m, w)
}

/// `v ⊆ u`.
pub fn contains<F: Field>(u: &Subspace<F>, v: &Subspace<F>) -> bool {
    u.contains(v)
}

pub fn member<F: Field>(u: &Subspace<F>, x: &[F::Elem]) -> bool {
    u.member(x)
}

pub fn quotient_map<F: Field>(g: &Subspace<F>, h: &Subspace<F>) -> Result<QuotientMap<F>, LinAlgError> {
    QuotientMap::new(g, h)
}
