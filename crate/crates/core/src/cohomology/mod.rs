//! Semigroup cohomology restricted to cochains that vanish on zero products:
//! coboundary, cup sum, cocycle checks, exponentiation to multiplicative
//! cocycles, coherent deformations, and triviality decisions.

mod coefficients;
mod cochain;
mod cycles;
mod deform;
mod semigroup;
mod solve;

pub use coefficients::{AdditiveModTaille, AdditiveReal, CoefficientGroup, MultiplicativeReal, UnitComplex};
pub use cochain::{
    coboundary, cup_sum, exp_lambda, exp_quantized, is_cocycle, reduce_mod_taille, Cochain, CocycleCheck,
};
pub use cycles::{cycle_pairing, TwoCycle};
pub use deform::{coherent_deform, CoherentDeformation};
pub use semigroup::{restrict, subsemigroup, FiniteSemigroup, PosetSemigroup, Semigroup, Subsemigroup};
pub use solve::{
    coboundary_matrix, cocycle_basis, mod_taille_triviality, solve_coboundary_real, CoboundarySolution,
    ModTailleOutcome, SparseRows,
};

use thiserror::Error;

/// Largest number of tuples any enumeration may produce.
pub const MAX_TUPLES: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CohomError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {0} is not absorbed by zero")]
    ZeroNotAbsorbing(usize),
    #[error("more than {limit} tuples of arity {arity}")]
    TooManyTuples { arity: usize, limit: usize },
    #[error("coefficient groups do not match")]
    CoefficientMismatch,
    #[error("taille must be positive, got {0}")]
    InvalidTaille(f64),
    #[error("not a cocycle (residual {residual})")]
    NotACocycle { residual: f64 },
    #[error("not closed under the product: {a}·{b} leaves the subset")]
    NotASubsemigroup { a: usize, b: usize },
    #[error("cochain and semigroup do not match: {0}")]
    SemigroupMismatch(String),
    #[error("chain does not live on this complex: {0}")]
    ComplexMismatch(String),
    #[error("chain has nonzero boundary")]
    NotACycle,
    #[error("expected arity {expected}, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
