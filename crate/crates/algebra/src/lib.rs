//! Free *-algebra over non-commuting Hermitian variables.
//!
//! Polynomials are stored over canonical monomials; a [`RewriteSystem`]
//! presents the quotient by built-in relation classes (Pauli site algebras,
//! projectors, dichotomic involutions, cross-site commutation) plus optional
//! user rules, with termination checked at construction. Monomial bases for
//! moment matrices are enumerated here too.

mod basis;
mod monomial;
mod poly;
mod rewrite;
mod vars;

pub use basis::{generate_basis, BasisFilter, MonomialBasis};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use rewrite::{RewriteSystem, RuleClass};
pub use vars::{VarId, VarKind, Variable, VariableTable};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("variable `{0}` already declared")]
    DuplicateVariable(String),
    #[error("variable table is full")]
    TooManyVariables,
    #[error("Pauli variable `{0}` needs a site")]
    PauliWithoutSite(String),
    #[error("site {0} does not carry a complete Pauli triple")]
    IncompletePauliSite(u32),
    #[error("rewrite rule does not decrease (degree, lex) rank")]
    NonDecreasingRule,
    #[error("conflicting rule for the same pattern")]
    ConflictingRule,
}
