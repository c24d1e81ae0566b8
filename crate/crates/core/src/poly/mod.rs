//! Polynomials in the 15 generators and the deformation root `u`.
//!
//! Includes term orders, the expression parser and substitution maps.

mod monomial;
mod order;
mod parse;
mod polynomial;
mod subst;
mod var;

pub use monomial::Monomial;
pub use order::{OrderKind, TermOrder};
pub use parse::{parse_expr, parse_rational_poly, ParamMode, Parsed};
pub use polynomial::Polynomial;
pub use subst::{SubstLimits, SubstitutionMap};
pub use var::{Var, GEN_NAMES, NGENS, NVARS};

#[allow(unused_imports)]
pub(crate) use parse::Laurent;

use thiserror::Error;

/// Errors raised by parsing, specialization and substitution.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("power t^({num}/{den}) is not a multiple of 1/12")]
    BadTPower { num: i64, den: i64 },
    #[error("division by a non-constant expression at byte {pos}")]
    NonConstantDivisor { pos: usize },
    #[error("division by zero at byte {pos}")]
    DivisionByZero { pos: usize },
    #[error("square root of `{arg}` is outside Q(i, sqrt2, sqrt3, sqrt5)")]
    BadSqrt { arg: String },
    #[error("unsupported power at byte {pos}: {msg}")]
    BadPower { pos: usize, msg: String },
    #[error("expression has irrational coefficients where rational ones are required")]
    NotRational,
    #[error("u0 = 0 is not allowed (t must be invertible)")]
    ZeroDeformation,
    #[error("substitution exceeded the {what} limit ({limit})")]
    SubstLimit { what: &'static str, limit: usize },
}
