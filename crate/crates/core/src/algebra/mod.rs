//! Exact arithmetic: monomials, sparse integer polynomials, and rational
//! functions whose denominators are products of `1 - monomial` factors.

mod format;
mod int;
mod monomial;
mod poly;
mod rational;
mod univariate;

pub use format::{monomial_from_json, monomial_to_json, CoefJson, RationalJson, TermJson};
pub use int::Int;
pub use monomial::{Monomial, Variable};
pub use poly::Polynomial;
pub use rational::{RationalFunction, Substitution};
pub use univariate::{UPoly, URat};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("a denominator factor collapsed to 1 - 1 under substitution")]
    DenominatorCollapse,
    #[error("parse error: {0}")]
    Parse(String),
}
