//! Multivariate polynomial arithmetic and elimination: derivatives,
//! resultants, discriminants, gcds, square-free parts, substitution,
//! homogenization and certified root isolation over a tower.

mod elim;
mod multipoly;
pub mod roots;
mod univar;

pub use elim::{
    bivariate_gcd_all, discriminant, div_exact, gcd as multi_gcd, resultant, square_free_part,
    squarefree_decomposition,
};
pub use multipoly::{Exp, MultiPoly, Var};
pub use univar::UniPoly;

use crate::field::FieldError;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    IncompatibleTowers,
    DegreeTooSmall,
    NotDivisible,
    PrecisionExhausted,
    Field(FieldError),
}

impl From<FieldError> for PolyError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::IncompatibleTowers => PolyError::IncompatibleTowers,
            FieldError::PrecisionExhausted => PolyError::PrecisionExhausted,
            other => PolyError::Field(other),
        }
    }
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::IncompatibleTowers => write!(f, "incompatible towers"),
            PolyError::DegreeTooSmall => write!(f, "target degree below actual degree"),
            PolyError::NotDivisible => write!(f, "exact division failed"),
            PolyError::PrecisionExhausted => write!(f, "precision cap exhausted"),
            PolyError::Field(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for PolyError {}
