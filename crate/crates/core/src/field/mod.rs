//! Exact arithmetic in towers of at most two quadratic extensions of the
//! rationals, with certified complex-interval enclosures as the escape hatch
//! for values outside the tower.

mod element;
mod minpoly;
mod sqrt;
mod tower;

pub use element::FieldElement;
pub use minpoly::rational_min_poly;
pub use tower::FieldTower;

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    TowerDepthExceeded,
    RadicandIsSquare,
    RadicandZero,
    DivisionByZero,
    IncompatibleTowers,
    PrecisionExhausted,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::TowerDepthExceeded => write!(f, "tower depth exceeded (max 2 levels)"),
            FieldError::RadicandIsSquare => write!(f, "radicand is already a square in the base"),
            FieldError::RadicandZero => write!(f, "radicand must be nonzero"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::IncompatibleTowers => write!(f, "elements live in incompatible towers"),
            FieldError::PrecisionExhausted => write!(f, "precision cap exhausted"),
        }
    }
}

impl std::error::Error for FieldError {}

/// Hard cap on interval precision, overridable via SEXTICA_PRECISION_CAP.
pub fn precision_cap() -> u32 {
    use std::sync::OnceLock;
    static CAP: OnceLock<u32> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("SEXTICA_PRECISION_CAP")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(4096)
    })
}
