//! Towers Q ⊂ Q(√r₁) ⊂ Q(√r₁)(√r₂) of quadratic extensions.

use super::sqrt::sqrt_in_coords;
use super::FieldError;
use crate::num::interval::ComplexInterval;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

/// A tower of at most two quadratic extensions of Q.
///
/// Level k's radicand is stored by its coordinates over the level-k base
/// field (so level 0 has one rational coordinate, level 1 has two). Each
/// radicand is nonzero and not a square one level down; negative and complex
/// radicands are allowed and give complex embeddings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldTower {
    levels: Arc<Vec<Vec<BigRational>>>,
}

impl FieldTower {
    /// The rational field Q.
    pub fn rational() -> Self {
        FieldTower { levels: Arc::new(Vec::new()) }
    }

    /// Q(√d) for a rational radicand.
    pub fn quadratic(d: BigRational) -> Result<Self, FieldError> {
        Self::rational().extend_coords(vec![d])
    }

    /// Extend by the square root of `radicand`, an element of this tower
    /// (or of a prefix of it).
    pub fn extend(&self, radicand: &super::FieldElement) -> Result<Self, FieldError> {
        let emb = radicand.embed(self)?;
        self.extend_coords(emb.coords().to_vec())
    }

    pub(super) fn extend_coords(&self, radicand: Vec<BigRational>) -> Result<Self, FieldError> {
        if self.depth() >= 2 {
            return Err(FieldError::TowerDepthExceeded);
        }
        if radicand.len() != self.dim() {
            return Err(FieldError::IncompatibleTowers);
        }
        if radicand.iter().all(|c| c.is_zero()) {
            return Err(FieldError::RadicandZero);
        }
        if sqrt_in_coords(&radicand, self).is_some() {
            return Err(FieldError::RadicandIsSquare);
        }
        let mut levels = (*self.levels).clone();
        levels.push(radicand);
        Ok(FieldTower { levels: Arc::new(levels) })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Dimension over Q: 2^depth.
    pub fn dim(&self) -> usize {
        1 << self.depth()
    }

    /// Coordinates of the level-k radicand over the level-k base field.
    pub fn radicand_coords(&self, k: usize) -> &[BigRational] {
        &self.levels[k]
    }

    /// The tower truncated to its first k levels.
    pub fn prefix(&self, k: usize) -> FieldTower {
        FieldTower { levels: Arc::new(self.levels[..k].to_vec()) }
    }

    /// True when `self` is a prefix of `other` (so self embeds in other).
    pub fn embeds_in(&self, other: &FieldTower) -> bool {
        self.depth() <= other.depth()
            && self.levels[..] == other.levels[..self.depth()]
    }

    /// Interval enclosure of the level-k square root generator √r_{k+1},
    /// using the principal branch.
    pub(super) fn radical_interval(&self, k: usize, prec: u32) -> Result<ComplexInterval, FieldError> {
        let cap = super::precision_cap();
        let mut p = prec;
        loop {
            let rad = self.radicand_interval(k, p)?;
            if let Some(s) = rad.sqrt_principal(p) {
                return Ok(s);
            }
            // Box straddles the branch cut; refine the radicand.
            p = p.saturating_mul(2);
            if p > cap {
                return Err(FieldError::PrecisionExhausted);
            }
        }
    }

    /// Interval enclosure of the level-k radicand itself.
    pub(super) fn radicand_interval(&self, k: usize, prec: u32) -> Result<ComplexInterval, FieldError> {
        let coords = &self.levels[k];
        crate::field::element::coords_interval(coords, self, prec)
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q")?;
        for k in 0..self.depth() {
            let coords = self.radicand_coords(k);
            let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            write!(f, "(sqrt[{}])", parts.join(","))?;
        }
        Ok(())
    }
}
