//! Certified root isolation for univariate polynomials over a tower.
//!
//! Exactness probes run first: linear and quadratic solving inside (or one
//! quadratic extension above) the tower, rational-root extraction, pulling
//! conjugation-stable factors down to subfields, small tower-root searches
//! and quartics with a rational resolvent root. What survives is isolated
//! numerically: Sturm bisection for real roots, box subdivision with an
//! interval-Newton certificate for the rest.

mod complex;
mod probes;
mod sturm;

use crate::field::{FieldElement, FieldError};
use crate::num::interval::ComplexInterval;
use crate::poly::{PolyError, UniPoly};

pub use sturm::{real_root_intervals, sturm_sequence};

#[derive(Clone, Debug)]
pub enum RootValue {
    /// The root lies in a tower of depth at most two.
    Exact(FieldElement),
    /// Isolating box: contains this root of the square-free factor and
    /// no other root of the whole polynomial.
    Interval(ComplexInterval),
}

impl RootValue {
    pub fn interval(&self, prec: u32) -> Result<ComplexInterval, FieldError> {
        match self {
            RootValue::Exact(e) => e.to_interval(prec),
            RootValue::Interval(b) => Ok(b.clone()),
        }
    }

    pub fn as_exact(&self) -> Option<&FieldElement> {
        match self {
            RootValue::Exact(e) => Some(e),
            RootValue::Interval(_) => None,
        }
    }

    /// True when the enclosure proves the root real (exact zero imaginary part).
    pub fn is_certified_real(&self) -> bool {
        match self {
            RootValue::Exact(e) => e.tower_is_real(),
            RootValue::Interval(b) => b.im.sign() == Some(0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Root {
    pub value: RootValue,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct UnivariateRoots {
    pub poly: UniPoly,
    pub roots: Vec<Root>,
}

impl UnivariateRoots {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// All complex roots of a nonzero polynomial, with multiplicities.
pub fn isolate_roots(p: &UniPoly) -> Result<UnivariateRoots, PolyError> {
    assert!(!p.is_zero(), "isolate_roots of zero polynomial");
    let mut roots = Vec::new();
    for (mult, factor) in p.squarefree_decomposition() {
        for value in roots_of_squarefree(&factor)? {
            roots.push(Root { value, multiplicity: mult });
        }
    }
    let out = UnivariateRoots { poly: p.clone(), roots };
    debug_assert_eq!(out.total_multiplicity(), p.degree().unwrap());
    Ok(out)
}

/// Roots of a square-free polynomial, exact where probes succeed.
pub fn roots_of_squarefree(q: &UniPoly) -> Result<Vec<RootValue>, PolyError> {
    let mut exact = Vec::new();
    let residual = probes::extract_exact_roots(q, &mut exact)?;
    let mut out: Vec<RootValue> = exact.into_iter().map(RootValue::Exact).collect();
    if residual.degree().unwrap_or(0) > 0 {
        let boxes = complex::isolate_all(&residual)?;
        for b in boxes {
            // Last-chance upgrade: the simplest rational inside a real box
            // (catches rational roots whose coefficients defeated factoring).
            if b.im.contains_zero() {
                let cand = simplest_rational_between(
                    &b.re.lo.to_rational(),
                    &b.re.hi.to_rational(),
                );
                let fe = FieldElement::from_rational(residual.tower(), cand);
                if residual.eval(&fe).is_zero() {
                    out.push(RootValue::Exact(fe));
                    continue;
                }
            }
            out.push(RootValue::Interval(b));
        }
    }
    Ok(out)
}

/// The rational with the smallest denominator (then numerator) in [lo, hi].
pub fn simplest_rational_between(lo: &num_rational::BigRational, hi: &num_rational::BigRational) -> num_rational::BigRational {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};
    let (lo, hi) = if lo <= hi { (lo.clone(), hi.clone()) } else { (hi.clone(), lo.clone()) };
    if lo.is_negative() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_between(&-hi.clone(), &-lo.clone());
    }
    // 0 <= lo <= hi
    fn go(lo: &BigRational, hi: &BigRational) -> BigRational {
        if lo.is_integer() {
            return lo.clone();
        }
        let next_int = lo.floor() + BigRational::one();
        if next_int <= *hi {
            return next_int;
        }
        // No integer inside: recurse on reciprocals of the fractional parts.
        let fl = lo.floor();
        let fr_lo = lo - &fl;
        let fr_hi = hi - &fl;
        fl + go(&fr_hi.recip(), &fr_lo.recip()).recip()
    }
    let _ = BigInt::one();
    go(&lo, &hi)
}
