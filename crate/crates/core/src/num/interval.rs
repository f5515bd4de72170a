//! Rigorous real and complex interval arithmetic over dyadic endpoints.
//!
//! Endpoint addition and multiplication are exact, so enclosures never leak;
//! rounding enters only through division, square roots and the explicit
//! `round_out` width-control step.

use super::dyadic::Dyadic;
use num_rational::BigRational;
use std::fmt;

/// Closed real interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl RealInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        RealInterval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        RealInterval { lo: d.clone(), hi: d }
    }

    pub fn zero() -> Self {
        RealInterval::point(Dyadic::zero())
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        RealInterval {
            lo: Dyadic::from_rational(r, prec, false),
            hi: Dyadic::from_rational(r, prec, true),
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() <= 0 && self.hi.sign() >= 0
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        self.lo.to_rational() <= *r && *r <= self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn strictly_contains(&self, other: &Self) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !(self.hi < other.lo || other.hi < self.lo)
    }

    /// Determined sign of every point: -1, 0 (exact zero) or 1; None if mixed.
    pub fn sign(&self) -> Option<i32> {
        if self.hi.sign() < 0 {
            Some(-1)
        } else if self.lo.sign() > 0 {
            Some(1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RealInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, other: &Self) -> Self {
        RealInterval { lo: self.lo.add(&other.lo), hi: self.hi.add(&other.hi) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        RealInterval { lo, hi }
    }

    pub fn square(&self) -> Self {
        if self.contains_zero() {
            let m = self.lo.mul(&self.lo).max(self.hi.mul(&self.hi));
            RealInterval { lo: Dyadic::zero(), hi: m }
        } else {
            self.mul(self)
        }
    }

    /// Reciprocal; the interval must exclude zero.
    pub fn recip(&self, prec: u32) -> Self {
        assert!(!self.contains_zero(), "interval reciprocal across zero");
        let one = Dyadic::one();
        RealInterval {
            lo: one.div_dir(&self.hi, prec, false),
            hi: one.div_dir(&self.lo, prec, true),
        }
    }

    pub fn div(&self, other: &Self, prec: u32) -> Self {
        self.mul(&other.recip(prec))
    }

    /// Square root; lower endpoint is clamped at zero.
    pub fn sqrt(&self, prec: u32) -> Self {
        assert!(self.hi.sign() >= 0, "interval sqrt of negative interval");
        let lo = if self.lo.sign() <= 0 { Dyadic::zero() } else { self.lo.sqrt_dir(prec, false) };
        RealInterval { lo, hi: self.hi.sqrt_dir(prec, true) }
    }

    pub fn round_out(&self, prec: u32) -> Self {
        RealInterval { lo: self.lo.round_down(prec), hi: self.hi.round_up(prec) }
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn rad(&self) -> Dyadic {
        self.hi.sub(&self.lo).mul_pow2(-1)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn abs_upper(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn abs_lower(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn hull(&self, other: &Self) -> Self {
        RealInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}±{}", self.mid().to_f64(), self.rad().to_f64())
    }
}

/// Axis-aligned complex box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexInterval {
    pub fn new(re: RealInterval, im: RealInterval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: RealInterval) -> Self {
        ComplexInterval { re, im: RealInterval::zero() }
    }

    pub fn zero() -> Self {
        ComplexInterval { re: RealInterval::zero(), im: RealInterval::zero() }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.sign() == Some(0) && self.im.sign() == Some(0)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_box(&self, other: &Self) -> bool {
        self.re.contains_interval(&other.re) && self.im.contains_interval(&other.im)
    }

    pub fn strictly_contains(&self, other: &Self) -> bool {
        self.re.strictly_contains(&other.re) && self.im.strictly_contains(&other.im)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn neg(&self) -> Self {
        ComplexInterval { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexInterval { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ComplexInterval { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ComplexInterval {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn norm_sq(&self) -> RealInterval {
        self.re.square().add(&self.im.square())
    }

    /// Reciprocal; the box must exclude zero (norm bounded away from 0).
    pub fn recip(&self, prec: u32) -> Self {
        let n = self.norm_sq();
        assert!(!n.contains_zero(), "complex interval reciprocal across zero");
        let inv = n.recip(prec);
        ComplexInterval { re: self.re.mul(&inv), im: self.im.neg().mul(&inv) }
    }

    pub fn div(&self, other: &Self, prec: u32) -> Self {
        self.mul(&other.recip(prec))
    }

    /// Principal square root of a box that excludes the branch cut
    /// (negative real axis), or lies exactly on the real/imaginary axis.
    ///
    /// Returns None when the box straddles the cut; callers refine and retry.
    pub fn sqrt_principal(&self, prec: u32) -> Option<Self> {
        // Exact real non-negative case.
        if self.im.sign() == Some(0) {
            if self.re.lo.sign() >= 0 {
                return Some(ComplexInterval::real(self.re.sqrt(prec)));
            }
            if self.re.hi.sign() <= 0 {
                // Pure imaginary result: sqrt(-t) = i sqrt(t), t >= 0.
                return Some(ComplexInterval {
                    re: RealInterval::zero(),
                    im: self.re.neg().sqrt(prec),
                });
            }
            return None; // real interval straddling zero
        }
        if self.re.hi.sign() <= 0 && self.im.contains_zero() {
            return None; // straddles the branch cut
        }
        // General case: w = sqrt((|z|+re)/2) + i*im/(2w).
        let modulus = self.norm_sq().sqrt(prec);
        let two = RealInterval::point(Dyadic::from_int(2));
        let wre_sq = modulus.add(&self.re).div(&two, prec);
        if wre_sq.hi.sign() <= 0 {
            return None;
        }
        let wre_sq = RealInterval {
            lo: if wre_sq.lo.sign() < 0 { Dyadic::zero() } else { wre_sq.lo },
            hi: wre_sq.hi,
        };
        let wre = wre_sq.sqrt(prec);
        if wre.lo.sign() <= 0 {
            return None; // cannot divide; box too wide
        }
        let wim = self.im.div(&wre.mul(&two), prec);
        Some(ComplexInterval { re: wre, im: wim })
    }

    pub fn round_out(&self, prec: u32) -> Self {
        ComplexInterval { re: self.re.round_out(prec), im: self.im.round_out(prec) }
    }

    pub fn max_width(&self) -> Dyadic {
        self.re.width().max(self.im.width())
    }

    pub fn mag_upper(&self) -> Dyadic {
        self.re.abs_upper().add(&self.im.abs_upper())
    }

    pub fn hull(&self, other: &Self) -> Self {
        ComplexInterval { re: self.re.hull(&other.re), im: self.im.hull(&other.im) }
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ri(lo: i64, hi: i64, e: i64) -> RealInterval {
        RealInterval::new(Dyadic::new(BigInt::from(lo), e), Dyadic::new(BigInt::from(hi), e))
    }

    #[test]
    fn mul_encloses_products() {
        let a = ri(-3, 5, -1);
        let b = ri(2, 7, -2);
        let p = a.mul(&b);
        for (x, y) in [(-1.5, 0.5), (2.5, 1.75), (-1.5, 1.75), (2.5, 0.5)] {
            let v = x * y;
            assert!(p.lo.to_f64() <= v && v <= p.hi.to_f64());
        }
    }

    #[test]
    fn complex_sqrt_squares_back() {
        let z = ComplexInterval::new(ri(11, 13, -2), ri(7, 9, -2));
        let w = z.sqrt_principal(60).unwrap();
        let sq = w.mul(&w);
        assert!(sq.intersects(&z));
        assert!(w.re.lo.sign() > 0);
    }

    #[test]
    fn negative_real_sqrt_is_imaginary() {
        let z = ComplexInterval::real(ri(-5, -3, 0));
        let w = z.sqrt_principal(50).unwrap();
        assert_eq!(w.re.sign(), Some(0));
        assert!(w.im.lo.sign() > 0);
    }
}
