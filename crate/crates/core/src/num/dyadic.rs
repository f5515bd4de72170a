//! Arbitrary-precision dyadic numbers `m * 2^e`.
//!
//! Addition and multiplication are exact; division and square root round in a
//! caller-chosen direction. These back the rigorous interval types.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn sign(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exponent += tz as i64;
        }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mantissa.bits()
    }

    pub fn neg(&self) -> Self {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(other.exponent);
        let ma = &self.mantissa << (self.exponent - e) as u64;
        let mb = &other.mantissa << (other.exponent - e) as u64;
        Dyadic::new(ma + mb, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic::new(&self.mantissa * &other.mantissa, self.exponent + other.exponent)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mantissa: self.mantissa.clone(), exponent: self.exponent + k }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Round towards -inf keeping about `prec` significant bits.
    pub fn round_down(&self, prec: u32) -> Self {
        self.round_dir(prec, false)
    }

    /// Round towards +inf keeping about `prec` significant bits.
    pub fn round_up(&self, prec: u32) -> Self {
        self.round_dir(prec, true)
    }

    fn round_dir(&self, prec: u32, up: bool) -> Self {
        let nbits = self.mantissa.bits();
        if nbits <= prec as u64 {
            return self.clone();
        }
        let drop = nbits - prec as u64;
        let q = if up {
            self.mantissa.div_ceil(&(BigInt::one() << drop))
        } else {
            self.mantissa.div_floor(&(BigInt::one() << drop))
        };
        Dyadic::new(q, self.exponent + drop as i64)
    }

    /// Directed division to `prec` bits. `up` selects rounding toward +inf.
    pub fn div_dir(&self, other: &Self, prec: u32, up: bool) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale the numerator so the quotient carries prec+2 significant bits.
        let na = self.mantissa.bits() as i64;
        let nb = other.mantissa.bits() as i64;
        let shift = (prec as i64 + 2 - (na - nb)).max(0) as u64;
        let num = &self.mantissa << shift;
        let q = if up {
            num.div_ceil(&other.mantissa)
        } else {
            num.div_floor(&other.mantissa)
        };
        Dyadic::new(q, self.exponent - other.exponent - shift as i64)
    }

    /// Directed square root to `prec` bits; requires a non-negative value.
    pub fn sqrt_dir(&self, prec: u32, up: bool) -> Self {
        assert!(self.sign() >= 0, "dyadic sqrt of negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Shift so the integer sqrt has at least prec+2 bits and even exponent.
        let nbits = self.mantissa.bits() as i64;
        let mut shift = (2 * (prec as i64 + 2) - nbits).max(0) as u64;
        if (self.exponent - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mantissa << shift;
        let s = m.sqrt();
        let e = (self.exponent - shift as i64) / 2;
        if up && &s * &s < m {
            Dyadic::new(s + 1, e)
        } else {
            Dyadic::new(s, e)
        }
    }

    pub fn from_rational(r: &BigRational, prec: u32, up: bool) -> Self {
        let num = Dyadic::new(r.numer().clone(), 0);
        let den = Dyadic::new(r.denom().clone(), 0);
        if den.mantissa.is_one() {
            // Denominator was a power of two: exact.
            return Dyadic { mantissa: num.mantissa, exponent: num.exponent - den.exponent };
        }
        num.div_dir(&den, prec, up)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from(&self.mantissa << self.exponent as u64)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.round_down(64);
        let m: f64 = match r.mantissa.to_string().parse() {
            Ok(v) => v,
            Err(_) => return f64::NAN,
        };
        m * 2f64.powi(r.exponent as i32)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.sub(other);
        match d.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn exact_ring_ops() {
        let a = dy(3, -1); // 1.5
        let b = dy(5, -2); // 1.25
        assert_eq!(a.add(&b), dy(11, -2));
        assert_eq!(a.mul(&b), dy(15, -3));
        assert_eq!(a.sub(&b), dy(1, -2));
    }

    #[test]
    fn directed_div_brackets_quotient() {
        let a = dy(1, 0);
        let b = dy(3, 0);
        let lo = a.div_dir(&b, 30, false);
        let hi = a.div_dir(&b, 30, true);
        assert!(lo <= hi);
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(lo.to_rational() <= third && third <= hi.to_rational());
        assert!(hi.sub(&lo).to_f64() < 1e-8);
    }

    #[test]
    fn directed_sqrt_brackets_root() {
        let two = dy(2, 0);
        let lo = two.sqrt_dir(40, false);
        let hi = two.sqrt_dir(40, true);
        assert!(lo.mul(&lo) <= two && two <= hi.mul(&hi));
        assert!(hi.sub(&lo).to_f64() < 1e-10);
    }
}
