//! Elements of a quadratic tower, stored by rational coordinates over the
//! canonical basis {1, √r₁, √r₂, √r₁√r₂} truncated to the tower's depth.

use super::sqrt::sqrt_in_coords;
use super::{precision_cap, FieldError, FieldTower};
use crate::num::interval::{ComplexInterval, RealInterval};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    tower: FieldTower,
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn new(tower: FieldTower, mut coords: Vec<BigRational>) -> Self {
        assert!(coords.len() <= tower.dim(), "coordinate vector too long for tower");
        coords.resize(tower.dim(), BigRational::zero());
        FieldElement { tower, coords }
    }

    pub fn zero(tower: &FieldTower) -> Self {
        FieldElement::new(tower.clone(), vec![])
    }

    pub fn one(tower: &FieldTower) -> Self {
        FieldElement::new(tower.clone(), vec![BigRational::one()])
    }

    pub fn from_rational(tower: &FieldTower, r: BigRational) -> Self {
        FieldElement::new(tower.clone(), vec![r])
    }

    pub fn from_int(tower: &FieldTower, n: i64) -> Self {
        FieldElement::from_rational(tower, BigRational::from(BigInt::from(n)))
    }

    pub fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// The generator √r_{k+1} of level k as an element of the tower.
    pub fn sqrt_gen(tower: &FieldTower, k: usize) -> Self {
        assert!(k < tower.depth());
        let mut coords = vec![BigRational::zero(); tower.dim()];
        coords[1 << k] = BigRational::one();
        FieldElement { tower: tower.clone(), coords }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn try_to_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Re-express in a deeper tower that this element's tower embeds in.
    pub fn embed(&self, target: &FieldTower) -> Result<FieldElement, FieldError> {
        if &self.tower == target {
            return Ok(self.clone());
        }
        if !self.tower.embeds_in(target) {
            return Err(FieldError::IncompatibleTowers);
        }
        Ok(FieldElement::new(target.clone(), self.coords.clone()))
    }

    /// Lift a pair of elements into their common tower.
    pub fn unify(a: &FieldElement, b: &FieldElement) -> Result<(FieldElement, FieldElement), FieldError> {
        if a.tower == b.tower {
            Ok((a.clone(), b.clone()))
        } else if a.tower.embeds_in(&b.tower) {
            Ok((a.embed(&b.tower)?, b.clone()))
        } else if b.tower.embeds_in(&a.tower) {
            Ok((a.clone(), b.embed(&a.tower)?))
        } else {
            Err(FieldError::IncompatibleTowers)
        }
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::unify(self, other).expect("incompatible towers in add");
        FieldElement {
            tower: a.tower.clone(),
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::unify(self, other).expect("incompatible towers in mul");
        let coords = mul_coords(&a.coords, &b.coords, &a.tower, a.tower.depth());
        FieldElement { tower: a.tower, coords }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        FieldElement {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let coords = inv_coords(&self.coords, &self.tower, self.tower.depth())?;
        Ok(FieldElement { tower: self.tower.clone(), coords })
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one(&self.tower);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Conjugate flipping the sign of the level-k radical (k < depth).
    pub fn conjugate(&self, k: usize) -> Self {
        assert!(k < self.tower.depth());
        let mut coords = self.coords.clone();
        for (i, c) in coords.iter_mut().enumerate() {
            if i & (1 << k) != 0 {
                *c = -c.clone();
            }
        }
        FieldElement { tower: self.tower.clone(), coords }
    }

    /// Exact square root within the tower, if one exists.
    pub fn sqrt_in_tower(&self) -> Option<FieldElement> {
        let coords = sqrt_in_coords(&self.coords, &self.tower)?;
        Some(FieldElement { tower: self.tower.clone(), coords })
    }

    /// True when every tower radicand is a positive real (so the canonical
    /// embedding of the whole tower is real).
    pub fn tower_is_real(&self) -> bool {
        tower_is_real(&self.tower)
    }

    /// Rigorous complex enclosure with box width at most 2^(1-prec)*(1+|a|).
    pub fn to_interval(&self, prec: u32) -> Result<ComplexInterval, FieldError> {
        let cap = precision_cap();
        let mut working = prec.saturating_add(16 + 8 * self.tower.depth() as u32);
        loop {
            let b = coords_interval(&self.coords, &self.tower, working)?;
            // Required width: 2^(1-prec) * (1 + |a|).
            let bound = b
                .mag_upper()
                .add(&crate::num::dyadic::Dyadic::one())
                .mul_pow2(1 - prec as i64);
            if b.max_width() <= bound {
                return Ok(b);
            }
            working = working.saturating_mul(2);
            if working > cap {
                return Err(FieldError::PrecisionExhausted);
            }
        }
    }

    /// Exact sign of a real element: refines intervals until 0 is excluded.
    pub fn sign_real(&self) -> Result<i32, FieldError> {
        if self.is_zero() {
            return Ok(0);
        }
        let cap = precision_cap();
        let mut prec = 64;
        loop {
            let b = self.to_interval(prec)?;
            debug_assert!(b.im.contains_zero(), "sign_real on a non-real element");
            if let Some(s) = b.re.sign() {
                if s != 0 {
                    return Ok(s);
                }
            }
            if b.re.sign().is_none() {
                prec = prec.saturating_mul(2);
                if prec > cap {
                    return Err(FieldError::PrecisionExhausted);
                }
            } else {
                // Interval pinned at zero yet element nonzero: impossible.
                unreachable!("exact-zero interval for nonzero element");
            }
        }
    }

    /// Decide equality with an element of a possibly different tower.
    ///
    /// Same-tower comparisons are coordinate-wise; otherwise the rational
    /// minimal polynomial plus a root-separation bound decides.
    pub fn eq_cross_tower(&self, other: &FieldElement) -> Result<bool, FieldError> {
        if let Ok((a, b)) = Self::unify(self, other) {
            return Ok(a == b);
        }
        super::minpoly::eq_by_min_poly(self, other)
    }
}

fn tower_is_real(tower: &FieldTower) -> bool {
    for k in 0..tower.depth() {
        let rad = FieldElement::new(tower.prefix(k), tower.radicand_coords(k).to_vec());
        if !rad.tower_is_real() {
            return false;
        }
        match rad.sign_real() {
            Ok(s) if s > 0 => {}
            _ => return false,
        }
    }
    true
}

/// Recursive Karatsuba-style coordinate multiplication over nested pairs.
fn mul_coords(a: &[BigRational], b: &[BigRational], tower: &FieldTower, depth: usize) -> Vec<BigRational> {
    if depth == 0 {
        return vec![&a[0] * &b[0]];
    }
    let h = 1 << (depth - 1);
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let sub = tower.prefix(depth - 1);
    let p00 = mul_coords(a0, b0, &sub, depth - 1);
    let p11 = mul_coords(a1, b1, &sub, depth - 1);
    let p01 = mul_coords(a0, b1, &sub, depth - 1);
    let p10 = mul_coords(a1, b0, &sub, depth - 1);
    // (a0 + a1 s)(b0 + b1 s) = a0 b0 + a1 b1 r + (a0 b1 + a1 b0) s,  s² = r.
    let r = tower.radicand_coords(depth - 1);
    let p11r = mul_coords(&p11, r, &sub, depth - 1);
    let mut out = Vec::with_capacity(2 * h);
    for i in 0..h {
        out.push(&p00[i] + &p11r[i]);
    }
    for i in 0..h {
        out.push(&p01[i] + &p10[i]);
    }
    out
}

fn inv_coords(a: &[BigRational], tower: &FieldTower, depth: usize) -> Result<Vec<BigRational>, FieldError> {
    if depth == 0 {
        if a[0].is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        return Ok(vec![a[0].recip()]);
    }
    let h = 1 << (depth - 1);
    let (a0, a1) = a.split_at(h);
    let sub = tower.prefix(depth - 1);
    // 1/(a0 + a1 s) = (a0 - a1 s) / (a0² - a1² r); the norm is nonzero
    // because r is not a square one level down.
    let r = tower.radicand_coords(depth - 1);
    let a0sq = mul_coords(a0, a0, &sub, depth - 1);
    let a1sq = mul_coords(a1, a1, &sub, depth - 1);
    let a1sqr = mul_coords(&a1sq, r, &sub, depth - 1);
    let norm: Vec<BigRational> = a0sq.iter().zip(&a1sqr).map(|(x, y)| x - y).collect();
    let ninv = inv_coords(&norm, &sub, depth - 1)?;
    let top = mul_coords(a0, &ninv, &sub, depth - 1);
    let bot = mul_coords(a1, &ninv, &sub, depth - 1);
    let mut out = top;
    out.extend(bot.into_iter().map(|c| -c));
    Ok(out)
}

/// Interval enclosure of a coordinate vector over its tower basis.
pub(super) fn coords_interval(
    coords: &[BigRational],
    tower: &FieldTower,
    prec: u32,
) -> Result<ComplexInterval, FieldError> {
    let depth = coords.len().trailing_zeros() as usize;
    debug_assert_eq!(1 << depth, coords.len());
    if depth == 0 {
        return Ok(ComplexInterval::real(RealInterval::from_rational(&coords[0], prec)));
    }
    let h = 1 << (depth - 1);
    let lo = coords_interval(&coords[..h], &tower.prefix(depth - 1), prec)?;
    let hi = coords_interval(&coords[h..], &tower.prefix(depth - 1), prec)?;
    let s = tower.radical_interval(depth - 1, prec)?;
    Ok(lo.add(&hi.mul(&s)).round_out(prec + 8))
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "s1", "s2", "s1*s2"];
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", names[i])?;
            } else {
                write!(f, "{}*{}", c, names[i])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn conjugate_product_in_quadratic_field() {
        let t = FieldTower::quadratic(q(3, 1)).unwrap();
        // (1+√3)(1−√3) = −2
        let a = FieldElement::new(t.clone(), vec![q(1, 1), q(1, 1)]);
        let b = FieldElement::new(t.clone(), vec![q(1, 1), q(-1, 1)]);
        let p = a.mul(&b);
        assert_eq!(p, FieldElement::from_int(&t, -2));
    }

    #[test]
    fn imaginary_radical_inverse() {
        // (I√3)⁻¹ = −(1/3) I√3  in Q(√-3)
        let t = FieldTower::quadratic(q(-3, 1)).unwrap();
        let s = FieldElement::sqrt_gen(&t, 0);
        let inv = s.inv().unwrap();
        assert_eq!(inv, FieldElement::new(t, vec![q(0, 1), q(-1, 3)]));
    }

    #[test]
    fn paper_prefactor_norm() {
        // (−2516 + 27√69)(−2516 − 27√69) = 2516² − 27²·69 = 6279955
        let t = FieldTower::quadratic(q(69, 1)).unwrap();
        let a = FieldElement::new(t.clone(), vec![q(-2516, 1), q(27, 1)]);
        let b = a.conjugate(0);
        assert_eq!(a.mul(&b), FieldElement::from_int(&t, 6_279_955));
    }

    #[test]
    fn depth_two_field_axioms() {
        // Q(√2)(√(1+√2)) exercises a nested radicand.
        let t1 = FieldTower::quadratic(q(2, 1)).unwrap();
        let t2 = t1.extend_coords(vec![q(1, 1), q(1, 1)]).unwrap();
        let x = FieldElement::new(t2.clone(), vec![q(1, 2), q(-1, 3), q(2, 1), q(1, 5)]);
        let y = FieldElement::new(t2.clone(), vec![q(3, 1), q(1, 7), q(0, 1), q(-2, 3)]);
        let z = FieldElement::new(t2.clone(), vec![q(-1, 1), q(1, 1), q(1, 2), q(0, 1)]);
        // distributivity and associativity
        assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        // multiplicative inverse
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn interval_of_zero_is_exact() {
        let t = FieldTower::quadratic(q(5, 1)).unwrap();
        let z = FieldElement::zero(&t);
        let b = z.to_interval(128).unwrap();
        assert!(b.is_exact_zero());
    }

    #[test]
    fn interval_nesting_under_refinement() {
        let t = FieldTower::quadratic(q(-3, 1)).unwrap();
        let a = FieldElement::new(t, vec![q(2, 7), q(5, 3)]);
        let coarse = a.to_interval(48).unwrap();
        let fine = a.to_interval(96).unwrap();
        assert!(coarse.contains_box(&fine));
    }

    #[test]
    fn sign_of_real_depth_two() {
        // √(1+√2) − 3/2 < 0 since 1+√2 ≈ 2.414, sqrt ≈ 1.554
        let t1 = FieldTower::quadratic(q(2, 1)).unwrap();
        let t2 = t1.extend_coords(vec![q(1, 1), q(1, 1)]).unwrap();
        let s = FieldElement::sqrt_gen(&t2, 1);
        let v = s.sub(&FieldElement::from_rational(&t2, q(3, 2)));
        assert_eq!(v.sign_real().unwrap(), 1);
        let w = s.sub(&FieldElement::from_rational(&t2, q(8, 5)));
        assert_eq!(w.sign_real().unwrap(), -1);
    }
}
