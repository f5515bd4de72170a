//! Sparse multivariate polynomials in x, y, z over a quadratic tower.
//!
//! Terms are kept in graded-lexicographic order (x > y > z) with no zero
//! coefficients stored; z doubles as the homogenizing variable and, in the
//! elimination routines, as a spare parameter slot.

use crate::field::{FieldElement, FieldError, FieldTower};
use crate::num::interval::ComplexInterval;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }
}

/// Exponent vector; ordered graded-lexicographically with x > y > z.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Exp {
    pub x: u16,
    pub y: u16,
    pub z: u16,
}

impl Exp {
    pub fn new(x: u16, y: u16, z: u16) -> Self {
        Exp { x, y, z }
    }

    pub fn total(&self) -> u32 {
        self.x as u32 + self.y as u32 + self.z as u32
    }

    pub fn get(&self, v: Var) -> u16 {
        match v {
            Var::X => self.x,
            Var::Y => self.y,
            Var::Z => self.z,
        }
    }

    pub fn set(&self, v: Var, e: u16) -> Exp {
        let mut out = *self;
        match v {
            Var::X => out.x = e,
            Var::Y => out.y = e,
            Var::Z => out.z = e,
        }
        out
    }

    fn add(&self, other: &Exp) -> Exp {
        Exp { x: self.x + other.x, y: self.y + other.y, z: self.z + other.z }
    }
}

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), self.x, self.y).cmp(&(other.total(), other.x, other.y))
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    tower: FieldTower,
    terms: BTreeMap<Exp, FieldElement>,
}

impl MultiPoly {
    pub fn zero(tower: &FieldTower) -> Self {
        MultiPoly { tower: tower.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        let tower = c.tower().clone();
        if !c.is_zero() {
            terms.insert(Exp::new(0, 0, 0), c);
        }
        MultiPoly { tower, terms }
    }

    pub fn one(tower: &FieldTower) -> Self {
        MultiPoly::constant(FieldElement::one(tower))
    }

    pub fn var(tower: &FieldTower, v: Var) -> Self {
        MultiPoly::monomial(
            FieldElement::one(tower),
            match v {
                Var::X => Exp::new(1, 0, 0),
                Var::Y => Exp::new(0, 1, 0),
                Var::Z => Exp::new(0, 0, 1),
            },
        )
    }

    pub fn monomial(c: FieldElement, e: Exp) -> Self {
        let tower = c.tower().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { tower, terms }
    }

    pub fn from_terms(tower: &FieldTower, terms: Vec<(Exp, FieldElement)>) -> Self {
        let mut p = MultiPoly::zero(tower);
        for (e, c) in terms {
            p.add_term(e, c.embed(tower).expect("term outside tower"));
        }
        p
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|e| e.total() == 0)
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total()).max()
    }

    pub fn deg_in(&self, v: Var) -> Option<u16> {
        self.terms.keys().map(|e| e.get(v)).max()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e.get(v) > 0)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Exp, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, e: &Exp) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(|| FieldElement::zero(&self.tower))
    }

    fn add_term(&mut self, e: Exp, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Lift into a deeper tower.
    pub fn embed(&self, target: &FieldTower) -> Result<MultiPoly, FieldError> {
        if &self.tower == target {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(*e, c.embed(target)?);
        }
        Ok(MultiPoly { tower: target.clone(), terms })
    }

    pub fn unify(a: &MultiPoly, b: &MultiPoly) -> Result<(MultiPoly, MultiPoly), FieldError> {
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
        MultiPoly {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, mut b) = Self::unify(self, other).expect("incompatible towers in poly add");
        for (e, c) in a.terms {
            b.add_term(e, c);
        }
        b
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::unify(self, other).expect("incompatible towers in poly mul");
        let mut out = MultiPoly::zero(&a.tower);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                out.add_term(ea.add(eb), ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.tower);
        }
        let (unit, _) = FieldElement::unify(c, &FieldElement::zero(&self.tower))
            .expect("incompatible scalar tower");
        let tower = unit.tower().clone();
        let mut terms = BTreeMap::new();
        for (e, co) in &self.terms {
            let v = co.embed(&tower).expect("embed").mul(&unit);
            if !v.is_zero() {
                terms.insert(*e, v);
            }
        }
        MultiPoly { tower, terms }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return MultiPoly::zero(&self.tower);
        }
        MultiPoly {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c.scale(r))).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(&self.tower);
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

    pub fn partial_derivative(&self, v: Var) -> Self {
        let mut out = MultiPoly::zero(&self.tower);
        for (e, c) in &self.terms {
            let k = e.get(v);
            if k == 0 {
                continue;
            }
            let ne = e.set(v, k - 1);
            out.add_term(ne, c.scale(&BigRational::from_integer(k.into())));
        }
        out
    }

    /// Substitute a polynomial for a variable.
    pub fn substitute(&self, v: Var, expr: &MultiPoly) -> Self {
        let (a, expr) = Self::unify(self, expr).expect("incompatible towers in substitute");
        // Group by exponent of v, then Horner in expr.
        let maxd = a.deg_in(v).unwrap_or(0);
        let mut buckets: Vec<MultiPoly> = vec![MultiPoly::zero(&a.tower); maxd as usize + 1];
        for (e, c) in &a.terms {
            let k = e.get(v) as usize;
            let rest = e.set(v, 0);
            buckets[k].add_term(rest, c.clone());
        }
        let mut acc = MultiPoly::zero(&a.tower);
        for b in buckets.into_iter().rev() {
            acc = acc.mul(&expr).add(&b);
        }
        acc
    }

    /// Exact evaluation at tower points (None leaves the variable alone).
    pub fn evaluate(&self, x: Option<&FieldElement>, y: Option<&FieldElement>, z: Option<&FieldElement>) -> MultiPoly {
        let mut p = self.clone();
        for (v, val) in [(Var::X, x), (Var::Y, y), (Var::Z, z)] {
            if let Some(val) = val {
                p = p.substitute(v, &MultiPoly::constant(val.clone()));
            }
        }
        p
    }

    /// Full evaluation to a scalar; all appearing variables must be given.
    pub fn evaluate_scalar(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let r = self.evaluate(Some(x), Some(y), None);
        assert!(r.is_constant(), "evaluate_scalar left free variables");
        r.coeff(&Exp::new(0, 0, 0))
    }

    /// Rigorous interval evaluation (x, y boxes; z must not appear).
    pub fn eval_interval(
        &self,
        x: &ComplexInterval,
        y: &ComplexInterval,
        prec: u32,
    ) -> Result<ComplexInterval, FieldError> {
        assert!(!self.depends_on(Var::Z));
        let dx = self.deg_in(Var::X).unwrap_or(0) as usize;
        let dy = self.deg_in(Var::Y).unwrap_or(0) as usize;
        let mut xp = Vec::with_capacity(dx + 1);
        let mut yp = Vec::with_capacity(dy + 1);
        let one = ComplexInterval::real(crate::num::interval::RealInterval::point(
            crate::num::dyadic::Dyadic::one(),
        ));
        xp.push(one.clone());
        for i in 1..=dx {
            xp.push(xp[i - 1].mul(x).round_out(prec));
        }
        yp.push(one);
        for i in 1..=dy {
            yp.push(yp[i - 1].mul(y).round_out(prec));
        }
        let mut acc = ComplexInterval::zero();
        for (e, c) in &self.terms {
            let cv = c.to_interval(prec)?;
            acc = acc.add(&cv.mul(&xp[e.x as usize]).mul(&yp[e.y as usize])).round_out(prec);
        }
        Ok(acc)
    }

    /// Homogenize with z to the given total degree.
    pub fn homogenize(&self, total: u32) -> Result<MultiPoly, crate::poly::PolyError> {
        let d = self.degree().unwrap_or(0);
        if total < d {
            return Err(crate::poly::PolyError::DegreeTooSmall);
        }
        assert!(!self.depends_on(Var::Z), "homogenize input already uses z");
        let mut out = MultiPoly::zero(&self.tower);
        for (e, c) in &self.terms {
            let ne = Exp::new(e.x, e.y, (total - e.total()) as u16);
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Set one variable to 1 (chart selection for projective curves).
    pub fn dehomogenize(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.tower);
        for (e, c) in &self.terms {
            out.add_term(e.set(v, 0), c.clone());
        }
        out
    }

    /// The coefficient of v^k, a polynomial in the other variables.
    pub fn coeff_of(&self, v: Var, k: u16) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.tower);
        for (e, c) in &self.terms {
            if e.get(v) == k {
                out.add_term(e.set(v, 0), c.clone());
            }
        }
        out
    }

    /// Univariate coefficient list in v (ascending), entries free of v.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let d = self.deg_in(v).unwrap_or(0);
        (0..=d).map(|k| self.coeff_of(v, k)).collect()
    }

    /// Rebuild from a univariate coefficient list in v.
    pub fn from_coeffs(tower: &FieldTower, v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(tower);
        let vp = MultiPoly::var(tower, v);
        for c in coeffs.iter().rev() {
            out = out.mul(&vp).add(c);
        }
        out
    }

    /// Leading coefficient w.r.t. a variable (polynomial in the others).
    pub fn leading_coeff_in(&self, v: Var) -> MultiPoly {
        match self.deg_in(v) {
            None => MultiPoly::zero(&self.tower),
            Some(d) => self.coeff_of(v, d),
        }
    }

    /// Translate so that (a, b) moves to the origin: p(x+a, y+b).
    pub fn translate(&self, a: &FieldElement, b: &FieldElement) -> MultiPoly {
        let (this, pa) = Self::unify(self, &MultiPoly::constant(a.clone()))
            .expect("incompatible towers in translate");
        let (this, pb) = Self::unify(&this, &MultiPoly::constant(b.clone()))
            .expect("incompatible towers in translate");
        let tower = this.tower().clone();
        let xa = MultiPoly::var(&tower, Var::X).add(&pa.embed(&tower).unwrap());
        let yb = MultiPoly::var(&tower, Var::Y).add(&pb.embed(&tower).unwrap());
        this.substitute(Var::X, &xa).substitute(Var::Y, &yb)
    }

    /// Divide all coordinates by the rational content (gcd of numerators /
    /// lcm of denominators across every coefficient); returns (content, primitive).
    pub fn rational_content_split(&self) -> (BigRational, MultiPoly) {
        use num_bigint::BigInt;
        use num_traits::One;
        if self.is_zero() {
            return (BigRational::one(), self.clone());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            for r in c.coords() {
                if !r.is_zero() {
                    num_gcd = num_integer::gcd(num_gcd, r.numer().clone());
                    den_lcm = num_integer::lcm(den_lcm, r.denom().clone());
                }
            }
        }
        if num_gcd.is_zero() {
            return (BigRational::one(), self.clone());
        }
        let content = BigRational::new(num_gcd, den_lcm);
        let inv = content.recip();
        (content, self.mul_rational(&inv))
    }

    /// Normalize so the graded-lex leading coefficient is 1.
    pub fn monic_graded_lex(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.inv().expect("leading coefficient nonzero");
                self.mul_scalar(&inv)
            }
        }
    }

    /// The homogeneous part of given total degree.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.tower);
        for (e, c) in &self.terms {
            if e.total() == d {
                out.add_term(*e, c.clone());
            }
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", c)?;
            for (v, k) in [("x", e.x), ("y", e.y), ("z", e.z)] {
                if k == 1 {
                    write!(f, "*{}", v)?;
                } else if k > 1 {
                    write!(f, "*{}^{}", v, k)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub(crate) fn qp(terms: &[(i64, i64, u16, u16)]) -> MultiPoly {
        // (num, den, x-exp, y-exp) over Q
        let t = FieldTower::rational();
        MultiPoly::from_terms(
            &t,
            terms
                .iter()
                .map(|&(n, d, x, y)| (Exp::new(x, y, 0), FieldElement::from_rational(&t, q(n, d))))
                .collect(),
        )
    }

    #[test]
    fn product_degree_adds() {
        let p = qp(&[(1, 1, 0, 1), (-1, 1, 0, 0)]); // y - 1
        let r = qp(&[(1, 1, 0, 1), (1, 1, 0, 0)]); // y + 1
        let prod = p.mul(&r);
        assert_eq!(prod, qp(&[(1, 1, 0, 2), (-1, 1, 0, 0)])); // y² − 1
        assert_eq!(prod.degree(), Some(2));
    }

    #[test]
    fn derivative_basics() {
        let p = qp(&[(1, 1, 3, 0)]); // x³
        assert_eq!(p.partial_derivative(Var::X), qp(&[(3, 1, 2, 0)]));
        let c = qp(&[(1, 1, 0, 2), (1, 1, 2, 0), (-1, 1, 0, 0)]); // y²+x²−1
        assert_eq!(c.partial_derivative(Var::Y), qp(&[(2, 1, 0, 1)]));
        // mixed partials commute
        let m = qp(&[(1, 1, 2, 2)]);
        assert_eq!(
            m.partial_derivative(Var::X).partial_derivative(Var::Y),
            m.partial_derivative(Var::Y).partial_derivative(Var::X)
        );
    }

    #[test]
    fn substitution_shift() {
        let p = qp(&[(1, 1, 2, 0)]); // x²
        let t = FieldTower::rational();
        let xp1 = MultiPoly::var(&t, Var::X).add(&MultiPoly::one(&t));
        let s = p.substitute(Var::X, &xp1);
        assert_eq!(s, qp(&[(1, 1, 2, 0), (2, 1, 1, 0), (1, 1, 0, 0)]));
    }

    #[test]
    fn homogenize_round_trip() {
        let p = qp(&[(1, 1, 0, 1), (-1, 1, 2, 0)]); // y − x²
        let h = p.homogenize(2).unwrap();
        assert_eq!(h.dehomogenize(Var::Z), p);
        // chart y = 1: yz − x² becomes z − x²
        let t = FieldTower::rational();
        let expect = MultiPoly::from_terms(
            &t,
            vec![
                (Exp::new(0, 0, 1), FieldElement::from_int(&t, 1)),
                (Exp::new(2, 0, 0), FieldElement::from_int(&t, -1)),
            ],
        );
        assert_eq!(h.dehomogenize(Var::Y), expect);
        assert!(p.homogenize(1).is_err());
    }

    #[test]
    fn evaluate_on_unit_circle() {
        let c = qp(&[(1, 1, 0, 2), (1, 1, 2, 0), (-1, 1, 0, 0)]);
        let t = FieldTower::rational();
        let v = c.evaluate_scalar(&FieldElement::from_int(&t, 0), &FieldElement::from_int(&t, -1));
        assert!(v.is_zero());
    }
}
