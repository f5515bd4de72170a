//! Dense univariate polynomials over a tower field: the workhorse for
//! gcds, Sturm sequences and square-free decomposition of eliminants.

use crate::field::{FieldElement, FieldTower};
use crate::poly::{MultiPoly, Var};
use num_rational::BigRational;

/// Coefficients ascending; invariant: no trailing zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    tower: FieldTower,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(tower: &FieldTower, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.embed(tower).expect("coefficient outside tower"))
            .collect();
        UniPoly { tower: tower.clone(), coeffs }
    }

    pub fn zero(tower: &FieldTower) -> Self {
        UniPoly { tower: tower.clone(), coeffs: vec![] }
    }

    pub fn one(tower: &FieldTower) -> Self {
        UniPoly::new(tower, vec![FieldElement::one(tower)])
    }

    pub fn from_rational_coeffs(tower: &FieldTower, coeffs: &[BigRational]) -> Self {
        UniPoly::new(
            tower,
            coeffs.iter().map(|c| FieldElement::from_rational(tower, c.clone())).collect(),
        )
    }

    /// Extract the univariate polynomial in `v` from a MultiPoly that
    /// depends on no other variable.
    pub fn from_multi(p: &MultiPoly, v: Var) -> Self {
        let coeffs = p
            .coeffs_in(v)
            .into_iter()
            .map(|c| {
                assert!(c.is_constant(), "from_multi: input not univariate in {}", v.name());
                c.coeff(&crate::poly::Exp::new(0, 0, 0))
            })
            .collect();
        UniPoly::new(p.tower(), coeffs)
    }

    pub fn to_multi(&self, v: Var) -> MultiPoly {
        let vp = MultiPoly::var(&self.tower, v);
        let mut acc = MultiPoly::zero(&self.tower);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&vp).add(&MultiPoly::constant(c.clone()));
        }
        acc
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| FieldElement::zero(&self.tower))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            tower: self.tower.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        UniPoly::new(&self.tower, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.tower);
        }
        let mut out = vec![FieldElement::zero(&self.tower); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(&self.tower, out)
    }

    pub fn mul_scalar(&self, c: &FieldElement) -> Self {
        UniPoly::new(&self.tower, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.mul_scalar(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&BigRational::from_integer(i.into())))
            .collect();
        UniPoly::new(&self.tower, coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(x.tower());
        for c in self.coeffs.iter().rev() {
            let ce = FieldElement::unify(c, &acc).expect("eval tower").0;
            acc = acc.mul(x).add(&ce);
        }
        acc
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.leading().unwrap().inv().expect("nonzero leading");
        let mut r = self.coeffs.clone();
        if r.len() < dd + 1 {
            return (UniPoly::zero(&self.tower), self.clone());
        }
        let mut q = vec![FieldElement::zero(&self.tower); r.len() - dd];
        while r.len() >= dd + 1 {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap().mul(&lc_inv);
            if !f.is_zero() {
                q[k] = f.clone();
                for i in 0..=dd {
                    let t = d.coeff(i).mul(&f);
                    let (a, b) = FieldElement::unify(&r[k + i], &t).unwrap();
                    r[k + i] = a.sub(&b);
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            if r.len() < dd + 1 {
                break;
            }
        }
        (UniPoly::new(&self.tower, q), UniPoly::new(&self.tower, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact univariate division");
        q
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            // Normalize to tame coefficient blowup in the tower.
            let r = a.rem(&b).monic_if_nonzero();
            a = b;
            b = r;
        }
        a.monic_if_nonzero()
    }

    fn monic_if_nonzero(&self) -> Self {
        if self.is_zero() {
            self.clone()
        } else {
            self.monic()
        }
    }

    pub fn squarefree_part(&self) -> Self {
        let d = self.derivative();
        if d.is_zero() {
            return self.monic_if_nonzero();
        }
        let g = self.gcd(&d);
        if g.degree() == Some(0) {
            return self.monic_if_nonzero();
        }
        self.div_exact(&g).monic_if_nonzero()
    }

    /// Yun square-free decomposition: factors f = ∏ out[i].1^(out[i].0).
    pub fn squarefree_decomposition(&self) -> Vec<(usize, UniPoly)> {
        let mut out = Vec::new();
        let f = self.monic_if_nonzero();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_exact(&a);
        let mut c = df.div_exact(&a);
        let mut i = 1;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree().unwrap_or(0) > 0 {
                    out.push((i, b.monic()));
                }
                break;
            }
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((i, a.monic()));
            }
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            i += 1;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        out
    }

    /// p(c·x) for scaling the variable.
    pub fn scale_var(&self, c: &FieldElement) -> Self {
        let mut pow = FieldElement::one(&self.tower);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for co in &self.coeffs {
            coeffs.push(co.mul(&pow));
            pow = pow.mul(&c.embed(&self.tower).expect("scale tower"));
        }
        UniPoly::new(&self.tower, coeffs)
    }

    /// p(x + c).
    pub fn shift_var(&self, c: &FieldElement) -> Self {
        // Synthetic Taylor shift.
        let c = c.embed(&self.tower).expect("shift tower");
        let mut coeffs = self.coeffs.clone();
        let n = coeffs.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = coeffs[j + 1].mul(&c);
                coeffs[j] = coeffs[j].add(&t);
            }
        }
        UniPoly::new(&self.tower, coeffs)
    }

    /// Reverse coefficients: x^n · p(1/x).
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        UniPoly::new(&self.tower, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn upq(coeffs: &[(i64, i64)]) -> UniPoly {
        let t = FieldTower::rational();
        UniPoly::from_rational_coeffs(
            &t,
            &coeffs
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn gcd_of_shared_factor() {
        // gcd(x²−1, x−1) = x−1
        let a = upq(&[(-1, 1), (0, 1), (1, 1)]);
        let b = upq(&[(-1, 1), (1, 1)]);
        assert_eq!(a.gcd(&b), b.monic());
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        // (x−1)²(x+2) → (x−1)(x+2) = x²+x−2
        let p = upq(&[(1, 1), (-1, 1)]).mul(&upq(&[(1, 1), (-1, 1)])).mul(&upq(&[(2, 1), (1, 1)]));
        let sf = p.squarefree_part();
        assert_eq!(sf, upq(&[(-2, 1), (1, 1), (1, 1)]).monic());
    }

    #[test]
    fn yun_decomposition_multiplicities() {
        // (x−1)²(x+3)
        let p = upq(&[(1, 1), (-1, 1)])
            .mul(&upq(&[(1, 1), (-1, 1)]))
            .mul(&upq(&[(3, 1), (1, 1)]));
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (1, upq(&[(3, 1), (1, 1)]).monic()));
        assert_eq!(dec[1], (2, upq(&[(-1, 1), (1, 1)]).monic()));
    }

    #[test]
    fn taylor_shift_matches_substitution() {
        // p = x² + 3x + 1, p(x+2) = x² + 7x + 11
        let p = upq(&[(1, 1), (3, 1), (1, 1)]);
        let t = FieldTower::rational();
        let s = p.shift_var(&FieldElement::from_int(&t, 2));
        assert_eq!(s, upq(&[(11, 1), (7, 1), (1, 1)]));
    }
}
