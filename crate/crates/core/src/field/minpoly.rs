//! Rational vanishing polynomials for tower elements and the cross-tower
//! equality decision (exact vanishing test plus a root-separation bound).

use super::{FieldElement, FieldError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A squarefree rational polynomial (coefficients by ascending degree)
/// vanishing at the element. Degree divides 2^depth.
pub fn rational_min_poly(a: &FieldElement) -> Vec<BigRational> {
    // Truncate to the smallest prefix tower actually used.
    let d = coeff_depth(a.coords());
    let tower = a.tower().prefix(d);
    let a = FieldElement::new(tower.clone(), a.coords()[..1 << d].to_vec());
    if d == 0 {
        return vec![-a.coords()[0].clone(), BigRational::one()];
    }
    // Eliminate the top radical: (x − a)(x − ā) has coefficients one level
    // down. Repeat until the coefficients are rational.
    let conj = a.conjugate(d - 1);
    let mut poly = vec![a.mul(&conj), a.add(&conj).neg(), FieldElement::one(&tower)];
    let mut level = d;
    loop {
        // Coefficients are invariant under conj(level-1): truncate them.
        level -= 1;
        let sub = tower.prefix(level);
        let poly_sub: Vec<FieldElement> = poly
            .iter()
            .map(|c| {
                debug_assert!(coeff_depth(c.coords()) <= level);
                FieldElement::new(sub.clone(), c.coords()[..1 << level].to_vec())
            })
            .collect();
        if level == 0 {
            let rat: Vec<BigRational> = poly_sub.iter().map(|c| c.coords()[0].clone()).collect();
            return squarefree_part(&rat);
        }
        let conj_poly: Vec<FieldElement> = poly_sub.iter().map(|c| c.conjugate(level - 1)).collect();
        poly = poly_mul_fe(&poly_sub, &conj_poly);
    }
}

/// Lowest prefix depth supporting the coordinate vector.
fn coeff_depth(coords: &[BigRational]) -> usize {
    let mut d = 0;
    for (i, co) in coords.iter().enumerate() {
        if !co.is_zero() && i > 0 {
            d = d.max(usize::BITS as usize - i.leading_zeros() as usize);
        }
    }
    d
}

fn poly_mul_fe(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let tower = a[0].tower();
    let mut out = vec![FieldElement::zero(tower); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

// ---- small univariate helpers over Q (ascending-coefficient vectors) ----

fn deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn poly_eval_fe(p: &[BigRational], x: &FieldElement) -> FieldElement {
    let tower = x.tower();
    let mut acc = FieldElement::zero(tower);
    for c in p.iter().rev() {
        acc = acc.mul(x).add(&FieldElement::from_rational(tower, c.clone()));
    }
    acc
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = deg(b).expect("remainder by zero");
    let mut r = a.to_vec();
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &b[db];
        for i in 0..=db {
            let v = &b[i] * &f;
            r[dr - db + i] -= v;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = deg(&a) {
        let lc = a[d].clone();
        for c in &mut a {
            *c /= &lc;
        }
    }
    a
}

fn poly_derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
        .collect()
}

fn poly_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = deg(b).expect("division by zero");
    let da = match deg(a) {
        Some(d) => d,
        None => return vec![],
    };
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); da - db + 1];
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &b[db];
        q[dr - db] = f.clone();
        for i in 0..=db {
            let v = &b[i] * &f;
            r[dr - db + i] -= v;
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "inexact division");
    q
}

fn squarefree_part(p: &[BigRational]) -> Vec<BigRational> {
    let g = poly_gcd(p, &poly_derivative(p));
    if deg(&g) == Some(0) || g.is_empty() {
        return trim(p.to_vec());
    }
    trim(poly_div_exact(p, &g))
}

/// Mahler's root-separation bound for a squarefree integer polynomial:
/// sep(P) > sqrt(3|disc|) / (n^((n+2)/2) ||P||₂^(n-1)). Returns a positive
/// rational strictly below the true minimal root distance.
fn separation_bound(p: &[BigRational]) -> BigRational {
    // Clear denominators to integer coefficients.
    let mut den = BigInt::one();
    for c in p {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from(den.clone())).to_integer()).collect();
    let n = ints.len() - 1;
    if n < 2 {
        // A linear polynomial has a single root; any positive bound works.
        return BigRational::one();
    }
    let disc = integer_discriminant(&ints);
    debug_assert!(!disc.is_zero(), "separation bound needs squarefree input");
    // sqrt(3|disc|) >= 1 for integer disc != 0; floor-sqrt is a valid lower bound.
    let num = (BigInt::from(3) * disc.abs()).sqrt();
    let norm2_sq: BigInt = ints.iter().map(|c| c * c).sum();
    let norm_up: BigInt = norm2_sq.sqrt() + 1; // ceil-ish upper bound of ||P||₂
    let n_big = BigInt::from(n);
    let mut denom = norm_up.pow((n - 1) as u32);
    denom *= n_big.pow(((n + 2) / 2 + 1) as u32); // integer over-bound of n^((n+2)/2)
    BigRational::new(num, denom)
}

fn integer_discriminant(p: &[BigInt]) -> BigInt {
    let pr: Vec<BigRational> = p.iter().map(|c| BigRational::from(c.clone())).collect();
    let dp = poly_derivative(&pr);
    let res = sylvester_resultant(&pr, &dp);
    let n = p.len() - 1;
    let lc = BigRational::from(p[n].clone());
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let d = res / lc * BigRational::from(BigInt::from(sign));
    debug_assert!(d.is_integer());
    d.to_integer()
}

fn sylvester_resultant(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let da = deg(a).unwrap_or(0);
    let db = match deg(b) {
        Some(d) => d,
        None => return BigRational::zero(),
    };
    let n = da + db;
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 0..db {
        for (j, c) in a.iter().enumerate().take(da + 1) {
            m[i][i + da - j] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in b.iter().enumerate().take(db + 1) {
            m[db + i][i + db - j] = c.clone();
        }
    }
    // Fraction-ful Gaussian elimination; sizes here are tiny (≤ 8).
    let mut det = BigRational::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let v = &m[col][c] * &f;
                m[r][c] -= v;
            }
        }
    }
    det
}

/// Equality of elements in unrelated towers.
pub(super) fn eq_by_min_poly(a: &FieldElement, b: &FieldElement) -> Result<bool, FieldError> {
    if a.is_zero() && b.is_zero() {
        return Ok(true);
    }
    if a.is_zero() != b.is_zero() {
        return Ok(false);
    }
    let m = rational_min_poly(a);
    if !poly_eval_fe(&m, b).is_zero() {
        return Ok(false);
    }
    // b is a root of a's minimal polynomial; separate the roots.
    let sep = separation_bound(&m);
    let cap = super::precision_cap();
    let mut prec = 64u32;
    loop {
        let ba = a.to_interval(prec)?;
        let bb = b.to_interval(prec)?;
        if !ba.intersects(&bb) {
            return Ok(false);
        }
        let widths = ba.max_width().add(&bb.max_width());
        if widths.to_rational() < sep {
            // Boxes overlap and jointly narrower than the minimal distance
            // between distinct roots: same root.
            return Ok(true);
        }
        prec = prec.saturating_mul(2);
        if prec > cap {
            return Err(FieldError::PrecisionExhausted);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn min_poly_of_quadratic_element() {
        let t = FieldTower::quadratic(q(2, 1)).unwrap();
        let a = FieldElement::new(t, vec![q(1, 1), q(1, 1)]); // 1+√2
        let m = rational_min_poly(&a);
        // x² − 2x − 1
        assert_eq!(m, vec![q(-1, 1), q(-2, 1), q(1, 1)]);
    }

    #[test]
    fn cross_tower_equality_same_value() {
        // √(49/4) presented in Q(√2) coords vs plain rational 7/2.
        let t = FieldTower::quadratic(q(2, 1)).unwrap();
        let a = FieldElement::from_rational(&t, q(7, 2));
        let t2 = FieldTower::quadratic(q(3, 1)).unwrap();
        let b = FieldElement::from_rational(&t2, q(7, 2));
        assert!(a.eq_cross_tower(&b).unwrap());
        let c = FieldElement::new(t2, vec![q(7, 2), q(1, 1)]);
        assert!(!a.eq_cross_tower(&c).unwrap());
    }

    #[test]
    fn cross_tower_distinguishes_conjugates() {
        // √12 in Q(√12) equals 2√3 in Q(√3); −√12 does not.
        let t12 = FieldTower::quadratic(q(12, 1)).unwrap();
        let t3 = FieldTower::quadratic(q(3, 1)).unwrap();
        let a = FieldElement::sqrt_gen(&t12, 0);
        let b = FieldElement::new(t3, vec![q(0, 1), q(2, 1)]);
        assert!(a.eq_cross_tower(&b).unwrap());
        assert!(!a.neg().eq_cross_tower(&b).unwrap());
    }

    #[test]
    fn nested_element_min_poly_vanishes() {
        // x = √(1+√2): min poly x⁴ − 2x² − 1.
        let t1 = FieldTower::quadratic(q(2, 1)).unwrap();
        let r = FieldElement::new(t1.clone(), vec![q(1, 1), q(1, 1)]);
        let t2 = t1.extend(&r).unwrap();
        let x = FieldElement::sqrt_gen(&t2, 1);
        let m = rational_min_poly(&x);
        assert_eq!(m, vec![q(-1, 1), q(0, 1), q(-2, 1), q(0, 1), q(1, 1)]);
    }
}
