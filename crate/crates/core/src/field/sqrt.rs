//! Exact square-root tests inside a tower, by solving the coordinate
//! equations of t² = s level by level. Never numeric.

use super::FieldTower;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Square root of the element with the given coordinates, if one exists in
/// the field spanned by those coordinates (a prefix of `tower`).
pub(super) fn sqrt_in_coords(s: &[BigRational], tower: &FieldTower) -> Option<Vec<BigRational>> {
    let depth = s.len().trailing_zeros() as usize;
    debug_assert_eq!(1 << depth, s.len());
    if depth == 0 {
        return sqrt_rational(&s[0]).map(|r| vec![r]);
    }
    let h = 1 << (depth - 1);
    let (s0, s1) = s.split_at(h);
    let sub = tower.prefix(depth - 1);
    let r = tower.radicand_coords(depth - 1);
    let result = if s1.iter().all(|c| c.is_zero()) {
        // t = a with a² = s0, or t = b√r with b²·r = s0.
        if let Some(a) = sqrt_in_coords(s0, &sub) {
            let mut out = a;
            out.extend(vec![BigRational::zero(); h]);
            Some(out)
        } else {
            let rinv = inv(r, &sub);
            let b_sq = mul(s0, &rinv, &sub);
            sqrt_in_coords(&b_sq, &sub).map(|b| {
                let mut out = vec![BigRational::zero(); h];
                out.extend(b);
                out
            })
        }
    } else {
        // t = a + b√r with 2ab = s1, a² + b²r = s0:
        // (a²)² − s0·(a²) + s1²·r/4 = 0, so a² = (s0 ± w)/2, w² = s0² − s1²r.
        let s0_sq = mul(s0, s0, &sub);
        let s1_sq = mul(s1, s1, &sub);
        let s1_sq_r = mul(&s1_sq, r, &sub);
        let w_sq: Vec<BigRational> = s0_sq.iter().zip(&s1_sq_r).map(|(x, y)| x - y).collect();
        let w = sqrt_in_coords(&w_sq, &sub)?;
        let mut found = None;
        for sign in [1i64, -1] {
            let a_sq: Vec<BigRational> = s0
                .iter()
                .zip(&w)
                .map(|(x, y)| (x + y * BigRational::from(BigInt::from(sign))) / BigRational::from(BigInt::from(2)))
                .collect();
            if let Some(a) = sqrt_in_coords(&a_sq, &sub) {
                if a.iter().any(|c| !c.is_zero()) {
                    let two_a_inv = inv(&a.iter().map(|c| c * BigRational::from(BigInt::from(2))).collect::<Vec<_>>(), &sub);
                    let b = mul(s1, &two_a_inv, &sub);
                    let mut out = a;
                    out.extend(b);
                    found = Some(out);
                    break;
                }
            }
        }
        found
    };
    // Defend against branch mistakes: a square root must square back.
    result.filter(|t| {
        let sq = mul(t, t, &FieldTower::prefix(tower, depth));
        sq == s
    })
}

fn mul(a: &[BigRational], b: &[BigRational], tower: &FieldTower) -> Vec<BigRational> {
    let depth = a.len().trailing_zeros() as usize;
    if depth == 0 {
        return vec![&a[0] * &b[0]];
    }
    let h = 1 << (depth - 1);
    let sub = tower.prefix(depth - 1);
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let p00 = mul(a0, b0, &sub);
    let p11 = mul(a1, b1, &sub);
    let p01 = mul(a0, b1, &sub);
    let p10 = mul(a1, b0, &sub);
    let r = tower.radicand_coords(depth - 1);
    let p11r = mul(&p11, r, &sub);
    let mut out: Vec<BigRational> = p00.iter().zip(&p11r).map(|(x, y)| x + y).collect();
    out.extend(p01.iter().zip(&p10).map(|(x, y)| x + y));
    out
}

fn inv(a: &[BigRational], tower: &FieldTower) -> Vec<BigRational> {
    let depth = a.len().trailing_zeros() as usize;
    if depth == 0 {
        return vec![a[0].recip()];
    }
    let h = 1 << (depth - 1);
    let sub = tower.prefix(depth - 1);
    let (a0, a1) = a.split_at(h);
    let r = tower.radicand_coords(depth - 1);
    let a0sq = mul(a0, a0, &sub);
    let a1sq = mul(a1, a1, &sub);
    let a1sqr = mul(&a1sq, r, &sub);
    let norm: Vec<BigRational> = a0sq.iter().zip(&a1sqr).map(|(x, y)| x - y).collect();
    let ninv = inv(&norm, &sub);
    let mut out = mul(a0, &ninv, &sub);
    out.extend(mul(a1, &ninv, &sub).into_iter().map(|c| -c));
    out
}

/// Rational square root, exact: numerator and denominator must both be
/// perfect squares and the value non-negative.
pub(super) fn sqrt_rational(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_squares() {
        assert_eq!(sqrt_rational(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(sqrt_rational(&q(2, 1)), None);
        assert_eq!(sqrt_rational(&q(-4, 1)), None);
    }

    #[test]
    fn square_detected_in_quadratic_field() {
        // (1 + 2√3)² = 13 + 4√3
        let t = FieldTower::quadratic(q(3, 1)).unwrap();
        let s = FieldElement::new(t.clone(), vec![q(13, 1), q(4, 1)]);
        let root = s.sqrt_in_tower().expect("is a square");
        assert_eq!(root.mul(&root), s);
        // 1 + √3 is not a square in Q(√3)
        let ns = FieldElement::new(t, vec![q(1, 1), q(1, 1)]);
        assert!(ns.sqrt_in_tower().is_none());
    }

    #[test]
    fn tower_extension_rejects_squares() {
        use crate::field::{FieldError, FieldTower};
        let t = FieldTower::quadratic(q(3, 1)).unwrap();
        // 13+4√3 is a square in Q(√3): cannot extend by it
        let sq = FieldElement::new(t.clone(), vec![q(13, 1), q(4, 1)]);
        assert_eq!(t.extend(&sq), Err(FieldError::RadicandIsSquare));
        // but 1+√3 works
        let ok = FieldElement::new(t.clone(), vec![q(1, 1), q(1, 1)]);
        assert!(t.extend(&ok).is_ok());
    }
}
