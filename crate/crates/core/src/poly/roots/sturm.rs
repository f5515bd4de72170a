//! Sturm-sequence isolation of real roots for polynomials with real
//! (possibly irrational) tower coefficients. Signs at rational points are
//! decided exactly.

use crate::field::FieldElement;
use crate::num::dyadic::Dyadic;
use crate::num::interval::RealInterval;
use crate::poly::{PolyError, UniPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            return seq;
        }
        // Normalize to keep tower coefficients small; positive scaling
        // preserves the sign variation structure.
        let lead_inv_abs = normalize_positive(&r);
        seq.push(lead_inv_abs);
    }
    fn normalize_positive(r: &UniPoly) -> UniPoly {
        let neg = r.neg();
        let (_, pr) = neg.to_multi(crate::poly::Var::X).rational_content_split();
        UniPoly::from_multi(&pr, crate::poly::Var::X)
    }
}

fn sign_at(p: &UniPoly, x: &BigRational) -> Result<i32, PolyError> {
    let v = p.eval(&FieldElement::from_rational(p.tower(), x.clone()));
    if v.is_zero() {
        return Ok(0);
    }
    Ok(v.sign_real()?)
}

fn variations(signs: &[i32]) -> usize {
    let mut count = 0;
    let mut last = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[UniPoly], x: &BigRational) -> Result<usize, PolyError> {
    let signs: Result<Vec<i32>, PolyError> = seq.iter().map(|p| sign_at(p, x)).collect();
    Ok(variations(&signs?))
}

/// Number of distinct real roots in the half-open interval (lo, hi].
pub fn count_roots_between(seq: &[UniPoly], lo: &BigRational, hi: &BigRational) -> Result<usize, PolyError> {
    Ok(variations_at(seq, lo)?.saturating_sub(variations_at(seq, hi)?))
}

/// A rational bound B with every complex root inside |z| < B (Cauchy bound).
pub fn root_bound(p: &UniPoly) -> Result<BigRational, PolyError> {
    let n = p.degree().expect("root bound of zero polynomial");
    let lead = p.coeff(n);
    let mut max_ratio = BigRational::zero();
    let prec = 64;
    // |c_i| / |c_n| bounded via intervals: upper(|c_i|) / lower(|c_n|).
    let lead_box = lead.to_interval(prec)?;
    let mut lead_low = lead_box.norm_sq().sqrt(prec).lo;
    let mut pr = prec;
    while lead_low.sign() <= 0 {
        pr *= 2;
        if pr > crate::field::precision_cap() {
            return Err(PolyError::PrecisionExhausted);
        }
        lead_low = lead.to_interval(pr)?.norm_sq().sqrt(pr).lo;
    }
    for i in 0..n {
        let c = p.coeff(i);
        if c.is_zero() {
            continue;
        }
        let up = c.to_interval(prec)?.norm_sq().sqrt(prec).hi;
        let ratio = up.div_dir(&lead_low, prec, true).to_rational();
        if ratio > max_ratio {
            max_ratio = ratio;
        }
    }
    Ok(max_ratio + BigRational::from(BigInt::from(2)))
}

/// Isolating intervals (rational endpoints, pairwise disjoint) for all real
/// roots of a square-free polynomial with real coefficients. Roots never
/// land on returned endpoints.
pub fn real_root_intervals(p: &UniPoly) -> Result<Vec<(BigRational, BigRational)>, PolyError> {
    let seq = sturm_sequence(p);
    let bound = root_bound(p)?;
    let mut work = vec![(-bound.clone(), bound.clone())];
    // Nudge endpoints off roots.
    let mut out = Vec::new();
    let mut fuel = 10_000usize;
    while let Some((lo, hi)) = work.pop() {
        fuel = fuel.checked_sub(1).ok_or(PolyError::PrecisionExhausted)?;
        let k = count_roots_between(&seq, &lo, &hi)?;
        if k == 0 {
            continue;
        }
        if k == 1 && sign_at(&seq[0], &lo)? != 0 {
            out.push((lo, hi));
            continue;
        }
        let mut mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
        // Perturb away from an exact root of p.
        let mut step = (&hi - &lo) / BigRational::from(BigInt::from(64));
        while sign_at(&seq[0], &mid)? == 0 {
            mid += &step;
            step /= BigRational::from(BigInt::from(2));
            if mid >= hi {
                return Err(PolyError::PrecisionExhausted);
            }
        }
        work.push((lo, mid.clone()));
        work.push((mid, hi));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Shrink an isolating interval below the given width by Sturm bisection.
pub fn refine_interval(
    seq: &[UniPoly],
    lo: &BigRational,
    hi: &BigRational,
    width: &BigRational,
) -> Result<(BigRational, BigRational), PolyError> {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let two = BigRational::from(BigInt::from(2));
    let mut fuel = 100_000usize;
    while &(&hi - &lo) > width {
        fuel = fuel.checked_sub(1).ok_or(PolyError::PrecisionExhausted)?;
        let mut mid = (&lo + &hi) / &two;
        let mut step = (&hi - &lo) / BigRational::from(BigInt::from(64));
        while sign_at(&seq[0], &mid)? == 0 {
            mid += &step;
            step /= &two;
        }
        if count_roots_between(seq, &lo, &mid)? == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi))
}

/// Convert a rational isolating interval into an outward-rounded dyadic one.
pub fn to_real_interval(lo: &BigRational, hi: &BigRational, prec: u32) -> RealInterval {
    RealInterval::new(
        Dyadic::from_rational(lo, prec, false),
        Dyadic::from_rational(hi, prec, true),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn isolates_three_real_roots() {
        // (x−1)(x−2)(x+5) = x³ + 2x² − 13x + 10
        let t = FieldTower::rational();
        let p = UniPoly::from_rational_coeffs(&t, &[q(10, 1), q(-13, 1), q(2, 1), q(1, 1)]);
        let iv = real_root_intervals(&p).unwrap();
        assert_eq!(iv.len(), 3);
        for (lo, hi) in &iv {
            assert!(lo < hi);
        }
        // refine around the middle root
        let seq = sturm_sequence(&p);
        let (lo, hi) = refine_interval(&seq, &iv[1].0, &iv[1].1, &q(1, 1024)).unwrap();
        assert!(lo < q(1, 1) && q(1, 1) < hi || lo < q(2, 1) && q(2, 1) < hi || lo < q(-5, 1));
    }

    #[test]
    fn counts_roots_over_real_tower() {
        // x² − √2 over Q(√2): two real roots ±2^(1/4)
        let t = FieldTower::quadratic(q(2, 1)).unwrap();
        let s = FieldElement::sqrt_gen(&t, 0);
        let p = UniPoly::new(&t, vec![s.neg(), FieldElement::zero(&t), FieldElement::one(&t)]);
        let iv = real_root_intervals(&p).unwrap();
        assert_eq!(iv.len(), 2);
    }

    #[test]
    fn no_real_roots_for_positive_poly() {
        let t = FieldTower::rational();
        let p = UniPoly::from_rational_coeffs(&t, &[q(1, 1), q(0, 1), q(1, 1)]);
        assert!(real_root_intervals(&p).unwrap().is_empty());
    }
}
