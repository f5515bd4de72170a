//! Complex root isolation by box subdivision with an interval-Newton
//! certificate. Candidate boxes overlap slightly so no root can hide on a
//! subdivision boundary; duplicates are separated by Newton refinement and
//! a final exact count check guards completeness.

use super::sturm;
use crate::field::FieldElement;
use crate::num::dyadic::Dyadic;
use crate::num::interval::{ComplexInterval, RealInterval};
use crate::poly::{PolyError, UniPoly};
use num_rational::BigRational;

/// Isolating boxes for every complex root of a square-free polynomial.
pub fn isolate_all(p: &UniPoly) -> Result<Vec<ComplexInterval>, PolyError> {
    let n = p.degree().expect("isolate_all of zero polynomial");
    if n == 0 {
        return Ok(vec![]);
    }
    let cap = crate::field::precision_cap();
    let mut prec = 128u32;
    loop {
        match try_isolate(p, n, prec) {
            Ok(Some(boxes)) => return Ok(boxes),
            Ok(None) => {
                prec = prec.saturating_mul(2);
                if prec > cap {
                    return Err(PolyError::PrecisionExhausted);
                }
            }
            Err(e) => return Err(e),
        }
    }
}

fn all_real_coeffs(p: &UniPoly) -> bool {
    p.coeffs().iter().all(|c| c.is_rational() || c.tower_is_real())
}

fn try_isolate(p: &UniPoly, n: usize, prec: u32) -> Result<Option<Vec<ComplexInterval>>, PolyError> {
    let coeffs: Result<Vec<ComplexInterval>, _> =
        p.coeffs().iter().map(|c| c.to_interval(prec)).collect();
    let coeffs = coeffs?;
    let dcoeffs: Vec<ComplexInterval> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| {
            c.mul(&ComplexInterval::real(RealInterval::point(Dyadic::from_int(i as i64))))
        })
        .collect();

    let mut certified: Vec<ComplexInterval> = Vec::new();

    // Real roots first when the coefficients are real.
    if all_real_coeffs(p) {
        let ivs = sturm::real_root_intervals(p)?;
        let seq = sturm::sturm_sequence(p);
        let target = BigRational::new(1.into(), num_bigint::BigInt::from(1u8) << 40.min(prec as usize));
        for (lo, hi) in ivs {
            let (lo, hi) = sturm::refine_interval(&seq, &lo, &hi, &target)?;
            certified.push(ComplexInterval::real(sturm::to_real_interval(&lo, &hi, prec)));
        }
    }

    if certified.len() == n {
        return Ok(Some(certified));
    }

    // Box subdivision for the remaining roots.
    let bound = sturm::root_bound(p)?;
    let b = Dyadic::from_rational(&bound, 32, true);
    let full = ComplexInterval::new(
        RealInterval::new(b.neg(), b.clone()),
        RealInterval::new(b.neg(), b),
    );
    let mut queue = vec![full];
    let mut depth_guard = 0usize;
    let max_nodes = 200_000usize;
    let mut nodes = 0usize;
    while let Some(boxx) = queue.pop() {
        nodes += 1;
        if nodes > max_nodes {
            return Ok(None);
        }
        if certified.len() == n {
            break;
        }
        // Value test: discard when 0 is excluded.
        let val = eval_box(&coeffs, &boxx, prec);
        if !val.contains_zero() {
            continue;
        }
        // Skip boxes already strictly inside a certified box.
        if certified.iter().any(|c| c.contains_box(&boxx)) {
            continue;
        }
        // Newton certificate.
        if let Some(refined) = newton_certify(&coeffs, &dcoeffs, &boxx, prec) {
            let refined = newton_polish(&coeffs, &dcoeffs, refined, prec, 64);
            // Deduplicate against previously certified roots.
            let mut duplicate = false;
            for known in certified.iter_mut() {
                if known.intersects(&refined) {
                    let kk = newton_polish(&coeffs, &dcoeffs, known.clone(), prec, 16);
                    let rr = newton_polish(&coeffs, &dcoeffs, refined.clone(), prec, 16);
                    if kk.intersects(&rr) {
                        *known = kk;
                        duplicate = true;
                        break;
                    } else {
                        *known = kk;
                    }
                }
            }
            if !duplicate {
                certified.push(refined);
            }
            continue;
        }
        // Too coarse: split with an overlap margin.
        depth_guard += 1;
        if depth_guard > 60_000 {
            return Ok(None);
        }
        queue.extend(split_overlapping(&boxx));
    }
    if certified.len() == n {
        // Isolating boxes must be pairwise disjoint by construction.
        for i in 0..certified.len() {
            for j in i + 1..certified.len() {
                if certified[i].intersects(&certified[j]) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(certified))
    } else {
        Ok(None)
    }
}

fn eval_box(coeffs: &[ComplexInterval], z: &ComplexInterval, prec: u32) -> ComplexInterval {
    let mut acc = ComplexInterval::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c).round_out(prec);
    }
    acc
}

/// Interval Newton step: N = m − p(m)/p'(B); contraction into the interior
/// certifies a unique root in B.
fn newton_certify(
    coeffs: &[ComplexInterval],
    dcoeffs: &[ComplexInterval],
    b: &ComplexInterval,
    prec: u32,
) -> Option<ComplexInterval> {
    let dval = eval_box(dcoeffs, b, prec);
    if dval.norm_sq().contains_zero() {
        return None;
    }
    let m = midpoint_box(b);
    let fm = eval_box(coeffs, &m, prec);
    let step = fm.div(&dval, prec);
    let newt = m.sub(&step);
    if b.strictly_contains(&newt) {
        Some(intersect(&newt, b))
    } else {
        None
    }
}

fn newton_polish(
    coeffs: &[ComplexInterval],
    dcoeffs: &[ComplexInterval],
    mut b: ComplexInterval,
    prec: u32,
    rounds: usize,
) -> ComplexInterval {
    for _ in 0..rounds {
        let dval = eval_box(dcoeffs, &b, prec);
        if dval.norm_sq().contains_zero() {
            break;
        }
        let m = midpoint_box(&b);
        let fm = eval_box(coeffs, &m, prec);
        let newt = m.sub(&fm.div(&dval, prec));
        if !newt.intersects(&b) {
            break;
        }
        let next = intersect(&newt, &b);
        if next.max_width() >= b.max_width() {
            break;
        }
        b = next;
    }
    b
}

fn midpoint_box(b: &ComplexInterval) -> ComplexInterval {
    ComplexInterval::new(
        RealInterval::point(b.re.mid()),
        RealInterval::point(b.im.mid()),
    )
}

fn intersect(a: &ComplexInterval, b: &ComplexInterval) -> ComplexInterval {
    let re = RealInterval::new(
        a.re.lo.clone().max(b.re.lo.clone()),
        a.re.hi.clone().min(b.re.hi.clone()),
    );
    let im = RealInterval::new(
        a.im.lo.clone().max(b.im.lo.clone()),
        a.im.hi.clone().min(b.im.hi.clone()),
    );
    ComplexInterval::new(re, im)
}

fn split_overlapping(b: &ComplexInterval) -> Vec<ComplexInterval> {
    let margin = |iv: &RealInterval| {
        let w = iv.width().mul_pow2(-4); // 1/16 overlap margin
        let mid = iv.mid();
        (
            RealInterval::new(iv.lo.clone(), mid.add(&w)),
            RealInterval::new(mid.sub(&w), iv.hi.clone()),
        )
    };
    let (rl, rh) = margin(&b.re);
    let (il, ih) = margin(&b.im);
    vec![
        ComplexInterval::new(rl.clone(), il.clone()),
        ComplexInterval::new(rl, ih.clone()),
        ComplexInterval::new(rh.clone(), il),
        ComplexInterval::new(rh, ih),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn isolates_fifth_roots_of_unity_minus_rational() {
        // x⁵ − 1: exact probes would take the rational root; here we call
        // the numeric isolator directly on the full polynomial.
        let t = FieldTower::rational();
        let p = UniPoly::from_rational_coeffs(&t, &[q(-1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 1)]);
        let boxes = isolate_all(&p).unwrap();
        assert_eq!(boxes.len(), 5);
        for i in 0..5 {
            for j in i + 1..5 {
                assert!(!boxes[i].intersects(&boxes[j]));
            }
        }
        // exactly one real root
        let real = boxes.iter().filter(|b| b.im.contains_zero()).count();
        assert_eq!(real, 1);
    }

    #[test]
    fn isolates_clustered_real_pair() {
        // (x−1)(x−1.0001)(x²+1) scaled to integers: roots 1, 10001/10000, ±i
        let t = FieldTower::rational();
        let a = UniPoly::from_rational_coeffs(&t, &[q(-1, 1), q(1, 1)]);
        let b = UniPoly::from_rational_coeffs(&t, &[q(-10001, 10000), q(1, 1)]);
        let c = UniPoly::from_rational_coeffs(&t, &[q(1, 1), q(0, 1), q(1, 1)]);
        let p = a.mul(&b).mul(&c);
        let boxes = isolate_all(&p).unwrap();
        assert_eq!(boxes.len(), 4);
        let reals = boxes.iter().filter(|b| b.im.sign() == Some(0)).count();
        assert_eq!(reals, 2);
    }

    #[test]
    fn complex_coefficients_over_imaginary_tower() {
        // (x − I√3)(x − 2) over Q(√-3): force numeric path by calling isolate_all.
        let tw = FieldTower::quadratic(q(-3, 1)).unwrap();
        let s = FieldElement::sqrt_gen(&tw, 0);
        let p = UniPoly::new(&tw, vec![s.neg(), FieldElement::one(&tw)]).mul(&UniPoly::new(
            &tw,
            vec![FieldElement::from_int(&tw, -2), FieldElement::one(&tw)],
        ));
        let boxes = isolate_all(&p).unwrap();
        assert_eq!(boxes.len(), 2);
        // one of them encloses I√3 ≈ 1.732i
        let target = s.to_interval(100).unwrap();
        assert!(boxes.iter().any(|b| b.intersects(&target)));
    }
}
