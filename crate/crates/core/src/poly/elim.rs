//! Elimination theory over towers: exact multivariate division, gcd,
//! resultants by fraction-free subresultant remainder sequences, and
//! square-free decomposition.

use crate::poly::{MultiPoly, PolyError, Var};
use num_rational::BigRational;
use num_traits::One;

/// Exact division; errors when the divisor does not divide evenly.
pub fn div_exact(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, PolyError> {
    assert!(!b.is_zero(), "division by zero polynomial");
    let (mut r, b) = MultiPoly::unify(a, b)?;
    let tower = r.tower().clone();
    let (eb, cb) = match b.leading() {
        Some((e, c)) => (*e, c.clone()),
        None => unreachable!(),
    };
    let cb_inv = cb.inv().expect("nonzero leading coefficient");
    let mut q = MultiPoly::zero(&tower);
    while let Some((er, cr)) = r.leading() {
        let (er, cr) = (*er, cr.clone());
        if er.x < eb.x || er.y < eb.y || er.z < eb.z {
            return Err(PolyError::NotDivisible);
        }
        let e = crate::poly::Exp::new(er.x - eb.x, er.y - eb.y, er.z - eb.z);
        let c = cr.mul(&cb_inv);
        let t = MultiPoly::monomial(c, e).embed(&tower)?;
        q = q.add(&t);
        r = r.sub(&t.mul(&b));
    }
    Ok(q)
}

/// Pseudo-remainder of a by b w.r.t. v: lc(b)^(da-db+1) · a ≡ prem (mod b).
fn prem(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let da = a.deg_in(v).expect("prem: a is zero") as i64;
    let db = b.deg_in(v).expect("prem: b is zero") as i64;
    assert!(da >= db);
    let lc = b.leading_coeff_in(v);
    let mut r = a.clone();
    let mut steps = 0i64;
    while let Some(dr) = r.deg_in(v) {
        let dr = dr as i64;
        if dr < db {
            break;
        }
        let rl = r.leading_coeff_in(v);
        let shift = MultiPoly::monomial(
            crate::field::FieldElement::one(r.tower()),
            crate::poly::Exp::new(0, 0, 0).set(v, (dr - db) as u16),
        );
        r = r.mul(&lc).sub(&rl.mul(&shift).mul(b));
        steps += 1;
    }
    // Pad so the identity holds with exponent da-db+1 exactly.
    let pad = da - db + 1 - steps;
    debug_assert!(pad >= 0);
    let mut out = r;
    for _ in 0..pad {
        out = out.mul(&lc);
    }
    out
}

/// Content of a (w.r.t. v) and its primitive part: gcd of v-coefficients.
fn content_and_primitive(a: &MultiPoly, v: Var) -> (MultiPoly, MultiPoly) {
    let coeffs = a.coeffs_in(v);
    let mut c = MultiPoly::zero(a.tower());
    for co in &coeffs {
        if !co.is_zero() {
            c = gcd(&c, co);
        }
        if c.is_constant() && !c.is_zero() {
            break;
        }
    }
    if c.is_zero() {
        return (MultiPoly::zero(a.tower()), MultiPoly::zero(a.tower()));
    }
    let pp = div_exact(a, &c).expect("content divides");
    (c, pp)
}

fn highest_var(a: &MultiPoly) -> Option<Var> {
    for v in [Var::Z, Var::Y, Var::X] {
        if a.depends_on(v) {
            return Some(v);
        }
    }
    None
}

/// Multivariate gcd, normalized so the graded-lex leading coefficient is 1.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic_graded_lex();
    }
    if b.is_zero() {
        return a.monic_graded_lex();
    }
    let (a, b) = MultiPoly::unify(a, b).expect("incompatible towers in gcd");
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.tower());
    }
    // Pick a main variable present in both when possible.
    let va = highest_var(&a);
    let vb = highest_var(&b);
    let v = match (va, vb) {
        (Some(x), Some(y)) if x == y => x,
        (Some(x), Some(_)) => {
            // Use a variable occurring in both if any; otherwise the gcd
            // reduces to contents.
            let both: Vec<Var> = [Var::X, Var::Y, Var::Z]
                .into_iter()
                .filter(|&u| a.depends_on(u) && b.depends_on(u))
                .collect();
            match both.first() {
                Some(&u) => u,
                None => {
                    // gcd(f(x..), g(y..)) = gcd of their full contents
                    let (ca, _) = content_and_primitive(&a, x);
                    return gcd(&ca, &b);
                }
            }
        }
        _ => unreachable!("constants handled above"),
    };
    if !a.depends_on(v) {
        let (cb, _) = content_and_primitive(&b, v);
        return gcd(&a, &cb);
    }
    if !b.depends_on(v) {
        let (ca, _) = content_and_primitive(&a, v);
        return gcd(&ca, &b);
    }
    let (ca, mut pa) = content_and_primitive(&a, v);
    let (cb, mut pb) = content_and_primitive(&b, v);
    let cc = gcd(&ca, &cb);
    if pa.deg_in(v) < pb.deg_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    // Primitive PRS; clear rational content each step to tame growth.
    loop {
        if pb.is_zero() {
            break;
        }
        let r = prem(&pa, &pb, v);
        pa = pb;
        pb = if r.is_zero() {
            r
        } else {
            let (_, pp) = content_and_primitive(&r, v);
            let (_, pp) = pp.rational_content_split();
            pp
        };
    }
    let (_, g) = content_and_primitive(&pa, v);
    cc.mul(&g).monic_graded_lex()
}

/// Classic resultant Res_v(A, B) = lc(A)^deg(B) · ∏ B(roots of A), computed
/// by Cohen's subresultant algorithm (fraction-free, exact divisions only).
fn resultant_classic(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let (a, b) = MultiPoly::unify(a, b).expect("incompatible towers in resultant");
    let tower = a.tower().clone();
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(&tower);
    }
    let da = a.deg_in(v).unwrap_or(0) as i64;
    let db = b.deg_in(v).unwrap_or(0) as i64;
    if da == 0 && db == 0 {
        return MultiPoly::one(&tower);
    }
    if da == 0 {
        return a.pow(db as u32);
    }
    if db == 0 {
        return b.pow(da as u32);
    }
    let (mut big, mut small, mut sign_flip) = if da >= db {
        (a, b, false)
    } else {
        (b, a, (da * db) % 2 == 1)
    };
    // Rational content extraction keeps the PRS over near-integral coords.
    let (cbig, pbig) = big.rational_content_split();
    let (csmall, psmall) = small.rational_content_split();
    big = pbig;
    small = psmall;
    let dbig = big.deg_in(v).unwrap() as i64;
    let dsmall = small.deg_in(v).unwrap() as i64;
    let mut content_factor = pow_rat(&cbig, dsmall as u32) * pow_rat(&csmall, dbig as u32);
    if sign_flip {
        content_factor = -content_factor;
    }

    let mut g = MultiPoly::one(&tower);
    let mut h = MultiPoly::one(&tower);
    let mut s = 1i32;
    let mut aa = big;
    let mut bb = small;
    loop {
        let d_a = aa.deg_in(v).unwrap() as i64;
        let d_b = bb.deg_in(v).unwrap() as i64;
        let delta = d_a - d_b;
        if d_a % 2 == 1 && d_b % 2 == 1 {
            s = -s;
        }
        let r = prem(&aa, &bb, v);
        aa = bb;
        // divide r by g·h^delta exactly
        let mut denom = g.clone();
        for _ in 0..delta {
            denom = denom.mul(&h);
        }
        bb = if r.is_zero() {
            r
        } else {
            div_exact(&r, &denom).expect("subresultant division")
        };
        g = aa.leading_coeff_in(v);
        if delta > 0 {
            // h = g^delta / h^(delta-1)
            let mut num = g.clone();
            for _ in 1..delta {
                num = num.mul(&g);
            }
            let mut den = MultiPoly::one(&tower);
            for _ in 1..delta {
                den = den.mul(&h);
            }
            h = div_exact(&num, &den).expect("h update division");
        }
        if bb.is_zero() {
            // positive-degree gcd: resultant vanishes
            if aa.deg_in(v).unwrap_or(0) > 0 {
                return MultiPoly::zero(&tower);
            }
            break;
        }
        if bb.deg_in(v).unwrap_or(0) == 0 {
            // final correction: h' = lc(B)^degA / h^(degA - 1)
            let d_a = aa.deg_in(v).unwrap() as i64;
            let lcb = bb.clone();
            let mut num = MultiPoly::one(&tower);
            for _ in 0..d_a {
                num = num.mul(&lcb);
            }
            let mut den = MultiPoly::one(&tower);
            for _ in 1..d_a {
                den = den.mul(&h);
            }
            h = div_exact(&num, &den).expect("final resultant division");
            break;
        }
    }
    let mut out = h.mul_rational(&content_factor);
    if s < 0 {
        out = out.neg();
    }
    out
}

fn pow_rat(r: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..n {
        acc *= r;
    }
    acc
}

/// Resultant in the convention Res(p, q) = lc(q)^deg(p) · ∏ p(roots of q).
pub fn resultant(p: &MultiPoly, q: &MultiPoly, v: Var) -> MultiPoly {
    resultant_classic(q, p, v)
}

/// Discriminant of p in v: (-1)^(n(n-1)/2) Res(p, ∂p/∂v) / lc_v(p).
pub fn discriminant(p: &MultiPoly, v: Var) -> MultiPoly {
    let n = p.deg_in(v).expect("discriminant of zero polynomial") as u64;
    assert!(n >= 1, "discriminant needs positive degree");
    let dp = p.partial_derivative(v);
    if dp.is_zero() {
        return MultiPoly::zero(p.tower());
    }
    let res = resultant_classic(p, &dp, v);
    let lc = p.leading_coeff_in(v);
    let q = div_exact(&res, &lc).expect("lc divides resultant of p and p'");
    if (n * (n - 1) / 2) % 2 == 1 {
        q.neg()
    } else {
        q
    }
}

/// p with all repeated factors reduced to multiplicity one.
pub fn square_free_part(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() || p.is_constant() {
        return p.clone();
    }
    let mut g = MultiPoly::zero(p.tower());
    for v in [Var::X, Var::Y, Var::Z] {
        if p.depends_on(v) {
            g = gcd(&g, &p.partial_derivative(v));
        }
    }
    let g = gcd(&g, p);
    if g.is_constant() {
        return p.clone();
    }
    div_exact(p, &g).expect("gcd divides")
}

/// Square-free decomposition p = unit · ∏ out[i].1^out[i].0 with the
/// factors monic in graded-lex and pairwise coprime.
pub fn squarefree_decomposition(p: &MultiPoly) -> Vec<(usize, MultiPoly)> {
    if p.is_zero() || p.is_constant() {
        return vec![];
    }
    let b = square_free_part(p).monic_graded_lex();
    let c = div_exact(&p.monic_graded_lex(), &b).expect("sfp divides");
    if c.is_constant() {
        return vec![(1, b)];
    }
    let sub = squarefree_decomposition(&c);
    let mut prod = MultiPoly::one(p.tower());
    for (_, f) in &sub {
        prod = prod.mul(f);
    }
    let m1 = div_exact(&b, &prod).expect("higher factors divide sfp");
    let mut out = Vec::new();
    if m1.degree().unwrap_or(0) > 0 {
        out.push((1, m1.monic_graded_lex()));
    }
    for (m, f) in sub {
        out.push((m + 1, f));
    }
    out
}

/// gcd of a whole family.
pub fn bivariate_gcd_all(polys: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero(polys[0].tower());
    for p in polys {
        g = gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldElement, FieldTower};
    use crate::poly::Exp;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qp(terms: &[(i64, u16, u16)]) -> MultiPoly {
        let t = FieldTower::rational();
        MultiPoly::from_terms(
            &t,
            terms
                .iter()
                .map(|&(n, x, y)| (Exp::new(x, y, 0), FieldElement::from_rational(&t, q(n, 1))))
                .collect(),
        )
    }

    /// Naive Sylvester determinant via Bareiss, for cross-checking.
    fn sylvester_resultant(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
        let t = a.tower().clone();
        let da = a.deg_in(v).unwrap() as usize;
        let db = b.deg_in(v).unwrap() as usize;
        let n = da + db;
        let ac = a.coeffs_in(v);
        let bc = b.coeffs_in(v);
        let mut m = vec![vec![MultiPoly::zero(&t); n]; n];
        for i in 0..db {
            for (j, c) in ac.iter().enumerate() {
                m[i][i + da - j] = c.clone();
            }
        }
        for i in 0..da {
            for (j, c) in bc.iter().enumerate() {
                m[db + i][i + db - j] = c.clone();
            }
        }
        // Bareiss fraction-free elimination.
        let mut sign = 1i32;
        let mut prev = MultiPoly::one(&t);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let piv = (k + 1..n).find(|&r| !m[r][k].is_zero());
                match piv {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return MultiPoly::zero(&t),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = div_exact(&num, &prev).unwrap();
                }
                m[i][k] = MultiPoly::zero(&t);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign < 0 {
            det.neg()
        } else {
            det
        }
    }

    #[test]
    fn resultant_spec_convention() {
        // Res_y(y²−x, y) = −x under Res(p,q) = lc(q)^deg p ∏ p(roots of q)
        let p = qp(&[(1, 0, 2), (-1, 1, 0)]);
        let yv = qp(&[(1, 0, 1)]);
        assert_eq!(resultant(&p, &yv, Var::Y), qp(&[(-1, 1, 0)]));
    }

    #[test]
    fn resultant_of_common_factor_vanishes() {
        let p = qp(&[(1, 2, 0), (-2, 0, 0)]);
        assert!(resultant(&p, &p, Var::X).is_zero());
    }

    #[test]
    fn resultant_matches_sylvester_on_randoms() {
        // Deterministic pseudo-random small bivariate polynomials.
        let mut seed = 0x9e3779b9u64;
        let mut rnd = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for _ in 0..12 {
            let mut aterms = vec![];
            let mut bterms = vec![];
            for xd in 0..3u16 {
                for yd in 0..3u16 {
                    let c = rnd();
                    if c != 0 {
                        aterms.push((c, xd, yd));
                    }
                    let c = rnd();
                    if c != 0 {
                        bterms.push((c, xd, yd));
                    }
                }
            }
            let a = qp(&aterms);
            let b = qp(&bterms);
            if a.deg_in(Var::Y).unwrap_or(0) == 0 || b.deg_in(Var::Y).unwrap_or(0) == 0 {
                continue;
            }
            let fast = resultant_classic(&a, &b, Var::Y);
            let naive = sylvester_resultant(&a, &b, Var::Y);
            assert_eq!(fast, naive, "subresultant vs sylvester");
        }
    }

    #[test]
    fn resultant_multiplicative_in_first_argument() {
        let p = qp(&[(1, 0, 1), (-1, 1, 0)]); // y − x
        let r = qp(&[(1, 0, 1), (1, 2, 0)]); // y + x²
        let s = qp(&[(1, 0, 2), (1, 1, 0), (2, 0, 0)]); // y² + x + 2
        let lhs = resultant(&p.mul(&r), &s, Var::Y);
        let rhs = resultant(&p, &s, Var::Y).mul(&resultant(&r, &s, Var::Y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_examples() {
        // disc_x(x²−2) = 8
        let p = qp(&[(1, 2, 0), (-2, 0, 0)]);
        assert_eq!(discriminant(&p, Var::X), qp(&[(8, 0, 0)]));
        // disc of a double root vanishes
        let d = qp(&[(1, 1, 0), (-1, 0, 0)]);
        assert!(discriminant(&d.mul(&d), Var::X).is_zero());
    }

    #[test]
    fn gcd_recovers_planted_factor() {
        let g = qp(&[(1, 1, 1), (3, 0, 0)]); // xy + 3
        let a = g.mul(&qp(&[(1, 2, 0), (1, 0, 0)]));
        let b = g.mul(&qp(&[(1, 0, 3), (-2, 1, 0)]));
        let got = gcd(&a, &b);
        assert_eq!(got, g.monic_graded_lex());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = qp(&[(1, 0, 1), (-1, 2, 0)]); // y − x²
        let b = qp(&[(1, 0, 1), (1, 0, 0)]); // y + 1
        assert_eq!(gcd(&a, &b), MultiPoly::one(&FieldTower::rational()));
    }

    #[test]
    fn square_free_part_bivariate() {
        let q1 = qp(&[(1, 0, 1), (-1, 0, 0)]); // y−1
        let q2 = qp(&[(1, 1, 0), (1, 0, 1)]); // x+y
        let p = q1.mul(&q1).mul(&q2);
        let sf = square_free_part(&p);
        assert_eq!(sf.monic_graded_lex(), q1.mul(&q2).monic_graded_lex());
        let dec = squarefree_decomposition(&p);
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0].0, 1);
        assert_eq!(dec[1].0, 2);
        assert_eq!(dec[1].1, q1.monic_graded_lex());
    }

    #[test]
    fn div_exact_inverts_mul() {
        let a = qp(&[(2, 2, 1), (-3, 0, 2), (5, 0, 0)]);
        let b = qp(&[(1, 1, 1), (7, 1, 0), (-1, 0, 0)]);
        let p = a.mul(&b);
        assert_eq!(div_exact(&p, &b).unwrap(), a);
        assert!(div_exact(&p.add(&MultiPoly::one(p.tower())), &b).is_err());
    }
}
