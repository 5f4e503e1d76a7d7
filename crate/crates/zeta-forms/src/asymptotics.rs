//! Certified growth data of the forms as n grows: the saddle index x_0,
//! the critical point x_1, log g(x_0), and the decay exponents.
//!
//! With q = (s+1)/2, the n-th-root growth constant of both series (and of
//! their combination) is g(x_0), where
//!
//! ```text
//! g(x) = 2^6 (x+3)^6 (x+1)^(s+1) / (x+2)^(2(s+1))
//! ```
//!
//! and x_0 is the unique positive zero of
//! p(x) = x (x+2)^q - (x+3) (x+1)^q, equivalently the unique positive
//! solution of f(x) = 1 for f(x) = ((x+3)/x) ((x+1)/(x+2))^q. The scaled
//! combination decays iff s + log g(x_0) < 0 (with lcm(1..n) ~ e^n), or
//! s log 3 + log g(x_0) < 0 under the weaker d_n < 3^n bound.
//!
//! x_0 is isolated by plain bisection with exact rational sign evaluation:
//! the bracket [0, 1] is valid because p(0) = -3 and f(1) = 4 (2/3)^q < 1
//! forces p(1) > 0, and x_0 can be extremely small (3.7e-4 at s = 25), so
//! exactness near zero is what matters.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{binomial, int, int_pow, rat, rat_int, rat_pow, Int, Rat};
use crate::numerics::{Enclosure, NumericsError, Sign};

#[derive(Debug, Error)]
pub enum AsymptoticsError {
    #[error("need odd s >= 7, got {s}")]
    InvalidS { s: u32 },
    #[error("the critical-point quadratic degenerates at s = {s} (q = 3)")]
    DegenerateQuadratic { s: u32 },
    #[error("bisection bracket invalid for s = {s}")]
    BracketFailure { s: u32 },
    #[error("sign of the decay exponent at s = {s} not certified at this precision")]
    IndeterminateSign { s: u32 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn check_s(s: u32) -> Result<u32, AsymptoticsError> {
    if s < 7 || s.is_multiple_of(2) {
        return Err(AsymptoticsError::InvalidS { s });
    }
    Ok(s.div_ceil(2))
}

/// Exact expanded coefficients (ascending) of
/// p(x) = x (x+2)^q - (x+3) (x+1)^q.
pub fn root_polynomial(s: u32) -> Result<Vec<Int>, AsymptoticsError> {
    let q = check_s(s)?;
    let qq = u64::from(q);
    // x (x+2)^q: coefficient of x^v is C(q, v-1) 2^(q-v+1)
    // (x+3)(x+1)^q: coefficient of x^v is C(q, v-1) + 3 C(q, v)
    let mut coeffs = Vec::with_capacity(q as usize + 2);
    for v in 0..=i64::from(q) + 1 {
        let first = if v >= 1 {
            binomial(qq, v - 1) * int_pow(&int(2), q + 1 - v as u32)
        } else {
            Int::zero()
        };
        let second = binomial(qq, v - 1) + int(3) * binomial(qq, v);
        coeffs.push(first - second);
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Exact Horner evaluation.
pub fn eval_poly(coeffs: &[Int], x: &Rat) -> Rat {
    coeffs
        .iter()
        .rev()
        .fold(Rat::zero(), |acc, c| acc * x + rat_int(c.clone()))
}

/// f(x) = ((x+3)/x) ((x+1)/(x+2))^q, exact at rational x > 0.
pub fn f_value(x: &Rat, s: u32) -> Result<Rat, AsymptoticsError> {
    let q = check_s(s)?;
    assert!(x.is_positive());
    let head = (x + rat(3, 1)) / x;
    Ok(head * rat_pow(&((x + Rat::one()) / (x + rat(2, 1))), q))
}

/// The quadratic (q-3) x^2 + 3(q-3) x - 6 whose positive root x_1 is the
/// minimum of f; exact coefficients [c0, c1, c2].
pub fn critical_quadratic(s: u32) -> Result<[Int; 3], AsymptoticsError> {
    let q = check_s(s)?;
    if q == 3 {
        return Err(AsymptoticsError::DegenerateQuadratic { s });
    }
    let qm3 = int(i64::from(q) - 3);
    Ok([int(-6), int(3) * &qm3, qm3])
}

/// Enclose the unique positive zero of p with width at most `width`.
/// Every bisection step certifies p(lo) < 0 < p(hi) by exact sign.
pub fn find_x0(s: u32, width: &Rat) -> Result<Enclosure, AsymptoticsError> {
    check_s(s)?;
    assert!(width.is_positive());
    let p = root_polynomial(s)?;
    let mut lo = Rat::zero();
    let mut hi = Rat::one();
    if !eval_poly(&p, &lo).is_negative() || !eval_poly(&p, &hi).is_positive() {
        return Err(AsymptoticsError::BracketFailure { s });
    }
    let mut steps = 0u64;
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / rat(2, 1);
        let v = eval_poly(&p, &mid);
        if v.is_zero() {
            lo = mid.clone();
            hi = mid;
            break;
        } else if v.is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    // endpoints are dyadic rationals (denominators 2^steps), so this is exact
    Ok(Enclosure::from_rat_endpoints(&lo, &hi, steps + 8))
}

/// x_1 = (-3 + sqrt(9 + 24/(q-3))) / 2, the positive root of the critical
/// quadratic, as an enclosure certified by exact sign evaluation of the
/// quadratic at the enclosure endpoints.
pub fn critical_x1(s: u32, bits: u64) -> Result<Enclosure, AsymptoticsError> {
    let q = check_s(s)?;
    if q == 3 {
        return Err(AsymptoticsError::DegenerateQuadratic { s });
    }
    let disc = rat(9, 1) + rat(24, i64::from(q) - 3);
    let root = Enclosure::from_rat(&disc, bits + 8).nth_root(2, bits + 8)?;
    let x1 = root
        .add_rat(&rat(-3, 1), bits + 8)
        .mul_rat(&rat(1, 2), bits);
    // certify: quadratic changes sign across the enclosure
    let qd = critical_quadratic(s)?;
    let at_lo = eval_poly(&qd, &x1.lo().to_rat());
    let at_hi = eval_poly(&qd, &x1.hi().to_rat());
    if !(at_lo.is_negative() && at_hi.is_positive()) {
        return Err(AsymptoticsError::BracketFailure { s });
    }
    Ok(x1)
}

/// log g(x) = 6 log 2 + 6 log(x+3) + (s+1) log(x+1) - 2(s+1) log(x+2),
/// outward-rounded over the whole input enclosure.
pub fn g_log(x: &Enclosure, s: u32, bits: u64) -> Result<Enclosure, AsymptoticsError> {
    check_s(s)?;
    if !x.lo().is_positive() {
        return Err(AsymptoticsError::Numerics(NumericsError::LogOfNonPositive));
    }
    let sp1 = rat(i64::from(s) + 1, 1);
    let log2 = Enclosure::exact_i64(2).log(bits)?;
    let t3 = x.add_rat(&rat(3, 1), bits).log(bits)?;
    let t1 = x.add_rat(&rat(1, 1), bits).log(bits)?;
    let t2 = x.add_rat(&rat(2, 1), bits).log(bits)?;
    let mut acc = log2.mul_rat(&rat(6, 1), bits);
    acc = acc.add(&t3.mul_rat(&rat(6, 1), bits), bits);
    acc = acc.add(&t1.mul_rat(&sp1, bits), bits);
    acc = acc.sub(&t2.mul_rat(&(rat(2, 1) * &sp1), bits), bits);
    Ok(acc)
}

/// The complete certified growth data for one s.
#[derive(Debug, Clone)]
pub struct GrowthProfile {
    pub s: u32,
    pub q: u32,
    pub x0: Enclosure,
    pub x1: Enclosure,
    pub g_log_x0: Enclosure,
    /// s + log g(x_0); negative iff the scaled combination decays under
    /// the prime-number-theorem growth of lcm(1..n).
    pub decay_exponent: Enclosure,
    /// s log 3 + log g(x_0); the variant under the elementary d_n < 3^n.
    pub decay_exponent_hanson: Enclosure,
}

/// Compute the profile with roughly `bits` of certified precision.
pub fn decay_exponents(s: u32, bits: u64) -> Result<GrowthProfile, AsymptoticsError> {
    let q = check_s(s)?;
    // |d log g / dx| <= 2s + 4 on (0, 1); split the budget accordingly
    let width = Rat::new(Int::one(), int(2 * i64::from(s) + 4) * (Int::one() << bits));
    let x0 = find_x0(s, &width)?;
    let x1 = critical_x1(s, bits)?;
    let g_log_x0 = g_log(&x0, s, bits + 16)?;
    let decay_exponent = g_log_x0.add_rat(&rat(i64::from(s), 1), bits);
    let log3 = Enclosure::exact_i64(3).log(bits + 16)?;
    let decay_exponent_hanson = g_log_x0.add(&log3.mul_rat(&rat(i64::from(s), 1), bits + 16), bits);
    Ok(GrowthProfile {
        s,
        q,
        x0,
        x1,
        g_log_x0,
        decay_exponent,
        decay_exponent_hanson,
    })
}

/// Profiles for every odd s in [s_lo, s_hi] plus the smallest s whose
/// PNT-route decay exponent is certified negative.
pub fn scan_decay(
    s_lo: u32,
    s_hi: u32,
    bits: u64,
) -> Result<(Vec<GrowthProfile>, Option<u32>), AsymptoticsError> {
    check_s(s_lo)?;
    let mut profiles = Vec::new();
    let mut first_negative = None;
    let mut s = s_lo;
    while s <= s_hi {
        let p = decay_exponents(s, bits)?;
        match p.decay_exponent.sign() {
            Some(Sign::Negative) => {
                if first_negative.is_none() {
                    first_negative = Some(s);
                }
            }
            Some(_) => {}
            None => return Err(AsymptoticsError::IndeterminateSign { s }),
        }
        profiles.push(p);
        s += 2;
    }
    Ok((profiles, first_negative))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_fixed_points() {
        for s in [7u32, 9, 25, 33] {
            let p = root_polynomial(s).unwrap();
            // p(0) = -3 for every q
            assert_eq!(p[0], int(-3));
            // leading term: x^(q+1) cancels, top coefficient is q-3 at x^q
            let q = s.div_ceil(2);
            assert_eq!(p.len() as u32 - 1, q);
            assert_eq!(p[q as usize], int(i64::from(q) - 3));
        }
        // s = 7 (q = 4): p(1) = 3^4 - 4 * 2^4 = 17
        let p7 = root_polynomial(7).unwrap();
        assert_eq!(eval_poly(&p7, &Rat::one()), rat(17, 1));
        assert!(root_polynomial(8).is_err());
        assert!(root_polynomial(5).is_err());
    }

    #[test]
    fn f_at_one_is_below_one() {
        // f(1) = 4 (2/3)^q < 1 justifies the right end of the bracket
        for s in [7u32, 25] {
            let q = s.div_ceil(2);
            assert_eq!(
                f_value(&Rat::one(), s).unwrap(),
                rat(4, 1) * rat_pow(&rat(2, 3), q)
            );
            assert!(f_value(&Rat::one(), s).unwrap() < Rat::one());
        }
    }

    #[test]
    fn x0_bracket_certified_and_f_crosses_one() {
        for s in [7u32, 9, 25] {
            let x0 = find_x0(s, &rat(1, 1 << 40)).unwrap();
            assert!(x0.lo().is_positive());
            assert!(x0.hi().to_rat() < Rat::one());
            let p = root_polynomial(s).unwrap();
            assert!(eval_poly(&p, &x0.lo().to_rat()).is_negative());
            assert!(eval_poly(&p, &x0.hi().to_rat()).is_positive());
            // f(x0 enclosure) contains 1: f(lo) > 1 > f(hi)
            assert!(f_value(&x0.lo().to_rat(), s).unwrap() > Rat::one());
            assert!(f_value(&x0.hi().to_rat(), s).unwrap() < Rat::one());
        }
    }

    #[test]
    fn x0_reference_value_at_s25() {
        let x0 = find_x0(25, &rat(1, 1i64 << 45)).unwrap();
        let reference = rat(36713, 100_000_000);
        assert!((x0.mid_rat() - reference).abs() < rat(5, 100_000_000));
    }

    #[test]
    fn x1_values_from_quadratic_formula() {
        // s = 7 (q = 4): x^2 + 3x - 6 = 0, x1 = (-3 + sqrt(33))/2 = 1.372281...
        let x1 = critical_x1(7, 80).unwrap();
        assert!((x1.mid_rat() - rat(1372281323, 1_000_000_000)).abs() < rat(1, 1_000_000_000));
        // s = 25 (q = 13): 10x^2 + 30x - 6 = 0, x1 = (-15 + sqrt(285))/10
        //                = 0.1881943016...
        let x1 = critical_x1(25, 80).unwrap();
        assert!((x1.mid_rat() - rat(1881943016, 10_000_000_000)).abs() < rat(1, 1_000_000_000));
        // f' changes sign across x1: quadratic negative left, positive right
        let qd = critical_quadratic(25).unwrap();
        assert!(eval_poly(&qd, &(x1.lo().to_rat() - rat(1, 100))).is_negative());
        assert!(eval_poly(&qd, &(x1.hi().to_rat() + rat(1, 100))).is_positive());
    }

    #[test]
    fn degenerate_quadratic_rejected() {
        assert!(matches!(
            critical_x1(5, 60),
            Err(AsymptoticsError::InvalidS { s: 5 })
        ));
    }

    #[test]
    fn g_log_matches_saddle_expression_at_x0() {
        // at the root, log g(x0) equals the saddle form
        // (2x+6)log(2x+6) + (s+1)(x+1)log(x+1)
        //   - 2x log(2x) - (s+1)(x+2)log(x+2)
        // because f(x0) = 1
        let bits = 120u64;
        for s in (7u32..=27).step_by(2) {
            let x0 = find_x0(s, &rat(1, 1i64 << 50)).unwrap();
            let direct = g_log(&x0, s, bits).unwrap();
            let sp1 = rat(i64::from(s) + 1, 1);
            let two_x = x0.mul_rat(&rat(2, 1), bits);
            let t_a = two_x.add_rat(&rat(6, 1), bits);
            let t_b = x0.add_rat(&rat(1, 1), bits);
            let t_c = x0.add_rat(&rat(2, 1), bits);
            let saddle = t_a
                .log(bits)
                .unwrap()
                .mul(&t_a, bits)
                .add(
                    &t_b.log(bits).unwrap().mul(&t_b, bits).mul_rat(&sp1, bits),
                    bits,
                )
                .sub(&two_x.log(bits).unwrap().mul(&two_x, bits), bits)
                .sub(
                    &t_c.log(bits).unwrap().mul(&t_c, bits).mul_rat(&sp1, bits),
                    bits,
                );
            assert!(direct.overlaps(&saddle), "s = {s}");
        }
    }

    #[test]
    fn g_log_nested_inputs_give_nested_outputs() {
        let wide = Enclosure::from_rat_endpoints(&rat(1, 4), &rat(1, 2), 80);
        let narrow = Enclosure::from_rat_endpoints(&rat(5, 16), &rat(7, 16), 80);
        let gw = g_log(&wide, 7, 80).unwrap();
        let gn = g_log(&narrow, 7, 80).unwrap();
        assert!(gw.contains(&gn));
    }

    #[test]
    fn decay_profile_s25_matches_references() {
        let p = decay_exponents(25, 64).unwrap();
        // log g(x0) = -25.292363...
        let reference = rat(-25292363, 1_000_000);
        assert!((p.g_log_x0.mid_rat() - reference).abs() < rat(1, 1_000_000));
        assert_eq!(p.decay_exponent.sign(), Some(Sign::Negative));
        assert_eq!(p.decay_exponent_hanson.sign(), Some(Sign::Positive));
        assert_eq!(p.q, 13);
    }

    #[test]
    fn scan_finds_twenty_five() {
        let (profiles, first) = scan_decay(7, 27, 48).unwrap();
        assert_eq!(first, Some(25));
        // the exponent decreases strictly in s over the scan
        for pair in profiles.windows(2) {
            assert!(
                pair[1]
                    .decay_exponent
                    .hi()
                    .cmp_value(&pair[0].decay_exponent.lo())
                    == std::cmp::Ordering::Less,
                "decay exponent not strictly decreasing between s = {} and {}",
                pair[0].s,
                pair[1].s
            );
        }
    }

    #[test]
    fn hanson_route_certifies_at_33() {
        let p = decay_exponents(33, 64).unwrap();
        assert_eq!(p.decay_exponent_hanson.sign(), Some(Sign::Negative));
    }
}
