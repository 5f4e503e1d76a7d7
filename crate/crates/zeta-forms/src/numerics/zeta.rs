//! High-precision zeta values by Euler-Maclaurin summation with exact
//! Bernoulli numbers and a certified remainder.
//!
//! For integer i >= 2 and cutoffs N, V:
//!
//! ```text
//! zeta(i) = sum_{j<N} j^-i + N^(1-i)/(i-1) + N^-i/2
//!         + sum_{v=1..V} B_{2v}/(2v)! (i)_{2v-1} N^(1-i-2v)  +  R,
//! ```
//!
//! with (i)_m the rising factorial. All terms are exact rationals. The
//! derivatives of x^-i alternate in sign, which makes the correction series
//! enveloping: |R| is at most the magnitude of the first omitted term, and
//! that bound is again an exact rational.

use num_traits::{One, Signed, Zero};

use super::enclosure::Enclosure;
use super::NumericsError;
use crate::arith::{bernoulli_list, int, int_pow, rat_int, rat_pow, Int, Rat};

/// Enclosure of zeta(i) with radius at most `target`.
pub fn zeta_value(i: u32, target: &Rat) -> Result<Enclosure, NumericsError> {
    if i < 2 {
        return Err(NumericsError::ZetaIndexTooSmall { i });
    }
    assert!(target.is_positive(), "target radius must be positive");
    zeta_em(i, 8, target)
}

/// Euler-Maclaurin evaluation with the base cutoff forced to at least
/// `n_floor`; exposed so consistency tests can run distinct cutoffs.
pub(crate) fn zeta_em(i: u32, n_floor: u64, target: &Rat) -> Result<Enclosure, NumericsError> {
    let half_target = target / rat_int(int(2));
    let mut bernoulli = bernoulli_list(8);
    let mut n = n_floor.max(8).max(rat_bits(target) / 4);
    let mut result = None;
    for _ in 0..28 {
        if let Some((corrections, remainder)) = correction_walk(i, n, &mut bernoulli, &half_target)
        {
            result = Some((n, corrections, remainder));
            break;
        }
        n *= 2;
    }
    let (n, corrections, remainder) =
        result.ok_or_else(|| NumericsError::PrecisionUnattainable {
            detail: format!("zeta({i})"),
        })?;

    let mut sum = Rat::zero();
    for j in 1..n {
        sum += Rat::new(Int::one(), int_pow(&int(j as i64), i));
    }
    let n_rat = rat_int(int(n as i64));
    // integral tail + half correction
    sum += Rat::one() / (rat_int(int(i64::from(i) - 1)) * rat_pow(&n_rat, i - 1));
    sum += Rat::new(Int::one(), int(2)) / rat_pow(&n_rat, i);
    sum += corrections;

    let bits = rat_bits(target) + 32;
    Ok(Enclosure::from_rat_endpoints(
        &(&sum - &remainder),
        &(&sum + &remainder),
        bits,
    ))
}

/// Walk the Bernoulli corrections B_{2v}/(2v)! (i)_{2v-1} N^(1-i-2v) for
/// fixed N until the next term drops below `eps`; that term bounds the
/// remainder. Returns None when the walk starts diverging first (N too
/// small). All state advances incrementally.
fn correction_walk(i: u32, n: u64, bernoulli: &mut Vec<Rat>, eps: &Rat) -> Option<(Rat, Rat)> {
    let inv_n2 = Rat::new(Int::one(), int_pow(&int(n as i64), 2));
    // shared factor of term(v): rising(i, 2v-1) / (2v)! * N^(1-i-2v)
    let mut shell = Rat::new(int(i64::from(i)), int(2) * int_pow(&int(n as i64), i + 1));
    let mut corrections = Rat::zero();
    let mut prev_mag: Option<Rat> = None;
    for v in 1..=512u32 {
        crate::arith::bernoulli_extend(bernoulli, 2 * v as usize);
        let term = &bernoulli[2 * v as usize] * &shell;
        let mag = term.abs();
        if mag <= *eps {
            // enveloping series: the remainder after v-1 terms is bounded
            // by term(v), which we omit
            return Some((corrections, mag));
        }
        if let Some(p) = &prev_mag {
            if mag >= *p {
                return None;
            }
        }
        corrections += term;
        prev_mag = Some(mag);
        // advance shell from v to v+1
        let num = int(i64::from(i) + 2 * i64::from(v) - 1) * int(i64::from(i) + 2 * i64::from(v));
        let den = int(2 * i64::from(v) + 1) * int(2 * i64::from(v) + 2);
        shell = shell * Rat::new(num, den) * &inv_n2;
    }
    None
}

/// ceil(log2(1/q)) for 0 < q < 1; the bit budget a radius target demands.
pub(crate) fn rat_bits(q: &Rat) -> u64 {
    let num_bits = q.numer().bits() as i64;
    let den_bits = q.denom().bits() as i64;
    (den_bits - num_bits + 1).max(1) as u64
}

/// 10^-digits as a rational, the usual way callers phrase a target radius.
pub fn pow10_target(digits: u32) -> Rat {
    Rat::new(Int::one(), int_pow(&int(10), digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    /// Certified rational bracket of pi by Machin's formula; alternating
    /// series tails are bounded by their first omitted term.
    fn pi_bounds(terms: u32) -> (Rat, Rat) {
        fn atan_inv_bounds(x: i64, terms: u32) -> (Rat, Rat) {
            let x2 = rat_int(int_pow(&int(x), 2));
            let mut term = rat(1, x);
            let mut sum = Rat::zero();
            for j in 0..terms {
                let contrib = &term / rat_int(int(2 * i64::from(j) + 1));
                if j % 2 == 0 {
                    sum += contrib;
                } else {
                    sum -= contrib;
                }
                term /= &x2;
            }
            let tail = &term / rat_int(int(2 * i64::from(terms) + 1));
            if terms.is_multiple_of(2) {
                (sum.clone(), sum + tail)
            } else {
                (sum.clone() - tail, sum)
            }
        }
        let (a5_lo, a5_hi) = atan_inv_bounds(5, terms);
        let (a239_lo, a239_hi) = atan_inv_bounds(239, terms);
        let sixteen = rat(16, 1);
        let four = rat(4, 1);
        (
            &sixteen * a5_lo - &four * a239_hi,
            &sixteen * a5_hi - &four * a239_lo,
        )
    }

    #[test]
    fn zeta2_contains_pi_squared_over_six() {
        let eps = pow10_target(50);
        let z = zeta_value(2, &eps).unwrap();
        assert!(z.rad_rat() <= eps);
        let (pi_lo, pi_hi) = pi_bounds(60);
        let target_lo = &pi_lo * &pi_lo / rat(6, 1);
        let target_hi = &pi_hi * &pi_hi / rat(6, 1);
        // the pi^2/6 bracket must sit inside the zeta enclosure
        let lo = z.lo().to_rat();
        let hi = z.hi().to_rat();
        assert!(
            lo <= target_lo && target_hi <= hi,
            "pi^2/6 bracket escapes zeta(2) enclosure"
        );
    }

    #[test]
    fn zeta25_matches_partial_sum_with_integral_tail() {
        let z = zeta_value(25, &pow10_target(12)).unwrap();
        // oracle: 10 exact terms plus integral tail bound N^(1-i)/(i-1);
        // both intervals contain the true value, so they must intersect
        let mut partial = Rat::zero();
        for j in 1..=10i64 {
            partial += Rat::new(Int::one(), int_pow(&int(j), 25));
        }
        let tail = Rat::new(Int::one(), int_pow(&int(10), 24) * int(24));
        assert!(
            z.hi().to_rat() >= partial,
            "enclosure below the exact partial sum"
        );
        assert!(
            z.lo().to_rat() <= &partial + &tail,
            "enclosure above partial sum plus tail bound"
        );
        // leading digits 1.0000000298...
        let (dec, _) = z.to_decimal_parts(10);
        assert_eq!(dec, "1.0000000298");
    }

    #[test]
    fn different_cutoffs_overlap() {
        let eps = pow10_target(30);
        let a = zeta_em(3, 8, &eps).unwrap();
        let b = zeta_em(3, 64, &eps).unwrap();
        assert!(a.overlaps(&b));
        let c = zeta_em(7, 16, &pow10_target(45)).unwrap();
        let d = zeta_em(7, 100, &pow10_target(45)).unwrap();
        assert!(c.overlaps(&d));
    }

    #[test]
    fn small_index_rejected() {
        assert!(matches!(
            zeta_value(1, &pow10_target(10)),
            Err(NumericsError::ZetaIndexTooSmall { i: 1 })
        ));
        assert!(matches!(
            zeta_value(0, &pow10_target(10)),
            Err(NumericsError::ZetaIndexTooSmall { .. })
        ));
    }

    #[test]
    fn known_digit_strings() {
        // zeta(3) = 1.2020569031595942853997...; rendering truncates
        let z3 = zeta_value(3, &pow10_target(25)).unwrap();
        let (dec, _) = z3.to_decimal_parts(19);
        assert_eq!(dec, "1.2020569031595942853");
        // zeta(5) = 1.0369277551433699263313...
        let z5 = zeta_value(5, &pow10_target(25)).unwrap();
        let (dec, _) = z5.to_decimal_parts(19);
        assert_eq!(dec, "1.0369277551433699263");
    }
}
