//! Direct summation of the two series and the numeric evaluation pipeline.
//!
//! The nonzero terms of the integer-grid series start at t = n+1 and those
//! of the half-grid series at t = n+1/2, with closed factorial forms
//!
//! ```text
//! c_k = n!^(s-5) (6n+2k+2)! (n+k)!^(s+1) / (2 (2k+1)! (2n+k+1)!^(s+1))
//! c^_k = n!^(s-5) (6n+2k+1)! 2^((n+1)(s+1))
//!        / (2 (2k)! [prod_{j=0..n} (2n+2k+1+2j)]^(s+1))
//! ```
//!
//! both strictly positive. Terms are computed exactly, and partial sums
//! stay exact via pairwise (tree) reduction, so the only approximation in a
//! direct sum is its tail.
//!
//! Division of labor: the rigorous route to r, r^ and 7r - r^ is the exact
//! zeta-basis evaluation (`FormNumerics`); direct summation is the
//! independent empirical route, with a heuristic tail estimate validated by
//! doubling the cutoff. Disagreement between routes is a test failure.

use num_traits::{One, Signed, Zero};

use super::enclosure::{Enclosure, Sign};
use super::zeta::{rat_bits, zeta_value};
use super::NumericsError;
use crate::arith::{binomial, factorial, int, int_pow, lcm_upto, rat, rat_int, rat_pow, Int, Rat};
use crate::linear_forms::{combine, zeta_coefficients, CombinedForm, ZetaLinearForm};
use crate::ratfun::{rn_table, FormSpec, PartialFractionTable};

/// Which shifted grid the summand is sampled on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    /// R(n+1+k): terms of r.
    Integer,
    /// R(n+1/2+k): terms of r^.
    Half,
}

/// The positive summand sequence of one series.
#[derive(Debug, Clone, Copy)]
pub struct SummandSequence {
    pub spec: FormSpec,
    pub grid: Grid,
}

impl SummandSequence {
    pub fn new(spec: FormSpec, grid: Grid) -> Self {
        SummandSequence { spec, grid }
    }

    /// Exact k-th term from the closed factorial form.
    pub fn term(&self, k: u64) -> Rat {
        let n = u64::from(self.spec.n());
        let s = self.spec.s();
        let common = rat_int(int_pow(&factorial(n), s - 5));
        match self.grid {
            Grid::Integer => {
                let num = factorial(6 * n + 2 * k + 2) * int_pow(&factorial(n + k), s + 1);
                let den = int(2) * factorial(2 * k + 1) * int_pow(&factorial(2 * n + k + 1), s + 1);
                common * Rat::new(num, den)
            }
            Grid::Half => {
                let mut odd_prod = Int::one();
                for j in 0..=n {
                    odd_prod *= int((2 * n + 2 * k + 1 + 2 * j) as i64);
                }
                let num = factorial(6 * n + 2 * k + 1) * int_pow(&int(2), (n as u32 + 1) * (s + 1));
                let den = int(2) * factorial(2 * k) * int_pow(&odd_prod, s + 1);
                common * Rat::new(num, den)
            }
        }
    }

    /// Exact ratio term(k+1)/term(k) in closed form.
    pub fn consecutive_ratio(&self, k: u64) -> Rat {
        let n = i64::from(self.spec.n());
        let s = self.spec.s();
        let k = k as i64;
        match self.grid {
            Grid::Integer => {
                // (k+3n+3/2)(k+3n+2) / ((k+1)(k+3/2)) * ((k+n+1)/(k+2n+2))^(s+1)
                let head = rat(2 * (k + 3 * n) + 3, 2) * rat(k + 3 * n + 2, 1)
                    / (rat(k + 1, 1) * rat(2 * k + 3, 2));
                head * rat_pow(&rat(k + n + 1, k + 2 * n + 2), s + 1)
            }
            Grid::Half => {
                let head = rat(2 * k + 6 * n + 3, 1) * rat(2 * k + 6 * n + 2, 1)
                    / (rat(2 * k + 1, 1) * rat(2 * k + 2, 1));
                head * rat_pow(&rat(2 * n + 2 * k + 1, 4 * n + 2 * k + 3), s + 1)
            }
        }
    }
}

/// Exact ratio c_k / c^_k between the two grids:
/// (6n+2k+2)/(2k+1) * (2^(-2(n+1)) C(4n+2k+2, 2n+k+1)/C(2n+2k, n+k))^(s+1).
pub fn half_shift_ratio(spec: &FormSpec, k: u64) -> Rat {
    let n = u64::from(spec.n());
    let head = rat((6 * n + 2 * k + 2) as i64, (2 * k + 1) as i64);
    let central = Rat::new(
        binomial(4 * n + 2 * k + 2, (2 * n + k + 1) as i64),
        int_pow(&int(2), 2 * (spec.n() + 1)) * binomial(2 * n + 2 * k, (n + k) as i64),
    );
    head * rat_pow(&central, spec.s() + 1)
}

/// Exact-by-levels pairwise summation; keeps reduction work logarithmic in
/// the number of terms instead of re-reducing a giant denominator per add.
#[derive(Default)]
struct TreeSum {
    levels: Vec<Option<Rat>>,
}

impl TreeSum {
    fn push(&mut self, mut v: Rat) {
        let mut level = 0;
        loop {
            if level == self.levels.len() {
                self.levels.push(Some(v));
                return;
            }
            match self.levels[level].take() {
                None => {
                    self.levels[level] = Some(v);
                    return;
                }
                Some(existing) => {
                    v += existing;
                    level += 1;
                }
            }
        }
    }

    fn total(&self) -> Rat {
        self.levels
            .iter()
            .flatten()
            .fold(Rat::zero(), |acc, v| acc + v)
    }
}

/// Result of a direct summation.
#[derive(Debug, Clone)]
pub struct SeriesSum {
    pub enclosure: Enclosure,
    pub cutoff: u64,
}

/// Empirical tail estimate after K summed terms with next term t_K:
/// t_K (K + 3n + 2) / ((s-7) n + (s-1)/2). A deliberate overestimate of the
/// integral tail at desk scale; the certified route does not rely on it.
fn tail_estimate(spec: &FormSpec, k: u64, term_k: &Rat) -> Rat {
    let n = i64::from(spec.n());
    let s = i64::from(spec.s());
    term_k * rat(k as i64 + 3 * n + 2, 1) / (rat((s - 7) * n, 1) + rat(s - 1, 2))
}

/// Sum the series to the requested radius: exact partial sums with the
/// empirical tail, doubling the cutoff from 50n until the estimate drops
/// below `target` and the mass added by the last doubling stays within the
/// previous estimate.
pub fn sum_series(
    seq: &SummandSequence,
    target: &Rat,
    max_cutoff: u64,
) -> Result<SeriesSum, NumericsError> {
    assert!(target.is_positive());
    let bits = rat_bits(target) + 32;
    let mut tree = TreeSum::default();
    let mut term = seq.term(0);
    let mut k = 0u64;
    let mut goal = (50 * u64::from(seq.spec.n())).max(50).min(max_cutoff);
    let mut prev_tail: Option<Rat> = None;
    let mut prev_total: Option<Rat> = None;
    loop {
        while k < goal {
            debug_assert!(term.is_positive(), "series terms must stay positive");
            tree.push(term.clone());
            term *= seq.consecutive_ratio(k);
            k += 1;
        }
        let tail = tail_estimate(&seq.spec, k, &term);
        let total = tree.total();
        let stable = match (&prev_tail, &prev_total) {
            (Some(pt), Some(ptot)) => &total - ptot <= *pt,
            _ => false,
        };
        if tail <= *target && (stable || prev_tail.is_none()) {
            // positive terms: the truth lies in [total, total + tail]
            let enclosure = Enclosure::from_rat_endpoints(&total, &(&total + &tail), bits);
            return Ok(SeriesSum {
                enclosure,
                cutoff: k,
            });
        }
        if k >= max_cutoff {
            let enclosure = Enclosure::from_rat_endpoints(&total, &(&total + &tail), bits);
            return Err(NumericsError::CutoffExhausted {
                cutoff: k,
                attained: Box::new(enclosure),
            });
        }
        prev_tail = Some(tail);
        prev_total = Some(total);
        goal = (goal * 2).min(max_cutoff);
    }
}

/// Everything needed to evaluate one form numerically: the exact table, its
/// zeta-basis coefficients, and the combined form.
pub struct FormNumerics {
    spec: FormSpec,
    table: PartialFractionTable,
    form: ZetaLinearForm,
    combined: CombinedForm,
}

impl FormNumerics {
    pub fn new(spec: FormSpec) -> Result<Self, NumericsError> {
        let table = rn_table(&spec)?;
        let form = zeta_coefficients(&spec, &table)?;
        let combined = combine(&form);
        Ok(FormNumerics {
            spec,
            table,
            form,
            combined,
        })
    }

    pub fn spec(&self) -> &FormSpec {
        &self.spec
    }

    pub fn table(&self) -> &PartialFractionTable {
        &self.table
    }

    pub fn form(&self) -> &ZetaLinearForm {
        &self.form
    }

    pub fn combined(&self) -> &CombinedForm {
        &self.combined
    }

    /// Rigorous r via the zeta basis: a_0 + sum a_i zeta(i).
    pub fn r_basis(&self, target: &Rat) -> Result<Enclosure, NumericsError> {
        let terms: Vec<(u32, Rat)> = self
            .form
            .coeffs()
            .iter()
            .map(|(&i, a)| (i, a.clone()))
            .collect();
        basis_eval(self.form.a0(), &terms, target)
    }

    /// Rigorous r^ via the zeta basis: a^_0 + sum a_i (2^i - 1) zeta(i).
    pub fn rhat_basis(&self, target: &Rat) -> Result<Enclosure, NumericsError> {
        let terms: Vec<(u32, Rat)> = self
            .form
            .coeffs()
            .iter()
            .map(|(&i, a)| (i, a * rat_int(int_pow(&int(2), i) - Int::one())))
            .collect();
        basis_eval(self.form.a0_hat(), &terms, target)
    }

    /// Rigorous 7r - r^ via the combined form; the zeta(3) slot is absent
    /// by construction, so no cancellation of zeta(3) happens numerically.
    pub fn delta_basis(&self, target: &Rat) -> Result<Enclosure, NumericsError> {
        let terms: Vec<(u32, Rat)> = self
            .combined
            .coeffs()
            .iter()
            .map(|(&i, c)| (i, c.clone()))
            .collect();
        basis_eval(self.combined.c0(), &terms, target)
    }

    pub fn r_direct(&self, target: &Rat, max_cutoff: u64) -> Result<SeriesSum, NumericsError> {
        sum_series(
            &SummandSequence::new(self.spec, Grid::Integer),
            target,
            max_cutoff,
        )
    }

    pub fn rhat_direct(&self, target: &Rat, max_cutoff: u64) -> Result<SeriesSum, NumericsError> {
        sum_series(
            &SummandSequence::new(self.spec, Grid::Half),
            target,
            max_cutoff,
        )
    }

    /// 7 * (direct r) - (direct r^): the empirical route to the combination.
    pub fn delta_direct(&self, target: &Rat, max_cutoff: u64) -> Result<Enclosure, NumericsError> {
        let half = target / rat_int(int(16));
        let r = self.r_direct(&half, max_cutoff)?;
        let rh = self.rhat_direct(&half, max_cutoff)?;
        let bits = rat_bits(target) + 32;
        Ok(r.enclosure
            .mul_rat(&rat(7, 1), bits)
            .sub(&rh.enclosure, bits))
    }

    /// Normalized decay u = (1/n) log(d^s * (7r - r^)); defined only when
    /// the combination is certified positive.
    pub fn normalized_decay(&self, target: &Rat) -> Result<Enclosure, NumericsError> {
        let delta = self.delta_with_certified_sign(target)?;
        match delta.sign() {
            Some(Sign::Positive) => {}
            Some(_) => {
                return Err(NumericsError::DeltaNotPositive {
                    n: self.spec.n(),
                    s: self.spec.s(),
                    hi: delta.hi().to_decimal(30),
                })
            }
            None => unreachable!("sign was certified"),
        }
        let bits = rat_bits(target) + 64;
        let d = lcm_upto(self.spec.n()).expect("n >= 1");
        let scaled = delta.mul(&Enclosure::exact_int(int_pow(&d, self.spec.s())), bits);
        let logged = scaled.log(bits)?;
        Ok(logged.mul_rat(&rat(1, i64::from(self.spec.n())), bits))
    }

    /// Tighten the basis evaluation until the sign of 7r - r^ is certified
    /// and the relative accuracy suffices for a stable log.
    ///
    /// The combination can sit hundreds of orders of magnitude below the
    /// requested radius (it shrinks like g(x_0)^n), so the absolute target
    /// is rescaled first using the direct route: its midpoint is an exact
    /// partial-sum difference and carries the true scale cheaply.
    pub fn delta_with_certified_sign(&self, target: &Rat) -> Result<Enclosure, NumericsError> {
        let mut eps = target.clone();
        if let Ok(direct) = self.delta_direct(&crate::numerics::pow10_target(10), 1 << 18) {
            let mid = direct.mid_rat().abs();
            if mid > direct.rad_rat() * rat_int(int(4)) && !mid.is_zero() {
                let hinted = mid / rat_int(int(1) << 48);
                if hinted < eps {
                    eps = hinted;
                }
            }
        }
        for _ in 0..8 {
            let delta = self.delta_basis(&eps)?;
            if delta.sign().is_some() {
                // relative accuracy gate for the downstream log
                let tight = delta.rad_rat() * rat_int(int(1) << 20) <= delta.mid_rat().abs();
                if tight || delta.sign() == Some(Sign::Zero) {
                    return Ok(delta);
                }
            }
            eps /= rat_int(int(1) << 96);
        }
        Err(NumericsError::DeltaSignIndeterminate {
            n: self.spec.n(),
            s: self.spec.s(),
        })
    }
}

/// a_0 + sum coeff_i zeta(i), with per-term zeta targets budgeted so the
/// result radius stays at or below `target`.
fn basis_eval(a0: &Rat, terms: &[(u32, Rat)], target: &Rat) -> Result<Enclosure, NumericsError> {
    let count = terms.len().max(1);
    let mut coeff_bits = 0u64;
    for (_, c) in terms {
        coeff_bits = coeff_bits.max(c.numer().bits().saturating_sub(c.denom().bits()) + 16);
    }
    let bits = rat_bits(target) + coeff_bits + 64;
    let mut acc = Enclosure::from_rat(a0, bits);
    let per_term = target / rat_int(int(2 * count as i64));
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        let zeta_target = &per_term / (c.abs() + Rat::one());
        let z = zeta_value(*i, &zeta_target)?;
        acc = acc.add(&z.mul_rat(c, bits), bits);
    }
    Ok(acc)
}

/// One-call rigorous enclosure of 7r - r^ for (n, s), cross-checked against
/// the direct route; the routes disagreeing is an error, not a widened
/// interval.
pub fn delta(n: u32, s: u32, target: &Rat, max_cutoff: u64) -> Result<Enclosure, NumericsError> {
    let spec = FormSpec::new(n, s)?;
    let fx = FormNumerics::new(spec)?;
    let basis = fx.delta_basis(target)?;
    let direct = fx.delta_direct(target, max_cutoff)?;
    if !basis.overlaps(&direct) {
        return Err(NumericsError::CrossRouteMismatch {
            what: format!("7r - r^ at n = {n}, s = {s}"),
        });
    }
    Ok(basis)
}

/// One-call normalized decay u_n; see [`FormNumerics::normalized_decay`].
pub fn normalized_decay(n: u32, s: u32, target: &Rat) -> Result<Enclosure, NumericsError> {
    let spec = FormSpec::new(n, s)?;
    FormNumerics::new(spec)?.normalized_decay(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::zeta::pow10_target;
    use crate::ratfun::build_rn;

    fn spec(n: u32, s: u32) -> FormSpec {
        FormSpec::new(n, s).unwrap()
    }

    #[test]
    fn first_integer_term_is_the_summand_at_n_plus_one() {
        let seq = SummandSequence::new(spec(1, 7), Grid::Integer);
        assert_eq!(seq.term(0), rat(35, 2916));
    }

    #[test]
    fn terms_match_summand_evaluation_on_both_grids() {
        for (n, s) in [(1u32, 7u32), (2, 7), (3, 9), (1, 25)] {
            let sp = spec(n, s);
            let f = build_rn(&sp);
            let ci = SummandSequence::new(sp, Grid::Integer);
            let ch = SummandSequence::new(sp, Grid::Half);
            for k in 0..12u64 {
                let t_int = rat(i64::from(n) + 1 + k as i64, 1);
                let t_half = rat(2 * (i64::from(n) + k as i64) + 1, 2);
                assert_eq!(
                    ci.term(k),
                    f.evaluate(&t_int).unwrap(),
                    "int n={n} s={s} k={k}"
                );
                assert_eq!(
                    ch.term(k),
                    f.evaluate(&t_half).unwrap(),
                    "half n={n} s={s} k={k}"
                );
            }
        }
    }

    #[test]
    fn ratio_recurrences_match_term_quotients() {
        for grid in [Grid::Integer, Grid::Half] {
            for (n, s) in [(2u32, 7u32), (3, 9)] {
                let seq = SummandSequence::new(spec(n, s), grid);
                for k in 0..20u64 {
                    assert_eq!(
                        seq.consecutive_ratio(k),
                        seq.term(k + 1) / seq.term(k),
                        "{grid:?} n={n} s={s} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn half_shift_ratio_matches_term_quotient() {
        for (n, s) in [(1u32, 7u32), (2, 7), (2, 25)] {
            let sp = spec(n, s);
            let ci = SummandSequence::new(sp, Grid::Integer);
            let ch = SummandSequence::new(sp, Grid::Half);
            for k in 0..15u64 {
                assert_eq!(
                    half_shift_ratio(&sp, k),
                    ci.term(k) / ch.term(k),
                    "n={n} s={s} k={k}"
                );
            }
        }
    }

    #[test]
    fn tree_sum_equals_sequential_sum() {
        let mut tree = TreeSum::default();
        let mut flat = Rat::zero();
        for k in 1..=137i64 {
            let v = rat(1, k * k + 3);
            tree.push(v.clone());
            flat += v;
        }
        assert_eq!(tree.total(), flat);
    }

    #[test]
    fn direct_sum_is_positive_and_bounded() {
        let sum = sum_series(
            &SummandSequence::new(spec(1, 7), Grid::Integer),
            &pow10_target(12),
            1 << 20,
        )
        .unwrap();
        assert!(sum.enclosure.lo().is_positive());
        assert!(sum.enclosure.rad_rat() <= pow10_target(12));
        // r_1 = 0.01279...; sanity window
        assert!(
            sum.enclosure.contains_rat(&rat(1279, 100_000))
                || sum.enclosure.mid_rat() > rat(127, 10_000)
        );
    }

    #[test]
    fn unattainable_cutoff_reports_best_effort() {
        let err = sum_series(
            &SummandSequence::new(spec(1, 7), Grid::Integer),
            &pow10_target(30),
            64,
        )
        .unwrap_err();
        match err {
            NumericsError::CutoffExhausted { cutoff, attained } => {
                assert_eq!(cutoff, 64);
                assert!(attained.lo().is_positive());
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn basis_and_direct_routes_agree_at_moderate_precision() {
        for (n, s) in [(1u32, 7u32), (2, 7)] {
            let fx = FormNumerics::new(spec(n, s)).unwrap();
            let eps = pow10_target(20);
            let r_b = fx.r_basis(&eps).unwrap();
            let r_d = fx.r_direct(&eps, 1 << 20).unwrap().enclosure;
            assert!(r_b.overlaps(&r_d), "r routes disagree at n={n} s={s}");
            let h_b = fx.rhat_basis(&eps).unwrap();
            let h_d = fx.rhat_direct(&eps, 1 << 20).unwrap().enclosure;
            assert!(h_b.overlaps(&h_d), "r^ routes disagree at n={n} s={s}");
            let d_b = fx.delta_basis(&eps).unwrap();
            let d_d = fx.delta_direct(&eps, 1 << 20).unwrap();
            assert!(
                d_b.overlaps(&d_d),
                "combination routes disagree at n={n} s={s}"
            );
        }
    }

    #[test]
    fn delta_sign_small_cases() {
        // at s = 7 the combination is already positive for small n
        let fx = FormNumerics::new(spec(1, 7)).unwrap();
        let d = fx.delta_with_certified_sign(&pow10_target(12)).unwrap();
        assert_eq!(d.sign(), Some(Sign::Positive));
        // at s = 25 it is firmly negative at desk scale
        let fx = FormNumerics::new(spec(1, 25)).unwrap();
        let d = fx.delta_with_certified_sign(&pow10_target(12)).unwrap();
        assert_eq!(d.sign(), Some(Sign::Negative));
    }

    #[test]
    fn zeta3_slot_does_not_enter_delta() {
        // shifting the zeta(3) value by +1 changes nothing: the combined
        // form has no zeta(3) coefficient at all
        let fx = FormNumerics::new(spec(2, 7)).unwrap();
        assert!(fx.combined().coeff(3).is_none());
        let eps = pow10_target(15);
        let base = fx.delta_basis(&eps).unwrap();
        // recompute with a fake zeta(3) bump: identical because the slot is
        // absent from the evaluation
        let terms: Vec<(u32, Rat)> = fx
            .combined()
            .coeffs()
            .iter()
            .map(|(&i, c)| (i, c.clone()))
            .collect();
        assert!(terms.iter().all(|(i, _)| *i != 3));
        let again = basis_eval(fx.combined().c0(), &terms, &eps).unwrap();
        assert_eq!(base.mid_rat(), again.mid_rat());
    }

    #[test]
    fn normalized_decay_positive_case_and_negative_rejection() {
        // s = 7, n = 2: delta > 0, u computable; doubling the precision
        // must give an overlapping, tighter enclosure
        let fx = FormNumerics::new(spec(2, 7)).unwrap();
        let u = fx.normalized_decay(&pow10_target(12)).unwrap();
        assert!(u.rad_rat() < rat(1, 1000));
        let u2 = fx.normalized_decay(&pow10_target(24)).unwrap();
        assert!(u.overlaps(&u2));
        assert!(u2.rad_rat() <= u.rad_rat());
        // s = 25, n = 1: delta < 0 certified; explicit domain error
        let fx = FormNumerics::new(spec(1, 25)).unwrap();
        match fx.normalized_decay(&pow10_target(12)) {
            Err(NumericsError::DeltaNotPositive { n: 1, s: 25, .. }) => {}
            other => panic!("expected DeltaNotPositive, got {other:?}"),
        }
    }

    #[test]
    fn one_call_delta_cross_checks() {
        let d = delta(1, 7, &pow10_target(15), 1 << 20).unwrap();
        assert_eq!(d.sign(), Some(Sign::Positive));
        // 7 r_1 - r^_1 = 0.0223...
        assert!(d.mid_rat() > rat(2, 100) && d.mid_rat() < rat(3, 100));
    }
}
