//! Exact zeta-basis representations of the two series and their
//! zeta(3)-free combination.
//!
//! From the partial-fraction table a_{i,k} of the summand:
//!
//! * the integer-grid sum r is  sum_{odd i >= 3} a_i zeta(i) + a_0 with
//!   a_i = sum_k a_{i,k} and
//!   a_0 = - sum_{i,k} a_{i,k} sum_{l=1..k} l^-i;
//! * the half-grid sum r^ is  sum a_i (2^i - 1) zeta(i) + a^_0, where a^_0
//!   collects two boundary corrections split at m = floor((n-1)/2):
//!   the half-grid series may start at -m because the summand vanishes at
//!   -1/2, -3/2, ..., -n + 1/2;
//! * since 2^3 - 1 = 7, the combination 7 r - r^ has no zeta(3) term:
//!   its coefficients are c_i = (8 - 2^i) a_i for odd i >= 5 and
//!   c_0 = 7 a_0 - a^_0.
//!
//! Even-index rows sum to zero (and row 1 sums to zero) by the well-poised
//! symmetry; this module asserts both exactly and drops those slots from
//! the types so that a nonzero even slot is unrepresentable downstream.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{int, int_pow, is_integral, lcm_upto, rat, rat_int, rat_pow, Int, Rat};
use crate::ratfun::{FormSpec, PartialFractionTable};

#[derive(Debug, Error, PartialEq)]
pub enum LinearFormError {
    #[error("table shape (order {order}, n_max {n_max}) does not match spec (s {s}, n {n})")]
    SpecMismatch {
        order: u32,
        n_max: u32,
        s: u32,
        n: u32,
    },
    #[error("row 1 sums to {sum}, expected exactly 0")]
    RowOneSumNonzero { sum: Rat },
    #[error("even row {i} sums to {sum}, expected exactly 0")]
    EvenRowSumNonzero { i: u32, sum: Rat },
}

/// Exact coefficients of r = sum a_i zeta(i) + a_0 and
/// r^ = sum a_i (2^i - 1) zeta(i) + a^_0, odd i in 3..=s.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaLinearForm {
    spec: FormSpec,
    coeffs: BTreeMap<u32, Rat>,
    a0: Rat,
    a0_hat: Rat,
}

impl ZetaLinearForm {
    pub fn spec(&self) -> &FormSpec {
        &self.spec
    }

    /// Shared zeta coefficient a_i for odd i in 3..=s.
    pub fn coeff(&self, i: u32) -> Option<&Rat> {
        self.coeffs.get(&i)
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Rat> {
        &self.coeffs
    }

    pub fn a0(&self) -> &Rat {
        &self.a0
    }

    pub fn a0_hat(&self) -> &Rat {
        &self.a0_hat
    }
}

/// sum_{l=1..k} l^-i, empty sum = 0.
pub fn power_sum(k: u32, i: u32) -> Rat {
    let mut acc = Rat::zero();
    for l in 1..=i64::from(k) {
        acc += Rat::new(Int::one(), int_pow(&int(l), i));
    }
    acc
}

/// sum_{l=0..j} (l + 1/2)^-i, empty (j < 0) = 0.
pub fn half_sum_low(j: i64, i: u32) -> Rat {
    let mut acc = Rat::zero();
    for l in 0..=j {
        acc += rat_pow(&rat(2, 2 * l + 1), i);
    }
    acc
}

/// sum_{l=1..j} (l - 1/2)^-i, empty (j < 1) = 0.
pub fn half_sum_high(j: i64, i: u32) -> Rat {
    let mut acc = Rat::zero();
    for l in 1..=j {
        acc += rat_pow(&rat(2, 2 * l - 1), i);
    }
    acc
}

/// Assemble the exact zeta-basis coefficients from a full table.
///
/// Fails if the table shape does not match the spec or if the structural
/// zero sums (row 1, even rows) do not vanish exactly.
pub fn zeta_coefficients(
    spec: &FormSpec,
    table: &PartialFractionTable,
) -> Result<ZetaLinearForm, LinearFormError> {
    let (n, s) = (spec.n(), spec.s());
    if table.order() != s || table.n_max() != n {
        return Err(LinearFormError::SpecMismatch {
            order: table.order(),
            n_max: table.n_max(),
            s,
            n,
        });
    }
    let row1 = table.row_sum(1);
    if !row1.is_zero() {
        return Err(LinearFormError::RowOneSumNonzero { sum: row1 });
    }
    let mut coeffs = BTreeMap::new();
    for i in 2..=s {
        let sum = table.row_sum(i);
        if i % 2 == 0 {
            if !sum.is_zero() {
                return Err(LinearFormError::EvenRowSumNonzero { i, sum });
            }
        } else {
            coeffs.insert(i, sum);
        }
    }

    // a_0 = - sum_{i,k} a_{i,k} H_k^(i)
    let mut a0 = Rat::zero();
    for i in 1..=s {
        let mut h = Rat::zero();
        for k in 0..=n {
            if k > 0 {
                h += Rat::new(Int::one(), int_pow(&int(i64::from(k)), i));
            }
            let c = table.coeff(i, k).expect("in range");
            if !c.is_zero() {
                a0 -= c * &h;
            }
        }
    }

    // a^_0: two correction sums split at m = floor((n-1)/2)
    let m = spec.half_split();
    let mut a0_hat = Rat::zero();
    for i in 1..=s {
        let sign = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
        for k in 0..=m {
            let c = table.coeff(i, k).expect("in range");
            if !c.is_zero() {
                a0_hat += &sign * c * half_sum_low(i64::from(m) - i64::from(k), i);
            }
        }
        for k in (m + 1)..=n {
            let c = table.coeff(i, k).expect("in range");
            if !c.is_zero() {
                a0_hat -= c * half_sum_high(i64::from(k) - i64::from(m) - 1, i);
            }
        }
    }

    Ok(ZetaLinearForm {
        spec: *spec,
        coeffs,
        a0,
        a0_hat,
    })
}

/// The zeta(3) coefficient of 7 r - r^, computed explicitly:
/// 7 a_3 - (2^3 - 1) a_3. Always exactly zero; kept as a checkable value.
pub fn zeta3_residual(form: &ZetaLinearForm) -> Rat {
    let a3 = form.coeff(3).cloned().unwrap_or_else(Rat::zero);
    rat(7, 1) * &a3 - rat(7, 1) * &a3
}

/// The combination 7 r - r^ = sum_{odd i >= 5} c_i zeta(i) + c_0; the
/// zeta(3) slot is absent by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedForm {
    spec: FormSpec,
    coeffs: BTreeMap<u32, Rat>,
    c0: Rat,
}

impl CombinedForm {
    pub fn spec(&self) -> &FormSpec {
        &self.spec
    }

    /// c_i for odd i in 5..=s.
    pub fn coeff(&self, i: u32) -> Option<&Rat> {
        self.coeffs.get(&i)
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Rat> {
        &self.coeffs
    }

    pub fn c0(&self) -> &Rat {
        &self.c0
    }
}

pub fn combine(form: &ZetaLinearForm) -> CombinedForm {
    let mut coeffs = BTreeMap::new();
    for (&i, a) in form.coeffs() {
        if i == 3 {
            continue; // 7 - (2^3 - 1) = 0
        }
        let factor = rat_int(int(8) - int_pow(&int(2), i));
        coeffs.insert(i, factor * a);
    }
    let c0 = rat(7, 1) * form.a0() - form.a0_hat();
    CombinedForm {
        spec: *form.spec(),
        coeffs,
        c0,
    }
}

/// One denominator-clearing verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionCheck {
    pub label: String,
    pub ok: bool,
}

/// Exact divisibility report for a form: d^(s-i) a_i, d^s a_0, d^s a^_0,
/// plus the three inner-sum inclusions the boundary corrections rely on:
/// d^i H_k^(i), d^i sum (l+1/2)^-i, d_(n-1)^i sum (l-1/2)^-i.
#[derive(Debug, Clone)]
pub struct FormIntegralityReport {
    pub checks: Vec<InclusionCheck>,
}

impl FormIntegralityReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&InclusionCheck> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

pub fn form_integrality_report(form: &ZetaLinearForm) -> FormIntegralityReport {
    let spec = form.spec();
    let (n, s) = (spec.n(), spec.s());
    let d = lcm_upto(n).expect("n >= 1");
    let mut checks = Vec::new();

    for (&i, a) in form.coeffs() {
        let v = rat_int(int_pow(&d, s - i)) * a;
        checks.push(InclusionCheck {
            label: format!("d^(s-{i}) a_{i}"),
            ok: is_integral(&v),
        });
    }
    let ds = rat_int(int_pow(&d, s));
    checks.push(InclusionCheck {
        label: "d^s a_0".into(),
        ok: is_integral(&(&ds * form.a0())),
    });
    checks.push(InclusionCheck {
        label: "d^s a^_0".into(),
        ok: is_integral(&(&ds * form.a0_hat())),
    });

    let m = spec.half_split();
    let d_prev = if n >= 2 {
        lcm_upto(n - 1).expect("n-1 >= 1")
    } else {
        Int::one()
    };
    let mut inner_checked = 0usize;
    let mut inner_failed = 0usize;
    for i in 1..=s {
        let di = rat_int(int_pow(&d, i));
        let d1 = rat_int(int_pow(&d_prev, i));
        for k in 0..=n {
            inner_checked += 1;
            if !is_integral(&(&di * power_sum(k, i))) {
                inner_failed += 1;
                checks.push(InclusionCheck {
                    label: format!("d^{i} H_{k}^({i})"),
                    ok: false,
                });
            }
        }
        for k in 0..=m {
            inner_checked += 1;
            if !is_integral(&(&di * half_sum_low(i64::from(m) - i64::from(k), i))) {
                inner_failed += 1;
                checks.push(InclusionCheck {
                    label: format!("d^{i} half-low (m-k={})", m - k),
                    ok: false,
                });
            }
        }
        for k in (m + 1)..=n {
            inner_checked += 1;
            if !is_integral(&(&d1 * half_sum_high(i64::from(k) - i64::from(m) - 1, i))) {
                inner_failed += 1;
                checks.push(InclusionCheck {
                    label: format!("d_(n-1)^{i} half-high (k-m-1={})", k - m - 1),
                    ok: false,
                });
            }
        }
    }
    checks.push(InclusionCheck {
        label: format!("inner-sum inclusions ({inner_checked} checked)"),
        ok: inner_failed == 0,
    });
    FormIntegralityReport { checks }
}

/// lcm of the denominators of every coefficient (a_i, a_0, a^_0): the true
/// clearing denominator. It always divides d^s; the report carries both.
pub fn denominator_lcm(form: &ZetaLinearForm) -> Int {
    use num_integer::Integer;
    let mut acc = Int::one();
    for a in form.coeffs().values() {
        acc = acc.lcm(a.denom());
    }
    acc = acc.lcm(form.a0().denom());
    acc.lcm(form.a0_hat().denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::rn_table;

    fn form(n: u32, s: u32) -> ZetaLinearForm {
        let spec = FormSpec::new(n, s).unwrap();
        zeta_coefficients(&spec, &rn_table(&spec).unwrap()).unwrap()
    }

    #[test]
    fn inner_sums_small_values() {
        assert_eq!(power_sum(0, 3), rat(0, 1));
        assert_eq!(power_sum(2, 2), rat(5, 4));
        // d_3^2 (1 + 1/4 + 1/9) = 36 * 49/36 = 49
        let v = rat_int(int_pow(&int(6), 2)) * power_sum(3, 2);
        assert_eq!(v, rat(49, 1));
        assert_eq!(half_sum_low(-1, 4), rat(0, 1));
        assert_eq!(half_sum_low(0, 1), rat(2, 1));
        assert_eq!(half_sum_low(1, 1), rat(2, 1) + rat(2, 3));
        assert_eq!(half_sum_high(0, 5), rat(0, 1));
        assert_eq!(half_sum_high(2, 1), rat(2, 1) + rat(2, 3));
    }

    #[test]
    fn even_slots_are_gone_and_odd_slots_populated() {
        let f = form(2, 7);
        let odd: Vec<u32> = f.coeffs().keys().copied().collect();
        assert_eq!(odd, vec![3, 5, 7]);
        for i in [2, 4, 6] {
            assert!(f.coeff(i).is_none());
        }
    }

    #[test]
    fn integrality_on_small_grid() {
        for (n, s) in [(1u32, 7u32), (2, 7), (3, 7), (4, 7), (1, 25), (2, 25)] {
            let rep = form_integrality_report(&form(n, s));
            assert!(rep.all_ok(), "n={n} s={s}: {:?}", rep.failures());
        }
    }

    #[test]
    fn combined_form_drops_zeta3_and_scales_rest() {
        let f = form(2, 7);
        assert!(zeta3_residual(&f).is_zero());
        let c = combine(&f);
        assert!(c.coeff(3).is_none());
        assert_eq!(c.coeff(5).unwrap(), &(rat(-24, 1) * f.coeff(5).unwrap()));
        assert_eq!(c.coeff(7).unwrap(), &(rat(-120, 1) * f.coeff(7).unwrap()));
        assert_eq!(c.c0(), &(rat(7, 1) * f.a0() - f.a0_hat()));
    }

    #[test]
    fn true_denominator_divides_ds() {
        for (n, s) in [(2u32, 7u32), (3, 7), (4, 9)] {
            let f = form(n, s);
            let lam = denominator_lcm(&f);
            let ds = int_pow(&lcm_upto(n).unwrap(), s);
            assert!(
                (&ds % &lam).is_zero(),
                "n={n} s={s}: {lam} does not divide d^s"
            );
        }
    }

    #[test]
    fn shape_mismatch_rejected() {
        let spec7 = FormSpec::new(2, 7).unwrap();
        let spec9 = FormSpec::new(2, 9).unwrap();
        let table = rn_table(&spec7).unwrap();
        assert!(matches!(
            zeta_coefficients(&spec9, &table),
            Err(LinearFormError::SpecMismatch { .. })
        ));
    }

    #[test]
    fn tampered_table_fails_structural_zero_sums() {
        let spec = FormSpec::new(2, 7).unwrap();
        let mut table = rn_table(&spec).unwrap();
        table.perturb(2, 0, &rat(1, 3)).unwrap();
        assert!(matches!(
            zeta_coefficients(&spec, &table),
            Err(LinearFormError::EvenRowSumNonzero { i: 2, .. })
        ));
        let mut table2 = rn_table(&spec).unwrap();
        table2.perturb(1, 1, &rat(1, 2)).unwrap();
        assert!(matches!(
            zeta_coefficients(&spec, &table2),
            Err(LinearFormError::RowOneSumNonzero { .. })
        ));
    }
}
