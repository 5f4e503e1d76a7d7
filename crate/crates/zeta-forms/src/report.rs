//! Machine-readable verification reports and the run orchestrator behind
//! the CLI.
//!
//! A run executes one mode over a configured (s, n) grid and emits a
//! deterministic [`Report`]: same config, same bytes. Every numeric payload
//! carries either an exact value or a decimal-plus-radius pair; verdicts
//! are `pass`, `fail` or `indeterminate`, and an indeterminate is never
//! counted as a pass.
//!
//! Integrality is reported through computable scalings only: the checks
//! cover d^s c_0 and d^(s-i) c_i for the combined form (with d = lcm(1..n))
//! and the sign and magnitude of d^s (7r - r^). No uncomputable global
//! denominator for the zeta values themselves appears anywhere in the
//! schema; only the d-power scalings above are claimed or checked.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{int, int_pow, lcm_upto, rat, rat_int, Rat};
use crate::asymptotics::{decay_exponents, scan_decay};
use crate::linear_forms::{
    combine, denominator_lcm, form_integrality_report, zeta3_residual, zeta_coefficients,
};
use crate::numerics::sampling::{containment_failures, exact_point_roundtrip, OpClass};
use crate::numerics::zeta::pow10_target;
use crate::numerics::{Enclosure, FormNumerics, Grid, NumericsError, Sign, SummandSequence};
use crate::ratfun::{
    brick_table, build_brick, build_rn, decompose, integrality_report, rn_table, BrickKind,
    FormSpec,
};
use num_traits::{Signed, Zero};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("s must be odd and at least 7, got {0}")]
    InvalidS(u32),
    #[error("need 1 <= n_min <= n_max, got {0}..{1}")]
    InvalidRange(u32, u32),
    #[error("precision must be at least 10 decimal digits, got {0}")]
    PrecisionTooLow(u32),
    #[error("scan bounds must be odd, at least 7, and ordered, got {0}..{1}")]
    InvalidScan(u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    VerifyExact,
    DecayTable,
    Asymptotics,
    ZetaTable,
    Selftest,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub s: u32,
    pub n_min: u32,
    pub n_max: u32,
    /// Target precision in decimal digits (radius 10^-precision).
    pub precision: u32,
    pub format: OutputFormat,
    pub scan_s: Option<(u32, u32)>,
    pub seed: u64,
    pub max_cutoff: u64,
    /// Self-test hook: perturb a_{i,k} by 1/d^s before verifying.
    pub inject_fault: Option<(u32, u32)>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::All,
            s: 25,
            n_min: 1,
            n_max: 12,
            precision: 40,
            format: OutputFormat::Human,
            scan_s: None,
            seed: 1,
            max_cutoff: 1 << 20,
            inject_fault: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.s < 7 || self.s.is_multiple_of(2) {
            return Err(ConfigError::InvalidS(self.s));
        }
        if self.n_min < 1 || self.n_min > self.n_max {
            return Err(ConfigError::InvalidRange(self.n_min, self.n_max));
        }
        if self.precision < 10 {
            return Err(ConfigError::PrecisionTooLow(self.precision));
        }
        if let Some((lo, hi)) = self.scan_s {
            if lo < 7 || lo % 2 == 0 || hi % 2 == 0 || lo > hi {
                return Err(ConfigError::InvalidScan(lo, hi));
            }
        }
        Ok(())
    }

    fn target(&self) -> Rat {
        pow10_target(self.precision)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

/// Exact or enclosure payload, rendered as decimal strings only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Exact { exact: String },
    Enclosure { decimal: String, radius: String },
}

impl Payload {
    pub fn exact(v: impl ToString) -> Self {
        Payload::Exact {
            exact: v.to_string(),
        }
    }

    pub fn from_enclosure(e: &Enclosure, digits: u32) -> Self {
        let (decimal, radius) = e.to_decimal_parts(digits);
        Payload::Enclosure { decimal, radius }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub subject: String,
    pub verdict: Verdict,
    pub payload: Payload,
}

impl Check {
    fn new(id: &str, subject: String, verdict: Verdict, payload: Payload) -> Self {
        Check {
            id: id.to_string(),
            subject,
            verdict,
            payload,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    fn from_checks(config: RunConfig, checks: Vec<Check>) -> Self {
        let summary = Summary {
            pass: checks.iter().filter(|c| c.verdict == Verdict::Pass).count(),
            fail: checks.iter().filter(|c| c.verdict == Verdict::Fail).count(),
            indeterminate: checks
                .iter()
                .filter(|c| c.verdict == Verdict::Indeterminate)
                .count(),
        };
        Report {
            version: REPORT_VERSION.to_string(),
            config,
            checks,
            summary,
        }
    }

    /// Exit code as a pure function of the verdict multiset: 1 if anything
    /// failed, 3 if anything is indeterminate, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.indeterminate > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,subject,verdict,payload,radius\n");
        for c in &self.checks {
            let verdict = match c.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Indeterminate => "indeterminate",
            };
            let (payload, radius) = match &c.payload {
                Payload::Exact { exact } => (exact.clone(), String::new()),
                Payload::Enclosure { decimal, radius } => (decimal.clone(), radius.clone()),
            };
            for field in [&c.id, &c.subject, &verdict.to_string(), &payload, &radius] {
                out.push_str(&csv_escape(field));
                out.push(',');
            }
            out.pop();
            out.push('\n');
        }
        out
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "report v{} | mode {:?} | s = {}, n = {}..{}, precision 1e-{}\n",
            self.version,
            self.config.mode,
            self.config.s,
            self.config.n_min,
            self.config.n_max,
            self.config.precision
        ));
        for c in &self.checks {
            let tag = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Indeterminate => "INDET",
            };
            let payload = match &c.payload {
                Payload::Exact { exact } => exact.clone(),
                Payload::Enclosure { decimal, radius } => format!("{decimal} (+/- {radius})"),
            };
            out.push_str(&format!(
                "[{tag:5}] {:28} {:12} {payload}\n",
                c.id, c.subject
            ));
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} indeterminate -> exit {}\n",
            self.summary.pass,
            self.summary.fail,
            self.summary.indeterminate,
            self.exit_code()
        ));
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Human => self.to_human(),
        }
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn pass_fail(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Execute a validated config and assemble the report.
pub fn run(config: &RunConfig) -> Result<Report, ConfigError> {
    config.validate()?;
    let mut checks = Vec::new();
    match config.mode {
        Mode::VerifyExact => verify_exact_checks(config, &mut checks),
        Mode::DecayTable => decay_table_checks(config, &mut checks),
        Mode::Asymptotics => asymptotics_checks(config, &mut checks),
        Mode::ZetaTable => zeta_table_checks(config, &mut checks),
        Mode::Selftest => selftest_checks(config, &mut checks),
        Mode::All => {
            verify_exact_checks(config, &mut checks);
            decay_table_checks(config, &mut checks);
            asymptotics_checks(config, &mut checks);
            zeta_table_checks(config, &mut checks);
            selftest_checks(config, &mut checks);
        }
    }
    Ok(Report::from_checks(config.clone(), checks))
}

fn verify_exact_checks(config: &RunConfig, checks: &mut Vec<Check>) {
    let s = config.s;
    for n in config.n_min..=config.n_max {
        let subject = format!("n={n}");
        let spec = FormSpec::new(n, s).expect("validated");
        let mut table = match rn_table(&spec) {
            Ok(t) => t,
            Err(e) => {
                checks.push(Check::new(
                    "pf-decomposition",
                    subject,
                    Verdict::Fail,
                    Payload::exact(e),
                ));
                continue;
            }
        };
        let d = lcm_upto(n).expect("n >= 1");
        if let Some((i, k)) = config.inject_fault {
            if i >= 1 && i <= s && k <= n {
                let bump = Rat::new(int(1), int_pow(&d, s));
                table.perturb(i, k, &bump).expect("checked range");
            }
        }

        let integ = integrality_report(&table, &d, s);
        let payload = if integ.all_ok() {
            Payload::exact(format!("{} coefficients", integ.checked))
        } else {
            Payload::exact(format!("failures at (i,k): {:?}", integ.failures))
        };
        checks.push(Check::new(
            "pf-integrality",
            subject.clone(),
            pass_fail(integ.all_ok()),
            payload,
        ));

        let sym = table.symmetry_failures();
        let payload = if sym.is_empty() {
            Payload::exact(format!("{} entries", (s * (n + 1))))
        } else {
            Payload::exact(format!("failures at (i,k): {sym:?}"))
        };
        checks.push(Check::new(
            "pf-symmetry",
            subject.clone(),
            pass_fail(sym.is_empty()),
            payload,
        ));

        let row1 = table.row_sum(1);
        checks.push(Check::new(
            "first-row-sum-zero",
            subject.clone(),
            pass_fail(row1.is_zero()),
            Payload::exact(&row1),
        ));

        let bad_even: Vec<u32> = (2..=s)
            .step_by(2)
            .filter(|&i| !table.row_sum(i).is_zero())
            .collect();
        checks.push(Check::new(
            "even-row-sums-zero",
            subject.clone(),
            pass_fail(bad_even.is_empty()),
            if bad_even.is_empty() {
                Payload::exact(format!("{} rows", s / 2))
            } else {
                Payload::exact(format!("nonzero rows {bad_even:?}"))
            },
        ));

        match zeta_coefficients(&spec, &table) {
            Ok(form) => {
                let rep = form_integrality_report(&form);
                let payload = if rep.all_ok() {
                    Payload::exact(format!("{} inclusions", rep.len()))
                } else {
                    let labels: Vec<String> =
                        rep.failures().iter().map(|c| c.label.clone()).collect();
                    Payload::exact(format!("failed: {labels:?}"))
                };
                checks.push(Check::new(
                    "form-integrality",
                    subject.clone(),
                    pass_fail(rep.all_ok()),
                    payload,
                ));

                let residual = zeta3_residual(&form);
                let combined = combine(&form);
                let eliminated = residual.is_zero() && combined.coeff(3).is_none();
                checks.push(Check::new(
                    "zeta3-eliminated",
                    subject.clone(),
                    pass_fail(eliminated),
                    Payload::exact(&residual),
                ));

                let lam = denominator_lcm(&form);
                let ds = int_pow(&d, s);
                checks.push(Check::new(
                    "denominator-lcm-divides-d^s",
                    subject.clone(),
                    pass_fail((&ds % &lam).is_zero()),
                    Payload::exact(&lam),
                ));
            }
            Err(e) => {
                checks.push(Check::new(
                    "form-integrality",
                    subject.clone(),
                    Verdict::Fail,
                    Payload::exact(e),
                ));
            }
        }

        let bricks_ok = BrickKind::ALL
            .iter()
            .all(|&kind| decompose(&build_brick(kind, n)).is_ok_and(|t| t == brick_table(kind, n)));
        checks.push(Check::new(
            "brick-identities",
            subject.clone(),
            pass_fail(bricks_ok),
            Payload::exact("6 kinds"),
        ));

        let summand = build_rn(&spec);
        let seq_i = SummandSequence::new(spec, Grid::Integer);
        let seq_h = SummandSequence::new(spec, Grid::Half);
        let terms_ok = (0..=10u64).all(|k| {
            let ti = rat(i64::from(n) + 1 + k as i64, 1);
            let th = rat(2 * (i64::from(n) + k as i64) + 1, 2);
            summand.evaluate(&ti).is_ok_and(|v| v == seq_i.term(k))
                && summand.evaluate(&th).is_ok_and(|v| v == seq_h.term(k))
        });
        checks.push(Check::new(
            "terms-match-summand",
            subject.clone(),
            pass_fail(terms_ok),
            Payload::exact("k = 0..10, both grids"),
        ));

        let ratio_ok = (0..=30u64).all(|k| {
            seq_i.consecutive_ratio(k) == seq_i.term(k + 1) / seq_i.term(k)
                && seq_h.consecutive_ratio(k) == seq_h.term(k + 1) / seq_h.term(k)
                && crate::numerics::series::half_shift_ratio(&spec, k)
                    == seq_i.term(k) / seq_h.term(k)
        });
        checks.push(Check::new(
            "term-ratio-identities",
            subject.clone(),
            pass_fail(ratio_ok),
            Payload::exact("k = 0..30"),
        ));
    }
}

fn decay_table_checks(config: &RunConfig, checks: &mut Vec<Check>) {
    let s = config.s;
    let target = config.target();
    let digits = config.precision;
    let cross_target = pow10_target(config.precision.min(12));

    let mut signs: Vec<Option<Sign>> = Vec::new();
    let mut u_values: Vec<(u32, Enclosure)> = Vec::new();
    let mut delta_over_r: Vec<(u32, Enclosure)> = Vec::new();
    let mut r_over_rhat: Vec<(u32, Enclosure)> = Vec::new();

    for n in config.n_min..=config.n_max {
        let subject = format!("n={n}");
        let spec = FormSpec::new(n, s).expect("validated");
        let fx = match FormNumerics::new(spec) {
            Ok(fx) => fx,
            Err(e) => {
                checks.push(Check::new(
                    "delta-enclosure",
                    subject,
                    Verdict::Fail,
                    Payload::exact(e),
                ));
                signs.push(None);
                continue;
            }
        };
        let delta = match fx.delta_with_certified_sign(&target) {
            Ok(d) => d,
            Err(e) => {
                checks.push(Check::new(
                    "delta-enclosure",
                    subject.clone(),
                    Verdict::Indeterminate,
                    Payload::exact(e),
                ));
                signs.push(None);
                continue;
            }
        };
        let sign = delta.sign();
        signs.push(sign);
        checks.push(Check::new(
            "delta-enclosure",
            subject.clone(),
            if sign.is_some() {
                Verdict::Pass
            } else {
                Verdict::Indeterminate
            },
            Payload::from_enclosure(&delta, digits),
        ));
        checks.push(Check::new(
            "delta-sign",
            subject.clone(),
            if sign.is_some() {
                Verdict::Pass
            } else {
                Verdict::Indeterminate
            },
            Payload::exact(match sign {
                Some(Sign::Positive) => "+1",
                Some(Sign::Negative) => "-1",
                Some(Sign::Zero) => "0",
                None => "indeterminate",
            }),
        ));

        match fx.delta_direct(&cross_target, config.max_cutoff) {
            Ok(direct) => {
                checks.push(Check::new(
                    "delta-cross-route",
                    subject.clone(),
                    pass_fail(delta.overlaps(&direct)),
                    Payload::from_enclosure(&direct, digits.min(15)),
                ));
            }
            Err(NumericsError::CutoffExhausted { cutoff, attained }) => {
                checks.push(Check::new(
                    "delta-cross-route",
                    subject.clone(),
                    if delta.overlaps(&attained) {
                        Verdict::Indeterminate
                    } else {
                        Verdict::Fail
                    },
                    Payload::exact(format!("cutoff {cutoff} exhausted")),
                ));
            }
            Err(e) => {
                checks.push(Check::new(
                    "delta-cross-route",
                    subject.clone(),
                    Verdict::Fail,
                    Payload::exact(e),
                ));
            }
        }

        // combined-form integrality: d^s c_0 and d^(s-i) c_i integral
        let d = lcm_upto(n).expect("n >= 1");
        let combined = fx.combined();
        let mut integral_ok = crate::arith::is_integral(&(rat_int(int_pow(&d, s)) * combined.c0()));
        for (&i, c) in combined.coeffs() {
            integral_ok &= crate::arith::is_integral(&(rat_int(int_pow(&d, s - i)) * c));
        }
        checks.push(Check::new(
            "combined-integrality",
            subject.clone(),
            pass_fail(integral_ok),
            Payload::exact("d^s c_0 and d^(s-i) c_i, i odd >= 5".to_string()),
        ));

        let scaled = delta.mul(
            &Enclosure::exact_int(int_pow(&d, s)),
            64 + 8 * digits as u64,
        );
        checks.push(Check::new(
            "scaled-delta",
            subject.clone(),
            if sign.is_some() {
                Verdict::Pass
            } else {
                Verdict::Indeterminate
            },
            Payload::from_enclosure(&scaled, digits),
        ));

        if sign == Some(Sign::Positive) {
            match fx.normalized_decay(&target) {
                Ok(u) => {
                    checks.push(Check::new(
                        "normalized-decay",
                        subject.clone(),
                        Verdict::Pass,
                        Payload::from_enclosure(&u, digits),
                    ));
                    u_values.push((n, u));
                }
                Err(e) => {
                    checks.push(Check::new(
                        "normalized-decay",
                        subject.clone(),
                        Verdict::Indeterminate,
                        Payload::exact(e),
                    ));
                }
            }
        }

        if let Ok(r) = fx.r_basis(&target) {
            if let Ok(ratio) = delta.div(&r, 64 + 8 * digits as u64) {
                checks.push(Check::new(
                    "delta-over-r",
                    subject.clone(),
                    Verdict::Pass,
                    Payload::from_enclosure(&ratio, digits.min(15)),
                ));
                delta_over_r.push((n, ratio));
            }
            if let Ok(rhat) = fx.rhat_basis(&target) {
                if let Ok(ratio) = r.div(&rhat, 64 + 8 * digits as u64) {
                    checks.push(Check::new(
                        "r-over-rhat",
                        subject.clone(),
                        Verdict::Pass,
                        Payload::from_enclosure(&ratio, digits.min(15)),
                    ));
                    r_over_rhat.push((n, ratio));
                }
            }
        }
    }

    // positivity onset: smallest n with every later sign certified positive
    let all_certified = signs.iter().all(|s| s.is_some());
    let onset = {
        let mut onset = None;
        for (idx, _) in signs.iter().enumerate() {
            if signs[idx..].iter().all(|s| *s == Some(Sign::Positive)) {
                onset = Some(config.n_min + idx as u32);
                break;
            }
        }
        onset
    };
    checks.push(Check::new(
        "positivity-onset",
        format!("n={}..{}", config.n_min, config.n_max),
        if all_certified {
            Verdict::Pass
        } else {
            Verdict::Indeterminate
        },
        Payload::exact(match onset {
            Some(n0) => format!("n0={n0}"),
            None => "none in range".to_string(),
        }),
    ));

    // normalized decay must fall over the tail (second half) of its table
    let tail_len = u_values.len().div_ceil(2);
    let tail = &u_values[u_values.len() - tail_len.min(u_values.len())..];
    let verdict = if tail.len() < 2 {
        Verdict::Indeterminate
    } else {
        let decreasing = tail
            .windows(2)
            .all(|w| w[1].1.hi().cmp_value(&w[0].1.lo()) == std::cmp::Ordering::Less);
        pass_fail(decreasing)
    };
    checks.push(Check::new(
        "u-monotone-tail",
        format!("n={}..{}", config.n_min, config.n_max),
        verdict,
        Payload::exact(format!(
            "{} tail points of {} computed",
            tail.len(),
            u_values.len()
        )),
    ));

    // trend rows: |delta/r - 6| and |r/r^ - 1| should both shrink across
    // the range (certified comparison of enclosure deviations)
    let trend_row = |checks: &mut Vec<Check>, id: &str, data: &[(u32, Enclosure)], center: Rat| {
        if data.len() < 2 {
            return;
        }
        let dev = |e: &Enclosure| {
            let lo = (e.lo().to_rat() - &center).abs();
            let hi = (e.hi().to_rat() - &center).abs();
            (lo.clone().min(hi.clone()), lo.max(hi))
        };
        let (first_n, first) = &data[0];
        let (last_n, last) = &data[data.len() - 1];
        let (_, first_hi) = dev(first);
        let (last_lo, last_hi) = dev(last);
        let verdict = if last_hi < first_hi {
            Verdict::Pass
        } else if last_lo > first_hi {
            Verdict::Fail
        } else {
            Verdict::Indeterminate
        };
        checks.push(Check::new(
            id,
            format!("n={first_n}->{last_n}"),
            verdict,
            Payload::exact(format!("deviation upper bound {last_hi} at n={last_n}")),
        ));
    };
    trend_row(checks, "delta-over-r-trend", &delta_over_r, rat(6, 1));
    trend_row(checks, "r-over-rhat-trend", &r_over_rhat, rat(1, 1));

    // the n -> infinity reference: s + log g(x0), printed as a limit only,
    // never asserted against the finite-n table
    match decay_exponents(s, 64) {
        Ok(profile) => {
            checks.push(Check::new(
                "decay-exponent-limit",
                format!("s={s} (n->infinity limit, not a finite-n claim)"),
                Verdict::Pass,
                Payload::from_enclosure(&profile.decay_exponent, 8),
            ));
        }
        Err(e) => {
            checks.push(Check::new(
                "decay-exponent-limit",
                format!("s={s}"),
                Verdict::Indeterminate,
                Payload::exact(e),
            ));
        }
    }
}

fn asymptotics_checks(config: &RunConfig, checks: &mut Vec<Check>) {
    let digits = config.precision;
    let bits = (digits as u64 * 10) / 3 + 32;
    let scan = config.scan_s.unwrap_or((config.s, config.s));
    let mut s = scan.0;
    while s <= scan.1 {
        let subject = format!("s={s}");
        match decay_exponents(s, bits) {
            Ok(p) => {
                checks.push(Check::new(
                    "x0",
                    subject.clone(),
                    Verdict::Pass,
                    Payload::from_enclosure(&p.x0, digits),
                ));
                checks.push(Check::new(
                    "x1",
                    subject.clone(),
                    Verdict::Pass,
                    Payload::from_enclosure(&p.x1, digits),
                ));
                checks.push(Check::new(
                    "log-g-x0",
                    subject.clone(),
                    Verdict::Pass,
                    Payload::from_enclosure(&p.g_log_x0, digits),
                ));
                let sign_ok = |e: &Enclosure| {
                    if e.sign().is_some() {
                        Verdict::Pass
                    } else {
                        Verdict::Indeterminate
                    }
                };
                checks.push(Check::new(
                    "decay-exponent",
                    subject.clone(),
                    sign_ok(&p.decay_exponent),
                    Payload::from_enclosure(&p.decay_exponent, digits),
                ));
                checks.push(Check::new(
                    "decay-exponent-hanson",
                    subject.clone(),
                    sign_ok(&p.decay_exponent_hanson),
                    Payload::from_enclosure(&p.decay_exponent_hanson, digits),
                ));
                if s == 25 {
                    let x0_ref = rat(36713, 100_000_000);
                    let x0_ok = (p.x0.mid_rat() - &x0_ref).abs() <= rat(5, 100_000_000);
                    checks.push(Check::new(
                        "x0-reference",
                        subject.clone(),
                        pass_fail(x0_ok),
                        Payload::exact("|x0 - 0.00036713| <= 5e-8"),
                    ));
                    let g_ref = rat(-25_292_363, 1_000_000);
                    let g_ok = (p.g_log_x0.mid_rat() - &g_ref).abs() <= rat(1, 1_000_000);
                    checks.push(Check::new(
                        "log-g-reference",
                        subject.clone(),
                        pass_fail(g_ok),
                        Payload::exact("|log g(x0) + 25.292363| <= 1e-6"),
                    ));
                }
            }
            Err(e) => {
                checks.push(Check::new("x0", subject, Verdict::Fail, Payload::exact(e)));
            }
        }
        s += 2;
    }

    if let Some((lo, hi)) = config.scan_s {
        match scan_decay(lo, hi, bits) {
            Ok((_, first)) => {
                checks.push(Check::new(
                    "minimal-negative-s",
                    format!("s={lo}..{hi}"),
                    Verdict::Pass,
                    Payload::exact(match first {
                        Some(s) => s.to_string(),
                        None => "none in range".to_string(),
                    }),
                ));
            }
            Err(e) => {
                checks.push(Check::new(
                    "minimal-negative-s",
                    format!("s={lo}..{hi}"),
                    Verdict::Indeterminate,
                    Payload::exact(e),
                ));
            }
        }
    }
}

fn zeta_table_checks(config: &RunConfig, checks: &mut Vec<Check>) {
    let target = config.target();
    let mut i = 3;
    while i <= config.s {
        match crate::numerics::zeta_value(i, &target) {
            Ok(z) => {
                checks.push(Check::new(
                    "zeta-enclosure",
                    format!("i={i}"),
                    pass_fail(z.rad_rat() <= target),
                    Payload::from_enclosure(&z, config.precision),
                ));
            }
            Err(e) => {
                checks.push(Check::new(
                    "zeta-enclosure",
                    format!("i={i}"),
                    Verdict::Indeterminate,
                    Payload::exact(e),
                ));
            }
        }
        i += 2;
    }
}

fn selftest_checks(config: &RunConfig, checks: &mut Vec<Check>) {
    for kind in BrickKind::ALL {
        let ok = (0..=10u32)
            .all(|n| decompose(&build_brick(kind, n)).is_ok_and(|t| t == brick_table(kind, n)));
        checks.push(Check::new(
            "brick-identity",
            format!("{kind:?}"),
            pass_fail(ok),
            Payload::exact("n = 0..10"),
        ));
    }

    let bs = crate::arith::bernoulli_list(41);
    let bern_ok = bs[1] == rat(-1, 2)
        && bs[2] == rat(1, 6)
        && bs[12] == rat(-691, 2730)
        && (3..=41).step_by(2).all(|i| bs[i].is_zero());
    checks.push(Check::new(
        "bernoulli-values",
        "B_0..B_41".to_string(),
        pass_fail(bern_ok),
        Payload::exact("B_1 = -1/2 convention"),
    ));

    let samples = 1000usize;
    for op in OpClass::ALL {
        let failures = containment_failures(op, samples, config.seed);
        checks.push(Check::new(
            "enclosure-containment",
            format!("op={}", op.name()),
            pass_fail(failures == 0),
            Payload::exact(format!("{failures} violations / {samples} samples")),
        ));
    }
    let failures = exact_point_roundtrip(config.seed, samples);
    checks.push(Check::new(
        "enclosure-point-roundtrip",
        "rational points".to_string(),
        pass_fail(failures == 0),
        Payload::exact(format!("{failures} violations / {samples} samples")),
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config(mode: Mode) -> RunConfig {
        RunConfig {
            mode,
            s: 7,
            n_min: 1,
            n_max: 2,
            precision: 15,
            format: OutputFormat::Json,
            scan_s: None,
            seed: 3,
            max_cutoff: 1 << 18,
            inject_fault: None,
        }
    }

    #[test]
    fn config_validation() {
        let mut c = quick_config(Mode::Selftest);
        assert!(c.validate().is_ok());
        c.s = 8;
        assert_eq!(c.validate(), Err(ConfigError::InvalidS(8)));
        c.s = 7;
        c.n_min = 0;
        assert_eq!(c.validate(), Err(ConfigError::InvalidRange(0, 2)));
        c.n_min = 3;
        assert_eq!(c.validate(), Err(ConfigError::InvalidRange(3, 2)));
        c.n_min = 1;
        c.precision = 9;
        assert_eq!(c.validate(), Err(ConfigError::PrecisionTooLow(9)));
        c.precision = 20;
        c.scan_s = Some((8, 11));
        assert_eq!(c.validate(), Err(ConfigError::InvalidScan(8, 11)));
    }

    #[test]
    fn verify_exact_small_grid_all_pass() {
        let report = run(&quick_config(Mode::VerifyExact)).unwrap();
        assert_eq!(report.summary.fail, 0);
        assert_eq!(report.summary.indeterminate, 0);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn injected_fault_is_localized_and_fails() {
        let mut config = quick_config(Mode::VerifyExact);
        config.inject_fault = Some((3, 1));
        let report = run(&config).unwrap();
        assert_eq!(report.exit_code(), 1);
        let failing: Vec<&Check> = report
            .checks
            .iter()
            .filter(|c| c.verdict == Verdict::Fail)
            .collect();
        assert!(!failing.is_empty());
        assert!(failing.iter().any(|c| {
            c.id == "pf-integrality"
                && matches!(&c.payload, Payload::Exact { exact } if exact.contains("(3, 1)"))
        }));
    }

    #[test]
    fn json_roundtrip_is_byte_identical() {
        let report = run(&quick_config(Mode::Selftest)).unwrap();
        let json = report.to_json();
        let parsed: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_json(), json);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(&quick_config(Mode::ZetaTable)).unwrap();
        let b = run(&quick_config(Mode::ZetaTable)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn exit_codes_follow_verdicts() {
        let mk = |pass, fail, indet| {
            let mut checks = Vec::new();
            for _ in 0..pass {
                checks.push(Check::new(
                    "a",
                    "x".into(),
                    Verdict::Pass,
                    Payload::exact("1"),
                ));
            }
            for _ in 0..fail {
                checks.push(Check::new(
                    "b",
                    "x".into(),
                    Verdict::Fail,
                    Payload::exact("1"),
                ));
            }
            for _ in 0..indet {
                checks.push(Check::new(
                    "c",
                    "x".into(),
                    Verdict::Indeterminate,
                    Payload::exact("1"),
                ));
            }
            Report::from_checks(quick_config(Mode::Selftest), checks)
        };
        assert_eq!(mk(3, 0, 0).exit_code(), 0);
        assert_eq!(mk(3, 1, 0).exit_code(), 1);
        assert_eq!(mk(3, 0, 2).exit_code(), 3);
        assert_eq!(mk(3, 2, 2).exit_code(), 1);
    }

    #[test]
    fn csv_has_header_and_one_row_per_check() {
        let report = run(&quick_config(Mode::ZetaTable)).unwrap();
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "id,subject,verdict,payload,radius");
        assert_eq!(lines.len(), report.checks.len() + 1);
    }

    #[test]
    fn decay_table_at_s7_finds_positive_onset() {
        let mut config = quick_config(Mode::DecayTable);
        config.n_max = 3;
        let report = run(&config).unwrap();
        let onset = report
            .checks
            .iter()
            .find(|c| c.id == "positivity-onset")
            .unwrap();
        assert_eq!(onset.verdict, Verdict::Pass);
        assert!(matches!(&onset.payload, Payload::Exact { exact } if exact == "n0=1"));
        let limit = report
            .checks
            .iter()
            .find(|c| c.id == "decay-exponent-limit")
            .unwrap();
        assert!(limit.subject.contains("limit"));
    }
}
