//! The well-poised rational summand, exact evaluation, and its full
//! partial-fraction table.
//!
//! The summand for index n with s zeta slots is
//!
//! ```text
//!            n!^(s-5) * prod_{j=1..n} (t-j) * prod_{j=1..n} (t+n+j)
//! R_n(t) =   ---------------------------------------------------------
//!                          prod_{j=0..n} (t+j)^s
//!            * 2^(6n) * prod_{j=1..3n} (t - n - 1/2 + j)
//! ```
//!
//! with poles of order exactly s at t = 0, -1, ..., -n. `decompose`
//! produces the coefficients a_{i,k} of sum_{i,k} a_{i,k}/(t+k)^i by exact
//! truncated power-series expansion of R(t) (t+k)^s around each pole; the
//! series route avoids symbolic differentiation while staying exact. The
//! six classical single-pole identities (`brick_table`) double as oracles.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{
    binomial, factorial, int, int_pow, is_integral, rat, rat_int, rat_pow, Int, Rat,
};

#[derive(Debug, Error, PartialEq)]
pub enum RatFunError {
    #[error("spec requires n >= 1 and odd s >= 7, got n = {n}, s = {s}")]
    InvalidSpec { n: u32, s: u32 },
    #[error("zero scalar does not define a decomposable rational function")]
    ZeroScalar,
    #[error("evaluation at pole t = {at}")]
    PoleEvaluation { at: Rat },
    #[error("denominator degree {denom} must strictly exceed numerator degree {numer}")]
    ImproperDegree { numer: i64, denom: i64 },
    #[error("common root {root} of numerator and denominator; reduce first")]
    NotReduced { root: Rat },
    #[error("pole at {root} is not of the form t = -k with integer k >= 0")]
    UnsupportedPole { root: Rat },
    #[error("coefficient index (i = {i}, k = {k}) out of table range")]
    IndexOutOfRange { i: u32, k: u32 },
}

/// Index n and odd slot count s >= 7 of one form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormSpec {
    n: u32,
    s: u32,
}

impl FormSpec {
    pub fn new(n: u32, s: u32) -> Result<Self, RatFunError> {
        if n < 1 || s < 7 || s.is_multiple_of(2) {
            return Err(RatFunError::InvalidSpec { n, s });
        }
        Ok(FormSpec { n, s })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// The split point m = floor((n-1)/2) of the half-grid resummation.
    pub fn half_split(&self) -> u32 {
        (self.n - 1) / 2
    }
}

/// One linear factor (t - root)^mult.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFactor {
    pub root: Rat,
    pub mult: u32,
}

/// scalar * prod (t - root)^m / prod (t - root')^m', evaluated exactly at
/// any non-pole rational point. A formal quotient: numerator and
/// denominator may share roots (the flattened view of the summand does),
/// but such a form cannot be decomposed.
#[derive(Debug, Clone)]
pub struct FactoredRational {
    scalar: Rat,
    numer: Vec<LinearFactor>,
    denom: Vec<LinearFactor>,
}

fn group_factors(raw: Vec<(Rat, u32)>) -> Vec<LinearFactor> {
    let mut map: BTreeMap<Rat, u32> = BTreeMap::new();
    for (root, mult) in raw {
        if mult > 0 {
            *map.entry(root).or_insert(0) += mult;
        }
    }
    map.into_iter()
        .map(|(root, mult)| LinearFactor { root, mult })
        .collect()
}

impl FactoredRational {
    pub fn new(
        scalar: Rat,
        numer: Vec<(Rat, u32)>,
        denom: Vec<(Rat, u32)>,
    ) -> Result<Self, RatFunError> {
        if scalar.is_zero() {
            return Err(RatFunError::ZeroScalar);
        }
        Ok(FactoredRational {
            scalar,
            numer: group_factors(numer),
            denom: group_factors(denom),
        })
    }

    pub fn scalar(&self) -> &Rat {
        &self.scalar
    }

    pub fn numer_factors(&self) -> &[LinearFactor] {
        &self.numer
    }

    pub fn denom_factors(&self) -> &[LinearFactor] {
        &self.denom
    }

    /// Total degree: numerator degree minus denominator degree.
    pub fn degree(&self) -> i64 {
        let nd: i64 = self.numer.iter().map(|f| i64::from(f.mult)).sum();
        let dd: i64 = self.denom.iter().map(|f| i64::from(f.mult)).sum();
        nd - dd
    }

    pub fn evaluate(&self, t: &Rat) -> Result<Rat, RatFunError> {
        let mut den = Rat::one();
        for f in &self.denom {
            let lin = t - &f.root;
            if lin.is_zero() {
                return Err(RatFunError::PoleEvaluation { at: t.clone() });
            }
            den *= rat_pow(&lin, f.mult);
        }
        let mut num = self.scalar.clone();
        for f in &self.numer {
            num *= rat_pow(&(t - &f.root), f.mult);
        }
        Ok(num / den)
    }

    /// Formal product; factor lists merge, nothing cancels.
    pub fn multiply(&self, other: &FactoredRational) -> FactoredRational {
        let collect = |a: &[LinearFactor], b: &[LinearFactor]| {
            let mut v: Vec<(Rat, u32)> = Vec::new();
            v.extend(a.iter().map(|f| (f.root.clone(), f.mult)));
            v.extend(b.iter().map(|f| (f.root.clone(), f.mult)));
            v
        };
        FactoredRational {
            scalar: &self.scalar * &other.scalar,
            numer: group_factors(collect(&self.numer, &other.numer)),
            denom: group_factors(collect(&self.denom, &other.denom)),
        }
    }
}

/// The canonical factored form of the summand: pole order exactly s.
pub fn build_rn(spec: &FormSpec) -> FactoredRational {
    let n = i64::from(spec.n);
    let scalar =
        rat_int(int_pow(&int(2), 6 * spec.n) * int_pow(&factorial(spec.n as u64), spec.s - 5));
    let mut numer: Vec<(Rat, u32)> = Vec::new();
    for j in 1..=n {
        numer.push((rat(j, 1), 1));
        numer.push((rat(-(n + j), 1), 1));
    }
    for j in 1..=3 * n {
        // factor (t - n - 1/2 + j), root n + 1/2 - j
        numer.push((rat(2 * n + 1 - 2 * j, 2), 1));
    }
    let denom = (0..=n).map(|j| (rat(-j, 1), spec.s)).collect();
    FactoredRational::new(scalar, numer, denom).expect("nonzero scalar")
}

/// The flattened view with denominator exponent s+1; same function, used
/// only for evaluation cross-checks (it shares roots between numerator and
/// denominator, so it cannot be decomposed).
pub fn build_rn_flat(spec: &FormSpec) -> FactoredRational {
    let n = i64::from(spec.n);
    let scalar =
        rat_int(int_pow(&int(2), 6 * spec.n) * int_pow(&factorial(spec.n as u64), spec.s - 5));
    // factors (t - n + j/2), j = 0..6n: roots n - j/2
    let numer = (0..=6 * n).map(|j| (rat(2 * n - j, 2), 1)).collect();
    let denom = (0..=n).map(|j| (rat(-j, 1), spec.s + 1)).collect();
    FactoredRational::new(scalar, numer, denom).expect("nonzero scalar")
}

/// Dense table of partial-fraction coefficients a_{i,k}, i = 1..=order,
/// k = 0..=n_max, for a function with poles at t = -k.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractionTable {
    n_max: u32,
    order: u32,
    coeffs: Vec<Vec<Rat>>, // coeffs[i-1][k]
}

impl PartialFractionTable {
    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, i: u32, k: u32) -> Result<&Rat, RatFunError> {
        if i < 1 || i > self.order || k > self.n_max {
            return Err(RatFunError::IndexOutOfRange { i, k });
        }
        Ok(&self.coeffs[(i - 1) as usize][k as usize])
    }

    /// sum_k a_{i,k} for one row i.
    pub fn row_sum(&self, i: u32) -> Rat {
        self.coeffs[(i - 1) as usize]
            .iter()
            .fold(Rat::zero(), |a, c| a + c)
    }

    /// Exact evaluation of sum a_{i,k}/(t+k)^i.
    pub fn evaluate(&self, t: &Rat) -> Result<Rat, RatFunError> {
        let mut acc = Rat::zero();
        for k in 0..=self.n_max {
            let base = t + rat(i64::from(k), 1);
            if base.is_zero() {
                if (1..=self.order).any(|i| !self.coeffs[(i - 1) as usize][k as usize].is_zero()) {
                    return Err(RatFunError::PoleEvaluation { at: t.clone() });
                }
                continue;
            }
            let mut pw = Rat::one();
            for i in 1..=self.order {
                pw /= &base;
                let c = &self.coeffs[(i - 1) as usize][k as usize];
                if !c.is_zero() {
                    acc += c * &pw;
                }
            }
        }
        Ok(acc)
    }

    /// Indices (i, k) violating a_{i,k} = (-1)^(i-1) a_{i, n-k}.
    pub fn symmetry_failures(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 1..=self.order {
            for k in 0..=self.n_max {
                let lhs = &self.coeffs[(i - 1) as usize][k as usize];
                let mirror = &self.coeffs[(i - 1) as usize][(self.n_max - k) as usize];
                let rhs = if i % 2 == 1 { mirror.clone() } else { -mirror };
                if *lhs != rhs {
                    out.push((i, k));
                }
            }
        }
        out
    }

    /// Test hook: shift one coefficient by `delta`.
    pub fn perturb(&mut self, i: u32, k: u32, delta: &Rat) -> Result<(), RatFunError> {
        if i < 1 || i > self.order || k > self.n_max {
            return Err(RatFunError::IndexOutOfRange { i, k });
        }
        let c = &mut self.coeffs[(i - 1) as usize][k as usize];
        *c = c.clone() + delta;
        Ok(())
    }
}

/// Exact partial-fraction decomposition of a proper factored rational whose
/// poles all sit at t = -k, integer k >= 0.
///
/// Around each pole -k of order m, the analytic part
/// G(u) = R(t) (t+k)^m with u = t + k is expanded to order m-1 by
/// multiplying the series of every other factor; then a_{i,k} is the
/// coefficient of u^(m-i).
pub fn decompose(f: &FactoredRational) -> Result<PartialFractionTable, RatFunError> {
    if f.degree() >= 0 {
        let nd: i64 = f.numer.iter().map(|x| i64::from(x.mult)).sum();
        let dd: i64 = f.denom.iter().map(|x| i64::from(x.mult)).sum();
        return Err(RatFunError::ImproperDegree {
            numer: nd,
            denom: dd,
        });
    }
    for df in &f.denom {
        if f.numer.iter().any(|nf| nf.root == df.root) {
            return Err(RatFunError::NotReduced {
                root: df.root.clone(),
            });
        }
    }
    let mut n_max = 0u32;
    let mut order = 0u32;
    let mut pole_ks: Vec<u32> = Vec::with_capacity(f.denom.len());
    for df in &f.denom {
        let neg = -&df.root;
        if !is_integral(&neg) || neg.is_negative() {
            return Err(RatFunError::UnsupportedPole {
                root: df.root.clone(),
            });
        }
        let k: u32 = neg
            .to_integer()
            .try_into()
            .map_err(|_| RatFunError::UnsupportedPole {
                root: df.root.clone(),
            })?;
        pole_ks.push(k);
        n_max = n_max.max(k);
        order = order.max(df.mult);
    }

    let mut coeffs = vec![vec![Rat::zero(); (n_max + 1) as usize]; order as usize];
    for (df, &k) in f.denom.iter().zip(&pole_ks) {
        let m = df.mult as usize;
        let mut series = vec![Rat::zero(); m];
        series[0] = f.scalar.clone();
        for nf in &f.numer {
            let c = &df.root - &nf.root; // value of (t - root) at the pole
            for _ in 0..nf.mult {
                mul_linear(&mut series, &c);
            }
        }
        for other in &f.denom {
            if other.root == df.root {
                continue;
            }
            let c = &df.root - &other.root;
            let rec = recip_linear_pow(&c, other.mult, m);
            series = series_mul(&series, &rec);
        }
        for i in 1..=df.mult {
            coeffs[(i - 1) as usize][k as usize] = series[m - i as usize].clone();
        }
    }
    Ok(PartialFractionTable {
        n_max,
        order,
        coeffs,
    })
}

/// In-place truncated multiplication by (c + u).
fn mul_linear(series: &mut [Rat], c: &Rat) {
    for j in (0..series.len()).rev() {
        let mut v = &series[j] * c;
        if j > 0 {
            v += &series[j - 1];
        }
        series[j] = v;
    }
}

/// Truncated series of 1/(c + u)^m for c != 0:
/// sum_j (-1)^j C(m-1+j, j) c^(-m-j) u^j.
fn recip_linear_pow(c: &Rat, m: u32, len: usize) -> Vec<Rat> {
    assert!(!c.is_zero());
    let c_inv = Rat::one() / c;
    let mut out = Vec::with_capacity(len);
    let mut pw = rat_pow(&c_inv, m);
    for j in 0..len {
        let coef = rat_int(binomial(u64::from(m) - 1 + j as u64, j as i64));
        let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
        out.push(sign * coef * &pw);
        pw *= &c_inv;
    }
    out
}

fn series_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let len = a.len();
    let mut out = vec![Rat::zero(); len];
    for (i, av) in a.iter().enumerate() {
        if av.is_zero() {
            continue;
        }
        for (j, bv) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j] += av * bv;
        }
    }
    out
}

/// Decompose the summand for `spec`.
pub fn rn_table(spec: &FormSpec) -> Result<PartialFractionTable, RatFunError> {
    decompose(&build_rn(spec))
}

/// The six classical single-pole building blocks, named by where their
/// numerator roots sit relative to the poles {0, -1, ..., -n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrickKind {
    /// n! / prod (t+j); constant numerator.
    Constant,
    /// prod (t-j) / prod (t+j); roots 1..n above the poles.
    FallingIntegers,
    /// prod (t+n+j) / prod (t+j); roots -(n+1)..-2n below the poles.
    RaisedIntegers,
    /// 2^(2n) prod (t+1/2-j) / prod (t+j); half-integer roots above.
    HalfAbove,
    /// 2^(2n) prod (t-1/2+j) / prod (t+j); half-integer roots interleaved.
    HalfBetween,
    /// 2^(2n) prod (t+n-1/2+j) / prod (t+j); half-integer roots below.
    HalfBelow,
}

impl BrickKind {
    pub const ALL: [BrickKind; 6] = [
        BrickKind::Constant,
        BrickKind::FallingIntegers,
        BrickKind::RaisedIntegers,
        BrickKind::HalfAbove,
        BrickKind::HalfBetween,
        BrickKind::HalfBelow,
    ];
}

/// Factored form of a brick.
pub fn build_brick(kind: BrickKind, n: u32) -> FactoredRational {
    let ni = i64::from(n);
    let denom: Vec<(Rat, u32)> = (0..=ni).map(|j| (rat(-j, 1), 1)).collect();
    let two_pow = rat_int(int_pow(&int(2), 2 * n));
    let (scalar, numer): (Rat, Vec<(Rat, u32)>) = match kind {
        BrickKind::Constant => (rat_int(factorial(n as u64)), Vec::new()),
        BrickKind::FallingIntegers => (Rat::one(), (1..=ni).map(|j| (rat(j, 1), 1)).collect()),
        BrickKind::RaisedIntegers => (
            Rat::one(),
            (1..=ni).map(|j| (rat(-(ni + j), 1), 1)).collect(),
        ),
        BrickKind::HalfAbove => {
            // (t + 1/2 - j): root j - 1/2
            (two_pow, (1..=ni).map(|j| (rat(2 * j - 1, 2), 1)).collect())
        }
        BrickKind::HalfBetween => {
            // (t - 1/2 + j): root 1/2 - j
            (two_pow, (1..=ni).map(|j| (rat(1 - 2 * j, 2), 1)).collect())
        }
        BrickKind::HalfBelow => {
            // (t + n - 1/2 + j): root 1/2 - n - j
            (
                two_pow,
                (1..=ni).map(|j| (rat(1 - 2 * ni - 2 * j, 2), 1)).collect(),
            )
        }
    };
    FactoredRational::new(scalar, numer, denom).expect("nonzero scalar")
}

/// Closed-form partial-fraction coefficients of a brick; the oracle against
/// which `decompose` is checked.
pub fn brick_table(kind: BrickKind, n: u32) -> PartialFractionTable {
    let nn = u64::from(n);
    let sign = |e: u64| {
        if e.is_multiple_of(2) {
            Int::one()
        } else {
            -Int::one()
        }
    };
    let row: Vec<Rat> = (0..=u64::from(n))
        .map(|k| {
            let v: Int = match kind {
                BrickKind::Constant => sign(k) * binomial(nn, k as i64),
                BrickKind::FallingIntegers => {
                    sign(nn + k) * binomial(nn + k, nn as i64) * binomial(nn, k as i64)
                }
                BrickKind::RaisedIntegers => {
                    sign(k) * binomial(2 * nn - k, nn as i64) * binomial(nn, k as i64)
                }
                BrickKind::HalfAbove => {
                    sign(nn + k)
                        * binomial(2 * nn + 2 * k, 2 * nn as i64)
                        * binomial(2 * nn, (nn + k) as i64)
                }
                BrickKind::HalfBetween => {
                    binomial(2 * k, k as i64) * binomial(2 * nn - 2 * k, (nn - k) as i64)
                }
                BrickKind::HalfBelow => {
                    sign(k) * binomial(4 * nn - 2 * k, 2 * nn as i64) * binomial(2 * nn, k as i64)
                }
            };
            rat_int(v)
        })
        .collect();
    PartialFractionTable {
        n_max: n,
        order: 1,
        coeffs: vec![row],
    }
}

/// Per-coefficient verdicts of the denominator-clearing inclusion
/// d^(base - i) a_{i,k} in Z.
#[derive(Debug, Clone)]
pub struct IntegralityReport {
    pub exponent_base: u32,
    pub checked: usize,
    pub failures: Vec<(u32, u32)>,
}

impl IntegralityReport {
    pub fn all_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check d^(base - i) * a_{i,k} in Z for every table entry, where `d` is
/// lcm(1..=n) for the relevant n and `base` the pole order bound.
pub fn integrality_report(table: &PartialFractionTable, d: &Int, base: u32) -> IntegralityReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for i in 1..=table.order() {
        let scale = rat_int(int_pow(d, base.saturating_sub(i)));
        for k in 0..=table.n_max() {
            checked += 1;
            let v = table.coeff(i, k).expect("in range") * &scale;
            if !is_integral(&v) {
                failures.push((i, k));
            }
        }
    }
    IntegralityReport {
        exponent_base: base,
        checked,
        failures,
    }
}

/// Deterministic sample points with small denominators, avoiding the given
/// exclusion set; used by reconstruction identity checks so that failures
/// reproduce.
pub fn sample_points(seed: u64, count: usize, exclude: &[Rat]) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Rat> = Vec::with_capacity(count);
    let span = 8 * count as i64 + 16;
    while out.len() < count {
        let p = rng.gen_range(-span..=span);
        let q = rng.gen_range(1..=7i64);
        let cand = rat(p, q);
        if exclude.contains(&cand) || out.contains(&cand) {
            continue;
        }
        out.push(cand);
    }
    out
}

/// All roots that evaluation must avoid: poles and numerator roots.
pub fn critical_points(f: &FactoredRational) -> Vec<Rat> {
    let mut v: Vec<Rat> = f.denom.iter().map(|x| x.root.clone()).collect();
    v.extend(f.numer.iter().map(|x| x.root.clone()));
    v
}
