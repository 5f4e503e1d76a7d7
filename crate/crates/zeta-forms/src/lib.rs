//! Exact construction and rigorous numerical verification of twisted
//! well-poised hypergeometric linear forms in odd zeta values.
//!
//! For an odd s >= 7 and index n, the crate builds a rational summand
//! whose integer-grid and half-grid sums are linear forms
//! r = sum a_i zeta(i) + a_0 and r^ = sum a_i (2^i - 1) zeta(i) + a^_0
//! over the odd slots i = 3, 5, ..., s, with one striking feature: because
//! 2^3 - 1 = 7, the combination 7r - r^ has no zeta(3) term at all.
//!
//! Everything arithmetic is exact (bignum rationals); everything analytic
//! is enclosure-based (midpoint-radius with outward rounding), so every
//! inequality the crate reports is certified. The pieces:
//!
//! * [`arith`] - lcm(1..n), binomials, factorials, Bernoulli numbers;
//! * [`ratfun`] - the factored summand, exact evaluation, and its full
//!   partial-fraction table, with the six classical single-pole identities
//!   as built-in oracles;
//! * [`linear_forms`] - exact zeta-basis coefficients, denominator-clearing
//!   inclusions, and the zeta(3)-free combination;
//! * [`numerics`] - dyadic ball arithmetic, certified zeta values via
//!   Euler-Maclaurin, direct series summation, cross-route checks;
//! * [`asymptotics`] - the saddle index x_0, log g(x_0), and certified
//!   decay exponents (including the d_n < 3^n variant);
//! * [`report`] - deterministic machine-readable verification reports and
//!   the runner behind the `zeta-forms` binary.
//!
//! Start with the examples: each one exercises a single capability end to
//! end (`cargo run --example partial_fractions`, `... --example
//! asymptotic_constants`, and so on).

pub mod arith;
pub mod asymptotics;
pub mod linear_forms;
pub mod numerics;
pub mod ratfun;
pub mod report;

pub use arith::{Int, Rat};
pub use numerics::{Dyadic, Enclosure, Sign};
pub use ratfun::FormSpec;
