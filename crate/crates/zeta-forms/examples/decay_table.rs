//! Signs and scaled magnitudes of the combination 7r - r^ across n, and
//! the normalized decay u_n = (1/n) log(d^s (7r - r^)) where it exists.
//!
//! At s = 7 the combination is positive from n = 1 on and u_n is a real
//! table; at s = 25 every desk-scale sign is certified negative (the
//! half-grid series dominates until n reaches the order of 1/x0), so the
//! table records signs and magnitudes instead.
//!
//!     cargo run --example decay_table

use zeta_forms::arith::{int_pow, lcm_upto};
use zeta_forms::numerics::{pow10_target, Enclosure, FormNumerics, Sign};
use zeta_forms::ratfun::FormSpec;

fn main() {
    let target = pow10_target(30);

    println!("s = 7 (positive combination, u_n defined):");
    for n in 1..=6u32 {
        let fx = FormNumerics::new(FormSpec::new(n, 7).unwrap()).unwrap();
        let delta = fx.delta_with_certified_sign(&target).unwrap();
        let u = fx.normalized_decay(&target).unwrap();
        println!(
            "  n = {n}: 7r - r^ = {}  u_n = {}",
            delta.mid().to_decimal(20),
            u.mid().to_decimal(10)
        );
    }

    println!("\ns = 25 (desk scale):");
    for n in 1..=4u32 {
        let fx = FormNumerics::new(FormSpec::new(n, 25).unwrap()).unwrap();
        let delta = fx.delta_with_certified_sign(&target).unwrap();
        let d = lcm_upto(n).unwrap();
        let scaled = delta.mul(&Enclosure::exact_int(int_pow(&d, 25)), 256);
        let sign = match delta.sign() {
            Some(Sign::Positive) => "+",
            Some(Sign::Negative) => "-",
            _ => "?",
        };
        println!(
            "  n = {n}: sign {sign}, d^25 (7r - r^) = {}",
            scaled.mid().to_decimal(18)
        );
    }
    let p = zeta_forms::asymptotics::decay_exponents(25, 64).unwrap();
    println!(
        "  n -> infinity limit of (1/n) log(d^25 |7r - r^|) under d^(1/n) -> e: {} (label only)",
        p.decay_exponent.mid().to_decimal(8)
    );
}
