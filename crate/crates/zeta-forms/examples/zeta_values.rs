//! Certified zeta enclosures at high precision via Euler-Maclaurin with
//! exact Bernoulli corrections.
//!
//!     cargo run --example zeta_values

use zeta_forms::numerics::{pow10_target, zeta_value};

fn main() {
    let target = pow10_target(40);
    println!("zeta(i) with certified radius <= 1e-40:");
    for i in [2u32, 3, 5, 7, 11, 25] {
        let z = zeta_value(i, &target).expect("i >= 2");
        let (dec, rad) = z.to_decimal_parts(42);
        println!("  zeta({i:2}) = {dec}  (+/- {rad})");
    }

    // the index-1 series has no limit at the evaluation point; rejected
    match zeta_value(1, &target) {
        Err(e) => println!("\nzeta(1): {e}"),
        Ok(_) => unreachable!(),
    }
}
