//! The certified growth data: saddle index x0, critical point x1,
//! log g(x0), and the decay exponents under both lcm growth bounds,
//! plus the scan locating the smallest workable s.
//!
//!     cargo run --example asymptotic_constants

use zeta_forms::asymptotics::{decay_exponents, scan_decay};

fn main() {
    for s in [7u32, 25, 33] {
        let p = decay_exponents(s, 64).expect("odd s >= 7");
        println!("s = {s} (q = {}):", p.q);
        println!("  x0             = {}", p.x0.mid().to_decimal(12));
        println!("  x1             = {}", p.x1.mid().to_decimal(12));
        println!("  log g(x0)      = {}", p.g_log_x0.mid().to_decimal(10));
        println!(
            "  s + log g(x0)        = {}  (sign {:?})",
            p.decay_exponent.mid().to_decimal(10),
            p.decay_exponent.sign()
        );
        println!(
            "  s log 3 + log g(x0)  = {}  (sign {:?})",
            p.decay_exponent_hanson.mid().to_decimal(10),
            p.decay_exponent_hanson.sign()
        );
    }

    let (profiles, first_negative) = scan_decay(7, 27, 48).expect("all signs certified");
    println!("\nscan of s + log g(x0) over odd s = 7..27:");
    for p in &profiles {
        println!("  s = {:2}: {}", p.s, p.decay_exponent.mid().to_decimal(6));
    }
    println!("smallest s with certified negative exponent: {first_negative:?}");
}
