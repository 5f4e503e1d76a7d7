//! Growth of d_n = lcm(1..n): the elementary d_n < 3^n bound and the
//! (log d_n)/n -> 1 trend, with the two construction routes cross-checked.
//!
//!     cargo run --example dn_growth

use num_integer::Integer;
use zeta_forms::arith::{int, lcm_upto, lcm_upto_sieve, ln_int_approx, Int};

fn main() {
    println!("d_n for small n:");
    for n in [1u32, 6, 10, 20, 30] {
        let d = lcm_upto(n).unwrap();
        assert_eq!(d, lcm_upto_sieve(n).unwrap());
        println!("  d_{n} = {d}");
    }
    println!("(incremental-lcm and prime-power routes agree)");

    let mut d = Int::from(1);
    let mut pow3 = Int::from(1);
    let mut ok = true;
    println!("\n(log d_n)/n trend and the d_n < 3^n bound:");
    for n in 1..=10_000u32 {
        d = d.lcm(&int(i64::from(n)));
        pow3 *= int(3);
        ok &= d < pow3;
        if [100u32, 1000, 10_000].contains(&n) {
            println!(
                "  n = {n:6}: (log d_n)/n = {:.5}",
                ln_int_approx(&d) / f64::from(n)
            );
        }
    }
    println!("d_n < 3^n for every n <= 10^4: {ok}");
}
