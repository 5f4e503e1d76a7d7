//! Exact zeta-basis coefficients of the two series and the zeta(3)-free
//! combination, with every denominator-clearing inclusion verified.
//!
//!     cargo run --example linear_forms

use zeta_forms::arith::{int_pow, lcm_upto};
use zeta_forms::linear_forms::{
    combine, denominator_lcm, form_integrality_report, zeta3_residual, zeta_coefficients,
};
use zeta_forms::ratfun::{rn_table, FormSpec};

fn main() {
    for (n, s) in [(1u32, 7u32), (2, 7), (3, 7)] {
        let spec = FormSpec::new(n, s).unwrap();
        let form = zeta_coefficients(&spec, &rn_table(&spec).unwrap()).unwrap();
        println!("n = {n}, s = {s}:");
        println!("  r  = sum a_i zeta(i) + a_0 with");
        for (i, a) in form.coeffs() {
            println!("    a_{i} = {a}");
        }
        println!("    a_0  = {}", form.a0());
        println!("    a^_0 = {} (half-grid constant term)", form.a0_hat());

        let rep = form_integrality_report(&form);
        println!(
            "  inclusions d^(s-i) a_i, d^s a_0, d^s a^_0 ({} checks): {}",
            rep.len(),
            rep.all_ok()
        );

        let d = lcm_upto(n).unwrap();
        let lam = denominator_lcm(&form);
        let ds = int_pow(&d, s);
        println!("  true coefficient denominator lcm = {lam}");
        println!(
            "  certified clearing denominator d^s = {ds} (divisible by the lcm: {})",
            num_traits::Zero::is_zero(&(&ds % &lam))
        );

        let combined = combine(&form);
        println!(
            "  7r - r^: zeta(3) residual = {} (slot present: {})",
            zeta3_residual(&form),
            combined.coeff(3).is_some()
        );
        for (i, c) in combined.coeffs() {
            println!("    c_{i} = {c}");
        }
        println!("    c_0 = {}\n", combined.c0());
    }
}
