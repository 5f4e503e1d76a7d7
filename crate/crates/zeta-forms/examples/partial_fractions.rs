//! Build the well-poised summand for a small (n, s), decompose it exactly,
//! and check the structural identities on the spot.
//!
//!     cargo run --example partial_fractions

use zeta_forms::arith::{lcm_upto, rat};
use zeta_forms::ratfun::{
    build_rn, critical_points, integrality_report, rn_table, sample_points, FormSpec,
};

fn main() {
    let spec = FormSpec::new(2, 7).expect("valid spec");
    let (n, s) = (spec.n(), spec.s());
    println!("summand for n = {n}, s = {s}");

    let f = build_rn(&spec);
    println!("  degree = {} (numerator minus denominator)", f.degree());
    println!(
        "  value at t = {}: {}",
        rat(7, 2),
        f.evaluate(&rat(7, 2)).unwrap()
    );

    let table = rn_table(&spec).expect("proper rational function");
    println!("\npartial-fraction coefficients a_(i,k), i = 1..{s}, k = 0..{n}:");
    for i in 1..=s {
        let row: Vec<String> = (0..=n)
            .map(|k| table.coeff(i, k).unwrap().to_string())
            .collect();
        println!("  i = {i}: [{}]", row.join(", "));
    }

    println!(
        "\nwell-poised symmetry a_(i,k) = (-1)^(i-1) a_(i,n-k): {}",
        if table.symmetry_failures().is_empty() {
            "holds exactly"
        } else {
            "VIOLATED"
        }
    );
    println!("row 1 sums to {}", table.row_sum(1));
    for i in (2..=s).step_by(2) {
        assert!(table.row_sum(i) == rat(0, 1));
    }
    println!("even rows all sum to 0 exactly");

    let d = lcm_upto(n).unwrap();
    let rep = integrality_report(&table, &d, s);
    println!(
        "d^(s-i) a_(i,k) integral for all {} entries: {}",
        rep.checked,
        rep.all_ok()
    );

    // reconstruction: the table re-evaluates to the summand everywhere
    let pts = sample_points(7, (s * (n + 1) + 6 * n + 3) as usize, &critical_points(&f));
    let ok = pts
        .iter()
        .all(|t| table.evaluate(t).unwrap() == f.evaluate(t).unwrap());
    println!(
        "reconstruction identity at {} sample points: {}",
        pts.len(),
        ok
    );
}
