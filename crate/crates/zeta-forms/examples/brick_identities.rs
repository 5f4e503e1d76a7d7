//! The six classical single-pole partial-fraction identities with binomial
//! closed forms, checked against the decomposition engine.
//!
//!     cargo run --example brick_identities

use zeta_forms::ratfun::{brick_table, build_brick, decompose, BrickKind};

fn main() {
    for kind in BrickKind::ALL {
        println!("{kind:?}:");
        for n in 0..=4u32 {
            let closed = brick_table(kind, n);
            let computed = decompose(&build_brick(kind, n)).expect("proper brick");
            let row: Vec<String> = (0..=n)
                .map(|k| closed.coeff(1, k).unwrap().to_string())
                .collect();
            println!(
                "  n = {n}: [{}]  decompose agrees: {}",
                row.join(", "),
                computed == closed
            );
        }
    }

    // products of bricks have double poles; the denominator-clearing
    // exponent drops to the pole order
    let prod =
        build_brick(BrickKind::Constant, 3).multiply(&build_brick(BrickKind::HalfBetween, 3));
    let table = decompose(&prod).expect("proper product");
    let d = zeta_forms::arith::lcm_upto(3).unwrap();
    let rep = zeta_forms::ratfun::integrality_report(&table, &d, 2);
    println!(
        "\nproduct of two bricks (n = 3): order {}, d^(2-i) a_(i,k) integral: {}",
        table.order(),
        rep.all_ok()
    );
}
