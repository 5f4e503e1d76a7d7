//! Direct summation of both series against the exact zeta-basis route:
//! two independent evaluations that must agree within summed radii.
//!
//!     cargo run --example series_summation

use zeta_forms::numerics::{pow10_target, FormNumerics, Grid, SummandSequence};
use zeta_forms::ratfun::FormSpec;

fn main() {
    let spec = FormSpec::new(1, 7).unwrap();
    let seq = SummandSequence::new(spec, Grid::Integer);
    println!("first integer-grid terms at n = 1, s = 7:");
    for k in 0..4u64 {
        println!("  c_{k} = {}", seq.term(k));
    }
    let half = SummandSequence::new(spec, Grid::Half);
    println!("first half-grid terms:");
    for k in 0..4u64 {
        println!("  c^_{k} = {}", half.term(k));
    }

    let eps = pow10_target(25);
    for (n, s) in [(1u32, 7u32), (2, 7), (1, 25)] {
        let fx = FormNumerics::new(FormSpec::new(n, s).unwrap()).unwrap();
        let r_direct = fx.r_direct(&eps, 1 << 20).expect("cutoff suffices");
        let r_basis = fx.r_basis(&eps).expect("basis route");
        let rh_direct = fx.rhat_direct(&eps, 1 << 20).expect("cutoff suffices");
        let rh_basis = fx.rhat_basis(&eps).expect("basis route");
        println!("\nn = {n}, s = {s}:");
        println!(
            "  r  direct (K = {:5}) = {}",
            r_direct.cutoff,
            r_direct.enclosure.mid().to_decimal(25)
        );
        println!("  r  basis             = {}", r_basis.mid().to_decimal(25));
        println!(
            "  routes overlap: {}",
            r_basis.overlaps(&r_direct.enclosure)
        );
        println!(
            "  r^ direct (K = {:5}) = {}",
            rh_direct.cutoff,
            rh_direct.enclosure.mid().to_decimal(25)
        );
        println!("  r^ basis             = {}", rh_basis.mid().to_decimal(25));
        println!(
            "  routes overlap: {}",
            rh_basis.overlaps(&rh_direct.enclosure)
        );

        let delta = fx.delta_basis(&eps).expect("basis route");
        println!(
            "  7r - r^              = {} (sign {:?})",
            delta.mid().to_decimal(25),
            delta.sign()
        );
    }
}
