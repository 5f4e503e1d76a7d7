//! Property tests: randomized invariants over the enclosure arithmetic and
//! the summand's structural symmetries.

use num_traits::Signed;
use proptest::prelude::*;

use zeta_forms::arith::{int, Rat};
use zeta_forms::numerics::{Dyadic, Enclosure};
use zeta_forms::ratfun::{build_rn, FormSpec};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-2_000_000i64..2_000_000, 1i64..5_000).prop_map(|(p, q)| Rat::new(int(p), int(q)))
}

fn arb_interval() -> impl Strategy<Value = (Rat, Rat, Rat)> {
    // (lo, hi, point inside)
    (arb_rat(), 0i64..50_000, 0u32..=1000).prop_map(|(mid, rad_num, t)| {
        let rad = Rat::new(int(rad_num), int(7001));
        let lo = &mid - &rad;
        let hi = &mid + &rad;
        let point = &lo + (&hi - &lo) * Rat::new(int(i64::from(t)), int(1000));
        (lo, hi, point)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dyadic_directed_roundings_bracket((lo, _, x) in arb_interval()) {
        let _ = lo;
        let down = Dyadic::from_rat_down(&x, 48);
        let up = Dyadic::from_rat_up(&x, 48);
        prop_assert!(down.to_rat() <= x);
        prop_assert!(x <= up.to_rat());
    }

    #[test]
    fn enclosure_ring_ops_contain_exact_values(
        (alo, ahi, ax) in arb_interval(),
        (blo, bhi, bx) in arb_interval(),
    ) {
        let a = Enclosure::from_rat_endpoints(&alo, &ahi, 64);
        let b = Enclosure::from_rat_endpoints(&blo, &bhi, 64);
        prop_assert!(a.add(&b, 64).contains_rat(&(&ax + &bx)));
        prop_assert!(a.sub(&b, 64).contains_rat(&(&ax - &bx)));
        prop_assert!(a.mul(&b, 64).contains_rat(&(&ax * &bx)));
    }

    #[test]
    fn enclosure_division_contains_exact_quotient(
        (alo, ahi, ax) in arb_interval(),
        (blo, bhi, bx) in arb_interval(),
    ) {
        // shift the divisor strictly above zero
        let shift = Rat::new(int(8), int(1)) + blo.abs().max(bhi.abs());
        let b = Enclosure::from_rat_endpoints(&(&blo + &shift), &(&bhi + &shift), 64);
        let a = Enclosure::from_rat_endpoints(&alo, &ahi, 64);
        let q = a.div(&b, 64).unwrap();
        prop_assert!(q.contains_rat(&(&ax / (&bx + &shift))));
    }

    #[test]
    fn summand_antisymmetry_under_reflection(
        num in -300i64..300,
        den in 1i64..12,
        n in 1u32..4,
    ) {
        let spec = FormSpec::new(n, 7).unwrap();
        let f = build_rn(&spec);
        let t = Rat::new(int(num), int(den));
        let mirrored = -Rat::new(int(i64::from(n)), int(1)) - &t;
        if let (Ok(v), Ok(w)) = (f.evaluate(&t), f.evaluate(&mirrored)) {
            prop_assert_eq!(w, -v);
        }
    }
}
