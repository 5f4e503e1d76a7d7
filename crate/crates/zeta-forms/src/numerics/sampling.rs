//! Randomized containment testing of the enclosure contract.
//!
//! For every operation class: build random input enclosures, pick an exact
//! rational point inside each, apply the operation both ways, and check the
//! point image lands inside the output interval. Arithmetic images are
//! exact rationals; transcendental images are squeezed through a much
//! tighter enclosure that must nest inside the coarse one.

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enclosure::Enclosure;
use crate::arith::{rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpClass {
    Add,
    Sub,
    Mul,
    Div,
    Log,
    Exp,
    Root,
}

impl OpClass {
    pub const ALL: [OpClass; 7] = [
        OpClass::Add,
        OpClass::Sub,
        OpClass::Mul,
        OpClass::Div,
        OpClass::Log,
        OpClass::Exp,
        OpClass::Root,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OpClass::Add => "add",
            OpClass::Sub => "sub",
            OpClass::Mul => "mul",
            OpClass::Div => "div",
            OpClass::Log => "log",
            OpClass::Exp => "exp",
            OpClass::Root => "root",
        }
    }
}

struct SampledInterval {
    enclosure: Enclosure,
    point: Rat,
}

fn sample_interval(rng: &mut ChaCha8Rng, positive: bool, small: bool) -> SampledInterval {
    let span = if small { 40 } else { 1_000_000 };
    let den = rng.gen_range(1..=997i64);
    let mid = if positive {
        rat(rng.gen_range(1..=span), den)
    } else {
        rat(rng.gen_range(-span..=span), den)
    };
    let rad = if positive {
        // keep the whole interval strictly positive
        &mid * rat(rng.gen_range(0..=400), 1000)
    } else {
        rat(rng.gen_range(0..=10_000), den * 7 + 1)
    };
    let lo = &mid - &rad;
    let hi = &mid + &rad;
    let bits = rng.gen_range(32..=96u64);
    let enclosure = Enclosure::from_rat_endpoints(&lo, &hi, bits);
    // a point strictly inside the sampled rational interval
    let t = rat(rng.gen_range(0..=1000), 1000);
    let point = &lo + (&hi - &lo) * t;
    SampledInterval { enclosure, point }
}

/// Run `samples` trials of one operation class; returns the number of
/// containment violations (must be zero).
pub fn containment_failures(op: OpClass, samples: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (op as u64) << 32);
    let bits = 64u64;
    let mut failures = 0;
    for _ in 0..samples {
        let ok = match op {
            OpClass::Add | OpClass::Sub | OpClass::Mul => {
                let a = sample_interval(&mut rng, false, false);
                let b = sample_interval(&mut rng, false, false);
                let (out, exact) = match op {
                    OpClass::Add => (a.enclosure.add(&b.enclosure, bits), &a.point + &b.point),
                    OpClass::Sub => (a.enclosure.sub(&b.enclosure, bits), &a.point - &b.point),
                    _ => (a.enclosure.mul(&b.enclosure, bits), &a.point * &b.point),
                };
                out.contains_rat(&exact)
            }
            OpClass::Div => {
                let a = sample_interval(&mut rng, false, false);
                let mut b = sample_interval(&mut rng, true, false);
                if rng.gen_bool(0.5) {
                    b = SampledInterval {
                        enclosure: b.enclosure.neg(),
                        point: -b.point,
                    };
                }
                let out = a
                    .enclosure
                    .div(&b.enclosure, bits)
                    .expect("divisor sign-definite");
                out.contains_rat(&(&a.point / &b.point))
            }
            OpClass::Log => {
                let a = sample_interval(&mut rng, true, false);
                let out = a.enclosure.log(bits).expect("positive interval");
                let tight = Enclosure::from_rat(&a.point, bits + 80)
                    .log(bits + 80)
                    .expect("positive point");
                out.contains(&tight)
            }
            OpClass::Exp => {
                let a = sample_interval(&mut rng, false, true);
                let out = a.enclosure.exp(bits);
                let tight = Enclosure::from_rat(&a.point, bits + 80).exp(bits + 80);
                out.contains(&tight)
            }
            OpClass::Root => {
                let a = sample_interval(&mut rng, true, false);
                let m = rng.gen_range(2..=5u32);
                let out = a.enclosure.nth_root(m, bits).expect("nonnegative interval");
                let tight = Enclosure::from_rat(&a.point, bits + 80)
                    .nth_root(m, bits + 80)
                    .expect("nonnegative point");
                out.contains(&tight)
            }
        };
        if !ok {
            failures += 1;
        }
    }
    failures
}

/// True point images can also be checked against degenerate (zero-radius)
/// inputs; exposed for the self-test mode.
pub fn exact_point_roundtrip(seed: u64, samples: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..samples {
        let p = rat(rng.gen_range(-9999..=9999), rng.gen_range(1..=64));
        let e = Enclosure::from_rat(&p, 128);
        if !e.contains_rat(&p) {
            failures += 1;
        }
        if e.rad_rat() > rat(1, 1i64 << 62) * p.abs().max(Rat::one()) {
            failures += 1;
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moderate_sampling_finds_no_violations() {
        for op in OpClass::ALL {
            assert_eq!(
                containment_failures(op, 300, 42),
                0,
                "violations in {}",
                op.name()
            );
        }
    }

    #[test]
    fn exact_points_roundtrip() {
        assert_eq!(exact_point_roundtrip(7, 500), 0);
    }
}
