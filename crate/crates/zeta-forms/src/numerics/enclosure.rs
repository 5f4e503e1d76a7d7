//! Midpoint-radius enclosures over dyadic numbers.
//!
//! The contract for every operation: the true image of the input intervals
//! lies inside the output interval. Addition, subtraction and
//! multiplication of dyadics are exact, so those ops only widen through the
//! explicit `compress` step; division and the transcendental maps go
//! through directed endpoint rounding backed by exact rational series with
//! certified tail bounds.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use super::dyadic::Dyadic;
use super::NumericsError;
use crate::arith::{Int, Rat};

/// The sign of an enclosure, when 0 is excluded from the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone)]
pub struct Enclosure {
    mid: Dyadic,
    rad: Dyadic, // nonnegative
}

impl Enclosure {
    pub fn exact(mid: Dyadic) -> Self {
        Enclosure {
            mid,
            rad: Dyadic::zero(),
        }
    }

    pub fn exact_int(v: Int) -> Self {
        Enclosure::exact(Dyadic::from_int(v))
    }

    pub fn exact_i64(v: i64) -> Self {
        Enclosure::exact(Dyadic::from_i64(v))
    }

    pub fn from_endpoints(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(
            lo.cmp_value(&hi) != Ordering::Greater,
            "endpoints out of order"
        );
        let two_mid = lo.add(&hi);
        let two_rad = hi.sub(&lo);
        Enclosure {
            mid: two_mid.shift(-1),
            rad: two_rad.shift(-1),
        }
    }

    /// Tight enclosure of a rational at `bits` of precision (exact when the
    /// denominator is a power of two).
    pub fn from_rat(q: &Rat, bits: u64) -> Self {
        let lo = Dyadic::from_rat_down(q, bits);
        let hi = Dyadic::from_rat_up(q, bits);
        Enclosure::from_endpoints(lo, hi)
    }

    pub fn from_rat_endpoints(lo: &Rat, hi: &Rat, bits: u64) -> Self {
        assert!(lo <= hi);
        Enclosure::from_endpoints(
            Dyadic::from_rat_down(lo, bits),
            Dyadic::from_rat_up(hi, bits),
        )
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn lo(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn hi(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    pub fn mid_rat(&self) -> Rat {
        self.mid.to_rat()
    }

    pub fn rad_rat(&self) -> Rat {
        self.rad.to_rat()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Certified sign; `None` when the interval straddles 0.
    pub fn sign(&self) -> Option<Sign> {
        if self.mid.is_zero() && self.rad.is_zero() {
            return Some(Sign::Zero);
        }
        if self.lo().is_positive() {
            return Some(Sign::Positive);
        }
        if self.hi().is_negative() {
            return Some(Sign::Negative);
        }
        None
    }

    pub fn contains_rat(&self, q: &Rat) -> bool {
        (q - self.mid_rat()).abs() <= self.rad_rat()
    }

    pub fn contains(&self, other: &Enclosure) -> bool {
        self.lo().cmp_value(&other.lo()) != Ordering::Greater
            && other.hi().cmp_value(&self.hi()) != Ordering::Greater
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        let gap = self.mid.sub(&other.mid).abs();
        gap.cmp_value(&self.rad.add(&other.rad)) != Ordering::Greater
    }

    /// Bounds mantissa growth; the only place where midpoint information is
    /// deliberately dropped, with the loss pushed into the radius.
    pub fn compress(&self, bits: u64) -> Enclosure {
        let slack = bits + 64;
        let mut rad = self.rad.clone();
        let mut mid = self.mid.clone();
        if mid.mant_bits() > slack {
            let ulp = mid.round_ulp(bits);
            mid = mid.round_down(bits);
            rad = rad.add(&ulp);
        }
        if rad.mant_bits() > 64 {
            rad = rad.round_up(64);
        }
        Enclosure { mid, rad }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, rhs: &Enclosure, bits: u64) -> Enclosure {
        Enclosure {
            mid: self.mid.add(&rhs.mid),
            rad: self.rad.add(&rhs.rad),
        }
        .compress(bits)
    }

    pub fn sub(&self, rhs: &Enclosure, bits: u64) -> Enclosure {
        self.add(&rhs.neg(), bits)
    }

    pub fn mul(&self, rhs: &Enclosure, bits: u64) -> Enclosure {
        let mid = self.mid.mul(&rhs.mid);
        let rad = self
            .mid
            .abs()
            .mul(&rhs.rad)
            .add(&rhs.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&rhs.rad));
        Enclosure { mid, rad }.compress(bits)
    }

    pub fn mul_rat(&self, q: &Rat, bits: u64) -> Enclosure {
        self.mul(&Enclosure::from_rat(q, bits + 32), bits)
    }

    pub fn add_rat(&self, q: &Rat, bits: u64) -> Enclosure {
        self.add(&Enclosure::from_rat(q, bits + 32), bits)
    }

    pub fn div(&self, rhs: &Enclosure, bits: u64) -> Result<Enclosure, NumericsError> {
        if rhs.sign().is_none() || rhs.sign() == Some(Sign::Zero) {
            return Err(NumericsError::DivisorStraddlesZero);
        }
        let (a_lo, a_hi) = (self.lo().to_rat(), self.hi().to_rat());
        let (b_lo, b_hi) = (rhs.lo().to_rat(), rhs.hi().to_rat());
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for a in [&a_lo, &a_hi] {
            for b in [&b_lo, &b_hi] {
                let q = a / b;
                if lo.as_ref().is_none_or(|v| q < *v) {
                    lo = Some(q.clone());
                }
                if hi.as_ref().is_none_or(|v| q > *v) {
                    hi = Some(q);
                }
            }
        }
        Ok(Enclosure::from_rat_endpoints(
            &lo.unwrap(),
            &hi.unwrap(),
            bits,
        ))
    }

    /// Natural log; requires a strictly positive interval.
    pub fn log(&self, bits: u64) -> Result<Enclosure, NumericsError> {
        if !self.lo().is_positive() {
            return Err(NumericsError::LogOfNonPositive);
        }
        let (lo, _) = log_dyadic_bounds(&self.lo(), bits);
        let (_, hi) = log_dyadic_bounds(&self.hi(), bits);
        Ok(Enclosure::from_rat_endpoints(&lo, &hi, bits))
    }

    pub fn exp(&self, bits: u64) -> Enclosure {
        let (lo, _) = exp_dyadic_bounds(&self.lo(), bits);
        let (_, hi) = exp_dyadic_bounds(&self.hi(), bits);
        Enclosure::from_rat_endpoints(&lo, &hi, bits)
    }

    /// m-th root; requires a nonnegative interval and m >= 1.
    pub fn nth_root(&self, m: u32, bits: u64) -> Result<Enclosure, NumericsError> {
        assert!(m >= 1);
        if self.lo().is_negative() {
            return Err(NumericsError::RootOfNegative);
        }
        let lo = nth_root_dyadic(&self.lo(), m, bits).0;
        let hi = nth_root_dyadic(&self.hi(), m, bits).1;
        Ok(Enclosure::from_endpoints(lo, hi))
    }

    /// Render as (decimal midpoint, upper-bounded radius). The printed pair
    /// still encloses the true value: the truncation error of the midpoint
    /// string is added to the printed radius.
    pub fn to_decimal_parts(&self, frac_digits: u32) -> (String, String) {
        let mid = self.mid.to_decimal(frac_digits);
        let trunc = Dyadic::from_rat_up(
            &Rat::new(
                Int::one(),
                num_traits::pow::pow(Int::from(10), frac_digits as usize),
            ),
            16,
        );
        let rad = self.rad.add(&trunc).to_sci_upper();
        (mid, rad)
    }
}

/// ln 2 as a certified rational bracket.
pub fn ln2_bounds(bits: u64) -> (Rat, Rat) {
    // ln 2 = 2 atanh(1/3)
    let (lo, hi) = atanh_bounds(&Rat::new(Int::one(), Int::from(3)), bits + 4);
    (
        lo * Rat::from_integer(Int::from(2)),
        hi * Rat::from_integer(Int::from(2)),
    )
}

/// Fixed-point integer interval: value in [lo, hi] / 2^w. Keeping the
/// series kernels on plain integers (shift = division by 2^w, directed)
/// sidesteps the quadratic gcd churn of exact rational partial sums.
struct Fx {
    lo: Int,
    hi: Int,
}

fn shr_floor(x: Int, w: u64) -> Int {
    x >> w // BigInt shr rounds toward negative infinity
}

fn shr_ceil(x: Int, w: u64) -> Int {
    -((-x) >> w)
}

impl Fx {
    fn from_rat(q: &Rat, w: u64) -> Fx {
        let scaled = q * Rat::from_integer(Int::one() << w);
        let lo = scaled.numer().div_floor(scaled.denom());
        Fx { hi: &lo + 1, lo }
    }

    fn mul(&self, rhs: &Fx, w: u64) -> Fx {
        let mut lo: Option<Int> = None;
        let mut hi: Option<Int> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&rhs.lo, &rhs.hi] {
                let p = a * b;
                if lo.as_ref().is_none_or(|v| p < *v) {
                    lo = Some(p.clone());
                }
                if hi.as_ref().is_none_or(|v| p > *v) {
                    hi = Some(p);
                }
            }
        }
        Fx {
            lo: shr_floor(lo.unwrap(), w),
            hi: shr_ceil(hi.unwrap(), w),
        }
    }

    fn div_u64(&self, d: u64) -> Fx {
        let d = Int::from(d);
        Fx {
            lo: self.lo.div_floor(&d),
            hi: self.hi.div_ceil(&d),
        }
    }

    fn add_assign(&mut self, rhs: &Fx) {
        self.lo += &rhs.lo;
        self.hi += &rhs.hi;
    }

    fn abs_hi(&self) -> Int {
        self.lo.abs().max(self.hi.abs())
    }

    fn to_rats(&self, w: u64) -> (Rat, Rat) {
        let scale = Int::one() << w;
        (
            Rat::new(self.lo.clone(), scale.clone()),
            Rat::new(self.hi.clone(), scale),
        )
    }
}

/// atanh(z) for 0 <= z <= 1/2, by the odd power series in fixed point with
/// outward rounding and a geometric tail bound.
fn atanh_bounds(z: &Rat, bits: u64) -> (Rat, Rat) {
    assert!(!z.is_negative() && *z <= Rat::new(Int::one(), Int::from(2)));
    let w = bits + 16;
    let z_fx = Fx::from_rat(z, w);
    let z2 = z_fx.mul(&z_fx, w);
    let mut term = Fx {
        lo: z_fx.lo.clone(),
        hi: z_fx.hi.clone(),
    };
    let mut sum = Fx {
        lo: Int::zero(),
        hi: Int::zero(),
    };
    let mut j = 0u64;
    loop {
        sum.add_assign(&term.div_u64(2 * j + 1));
        term = term.mul(&z2, w);
        j += 1;
        if term.hi <= Int::from(2 * j + 1) {
            break;
        }
        assert!(j < 4 * w, "atanh series failed to converge");
    }
    // remaining true tail: each omitted contribution is at most one ulp
    // before the geometric factor; z^2 <= 1/4 makes the whole tail < 2 ulps
    sum.hi += 2;
    sum.to_rats(w)
}

/// Certified rational bracket of ln(x) for a positive dyadic x.
pub fn log_dyadic_bounds(x: &Dyadic, bits: u64) -> (Rat, Rat) {
    assert!(x.is_positive(), "log of non-positive dyadic");
    let k = x.log2_floor();
    let y = x.shift(-k).to_rat(); // y in [1, 2)
    debug_assert!(y >= Rat::one() && y < Rat::from_integer(Int::from(2)));
    let z = (&y - Rat::one()) / (&y + Rat::one()); // in [0, 1/3)
                                                   // bracket z between dyadics so the series below works over power-of-two
                                                   // denominators instead of whatever y's denominator conjures up
    let z_lo = Dyadic::from_rat_down(&z, bits + 8).to_rat();
    let z_hi = Dyadic::from_rat_up(&z, bits + 8).to_rat();
    let (a_lo, _) = atanh_bounds(&z_lo.max(Rat::zero()), bits + 4);
    let (_, a_hi) = atanh_bounds(&z_hi, bits + 4);
    let two = Rat::from_integer(Int::from(2));
    let (mut lo, mut hi) = (&two * a_lo, &two * a_hi);
    if k != 0 {
        let (l2_lo, l2_hi) = ln2_bounds(bits + 4);
        let kq = Rat::from_integer(Int::from(k));
        if k > 0 {
            lo += &kq * l2_lo;
            hi += &kq * l2_hi;
        } else {
            lo += &kq * l2_hi;
            hi += &kq * l2_lo;
        }
    }
    (lo, hi)
}

/// Certified rational bracket of exp(x) for a dyadic x.
pub fn exp_dyadic_bounds(x: &Dyadic, bits: u64) -> (Rat, Rat) {
    if x.is_zero() {
        return (Rat::one(), Rat::one());
    }
    // argument reduction: x = k ln2 + r, |r| <= 0.75
    let approx = rat_to_f64(&x.to_rat());
    let k = (approx / std::f64::consts::LN_2).round();
    assert!(k.abs() < 9e15, "exp argument out of supported range");
    let k = k as i64;
    let (l2_lo, l2_hi) = ln2_bounds(bits + 8);
    let kq = Rat::from_integer(Int::from(k));
    let x_rat = x.to_rat();
    let (r_lo, r_hi) = if k >= 0 {
        (&x_rat - &kq * &l2_hi, &x_rat - &kq * &l2_lo)
    } else {
        (&x_rat - &kq * &l2_lo, &x_rat - &kq * &l2_hi)
    };
    // dyadic bracketing keeps the series denominators to powers of two
    let r_lo = Dyadic::from_rat_down(&r_lo, bits + 8).to_rat();
    let r_hi = Dyadic::from_rat_up(&r_hi, bits + 8).to_rat();
    let (e_lo, _) = exp_series_bounds(&r_lo, bits + 8);
    let (_, e_hi) = exp_series_bounds(&r_hi, bits + 8);
    let scale = |q: Rat| -> Rat {
        if k >= 0 {
            q * Rat::from_integer(Int::one() << k as u64)
        } else {
            q / Rat::from_integer(Int::one() << (-k) as u64)
        }
    };
    (scale(e_lo), scale(e_hi))
}

/// exp of a rational with |r| <= 1, by the Taylor series in fixed point
/// with outward rounding and a factorial tail bound.
fn exp_series_bounds(r: &Rat, bits: u64) -> (Rat, Rat) {
    assert!(
        r.abs() <= Rat::one(),
        "reduced exp argument must satisfy |r| <= 1"
    );
    let w = bits + 16;
    let r_fx = Fx::from_rat(r, w);
    let one = Int::one() << w;
    let mut term = Fx {
        lo: one.clone(),
        hi: one.clone(),
    };
    let mut sum = Fx {
        lo: one.clone(),
        hi: one,
    };
    let mut j = 1u64;
    loop {
        term = term.mul(&r_fx, w).div_u64(j);
        sum.add_assign(&term);
        j += 1;
        if term.abs_hi() <= Int::from(j) && j >= 3 {
            break;
        }
        assert!(j < 4 * w, "exp series failed to converge");
    }
    // |true tail| <= |term_(j)| * sum_{m>=1} (1/(j+1))^m < one ulp * 2
    sum.lo -= 2;
    sum.hi += 2;
    sum.to_rats(w)
}

/// Directed m-th root of a nonnegative dyadic: returns (lo, hi) with
/// lo^m <= x <= hi^m and hi - lo <= 2^-bits scaled to the root's magnitude.
fn nth_root_dyadic(x: &Dyadic, m: u32, bits: u64) -> (Dyadic, Dyadic) {
    assert!(!x.is_negative());
    if x.is_zero() {
        return (Dyadic::zero(), Dyadic::zero());
    }
    let q = x.to_rat();
    // scale numerator so the integer root carries enough bits
    let num_bits = q.numer().bits() as i64 - q.denom().bits() as i64;
    let want = (bits as i64 + 2) * m as i64 - num_bits + m as i64;
    let t = (want.max(0) as u64).div_ceil(m as u64);
    let scaled: Int = (q.numer() << (m as u64 * t)) / q.denom();
    let root = scaled.nth_root(m);
    let lo = Dyadic::new(root.clone(), -(t as i64));
    let hi = Dyadic::new(root + 1, -(t as i64));
    // scaled was floor-divided, so root^m <= scaled <= x * 2^(mt) holds; the
    // upper side needs one extra check because of that floor
    let hi = if rat_pow_ge(&hi.to_rat(), m, &q) {
        hi
    } else {
        Dyadic::new(scaled.nth_root(m) + 2, -(t as i64))
    };
    (lo, hi)
}

fn rat_pow_ge(base: &Rat, m: u32, target: &Rat) -> bool {
    crate::arith::rat_pow(base, m) >= *target
}

/// Crude f64 view of a rational, used only to pick integer reduction
/// constants; never feeds a certified bound.
fn rat_to_f64(q: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        let num_bits = q.numer().bits() as i64;
        let den_bits = q.denom().bits() as i64;
        let sign = if q.is_negative() { -1.0 } else { 1.0 };
        sign * 2f64.powi((num_bits - den_bits) as i32)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    const B: u64 = 96;

    fn encl(p: i64, q: i64) -> Enclosure {
        Enclosure::from_rat(&rat(p, q), B)
    }

    #[test]
    fn arithmetic_contains_exact_values() {
        let a = encl(22, 7);
        let b = encl(-3, 11);
        assert!(a.add(&b, B).contains_rat(&(rat(22, 7) + rat(-3, 11))));
        assert!(a.sub(&b, B).contains_rat(&(rat(22, 7) - rat(-3, 11))));
        assert!(a.mul(&b, B).contains_rat(&(rat(22, 7) * rat(-3, 11))));
        let d = a.div(&b, B).unwrap();
        assert!(d.contains_rat(&(rat(22, 7) / rat(-3, 11))));
    }

    #[test]
    fn division_by_interval_containing_zero_is_rejected() {
        let a = encl(1, 1);
        let b = Enclosure::from_rat_endpoints(&rat(-1, 4), &rat(1, 4), B);
        assert!(matches!(
            a.div(&b, B),
            Err(NumericsError::DivisorStraddlesZero)
        ));
    }

    #[test]
    fn signs() {
        assert_eq!(encl(3, 5).sign(), Some(Sign::Positive));
        assert_eq!(encl(-3, 5).sign(), Some(Sign::Negative));
        assert_eq!(Enclosure::exact_i64(0).sign(), Some(Sign::Zero));
        let straddle = Enclosure::from_rat_endpoints(&rat(-1, 9), &rat(1, 7), B);
        assert_eq!(straddle.sign(), None);
    }

    #[test]
    fn log_exp_roundtrip_and_domain() {
        let x = encl(7, 2);
        let lx = x.log(B).unwrap();
        // 1.2527629684953679 < ln(3.5) < 1.2527629684953680
        assert!(lx.lo().to_rat() < rat(1252762968495368, 1_000_000_000_000_000));
        assert!(lx.hi().to_rat() > rat(12527629684953679, 10_000_000_000_000_000));
        let back = lx.exp(B);
        assert!(back.overlaps(&x));
        assert!(back.rad_rat() < rat(1, 1 << 60));

        assert!(matches!(
            encl(-1, 2).log(B),
            Err(NumericsError::LogOfNonPositive)
        ));
        let touches_zero = Enclosure::from_rat_endpoints(&rat(0, 1), &rat(1, 2), B);
        assert!(matches!(
            touches_zero.log(B),
            Err(NumericsError::LogOfNonPositive)
        ));
    }

    #[test]
    fn ln2_bracket() {
        let (lo, hi) = ln2_bounds(80);
        // 0.6931471805599453 < ln 2 < 0.6931471805599454
        assert!(lo < rat(6931471805599454, 10_000_000_000_000_000));
        assert!(hi > rat(6931471805599453, 10_000_000_000_000_000));
        assert!(&hi - &lo <= rat(1, 1 << 62));
    }

    #[test]
    fn exp_negative_argument() {
        let x = encl(-5, 1);
        let e = x.exp(B);
        // 0.006737946999085467 < e^-5 < 0.006737946999085468
        assert!(e.lo().to_rat() < rat(6737946999085468, 1_000_000_000_000_000_000));
        assert!(e.hi().to_rat() > rat(6737946999085467, 1_000_000_000_000_000_000));
        assert!(e.lo().is_positive());
    }

    #[test]
    fn roots() {
        let x = encl(2, 1);
        let r = x.nth_root(2, B).unwrap();
        let s2 = rat(1414213562373095048, 1_000_000_000_000_000_000);
        assert!((r.mid_rat() - s2).abs() < rat(1, 1_000_000_000_000_000));
        let c = encl(27, 8).nth_root(3, B).unwrap();
        assert!(c.contains_rat(&rat(3, 2)));
        assert!(c.rad_rat() < Rat::new(Int::one(), Int::one() << 80));
        assert!(matches!(
            encl(-2, 1).nth_root(2, B),
            Err(NumericsError::RootOfNegative)
        ));
    }

    #[test]
    fn nested_input_gives_nested_log() {
        let wide = Enclosure::from_rat_endpoints(&rat(3, 2), &rat(5, 2), B);
        let narrow = Enclosure::from_rat_endpoints(&rat(7, 4), &rat(9, 4), B);
        let lw = wide.log(B).unwrap();
        let ln = narrow.log(B).unwrap();
        assert!(lw.contains(&ln));
    }

    #[test]
    fn decimal_parts_enclose_value() {
        let x = Enclosure::from_rat(&rat(1, 3), 200);
        let (dec, rad) = x.to_decimal_parts(10);
        assert_eq!(dec, "0.3333333333");
        assert!(rad.starts_with('1') && rad.ends_with("e-10"), "{rad}");
    }
}
