//! Exact dyadic numbers: `mant * 2^exp` with a bignum mantissa.
//!
//! Addition, subtraction and multiplication are exact. Only explicit
//! rounding (`round_down`/`round_up`, directed division, conversion from a
//! rational) can lose information, and each such operation is directed, so
//! interval endpoints built from them stay certified.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: Int,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mant: Int::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mant: Int::one(),
            exp: 0,
        }
    }

    pub fn new(mant: Int, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn from_int(v: Int) -> Self {
        Dyadic::new(v, 0)
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::new(Int::from(v), 0)
    }

    /// Keeps the mantissa odd (or zero) so representations are canonical.
    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn mant_bits(&self) -> u64 {
        self.mant.bits()
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, rhs: &Dyadic) -> Dyadic {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }

    pub fn mul_int(&self, v: &Int) -> Dyadic {
        Dyadic::new(&self.mant * v, self.exp)
    }

    /// Exact scaling by 2^k.
    pub fn shift(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn cmp_value(&self, rhs: &Dyadic) -> Ordering {
        match (self.mant.sign(), rhs.mant.sign()) {
            (num_bigint::Sign::Minus, num_bigint::Sign::Plus | num_bigint::Sign::NoSign) => {
                return Ordering::Less
            }
            (num_bigint::Sign::Plus | num_bigint::Sign::NoSign, num_bigint::Sign::Minus) => {
                return Ordering::Greater
            }
            (num_bigint::Sign::NoSign, num_bigint::Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        a.cmp(&b)
    }

    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as u64)
        } else {
            Rat::new(self.mant.clone(), Int::one() << (-self.exp) as u64)
        }
    }

    /// Lower bound on floor(log2 |x|); exact within 1.
    pub fn log2_floor(&self) -> i64 {
        assert!(!self.is_zero());
        self.mant.bits() as i64 - 1 + self.exp
    }

    /// Largest dyadic with at most `bits` mantissa bits that is <= self.
    pub fn round_down(&self, bits: u64) -> Dyadic {
        self.round_dir(bits, false)
    }

    /// Smallest dyadic with at most `bits` mantissa bits that is >= self.
    pub fn round_up(&self, bits: u64) -> Dyadic {
        self.round_dir(bits, true)
    }

    fn round_dir(&self, bits: u64, up: bool) -> Dyadic {
        let nbits = self.mant.bits();
        if nbits <= bits {
            return self.clone();
        }
        let drop = nbits - bits;
        let floor_mant = self.mant.div_floor(&(Int::one() << drop));
        let mant = if up {
            // ceil = floor + 1 unless the drop was exact; mantissa is odd
            // here (normalized), so the drop is never exact.
            floor_mant + 1
        } else {
            floor_mant
        };
        Dyadic::new(mant, self.exp + drop as i64)
    }

    /// 2^e bounding the rounding step at `bits` mantissa bits: any
    /// `round_down`/`round_up` of self moves it by less than this.
    pub fn round_ulp(&self, bits: u64) -> Dyadic {
        let nbits = self.mant.bits();
        if nbits <= bits || self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: Int::one(),
            exp: self.exp + (nbits - bits) as i64,
        }
    }

    /// Directed rational-to-dyadic conversion with `bits` of precision
    /// below the leading bit of the value (absolute scale for |q| < 1 is
    /// 2^-bits).
    pub fn from_rat_down(q: &Rat, bits: u64) -> Dyadic {
        Self::from_rat_dir(q, bits, false)
    }

    pub fn from_rat_up(q: &Rat, bits: u64) -> Dyadic {
        Self::from_rat_dir(q, bits, true)
    }

    fn from_rat_dir(q: &Rat, bits: u64, up: bool) -> Dyadic {
        if q.is_zero() {
            return Dyadic::zero();
        }
        // scale so the quotient carries `bits` fractional bits plus the
        // integer part
        let shift = bits as i64 + (q.denom().bits() as i64 - q.numer().bits() as i64).max(0);
        let shift = shift.max(bits as i64) as u64;
        let scaled = q.numer() << shift;
        let quot = if up {
            scaled.div_ceil(q.denom())
        } else {
            scaled.div_floor(q.denom())
        };
        Dyadic::new(quot, -(shift as i64))
    }

    /// Directed division of dyadics, result correct to `bits` fractional
    /// bits of the exact quotient.
    pub fn div_down(&self, rhs: &Dyadic, bits: u64) -> Dyadic {
        Self::from_rat_down(&(self.to_rat() / rhs.to_rat()), bits)
    }

    pub fn div_up(&self, rhs: &Dyadic, bits: u64) -> Dyadic {
        Self::from_rat_up(&(self.to_rat() / rhs.to_rat()), bits)
    }

    /// Decimal rendering with `frac_digits` digits after the point,
    /// truncated toward minus infinity (deterministic).
    pub fn to_decimal(&self, frac_digits: u32) -> String {
        let pow10 = num_traits::pow::pow(Int::from(10), frac_digits as usize);
        let scaled: Int = if self.exp >= 0 {
            (&self.mant << self.exp as u64) * &pow10
        } else {
            (&self.mant * &pow10).div_floor(&(Int::one() << (-self.exp) as u64))
        };
        let neg = scaled.is_negative();
        let digits = scaled.abs().to_string();
        let digits = if digits.len() <= frac_digits as usize {
            format!(
                "{}{}",
                "0".repeat(frac_digits as usize + 1 - digits.len()),
                digits
            )
        } else {
            digits
        };
        let split = digits.len() - frac_digits as usize;
        let (ip, fp) = digits.split_at(split);
        let sign = if neg { "-" } else { "" };
        if frac_digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }

    /// Short scientific rendering of a nonnegative bound, rounded up to
    /// three significant digits, e.g. "4.02e-31". Used for radii.
    pub fn to_sci_upper(&self) -> String {
        assert!(!self.is_negative());
        if self.is_zero() {
            return "0".to_string();
        }
        // decimal exponent estimate from the binary one
        let log10 = (self.log2_floor() as f64) * std::f64::consts::LOG10_2;
        let mut e = log10.floor() as i64;
        // mantissa m with self <= m * 10^(e-2), 100 <= m < 1000 after fixup
        loop {
            let m = ceil_div_pow10(self, e - 2);
            if m >= Int::from(1000) {
                e += 1;
                continue;
            }
            if m < Int::from(100) {
                e -= 1;
                continue;
            }
            let s = m.to_string();
            return format!("{}.{}e{}", &s[..1], &s[1..3], e);
        }
    }
}

/// ceil(x / 10^k) for positive x, k possibly negative.
fn ceil_div_pow10(x: &Dyadic, k: i64) -> Int {
    let q = x.to_rat();
    let p10 = if k >= 0 {
        Rat::from_integer(num_traits::pow::pow(Int::from(10), k as usize))
    } else {
        Rat::new(
            Int::one(),
            num_traits::pow::pow(Int::from(10), (-k) as usize),
        )
    };
    let r = q / p10;
    r.numer().div_ceil(r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn exact_ring_ops() {
        let a = Dyadic::new(Int::from(3), -2); // 0.75
        let b = Dyadic::new(Int::from(5), -1); // 2.5
        assert_eq!(a.add(&b).to_rat(), rat(13, 4));
        assert_eq!(a.sub(&b).to_rat(), rat(-7, 4));
        assert_eq!(a.mul(&b).to_rat(), rat(15, 8));
        assert_eq!(a.cmp_value(&b), Ordering::Less);
        assert_eq!(a.neg().to_rat(), rat(-3, 4));
    }

    #[test]
    fn normalization_is_canonical() {
        assert_eq!(Dyadic::new(Int::from(8), -1), Dyadic::new(Int::from(1), 2));
        assert!(Dyadic::new(Int::zero(), 17).is_zero());
    }

    #[test]
    fn directed_rounding_brackets_value() {
        let x = Dyadic::new(Int::from(0xdead_beef_1234_5678u64 as i64), -40);
        for bits in [8, 16, 24] {
            let lo = x.round_down(bits);
            let hi = x.round_up(bits);
            assert!(lo.cmp_value(&x) != Ordering::Greater);
            assert!(hi.cmp_value(&x) != Ordering::Less);
            let ulp = x.round_ulp(bits);
            assert!(hi.sub(&lo).cmp_value(&ulp) != Ordering::Greater);
        }
    }

    #[test]
    fn rational_conversion_brackets_value() {
        let q = rat(22, 7);
        let lo = Dyadic::from_rat_down(&q, 60);
        let hi = Dyadic::from_rat_up(&q, 60);
        assert!(lo.to_rat() <= q && q <= hi.to_rat());
        assert!((hi.to_rat() - lo.to_rat()) <= rat(1, 1 << 59));

        let tiny = rat(1, 1_000_000_007);
        let lo = Dyadic::from_rat_down(&tiny, 80);
        let hi = Dyadic::from_rat_up(&tiny, 80);
        assert!(lo.to_rat() <= tiny && tiny <= hi.to_rat());
        assert!(
            lo.is_positive(),
            "directed conversion must keep scale for small values"
        );
    }

    #[test]
    fn decimal_rendering() {
        let x = Dyadic::new(Int::from(-7), -2); // -1.75
        assert_eq!(x.to_decimal(4), "-1.7500");
        assert_eq!(Dyadic::from_i64(3).to_decimal(2), "3.00");
        assert_eq!(Dyadic::zero().to_decimal(3), "0.000");
        assert_eq!(Dyadic::from_i64(12).to_decimal(0), "12");
    }

    #[test]
    fn sci_rendering_is_an_upper_bound() {
        let x = Dyadic::new(Int::from(3), -100);
        let s = x.to_sci_upper();
        assert!(s.ends_with("e-30"), "{s}");
        assert_eq!(Dyadic::zero().to_sci_upper(), "0");
        // 1/2^10 = 9.765625e-4, rounded up at 3 digits -> 9.77e-4
        assert_eq!(Dyadic::new(Int::one(), -10).to_sci_upper(), "9.77e-4");
    }
}
