//! Arbitrary-precision binary floating point.
//!
//! A `BigFloat` is a mantissa/exponent pair `m * 2^e` kept normalized to a
//! configurable working precision (in bits, at least 64). Arithmetic rounds
//! to nearest, ties to even. Error control in the continuation engine is by
//! step doubling, so no radius is tracked here.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

pub const MIN_PRECISION: u32 = 64;

#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn clamp_prec(prec: u32) -> u32 {
    prec.max(MIN_PRECISION)
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec: clamp_prec(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_bigint(BigInt::from(v), prec)
    }

    pub fn from_bigint(v: BigInt, prec: u32) -> Self {
        BigFloat { mant: v, exp: 0, prec: clamp_prec(prec) }.normalized()
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "cannot convert non-finite f64");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let (m, e) = decompose_f64(v);
        BigFloat { mant: BigInt::from(m), exp: e, prec: clamp_prec(prec) }.normalized()
    }

    /// Round `num/den` to `prec` bits.
    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let prec = clamp_prec(prec);
        if r.numer().is_zero() {
            return Self::zero(prec);
        }
        let num = r.numer().clone();
        let den = r.denom().clone();
        // Scale the numerator so the quotient has prec + 2 significant bits.
        let shift = (den.bits() as i64 - num.bits() as i64) + prec as i64 + 2;
        let scaled = if shift >= 0 { num << shift as u64 } else { num >> (-shift) as u64 };
        let q = div_round_nearest(&scaled, &den);
        BigFloat { mant: q, exp: -shift, prec }.normalized()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        BigFloat { mant: self.mant.clone(), exp: self.exp, prec: clamp_prec(prec) }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let bits = self.mant.bits() as i64;
        let excess = bits - self.prec as i64;
        if excess > 0 {
            let rounded = shift_round_nearest(&self.mant, excess as u64);
            self.mant = rounded;
            self.exp += excess;
            // Rounding may carry into one extra bit.
            let bits = self.mant.bits() as i64;
            let over = bits - self.prec as i64;
            if over > 0 {
                self.mant = shift_round_nearest(&self.mant, over as u64);
                self.exp += over;
            }
        }
        self
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -self.mant.clone(), exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return other.with_precision(prec);
        }
        if other.is_zero() {
            return self.with_precision(prec);
        }
        // If the operands are too far apart the small one only contributes a
        // sticky bit; clamp the alignment shift to keep mantissas bounded.
        let gap = (self.exp + self.mant.bits() as i64) - (other.exp + other.mant.bits() as i64);
        let limit = prec as i64 + 4;
        let (a, b) = if gap > limit {
            (self.clone(), other.tiny_placeholder(self, prec))
        } else if gap < -limit {
            (other.clone(), self.tiny_placeholder(other, prec))
        } else {
            (self.clone(), other.clone())
        };
        let (lo, hi) = if a.exp <= b.exp { (a, b) } else { (b, a) };
        let shifted = hi.mant << (hi.exp - lo.exp) as u64;
        BigFloat { mant: shifted + lo.mant, exp: lo.exp, prec }.normalized()
    }

    // Replace a negligibly small operand by +-1 ulp-of-ulp relative to `big`.
    fn tiny_placeholder(&self, big: &Self, prec: u32) -> Self {
        let exp = big.exp + big.mant.bits() as i64 - prec as i64 - 8;
        let one = if self.is_negative() { -BigInt::one() } else { BigInt::one() };
        BigFloat { mant: one, exp, prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        BigFloat { mant: &self.mant * &other.mant, exp: self.exp + other.exp, prec }.normalized()
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift = (other.mant.bits() as i64 - self.mant.bits() as i64) + prec as i64 + 2;
        let scaled = if shift >= 0 { self.mant.clone() << shift as u64 } else { self.mant.clone() >> (-shift) as u64 };
        let q = div_round_nearest(&scaled, &other.mant);
        BigFloat { mant: q, exp: self.exp - other.exp - shift, prec }.normalized()
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigFloat { mant: &self.mant * BigInt::from(k), exp: self.exp, prec: self.prec }.normalized()
    }

    /// Exact multiplication by 2^k.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            self.clone()
        } else {
            BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
        }
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }

    /// floor(log2 |x|) + 1, i.e. the binary magnitude; i64::MIN for zero.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let drop = bits - 60;
        let (m, e) = if drop > 0 {
            ((&self.mant >> drop as u64).to_i64().unwrap(), self.exp + drop)
        } else {
            (self.mant.to_i64().unwrap(), self.exp)
        };
        (m as f64) * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// Nearest rational with denominator a power of two (exact value).
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from(self.mant.clone() << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn powi(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Positive n-th root by Newton iteration; requires self > 0.
    pub fn nth_root(&self, n: u32) -> Self {
        assert!(n >= 1);
        if self.is_zero() {
            return self.clone();
        }
        assert!(!self.is_negative(), "nth_root needs a nonnegative argument");
        if n == 1 {
            return self.clone();
        }
        let prec = self.prec;
        let work = prec + 16;
        let x = self.with_precision(work);
        // Reduce the exponent so the f64 seed is in range: x = m * 2^(n*q + r).
        let mag = x.magnitude();
        let q = mag.div_euclid(n as i64);
        let xr = x.shift(-(q * n as i64));
        let seed = xr.to_f64().powf(1.0 / n as f64);
        let mut y = Self::from_f64(seed, work);
        let nf = Self::from_i64(n as i64, work);
        for _ in 0..(work.ilog2() as usize + 64) {
            // y <- y - (y^n - xr) / (n y^(n-1))
            let yn1 = y.powi(n as u64 - 1);
            let yn = yn1.mul(&y);
            let delta = yn.sub(&xr).div(&yn1.mul(&nf));
            let next = y.sub(&delta);
            if next.sub(&y).magnitude() < y.magnitude() - work as i64 + 2 {
                y = next;
                break;
            }
            y = next;
        }
        y.shift(q).with_precision(prec)
    }

    pub fn sqrt(&self) -> Self {
        self.nth_root(2)
    }

    /// x^(p/q) for positive x and rational exponent.
    pub fn pow_rational(&self, num: i64, den: u32) -> Self {
        assert!(den >= 1);
        if num == 0 {
            return Self::one(self.prec);
        }
        let root = if den == 1 { self.clone() } else { self.nth_root(den) };
        let p = root.powi(num.unsigned_abs());
        if num < 0 {
            Self::one(self.prec).div(&p)
        } else {
            p
        }
    }

    /// Natural logarithm via atanh series after binary argument reduction;
    /// requires self > 0.
    pub fn ln(&self) -> Self {
        assert!(!self.is_negative() && !self.is_zero(), "ln needs a positive argument");
        let prec = self.prec;
        let work = prec + 32;
        let x = self.with_precision(work);
        // x = m * 2^e with m in [1, 2)
        let e = x.magnitude() - 1;
        let m = x.shift(-e);
        // Pull m towards 1 to speed the series: if m > sqrt(2), halve it.
        let sqrt2 = Self::from_i64(2, work).sqrt();
        let (m, e) = if m.cmp(&sqrt2) == Ordering::Greater { (m.shift(-1), e + 1) } else { (m, e) };
        let ln_m = atanh_ln(&m, work);
        let ln2 = ln2(work);
        ln_m.add(&ln2.mul(&Self::from_i64(e, work))).with_precision(prec)
    }

    /// Number of leading bits on which the two values agree (relative).
    pub fn agreement_bits(&self, other: &Self) -> i64 {
        let diff = self.sub(other);
        if diff.is_zero() {
            return self.prec.min(other.prec) as i64;
        }
        let scale = self.magnitude().max(other.magnitude());
        scale - diff.magnitude()
    }

    /// Decimal digit string; `round` selects correct rounding vs truncation.
    pub fn to_decimal(&self, digits: usize, round: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let m = self.mant.abs();
        // |x| = m * 2^exp; find d10 = floor(log10 |x|) roughly, then scale to
        // `digits` significant decimal digits.
        let log10 = (self.magnitude() - 1) as f64 * std::f64::consts::LN_2 / std::f64::consts::LN_10;
        let mut d10 = log10.floor() as i64;
        loop {
            // target integer t = round(|x| * 10^(digits-1-d10))
            let k = digits as i64 - 1 - d10;
            let t = scale_decimal(&m, self.exp, k, round);
            let s = t.to_string();
            let got = s.len() as i64;
            if got == digits as i64 {
                return format_decimal(&s, d10, neg);
            }
            // Adjust the estimated magnitude and retry.
            d10 += got - digits as i64;
        }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.sub(other);
        if d.is_zero() {
            Ordering::Equal
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec as f64 * 0.301).ceil() as usize;
        write!(f, "{}", self.to_decimal(digits.max(6), true))
    }
}

fn decompose_f64(v: f64) -> (i64, i64) {
    let bits = v.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    if exp == 0 {
        (sign * frac, -1074)
    } else {
        (sign * (frac + (1i64 << 52)), exp - 1075)
    }
}

fn div_round_nearest(num: &BigInt, den: &BigInt) -> BigInt {
    use num_integer::Integer;
    let (mut q, r) = num.div_rem(den);
    // Round-to-nearest (half away from zero on the remainder; ties this way
    // are fine since we carry two guard bits everywhere).
    let r2 = r.abs() << 1;
    if r2 >= den.abs() {
        if (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus) {
            q -= 1;
        } else {
            q += 1;
        }
    }
    q
}

fn shift_round_nearest(v: &BigInt, shift: u64) -> BigInt {
    let floor = v >> shift;
    let rem = v - (&floor << shift);
    let half = BigInt::one() << (shift - 1);
    match rem.cmp(&half) {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            // ties to even
            use num_integer::Integer;
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

fn scale_decimal(m: &BigInt, exp: i64, k: i64, round: bool) -> BigInt {
    // compute m * 2^exp * 10^k as a rounded/truncated integer
    let mut num = m.clone();
    let mut den = BigInt::one();
    if exp >= 0 {
        num <<= exp as u64;
    } else {
        den <<= (-exp) as u64;
    }
    if k >= 0 {
        num *= BigInt::from(10u32).pow(k as u32);
    } else {
        den *= BigInt::from(10u32).pow((-k) as u32);
    }
    if round {
        div_round_nearest(&num, &den)
    } else {
        num / den
    }
}

fn format_decimal(digits: &str, d10: i64, neg: bool) -> String {
    let sign = if neg { "-" } else { "" };
    if d10 >= 0 && (d10 as usize) < digits.len() {
        let (int, frac) = digits.split_at(d10 as usize + 1);
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else if d10 < 0 && d10 > -7 {
        let zeros = "0".repeat((-d10 - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    } else {
        let (first, rest) = digits.split_at(1);
        format!("{sign}{first}.{rest}e{d10}")
    }
}

fn atanh_ln(m: &BigFloat, prec: u32) -> BigFloat {
    // ln m = 2 atanh((m-1)/(m+1)); |argument| <= 0.18 after reduction.
    let one = BigFloat::one(prec);
    let z = m.sub(&one).div(&m.add(&one));
    let z2 = z.mul(&z);
    let mut term = z.clone();
    let mut sum = z.clone();
    let mut k = 1i64;
    loop {
        term = term.mul(&z2);
        k += 2;
        let contrib = term.div(&BigFloat::from_i64(k, prec));
        sum = sum.add(&contrib);
        if contrib.magnitude() < sum.magnitude() - prec as i64 - 4 {
            break;
        }
    }
    sum.shift(1)
}

/// ln 2 = 2 atanh(1/3).
fn ln2(prec: u32) -> BigFloat {
    let third = BigFloat::from_rational(&BigRational::new(BigInt::one(), BigInt::from(3)), prec);
    let z2 = third.mul(&third);
    let mut term = third.clone();
    let mut sum = third;
    let mut k = 1i64;
    loop {
        term = term.mul(&z2);
        k += 2;
        let contrib = term.div(&BigFloat::from_i64(k, prec));
        sum = sum.add(&contrib);
        if contrib.magnitude() < sum.magnitude() - prec as i64 - 4 {
            break;
        }
    }
    sum.shift(1)
}

/// pi by Machin's formula, 16 atan(1/5) - 4 atan(1/239).
pub fn pi(prec: u32) -> BigFloat {
    let work = clamp_prec(prec) + 32;
    let a = atan_inv(5, work);
    let b = atan_inv(239, work);
    a.mul_i64(16).sub(&b.mul_i64(4)).with_precision(clamp_prec(prec))
}

fn atan_inv(q: i64, prec: u32) -> BigFloat {
    // atan(1/q) = sum (-1)^k / ((2k+1) q^(2k+1))
    let x = BigFloat::one(prec).div(&BigFloat::from_i64(q, prec));
    let x2 = x.mul(&x);
    let mut term = x.clone();
    let mut sum = x;
    let mut k = 1i64;
    loop {
        term = term.mul(&x2).neg();
        let contrib = term.div(&BigFloat::from_i64(2 * k + 1, prec));
        sum = sum.add(&contrib);
        if contrib.is_zero() || contrib.magnitude() < sum.magnitude() - prec as i64 - 4 {
            break;
        }
        k += 1;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_roundtrip() {
        let x = BigFloat::from_rational(&rat(1, 3), 128);
        let back = x.to_rational();
        let err = (&back - rat(1, 3)).abs();
        assert!(err < rat(1, 1i64 << 62) * rat(1, 1i64 << 62));
    }

    #[test]
    fn arithmetic_basics() {
        let a = BigFloat::from_rational(&rat(7, 2), 96);
        let b = BigFloat::from_rational(&rat(-1, 4), 96);
        assert_eq!(a.add(&b).to_f64(), 3.25);
        assert_eq!(a.mul(&b).to_f64(), -0.875);
        assert_eq!(a.sub(&a).to_f64(), 0.0);
        let q = a.div(&b);
        assert_eq!(q.to_f64(), -14.0);
    }

    #[test]
    fn sqrt_two() {
        let two = BigFloat::from_i64(2, 256);
        let r = two.sqrt();
        let r2 = r.mul(&r);
        assert!(r2.agreement_bits(&two) > 250);
        let s = r.to_decimal(20, true);
        assert!(s.starts_with("1.41421356237309504"), "{s}");
    }

    #[test]
    fn cube_root() {
        let x = BigFloat::from_i64(100, 200);
        let r = BigFloat::one(200).div(&x.nth_root(3));
        let s = r.to_decimal(10, true);
        assert!(s.starts_with("0.215443469"), "{s}");
    }

    #[test]
    fn ln_and_pi() {
        let e10 = BigFloat::from_i64(10, 192).ln();
        let s = e10.to_decimal(16, true);
        assert!(s.starts_with("2.30258509299404"), "{s}");
        let p = pi(256);
        let s = p.to_decimal(30, true);
        assert!(s.starts_with("3.1415926535897932384626433832"), "{s}");
    }

    #[test]
    fn decimal_truncation() {
        let x = BigFloat::from_rational(&rat(1999, 1000), 128);
        assert_eq!(x.to_decimal(3, false), "1.99");
        assert_eq!(x.to_decimal(4, true), "1.999");
    }

    #[test]
    fn magnitude_gap_addition() {
        let big = BigFloat::from_i64(1, 64).shift(300);
        let small = BigFloat::from_i64(1, 64);
        let s = big.add(&small);
        // a 2^-300 relative perturbation rounds away at 64-bit precision
        assert_eq!(s.cmp(&big), Ordering::Equal);
    }
}
