//! Arbitrary-precision real numbers with an explicit working precision.
//!
//! `BigReal` wraps [`astro_float::BigFloat`] and carries the precision (in
//! bits) that every operation rounds to. Binary operations round to the
//! larger of the two operand precisions. Conversions to and from exact
//! rationals are lossless in the `BigReal -> Rational` direction and
//! correctly rounded in the other.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::Rational;

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Smallest precision accepted anywhere in the crate.
pub const MIN_BITS: usize = 16;

#[derive(Clone)]
pub struct BigReal {
    value: BigFloat,
    bits: usize,
}

impl BigReal {
    fn wrap(value: BigFloat, bits: usize) -> Self {
        BigReal { value, bits }
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_i64(0, bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_i64(1, bits)
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        Self::wrap(BigFloat::from_i64(v, bits.max(WORD_BITS)), bits)
    }

    pub fn from_u64(v: u64, bits: usize) -> Self {
        Self::wrap(BigFloat::from_u64(v, bits.max(WORD_BITS)), bits)
    }

    /// Exact conversion of an integer; the result keeps every bit of `n`
    /// and is then rounded to `bits`.
    pub fn from_bigint(n: &BigInt, bits: usize) -> Self {
        if n.is_zero() {
            return Self::zero(bits);
        }
        let words: Vec<Word> = n.magnitude().to_u64_digits();
        let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
        let exact = BigFloat::from_words(&words, sign, (words.len() * WORD_BITS) as i32);
        let mut out = Self::wrap(exact, bits);
        out.round_to(bits);
        out
    }

    /// Correctly rounded quotient numer/denom at `bits`.
    pub fn from_rational(q: &Rational, bits: usize) -> Self {
        let n = Self::from_bigint(q.numer(), bits + WORD_BITS);
        if q.denom().is_one() {
            let mut n = n;
            n.round_to(bits);
            return n;
        }
        let d = Self::from_bigint(q.denom(), bits + WORD_BITS);
        Self::wrap(n.value.div(&d.value, bits, RM), bits)
    }

    /// Parses a decimal (`0.25`, `-1.5e-3`) or fraction (`1/4`) literal exactly.
    pub fn parse(s: &str, bits: usize) -> Option<Self> {
        crate::exactnum::parse_rational(s).map(|q| Self::from_rational(&q, bits))
    }

    pub fn pi(bits: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(bits, RM)), bits)
    }

    pub fn ln2(bits: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.ln_2(bits, RM)), bits)
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Re-rounds to a new working precision.
    pub fn with_bits(&self, bits: usize) -> Self {
        let mut out = self.clone();
        out.round_to(bits);
        out
    }

    fn round_to(&mut self, bits: usize) {
        if self.is_finite() && !self.value.is_zero() {
            // Only fails for a precision of zero, which MIN_BITS rules out.
            let _ = self.value.set_precision(bits.max(WORD_BITS), RM);
        }
        self.bits = bits;
    }

    pub fn is_finite(&self) -> bool {
        !(self.value.is_nan() || self.value.is_inf())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative() && !self.value.is_zero()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.bits)
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.value.reciprocal(self.bits, RM), self.bits)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.value.sqrt(self.bits, RM), self.bits)
    }

    pub fn powi(&self, n: u32) -> Self {
        Self::wrap(self.value.powi(n as usize, self.bits, RM), self.bits)
    }

    /// Multiplies by 2^e exactly.
    pub fn ldexp(&self, e: i32) -> Self {
        if self.is_zero() || !self.is_finite() {
            return self.clone();
        }
        let mut v = self.value.clone();
        let exp = v.exponent().expect("finite value has an exponent");
        v.set_exponent(exp + e);
        Self::wrap(v, self.bits)
    }

    pub fn exp(&self) -> Self {
        Self::wrap(with_consts(|cc| self.value.exp(self.bits, RM, cc)), self.bits)
    }

    pub fn ln(&self) -> Self {
        Self::wrap(with_consts(|cc| self.value.ln(self.bits, RM, cc)), self.bits)
    }

    pub fn sin(&self) -> Self {
        Self::wrap(with_consts(|cc| self.value.sin(self.bits, RM, cc)), self.bits)
    }

    pub fn cos(&self) -> Self {
        Self::wrap(with_consts(|cc| self.value.cos(self.bits, RM, cc)), self.bits)
    }

    pub fn tan(&self) -> Self {
        Self::wrap(with_consts(|cc| self.value.tan(self.bits, RM, cc)), self.bits)
    }

    pub fn cot(&self) -> Self {
        self.tan().recip()
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// The exact dyadic rational this value represents. Panics on NaN/Inf.
    pub fn to_rational(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let (words, _, sign, exp, _) = self
            .value
            .as_raw_parts()
            .expect("to_rational on a non-finite value");
        let mantissa = BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        let sgn = if sign == Sign::Neg { BigSign::Minus } else { BigSign::Plus };
        let m = BigInt::from_biguint(sgn, mantissa);
        let shift = exp as i64 - (words.len() * WORD_BITS) as i64;
        if shift >= 0 {
            Rational::from_integer(m << shift as usize)
        } else {
            Rational::new(m, BigInt::one() << (-shift) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if !self.is_finite() {
            return f64::NAN;
        }
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Base-2 exponent e with 2^(e-1) <= |x| < 2^e; `None` for zero or non-finite.
    pub fn exponent(&self) -> Option<i32> {
        if self.is_zero() || !self.is_finite() {
            return None;
        }
        self.value.exponent()
    }

    /// Rounds to `digits` significant decimal digits. Returns the digit
    /// string and the decimal exponent of the leading digit.
    fn decimal_digits(&self, digits: usize) -> Option<(bool, String, i64)> {
        if self.is_zero() {
            return None;
        }
        let q = self.to_rational();
        let neg = q.is_negative();
        let q = q.abs();
        let bin_exp = self.exponent().unwrap_or(0) as f64;
        let mut e10 = ((bin_exp - 1.0) * std::f64::consts::LOG10_2).floor() as i64;
        let ten = BigInt::from(10u32);
        loop {
            let scale = digits as i64 - 1 - e10;
            let scaled = if scale >= 0 {
                &q * Rational::from_integer(ten.pow(scale as u32))
            } else {
                &q / Rational::from_integer(ten.pow((-scale) as u32))
            };
            let rounded = round_half_even(&scaled);
            let limit = ten.pow(digits as u32);
            if rounded >= limit {
                e10 += 1;
                continue;
            }
            if rounded < ten.pow(digits as u32 - 1) {
                e10 -= 1;
                continue;
            }
            return Some((neg, rounded.to_string(), e10));
        }
    }

    /// Positional notation with `digits` significant digits, e.g.
    /// `1.2020569031595942854`; falls back to scientific for very large or
    /// very small magnitudes.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if !self.is_finite() {
            return "NaN".into();
        }
        let Some((neg, ds, e10)) = self.decimal_digits(digits) else {
            return "0".into();
        };
        if !(-6..digits as i64).contains(&e10) {
            return self.to_scientific(digits);
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if e10 < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-e10 - 1) as usize));
            out.push_str(&ds);
        } else {
            let int_len = e10 as usize + 1;
            out.push_str(&ds[..int_len]);
            if int_len < ds.len() {
                out.push('.');
                out.push_str(&ds[int_len..]);
            }
        }
        out
    }

    /// Scientific notation, e.g. `3.14e-48`.
    pub fn to_scientific(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if !self.is_finite() {
            return "NaN".into();
        }
        let Some((neg, ds, e10)) = self.decimal_digits(digits) else {
            return "0".into();
        };
        let sign = if neg { "-" } else { "" };
        if ds.len() == 1 {
            format!("{sign}{ds}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &ds[..1], &ds[1..])
        }
    }

    fn prec2(&self, other: &Self) -> usize {
        self.bits.max(other.bits)
    }
}

fn round_half_even(q: &Rational) -> BigInt {
    let (fl, rem) = q.numer().div_mod_floor(q.denom());
    let twice = rem * 2u32;
    match twice.cmp(q.denom()) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1u32,
        Ordering::Equal => {
            if fl.is_even() {
                fl
            } else {
                fl + 1u32
            }
        }
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({}, {} bits)", self.to_scientific(20), self.bits)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or(((self.bits as f64) * std::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_decimal(digits))
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl $tr<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let p = self.prec2(rhs);
                BigReal::wrap(self.value.$call(&rhs.value, p, RM), p)
            }
        }
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::wrap(self.value.neg(), self.bits)
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::wrap(self.value.clone().neg(), self.bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_round_trip_is_exact_for_dyadics() {
        for (n, d) in [(1, 2), (-3, 8), (12345, 1), (7, 1024), (0, 1)] {
            let x = BigReal::from_rational(&q(n, d), 128);
            assert_eq!(x.to_rational(), q(n, d));
        }
    }

    #[test]
    fn third_is_correctly_rounded() {
        let x = BigReal::from_rational(&q(1, 3), 128);
        let err = (x.to_rational() - q(1, 3)).abs();
        assert!(err < Rational::new(1.into(), BigInt::one() << 129usize));
    }

    #[test]
    fn decimal_formatting() {
        let x = BigReal::from_rational(&q(1, 8), 64);
        assert_eq!(x.to_decimal(3), "0.125");
        assert_eq!(BigReal::from_i64(-42, 64).to_decimal(5), "-42.000");
        assert_eq!(BigReal::from_rational(&q(1, 3), 128).to_decimal(5), "0.33333");
        assert_eq!(BigReal::from_rational(&q(2, 3), 128).to_decimal(5), "0.66667");
        assert_eq!(BigReal::from_rational(&q(-1, 400), 128).to_scientific(2), "-2.5e-3");
        assert_eq!(BigReal::from_i64(999, 64).to_decimal(2), "1.0e3");
        assert_eq!(BigReal::zero(64).to_decimal(10), "0");
    }

    #[test]
    fn pi_digits() {
        let pi = BigReal::pi(200);
        assert_eq!(pi.to_decimal(30), "3.14159265358979323846264338328");
    }

    #[test]
    fn ldexp_is_exact() {
        let x = BigReal::from_i64(3, 64).ldexp(-16);
        assert_eq!(x.to_rational(), q(3, 65536));
    }

    #[test]
    fn parse_literals() {
        assert_eq!(BigReal::parse("0.25", 64).unwrap().to_rational(), q(1, 4));
        assert_eq!(BigReal::parse("-3/8", 64).unwrap().to_rational(), q(-3, 8));
        assert!(BigReal::parse("abc", 64).is_none());
    }
}
