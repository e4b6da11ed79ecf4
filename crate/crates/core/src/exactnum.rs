//! Exact rational combinatorics: Bernoulli numbers, Bernoulli and Euler
//! polynomials, harmonic numbers, factorials and binomials.
//!
//! Bernoulli numbers use the convention B₁ = −1/2 and are memoized in a
//! process-wide write-once table.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the
    // division is exact at every step.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Parses `a/b`, a plain integer, or a decimal literal with optional
/// exponent (`-1.25e-3`) into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut q = if scale >= 0 {
        Rational::from_integer(digits * ten.pow(scale as u32))
    } else {
        Rational::new(digits, ten.pow((-scale) as u32))
    };
    if neg {
        q = -q;
    }
    Some(q)
}

fn bernoulli_table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// Bₙ with B₁ = −1/2, from Bₙ = −1/(n+1) · Σ_{k<n} C(n+1,k)·Bₖ.
pub fn bernoulli_number(n: u32) -> Rational {
    if n >= 3 && n % 2 == 1 {
        return Rational::zero();
    }
    let table = bernoulli_table();
    if let Some(b) = table.read().expect("bernoulli cache").get(n as usize) {
        return b.clone();
    }
    let mut t = table.write().expect("bernoulli cache");
    // Another writer may have extended the table meanwhile; values are
    // deterministic so extending from wherever it stands is idempotent.
    while t.len() <= n as usize {
        let m = t.len() as u32;
        let b = if m >= 3 && m % 2 == 1 {
            Rational::zero()
        } else {
            let s = (0..m).fold(Rational::zero(), |acc, k| {
                acc + rat_int(binomial(m + 1, k)) * &t[k as usize]
            });
            -s / rat_int(m + 1)
        };
        t.push(b);
    }
    t[n as usize].clone()
}

/// Univariate polynomial in t with exact rational coefficients.
///
/// Stored sparsely; zero coefficients are never kept, so structural
/// equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RationalPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    /// t − a
    pub fn linear(a: Rational) -> Self {
        let mut p = Self::monomial(1, Rational::one());
        p.add_term(0, -a);
        p
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// (exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coeffs(self.terms().map(|(e, c)| (e, c * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        (0..=deg)
            .rev()
            .fold(Rational::zero(), |acc, e| acc * t + self.coeff(e))
    }

    /// p(t + a), expanded.
    pub fn shift(&self, a: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            for k in 0..=e {
                let a_pow = num_traits::pow(a.clone(), (e - k) as usize);
                out.add_term(k, c * rat_int(binomial(e, k)) * a_pow);
            }
        }
        out
    }

    /// p(s·t), expanded.
    pub fn dilate(&self, s: &Rational) -> Self {
        Self::from_coeffs(
            self.terms()
                .map(|(e, c)| (e, c * num_traits::pow(s.clone(), e as usize))),
        )
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| match e {
                0 => format!("({c})"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{e}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Bₙ(t) = Σₖ C(n,k)·B_{n−k}·tᵏ
pub fn bernoulli_polynomial(n: u32) -> RationalPoly {
    RationalPoly::from_coeffs(
        (0..=n).map(|k| (k, rat_int(binomial(n, k)) * bernoulli_number(n - k))),
    )
}

/// Eₙ(t) = 2/(n+1)·[B_{n+1}(t) − 2^{n+1}·B_{n+1}(t/2)]
pub fn euler_polynomial(n: u32) -> RationalPoly {
    let b = bernoulli_polynomial(n + 1);
    let two_pow = rat_int(BigInt::one() << (n + 1) as usize);
    let halved = b.dilate(&rat(1, 2)).scale(&two_pow);
    b.sub(&halved).scale(&rat(2, n as i64 + 1))
}

/// Hₘ = Σ_{k=1}^{m} 1/k, with H₀ = 0.
pub fn harmonic(m: u32) -> Rational {
    (1..=m).fold(Rational::zero(), |acc, k| acc + rat(1, k as i64))
}
