//! Exact algebra over polynomials in t whose coefficients are rational
//! multiples of powers of π.
//!
//! π is kept symbolic: a [`PiPoly`] term is `c · t^i · π^j` with `j ≥ 0`, and
//! a [`PiLaurent`] scalar allows negative powers of π. Only [`PiPoly::eval`]
//! (and friends) ever substitutes a numeric π.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bigreal::BigReal;
use crate::error::{Error, Result};
use crate::exactnum::{rat, rat_int, Rational, RationalPoly};

/// Guard bits used by numeric evaluation of π-graded polynomials.
pub const EVAL_GUARD_BITS: usize = 32;

/// Finite Laurent polynomial in π with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct PiLaurent {
    terms: BTreeMap<i32, Rational>,
}

impl PiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn monomial(pi_exp: i32, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(pi_exp, c);
        s
    }

    pub fn rational(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn add_term(&mut self, pi_exp: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(pi_exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&pi_exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, pi_exp: i32) -> Rational {
        self.terms.get(&pi_exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// The sole (exponent, coefficient) pair, if this is a monomial.
    pub fn as_monomial(&self) -> Option<(i32, &Rational)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_rational(&-Rational::one())
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(e, c * s);
        }
        out
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

    pub fn eval(&self, bits: usize) -> BigReal {
        let work = bits + EVAL_GUARD_BITS;
        let pi = BigReal::pi(work);
        let mut acc = BigReal::zero(work);
        for (e, c) in self.terms() {
            let pi_pow = if e >= 0 {
                pi.powi(e as u32)
            } else {
                pi.powi((-e) as u32).recip()
            };
            acc = acc + BigReal::from_rational(c, work) * pi_pow;
        }
        acc.with_bits(bits)
    }
}

impl fmt::Debug for PiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| format!("({c})·π^{e}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Polynomial in t with coefficients c·π^j, j ≥ 0.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct PiPoly {
    /// (t exponent, π exponent) → coefficient; never holds zeros.
    terms: BTreeMap<(u32, u32), Rational>,
}

/// One term of a [`PiPoly`] in its JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub t_exp: u32,
    pub pi_exp: u32,
    pub num: String,
    pub den: String,
}

impl PiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(t_exp: u32, pi_exp: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(t_exp, pi_exp, c);
        p
    }

    /// `poly(t) · π^pi_exp`
    pub fn from_rational_poly(poly: &RationalPoly, pi_exp: u32) -> Self {
        let mut p = Self::zero();
        for (e, c) in poly.terms() {
            p.add_term(e, pi_exp, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, t_exp: u32, pi_exp: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (t_exp, pi_exp);
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// (t exponent, π exponent, coefficient), ascending in t then π.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> + '_ {
        self.terms.iter().map(|((i, j), c)| (*i, *j, c))
    }

    pub fn coeff(&self, t_exp: u32, pi_exp: u32) -> Rational {
        self.terms
            .get(&(t_exp, pi_exp))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    /// The common π-exponent when every term shares one.
    pub fn pi_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|(_, j)| *j);
        let first = it.next()?;
        it.all(|j| j == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_rational(&-Rational::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ia, ja, ca) in self.terms() {
            for (ib, jb, cb) in other.terms() {
                out.add_term(ia + ib, ja + jb, ca * cb);
            }
        }
        out
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i, j, c * s);
        }
        out
    }

    /// Multiplies by a π-Laurent scalar. Fails if any surviving term
    /// would carry a negative power of π.
    pub fn scale(&self, s: &PiLaurent) -> Result<Self> {
        let mut graded: BTreeMap<(u32, i64), Rational> = BTreeMap::new();
        for (i, j, c) in self.terms() {
            for (e, sc) in s.terms() {
                let slot = graded
                    .entry((i, j as i64 + e as i64))
                    .or_insert_with(Rational::zero);
                *slot += c * sc;
            }
        }
        let mut out = Self::zero();
        for ((i, j), c) in graded {
            if c.is_zero() {
                continue;
            }
            if j < 0 {
                return Err(Error::Grading(format!(
                    "term t^{i}·π^{j} leaves the nonnegative π grading"
                )));
            }
            out.add_term(i, j as u32, c);
        }
        Ok(out)
    }

    /// Exact substitution of a rational t; the result is a polynomial in π.
    pub fn eval_exact(&self, t: &Rational) -> PiLaurent {
        let mut out = PiLaurent::zero();
        for (i, j, c) in self.terms() {
            out.add_term(j as i32, c * num_traits::pow(t.clone(), i as usize));
        }
        out
    }

    /// Numeric value at `t`, carrying [`EVAL_GUARD_BITS`] extra bits
    /// internally before rounding to `bits`.
    pub fn eval(&self, t: &BigReal, bits: usize) -> BigReal {
        self.compile(bits + EVAL_GUARD_BITS)
            .eval(&t.with_bits(bits + EVAL_GUARD_BITS))
            .with_bits(bits)
    }

    /// Folds π into dense numeric coefficients for repeated evaluation.
    pub fn compile(&self, bits: usize) -> NumericPoly {
        let pi = BigReal::pi(bits);
        let deg = self.t_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![BigReal::zero(bits); deg + 1];
        for (i, j, c) in self.terms() {
            let term = BigReal::from_rational(c, bits) * pi.powi(j);
            coeffs[i as usize] = &coeffs[i as usize] + &term;
        }
        NumericPoly { coeffs, bits }
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(i, j, c)| TermRecord {
                t_exp: i,
                pi_exp: j,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Option<Self> {
        let mut p = Self::zero();
        for r in records {
            let num: BigInt = r.num.parse().ok()?;
            let den: BigInt = r.den.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            p.add_term(r.t_exp, r.pi_exp, Rational::new(num, den));
        }
        Some(p)
    }

    pub fn to_latex(&self) -> String {
        render(self, Style::Latex)
    }

    /// Plain-text rendering, e.g. `pi^2/6 * (t^3 - t)`.
    pub fn to_text(&self) -> String {
        render(self, Style::Text)
    }
}

impl fmt::Debug for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A [`PiPoly`] with π substituted, ready for Horner evaluation.
#[derive(Clone, Debug)]
pub struct NumericPoly {
    coeffs: Vec<BigReal>,
    bits: usize,
}

impl NumericPoly {
    pub fn from_rational_poly(poly: &RationalPoly, bits: usize) -> Self {
        Self {
            coeffs: (0..=poly.degree().unwrap_or(0))
                .map(|e| BigReal::from_rational(&poly.coeff(e), bits))
                .collect(),
            bits,
        }
    }

    pub fn eval(&self, t: &BigReal) -> BigReal {
        self.coeffs
            .iter()
            .rev()
            .fold(BigReal::zero(self.bits), |acc, c| acc * t + c)
    }
}

/// `S·sin(πt) + C·cos(πt)` with S, C π-graded polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrigPoly {
    pub sin: PiPoly,
    pub cos: PiPoly,
}

impl TrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add(&self, other: &Self) -> Self {
        TrigPoly {
            sin: self.sin.add(&other.sin),
            cos: self.cos.add(&other.cos),
        }
    }

    pub fn scale(&self, s: &PiLaurent) -> Result<Self> {
        Ok(TrigPoly {
            sin: self.sin.scale(s)?,
            cos: self.cos.scale(s)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.sin.is_zero() && self.cos.is_zero()
    }
}

/// ∫₀¹ tᵏ sin(πt) dt, exactly.
///
/// Two integrations by parts give I₀ = 2/π, I₁ = 1/π and
/// Iₖ = 1/π − k(k−1)/π² · I_{k−2}.
pub fn sin_moment(k: u32) -> PiLaurent {
    let mut even = PiLaurent::monomial(-1, rat(2, 1));
    let mut odd = PiLaurent::monomial(-1, rat(1, 1));
    if k == 0 {
        return even;
    }
    if k == 1 {
        return odd;
    }
    for m in 2..=k {
        let prev = if m % 2 == 0 { &even } else { &odd };
        let factor = PiLaurent::monomial(-2, -rat_int(m as i64 * (m as i64 - 1)));
        let next = PiLaurent::monomial(-1, Rational::one()).add(&factor.mul(prev));
        if m % 2 == 0 {
            even = next;
        } else {
            odd = next;
        }
    }
    if k.is_multiple_of(2) {
        even
    } else {
        odd
    }
}

/// ∫₀¹ a(t)·sin(πt) dt, exactly.
pub fn integrate_against_sin(a: &PiPoly) -> PiLaurent {
    let max_deg = a.t_degree().unwrap_or(0);
    let moments: Vec<PiLaurent> = (0..=max_deg).map(sin_moment).collect();
    let mut out = PiLaurent::zero();
    for (i, j, c) in a.terms() {
        let scaled = moments[i as usize].mul(&PiLaurent::monomial(j as i32, c.clone()));
        out = out.add(&scaled);
    }
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Style {
    Latex,
    Text,
}

fn pow_suffix(base: &str, e: u32, style: Style) -> String {
    match (e, style) {
        (0, _) => String::new(),
        (1, _) => base.to_string(),
        (e, Style::Latex) if e >= 10 => format!("{base}^{{{e}}}"),
        (e, _) => format!("{base}^{e}"),
    }
}

fn pi_symbol(style: Style) -> &'static str {
    match style {
        Style::Latex => "\\pi",
        Style::Text => "pi",
    }
}

/// gcd of numerators over lcm of denominators, signed so the
/// highest-degree coefficient divided by it is positive.
fn content<'a>(coeffs: impl Iterator<Item = &'a Rational>, leading_negative: bool) -> Rational {
    let (g, l) = coeffs.fold((BigInt::zero(), BigInt::one()), |(g, l), c| {
        (g.gcd(c.numer()), l.lcm(c.denom()))
    });
    let q = Rational::new(g, l);
    if leading_negative {
        -q
    } else {
        q
    }
}

/// Renders `q·π^j` as a prefactor; empty for exactly 1.
fn prefactor(q: &Rational, pi_exp: u32, style: Style) -> String {
    let sign = if q.is_negative() { "-" } else { "" };
    let n = q.numer().abs();
    let d = q.denom();
    let pi = pow_suffix(pi_symbol(style), pi_exp, style);
    let num = match (n.is_one(), pi.is_empty(), style) {
        (true, true, _) => "1".to_string(),
        (true, false, _) => pi.clone(),
        (false, true, _) => n.to_string(),
        (false, false, Style::Latex) => format!("{n}{pi}"),
        (false, false, Style::Text) => format!("{n}*{pi}"),
    };
    let body = if d.is_one() {
        num
    } else {
        match style {
            Style::Latex => format!("\\frac{{{num}}}{{{d}}}"),
            Style::Text => format!("{num}/{d}"),
        }
    };
    if body == "1" {
        sign.to_string()
    } else {
        format!("{sign}{body}")
    }
}

/// Integer-coefficient polynomial in t, descending degree.
fn render_integer_poly(terms: &[(u32, BigInt)], style: Style) -> String {
    let mut out = String::new();
    for (k, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let t = pow_suffix("t", *e, style);
        match (mag.is_one(), t.is_empty(), style) {
            (true, true, _) => out.push('1'),
            (true, false, _) => out.push_str(&t),
            (false, true, _) => out.push_str(&mag.to_string()),
            (false, false, Style::Latex) => out.push_str(&format!("{mag}{t}")),
            (false, false, Style::Text) => out.push_str(&format!("{mag}*{t}")),
        }
    }
    out
}

/// Renders q·π^j·f₁(t)·f₂(t)⋯ for integer-coefficient factors given as
/// (exponent, coefficient) lists. A bare `t` factor gets no brackets.
pub fn render_product(q: &Rational, pi_exp: u32, factors: &[Vec<(u32, BigInt)>], latex: bool) -> String {
    let style = if latex { Style::Latex } else { Style::Text };
    let mut out = prefactor(q, pi_exp, style);
    if !out.is_empty() && out != "-" {
        out.push_str(match style {
            Style::Latex => "\\,",
            Style::Text => " * ",
        });
    }
    for f in factors {
        let mut desc = f.clone();
        desc.sort_by_key(|t| std::cmp::Reverse(t.0));
        let body = render_integer_poly(&desc, style);
        if desc.len() == 1 {
            out.push_str(&body);
        } else if latex {
            out.push_str(&format!("\\left({body}\\right)"));
        } else {
            out.push_str(&format!("({body})"));
        }
    }
    out
}

fn render(p: &PiPoly, style: Style) -> String {
    if p.is_zero() {
        return "0".into();
    }
    if let (Some(j), true) = (p.pi_degree(), p.len() > 1) {
        let mut desc: Vec<(u32, &Rational)> = p.terms().map(|(i, _, c)| (i, c)).collect();
        desc.sort_by_key(|t| std::cmp::Reverse(t.0));
        let lead_neg = desc[0].1.is_negative();
        let q = content(desc.iter().map(|(_, c)| *c), lead_neg);
        let inner: Vec<(u32, BigInt)> = desc
            .iter()
            .map(|(i, c)| (*i, (*c / &q).to_integer()))
            .collect();
        let inner_s = render_integer_poly(&inner, style);
        let pre = prefactor(&q, j, style);
        return match (pre.as_str(), style) {
            ("", _) => inner_s,
            ("-", Style::Latex) => format!("-\\left({inner_s}\\right)"),
            ("-", Style::Text) => format!("-({inner_s})"),
            (_, Style::Latex) => format!("{pre}\\left({inner_s}\\right)"),
            (_, Style::Text) => format!("{pre} * ({inner_s})"),
        };
    }
    // Single terms and mixed π grading: one monomial at a time, descending t then π.
    let mut desc: Vec<(u32, u32, &Rational)> = p.terms().collect();
    desc.sort_by_key(|t| std::cmp::Reverse((t.0, t.1)));
    let mut out = String::new();
    for (k, (i, j, c)) in desc.into_iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let pre = prefactor(&c.abs(), j, style);
        let t = pow_suffix("t", i, style);
        let piece = match (pre.is_empty(), t.is_empty(), style) {
            (true, true, _) => "1".to_string(),
            (true, false, _) => t,
            (false, true, _) => pre,
            (false, false, Style::Latex) => format!("{pre}{t}"),
            (false, false, Style::Text) => format!("{pre}*{t}"),
        };
        out.push_str(&piece);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta3_poly() -> PiPoly {
        // (π²/6)(t³ − t)
        let mut p = PiPoly::zero();
        p.add_term(3, 2, rat(1, 6));
        p.add_term(1, 2, rat(-1, 6));
        p
    }

    #[test]
    fn additive_inverse_is_empty() {
        let a = PiPoly::term(1, 0, rat(1, 1));
        let b = PiPoly::term(1, 0, rat(-1, 1));
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn monomial_product() {
        let a = PiPoly::term(1, 1, rat(1, 1));
        assert_eq!(a.mul(&a), PiPoly::term(2, 2, rat(1, 1)));
    }

    #[test]
    fn scale_by_pi_squared_over_six() {
        let base = PiPoly::from_rational_poly(
            &RationalPoly::from_coeffs([(3, rat(1, 1)), (1, rat(-1, 1))]),
            0,
        );
        let s = PiLaurent::monomial(2, rat(1, 6));
        assert_eq!(base.scale(&s).unwrap(), zeta3_poly());
    }

    #[test]
    fn scale_rejects_negative_grading() {
        let a = PiPoly::term(0, 0, rat(1, 1));
        let err = a.scale(&PiLaurent::monomial(-1, rat(1, 1))).unwrap_err();
        assert!(matches!(err, Error::Grading(_)));
        // cancelling into nonnegative grading is fine
        let b = PiPoly::term(2, 2, rat(3, 1));
        assert_eq!(
            b.scale(&PiLaurent::monomial(-1, rat(1, 3))).unwrap(),
            PiPoly::term(2, 1, rat(1, 1))
        );
    }

    #[test]
    fn sin_moments_small() {
        assert_eq!(sin_moment(0), PiLaurent::monomial(-1, rat(2, 1)));
        assert_eq!(sin_moment(1), PiLaurent::monomial(-1, rat(1, 1)));
        let mut i3 = PiLaurent::monomial(-1, rat(1, 1));
        i3.add_term(-3, rat(-6, 1));
        assert_eq!(sin_moment(3), i3);
        // I₂ = 1/π − 2·(2/π)/π² = π⁻¹ − 4π⁻³
        let mut i2 = PiLaurent::monomial(-1, rat(1, 1));
        i2.add_term(-3, rat(-4, 1));
        assert_eq!(sin_moment(2), i2);
    }

    #[test]
    fn integrate_against_sin_examples() {
        assert!(integrate_against_sin(&PiPoly::zero()).is_zero());
        assert_eq!(
            integrate_against_sin(&PiPoly::term(1, 0, rat(1, 1))),
            PiLaurent::monomial(-1, rat(1, 1))
        );
        assert_eq!(
            integrate_against_sin(&zeta3_poly()),
            PiLaurent::monomial(-1, rat(-1, 1))
        );
    }

    #[test]
    fn numeric_eval_examples() {
        let t_half = BigReal::parse("1/2", 128).unwrap();
        let ident = PiPoly::term(1, 0, rat(1, 1));
        assert_eq!(ident.eval(&t_half, 128).to_rational(), rat(1, 2));
        let one = BigReal::one(128);
        assert!(zeta3_poly().eval(&one, 128).is_zero());
        // (1/8 − 1/2)·π²/6 = −π²/16
        let got = zeta3_poly().eval(&t_half, 128);
        let pi = BigReal::pi(128);
        let want = -(&pi * &pi) / BigReal::from_i64(16, 128);
        assert!((got - want).abs() < BigReal::one(128).ldexp(-120));
    }

    #[test]
    fn latex_and_text_rendering() {
        assert_eq!(zeta3_poly().to_latex(), "\\frac{\\pi^2}{6}\\left(t^3 - t\\right)");
        assert_eq!(zeta3_poly().to_text(), "pi^2/6 * (t^3 - t)");
        let mut p4 = PiPoly::zero();
        p4.add_term(5, 4, rat(-1, 120));
        p4.add_term(3, 4, rat(1, 36));
        p4.add_term(1, 4, rat(-7, 360));
        assert_eq!(
            p4.to_latex(),
            "-\\frac{\\pi^4}{360}\\left(3t^5 - 10t^3 + 7t\\right)"
        );
        let mut big = PiPoly::zero();
        big.add_term(11, 10, rat(3, 1));
        assert_eq!(big.to_latex(), "3\\pi^{10}t^{11}");
        let mut mixed = PiPoly::zero();
        mixed.add_term(2, 0, rat(1, 1));
        mixed.add_term(1, 2, rat(-1, 6));
        assert_eq!(mixed.to_text(), "t^2 - pi^2/6*t");
        assert_eq!(PiPoly::term(0, 0, rat(-1, 1)).to_text(), "-1");
    }

    #[test]
    fn records_round_trip() {
        let p = zeta3_poly();
        assert_eq!(PiPoly::from_records(&p.to_records()).unwrap(), p);
    }
}
