//! Series machinery behind the odd-zeta polynomials.
//!
//! `sin(πt(1−z)) / sin(π(1−z)) = Σ_{p≥−1} w_p(t) zᵖ` is built here as an exact
//! Cauchy product of the Taylor coefficients u_k of the numerator and the
//! Laurent coefficients v_k of `1/sin(πz)`. Independently, [`p_poly`] builds
//! 𝒫₂ₚ(t) from its closed form; the two routes must agree term for term.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use crate::error::{domain, Result};
use crate::exactnum::{bernoulli_number, factorial, rat, rat_int, Rational};
use crate::pipoly::{PiLaurent, PiPoly, TrigPoly};

/// Source of Bernoulli numbers for the closed-form construction. The
/// default reads the exact table; the indirection lets the verifier run
/// against a deliberately corrupted table.
pub trait BernoulliSource: Sync {
    fn bernoulli(&self, n: u32) -> Rational;
}

pub struct ExactBernoulli;

impl BernoulliSource for ExactBernoulli {
    fn bernoulli(&self, n: u32) -> Rational {
        bernoulli_number(n)
    }
}

/// Exact table with one entry replaced by a wrong value.
pub struct CorruptedBernoulli {
    pub index: u32,
    pub value: Rational,
}

impl BernoulliSource for CorruptedBernoulli {
    fn bernoulli(&self, n: u32) -> Rational {
        if n == self.index {
            self.value.clone()
        } else {
            bernoulli_number(n)
        }
    }
}

/// k-th Taylor coefficient of z ↦ sin(πt(1−z)) at z = 0.
///
/// dᵏ/dzᵏ sin(πt(1−z)) = (−πt)ᵏ·sin(πt(1−z) + kπ/2), so
/// u_k = (−1)ᵏ(πt)ᵏ/k! · {sin, cos, −sin, −cos}[k mod 4](πt).
pub fn u_coeff(k: u32) -> TrigPoly {
    let magnitude = rat_int(1) / rat_int(factorial(k));
    let signed = if k % 2 == 1 { -magnitude } else { magnitude };
    let (on_sin, c) = match k % 4 {
        0 => (true, signed),
        1 => (false, signed),
        2 => (true, -signed),
        _ => (false, -signed),
    };
    let mono = PiPoly::term(k, k, c);
    if on_sin {
        TrigPoly {
            sin: mono,
            cos: PiPoly::zero(),
        }
    } else {
        TrigPoly {
            sin: PiPoly::zero(),
            cos: mono,
        }
    }
}

/// 2(2^{2m−1} − 1)·|B_{2m}| / (2m)!, the rational part of v_{2m−1}.
fn csc_rational(m: u32, bern: &dyn BernoulliSource) -> Rational {
    let two_pow = rat_int((num_bigint::BigInt::one() << (2 * m - 1) as usize) - 1);
    rat(2, 1) * two_pow * bern.bernoulli(2 * m).abs() / rat_int(factorial(2 * m))
}

/// Laurent coefficient v_k of 1/sin(π(1−z)) = 1/sin(πz) at z = 0.
pub fn csc_coeff(k: i32) -> PiLaurent {
    csc_coeff_with(k, &ExactBernoulli)
}

fn csc_coeff_with(k: i32, bern: &dyn BernoulliSource) -> PiLaurent {
    if k == -1 {
        return PiLaurent::monomial(-1, Rational::one());
    }
    if k < -1 || k % 2 == 0 {
        return PiLaurent::zero();
    }
    let m = ((k - 1) / 2 + 1) as u32;
    PiLaurent::monomial(2 * m as i32 - 1, csc_rational(m, bern))
}

/// Laurent expansion of 1/sin(π(1−z)) through z^order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CscSeries {
    pub order: i32,
    coeffs: BTreeMap<i32, PiLaurent>,
}

impl CscSeries {
    pub fn coeff(&self, k: i32) -> PiLaurent {
        self.coeffs.get(&k).cloned().unwrap_or_else(PiLaurent::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &PiLaurent)> + '_ {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }
}

pub fn csc_series(order: i32) -> Result<CscSeries> {
    if order < -1 {
        return Err(domain("csc series order must be ≥ −1"));
    }
    let coeffs = (-1..=order)
        .map(|k| (k, csc_coeff(k)))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Ok(CscSeries { order, coeffs })
}

/// Taylor coefficient of sin(πz) at z^k.
pub fn sin_series_coeff(k: u32) -> PiLaurent {
    if k.is_multiple_of(2) {
        return PiLaurent::zero();
    }
    let sign = if (k / 2).is_multiple_of(2) { 1 } else { -1 };
    PiLaurent::monomial(k as i32, rat(sign, 1) / rat_int(factorial(k)))
}

/// A [`TrigPoly`] multiplied by a π-Laurent scalar, for the one Cauchy
/// coefficient (w₋₁ = π⁻¹·sin(πt)) that falls outside the nonnegative grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledTrig {
    pub scale: PiLaurent,
    pub trig: TrigPoly,
}

impl ScaledTrig {
    /// Folds the scale into the polynomial; fails for the pole term.
    pub fn into_trig(self) -> Result<TrigPoly> {
        self.trig.scale(&self.scale)
    }
}

/// Coefficient of zᵖ in sin(πt(1−z))/sin(π(1−z)), p ≥ −1:
/// w_p = Σ_{j ∈ {−1,1,3,…}, j ≤ p} v_j·u_{p−j}.
pub fn w_coeff(p: i32) -> Result<ScaledTrig> {
    if p < -1 {
        return Err(domain("w index must be ≥ −1"));
    }
    if p == -1 {
        return Ok(ScaledTrig {
            scale: csc_coeff(-1),
            trig: u_coeff(0),
        });
    }
    let mut acc = TrigPoly::zero();
    let mut j = -1;
    while j <= p {
        let u = u_coeff((p - j) as u32);
        acc = acc.add(&u.scale(&csc_coeff(j))?);
        j += 2;
    }
    Ok(ScaledTrig {
        scale: PiLaurent::one(),
        trig: acc,
    })
}

/// α_{2k}(t) = (−1)^{k+1}·π^{2k}·t^{2k+1}/(2k+1)!, zero for negative index.
pub fn alpha(two_k: i32) -> PiPoly {
    if two_k < 0 {
        return PiPoly::zero();
    }
    debug_assert!(two_k % 2 == 0);
    let k = (two_k / 2) as u32;
    let sign = if k.is_multiple_of(2) { -1 } else { 1 };
    let idx = two_k as u32;
    PiPoly::term(idx + 1, idx, rat(sign, 1) / rat_int(factorial(idx + 1)))
}

/// α_{2p} + (π²/6)α_{2p−2} + (7π⁴/360)α_{2p−4}, summed term by term.
pub fn alpha_sum(p: u32) -> PiPoly {
    let two_p = 2 * p as i32;
    let pi2 = PiPoly::term(0, 2, rat(1, 6));
    let pi4 = PiPoly::term(0, 4, rat(7, 360));
    alpha(two_p)
        .add(&pi2.mul(&alpha(two_p - 2)))
        .add(&pi4.mul(&alpha(two_p - 4)))
}

/// The combined tail in closed form, valid for p ≥ 2:
/// (−1)ᵖπ^{2p}t^{2p−3}[60t²(2p(2p+1)−6t²)(2p−3)! − 7(2p+1)!] / (360(2p−3)!(2p+1)!).
pub fn alpha_tail(p: u32) -> Result<PiPoly> {
    if p < 2 {
        return Err(domain("closed-form tail needs p ≥ 2"));
    }
    let two_p = 2 * p;
    let f_lo = rat_int(factorial(two_p - 3));
    let f_hi = rat_int(factorial(two_p + 1));
    let denom = rat(360, 1) * &f_lo * &f_hi;
    let sign = if p.is_multiple_of(2) { rat(1, 1) } else { rat(-1, 1) };
    let a = rat(60 * (two_p as i64) * (two_p as i64 + 1), 1) * &f_lo;
    let b = rat(-360, 1) * &f_lo;
    let c = rat(-7, 1) * &f_hi;
    let mut out = PiPoly::zero();
    out.add_term(two_p - 1, two_p, &sign * a / &denom);
    out.add_term(two_p + 1, two_p, &sign * b / &denom);
    out.add_term(two_p - 3, two_p, &sign * c / &denom);
    Ok(out)
}

/// 𝒫₂ₚ(t) from its closed form: the Bernoulli sum over odd n ≤ 2p−5 plus
/// the α tail.
pub fn p_poly(p: u32) -> Result<PiPoly> {
    p_poly_with(p, &ExactBernoulli)
}

pub fn p_poly_with(p: u32, bern: &dyn BernoulliSource) -> Result<PiPoly> {
    if p == 0 {
        return Err(domain("p must be ≥ 1"));
    }
    let two_p = 2 * p as i64;
    let mut out = alpha_sum(p);
    let mut n = 1i64;
    while n <= two_p - 5 {
        // ⌊(2p−n−1)/2⌋ + 1 for odd n
        let m = ((two_p - n - 1) / 2 + 1) as u32;
        let sign = if ((n + 1) / 2) % 2 == 0 { 1 } else { -1 };
        let c = rat(sign, 1) / rat_int(factorial(n as u32)) * csc_rational(m, bern);
        out.add_term(n as u32, n as u32 + 2 * m - 1, c);
        n += 2;
    }
    Ok(out)
}

/// Whether a polynomial vanishes identically at the given rational point.
pub fn vanishes_at(p: &PiPoly, t: &Rational) -> bool {
    p.eval_exact(t).is_zero()
}

/// Whether every t-exponent is odd.
pub fn has_odd_t_parity(p: &PiPoly) -> bool {
    p.terms().all(|(i, _, _)| i % 2 == 1)
}
