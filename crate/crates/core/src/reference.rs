//! Independent high-precision oracles: ζ(s) at integers, the
//! Euler–Mascheroni constant, ψ(x), and the Mikolas integral for ψ.
//!
//! Each constant has two algorithmically unrelated routes so that no value
//! is ever trusted from a single computation:
//!
//! * ζ(s): Euler–Maclaurin summation, and Borwein's accelerated alternating
//!   η-series.
//! * γ: Brent–McMillan (Bessel-type) sums, and Euler–Maclaurin applied to
//!   the harmonic numbers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bigreal::BigReal;
use crate::error::{domain, Result};
use crate::exactnum::{bernoulli_number, factorial, harmonic, rat, rat_int, Rational};
use crate::expansion::w_coeff;
use crate::precision::Accuracy;
use crate::quad::{integrate_01, QuadResult};

/// Extra bits carried internally by every oracle.
const ORACLE_GUARD_BITS: usize = 32;

/// A quadrature-backed value together with its diagnostics.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub value: BigReal,
    pub quad: QuadResult,
}

/// Constants at one precision, each computed at that precision.
#[derive(Debug)]
pub struct PrecisionContext {
    pub bits: usize,
    pub pi: BigReal,
    pub gamma: BigReal,
    pub ln2: BigReal,
}

impl PrecisionContext {
    pub fn new(bits: usize) -> Self {
        Self {
            bits,
            pi: BigReal::pi(bits),
            gamma: euler_gamma_brent_mcmillan(bits),
            ln2: BigReal::ln2(bits),
        }
    }

    /// Shared context for `bits`; built once per precision.
    pub fn get(bits: usize) -> Arc<Self> {
        static CONTEXTS: OnceLock<Mutex<HashMap<usize, Arc<PrecisionContext>>>> = OnceLock::new();
        let map = CONTEXTS.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ctx) = map.lock().expect("context cache").get(&bits) {
            return ctx.clone();
        }
        let ctx = Arc::new(Self::new(bits));
        map.lock()
            .expect("context cache")
            .entry(bits)
            .or_insert(ctx)
            .clone()
    }
}

fn two_pow_neg(bits: usize) -> BigReal {
    BigReal::one(bits).ldexp(-(bits as i32))
}

/// ζ(s) for integer s ≥ 2 (Euler–Maclaurin route).
pub fn zeta_ref(s: u32, bits: usize) -> Result<BigReal> {
    if s < 2 {
        return Err(domain("zeta_ref needs s ≥ 2"));
    }
    Ok(zeta_euler_maclaurin(s, bits))
}

/// ζ(s) = Σ_{k<N} k^{−s} + N^{−s}/2 + N^{1−s}/(s−1)
///        + Σ_j B_{2j}/(2j)!·s(s+1)…(s+2j−2)·N^{1−s−2j}
pub fn zeta_euler_maclaurin(s: u32, bits: usize) -> BigReal {
    let work = bits + ORACLE_GUARD_BITS;
    let n = ((bits as f64 * 0.7).ceil() as u64).max(10);
    let mut sum = BigReal::zero(work);
    for k in 1..n {
        sum = sum + BigReal::from_u64(k, work).powi(s).recip();
    }
    let big_n = BigReal::from_u64(n, work);
    let n_pow_s = big_n.powi(s);
    let n_inv = big_n.recip();
    sum = sum + n_pow_s.recip().ldexp(-1);
    sum = sum + &big_n / (&n_pow_s * BigReal::from_u64(s as u64 - 1, work));

    let cutoff = two_pow_neg(work);
    let n_inv_sq = &n_inv * &n_inv;
    // N^{1−s−2j}, starting at j = 1
    let mut n_pow = &n_inv / &n_pow_s;
    // s(s+1)…(s+2j−2)
    let mut rising = rat_int(s);
    let mut j = 1u32;
    let mut prev_mag: Option<BigReal> = None;
    loop {
        let coeff = bernoulli_number(2 * j) / rat_int(factorial(2 * j)) * &rising;
        let term = BigReal::from_rational(&coeff, work) * &n_pow;
        let mag = term.abs();
        sum = sum + &term;
        if mag < cutoff {
            break;
        }
        // The asymptotic series has turned; stop at its smallest term.
        if prev_mag.as_ref().is_some_and(|p| &mag > p) {
            break;
        }
        prev_mag = Some(mag);
        rising = rising * rat_int(s + 2 * j - 1) * rat_int(s + 2 * j);
        n_pow = n_pow * &n_inv_sq;
        j += 1;
    }
    sum.with_bits(bits)
}

/// ζ(s) from η(s) = (1 − 2^{1−s})ζ(s), with η summed by Borwein's
/// Chebyshev-weighted acceleration (error ≲ 3·(3+√8)^{−n}).
pub fn zeta_eta_borwein(s: u32, bits: usize) -> Result<BigReal> {
    if s < 2 {
        return Err(domain("zeta needs s ≥ 2"));
    }
    let work = bits + ORACLE_GUARD_BITS;
    let n = ((work as f64 * std::f64::consts::LN_2) / (3.0 + 8f64.sqrt()).ln()).ceil() as u32 + 2;
    // d_k = n Σ_{i≤k} (n+i−1)!·4^i / ((n−i)!(2i)!)
    let mut d: Vec<BigInt> = Vec::with_capacity(n as usize + 1);
    let mut acc = Rational::zero();
    for i in 0..=n {
        let term = rat_int(factorial(n + i - 1) * (BigInt::one() << (2 * i) as usize))
            / rat_int(factorial(n - i) * factorial(2 * i));
        acc += term;
        let dk = rat_int(n) * &acc;
        debug_assert!(dk.is_integer());
        d.push(dk.to_integer());
    }
    let dn = d[n as usize].clone();
    let mut sum = BigReal::zero(work);
    for k in 0..n {
        let c = &d[k as usize] - &dn;
        let term = BigReal::from_bigint(&c, work) / BigReal::from_u64(k as u64 + 1, work).powi(s);
        sum = if k % 2 == 0 { sum + term } else { sum - term };
    }
    let eta = -(sum / BigReal::from_bigint(&dn, work));
    let factor = BigReal::one(work) - BigReal::one(work).ldexp(1 - s as i32);
    Ok((eta / factor).with_bits(bits))
}

/// γ by Brent–McMillan: with B_k = (nᵏ/k!)² and A_k = B_k(H_k − ln n),
/// γ ≈ ΣA_k / ΣB_k, error O(e^{−4n}).
pub fn euler_gamma_brent_mcmillan(bits: usize) -> BigReal {
    let work = bits + 64;
    let n = ((work as f64 * std::f64::consts::LN_2) / 4.0).ceil() as u64 + 1;
    let k_max = (3.5911 * n as f64).ceil() as u64 + 1;
    let big_n = BigReal::from_u64(n, work);
    let n_sq = &big_n * &big_n;
    let mut a = -big_n.ln();
    let mut b = BigReal::one(work);
    let mut u = a.clone();
    let mut v = b.clone();
    for k in 1..=k_max {
        let kk = BigReal::from_u64(k, work);
        b = &b * &n_sq / (&kk * &kk);
        a = (&a * &n_sq / &kk + &b) / &kk;
        u = u + &a;
        v = v + &b;
    }
    (u / v).with_bits(bits)
}

/// γ = H_N − ln N − 1/(2N) + Σ_j B_{2j}/(2j·N^{2j}).
pub fn euler_gamma_harmonic(bits: usize) -> BigReal {
    let work = bits + ORACLE_GUARD_BITS;
    let n = ((bits as f64 * 0.5).ceil() as u32).max(10) + 10;
    let mut sum = BigReal::from_rational(&harmonic(n), work);
    let big_n = BigReal::from_u64(n as u64, work);
    sum = sum - big_n.ln();
    sum = sum - big_n.recip().ldexp(-1);
    let n_inv_sq = (&big_n * &big_n).recip();
    let mut n_pow = n_inv_sq.clone();
    let cutoff = two_pow_neg(work);
    for j in 1.. {
        let coeff = bernoulli_number(2 * j) / rat(2 * j as i64, 1);
        let term = BigReal::from_rational(&coeff, work) * &n_pow;
        sum = sum + &term;
        if term.abs() < cutoff {
            break;
        }
        n_pow = n_pow * &n_inv_sq;
    }
    sum.with_bits(bits)
}

/// The Euler–Mascheroni constant at `bits`.
pub fn euler_gamma(bits: usize) -> BigReal {
    PrecisionContext::get(bits).gamma.clone()
}

/// ψ(x) for x > 0: recurrence up to x ≥ 0.35·bits, then
/// ψ(y) ≈ ln y − 1/(2y) − Σ_n B_{2n}/(2n·y^{2n}).
pub fn digamma_ref(x: &BigReal, bits: usize) -> Result<BigReal> {
    if x.is_negative() || x.is_zero() {
        return Err(domain("digamma_ref needs x > 0"));
    }
    let work = bits + ORACLE_GUARD_BITS;
    let threshold = BigReal::from_u64(((bits as f64 * 0.35).ceil() as u64).max(10), work);
    let mut y = x.with_bits(work);
    let mut acc = BigReal::zero(work);
    let one = BigReal::one(work);
    while y < threshold {
        acc = acc - y.recip();
        y = y + &one;
    }
    let mut psi = y.ln() - y.recip().ldexp(-1);
    let y_inv_sq = (&y * &y).recip();
    let mut y_pow = y_inv_sq.clone();
    let cutoff = two_pow_neg(work);
    for n in 1.. {
        let coeff = bernoulli_number(2 * n) / rat(2 * n as i64, 1);
        let term = BigReal::from_rational(&coeff, work) * &y_pow;
        psi = psi - &term;
        if term.abs() < cutoff {
            break;
        }
        y_pow = y_pow * &y_inv_sq;
    }
    Ok((psi + acc).with_bits(bits))
}

fn check_unit_interval(z: &BigReal) -> Result<()> {
    if z.is_negative() || z.is_zero() || *z >= BigReal::one(z.bits()) {
        return Err(domain("z must lie in the open interval (0, 1)"));
    }
    Ok(())
}

/// ψ(z) = −{γ + 1/(2z) + (π/2)cot(πz) + (π/2)∫₀¹ tan(πt/2)[sin(πzt)/sin(πz) − t] dt}
/// for 0 < z < 1. The bracket vanishes at t = 1 and cancels the pole of the tangent.
pub fn digamma_mikolas(z: &BigReal, acc: &Accuracy) -> Result<Evaluated> {
    check_unit_interval(z)?;
    let bits = acc.bits();
    let ctx = PrecisionContext::get(bits);
    let z = z.with_bits(bits);
    let pi_z = &ctx.pi * &z;
    let sin_pi_z = pi_z.sin();
    let quad = integrate_01(
        |a| {
            let ratio = (&pi_z * &a.t).sin() / &sin_pi_z;
            a.tan_half_pi() * (ratio - &a.t)
        },
        &acc.quad_options(),
    )?;
    let half_pi = ctx.pi.ldexp(-1);
    let inner = &ctx.gamma + z.recip().ldexp(-1) + &half_pi * pi_z.cot() + &half_pi * &quad.value;
    Ok(Evaluated { value: -inner, quad })
}

/// −ψ(1−z) − γ − Σ_{k=2}^{K} ζ(k)·z^{k−1}, which is O(z^K) for small z.
pub fn dl_series_check(z: &BigReal, k_max: u32, bits: usize) -> Result<BigReal> {
    if z.is_negative() || *z >= BigReal::one(z.bits()) {
        return Err(domain("z must lie in [0, 1)"));
    }
    if k_max < 2 {
        return Err(domain("need at least the ζ(2) term (K ≥ 2)"));
    }
    let work = bits + ORACLE_GUARD_BITS;
    let z = z.with_bits(work);
    let one = BigReal::one(work);
    let lhs = -digamma_ref(&(&one - &z), work)? - euler_gamma(work);
    let mut partial = BigReal::zero(work);
    let mut z_pow = z.clone();
    for k in 2..=k_max {
        partial = partial + zeta_ref(k, work)? * &z_pow;
        z_pow = z_pow * &z;
    }
    Ok((lhs - partial).with_bits(bits))
}

/// (π/2)·cot(π(1−z)) + (π/2)·(∫₀¹ tan(πt/2)·w₋₁(t) dt)/z.
///
/// w₋₁ = π⁻¹·sin(πt) is the z⁻¹ coefficient of sin(πt(1−z))/sin(π(1−z));
/// this combination stays bounded as z → 0 exactly when that Laurent
/// term cancels the cotangent pole.
pub fn pole_cancellation(z: &BigReal, acc: &Accuracy) -> Result<Evaluated> {
    if z.is_zero() {
        return Err(domain("z must be nonzero"));
    }
    let bits = acc.bits();
    let ctx = PrecisionContext::get(bits);
    let pole = w_coeff(-1)?;
    let scale = pole.scale.eval(bits);
    let sin_part = pole.trig.sin.compile(bits);
    let cos_part = pole.trig.cos.compile(bits);
    let quad = integrate_01(
        |a| {
            let w = &scale * (sin_part.eval(&a.t) * a.sin_pi() + cos_part.eval(&a.t) * a.cos_pi());
            a.tan_half_pi() * w
        },
        &acc.quad_options(),
    )?;
    let z = z.with_bits(bits);
    let half_pi = ctx.pi.ldexp(-1);
    let cot_term = &half_pi * (&ctx.pi * (BigReal::one(bits) - &z)).cot();
    let value = cot_term + &half_pi * &quad.value / &z;
    Ok(Evaluated { value, quad })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BigReal, b: &BigReal, exp2: i32) -> bool {
        (a - b).abs() < BigReal::one(a.bits()).ldexp(exp2)
    }

    #[test]
    fn zeta_two_methods_agree() {
        for s in [2, 3, 7, 20] {
            let a = zeta_euler_maclaurin(s, 200);
            let b = zeta_eta_borwein(s, 200).unwrap();
            assert!(close(&a, &b, -195), "s = {s}: {a:?} vs {b:?}");
        }
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let bits = 192;
        let pi = BigReal::pi(bits);
        let want = &pi * &pi / BigReal::from_i64(6, bits);
        assert!(close(&zeta_ref(2, bits).unwrap(), &want, -188));
        assert!(zeta_ref(1, bits).is_err());
    }

    #[test]
    fn gamma_two_methods_agree() {
        let a = euler_gamma_brent_mcmillan(256);
        let b = euler_gamma_harmonic(256);
        assert!(close(&a, &b, -250));
        assert_eq!(a.to_decimal(20), "0.57721566490153286061");
    }

    #[test]
    fn digamma_special_values() {
        let bits = 160;
        let g = euler_gamma(bits);
        let one = BigReal::one(bits);
        assert!(close(&digamma_ref(&one, bits).unwrap(), &-g.clone(), -150));
        let two = BigReal::from_i64(2, bits);
        assert!(close(&digamma_ref(&two, bits).unwrap(), &(&one - &g), -150));
        let half = one.ldexp(-1);
        let want = -&g - BigReal::ln2(bits).ldexp(1);
        assert!(close(&digamma_ref(&half, bits).unwrap(), &want, -150));
        assert!(digamma_ref(&BigReal::zero(bits), bits).is_err());
    }

    #[test]
    fn mikolas_domain() {
        let acc = Accuracy::from_digits(20);
        assert!(digamma_mikolas(&BigReal::parse("1.5", acc.bits()).unwrap(), &acc).is_err());
        assert!(digamma_mikolas(&BigReal::zero(acc.bits()), &acc).is_err());
        assert!(digamma_mikolas(&BigReal::one(acc.bits()), &acc).is_err());
    }

    #[test]
    fn dl_residual_at_zero() {
        let r = dl_series_check(&BigReal::zero(128), 4, 128).unwrap();
        assert!(r.abs() < BigReal::one(128).ldexp(-120));
    }
}
