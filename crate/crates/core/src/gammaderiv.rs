//! Derivatives of Γ: the exact first derivative at positive integers, the
//! n-th derivative at 1 through complete Bell polynomials, and the
//! log-power integral that defines them.

use crate::bigreal::BigReal;
use crate::error::{domain, Error, Result};
use crate::exactnum::{binomial, factorial, harmonic, rat_int, Rational};
use crate::precision::Accuracy;
use crate::quad::integrate_semi_inf;
use crate::reference::{euler_gamma, zeta_ref, Evaluated};

/// Γ′(m+1) = m!·H_m − m!·γ, kept as its two rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaDerivExact {
    pub m: u32,
    pub rational_part: Rational,
    pub gamma_coefficient: Rational,
}

impl GammaDerivExact {
    pub fn value(&self, bits: usize) -> BigReal {
        BigReal::from_rational(&self.rational_part, bits)
            + BigReal::from_rational(&self.gamma_coefficient, bits) * euler_gamma(bits)
    }
}

pub fn gamma_first_derivative(m: u32) -> GammaDerivExact {
    let f = rat_int(factorial(m));
    GammaDerivExact {
        m,
        rational_part: &f * harmonic(m),
        gamma_coefficient: -f,
    }
}

/// Complete exponential Bell polynomial Bₙ(x₁, …, xₙ) by
/// B₀ = 1, B_{k+1} = Σ_{j≤k} C(k, j)·B_{k−j}·x_{j+1}.
pub fn bell_complete(n: usize, x: &[BigReal], bits: usize) -> Result<BigReal> {
    if x.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: x.len(),
        });
    }
    let mut b = vec![BigReal::one(bits)];
    for k in 0..n {
        let mut next = BigReal::zero(bits);
        for j in 0..=k {
            let c = BigReal::from_bigint(&binomial(k as u32, j as u32), bits);
            next = next + c * &b[k - j] * &x[j];
        }
        b.push(next);
    }
    Ok(b.pop().expect("B₀ is always present"))
}

/// Γ⁽ⁿ⁾(1) = (−1)ⁿ·Bₙ(γ, 1!ζ(2), …, (n−1)!ζ(n)).
pub fn gamma_nth_derivative_at_1(n: u32, bits: usize) -> Result<BigReal> {
    let mut x = Vec::with_capacity(n as usize);
    if n >= 1 {
        x.push(euler_gamma(bits));
    }
    for k in 2..=n {
        let f = BigReal::from_bigint(&factorial(k - 1), bits);
        x.push(f * zeta_ref(k, bits)?);
    }
    let b = bell_complete(n as usize, &x, bits)?;
    Ok(if n.is_multiple_of(2) { b } else { -b })
}

/// ∫₀^∞ t^{z−1}·e^{−t}·(ln t)ⁿ dt, which is Γ⁽ⁿ⁾(z).
pub fn gamma_nth_derivative_numeric(n: u32, z: &BigReal, acc: &Accuracy) -> Result<Evaluated> {
    if z.is_negative() || z.is_zero() {
        return Err(domain("z must be positive"));
    }
    let bits = acc.bits();
    let z_minus_1 = z.with_bits(bits) - BigReal::one(bits);
    let power = !z_minus_1.is_zero();
    let quad = integrate_semi_inf(
        |t| {
            let ln_t = t.ln();
            let mut log_part = if power {
                (&z_minus_1 * &ln_t - t).exp()
            } else {
                (-t).exp()
            };
            for _ in 0..n {
                log_part = log_part * &ln_t;
            }
            log_part
        },
        &acc.quad_options(),
    )?;
    Ok(Evaluated {
        value: quad.value.clone(),
        quad,
    })
}
