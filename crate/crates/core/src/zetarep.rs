//! ζ(2p+1) by quadrature against tan(πt/2), in four equivalent forms, plus
//! the exact companions: ζ(2p) in closed form and the sine-moment lemma.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bigreal::BigReal;
use crate::error::{domain, Error, Result};
use crate::exactnum::{
    bernoulli_number, bernoulli_polynomial, euler_polynomial, factorial, rat, rat_int, Rational,
    RationalPoly,
};
use crate::expansion::{p_poly, p_poly_with, BernoulliSource, ExactBernoulli};
use crate::pipoly::{integrate_against_sin, NumericPoly, PiLaurent, PiPoly};
use crate::precision::Accuracy;
use crate::quad::{integrate_01, Abscissa, QuadResult};
use crate::reference::{zeta_ref, Evaluated};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Representation {
    /// ½ + (π/2)∫ tan(πt/2)·cos(πt)·𝒫₂ₚ(t) dt
    Theorem,
    /// −(π/2)∫ tan(πt/2)·𝒫₂ₚ(t) dt
    Corollary,
    /// Euler-polynomial form with E₂ₚ(t)
    CkEuler,
    /// Bernoulli-polynomial form with B₂ₚ₊₁(t)
    CkBernoulli,
}

impl Representation {
    pub const ALL: [Representation; 4] = [
        Representation::Theorem,
        Representation::Corollary,
        Representation::CkEuler,
        Representation::CkBernoulli,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Representation::Theorem => "theorem",
            Representation::Corollary => "corollary",
            Representation::CkEuler => "ck-euler",
            Representation::CkBernoulli => "ck-bernoulli",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "-").as_str() {
            "theorem" => Ok(Representation::Theorem),
            "corollary" => Ok(Representation::Corollary),
            "ck-euler" => Ok(Representation::CkEuler),
            "ck-bernoulli" => Ok(Representation::CkBernoulli),
            _ => Err(domain(format!("unknown representation `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZetaComputation {
    pub p: u32,
    pub representation: Representation,
    pub value: BigReal,
    pub quad: QuadResult,
    pub reference: BigReal,
}

impl ZetaComputation {
    /// |value − reference|, recomputed on each call.
    pub fn abs_error(&self) -> BigReal {
        (&self.value - &self.reference).abs()
    }
}

/// A rational polynomial compiled twice: in t for the lower half of (0,1)
/// and in s = 1 − t for the upper half, so a root at t = 1 is resolved
/// to full relative precision.
pub(crate) struct EndpointPoly {
    near: NumericPoly,
    far: NumericPoly,
}

impl EndpointPoly {
    pub(crate) fn new(poly: &RationalPoly, bits: usize) -> Self {
        // R(1 − s) = R(−(s − 1))
        let reflected = poly.dilate(&rat(-1, 1)).shift(&rat(-1, 1));
        Self {
            near: NumericPoly::from_rational_poly(poly, bits),
            far: NumericPoly::from_rational_poly(&reflected, bits),
        }
    }

    pub(crate) fn eval(&self, a: &Abscissa) -> BigReal {
        let half = BigReal::one(a.t.bits()).ldexp(-1);
        if a.t <= half {
            self.near.eval(&a.t)
        } else {
            self.far.eval(&a.one_minus_t)
        }
    }
}

/// Splits a π-homogeneous polynomial into (π-degree, rational part).
fn split_homogeneous(poly: &PiPoly) -> Result<(u32, RationalPoly)> {
    let deg = poly
        .pi_degree()
        .ok_or_else(|| Error::Grading("expected a π-homogeneous polynomial".into()))?;
    Ok((deg, RationalPoly::from_coeffs(poly.terms().map(|(i, _, c)| (i, c.clone())))))
}

/// The pieces every form shares:
/// value = offset + rational·π^{pi_exp}·∫₀¹ tan(πt/2)·[cos(πt)]·R(t) dt.
struct Form {
    offset: Rational,
    rational: Rational,
    pi_exp: u32,
    cos_weight: bool,
    poly: RationalPoly,
}

fn form(p: u32, rep: Representation) -> Result<Form> {
    if p == 0 {
        return Err(domain("p must be ≥ 1"));
    }
    let two_p = 2 * p;
    let sign = if p.is_multiple_of(2) { rat(1, 1) } else { rat(-1, 1) };
    Ok(match rep {
        Representation::Theorem | Representation::Corollary => {
            let (deg, poly) = split_homogeneous(&p_poly(p)?)?;
            let theorem = rep == Representation::Theorem;
            Form {
                offset: if theorem { rat(1, 2) } else { Rational::zero() },
                rational: if theorem { rat(1, 2) } else { rat(-1, 2) },
                pi_exp: deg + 1,
                cos_weight: theorem,
                poly,
            }
        }
        Representation::CkEuler => {
            let two_pow = rat_int(BigInt::one() << (two_p - 1) as usize);
            let denom = rat_int((BigInt::one() << (two_p + 1) as usize) - 1)
                * rat_int(factorial(two_p));
            Form {
                offset: Rational::zero(),
                rational: sign * two_pow / denom,
                pi_exp: two_p + 1,
                cos_weight: false,
                poly: euler_polynomial(two_p),
            }
        }
        Representation::CkBernoulli => {
            let two_pow = rat_int(BigInt::one() << two_p as usize);
            Form {
                offset: Rational::zero(),
                rational: sign * two_pow / rat_int(factorial(two_p + 1)),
                pi_exp: two_p + 1,
                cos_weight: false,
                poly: bernoulli_polynomial(two_p + 1),
            }
        }
    })
}

/// ζ(2p+1) by the chosen representation, with a freshly computed reference.
pub fn zeta_odd(p: u32, rep: Representation, acc: &Accuracy) -> Result<ZetaComputation> {
    let f = form(p, rep)?;
    let bits = acc.bits();
    let poly = EndpointPoly::new(&f.poly, bits);
    let prefactor = BigReal::from_rational(&f.rational, bits) * BigReal::pi(bits).powi(f.pi_exp);
    let one = BigReal::one(bits);
    let scale = prefactor.abs().max(one);
    let mut opts = acc.quad_options();
    opts.tol = acc.tolerance() / scale;
    let quad = integrate_01(
        |a| {
            let base = a.tan_half_pi() * poly.eval(a);
            if f.cos_weight {
                base * a.cos_pi()
            } else {
                base
            }
        },
        &opts,
    )?;
    let value = BigReal::from_rational(&f.offset, bits) + &prefactor * &quad.value;
    let mut quad = quad;
    quad.error_estimate = &quad.error_estimate * prefactor.abs();
    Ok(ZetaComputation {
        p,
        representation: rep,
        value,
        quad,
        reference: zeta_ref(2 * p + 1, bits)?,
    })
}

pub fn zeta_odd_theorem(p: u32, acc: &Accuracy) -> Result<ZetaComputation> {
    zeta_odd(p, Representation::Theorem, acc)
}

pub fn zeta_odd_corollary(p: u32, acc: &Accuracy) -> Result<ZetaComputation> {
    zeta_odd(p, Representation::Corollary, acc)
}

/// `euler = true` selects the E₂ₚ form, otherwise the B₂ₚ₊₁ form.
pub fn zeta_odd_ck(p: u32, euler: bool, acc: &Accuracy) -> Result<ZetaComputation> {
    let rep = if euler {
        Representation::CkEuler
    } else {
        Representation::CkBernoulli
    };
    zeta_odd(p, rep, acc)
}

/// ζ(2p) = |B₂ₚ|·2^{2p−1}/(2p)!·π^{2p}
pub fn zeta_even_closed(p: u32) -> Result<PiLaurent> {
    if p == 0 {
        return Err(domain("p must be ≥ 1"));
    }
    let two_p = 2 * p;
    let c = bernoulli_number(two_p).abs() * rat_int(BigInt::one() << (two_p - 1) as usize)
        / rat_int(factorial(two_p));
    Ok(PiLaurent::monomial(two_p as i32, c))
}

pub fn zeta_even_value(p: u32, bits: usize) -> Result<BigReal> {
    Ok(zeta_even_closed(p)?.eval(bits))
}

/// ∫₀¹ 𝒫₂ₚ(t)·sin(πt) dt in exact arithmetic; anything but −π⁻¹ is an error.
pub fn lemma_check(p: u32) -> Result<PiLaurent> {
    lemma_check_with(p, &ExactBernoulli)
}

pub fn lemma_check_with(p: u32, bern: &dyn BernoulliSource) -> Result<PiLaurent> {
    let got = integrate_against_sin(&p_poly_with(p, bern)?);
    if got != PiLaurent::monomial(-1, rat(-1, 1)) {
        return Err(Error::LemmaViolation {
            p,
            got: format!("{got:?}"),
        });
    }
    Ok(got)
}

/// (π/2)∫ tan(πt/2)·(1 + cos πt)·𝒫₂ₚ(t) dt + ½, which vanishes because
/// tan(πt/2)(1 + cos πt) = sin(πt).
pub fn half_angle_residual(p: u32, acc: &Accuracy) -> Result<Evaluated> {
    let (deg, poly) = split_homogeneous(&p_poly(p)?)?;
    let bits = acc.bits();
    let poly = EndpointPoly::new(&poly, bits);
    let one = BigReal::one(bits);
    let prefactor = BigReal::pi(bits).powi(deg + 1).ldexp(-1);
    let mut opts = acc.quad_options();
    opts.tol = acc.tolerance() / prefactor.clone().max(one.clone());
    let quad = integrate_01(
        |a| a.tan_half_pi() * (&one + a.cos_pi()) * poly.eval(a),
        &opts,
    )?;
    let value = &prefactor * &quad.value + one.ldexp(-1);
    Ok(Evaluated { value, quad })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::CorruptedBernoulli;

    #[test]
    fn even_closed_small() {
        assert_eq!(zeta_even_closed(1).unwrap(), PiLaurent::monomial(2, rat(1, 6)));
        assert_eq!(zeta_even_closed(2).unwrap(), PiLaurent::monomial(4, rat(1, 90)));
        assert_eq!(zeta_even_closed(3).unwrap(), PiLaurent::monomial(6, rat(1, 945)));
        assert!(zeta_even_closed(0).is_err());
    }

    #[test]
    fn lemma_exact() {
        for p in 1..=6 {
            assert_eq!(lemma_check(p).unwrap(), PiLaurent::monomial(-1, rat(-1, 1)));
        }
    }

    #[test]
    fn lemma_detects_corruption() {
        let bad = CorruptedBernoulli {
            index: 6,
            value: rat(1, 41),
        };
        assert!(matches!(
            lemma_check_with(3, &bad),
            Err(Error::LemmaViolation { p: 3, .. })
        ));
    }

    #[test]
    fn representation_names_round_trip() {
        for r in Representation::ALL {
            assert_eq!(r.as_str().parse::<Representation>().unwrap(), r);
        }
        assert!("nope".parse::<Representation>().is_err());
    }

    #[test]
    fn zeta3_all_forms() {
        let acc = Accuracy::from_digits(30);
        for rep in Representation::ALL {
            let z = zeta_odd(1, rep, &acc).unwrap();
            assert!(z.quad.converged);
            assert!(z.abs_error() < BigReal::parse("1e-22", acc.bits()).unwrap(), "{rep}");
        }
    }

    #[test]
    fn ck_prefactor_p1() {
        // −2π³/14 and −4π³/6
        assert_eq!(form(1, Representation::CkEuler).unwrap().rational, rat(-1, 7));
        assert_eq!(form(1, Representation::CkBernoulli).unwrap().rational, rat(-2, 3));
    }

    #[test]
    fn endpoint_poly_matches() {
        let poly = RationalPoly::from_coeffs([(1, rat(1, 1)), (3, rat(-1, 1))]);
        let ep = EndpointPoly::new(&poly, 128);
        for t in [rat(1, 5), rat(4, 5)] {
            let bt = BigReal::from_rational(&t, 128);
            let a = Abscissa {
                one_minus_t: BigReal::from_rational(&(rat(1, 1) - &t), 128),
                t: bt,
            };
            let want = BigReal::from_rational(&poly.eval(&t), 128);
            assert!((ep.eval(&a) - want).abs() < BigReal::one(128).ldexp(-120));
        }
    }
}
