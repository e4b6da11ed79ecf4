//! Command-line front end for the `oddzeta` binary.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 quadrature did not
//! converge, 3 a verification check failed.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bigreal::BigReal;
use crate::error::{domain, Error, Result};
use crate::exactnum::{bernoulli_number, parse_rational, rat, Rational, RationalPoly};
use crate::expansion::{
    has_odd_t_parity, p_poly, p_poly_with, vanishes_at, w_coeff, BernoulliSource,
    CorruptedBernoulli, ExactBernoulli,
};
use crate::gammaderiv::{
    gamma_first_derivative, gamma_nth_derivative_at_1, gamma_nth_derivative_numeric,
};
use crate::pipoly::{render_product, PiPoly, TermRecord};
use crate::precision::Accuracy;
use crate::reference::{
    digamma_mikolas, digamma_ref, dl_series_check, euler_gamma_brent_mcmillan,
    euler_gamma_harmonic, pole_cancellation, zeta_eta_borwein, zeta_euler_maclaurin, zeta_ref,
};
use crate::zetarep::{
    half_angle_residual, lemma_check_with, zeta_even_value, zeta_odd, Representation,
    ZetaComputation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "oddzeta",
    version,
    about = "Odd zeta values as polynomial integrals against tan(πt/2)"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate ζ(2p+1) with one integral representation
    Compute {
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t = RepArg::Theorem)]
        rep: RepArg,
        #[command(flatten)]
        common: Common,
    },
    /// Print the polynomial 𝒫₂ₚ(t)
    Poly {
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Run the exact and numerical self-checks
    Verify {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        max_p: u32,
        /// Replace B₆ with a wrong value (exercises the failure path)
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        common: Common,
    },
    /// ψ(z) from the tan-weighted integral, against a reference
    Digamma {
        /// A decimal or fraction in (0, 1), e.g. 0.25 or 1/3
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[command(flatten)]
        common: Common,
    },
    /// Γ⁽ⁿ⁾(1) from Bell polynomials, against the log-power integral
    Gammaderiv {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// ζ(2p+1) for p = 1..max-p in every representation
    Table {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        max_p: u32,
        /// Restrict to one representation
        #[arg(long, value_enum)]
        rep: Option<RepArg>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Requested decimal digits
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(10..=10000))]
    pub digits: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, hide = true, default_value_t = crate::quad::DEFAULT_MAX_LEVEL)]
    pub max_level: u32,
}

impl Common {
    fn accuracy(&self) -> Accuracy {
        Accuracy::from_digits(self.digits).with_max_level(self.max_level)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepArg {
    Theorem,
    Corollary,
    CkEuler,
    CkBernoulli,
}

impl From<RepArg> for Representation {
    fn from(r: RepArg) -> Self {
        match r {
            RepArg::Theorem => Representation::Theorem,
            RepArg::Corollary => Representation::Corollary,
            RepArg::CkEuler => Representation::CkEuler,
            RepArg::CkBernoulli => Representation::CkBernoulli,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
    Csv,
}

/// The JSON shape of every numeric command. Numbers are decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub value: String,
    pub error_estimate: String,
    pub reference: String,
    pub diagnostics: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyReport {
    pub command: String,
    pub inputs: Value,
    pub terms: Vec<TermRecord>,
    pub text: String,
    pub latex: String,
    pub factored: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub command: String,
    pub inputs: Value,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub command: String,
    pub inputs: Value,
    pub rows: Vec<Report>,
}

/// Pretty JSON with a trailing newline; re-serializing the parsed value
/// gives the same bytes.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports always serialize");
    s.push('\n');
    s
}

struct Output {
    body: String,
    code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Self {
            body,
            code: EXIT_OK,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoConvergence(_) => EXIT_NO_CONVERGENCE,
        Error::LemmaViolation { .. } => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let common = match &config.command {
        Command::Compute { common, .. }
        | Command::Poly { common, .. }
        | Command::Verify { common, .. }
        | Command::Digamma { common, .. }
        | Command::Gammaderiv { common, .. }
        | Command::Table { common, .. } => common.clone(),
    };
    let result = match &config.command {
        Command::Compute { p, rep, common } => cmd_compute(*p, (*rep).into(), common),
        Command::Poly { p, common } => cmd_poly(*p, common),
        Command::Verify {
            max_p,
            inject_fault,
            common,
        } => cmd_verify(*max_p, *inject_fault, common),
        Command::Digamma { z, common } => cmd_digamma(z, common),
        Command::Gammaderiv { n, common } => cmd_gammaderiv(*n, common),
        Command::Table { max_p, rep, common } => cmd_table(*max_p, rep.map(Into::into), common),
    };
    match result {
        Ok(o) => {
            if let Some(path) = &common.out {
                if let Err(e) = std::fs::write(path, &o.body) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            } else {
                let _ = out.write_all(o.body.as_bytes());
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn sci(x: &BigReal) -> String {
    x.to_scientific(3)
}

fn zeta_report(z: &ZetaComputation, digits: u32) -> Report {
    let d = digits as usize;
    Report {
        command: "compute".into(),
        inputs: json!({
            "p": z.p,
            "rep": z.representation.as_str(),
            "digits": digits,
        }),
        value: z.value.to_decimal(d),
        error_estimate: sci(&z.quad.error_estimate),
        reference: z.reference.to_decimal(d),
        diagnostics: json!({
            "s": 2 * z.p + 1,
            "abs_error": sci(&z.abs_error()),
            "bits": z.value.bits(),
            "levels": z.quad.levels,
            "evaluations": z.quad.evaluations,
            "converged": z.quad.converged,
        }),
    }
}

const CSV_HEADER: &str = "p,rep,value,abs_error,evaluations";

fn csv_row(z: &ZetaComputation, digits: u32) -> String {
    format!(
        "{},{},{},{},{}",
        z.p,
        z.representation,
        z.value.to_decimal(digits as usize),
        sci(&z.abs_error()),
        z.quad.evaluations
    )
}

fn cmd_compute(p: u32, rep: Representation, common: &Common) -> Result<Output> {
    if p == 0 {
        return Err(domain("p must be ≥ 1"));
    }
    let acc = common.accuracy();
    let z = zeta_odd(p, rep, &acc)?;
    let d = common.digits as usize;
    let body = match common.format {
        Format::Json => to_json(&zeta_report(&z, common.digits)),
        Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(&z, common.digits)),
        Format::Latex => format!("\\zeta({}) \\approx {}\n", 2 * p + 1, z.value.to_decimal(d)),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "zeta({}) via {rep}, {} digits", 2 * p + 1, common.digits);
            let _ = writeln!(s, "  value           {}", z.value.to_decimal(d));
            let _ = writeln!(s, "  reference       {}", z.reference.to_decimal(d));
            let _ = writeln!(s, "  abs error       {}", sci(&z.abs_error()));
            let _ = writeln!(s, "  error estimate  {}", sci(&z.quad.error_estimate));
            let _ = writeln!(
                s,
                "  quadrature      {} levels, {} evaluations, {} bits",
                z.quad.levels,
                z.quad.evaluations,
                acc.bits()
            );
            s
        }
    };
    Ok(Output::ok(body))
}

/// A stored factorization of 𝒫₂ₚ: q·π^{2p}·∏ fᵢ(t).
struct Factored {
    p: u32,
    q: (i64, i64),
    factors: &'static [&'static [(u32, i64)]],
}

const T: &[(u32, i64)] = &[(1, 1)];
const T2_MINUS_1: &[(u32, i64)] = &[(2, 1), (0, -1)];

const CATALOG: [Factored; 5] = [
    Factored {
        p: 1,
        q: (1, 6),
        factors: &[T, T2_MINUS_1],
    },
    Factored {
        p: 2,
        q: (-1, 360),
        factors: &[T, T2_MINUS_1, &[(2, 3), (0, -7)]],
    },
    Factored {
        p: 3,
        q: (1, 15120),
        factors: &[T, T2_MINUS_1, &[(4, 3), (2, -18), (0, 31)]],
    },
    Factored {
        p: 4,
        q: (-1, 1814400),
        factors: &[T, T2_MINUS_1, &[(6, 5), (4, -55), (2, 239), (0, -381)]],
    },
    Factored {
        p: 5,
        q: (1, 119750400),
        factors: &[
            T,
            T2_MINUS_1,
            &[(2, 1), (0, -5)],
            &[(6, 3), (4, -37), (2, 225), (0, -511)],
        ],
    },
];

impl Factored {
    fn expand(&self) -> PiPoly {
        let poly = self.factors.iter().fold(
            RationalPoly::constant(rat(self.q.0, self.q.1)),
            |acc, f| acc.mul(&RationalPoly::from_coeffs(f.iter().map(|(e, c)| (*e, rat(*c, 1))))),
        );
        PiPoly::from_rational_poly(&poly, 2 * self.p)
    }

    fn render(&self, latex: bool) -> String {
        let factors: Vec<Vec<(u32, BigInt)>> = self
            .factors
            .iter()
            .map(|f| f.iter().map(|(e, c)| (*e, BigInt::from(*c))).collect())
            .collect();
        render_product(&rat(self.q.0, self.q.1), 2 * self.p, &factors, latex)
    }
}

/// Checks every stored factorization against the exact expansion.
fn verify_catalog() -> Result<()> {
    for f in &CATALOG {
        if f.expand() != p_poly(f.p)? {
            return Err(Error::Grading(format!(
                "stored factorization for p = {} does not expand to the polynomial",
                f.p
            )));
        }
    }
    Ok(())
}

fn cmd_poly(p: u32, common: &Common) -> Result<Output> {
    if p == 0 {
        return Err(domain("p must be ≥ 1"));
    }
    if let Err(e) = verify_catalog() {
        return Ok(Output {
            body: format!("internal check failed: {e}\n"),
            code: EXIT_VERIFY_FAILED,
        });
    }
    let poly = p_poly(p)?;
    let factored = CATALOG.iter().find(|f| f.p == p);
    let body = match common.format {
        Format::Latex => format!("{}\n", poly.to_latex()),
        Format::Csv => {
            let mut s = String::from("t_exp,pi_exp,num,den\n");
            for r in poly.to_records() {
                let _ = writeln!(s, "{},{},{},{}", r.t_exp, r.pi_exp, r.num, r.den);
            }
            s
        }
        Format::Json => to_json(&PolyReport {
            command: "poly".into(),
            inputs: json!({ "p": p }),
            terms: poly.to_records(),
            text: poly.to_text(),
            latex: poly.to_latex(),
            factored: factored.map(|f| f.render(false)),
        }),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "P_{}(t), the polynomial for zeta({})", 2 * p, 2 * p + 1);
            let _ = writeln!(s, "  expanded  {}", poly.to_text());
            if let Some(f) = factored {
                let _ = writeln!(s, "  factored  {}", f.render(false));
                let _ = writeln!(s, "            (factorization checked against the expansion)");
            }
            s
        }
    };
    Ok(Output::ok(body))
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn failed(name: impl Into<String>, e: Error) -> CheckOutcome {
    check(name, false, e.to_string())
}

fn pow10_neg(e: u32, bits: usize) -> BigReal {
    BigReal::parse(&format!("1e-{e}"), bits).expect("literal")
}

type CheckFn<'a> = Box<dyn Fn() -> CheckOutcome + Send + Sync + 'a>;

/// Every check the verify command runs, in report order.
pub fn verify_checks(max_p: u32, digits: u32, bern: &dyn BernoulliSource) -> Vec<CheckOutcome> {
    let acc = Accuracy::from_digits(digits);
    let bits = acc.bits();
    // Loose enough to absorb prefactor rounding, tight enough to catch any
    // wrong coefficient.
    let tol_exp = digits.saturating_sub(10).max(1);
    let tol = pow10_neg(tol_exp, bits);
    let ps = move || 1..=max_p;
    let range = format!("p = 1..{max_p}");

    let checks: Vec<CheckFn> = vec![
        Box::new(|| {
            let name = format!("lemma: ∫P·sin(πt) = -1/π exactly, {range}");
            for p in ps() {
                if let Err(e) = lemma_check_with(p, bern) {
                    return failed(name, e);
                }
            }
            check(name, true, "exact")
        }),
        Box::new(|| {
            let name = format!("closed form equals Cauchy product, {range}");
            for p in ps() {
                let w = match w_coeff(2 * p as i32) {
                    Ok(w) => w,
                    Err(e) => return failed(name, e),
                };
                let closed = match p_poly_with(p, bern) {
                    Ok(c) => c,
                    Err(e) => return failed(name, e),
                };
                if !w.trig.sin.is_zero() || w.trig.cos != closed {
                    return check(name, false, format!("mismatch at p = {p}"));
                }
            }
            check(name, true, "exact")
        }),
        Box::new(|| {
            let name = format!("odd parity, π-degree 2p, roots 0 and ±1, {range}");
            for p in ps() {
                let poly = match p_poly_with(p, bern) {
                    Ok(c) => c,
                    Err(e) => return failed(name, e),
                };
                let ok = has_odd_t_parity(&poly)
                    && poly.pi_degree() == Some(2 * p)
                    && [rat(0, 1), rat(1, 1), rat(-1, 1)]
                        .iter()
                        .all(|t| vanishes_at(&poly, t));
                if !ok {
                    return check(name, false, format!("fails at p = {p}"));
                }
            }
            check(name, true, "exact")
        }),
        Box::new(|| {
            let name = format!("four representations match zeta_ref, {range}");
            let mut worst = BigReal::zero(bits);
            for p in ps() {
                for rep in Representation::ALL {
                    match zeta_odd(p, rep, &acc) {
                        Ok(z) => worst = worst.max(z.abs_error()),
                        Err(e) => return failed(name, e),
                    }
                }
            }
            check(&name, worst < tol, format!("max abs error {}", sci(&worst)))
        }),
        Box::new(|| {
            let name = format!("half-angle step: (π/2)∫tan·(1+cos)·P = -1/2, {range}");
            let mut worst = BigReal::zero(bits);
            for p in ps() {
                match half_angle_residual(p, &acc) {
                    Ok(r) => worst = worst.max(r.value.abs()),
                    Err(e) => return failed(name, e),
                }
            }
            check(&name, worst < tol, format!("max residual {}", sci(&worst)))
        }),
        Box::new(|| {
            let name = format!("zeta(2p) closed form matches zeta_ref, {range}");
            let mut worst = BigReal::zero(bits);
            for p in ps() {
                let got = zeta_even_value(p, bits).and_then(|v| Ok(v - zeta_ref(2 * p, bits)?));
                match got {
                    Ok(d) => worst = worst.max(d.abs()),
                    Err(e) => return failed(name, e),
                }
            }
            check(&name, worst < tol, format!("max abs error {}", sci(&worst)))
        }),
        Box::new(|| {
            let name = "zeta oracles agree (Euler-Maclaurin vs eta), s = 2..25";
            let mut worst = BigReal::zero(bits);
            for s in 2..=25 {
                match zeta_eta_borwein(s, bits) {
                    Ok(b) => worst = worst.max((zeta_euler_maclaurin(s, bits) - b).abs()),
                    Err(e) => return failed(name, e),
                }
            }
            let bound = BigReal::one(bits).ldexp(-(bits as i32) + 8);
            check(name, worst < bound, format!("max difference {}", sci(&worst)))
        }),
        Box::new(|| {
            let name = "gamma oracles agree (Brent-McMillan vs harmonic)";
            let diff = (euler_gamma_brent_mcmillan(bits) - euler_gamma_harmonic(bits)).abs();
            let bound = BigReal::one(bits).ldexp(-(bits as i32) + 8);
            check(name, diff < bound, format!("difference {}", sci(&diff)))
        }),
        Box::new(|| {
            let name = "digamma: integral matches reference, z = k/16";
            let mut worst = BigReal::zero(bits);
            for k in 1..16 {
                let z = BigReal::from_rational(&rat(k, 16), bits);
                let got = digamma_mikolas(&z, &acc)
                    .and_then(|m| Ok(m.value - digamma_ref(&z, bits)?));
                match got {
                    Ok(d) => worst = worst.max(d.abs()),
                    Err(e) => return failed(name, e),
                }
            }
            check(name, worst < tol, format!("max abs error {}", sci(&worst)))
        }),
        Box::new(|| {
            let name = "digamma reflection: psi(1-z) - psi(z) = pi*cot(pi*z), z = 1/3";
            let z = BigReal::from_rational(&rat(1, 3), bits);
            let w = BigReal::from_rational(&rat(2, 3), bits);
            let got = digamma_mikolas(&w, &acc)
                .and_then(|a| Ok(a.value - digamma_mikolas(&z, &acc)?.value));
            match got {
                Ok(d) => {
                    let pi = BigReal::pi(bits);
                    let diff = (d - &pi * (&pi * &z).cot()).abs();
                    check(name, diff < tol, format!("difference {}", sci(&diff)))
                }
                Err(e) => failed(name, e),
            }
        }),
        Box::new(|| {
            let name = "series coefficients: residual is O(z^K)";
            let cases = [(16, 4u32), (8, 8u32)];
            let mut detail = Vec::new();
            let mut ok = true;
            for (e, k) in cases {
                let z = BigReal::one(bits).ldexp(-e);
                match dl_series_check(&z, k, bits) {
                    Ok(r) => {
                        let bound = BigReal::one(bits).ldexp(-e * k as i32 + 4);
                        ok &= r.abs() < bound;
                        detail.push(format!("z=2^-{e},K={k}: {}", sci(&r.abs())));
                    }
                    Err(err) => return failed(name, err),
                }
            }
            check(name, ok, detail.join("; "))
        }),
        Box::new(|| {
            let name = "cotangent pole cancelled by the 1/z term";
            let mut vals = Vec::new();
            for e in [2u32, 3] {
                let z = pow10_neg(e, bits);
                match pole_cancellation(&z, &acc) {
                    Ok(v) => vals.push(v.value),
                    Err(err) => return failed(name, err),
                }
            }
            let bound = BigReal::from_i64(10, bits);
            let ok = vals.iter().all(|v| v.abs() < bound);
            let shown: Vec<String> = vals.iter().map(sci).collect();
            check(name, ok, format!("values {}", shown.join(", ")))
        }),
        Box::new(|| {
            let name = "Gamma derivatives at 1: Bell form vs integral, n = 0..6";
            let one = BigReal::one(bits);
            let mut worst = BigReal::zero(bits);
            for n in 0..=6 {
                let got = gamma_nth_derivative_at_1(n, bits)
                    .and_then(|b| Ok(b - gamma_nth_derivative_numeric(n, &one, &acc)?.value));
                match got {
                    Ok(d) => worst = worst.max(d.abs()),
                    Err(e) => return failed(name, e),
                }
            }
            check(name, worst < tol, format!("max abs difference {}", sci(&worst)))
        }),
        Box::new(|| {
            let name = "Gamma'(m+1) = m!(H_m - gamma), m = 0..5";
            let mut worst = BigReal::zero(bits);
            for m in 0..=5u32 {
                let z = BigReal::from_u64(m as u64 + 1, bits);
                match gamma_nth_derivative_numeric(1, &z, &acc) {
                    Ok(v) => {
                        worst = worst.max((v.value - gamma_first_derivative(m).value(bits)).abs())
                    }
                    Err(e) => return failed(name, e),
                }
            }
            check(name, worst < tol, format!("max abs difference {}", sci(&worst)))
        }),
    ];
    checks.par_iter().map(|c| c()).collect()
}

fn cmd_verify(max_p: u32, inject_fault: bool, common: &Common) -> Result<Output> {
    let corrupted;
    let bern: &dyn BernoulliSource = if inject_fault {
        corrupted = CorruptedBernoulli {
            index: 6,
            value: bernoulli_number(6) * rat(42, 41),
        };
        &corrupted
    } else {
        &ExactBernoulli
    };
    let checks = verify_checks(max_p, common.digits, bern);
    let passed = checks.iter().all(|c| c.passed);
    let body = match common.format {
        Format::Json => to_json(&VerifyReport {
            command: "verify".into(),
            inputs: json!({ "max_p": max_p, "digits": common.digits }),
            checks: checks.clone(),
            passed,
        }),
        Format::Csv => {
            let mut s = String::from("check,passed,detail\n");
            for c in &checks {
                let _ = writeln!(s, "{},{},{}", csv_field(&c.name), c.passed, csv_field(&c.detail));
            }
            s
        }
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{lll}\n");
            for c in &checks {
                let _ = writeln!(
                    s,
                    "{} & {} & {} \\\\",
                    latex_escape(&c.name),
                    if c.passed { "pass" } else { "FAIL" },
                    latex_escape(&c.detail)
                );
            }
            s.push_str("\\end{tabular}\n");
            s
        }
        Format::Text => {
            let width = checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
            let mut s = String::new();
            for c in &checks {
                let pad = width - c.name.chars().count();
                let _ = writeln!(
                    s,
                    "{}{}  {}  {}",
                    c.name,
                    " ".repeat(pad),
                    if c.passed { "PASS" } else { "FAIL" },
                    c.detail
                );
            }
            let n_pass = checks.iter().filter(|c| c.passed).count();
            let _ = writeln!(s, "{n_pass}/{} checks passed", checks.len());
            s
        }
    };
    Ok(Output {
        body,
        code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn latex_escape(s: &str) -> String {
    s.replace('_', "\\_").replace('^', "\\^{}")
}

fn parse_unit(z: &str, bits: usize) -> Result<(Rational, BigReal)> {
    let q = parse_rational(z).ok_or_else(|| domain(format!("cannot parse z = `{z}`")))?;
    let v = BigReal::from_rational(&q, bits);
    Ok((q, v))
}

fn cmd_digamma(z_arg: &str, common: &Common) -> Result<Output> {
    let acc = common.accuracy();
    let bits = acc.bits();
    let (_, z) = parse_unit(z_arg, bits)?;
    let m = digamma_mikolas(&z, &acc)?;
    let reference = digamma_ref(&z, bits)?;
    let diff = (&m.value - &reference).abs();
    let d = common.digits as usize;
    let body = match common.format {
        Format::Json => to_json(&Report {
            command: "digamma".into(),
            inputs: json!({ "z": z_arg, "digits": common.digits }),
            value: m.value.to_decimal(d),
            error_estimate: sci(&m.quad.error_estimate),
            reference: reference.to_decimal(d),
            diagnostics: json!({
                "abs_error": sci(&diff),
                "bits": bits,
                "levels": m.quad.levels,
                "evaluations": m.quad.evaluations,
                "converged": m.quad.converged,
            }),
        }),
        Format::Csv => format!(
            "z,value,reference,abs_error,evaluations\n{},{},{},{},{}\n",
            z_arg,
            m.value.to_decimal(d),
            reference.to_decimal(d),
            sci(&diff),
            m.quad.evaluations
        ),
        Format::Latex => format!("\\psi({z_arg}) \\approx {}\n", m.value.to_decimal(d)),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "psi({z_arg}), {} digits", common.digits);
            let _ = writeln!(s, "  integral    {}", m.value.to_decimal(d));
            let _ = writeln!(s, "  reference   {}", reference.to_decimal(d));
            let _ = writeln!(s, "  difference  {}", sci(&diff));
            s
        }
    };
    Ok(Output::ok(body))
}

fn cmd_gammaderiv(n: u32, common: &Common) -> Result<Output> {
    let acc = common.accuracy();
    let bits = acc.bits();
    let bell = gamma_nth_derivative_at_1(n, bits)?;
    let numeric = gamma_nth_derivative_numeric(n, &BigReal::one(bits), &acc)?;
    let diff = (&bell - &numeric.value).abs();
    let d = common.digits as usize;
    let body = match common.format {
        Format::Json => to_json(&Report {
            command: "gammaderiv".into(),
            inputs: json!({ "n": n, "digits": common.digits }),
            value: bell.to_decimal(d),
            error_estimate: sci(&numeric.quad.error_estimate),
            reference: numeric.value.to_decimal(d),
            diagnostics: json!({
                "difference": sci(&diff),
                "bits": bits,
                "levels": numeric.quad.levels,
                "evaluations": numeric.quad.evaluations,
                "converged": numeric.quad.converged,
            }),
        }),
        Format::Csv => format!(
            "n,bell,integral,difference\n{n},{},{},{}\n",
            bell.to_decimal(d),
            numeric.value.to_decimal(d),
            sci(&diff)
        ),
        Format::Latex => format!("\\Gamma^{{({n})}}(1) \\approx {}\n", bell.to_decimal(d)),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "Gamma^({n})(1), {} digits", common.digits);
            let _ = writeln!(s, "  Bell form   {}", bell.to_decimal(d));
            let _ = writeln!(s, "  integral    {}", numeric.value.to_decimal(d));
            let _ = writeln!(s, "  difference  {}", sci(&diff));
            s
        }
    };
    Ok(Output::ok(body))
}

fn cmd_table(max_p: u32, only: Option<Representation>, common: &Common) -> Result<Output> {
    let acc = common.accuracy();
    let reps: Vec<Representation> = match only {
        Some(r) => vec![r],
        None => Representation::ALL.to_vec(),
    };
    let jobs: Vec<(u32, Representation)> = (1..=max_p)
        .flat_map(|p| reps.iter().map(move |r| (p, *r)))
        .collect();
    let rows: Vec<ZetaComputation> = jobs
        .par_iter()
        .map(|(p, r)| zeta_odd(*p, *r, &acc))
        .collect::<Result<_>>()?;
    let d = common.digits as usize;
    let body = match common.format {
        Format::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for z in &rows {
                let _ = writeln!(s, "{}", csv_row(z, common.digits));
            }
            s
        }
        Format::Json => to_json(&TableReport {
            command: "table".into(),
            inputs: json!({
                "max_p": max_p,
                "rep": only.map(|r| r.as_str()),
                "digits": common.digits,
            }),
            rows: rows.iter().map(|z| zeta_report(z, common.digits)).collect(),
        }),
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{rlll}\n");
            s.push_str("$p$ & representation & value & error \\\\\n");
            for z in &rows {
                let _ = writeln!(
                    s,
                    "{} & {} & {} & {} \\\\",
                    z.p,
                    z.representation,
                    z.value.to_decimal(d),
                    sci(&z.abs_error())
                );
            }
            s.push_str("\\end{tabular}\n");
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{:>3}  {:<13} {:<w$}  {:>9}  evals", "p", "rep", "value", "abs error", w = d + 2);
            for z in &rows {
                let _ = writeln!(
                    s,
                    "{:>3}  {:<13} {:<w$}  {:>9}  {}",
                    z.p,
                    z.representation.as_str(),
                    z.value.to_decimal(d),
                    sci(&z.abs_error()),
                    z.quad.evaluations,
                    w = d + 2
                );
            }
            s
        }
    };
    Ok(Output::ok(body))
}
