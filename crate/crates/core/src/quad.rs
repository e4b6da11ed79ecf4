//! Double-exponential quadrature at arbitrary precision.
//!
//! [`integrate_01`] uses the tanh–sinh map t = ½ + ½·tanh(π/2·sinh τ) and
//! [`integrate_semi_inf`] the exp–sinh map t = exp(π/2·sinh τ). Both refine
//! by halving the step h = 2^{−level} and reusing every earlier sample. No
//! abscissa ever coincides with an endpoint.
//!
//! Samples of one level are evaluated in parallel but always summed in
//! node order, so results are bit-identical across runs and thread counts.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::bigreal::{BigReal, MIN_BITS};
use crate::error::{domain, Error, Result};

pub const DEFAULT_MAX_LEVEL: u32 = 12;
pub const DEFAULT_MIN_LEVEL: u32 = 3;

/// A point of (0,1) together with its distance to 1, computed without
/// cancellation. Integrands with structure at t = 1 should read
/// `one_minus_t` rather than forming `1 − t` themselves.
#[derive(Clone, Debug)]
pub struct Abscissa {
    pub t: BigReal,
    pub one_minus_t: BigReal,
}

impl Abscissa {
    /// tan(πt/2), taken as cot(π(1−t)/2) on the upper half so the pole at
    /// t = 1 is approached through the exact complement.
    pub fn tan_half_pi(&self) -> BigReal {
        let bits = self.t.bits();
        let half = BigReal::one(bits).ldexp(-1);
        let quarter_turn = BigReal::pi(bits).ldexp(-1);
        if self.t <= half {
            (&quarter_turn * &self.t).tan()
        } else {
            (&quarter_turn * &self.one_minus_t).tan().recip()
        }
    }

    /// cos(πt) = −cos(π(1−t))
    pub fn cos_pi(&self) -> BigReal {
        let bits = self.t.bits();
        let half = BigReal::one(bits).ldexp(-1);
        let pi = BigReal::pi(bits);
        if self.t <= half {
            (&pi * &self.t).cos()
        } else {
            -(&pi * &self.one_minus_t).cos()
        }
    }

    /// sin(πt) = sin(π(1−t))
    pub fn sin_pi(&self) -> BigReal {
        let bits = self.t.bits();
        let half = BigReal::one(bits).ldexp(-1);
        let pi = BigReal::pi(bits);
        if self.t <= half {
            (&pi * &self.t).sin()
        } else {
            (&pi * &self.one_minus_t).sin()
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: BigReal,
    /// Absolute error estimate.
    pub error_estimate: BigReal,
    pub evaluations: usize,
    /// Number of refinement levels computed (level 0 included).
    pub levels: u32,
    pub converged: bool,
    /// Error estimate after each level, in order.
    pub level_errors: Vec<BigReal>,
}

#[derive(Clone, Debug)]
pub struct QuadOptions {
    pub tol: BigReal,
    pub bits: usize,
    pub max_level: u32,
    pub min_level: u32,
}

impl QuadOptions {
    pub fn new(tol: BigReal, bits: usize) -> Self {
        Self {
            tol,
            bits,
            max_level: DEFAULT_MAX_LEVEL,
            min_level: DEFAULT_MIN_LEVEL,
        }
    }

    pub fn max_level(mut self, level: u32) -> Self {
        self.max_level = level;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Map {
    TanhSinh,
    ExpSinh,
}

/// One node with its Jacobian weight (the step h is applied by the caller).
struct Node {
    t: BigReal,
    one_minus_t: BigReal,
    weight: BigReal,
}

type NodeTable = Arc<Vec<Node>>;
type NodeCache = Mutex<HashMap<(Map, usize, u32), NodeTable>>;

fn node_cache() -> &'static NodeCache {
    static CACHE: OnceLock<NodeCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// τ-range [lo, hi] covering every node that can matter at `bits`.
fn tau_range(map: Map, bits: usize) -> (f64, f64) {
    let ln2 = std::f64::consts::LN_2;
    let pi = std::f64::consts::PI;
    match map {
        Map::TanhSinh => {
            // 1 − t ≈ exp(−π·sinh τ) must stay above 2^{−(bits−2)} so that t
            // itself is still distinguishable from 1.
            let hi = ((bits as f64 - 2.0) * ln2 / pi).asinh();
            (-hi, hi)
        }
        Map::ExpSinh => {
            // t from 2^{−2·bits} up to 4·bits·ln2 + 64.
            let lo = -(4.0 * bits as f64 * ln2 / pi).asinh();
            let t_max = 4.0 * bits as f64 * ln2 + 64.0;
            let hi = (2.0 * t_max.ln() / pi).asinh();
            (lo, hi)
        }
    }
}

/// Integer indices k with τ = k·2^{−level} in range, new at this level.
fn level_indices(map: Map, bits: usize, level: u32) -> Vec<i64> {
    let (lo, hi) = tau_range(map, bits);
    let scale = (1u64 << level) as f64;
    let k_lo = (lo * scale).ceil() as i64;
    let k_hi = (hi * scale).floor() as i64;
    (k_lo..=k_hi)
        .filter(|k| level == 0 || k.rem_euclid(2) == 1)
        .collect()
}

fn make_node(map: Map, k: i64, level: u32, bits: usize) -> Node {
    let tau = BigReal::from_i64(k, bits).ldexp(-(level as i32));
    let e = tau.exp();
    let e_inv = e.recip();
    let sinh = (&e - &e_inv).ldexp(-1);
    let cosh = (&e + &e_inv).ldexp(-1);
    let half_pi = BigReal::pi(bits).ldexp(-1);
    let u = &half_pi * &sinh;
    match map {
        Map::TanhSinh => {
            // s = exp(−2|u|); the point nearer its endpoint is s/(1+s).
            let s = (-(u.abs().ldexp(1))).exp();
            let one = BigReal::one(bits);
            let denom = &one + &s;
            let near = &s / &denom;
            let far = one.clone() / &denom;
            // dt/dτ = (π/2)·cosh τ · ½·sech²(u) = π·cosh τ · s/(1+s)²
            let weight = BigReal::pi(bits) * &cosh * &s / (&denom * &denom);
            if k >= 0 {
                Node {
                    t: far,
                    one_minus_t: near,
                    weight,
                }
            } else {
                Node {
                    t: near,
                    one_minus_t: far,
                    weight,
                }
            }
        }
        Map::ExpSinh => {
            let t = u.exp();
            let weight = &t * &half_pi * &cosh;
            Node {
                one_minus_t: BigReal::one(bits) - &t,
                t,
                weight,
            }
        }
    }
}

fn nodes(map: Map, bits: usize, level: u32) -> NodeTable {
    let key = (map, bits, level);
    if let Some(t) = node_cache().lock().expect("node cache").get(&key) {
        return t.clone();
    }
    let table: Vec<Node> = level_indices(map, bits, level)
        .into_par_iter()
        .map(|k| make_node(map, k, level, bits))
        .collect();
    let table = Arc::new(table);
    // Concurrent builders produce identical tables; first insert wins.
    node_cache()
        .lock()
        .expect("node cache")
        .entry(key)
        .or_insert(table)
        .clone()
}

fn log10_abs(x: &BigReal) -> f64 {
    match x.exponent() {
        None => f64::NEG_INFINITY,
        Some(e) => {
            let m = x.abs().ldexp(-e).to_f64();
            e as f64 * std::f64::consts::LOG10_2 + m.log10()
        }
    }
}

fn pow10(x: f64, bits: usize) -> BigReal {
    if x == f64::NEG_INFINITY {
        return BigReal::zero(bits);
    }
    let ln10 = BigReal::from_i64(10, bits).ln();
    (ln10 * BigReal::parse(&format!("{x:.6}"), bits).expect("finite log")).exp()
}

fn integrate<F>(map: Map, f: F, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(&Node) -> BigReal + Sync,
{
    if opts.bits < MIN_BITS {
        return Err(domain(format!("precision must be ≥ {MIN_BITS} bits")));
    }
    if opts.tol.is_negative() || opts.tol.is_zero() {
        return Err(domain("tolerance must be positive"));
    }
    let bits = opts.bits;
    let eps_log = -(bits as f64) * std::f64::consts::LOG10_2;
    let mut raw_sum = BigReal::zero(bits);
    let mut estimates: Vec<BigReal> = Vec::new();
    let mut history_log: Vec<f64> = Vec::new();
    let mut sums: Vec<BigReal> = Vec::new();
    let mut evaluations = 0usize;

    for level in 0..=opts.max_level {
        let table = nodes(map, bits, level);
        let samples: Vec<BigReal> = table
            .par_iter()
            .map(|n| {
                let v = f(n);
                &v * &n.weight
            })
            .collect();
        if let Some(pos) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFiniteSample(table[pos].t.to_scientific(20)));
        }
        evaluations += samples.len();
        let mut max_term = f64::NEG_INFINITY;
        for s in &samples {
            raw_sum = &raw_sum + s;
            max_term = max_term.max(log10_abs(s));
        }
        let edge_term = match (samples.first(), samples.last()) {
            (Some(a), Some(b)) if level == 0 => log10_abs(a).max(log10_abs(b)),
            _ => f64::NEG_INFINITY,
        };
        let value = raw_sum.ldexp(-(level as i32));

        // Bailey's heuristic: digits roughly double per level once the
        // DE rule is in its asymptotic regime.
        let est_log = match sums.len() {
            0 => f64::INFINITY,
            1 => log10_abs(&(&value - &sums[0])),
            n => {
                let d1 = log10_abs(&(&value - &sums[n - 1]));
                let d2 = log10_abs(&(&value - &sums[n - 2]));
                let d3 = eps_log + max_term;
                let d1sq = if d1 == f64::NEG_INFINITY || d2 >= 0.0 || d2 == f64::NEG_INFINITY {
                    d1
                } else {
                    d1 * d1 / d2
                };
                let mut e = d1sq.max(2.0 * d1).max(d3).max(edge_term);
                if e > d1 {
                    e = d1;
                }
                // Never claim more than the working precision.
                e.max(eps_log + log10_abs(&value))
            }
        };
        history_log.push(est_log);
        let est = if est_log.is_finite() {
            pow10(est_log, bits)
        } else if est_log > 0.0 {
            value.abs() + BigReal::one(bits)
        } else {
            BigReal::zero(bits)
        };
        estimates.push(est.clone());
        sums.push(value.clone());

        if level >= opts.min_level && est <= opts.tol {
            return Ok(QuadResult {
                value,
                error_estimate: est,
                evaluations,
                levels: level + 1,
                converged: true,
                level_errors: estimates,
            });
        }
    }
    let value = sums.pop().expect("at least one level");
    let error_estimate = estimates.last().cloned().expect("at least one level");
    Err(Error::NoConvergence(Box::new(QuadResult {
        value,
        error_estimate,
        evaluations,
        levels: opts.max_level + 1,
        converged: false,
        level_errors: estimates,
    })))
}

/// ∫₀¹ f(t) dt for f bounded on the open interval.
pub fn integrate_01<F>(f: F, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(&Abscissa) -> BigReal + Sync,
{
    integrate(
        Map::TanhSinh,
        |n: &Node| {
            f(&Abscissa {
                t: n.t.clone(),
                one_minus_t: n.one_minus_t.clone(),
            })
        },
        opts,
    )
}

/// ∫₀^∞ f(t) dt for f decaying exponentially at infinity, with at most a
/// logarithmic-power singularity at 0.
pub fn integrate_semi_inf<F>(f: F, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(&BigReal) -> BigReal + Sync,
{
    integrate(Map::ExpSinh, |n: &Node| f(&n.t), opts)
}

/// Every abscissa the (0,1) rule uses up to `max_level`, for inspection.
pub fn abscissas_01(bits: usize, max_level: u32) -> Vec<Abscissa> {
    (0..=max_level)
        .flat_map(|lvl| {
            nodes(Map::TanhSinh, bits, lvl)
                .iter()
                .map(|n| Abscissa {
                    t: n.t.clone(),
                    one_minus_t: n.one_minus_t.clone(),
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Every abscissa the (0,∞) rule uses up to `max_level`.
pub fn abscissas_semi_inf(bits: usize, max_level: u32) -> Vec<BigReal> {
    (0..=max_level)
        .flat_map(|lvl| {
            nodes(Map::ExpSinh, bits, lvl)
                .iter()
                .map(|n| n.t.clone())
                .collect::<Vec<_>>()
        })
        .collect()
}
