//! Three-parameter Mittag-Leffler density.

use crate::error::{Error, Result};
use crate::specfun::gamma::log_gamma;
use serde::{Deserialize, Serialize};

/// Parameters of the 3-parameter Mittag-Leffler density and its Laplace
/// transform (1 + delta t^ml_index)^{-beta}.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MittagLefflerParams {
    pub ml_index: f64,
    pub beta: f64,
    pub delta: f64,
}

impl MittagLefflerParams {
    pub fn new(ml_index: f64, beta: f64, delta: f64) -> Result<Self> {
        if !(ml_index > 0.0 && ml_index <= 1.0) {
            return Err(Error::domain(format!(
                "ml_index must lie in (0, 1], got {ml_index}"
            )));
        }
        if !(beta > 0.0) {
            return Err(Error::domain(format!("beta must be positive, got {beta}")));
        }
        if !(delta > 0.0) {
            return Err(Error::domain(format!("delta must be positive, got {delta}")));
        }
        Ok(Self {
            ml_index,
            beta,
            delta,
        })
    }
}

// How much cancellation the f64 path tolerates before escalating.
const CANCEL_LIMIT: f64 = 1e8;
const MAX_TERMS: usize = 10_000;

/// Density value x^{ab-1}/d^b * sum_k (b)_k (-x^a)^k / (k! d^k Gamma(ak+ab)).
///
/// The alternating series is summed with Kahan compensation; when more
/// than 8 digits cancel it is re-run in double-double precision (exact
/// term recurrence, available for ml_index = 1) or rejected.
pub fn mittag_leffler_3p(params: MittagLefflerParams, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::domain(format!("x must be nonnegative, got {x}")));
    }
    let a = params.ml_index;
    let b = params.beta;
    let d = params.delta;
    if x == 0.0 {
        // x^{ab-1} factor: finite only for ab >= 1
        let head = a * b - 1.0;
        if head > 0.0 {
            return Ok(0.0);
        }
        if head == 0.0 {
            return Ok(1.0 / (d.powf(b) * log_gamma(a * b)?.exp()));
        }
        return Err(Error::domain("density diverges at x = 0 for ml_index*beta < 1"));
    }

    let xa = x.powf(a);
    // term_k = (b)_k (-xa)^k / (k! d^k Gamma(ak+ab))
    let mut sum = 0.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut max_abs = 0.0f64;
    let mut converged = false;
    let mut log_poch = 0.0f64; // ln (b)_k
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let log_mag =
            log_poch - log_gamma(kf + 1.0)? - kf * d.ln() - log_gamma(a * kf + a * b)?
                + kf * xa.ln();
        let term = if k % 2 == 0 { log_mag.exp() } else { -log_mag.exp() };
        max_abs = max_abs.max(term.abs());
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if k > 2 && term.abs() < 1e-18 * max_abs.max(1e-300) {
            converged = true;
            break;
        }
        log_poch += (b + kf).ln();
    }
    if !converged {
        return Err(Error::accuracy("Mittag-Leffler series did not converge"));
    }
    let index_one = (a - 1.0).abs() < 1e-14;
    if index_one && max_abs > 1e3 * sum.abs() {
        // Gamma(k + b) obeys a rational recurrence: exact double-double path.
        sum = series_dd_index_one(b, d, xa)?;
    } else if max_abs > CANCEL_LIMIT * sum.abs() {
        return Err(Error::accuracy(
            "Mittag-Leffler series loses more than 8 digits to cancellation",
        ));
    }
    Ok(x.powf(a * b - 1.0) / d.powf(b) * sum)
}

/// Double-double series for ml_index = 1:
/// sum_k (b)_k (-x)^k / (k! d^k Gamma(k+b)) with ratio
/// term_{k+1}/term_k = -(x/d) (b+k) / ((k+1)(k+b)) = -(x/d)/(k+1).
fn series_dd_index_one(b: f64, d: f64, x: f64) -> Result<f64> {
    let g0 = log_gamma(b)?.exp();
    let mut term = Dd::from(1.0 / g0);
    let mut sum = term;
    let ratio_base = Dd::from(-x).div_f64(d);
    for k in 0..MAX_TERMS {
        term = term.mul(ratio_base).div_f64(k as f64 + 1.0);
        sum = sum.add(term);
        if term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) {
            return Ok(sum.hi + sum.lo);
        }
    }
    Err(Error::accuracy("double-double Mittag-Leffler series did not converge"))
}

/// Minimal double-double arithmetic (Dekker/Knuth error-free transforms).
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl From<f64> for Dd {
    fn from(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = f64::mul_add(a, b, -p);
    (p, err)
}

impl Dd {
    fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = two_sum(s, e);
        Dd { hi, lo }
    }
    fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }
    fn div_f64(self, v: f64) -> Dd {
        let q1 = self.hi / v;
        let (p, e) = two_prod(q1, v);
        let r = ((self.hi - p) - e + self.lo) / v;
        let (hi, lo) = two_sum(q1, r);
        Dd { hi, lo }
    }
}
