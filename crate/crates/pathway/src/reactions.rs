//! Thermonuclear reaction-rate integrals and their pathway extensions.
//!
//! The Maxwell–Boltzmann (depleted-tail) integral, its high-energy
//! cut-off variant, the pathway-extended forms where the depleting
//! exponential is replaced by a power-law bracket, the H-function closed
//! form of the extended integral, and inverse-Gaussian moments as a
//! special case.

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::gamma::log_gamma;
use crate::specfun::mellin::HFunctionSpec;

const QUAD_TOL: f64 = 1e-10;

/// Parameters of the reaction-rate integral family
/// `x^{gamma-1} e^{-a x^delta}` times a depletion factor in `x^{-rho}`.
#[derive(Debug, Clone, Copy)]
pub struct ReactionIntegralSpec {
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub rho: f64,
    /// upper cut-off for the truncated variants; `None` means unbounded
    pub d: Option<f64>,
    /// pathway parameter (`> 1` for the extended depleted-tail integral,
    /// `< 1` for the extended cut-off integral)
    pub alpha: Option<f64>,
}

impl ReactionIntegralSpec {
    pub fn new(gamma: f64, a: f64, b: f64, delta: f64, rho: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::domain(format!("scale a must be positive, got {a}")));
        }
        if !(b >= 0.0) {
            return Err(Error::domain(format!("depletion strength b must be nonnegative, got {b}")));
        }
        if !(delta > 0.0) {
            return Err(Error::domain(format!("exponent delta must be positive, got {delta}")));
        }
        if !(rho > 0.0) {
            return Err(Error::domain(format!("exponent rho must be positive, got {rho}")));
        }
        if !gamma.is_finite() {
            return Err(Error::domain(format!("gamma must be finite, got {gamma}")));
        }
        Ok(Self {
            gamma,
            a,
            b,
            delta,
            rho,
            d: None,
            alpha: None,
        })
    }

    pub fn with_cutoff(mut self, d: f64) -> Result<Self> {
        if !(d > 0.0) {
            return Err(Error::domain(format!("cut-off d must be positive, got {d}")));
        }
        self.d = Some(d);
        Ok(self)
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha == 1.0 {
            return Err(Error::domain(format!(
                "pathway parameter must be finite and distinct from 1, got {alpha}"
            )));
        }
        self.alpha = Some(alpha);
        Ok(self)
    }

    fn require_alpha(&self, above_one: bool) -> Result<f64> {
        let alpha = self
            .alpha
            .ok_or_else(|| Error::usage("this integral needs the pathway parameter alpha"))?;
        if above_one && alpha <= 1.0 {
            return Err(Error::domain(format!(
                "extended depleted-tail integral needs alpha > 1, got {alpha}"
            )));
        }
        if !above_one && alpha >= 1.0 {
            return Err(Error::domain(format!(
                "extended cut-off integral needs alpha < 1, got {alpha}"
            )));
        }
        Ok(alpha)
    }

    /// log of `x^{gamma-1} e^{-a x^delta}` (shared leading factor).
    fn log_head(&self, x: f64) -> f64 {
        (self.gamma - 1.0) * x.ln() - self.a * x.powf(self.delta)
    }
}

/// `int_0^inf x^{gamma-1} e^{-a x^delta - b x^{-rho}} dx`.
pub fn i1(spec: &ReactionIntegralSpec) -> Result<f64> {
    if spec.b == 0.0 && spec.gamma <= 0.0 {
        return Err(Error::domain(format!(
            "integral diverges at 0: b = 0 requires gamma > 0, got gamma = {}",
            spec.gamma
        )));
    }
    quad::integrate_semi_inf(
        |x| (spec.log_head(x) - spec.b * x.powf(-spec.rho)).exp(),
        QUAD_TOL,
    )
}

/// The same integrand truncated to `(0, d)` (high-energy cut-off).
pub fn i2(spec: &ReactionIntegralSpec) -> Result<f64> {
    let d = spec
        .d
        .ok_or_else(|| Error::usage("cut-off integral needs the upper limit d"))?;
    if spec.b == 0.0 && spec.gamma <= 0.0 {
        return Err(Error::domain(format!(
            "integral diverges at 0: b = 0 requires gamma > 0, got gamma = {}",
            spec.gamma
        )));
    }
    quad::integrate(
        |x| (spec.log_head(x) - spec.b * x.powf(-spec.rho)).exp(),
        0.0,
        d,
        QUAD_TOL,
    )
}

/// log of `[1 + b(alpha-1) x^{-rho}]^{-1/(alpha-1)}`, stable for tiny `x`
/// where `x^{-rho}` itself overflows.
fn log_ext_bracket(b: f64, alpha: f64, rho: f64, x: f64) -> f64 {
    let c = 1.0 / (alpha - 1.0);
    // t = ln(b (alpha-1) x^{-rho})
    let t = (b * (alpha - 1.0)).ln() - rho * x.ln();
    let log1p_term = if t > 40.0 { t } else { t.exp().ln_1p() };
    -c * log1p_term
}

/// Extended depleted-tail integral (`alpha > 1`):
/// `int_0^inf x^{gamma-1} e^{-a x^delta} [1 + b(alpha-1) x^{-rho}]^{-1/(alpha-1)} dx`.
pub fn i1_alpha(spec: &ReactionIntegralSpec) -> Result<f64> {
    let alpha = spec.require_alpha(true)?;
    if spec.b == 0.0 {
        if spec.gamma <= 0.0 {
            return Err(Error::domain(format!(
                "integral diverges at 0: b = 0 requires gamma > 0, got gamma = {}",
                spec.gamma
            )));
        }
        return i1(spec);
    }
    // near 0 the bracket behaves as x^{rho/(alpha-1)}
    if spec.gamma + spec.rho / (alpha - 1.0) <= 0.0 {
        return Err(Error::domain(format!(
            "integral diverges at 0: needs gamma + rho/(alpha-1) > 0, got {}",
            spec.gamma + spec.rho / (alpha - 1.0)
        )));
    }
    quad::integrate_semi_inf(
        |x| (spec.log_head(x) + log_ext_bracket(spec.b, alpha, spec.rho, x)).exp(),
        QUAD_TOL,
    )
}

/// Closed form of [`i1_alpha`] as an `H^{2,1}_{1,2}` evaluation at
/// `a^{1/delta} (b(alpha-1))^{1/rho}`, scaled by
/// `1 / (rho delta a^{gamma/delta} Gamma(1/(alpha-1)))`.
pub fn i1_alpha_hfun(spec: &ReactionIntegralSpec) -> Result<f64> {
    let alpha = spec.require_alpha(true)?;
    let c = 1.0 / (alpha - 1.0);
    if spec.b == 0.0 {
        // gamma-integral reduction of the b -> 0 limit
        if spec.gamma <= 0.0 {
            return Err(Error::domain(format!(
                "integral diverges at 0: b = 0 requires gamma > 0, got gamma = {}",
                spec.gamma
            )));
        }
        let g = spec.gamma / spec.delta;
        return Ok((log_gamma(g)? - spec.delta.ln() - g * spec.a.ln()).exp());
    }
    let hspec = HFunctionSpec::new(
        2,
        1,
        vec![(1.0 - c, 1.0 / spec.rho)],
        vec![(0.0, 1.0 / spec.rho), (spec.gamma / spec.delta, 1.0 / spec.delta)],
    )?;
    let z = spec.a.powf(1.0 / spec.delta) * (spec.b * (alpha - 1.0)).powf(1.0 / spec.rho);
    let log_scale = -(spec.rho * spec.delta).ln()
        - (spec.gamma / spec.delta) * spec.a.ln()
        - log_gamma(c)?;
    hspec.eval_log_scaled(z, log_scale)
}

/// Extended cut-off integral (`alpha < 1`):
/// `int_0^d x^{gamma-1} e^{-a x^delta} [1 - b(1-alpha) x^{-rho}]^{1/(1-alpha)} dx`,
/// with the integrand zero wherever the bracket is nonpositive. A missing
/// cut-off means the unbounded interval.
pub fn i2_alpha(spec: &ReactionIntegralSpec) -> Result<f64> {
    let alpha = spec.require_alpha(false)?;
    if spec.b == 0.0 {
        if spec.gamma <= 0.0 {
            return Err(Error::domain(format!(
                "integral diverges at 0: b = 0 requires gamma > 0, got gamma = {}",
                spec.gamma
            )));
        }
        return match spec.d {
            Some(_) => i2(spec),
            None => i1(spec),
        };
    }
    // bracket positive only for x^rho > b(1-alpha)
    let x_min = (spec.b * (1.0 - alpha)).powf(1.0 / spec.rho);
    let upper = spec.d.unwrap_or(f64::INFINITY);
    if upper <= x_min {
        return Ok(0.0);
    }
    let inv = 1.0 / (1.0 - alpha);
    let f = |x: f64| {
        if x <= x_min {
            return 0.0;
        }
        let bracket = 1.0 - spec.b * (1.0 - alpha) * x.powf(-spec.rho);
        if bracket <= 0.0 {
            return 0.0;
        }
        (spec.log_head(x) + inv * bracket.ln()).exp()
    };
    if upper.is_finite() {
        quad::integrate(f, x_min, upper, QUAD_TOL)
    } else {
        quad::integrate_semi_inf(f, QUAD_TOL)
    }
}

/// `E[x^h]` for the inverse Gaussian density with mean `mu` and shape
/// `lam`, via the depleted-tail integral with `gamma - 1 = -3/2 + h`,
/// `delta = rho = 1`, `a = lam/(2 mu^2)`, `b = lam/2`, normalized by the
/// same integral at `h = 0`.
pub fn inverse_gaussian_moment(mu: f64, lam: f64, h: f64) -> Result<f64> {
    if mu == 0.0 || !mu.is_finite() {
        return Err(Error::domain(format!("location mu must be nonzero and finite, got {mu}")));
    }
    if !(lam > 0.0) {
        return Err(Error::domain(format!("shape lam must be positive, got {lam}")));
    }
    let base = ReactionIntegralSpec::new(-0.5, lam / (2.0 * mu * mu), lam / 2.0, 1.0, 1.0)?;
    let norm = i1(&base)?;
    let moment = i1(&ReactionIntegralSpec {
        gamma: -0.5 + h,
        ..base
    })?;
    Ok(moment / norm)
}
