//! Laplace transforms of the pathway family (direct quadrature and the
//! Mellin-Barnes representation), the Mittag-Leffler transform and its
//! Levy limit, and the Kratzel kernel / P-transform.

use crate::error::{Error, Result};
use crate::pathway::{self, PathwayParams, Regime};
use crate::quad;
use crate::specfun::gamma::log_gamma;
use crate::specfun::mellin::HFunctionSpec;
use crate::specfun::mittag::MittagLefflerParams;

/// int e^{-tx} pdf(x) dx by adaptive quadrature.
pub fn laplace_pathway_quad(params: &PathwayParams, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("transform argument must be positive, got {t}")));
    }
    let (_, hi) = pathway::support(params);
    quad::integrate_to(
        |x| (-t * x).exp() * pathway::pdf(params, x).unwrap_or(0.0),
        hi,
        1e-10,
    )
}

/// The same transform through its H-function representation: the
/// contour integral of the regime's gamma-ratio spec, with the gamma
/// prefactor folded into the integrand in log space.
pub fn laplace_pathway_hfun(params: &PathwayParams, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("transform argument must be positive, got {t}")));
    }
    let g = params.gamma_shape / params.delta;
    let inv_d = 1.0 / params.delta;
    let (spec, z, log_pref) = match params.regime() {
        Regime::Type2 => {
            let e = params.eta / (params.alpha - 1.0);
            // lower pair (e - g, 1/delta): the Mellin transform of the
            // type-2 density evaluated at 1 - s
            let spec = HFunctionSpec::new(
                2,
                1,
                vec![(1.0 - g, inv_d)],
                vec![(0.0, 1.0), (e - g, inv_d)],
            )?;
            let z = t / (params.a * (params.alpha - 1.0)).powf(inv_d);
            (spec, z, -log_gamma(g)? - log_gamma(e - g)?)
        }
        Regime::Type1 => {
            let e = params.eta / (1.0 - params.alpha);
            let spec = HFunctionSpec::new(
                1,
                1,
                vec![(1.0 - g, inv_d)],
                vec![(0.0, 1.0), (-e - g, inv_d)],
            )?;
            let z = t / (params.a * (1.0 - params.alpha)).powf(inv_d);
            (spec, z, log_gamma(1.0 + e + g)? - log_gamma(g)?)
        }
        Regime::Gamma => {
            let spec = HFunctionSpec::new(1, 1, vec![(1.0 - g, inv_d)], vec![(0.0, 1.0)])?;
            let z = t / params.rate_b().powf(inv_d);
            (spec, z, -log_gamma(g)?)
        }
    };
    spec.eval_log_scaled(z, log_pref)
}

/// Laplace transform (1 + delta t^ml_index)^{-beta} of the
/// Mittag-Leffler density.
pub fn ml_laplace(params: &MittagLefflerParams, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::domain(format!("transform argument must be nonnegative, got {t}")));
    }
    let base = 1.0 + params.delta * t.powf(params.ml_index);
    if base <= 0.0 {
        return Err(Error::domain("1 + delta t^ml_index must be positive"));
    }
    Ok(base.powf(-params.beta))
}

/// Pointwise gaps between the stretched transform and its Levy limit,
/// one entry per q.
#[derive(Debug, Clone)]
pub struct LevyLimitReport {
    pub max_gaps: Vec<f64>,
    pub monotone: bool,
}

/// Verify [1 + delta (q-1) t^a]^{-beta/(q-1)} -> exp(-delta beta t^a)
/// on a t-grid as q -> 1+.
pub fn levy_limit_check(
    ml_index: f64,
    beta0: f64,
    delta0: f64,
    q_sequence: &[f64],
) -> Result<LevyLimitReport> {
    if q_sequence.iter().any(|&q| q <= 1.0) {
        return Err(Error::domain("q sequence must stay above 1"));
    }
    let t_grid: Vec<f64> = (0..=40).map(|i| 0.125 * i as f64).collect();
    let mut max_gaps = Vec::with_capacity(q_sequence.len());
    for &q in q_sequence {
        let mut gap = 0.0f64;
        for &t in &t_grid {
            let ta = if t == 0.0 { 0.0 } else { t.powf(ml_index) };
            let stretched = (1.0 + delta0 * (q - 1.0) * ta).powf(-beta0 / (q - 1.0));
            let limit = (-delta0 * beta0 * ta).exp();
            gap = gap.max((stretched - limit).abs());
        }
        max_gaps.push(gap);
    }
    let monotone = max_gaps.windows(2).all(|w| {
        // gaps must shrink whenever q shrinks
        w[1] <= w[0] + 1e-15
    });
    Ok(LevyLimitReport { max_gaps, monotone })
}

/// Parameters of the generalized Kratzel kernel
/// D(x) = int_0^inf y^{nu-1} [1 + a(alpha-1) y^rho]^{-1/(alpha-1)}
///        e^{-x y^{-beta_k}} dy,
/// with the bracket replaced by e^{-a y^rho} in the alpha -> 1 limit.
#[derive(Debug, Clone, Copy)]
pub struct KratzelSpec {
    pub nu: f64,
    pub rho: f64,
    pub beta_k: f64,
    pub alpha: f64,
    pub a: f64,
}

impl KratzelSpec {
    pub fn new(nu: f64, rho: f64, beta_k: f64, alpha: f64, a: f64) -> Result<Self> {
        if !(rho > 0.0 && beta_k > 0.0 && a > 0.0) {
            return Err(Error::domain("kratzel kernel requires rho, beta_k, a > 0"));
        }
        let limit = (alpha - 1.0).abs() <= 1e-6;
        if !limit && alpha < 1.0 {
            return Err(Error::domain(format!(
                "kratzel kernel is defined for alpha > 1 or the alpha -> 1 limit, got {alpha}"
            )));
        }
        if !limit && nu >= rho / (alpha - 1.0) {
            return Err(Error::domain(format!(
                "kratzel kernel diverges at infinity: nu = {nu} >= rho/(alpha-1) = {}",
                rho / (alpha - 1.0)
            )));
        }
        Ok(Self {
            nu,
            rho,
            beta_k,
            alpha,
            a,
        })
    }

    fn is_limit(&self) -> bool {
        (self.alpha - 1.0).abs() <= 1e-6
    }
}

/// Evaluate the kernel at x > 0.
pub fn kratzel_kernel(spec: &KratzelSpec, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("kernel argument must be positive, got {x}")));
    }
    let integrand = |y: f64| -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        let tail = if spec.is_limit() {
            -spec.a * y.powf(spec.rho)
        } else {
            -(1.0 / (spec.alpha - 1.0))
                * (spec.a * (spec.alpha - 1.0) * y.powf(spec.rho)).ln_1p()
        };
        let lo = (spec.nu - 1.0) * y.ln() + tail - x * y.powf(-spec.beta_k);
        lo.exp()
    };
    let v = quad::integrate_semi_inf(integrand, 1e-10)?;
    if !v.is_finite() {
        return Err(Error::domain("kratzel kernel integral diverged"));
    }
    Ok(v)
}

/// P-transform: int_0^inf D(x t) f(t) dt with nested quadrature
/// (inner kernel tolerance 1e-10, outer 1e-8).
pub fn p_transform<F>(f: F, spec: &KratzelSpec, x: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(x > 0.0) {
        return Err(Error::domain(format!("transform argument must be positive, got {x}")));
    }
    quad::integrate_semi_inf(
        |t| {
            let ft = f(t);
            if ft == 0.0 {
                return 0.0;
            }
            match kratzel_kernel(spec, x * t) {
                Ok(d) => d * ft,
                Err(_) => f64::NAN,
            }
        },
        1e-8,
    )
}
