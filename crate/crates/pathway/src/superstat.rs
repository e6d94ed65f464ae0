//! Superstatistics pipeline: conditional, marginal and posterior
//! densities for a gamma-type conditional law with an exponential prior
//! on the rate, Bayes estimates, the pathway-extended variants whose
//! marginals are Meijer G-functions, and the Bessel-augmented gamma /
//! pathway densities.

use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::gamma::log_gamma;
use crate::specfun::hyper::log_hyp0f1;
use crate::specfun::mellin::g_function_spec;

const QUAD_TOL: f64 = 1e-10;

/// Superstatistics model: conditional density `k1 x^gamma e^{-theta x^delta}`
/// with an exponential prior `lam e^{-lam theta}` on the rate `theta`.
/// With `alpha` set (`> 1`) the conditional is replaced by its pathway
/// extension.
#[derive(Debug, Clone, Copy)]
pub struct SuperstatModel {
    pub gamma: f64,
    pub delta: f64,
    pub lam: f64,
    pub alpha: Option<f64>,
}

impl SuperstatModel {
    pub fn new(gamma: f64, delta: f64, lam: f64) -> Result<Self> {
        if !(gamma > -1.0) {
            return Err(Error::domain(format!("shape gamma must exceed -1, got {gamma}")));
        }
        if !(delta > 0.0) {
            return Err(Error::domain(format!("exponent delta must be positive, got {delta}")));
        }
        if !(lam > 0.0) {
            return Err(Error::domain(format!("prior rate lam must be positive, got {lam}")));
        }
        Ok(Self {
            gamma,
            delta,
            lam,
            alpha: None,
        })
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        if !(alpha > 1.0) {
            return Err(Error::domain(format!(
                "extended model needs alpha > 1, got {alpha}"
            )));
        }
        if 1.0 / (alpha - 1.0) - self.shape_g() <= 0.0 {
            return Err(Error::domain(format!(
                "extended model needs 1/(alpha-1) > (gamma+1)/delta, got 1/(alpha-1) = {}, (gamma+1)/delta = {}",
                1.0 / (alpha - 1.0),
                self.shape_g()
            )));
        }
        self.alpha = Some(alpha);
        Ok(self)
    }

    /// `(gamma+1)/delta`, the gamma shape of the rate posterior family.
    pub fn shape_g(&self) -> f64 {
        (self.gamma + 1.0) / self.delta
    }

    fn require_alpha(&self) -> Result<f64> {
        self.alpha
            .ok_or_else(|| Error::usage("this operation needs the extended model (alpha set)"))
    }
}

/// Conditional density `k1 x^gamma e^{-theta x^delta}` with
/// `k1 = delta theta^{(gamma+1)/delta} / Gamma((gamma+1)/delta)`.
pub fn conditional_pdf(model: &SuperstatModel, x: f64, theta: f64) -> Result<f64> {
    if !(x > 0.0) || !(theta > 0.0) {
        return Err(Error::domain(format!(
            "conditional density needs x > 0 and theta > 0, got x = {x}, theta = {theta}"
        )));
    }
    let g = model.shape_g();
    let log_k1 = model.delta.ln() + g * theta.ln() - log_gamma(g)?;
    Ok((log_k1 + model.gamma * x.ln() - theta * x.powf(model.delta)).exp())
}

/// Marginal (unconditional) density of `x` after mixing the rate over the
/// exponential prior:
/// `delta Gamma(g+1) x^gamma [1 + x^delta/lam]^{-(g+1)} / (lam^g Gamma(g))`.
pub fn marginal_pdf(model: &SuperstatModel, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("marginal density needs x > 0, got {x}")));
    }
    let g = model.shape_g();
    let log_v = model.delta.ln() + log_gamma(g + 1.0)? - log_gamma(g)? - g * model.lam.ln()
        + model.gamma * x.ln()
        - (g + 1.0) * (x.powf(model.delta) / model.lam).ln_1p();
    Ok(log_v.exp())
}

/// Pathway-family parameters whose density coincides with
/// [`marginal_pdf`]: `1/(alpha-1) = g+1`, `a (alpha-1) = 1/lam`, `eta = 1`.
pub fn marginal_as_pathway(model: &SuperstatModel) -> Result<crate::pathway::PathwayParams> {
    let g = model.shape_g();
    let alpha = 1.0 + 1.0 / (g + 1.0);
    let a = (g + 1.0) / model.lam;
    crate::pathway::PathwayParams::new(alpha, a, model.delta, model.gamma + 1.0, 1.0)
}

/// Posterior density of the rate: `Gamma(shape g+1, rate lam + x^delta)`.
pub fn posterior_pdf(model: &SuperstatModel, theta: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !(theta > 0.0) {
        return Err(Error::domain(format!(
            "posterior density needs x > 0 and theta > 0, got x = {x}, theta = {theta}"
        )));
    }
    let g = model.shape_g();
    let rate = model.lam + x.powf(model.delta);
    let log_v = (g + 1.0) * rate.ln() - log_gamma(g + 1.0)? + g * theta.ln() - theta * rate;
    Ok(log_v.exp())
}

/// Bayes estimate of the rate: the posterior mean
/// `Phi(x) = (g+1)/(lam + x^delta)`.
pub fn bayes_estimate(model: &SuperstatModel, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("Bayes estimate needs x > 0, got {x}")));
    }
    Ok((model.shape_g() + 1.0) / (model.lam + x.powf(model.delta)))
}

/// Extended conditional density (pathway bracket in place of the
/// exponential): `k2 x^gamma [1 + theta(alpha-1) x^delta]^{-1/(alpha-1)}`.
pub fn ext_conditional_pdf(model: &SuperstatModel, x: f64, theta: f64) -> Result<f64> {
    let alpha = model.require_alpha()?;
    if !(x > 0.0) || !(theta > 0.0) {
        return Err(Error::domain(format!(
            "conditional density needs x > 0 and theta > 0, got x = {x}, theta = {theta}"
        )));
    }
    let g = model.shape_g();
    let c = 1.0 / (alpha - 1.0);
    let log_k2 = model.delta.ln() + g * (theta * (alpha - 1.0)).ln() + log_gamma(c)?
        - log_gamma(g)?
        - log_gamma(c - g)?;
    let log_v = log_k2 + model.gamma * x.ln()
        - c * (theta * (alpha - 1.0) * x.powf(model.delta)).ln_1p();
    Ok(log_v.exp())
}

/// Extended marginal via its Meijer G closed form:
/// `lam delta x^{-(delta+1)} / ((alpha-1) Gamma(g) Gamma(c-g)) *
/// G^{2,1}_{1,2}[lam/(x^delta (alpha-1)) | -g; 0, c-g-1]`.
pub fn ext_marginal_pdf(model: &SuperstatModel, x: f64) -> Result<f64> {
    let alpha = model.require_alpha()?;
    if !(x > 0.0) {
        return Err(Error::domain(format!("marginal density needs x > 0, got {x}")));
    }
    let g = model.shape_g();
    let c = 1.0 / (alpha - 1.0);
    let spec = g_function_spec(2, 1, &[-g], &[0.0, c - g - 1.0])?;
    let z = model.lam / (x.powf(model.delta) * (alpha - 1.0));
    let log_scale = (model.lam * model.delta).ln()
        - (model.delta + 1.0) * x.ln()
        - (alpha - 1.0).ln()
        - log_gamma(g)?
        - log_gamma(c - g)?;
    spec.eval_log_scaled(z, log_scale)
}

/// Extended marginal by direct quadrature of prior times extended
/// conditional (the source of truth for the G path).
pub fn ext_marginal_quad(model: &SuperstatModel, x: f64) -> Result<f64> {
    model.require_alpha()?;
    if !(x > 0.0) {
        return Err(Error::domain(format!("marginal density needs x > 0, got {x}")));
    }
    quad::integrate_semi_inf(
        |theta| match ext_conditional_pdf(model, x, theta) {
            Ok(v) => model.lam * (-model.lam * theta).exp() * v,
            Err(_) => 0.0,
        },
        QUAD_TOL,
    )
}

/// Extended posterior density of the rate at given `x`:
/// `c4^{-1} (alpha-1)^{g+1} x^{gamma+delta+1} Gamma(c) theta^g e^{-lam theta}
///  [1 + theta(alpha-1) x^delta]^{-c}` with `c4` the marginal's G-value.
pub fn ext_posterior_pdf(model: &SuperstatModel, theta: f64, x: f64) -> Result<f64> {
    let alpha = model.require_alpha()?;
    if !(x > 0.0) || !(theta > 0.0) {
        return Err(Error::domain(format!(
            "posterior density needs x > 0 and theta > 0, got x = {x}, theta = {theta}"
        )));
    }
    let g = model.shape_g();
    let c = 1.0 / (alpha - 1.0);
    let spec = g_function_spec(2, 1, &[-g], &[0.0, c - g - 1.0])?;
    let z = model.lam / (x.powf(model.delta) * (alpha - 1.0));
    let c4 = spec.eval(z)?;
    if !(c4 > 0.0) {
        return Err(Error::accuracy(format!(
            "posterior normalizer c4 = {c4} is not positive"
        )));
    }
    let log_v = -c4.ln() + (g + 1.0) * (alpha - 1.0).ln()
        + (model.gamma + model.delta + 1.0) * x.ln()
        + log_gamma(c)?
        + g * theta.ln()
        - model.lam * theta
        - c * (theta * (alpha - 1.0) * x.powf(model.delta)).ln_1p();
    Ok(log_v.exp())
}

/// Extended Bayes estimate via the ratio of two G-evaluations:
/// `Phi_alpha(x) = G[z | -1-g; 0, c-g-2] / ((alpha-1) x^delta G[z | -g; 0, c-g-1])`.
pub fn ext_bayes_estimate(model: &SuperstatModel, x: f64) -> Result<f64> {
    let alpha = model.require_alpha()?;
    if !(x > 0.0) {
        return Err(Error::domain(format!("Bayes estimate needs x > 0, got {x}")));
    }
    let g = model.shape_g();
    let c = 1.0 / (alpha - 1.0);
    let z = model.lam / (x.powf(model.delta) * (alpha - 1.0));
    let c4 = g_function_spec(2, 1, &[-g], &[0.0, c - g - 1.0])?.eval(z)?;
    let num = g_function_spec(2, 1, &[-1.0 - g], &[0.0, c - g - 2.0])?.eval(z)?;
    Ok(num / (c4 * (alpha - 1.0) * x.powf(model.delta)))
}

/// Extended Bayes estimate by posterior-mean quadrature.
pub fn ext_bayes_quad(model: &SuperstatModel, x: f64) -> Result<f64> {
    model.require_alpha()?;
    quad::integrate_semi_inf(
        |theta| match ext_posterior_pdf(model, theta, x) {
            Ok(v) => theta * v,
            Err(_) => 0.0,
        },
        QUAD_TOL,
    )
}

/// Bessel-augmented gamma density:
/// `rho a^{gamma/rho} e^{-delta_b/a} x^{gamma-1} e^{-a x^rho}
///  0F1(; gamma/rho; delta_b x^rho) / Gamma(gamma/rho)`.
/// `delta_b = 0` recovers the generalized gamma density.
pub fn bessel_gamma_pdf(gamma: f64, rho: f64, a_scale: f64, delta_b: f64, x: f64) -> Result<f64> {
    if !(gamma > 0.0) || !(rho > 0.0) || !(a_scale > 0.0) {
        return Err(Error::domain(format!(
            "Bessel gamma density needs gamma > 0, rho > 0, a > 0; got ({gamma}, {rho}, {a_scale})"
        )));
    }
    if !(x > 0.0) {
        return Ok(0.0);
    }
    let b = gamma / rho;
    let (log_f, sign) = log_hyp0f1(b, delta_b * x.powf(rho))?;
    let log_head = rho.ln() + b * a_scale.ln() - delta_b / a_scale - log_gamma(b)?
        + (gamma - 1.0) * x.ln()
        - a_scale * x.powf(rho);
    Ok(sign * (log_head + log_f).exp())
}

/// Cache of numerically computed Bessel-pathway normalizers, keyed by the
/// parameter bit patterns. Idempotent under concurrent writers.
static BESSEL_NORM_CACHE: Lazy<Mutex<HashMap<[u64; 5], f64>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn bessel_pathway_params_check(
    gamma: f64,
    rho: f64,
    a_scale: f64,
    delta_b: f64,
    alpha: f64,
) -> Result<()> {
    if !(gamma > 0.0) || !(rho > 0.0) || !(a_scale > 0.0) {
        return Err(Error::domain(format!(
            "Bessel pathway density needs gamma > 0, rho > 0, a > 0; got ({gamma}, {rho}, {a_scale})"
        )));
    }
    if !alpha.is_finite() {
        return Err(Error::domain(format!("pathway parameter must be finite, got {alpha}")));
    }
    if alpha > 1.0 + crate::pathway::ALPHA_EPS {
        // bracket decays like x^{-rho/(alpha-1)}; the 0F1 factor grows like
        // exp(2 sqrt(delta_b) x^{rho/2}) for positive delta_b, so the
        // normalizer only exists for delta_b <= 0 and a heavy-tail moment
        // condition
        if delta_b > 0.0 {
            return Err(Error::domain(format!(
                "type-2 Bessel pathway normalizer diverges for delta_b > 0, got {delta_b}"
            )));
        }
        if 1.0 / (alpha - 1.0) <= gamma / rho {
            return Err(Error::domain(format!(
                "type-2 Bessel pathway needs 1/(alpha-1) > gamma/rho, got {} vs {}",
                1.0 / (alpha - 1.0),
                gamma / rho
            )));
        }
    }
    Ok(())
}

/// Unnormalized (signed) Bessel-pathway density at `x`; the 0F1 factor
/// can dip below zero for negative `delta_b`.
fn bessel_pathway_kernel(
    gamma: f64,
    rho: f64,
    a_scale: f64,
    delta_b: f64,
    alpha: f64,
    x: f64,
) -> Result<f64> {
    let eps = crate::pathway::ALPHA_EPS;
    let bracket_log = if alpha < 1.0 - eps {
        let t = a_scale * (1.0 - alpha) * x.powf(rho);
        if t >= 1.0 {
            return Ok(0.0);
        }
        (-t).ln_1p() / (1.0 - alpha)
    } else if alpha > 1.0 + eps {
        -(a_scale * (alpha - 1.0) * x.powf(rho)).ln_1p() / (alpha - 1.0)
    } else {
        -a_scale * x.powf(rho)
    };
    let (log_f, sign) = log_hyp0f1(gamma / rho, delta_b * x.powf(rho))?;
    Ok(sign * ((gamma - 1.0) * x.ln() + bracket_log + log_f).exp())
}

pub fn bessel_pathway_norm(
    gamma: f64,
    rho: f64,
    a_scale: f64,
    delta_b: f64,
    alpha: f64,
) -> Result<f64> {
    let key = [
        gamma.to_bits(),
        rho.to_bits(),
        a_scale.to_bits(),
        delta_b.to_bits(),
        alpha.to_bits(),
    ];
    if let Some(&v) = BESSEL_NORM_CACHE.lock().unwrap().get(&key) {
        return Ok(v);
    }
    let kernel = |x: f64| bessel_pathway_kernel(gamma, rho, a_scale, delta_b, alpha, x)
        .unwrap_or(0.0);
    let mass = if alpha < 1.0 - crate::pathway::ALPHA_EPS {
        let hi = (a_scale * (1.0 - alpha)).powf(-1.0 / rho);
        quad::integrate(kernel, 0.0, hi, QUAD_TOL)?
    } else if delta_b < 0.0 {
        // type-2 tail decays only polynomially while the 0F1 factor
        // oscillates like a Bessel J: integrate the body directly, then
        // sum half-oscillation panels with Euler (binomial) acceleration
        let nu = gamma / rho - 1.0;
        let x_of_w = |w: f64| (w * w / (4.0 * delta_b.abs())).powf(1.0 / rho);
        let pi = std::f64::consts::PI;
        let mut w0 = nu * pi / 2.0 + 0.75 * pi;
        while w0 < 20.0 {
            w0 += pi;
        }
        let body = quad::integrate(kernel, 0.0, x_of_w(w0), QUAD_TOL)?;
        const PANELS: usize = 48;
        let mut partial_sums = Vec::with_capacity(PANELS);
        let mut acc = 0.0;
        for j in 0..PANELS {
            let lo = x_of_w(w0 + j as f64 * pi);
            let hi = x_of_w(w0 + (j + 1) as f64 * pi);
            acc += quad::integrate(kernel, lo, hi, 1e-12)?;
            partial_sums.push(acc);
        }
        while partial_sums.len() > 1 {
            partial_sums = partial_sums
                .windows(2)
                .map(|p| 0.5 * (p[0] + p[1]))
                .collect();
        }
        body + partial_sums[0]
    } else {
        quad::integrate_semi_inf(kernel, QUAD_TOL)?
    };
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::accuracy(format!(
            "Bessel pathway normalizer came out nonpositive or nonfinite: {mass}"
        )));
    }
    BESSEL_NORM_CACHE.lock().unwrap().insert(key, mass);
    Ok(mass)
}

/// Pathway extension of [`bessel_gamma_pdf`]: the exponential is replaced
/// by the pathway bracket (type-1 for `alpha < 1`, type-2 for
/// `alpha > 1`), with a numerically computed normalizing constant.
pub fn bessel_pathway_pdf(
    gamma: f64,
    rho: f64,
    a_scale: f64,
    delta_b: f64,
    alpha: f64,
    x: f64,
) -> Result<f64> {
    bessel_pathway_params_check(gamma, rho, a_scale, delta_b, alpha)?;
    if (alpha - 1.0).abs() <= crate::pathway::ALPHA_EPS {
        return bessel_gamma_pdf(gamma, rho, a_scale, delta_b, x);
    }
    if !(x > 0.0) {
        return Ok(0.0);
    }
    let norm = bessel_pathway_norm(gamma, rho, a_scale, delta_b, alpha)?;
    Ok(bessel_pathway_kernel(gamma, rho, a_scale, delta_b, alpha, x)? / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(gamma: f64, delta: f64, lam: f64) -> SuperstatModel {
        SuperstatModel::new(gamma, delta, lam).unwrap()
    }

    #[test]
    fn conditional_closed_values() {
        let m = model(0.0, 1.0, 1.0);
        let v = conditional_pdf(&m, 1.0, 1.0).unwrap();
        assert!((v - (-1.0_f64).exp()).abs() < 1e-14);

        // k1 = 2 for gamma = 1, delta = 2, theta = 1
        let m2 = model(1.0, 2.0, 1.0);
        let v2 = conditional_pdf(&m2, 1.0, 1.0).unwrap();
        assert!((v2 - 2.0 * (-1.0_f64).exp()).abs() < 1e-13, "{v2}");

        // normalization in x at fixed theta
        let mass = quad::integrate_semi_inf(
            |x| conditional_pdf(&model(1.5, 1.2, 1.0), x, 0.7).unwrap(),
            1e-12,
        )
        .unwrap();
        assert!((mass - 1.0).abs() < 1e-10, "{mass}");
    }

    #[test]
    fn marginal_matches_mixture_and_normalizes() {
        let m = model(0.0, 1.0, 1.0);
        assert!((marginal_pdf(&m, 1.0).unwrap() - 0.25).abs() < 1e-14);

        let m2 = model(1.3, 1.5, 2.0);
        for &x in &[0.2, 0.7, 1.5, 3.0] {
            let mix = quad::integrate_semi_inf(
                |theta| {
                    m2.lam * (-m2.lam * theta).exp() * conditional_pdf(&m2, x, theta).unwrap()
                },
                1e-12,
            )
            .unwrap();
            let closed = marginal_pdf(&m2, x).unwrap();
            assert!((mix - closed).abs() < 1e-10 * closed, "x={x}");
        }

        let mass =
            quad::integrate_semi_inf(|x| marginal_pdf(&m2, x).unwrap(), 1e-12).unwrap();
        assert!((mass - 1.0).abs() < 1e-8, "{mass}");
    }

    #[test]
    fn marginal_is_pathway_member() {
        for (g, d, l) in [(0.0, 1.0, 1.0), (1.3, 1.5, 2.0), (2.0, 0.8, 0.5)] {
            let m = model(g, d, l);
            let p = marginal_as_pathway(&m).unwrap();
            for &x in &[0.1, 0.5, 1.0, 2.0, 5.0] {
                let a = marginal_pdf(&m, x).unwrap();
                let b = crate::pathway::pdf(&p, x).unwrap();
                assert!((a - b).abs() <= 1e-12 * a.max(1.0), "x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn posterior_gamma_form_and_bayes_rule() {
        let m = model(0.0, 1.0, 1.0);
        // Gamma(shape 2, rate 2) at theta
        for &theta in &[0.3, 1.0, 2.5] {
            let v = posterior_pdf(&m, theta, 1.0).unwrap();
            let expect = 4.0 * theta * (-2.0 * theta).exp();
            assert!((v - expect).abs() < 1e-13);
        }

        let mass =
            quad::integrate_semi_inf(|t| posterior_pdf(&m, t, 1.0).unwrap(), 1e-12).unwrap();
        assert!((mass - 1.0).abs() < 1e-10);

        // Bayes-rule identity: posterior * marginal = prior * conditional
        let m2 = model(1.3, 1.5, 2.0);
        for &(theta, x) in &[(0.5, 0.7), (1.2, 1.5), (2.0, 0.3)] {
            let lhs = posterior_pdf(&m2, theta, x).unwrap() * marginal_pdf(&m2, x).unwrap();
            let rhs = m2.lam * (-m2.lam * theta).exp() * conditional_pdf(&m2, x, theta).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300), "({theta},{x})");
        }
    }

    #[test]
    fn bayes_estimate_closed_and_lemma() {
        let m = model(0.0, 1.0, 1.0);
        assert!((bayes_estimate(&m, 1.0).unwrap() - 1.0).abs() < 1e-14);

        // decreasing in x
        let mut prev = f64::INFINITY;
        for &x in &[0.5, 1.0, 2.0, 4.0] {
            let v = bayes_estimate(&m, x).unwrap();
            assert!(v < prev);
            prev = v;
        }

        // posterior-mean consistency
        let m2 = model(1.3, 1.5, 2.0);
        for &x in &[0.4, 1.0, 2.2] {
            let mean = quad::integrate_semi_inf(
                |t| t * posterior_pdf(&m2, t, x).unwrap(),
                1e-12,
            )
            .unwrap();
            assert!((mean - bayes_estimate(&m2, x).unwrap()).abs() < 1e-8);
        }
    }

    #[test]
    fn ext_conditional_normalizes() {
        let m = model(0.0, 1.0, 1.0).with_alpha(1.5).unwrap();
        let mass = quad::integrate_semi_inf(
            |x| ext_conditional_pdf(&m, x, 0.8).unwrap(),
            1e-12,
        )
        .unwrap();
        assert!((mass - 1.0).abs() < 1e-8, "{mass}");
    }

    #[test]
    fn ext_marginal_gform_matches_quadrature() {
        let m = model(0.0, 1.0, 1.0).with_alpha(1.5).unwrap();
        for &x in &[0.5, 1.0, 2.0] {
            let q = ext_marginal_quad(&m, x).unwrap();
            let gform = ext_marginal_pdf(&m, x).unwrap();
            assert!((gform - q).abs() <= 1e-6 * q, "x={x}: {gform} vs {q}");
        }
        let m2 = model(1.0, 1.0, 2.0).with_alpha(1.3).unwrap();
        for &x in &[0.5, 1.5] {
            let q = ext_marginal_quad(&m2, x).unwrap();
            let gform = ext_marginal_pdf(&m2, x).unwrap();
            assert!((gform - q).abs() <= 1e-6 * q, "x={x}: {gform} vs {q}");
        }
    }

    #[test]
    fn ext_marginal_alpha_to_one_limit() {
        let base = model(0.5, 1.0, 1.0);
        let x = 1.2;
        let target = marginal_pdf(&base, x).unwrap();
        let mut prev_gap = f64::INFINITY;
        for alpha in [1.2, 1.05, 1.01] {
            let m = base.with_alpha(alpha).unwrap();
            let gap = (ext_marginal_quad(&m, x).unwrap() - target).abs();
            assert!(gap < prev_gap, "alpha={alpha}");
            prev_gap = gap;
        }
        assert!(prev_gap < 2e-3, "{prev_gap}");
    }

    #[test]
    fn ext_posterior_normalizes_and_bayes_rule() {
        let m = model(0.0, 1.0, 1.0).with_alpha(1.5).unwrap();
        let x = 1.0;
        let mass = quad::integrate_semi_inf(
            |t| ext_posterior_pdf(&m, t, x).unwrap(),
            1e-10,
        )
        .unwrap();
        assert!((mass - 1.0).abs() < 1e-6, "{mass}");

        // numerical Bayes-rule identity through the G-function marginal
        for &theta in &[0.5, 1.5] {
            let lhs = ext_posterior_pdf(&m, theta, x).unwrap() * ext_marginal_pdf(&m, x).unwrap();
            let rhs =
                m.lam * (-m.lam * theta).exp() * ext_conditional_pdf(&m, x, theta).unwrap();
            assert!((lhs - rhs).abs() <= 1e-6 * rhs, "theta={theta}");
        }
    }

    #[test]
    fn ext_bayes_matches_posterior_mean() {
        let m = model(0.0, 1.0, 1.0).with_alpha(1.5).unwrap();
        for &x in &[0.5, 1.0, 2.0] {
            let gform = ext_bayes_estimate(&m, x).unwrap();
            let mean = ext_bayes_quad(&m, x).unwrap();
            assert!((gform - mean).abs() <= 1e-5 * mean, "x={x}: {gform} vs {mean}");
        }

        // decreasing in x
        let mut prev = f64::INFINITY;
        for &x in &[0.5, 1.0, 2.0, 4.0] {
            let v = ext_bayes_estimate(&m, x).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn ext_bayes_alpha_to_one_limit() {
        let base = model(0.5, 1.0, 1.0);
        let x = 1.3;
        let target = bayes_estimate(&base, x).unwrap();
        let mut prev_gap = f64::INFINITY;
        for alpha in [1.2, 1.05, 1.01] {
            let m = base.with_alpha(alpha).unwrap();
            let gap = (ext_bayes_quad(&m, x).unwrap() - target).abs();
            assert!(gap < prev_gap, "alpha={alpha}");
            prev_gap = gap;
        }
        assert!(prev_gap < 2e-2, "{prev_gap}");
    }

    #[test]
    fn bessel_gamma_reductions_and_normalization() {
        // delta_b = 0, gamma = rho = a = 1: Exp(1)
        for &x in &[0.3, 1.0, 2.5] {
            let v = bessel_gamma_pdf(1.0, 1.0, 1.0, 0.0, x).unwrap();
            assert!((v - (-x).exp()).abs() < 1e-14);
        }
        // normalization for both tail signs at the figure parameters
        for &db in &[0.5, -0.5] {
            let mass = quad::integrate_semi_inf(
                |x| bessel_gamma_pdf(2.0, 1.2, 1.0, db, x).unwrap(),
                1e-12,
            )
            .unwrap();
            assert!((mass - 1.0).abs() < 1e-8, "db={db}: {mass}");
        }
    }

    #[test]
    fn bessel_pathway_reductions() {
        // delta_b = 0, alpha = 0.5: plain type-1 pathway with eta = 1
        let p = crate::pathway::PathwayParams::new(0.5, 1.0, 1.2, 2.0, 1.0).unwrap();
        for &x in &[0.2, 0.6, 1.0] {
            let a = bessel_pathway_pdf(2.0, 1.2, 1.0, 0.0, 0.5, x).unwrap();
            let b = crate::pathway::pdf(&p, x).unwrap();
            assert!((a - b).abs() <= 1e-8 * b.max(1e-12), "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn bessel_pathway_normalizes() {
        // type-1 branch admits either tail sign: finite support, direct
        // quadrature
        for &db in &[0.5, -0.5] {
            let hi = (1.0f64 * 0.5).powf(-1.0 / 1.2);
            let mass = quad::integrate(
                |x| bessel_pathway_pdf(2.0, 1.2, 1.0, db, 0.5, x).unwrap(),
                0.0,
                hi,
                1e-10,
            )
            .unwrap();
            assert!((mass - 1.0).abs() < 1e-8, "db={db}: {mass}");
        }
        // type-2 oscillatory normalizer against a frozen high-precision
        // oracle (half-oscillation panels with binomial acceleration)
        let norm = bessel_pathway_norm(2.0, 1.2, 1.0, -0.5, 1.5).unwrap();
        assert!(
            (norm - 0.556_703_746_032_555_5).abs() < 1e-8,
            "{norm}"
        );
        // divergent type-2 combination rejected up front
        assert!(bessel_pathway_pdf(2.0, 1.2, 1.0, 0.5, 1.5, 1.0).is_err());
    }

    #[test]
    fn bessel_pathway_alpha_to_one_limits() {
        for &(db, alphas) in &[(0.5, [0.9, 0.99, 0.999]), (-0.5, [1.1, 1.01, 1.001])] {
            let x = 0.8;
            let target = bessel_gamma_pdf(2.0, 1.2, 1.0, db, x).unwrap();
            let mut prev_gap = f64::INFINITY;
            for &al in &alphas {
                let v = bessel_pathway_pdf(2.0, 1.2, 1.0, db, al, x).unwrap();
                let gap = (v - target).abs();
                assert!(gap < prev_gap, "db={db} alpha={al}");
                prev_gap = gap;
            }
            assert!(prev_gap < 3e-3 * target.max(1.0), "db={db}: {prev_gap}");
        }
    }

    #[test]
    fn bessel_pathway_peak_ordering() {
        // past the mode, larger alpha (>1) gives thicker tails and a less
        // peaked body
        let xs_tail = 4.0;
        let mut prev = 0.0;
        for &al in &[1.1, 1.3, 1.5] {
            let v = bessel_pathway_pdf(2.0, 1.2, 1.0, -0.5, al, xs_tail).unwrap();
            assert!(v > prev, "alpha={al}");
            prev = v;
        }
    }
}
