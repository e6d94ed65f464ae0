//! Pathway-deformed fractional integral operators.
//!
//! The pathway operator replaces the Riemann-Liouville power kernel
//! `(x - t)^{eta-1}` by the bounded-support kernel
//! `[1 - a(1-alpha) t/x]^{eta/(1-alpha)-1}`; as `alpha -> 1` the kernel
//! becomes exponential and the operator turns into a Laplace transform of
//! the integrand, while at `alpha = 0`, `a = 1` it is exactly
//! `Gamma(eta)` times the Riemann-Liouville integral.

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::gamma::log_gamma;
use crate::specfun::hyper::hyp2f1;

const QUAD_TOL: f64 = 1e-11;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && (x - x.round()).abs() < 1e-12
}

/// Pathway fractional integral of order `eta > 0` at `x > 0`:
///
/// `x^{eta-1} int_0^{x/(a(1-alpha))} [1 - a(1-alpha) t/x]^{eta/(1-alpha)-1} f(t) dt`
///
/// defined for `alpha < 1` and `a > 0`.
pub fn pathway_frac_integral<F: Fn(f64) -> f64>(
    f: F,
    x: f64,
    eta: f64,
    alpha: f64,
    a: f64,
) -> Result<f64> {
    if !(x > 0.0) || !(eta > 0.0) || !(a > 0.0) {
        return Err(Error::domain(format!(
            "pathway_frac_integral requires x > 0, eta > 0, a > 0 (got x={x}, eta={eta}, a={a})"
        )));
    }
    if !(alpha < 1.0) {
        return Err(Error::domain(format!(
            "pathway_frac_integral requires alpha < 1, got {alpha}"
        )));
    }
    let upper = x / (a * (1.0 - alpha));
    let e = eta / (1.0 - alpha) - 1.0;
    // substitute s = upper - t so the possible power singularity
    // (e in (-1, 0)) sits at the left endpoint, which the quadrature
    // nodes approach without cancellation
    let body = quad::integrate(
        |s| (s / upper).powf(e) * f(upper - s),
        0.0,
        upper,
        QUAD_TOL,
    )?;
    Ok(x.powf(eta - 1.0) * body)
}

/// Riemann-Liouville fractional integral of order `eta > 0`:
///
/// `(1/Gamma(eta)) int_0^x (x - t)^{eta-1} f(t) dt`.
pub fn rl_integral<F: Fn(f64) -> f64>(f: F, x: f64, eta: f64) -> Result<f64> {
    if !(x > 0.0) || !(eta > 0.0) {
        return Err(Error::domain(format!(
            "rl_integral requires x > 0 and eta > 0 (got x={x}, eta={eta})"
        )));
    }
    // substitute s = x - t so the power singularity sits at the left
    // endpoint, where the quadrature rule clusters its nodes
    let body = quad::integrate(|s| s.powf(eta - 1.0) * f(x - s), 0.0, x, QUAD_TOL)?;
    Ok(body * (-log_gamma(eta)?).exp())
}

/// Saigo fractional integral of order `eta > 0`:
///
/// `(1/Gamma(eta)) int_0^x (x-t)^{eta-1} 2F1(eta+beta, -gamma; eta; 1 - t/x) f(t) dt`.
///
/// `beta = -eta` or `gamma = 0` collapses the weight to 1 and recovers
/// the Riemann-Liouville integral.
pub fn saigo_integral<F: Fn(f64) -> f64>(
    f: F,
    x: f64,
    eta: f64,
    beta: f64,
    gamma: f64,
) -> Result<f64> {
    if !(x > 0.0) || !(eta > 0.0) {
        return Err(Error::domain(format!(
            "saigo_integral requires x > 0 and eta > 0 (got x={x}, eta={eta})"
        )));
    }
    // the 2F1 weight is evaluated across (0, 1); unless the series is a
    // polynomial, arguments above 1/2 need the 1-z connection formula,
    // which degenerates when gamma - beta is an integer
    let s = gamma - beta;
    let polynomial = is_nonpositive_integer(eta + beta) || is_nonpositive_integer(-gamma);
    if !polynomial && (s - s.round()).abs() < 1e-8 {
        return Err(Error::accuracy(format!(
            "saigo_integral: gamma - beta = {s} is too close to an integer for \
             reliable 2F1 evaluation near the endpoint"
        )));
    }
    let body = quad::integrate(
        |u| {
            let w = hyp2f1(eta + beta, -gamma, eta, u / x).unwrap_or(f64::NAN);
            u.powf(eta - 1.0) * w * f(x - u)
        },
        0.0,
        x,
        QUAD_TOL,
    )?;
    Ok(body * (-log_gamma(eta)?).exp())
}

/// Solution density of the pathway-deformed fractional kinetic equation:
///
/// `N(t) = (N0 / Gamma(mu)) t^{mu-1} [1 + b (alpha-1) t^nu]^{-1/(alpha-1)}`
///
/// for `alpha > 1`, `mu > 0`, `nu > 0`, `b >= 0`; as `alpha -> 1` the
/// bracket becomes `e^{-b t^nu}`.
pub fn fractional_kinetic_density(
    t: f64,
    n0: f64,
    mu: f64,
    nu: f64,
    b: f64,
    alpha: f64,
) -> Result<f64> {
    if !(mu > 0.0) || !(nu > 0.0) || !(b >= 0.0) || !(alpha > 1.0) {
        return Err(Error::domain(format!(
            "fractional_kinetic_density requires mu > 0, nu > 0, b >= 0, alpha > 1 \
             (got mu={mu}, nu={nu}, b={b}, alpha={alpha})"
        )));
    }
    if !(t >= 0.0) {
        return Err(Error::domain(format!("time must be nonnegative, got {t}")));
    }
    if t == 0.0 {
        if mu > 1.0 {
            return Ok(0.0);
        }
        if (mu - 1.0).abs() < 1e-15 {
            return Ok(n0);
        }
        return Err(Error::domain(
            "density diverges at t = 0 when mu < 1".to_string(),
        ));
    }
    let log_bracket = -(b * (alpha - 1.0) * t.powf(nu)).ln_1p() / (alpha - 1.0);
    Ok(n0 * ((mu - 1.0) * t.ln() + log_bracket - log_gamma(mu)?).exp())
}
