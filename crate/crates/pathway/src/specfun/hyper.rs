//! Hypergeometric series 0F1 and 2F1.

use crate::error::{Error, Result};

const MAX_TERMS: usize = 10_000;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && (x - x.round()).abs() < 1e-12
}

/// Confluent limit function 0F1(; b; z) by direct series.
pub fn hyp0f1(b: f64, z: f64) -> Result<f64> {
    if is_nonpositive_integer(b) {
        return Err(Error::domain(format!(
            "hyp0f1 pole: b = {b} is a nonpositive integer"
        )));
    }
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= z / ((b + kf) * (kf + 1.0));
        sum += term;
        if term.abs() < 1e-16 * sum.abs().max(1e-300) && k > 2 {
            return Ok(sum);
        }
    }
    Err(Error::accuracy(format!(
        "hyp0f1 series did not converge for b={b}, z={z}"
    )))
}

/// 0F1(; b; z) as `(ln |value|, sign)`, valid for arguments far beyond
/// f64 overflow.
///
/// Via the Bessel connections `0F1(;b;z) = Gamma(b) z^{-(b-1)/2} I_{b-1}(2 sqrt z)`
/// (z > 0) and `0F1(;b;-y) = Gamma(b) y^{-(b-1)/2} J_{b-1}(2 sqrt y)`,
/// the large-argument regime is handled by the standard Bessel
/// asymptotic expansions; the direct series covers the rest.
pub fn log_hyp0f1(b: f64, z: f64) -> Result<(f64, f64)> {
    if is_nonpositive_integer(b) {
        return Err(Error::domain(format!(
            "log_hyp0f1 pole: b = {b} is a nonpositive integer"
        )));
    }
    // direct series wherever it is both convergent and well conditioned:
    // no cancellation for z >= 0; bounded cancellation for small |z| < 0
    if (z >= 0.0 && z < 900.0) || (z < 0.0 && z > -56.25) {
        let v = hyp0f1(b, z)?;
        if v == 0.0 {
            return Ok((f64::NEG_INFINITY, 0.0));
        }
        return Ok((v.abs().ln(), v.signum()));
    }
    let nu = b - 1.0;
    let log_gamma_b = crate::specfun::gamma::log_gamma(b)?;
    let w = 2.0 * z.abs().sqrt();
    let mu = 4.0 * nu * nu;
    let c1 = (mu - 1.0) / 8.0;
    let c2 = (mu - 1.0) * (mu - 9.0) / 128.0;
    let c3 = (mu - 1.0) * (mu - 9.0) * (mu - 25.0) / 3072.0;
    let c4 = (mu - 1.0) * (mu - 9.0) * (mu - 25.0) * (mu - 49.0) / 98304.0;
    if z > 0.0 {
        // I_nu(w) ~ e^w / sqrt(2 pi w) * (1 - c1/w + c2/w^2 - c3/w^3 + c4/w^4)
        let series = 1.0 - c1 / w + c2 / (w * w) - c3 / (w * w * w) + c4 / (w * w * w * w);
        let log_i = w - 0.5 * (2.0 * std::f64::consts::PI * w).ln() + series.ln();
        Ok((log_gamma_b - 0.5 * nu * z.ln() + log_i, 1.0))
    } else {
        // J_nu(w) ~ sqrt(2/(pi w)) [cos(chi) P(w) - sin(chi) Q(w)]
        let chi = w - nu * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
        let p = 1.0 - c2 / (w * w) + c4 / (w * w * w * w);
        let q = c1 / w - c3 / (w * w * w);
        let j = (2.0 / (std::f64::consts::PI * w)).sqrt() * (chi.cos() * p - chi.sin() * q);
        if j == 0.0 {
            return Ok((f64::NEG_INFINITY, 0.0));
        }
        Ok((
            log_gamma_b - 0.5 * nu * (-z).ln() + j.abs().ln(),
            j.signum(),
        ))
    }
}

/// Real gamma function including negative non-integer arguments, via the
/// reflection formula.
fn gamma_real(x: f64) -> Result<f64> {
    if x > 0.0 {
        Ok(crate::specfun::gamma::log_gamma(x)?.exp())
    } else {
        let pi = std::f64::consts::PI;
        Ok(pi / ((pi * x).sin() * crate::specfun::gamma::log_gamma(1.0 - x)?.exp()))
    }
}

/// Gauss hypergeometric 2F1(a, b; c; z) for |z| < 1.
///
/// When `a` or `b` is a nonpositive integer the series is a polynomial
/// and is summed as-is.  For z in (1/2, 1) the 1-z connection formula is
/// used (it requires c-a-b away from an integer); for z < -1/2 the Pfaff
/// transformation maps to an argument in (0, 1).
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::domain(format!(
            "hyp2f1 pole: c = {c} is a nonpositive integer"
        )));
    }
    if z.abs() >= 1.0 {
        return Err(Error::domain(format!("hyp2f1 requires |z| < 1, got {z}")));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return gauss_series(a, b, c, z);
    }
    if z > 0.5 {
        // 2F1(a,b;c;z) = G(c)G(s)/(G(c-a)G(c-b)) 2F1(a,b;1-s;1-z)
        //   + (1-z)^s G(c)G(-s)/(G(a)G(b)) 2F1(c-a,c-b;1+s;1-z),  s = c-a-b
        let s = c - a - b;
        if (s - s.round()).abs() < 1e-8 {
            return Err(Error::accuracy(format!(
                "hyp2f1: c-a-b = {s} too close to an integer for the 1-z \
                 connection formula (a={a}, b={b}, c={c}, z={z})"
            )));
        }
        let gc = gamma_real(c)?;
        let t1 = gc * gamma_real(s)? / (gamma_real(c - a)? * gamma_real(c - b)?)
            * gauss_series(a, b, 1.0 - s, 1.0 - z)?;
        let t2 = (1.0 - z).powf(s) * gc * gamma_real(-s)? / (gamma_real(a)? * gamma_real(b)?)
            * gauss_series(c - a, c - b, 1.0 + s, 1.0 - z)?;
        return Ok(t1 + t2);
    }
    if z < -0.5 {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
        return Ok((1.0 - z).powf(-a) * gauss_series(a, c - b, c, z / (z - 1.0))?);
    }
    gauss_series(a, b, c, z)
}

fn gauss_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == 0.0 || (term.abs() < 1e-16 * sum.abs().max(1e-300) && k > 2) {
            return Ok(sum);
        }
    }
    Err(Error::accuracy(format!(
        "2F1 series did not converge for a={a}, b={b}, c={c}, z={z}"
    )))
}
