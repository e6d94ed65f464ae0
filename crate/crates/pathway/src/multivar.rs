//! Multivariate (Dirichlet-type) pathway densities, rectangular
//! matrix-variate pathway normalizing constants, volume-content moments,
//! the product-of-betas structure of the scaled volume and its Meijer G
//! density, and the lambda-criterion moment alias.

use rand::Rng;
use rand_distr::{Beta as BetaDist, Distribution};

use crate::error::{Error, Result};
use crate::pathway::ALPHA_EPS;
use crate::specfun::gamma::{log_gamma, matrix_gamma_p};
use crate::specfun::mellin::g_function_spec;

/// Parameters of the multivariate pathway density
/// `K prod_i x_i^{gamma_i - 1} [1 - (1-alpha) sum_i a_i x_i^{delta_i}]^{eta/(1-alpha)}`.
#[derive(Debug, Clone)]
pub struct MultivarPathwayParams {
    pub n: usize,
    pub gammas: Vec<f64>,
    pub a_list: Vec<f64>,
    pub deltas: Vec<f64>,
    pub eta: f64,
    pub alpha: f64,
}

impl MultivarPathwayParams {
    pub fn new(
        gammas: Vec<f64>,
        a_list: Vec<f64>,
        deltas: Vec<f64>,
        eta: f64,
        alpha: f64,
    ) -> Result<Self> {
        let n = gammas.len();
        if n == 0 {
            return Err(Error::domain("dimension must be at least 1"));
        }
        if a_list.len() != n || deltas.len() != n {
            return Err(Error::domain(format!(
                "parameter lists must share one length, got {n}, {}, {}",
                a_list.len(),
                deltas.len()
            )));
        }
        for (name, list) in [("gamma", &gammas), ("a", &a_list), ("delta", &deltas)] {
            if let Some(v) = list.iter().find(|v| !(**v > 0.0)) {
                return Err(Error::domain(format!("{name} entries must be positive, got {v}")));
            }
        }
        if !(eta > 0.0) {
            return Err(Error::domain(format!("eta must be positive, got {eta}")));
        }
        if !alpha.is_finite() {
            return Err(Error::domain(format!("alpha must be finite, got {alpha}")));
        }
        let params = Self {
            n,
            gammas,
            a_list,
            deltas,
            eta,
            alpha,
        };
        if params.alpha > 1.0 + ALPHA_EPS {
            let e = params.eta / (params.alpha - 1.0);
            let sum_g = params.sum_g();
            if e - sum_g <= 0.0 {
                return Err(Error::domain(format!(
                    "type-2 normalizer needs eta/(alpha-1) > sum of gamma_i/delta_i, got {e} vs {sum_g}"
                )));
            }
        }
        Ok(params)
    }

    fn sum_g(&self) -> f64 {
        self.gammas
            .iter()
            .zip(&self.deltas)
            .map(|(g, d)| g / d)
            .sum()
    }

    /// `sum_i a_i x_i^{delta_i}`.
    fn weight(&self, x: &[f64]) -> f64 {
        x.iter()
            .zip(self.a_list.iter().zip(&self.deltas))
            .map(|(xi, (a, d))| a * xi.powf(*d))
            .sum()
    }
}

/// Log normalizing constant of the multivariate pathway density, from
/// integrating the coordinates out one at a time.
pub fn mv_log_norm_const(params: &MultivarPathwayParams) -> Result<f64> {
    let sum_g = params.sum_g();
    let mut acc = 0.0;
    let scale = if params.alpha < 1.0 - ALPHA_EPS {
        1.0 - params.alpha
    } else if params.alpha > 1.0 + ALPHA_EPS {
        params.alpha - 1.0
    } else {
        params.eta
    };
    for ((g, a), d) in params
        .gammas
        .iter()
        .zip(&params.a_list)
        .zip(&params.deltas)
    {
        let gi = g / d;
        acc += d.ln() + gi * (scale * a).ln() - log_gamma(gi)?;
    }
    if params.alpha < 1.0 - ALPHA_EPS {
        let e = params.eta / (1.0 - params.alpha);
        acc += log_gamma(sum_g + e + 1.0)? - log_gamma(e + 1.0)?;
    } else if params.alpha > 1.0 + ALPHA_EPS {
        let e = params.eta / (params.alpha - 1.0);
        acc += log_gamma(e)? - log_gamma(e - sum_g)?;
    }
    Ok(acc)
}

/// Log density of the multivariate pathway model; outside the support it
/// is negative infinity rather than an error.
pub fn mv_logpdf(params: &MultivarPathwayParams, x: &[f64]) -> Result<f64> {
    if x.len() != params.n {
        return Err(Error::domain(format!(
            "point has dimension {}, expected {}",
            x.len(),
            params.n
        )));
    }
    if x.iter().any(|v| !(*v > 0.0)) {
        return Ok(f64::NEG_INFINITY);
    }
    let w = params.weight(x);
    let bracket_log = if params.alpha < 1.0 - ALPHA_EPS {
        let t = (1.0 - params.alpha) * w;
        if t >= 1.0 {
            return Ok(f64::NEG_INFINITY);
        }
        params.eta / (1.0 - params.alpha) * (-t).ln_1p()
    } else if params.alpha > 1.0 + ALPHA_EPS {
        -params.eta / (params.alpha - 1.0) * ((params.alpha - 1.0) * w).ln_1p()
    } else {
        -params.eta * w
    };
    let mut acc = mv_log_norm_const(params)? + bracket_log;
    for (xi, g) in x.iter().zip(&params.gammas) {
        acc += (g - 1.0) * xi.ln();
    }
    Ok(acc)
}

/// Lower-triangular Cholesky factor of a symmetric matrix given row-major;
/// `None` when the matrix is not positive definite.
fn cholesky(n: usize, m: &[f64]) -> Option<Vec<f64>> {
    let mut l = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = m[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Some(l)
}

fn log_det_spd(n: usize, m: &[f64]) -> Result<f64> {
    let l = cholesky(n, m)
        .ok_or_else(|| Error::domain("matrix is not symmetric positive definite"))?;
    Ok(2.0 * (0..n).map(|i| l[i * n + i].ln()).sum::<f64>())
}

/// Rectangular matrix-variate pathway model
/// `C |A^{1/2}(X-M)B(X-M)'A^{1/2}|^{gamma}
///  |I - a(1-alpha) A^{1/2}(X-M)B(X-M)'A^{1/2}|^{eta/(1-alpha)}`.
#[derive(Debug, Clone)]
pub struct MatrixPathwaySpec {
    pub p: usize,
    pub q: usize,
    pub gamma: f64,
    pub eta: f64,
    pub a: f64,
    pub alpha: f64,
    /// p x p row-major symmetric positive definite
    pub a_mat: Vec<f64>,
    /// q x q row-major symmetric positive definite
    pub b_mat: Vec<f64>,
    /// p x q row-major relocation matrix
    pub m_mat: Vec<f64>,
}

impl MatrixPathwaySpec {
    pub fn new(
        p: usize,
        q: usize,
        gamma: f64,
        eta: f64,
        a: f64,
        alpha: f64,
        a_mat: Vec<f64>,
        b_mat: Vec<f64>,
        m_mat: Vec<f64>,
    ) -> Result<Self> {
        if p == 0 || q < p {
            return Err(Error::domain(format!("need q >= p >= 1, got p = {p}, q = {q}")));
        }
        if a_mat.len() != p * p || b_mat.len() != q * q || m_mat.len() != p * q {
            return Err(Error::domain("matrix buffers do not match the stated dimensions"));
        }
        if !(eta > 0.0) || !(a > 0.0) {
            return Err(Error::domain(format!(
                "need eta > 0 and a > 0, got eta = {eta}, a = {a}"
            )));
        }
        if cholesky(p, &a_mat).is_none() {
            return Err(Error::domain("A is not symmetric positive definite"));
        }
        if cholesky(q, &b_mat).is_none() {
            return Err(Error::domain("B is not symmetric positive definite"));
        }
        let bound = (p as f64 - 1.0) / 2.0;
        if gamma + q as f64 / 2.0 <= bound {
            return Err(Error::domain(format!(
                "need gamma + q/2 > (p-1)/2, got {}",
                gamma + q as f64 / 2.0
            )));
        }
        if alpha > 1.0 + ALPHA_EPS
            && eta / (alpha - 1.0) - gamma - q as f64 / 2.0 <= bound
        {
            return Err(Error::domain(format!(
                "type-2 regime needs eta/(alpha-1) - gamma - q/2 > (p-1)/2, got {}",
                eta / (alpha - 1.0) - gamma - q as f64 / 2.0
            )));
        }
        Ok(Self {
            p,
            q,
            gamma,
            eta,
            a,
            alpha,
            a_mat,
            b_mat,
            m_mat,
        })
    }

    /// first beta parameter of the j-th volume factor (1-based `j`)
    fn beta_a(&self, j: usize) -> f64 {
        self.gamma + self.q as f64 / 2.0 - (j as f64 - 1.0) / 2.0
    }

    /// second beta parameter of the volume factors (type-1 branch)
    fn beta_b(&self) -> f64 {
        self.eta / (1.0 - self.alpha) + (self.p as f64 + 1.0) / 2.0
    }
}

/// Log normalizing constant `ln C` of the matrix-variate pathway density,
/// by regime.
pub fn matrix_log_norm_const(spec: &MatrixPathwaySpec) -> Result<f64> {
    let p = spec.p as u32;
    let pf = spec.p as f64;
    let qf = spec.q as f64;
    let gq = spec.gamma + qf / 2.0;
    let base = qf / 2.0 * log_det_spd(spec.p, &spec.a_mat)?
        + pf / 2.0 * log_det_spd(spec.q, &spec.b_mat)?
        + matrix_gamma_p(p, qf / 2.0)?
        - pf * qf / 2.0 * std::f64::consts::PI.ln()
        - matrix_gamma_p(p, gq)?;
    if spec.alpha < 1.0 - ALPHA_EPS {
        let e = spec.eta / (1.0 - spec.alpha);
        Ok(base
            + pf * gq * (spec.a * (1.0 - spec.alpha)).ln()
            + matrix_gamma_p(p, gq + e + (pf + 1.0) / 2.0)?
            - matrix_gamma_p(p, e + (pf + 1.0) / 2.0)?)
    } else if spec.alpha > 1.0 + ALPHA_EPS {
        let e = spec.eta / (spec.alpha - 1.0);
        Ok(base
            + pf * gq * (spec.a * (spec.alpha - 1.0)).ln()
            + matrix_gamma_p(p, e)?
            - matrix_gamma_p(p, e - gq)?)
    } else {
        Ok(base + pf * gq * (spec.a * spec.eta).ln())
    }
}

/// `E[u^h]` of the scaled squared volume (`u1`, `u2` or `u3` by regime):
/// a product of gamma-function ratios; for `alpha < 1` this is the
/// product of `p` independent type-1 beta `h`-th moments.
pub fn volume_moment(spec: &MatrixPathwaySpec, h: f64) -> Result<f64> {
    let mut acc = 0.0;
    for j in 1..=spec.p {
        let aj = spec.beta_a(j);
        if aj + h <= 0.0 {
            return Err(Error::domain(format!(
                "moment of order {h} does not exist: gamma + q/2 - (j-1)/2 + h = {} <= 0",
                aj + h
            )));
        }
        acc += log_gamma(aj + h)? - log_gamma(aj)?;
        if spec.alpha < 1.0 - ALPHA_EPS {
            let b = spec.beta_b();
            acc += log_gamma(aj + b)? - log_gamma(aj + b + h)?;
        } else if spec.alpha > 1.0 + ALPHA_EPS {
            let e = spec.eta / (spec.alpha - 1.0);
            let c = e - spec.gamma - spec.q as f64 / 2.0 - (j as f64 - 1.0) / 2.0;
            // type-2 beta: finite moments only below the tail index
            if c - h <= 0.0 {
                return Err(Error::domain(format!(
                    "moment of order {h} does not exist in the type-2 regime (tail index {c})"
                )));
            }
            acc += log_gamma(c - h)? - log_gamma(c)?;
        }
        // gamma regime: unit-rate gamma moments, no second factor
    }
    Ok(acc.exp())
}

/// Moment of the lambda criterion of likelihood ratio tests; structurally
/// identical to the scaled-volume moment.
pub fn lambda_criterion_moment(spec: &MatrixPathwaySpec, h: f64) -> Result<f64> {
    volume_moment(spec, h)
}

/// Draw `n` samples of `u1 = v_1 ... v_p`, each `v_j` an independent
/// type-1 beta variable (requires the `alpha < 1` branch).
pub fn sample_u1<R: Rng + ?Sized>(
    spec: &MatrixPathwaySpec,
    rng: &mut R,
    n: usize,
) -> Result<Vec<f64>> {
    if spec.alpha >= 1.0 - ALPHA_EPS {
        return Err(Error::domain(
            "the product-of-betas structure needs alpha < 1",
        ));
    }
    let b = spec.beta_b();
    let mut dists = Vec::with_capacity(spec.p);
    for j in 1..=spec.p {
        let aj = spec.beta_a(j);
        dists.push(
            BetaDist::new(aj, b)
                .map_err(|e| Error::domain(format!("invalid beta parameters ({aj}, {b}): {e}")))?,
        );
    }
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut u = 1.0;
        for d in &dists {
            u *= d.sample(rng);
        }
        out.push(u);
    }
    Ok(out)
}

/// Density of `u1` on `(0,1)` via its Meijer G representation
/// `[prod_j Gamma(a_j + b)/Gamma(a_j)] G^{p,0}_{p,p}[u | a_j + b - 1; a_j - 1]`
/// with `a_j = gamma + q/2 - (j-1)/2` and `b = eta/(1-alpha) + (p+1)/2`.
pub fn u1_density(spec: &MatrixPathwaySpec, u: f64) -> Result<f64> {
    if spec.alpha >= 1.0 - ALPHA_EPS {
        return Err(Error::domain(
            "the product-of-betas density needs alpha < 1",
        ));
    }
    if !(u > 0.0) || u >= 1.0 {
        return Ok(0.0);
    }
    let b = spec.beta_b();
    let mut upper = Vec::with_capacity(spec.p);
    let mut lower = Vec::with_capacity(spec.p);
    let mut log_pref = 0.0;
    for j in 1..=spec.p {
        let aj = spec.beta_a(j);
        upper.push(aj + b - 1.0);
        lower.push(aj - 1.0);
        log_pref += log_gamma(aj + b)? - log_gamma(aj)?;
    }
    g_function_spec(spec.p, 0, &upper, &lower)?.eval_log_scaled(u, log_pref)
}
