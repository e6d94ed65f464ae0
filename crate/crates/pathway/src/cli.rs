//! Command-line front end.
//!
//! Every subcommand is a thin delegation into the library modules; the
//! only logic here is argument plumbing, grid generation and CSV
//! formatting (17 significant digits, `.` decimal separator).  Output is
//! byte-identical for identical argv + seed.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pathway::PathwayParams;
use crate::{fracint, multivar, pathway, reactions, superstat, transforms};

#[derive(Parser, Debug)]
#[command(name = "pathway", about = "Pathway distribution family toolkit", version)]
struct Cli {
    /// Write the CSV output to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Density values on a grid
    Pdf(DensityArgs),
    /// Distribution function values on a grid
    Cdf(DensityArgs),
    /// Draw pseudo-random samples
    Sample(SampleArgs),
    /// Estimate alpha from samples by moment matching
    Fit(FitArgs),
    /// Entropy of a pathway density
    Entropy(EntropyArgs),
    /// Laplace transform of a pathway density on a grid
    Laplace(LaplaceArgs),
    /// Kraetzel kernel / P-transform values on a grid
    Ptransform(PtransformArgs),
    /// Reaction-rate probability integrals
    React(ReactArgs),
    /// Superstatistics marginal density and Bayes estimates
    Superstat(SuperstatArgs),
    /// Matrix-variate pathway normalizer, volume moments, u1 density
    Matrix(MatrixArgs),
    /// Fractional integral operators
    Fracint(FracintArgs),
    /// Identify the classical special case of a parameter set
    Reduce(DensityParams),
    /// Emit plot-data bundles for the standard figure panels
    Figures(FiguresArgs),
}

#[derive(Args, Debug, Clone)]
struct DensityParams {
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Use the symmetric (two-sided) variant
    #[arg(long)]
    symmetric: bool,
}

impl DensityParams {
    fn build(&self) -> Result<PathwayParams> {
        if self.symmetric {
            PathwayParams::new_symmetric(self.alpha, self.a, self.delta, self.gamma, self.eta)
        } else {
            PathwayParams::new(self.alpha, self.a, self.delta, self.gamma, self.eta)
        }
    }
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[command(flatten)]
    params: DensityParams,
    /// Evaluation grid lo:hi:step
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    params: DensityParams,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct FitArgs {
    /// CSV file with one sample per line (an optional header line is skipped)
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
}

#[derive(Args, Debug)]
struct EntropyArgs {
    #[command(flatten)]
    params: DensityParams,
    /// Entropy index (must be below 2)
    #[arg(long = "alpha-e", allow_hyphen_values = true)]
    alpha_e: f64,
}

#[derive(Args, Debug)]
struct LaplaceArgs {
    #[command(flatten)]
    params: DensityParams,
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// quad (direct quadrature) or hfun (Mellin-Barnes evaluation)
    #[arg(long, default_value = "quad")]
    method: String,
}

#[derive(Args, Debug)]
struct PtransformArgs {
    #[arg(long)]
    nu: f64,
    #[arg(long)]
    rho: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// Transform a registry function instead of emitting the bare kernel:
    /// constant, power, or exponential
    #[arg(long)]
    f: Option<String>,
}

#[derive(Args, Debug)]
struct ReactArgs {
    /// i1, i2, i1alpha, i1alpha-hfun, i2alpha, or ig (inverse Gaussian moment)
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    /// Upper cutoff for the i2 families
    #[arg(long)]
    d: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Inverse Gaussian mean (family ig)
    #[arg(long)]
    mu: Option<f64>,
    /// Inverse Gaussian shape (family ig)
    #[arg(long)]
    lam: Option<f64>,
    /// Moment order (family ig)
    #[arg(long, allow_hyphen_values = true)]
    h: Option<f64>,
}

#[derive(Args, Debug)]
struct SuperstatArgs {
    #[arg(long, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    lam: f64,
    /// Extended model pathway parameter (alpha > 1); omit for the plain model
    #[arg(long)]
    alpha: Option<f64>,
    /// marginal (density) or bayes (posterior-mean estimate)
    #[arg(long, default_value = "marginal")]
    what: String,
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    #[arg(long, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// norm, moment, u1pdf, or sample
    #[arg(long, default_value = "norm")]
    op: String,
    /// Moment order for op = moment
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    h: f64,
    /// Grid for op = u1pdf
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// p x p parameter matrix as CSV (dimension header row, then rows);
    /// identity when omitted
    #[arg(long = "a-mat")]
    a_mat: Option<PathBuf>,
    /// q x q parameter matrix as CSV; identity when omitted
    #[arg(long = "b-mat")]
    b_mat: Option<PathBuf>,
    /// p x q location matrix as CSV; zero when omitted
    #[arg(long = "m-mat")]
    m_mat: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FracintArgs {
    /// pathway, rl, saigo, or kinetic
    #[arg(long)]
    op: String,
    /// Integrand: constant, power, exponential, or a CSV file of (t, f(t))
    /// rows interpolated linearly
    #[arg(long, default_value = "constant")]
    f: String,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Saigo second parameter
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Saigo third parameter
    #[arg(long = "gamma-s", allow_hyphen_values = true)]
    gamma_s: Option<f64>,
    /// Time argument for op = kinetic
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    n0: f64,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
}

#[derive(Args, Debug)]
struct FiguresArgs {
    /// Panel: 1a, 1b, 2a, 2b, 3a, 3b, 4a, or 4b
    #[arg(long)]
    which: String,
}

/// Entry point: `args` is the full argv including the program name.
/// Returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    let argv = match expand_job(args) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            // help/version requests exit 0; real parse failures exit 2
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli.cmd) {
        Ok(csv) => match write_output(&csv, cli.out.as_deref()) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("{e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

/// Replace `--job file.json` invocations by the argv the JSON mirrors:
/// `{"cmd": "pdf", "args": {"alpha": 0.8, "grid": "0:1:0.1"}}`.
fn expand_job(args: &[String]) -> Result<Vec<String>> {
    let Some(pos) = args.iter().position(|a| a == "--job") else {
        return Ok(args.to_vec());
    };
    let path = args
        .get(pos + 1)
        .ok_or_else(|| Error::usage("--job requires a file path"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::usage(format!("cannot read job file {path}: {e}")))?;
    let job: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::usage(format!("job file is not valid JSON: {e}")))?;
    let cmd = job
        .get("cmd")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::usage("job file needs a string field \"cmd\""))?;
    let mut argv: Vec<String> = vec![args[0].clone(), cmd.to_string()];
    if let Some(map) = job.get("args").and_then(|v| v.as_object()) {
        for (k, v) in map {
            match v {
                serde_json::Value::Bool(true) => argv.push(format!("--{k}")),
                serde_json::Value::Bool(false) => {}
                serde_json::Value::String(s) => {
                    argv.push(format!("--{k}"));
                    argv.push(s.clone());
                }
                other => {
                    argv.push(format!("--{k}"));
                    argv.push(other.to_string());
                }
            }
        }
    }
    // everything around --job <path> (e.g. --out) is kept verbatim
    argv.extend(
        args.iter()
            .enumerate()
            .filter(|(i, _)| *i != 0 && *i != pos && *i != pos + 1)
            .map(|(_, a)| a.clone()),
    );
    Ok(argv)
}

fn write_output(csv: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| Error::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

/// 17 significant digits, `.` decimal separator.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::usage(format!("grid must be lo:hi:step, got {s}")));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| Error::usage(format!("bad grid number {p}")))
        })
        .collect::<Result<_>>()?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || hi < lo {
        return Err(Error::usage(format!("grid needs hi >= lo and step > 0, got {s}")));
    }
    let n = ((hi - lo) / step + 0.5 * step.min(1.0) / step).floor() as usize;
    Ok((0..=n).map(|i| lo + step * i as f64).collect())
}

fn dispatch(cmd: &Cmd) -> Result<String> {
    match cmd {
        Cmd::Pdf(args) => {
            let p = args.params.build()?;
            let grid = parse_grid(&args.grid)?;
            let mut out = String::from("x,pdf\n");
            for x in grid {
                out.push_str(&format!("{},{}\n", fmt(x), fmt(pathway::pdf(&p, x)?)));
            }
            Ok(out)
        }
        Cmd::Cdf(args) => {
            let p = args.params.build()?;
            let grid = parse_grid(&args.grid)?;
            let mut out = String::from("x,cdf\n");
            for x in grid {
                out.push_str(&format!("{},{}\n", fmt(x), fmt(pathway::cdf(&p, x)?)));
            }
            Ok(out)
        }
        Cmd::Sample(args) => {
            let p = args.params.build()?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let draws = pathway::sample(&p, &mut rng, args.n)?;
            let mut out = String::from("sample\n");
            for v in draws {
                out.push_str(&fmt(v));
                out.push('\n');
            }
            Ok(out)
        }
        Cmd::Fit(args) => {
            let samples = read_numeric_column(&args.input)?;
            let p =
                pathway::fit_alpha_moments(&samples, args.a, args.delta, args.gamma, args.eta)?;
            Ok(format!("alpha\n{}\n", fmt(p.alpha)))
        }
        Cmd::Entropy(args) => {
            let p = args.params.build()?;
            let v = pathway::mathai_entropy(&p, args.alpha_e)?;
            Ok(format!("entropy\n{}\n", fmt(v)))
        }
        Cmd::Laplace(args) => {
            let p = args.params.build()?;
            let grid = parse_grid(&args.grid)?;
            let eval: fn(&PathwayParams, f64) -> Result<f64> = match args.method.as_str() {
                "quad" => transforms::laplace_pathway_quad,
                "hfun" => transforms::laplace_pathway_hfun,
                other => return Err(Error::usage(format!("unknown method {other}"))),
            };
            let mut out = String::from("t,laplace\n");
            for t in grid {
                out.push_str(&format!("{},{}\n", fmt(t), fmt(eval(&p, t)?)));
            }
            Ok(out)
        }
        Cmd::Ptransform(args) => {
            let spec =
                transforms::KratzelSpec::new(args.nu, args.rho, args.beta, args.alpha, args.a)?;
            let grid = parse_grid(&args.grid)?;
            let mut out = String::from("x,value\n");
            match &args.f {
                None => {
                    for x in grid {
                        out.push_str(&format!(
                            "{},{}\n",
                            fmt(x),
                            fmt(transforms::kratzel_kernel(&spec, x)?)
                        ));
                    }
                }
                Some(name) => {
                    let f = registry_function(name)?;
                    for x in grid {
                        out.push_str(&format!(
                            "{},{}\n",
                            fmt(x),
                            fmt(transforms::p_transform(&f, &spec, x)?)
                        ));
                    }
                }
            }
            Ok(out)
        }
        Cmd::React(args) => react_cmd(args),
        Cmd::Superstat(args) => superstat_cmd(args),
        Cmd::Matrix(args) => matrix_cmd(args),
        Cmd::Fracint(args) => fracint_cmd(args),
        Cmd::Reduce(params) => {
            let p = params.build()?;
            let name = pathway::reduce_special_case(&p)
                .map(|t| t.name().to_string())
                .unwrap_or_else(|| "none".to_string());
            Ok(format!("case\n{name}\n"))
        }
        Cmd::Figures(args) => figures_cmd(&args.which),
    }
}

fn react_cmd(args: &ReactArgs) -> Result<String> {
    if args.family == "ig" {
        let mu = args
            .mu
            .ok_or_else(|| Error::usage("family ig needs --mu"))?;
        let lam = args
            .lam
            .ok_or_else(|| Error::usage("family ig needs --lam"))?;
        let h = args.h.ok_or_else(|| Error::usage("family ig needs --h"))?;
        let v = reactions::inverse_gaussian_moment(mu, lam, h)?;
        return Ok(format!("value\n{}\n", fmt(v)));
    }
    let mut spec =
        reactions::ReactionIntegralSpec::new(args.gamma, args.a, args.b, args.delta, args.rho)?;
    if let Some(d) = args.d {
        spec = spec.with_cutoff(d)?;
    }
    if let Some(alpha) = args.alpha {
        spec = spec.with_alpha(alpha)?;
    }
    let v = match args.family.as_str() {
        "i1" => reactions::i1(&spec)?,
        "i2" => reactions::i2(&spec)?,
        "i1alpha" => reactions::i1_alpha(&spec)?,
        "i1alpha-hfun" => reactions::i1_alpha_hfun(&spec)?,
        "i2alpha" => reactions::i2_alpha(&spec)?,
        other => return Err(Error::usage(format!("unknown reaction family {other}"))),
    };
    Ok(format!("value\n{}\n", fmt(v)))
}

fn superstat_cmd(args: &SuperstatArgs) -> Result<String> {
    let mut model = superstat::SuperstatModel::new(args.gamma, args.delta, args.lam)?;
    if let Some(alpha) = args.alpha {
        model = model.with_alpha(alpha)?;
    }
    let extended = args.alpha.is_some();
    let grid = parse_grid(&args.grid)?;
    match args.what.as_str() {
        "marginal" => {
            let mut out = String::from("x,pdf\n");
            for x in grid {
                let v = if x <= 0.0 {
                    0.0
                } else if extended {
                    superstat::ext_marginal_pdf(&model, x)?
                } else {
                    superstat::marginal_pdf(&model, x)?
                };
                out.push_str(&format!("{},{}\n", fmt(x), fmt(v)));
            }
            Ok(out)
        }
        "bayes" => {
            let mut out = String::from("x,estimate\n");
            for x in grid {
                if x <= 0.0 {
                    continue;
                }
                let v = if extended {
                    superstat::ext_bayes_estimate(&model, x)?
                } else {
                    superstat::bayes_estimate(&model, x)?
                };
                out.push_str(&format!("{},{}\n", fmt(x), fmt(v)));
            }
            Ok(out)
        }
        other => Err(Error::usage(format!("unknown superstat output {other}"))),
    }
}

fn matrix_cmd(args: &MatrixArgs) -> Result<String> {
    let (p, q) = (args.p, args.q);
    let a_mat = load_matrix_or_identity(args.a_mat.as_deref(), p, p)?;
    let b_mat = load_matrix_or_identity(args.b_mat.as_deref(), q, q)?;
    let m_mat = match &args.m_mat {
        Some(path) => load_matrix(path, p, q)?,
        None => vec![0.0; p * q],
    };
    let spec = multivar::MatrixPathwaySpec::new(
        p, q, args.gamma, args.eta, args.a, args.alpha, a_mat, b_mat, m_mat,
    )?;
    match args.op.as_str() {
        "norm" => Ok(format!(
            "log_norm_const\n{}\n",
            fmt(multivar::matrix_log_norm_const(&spec)?)
        )),
        "moment" => Ok(format!(
            "moment\n{}\n",
            fmt(multivar::volume_moment(&spec, args.h)?)
        )),
        "u1pdf" => {
            let grid = parse_grid(
                args.grid
                    .as_deref()
                    .ok_or_else(|| Error::usage("op u1pdf needs --grid"))?,
            )?;
            let mut out = String::from("u,pdf\n");
            for u in grid {
                out.push_str(&format!(
                    "{},{}\n",
                    fmt(u),
                    fmt(multivar::u1_density(&spec, u)?)
                ));
            }
            Ok(out)
        }
        "sample" => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let draws = multivar::sample_u1(&spec, &mut rng, args.n)?;
            let mut out = String::from("u1\n");
            for v in draws {
                out.push_str(&fmt(v));
                out.push('\n');
            }
            Ok(out)
        }
        other => Err(Error::usage(format!("unknown matrix op {other}"))),
    }
}

fn fracint_cmd(args: &FracintArgs) -> Result<String> {
    if args.op == "kinetic" {
        let t = args
            .t
            .ok_or_else(|| Error::usage("op kinetic needs --t"))?;
        let mu = args
            .mu
            .ok_or_else(|| Error::usage("op kinetic needs --mu"))?;
        let nu = args
            .nu
            .ok_or_else(|| Error::usage("op kinetic needs --nu"))?;
        let b = args.b.ok_or_else(|| Error::usage("op kinetic needs --b"))?;
        let v = fracint::fractional_kinetic_density(t, args.n0, mu, nu, b, args.alpha)?;
        return Ok(format!("value\n{}\n", fmt(v)));
    }
    let x = args.x.ok_or_else(|| Error::usage("fracint needs --x"))?;
    let eta = args
        .eta
        .ok_or_else(|| Error::usage("fracint needs --eta"))?;
    let f = registry_function(&args.f)?;
    let v = match args.op.as_str() {
        "pathway" => fracint::pathway_frac_integral(&f, x, eta, args.alpha, args.a)?,
        "rl" => fracint::rl_integral(&f, x, eta)?,
        "saigo" => {
            let beta = args
                .beta
                .ok_or_else(|| Error::usage("op saigo needs --beta"))?;
            let gamma_s = args
                .gamma_s
                .ok_or_else(|| Error::usage("op saigo needs --gamma-s"))?;
            fracint::saigo_integral(&f, x, eta, beta, gamma_s)?
        }
        other => return Err(Error::usage(format!("unknown fracint op {other}"))),
    };
    Ok(format!("value\n{}\n", fmt(v)))
}

/// Named integrands accepted by `fracint --f` and `ptransform --f`, plus
/// sampled functions from a CSV of (t, value) rows with linear
/// interpolation (clamped to the end values outside the sampled range).
fn registry_function(name: &str) -> Result<Box<dyn Fn(f64) -> f64>> {
    match name {
        "constant" => Ok(Box::new(|_| 1.0)),
        "power" => Ok(Box::new(|t| t)),
        "exponential" => Ok(Box::new(|t: f64| (-t).exp())),
        path if path.contains('.') || path.contains('/') => {
            let rows = read_numeric_rows(std::path::Path::new(path), 2)?;
            let mut pts: Vec<(f64, f64)> = rows.into_iter().map(|r| (r[0], r[1])).collect();
            pts.sort_by(|u, v| u.0.total_cmp(&v.0));
            if pts.len() < 2 {
                return Err(Error::usage(format!(
                    "sampled function {path} needs at least 2 rows"
                )));
            }
            Ok(Box::new(move |t: f64| {
                if t <= pts[0].0 {
                    return pts[0].1;
                }
                if t >= pts[pts.len() - 1].0 {
                    return pts[pts.len() - 1].1;
                }
                let i = pts.partition_point(|p| p.0 <= t);
                let (t0, v0) = pts[i - 1];
                let (t1, v1) = pts[i];
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }))
        }
        other => Err(Error::usage(format!(
            "unknown function {other}: expected constant, power, exponential, or a CSV path"
        ))),
    }
}

fn read_numeric_column(path: &std::path::Path) -> Result<Vec<f64>> {
    Ok(read_numeric_rows(path, 1)?.into_iter().map(|r| r[0]).collect())
}

fn read_numeric_rows(path: &std::path::Path, cols: usize) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|c| c.trim().parse::<f64>()).collect();
        match parsed {
            Ok(vals) if vals.len() == cols => rows.push(vals),
            // a single non-numeric header line is tolerated
            _ if i == 0 => {}
            _ => {
                return Err(Error::usage(format!(
                    "bad line {} in {}: {line}",
                    i + 1,
                    path.display()
                )))
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::usage(format!("no numeric rows in {}", path.display())));
    }
    Ok(rows)
}

/// Matrix CSV format: a dimension header row `rows,cols`, then the
/// entries row by row.
fn load_matrix(path: &std::path::Path, rows: usize, cols: usize) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::usage(format!("{} is empty", path.display())))?;
    let dims: Vec<usize> = header
        .split(',')
        .map(|c| c.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::usage(format!("bad dimension header in {}", path.display())))?;
    if dims != vec![rows, cols] {
        return Err(Error::usage(format!(
            "{} declares {dims:?}, expected [{rows}, {cols}]",
            path.display()
        )));
    }
    let mut out = Vec::with_capacity(rows * cols);
    for line in lines {
        for c in line.split(',') {
            out.push(c.trim().parse::<f64>().map_err(|_| {
                Error::usage(format!("bad matrix entry {c} in {}", path.display()))
            })?);
        }
    }
    if out.len() != rows * cols {
        return Err(Error::usage(format!(
            "{} has {} entries, expected {}",
            path.display(),
            out.len(),
            rows * cols
        )));
    }
    Ok(out)
}

fn load_matrix_or_identity(
    path: Option<&std::path::Path>,
    rows: usize,
    cols: usize,
) -> Result<Vec<f64>> {
    match path {
        Some(p) => load_matrix(p, rows, cols),
        None => {
            let mut m = vec![0.0; rows * cols];
            for i in 0..rows.min(cols) {
                m[i * cols + i] = 1.0;
            }
            Ok(m)
        }
    }
}

fn figures_cmd(which: &str) -> Result<String> {
    let mut out = String::from("alpha,x,value\n");
    let emit = |alpha: f64, x: f64, v: f64, out: &mut String| {
        out.push_str(&format!("{},{},{}\n", fmt(alpha), fmt(x), fmt(v)));
    };
    match which {
        // one-sided pathway density, gamma = eta = a = 1, delta = 2
        "1a" => {
            for &alpha in &[-0.5, 0.0, 0.5, 0.8] {
                let p = PathwayParams::new(alpha, 1.0, 2.0, 1.0, 1.0)?;
                for x in parse_grid("0:1.2:0.01")? {
                    emit(alpha, x, pathway::pdf(&p, x)?, &mut out);
                }
            }
        }
        "1b" => {
            for &alpha in &[1.2, 1.5, 2.0, 2.8] {
                let p = PathwayParams::new(alpha, 1.0, 2.0, 1.0, 1.0)?;
                for x in parse_grid("0:3:0.02")? {
                    emit(alpha, x, pathway::pdf(&p, x)?, &mut out);
                }
            }
        }
        // Bessel pathway model, gamma = 2, rho = 1.2, a = 1
        "2a" | "2b" => {
            let delta_b = if which == "2a" { 0.5 } else { -0.5 };
            for &alpha in &[0.2, 0.5, 0.8] {
                for x in parse_grid("0:4:0.02")? {
                    let v = if x <= 0.0 {
                        0.0
                    } else {
                        superstat::bessel_pathway_pdf(2.0, 1.2, 1.0, delta_b, alpha, x)?
                    };
                    emit(alpha, x, v, &mut out);
                }
            }
        }
        "3a" => {
            return Err(Error::domain(
                "the Bessel pathway model with positive Bessel parameter does not \
                 normalize for alpha > 1: the confluent factor grows exponentially \
                 while the bracket decays only polynomially",
            ));
        }
        "3b" => {
            for &alpha in &[1.05, 1.15, 1.25] {
                for x in parse_grid("0:6:0.02")? {
                    let v = if x <= 0.0 {
                        0.0
                    } else {
                        superstat::bessel_pathway_pdf(2.0, 1.2, 1.0, -0.5, alpha, x)?
                    };
                    emit(alpha, x, v, &mut out);
                }
            }
        }
        // Kraetzel kernel, nu = 2, beta = 1, a = 1, rho = 3 (4a) or 5 (4b)
        "4a" | "4b" => {
            let rho = if which == "4a" { 3.0 } else { 5.0 };
            for &alpha in &[1.0, 1.25, 1.5, 1.8] {
                let spec = transforms::KratzelSpec::new(2.0, rho, 1.0, alpha, 1.0)?;
                for x in parse_grid("0.05:3:0.05")? {
                    emit(alpha, x, transforms::kratzel_kernel(&spec, x)?, &mut out);
                }
            }
        }
        other => return Err(Error::usage(format!("unknown figure panel {other}"))),
    }
    Ok(out)
}
