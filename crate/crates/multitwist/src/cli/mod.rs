//! Command-line front end: `invariants`, `spectrum`, `eval`, `residue`,
//! `verify` and `expand`.
//!
//! Results go to standard output as JSON or CSV; failures print
//! `{"error": {"kind": .., "message": ..}}` and exit with 1 (bad input) or
//! 2 (a numerical limit did not converge).

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

pub use config::{AlphaValue, CoefficientBlock, FactorBlock, FunctionBlock, RunConfig};

use crate::error::{Error, Result};
use crate::lfunc::structural_invariants;
use crate::spectrum::{AlphaSpec, TwistFamily};
use crate::sympoly::{pm_poly, qj_poly, sumxt_forms, vk_poly, w_ell_poly, Coeff, MultiPoly};
use crate::twist::{
    analytic_residue, continue_twist_report, numeric_residue, smoothed_twist_mb, smoothed_twist_series,
    verify_residues, EvalParams, Mode,
};

#[derive(Debug, Parser)]
#[command(name = "multitwist", version, about = "Multiple standard twists of L-functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Analytic continuation through the X ladder.
    Continue,
    /// Smoothed twist F_X by its series.
    Series,
    /// Smoothed twist F_X by the Mellin-Barnes integral.
    Mb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExpandKind {
    /// Linear forms R_m of the Pochhammer rewriting.
    R,
    Q,
    V,
    P,
    W,
}

#[derive(Debug, clap::Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    out: OutFormat,
}

#[derive(Debug, clap::Args)]
struct AlphaArgs {
    /// Twist parameter (overrides the config).
    #[arg(long, conflicts_with = "witness")]
    alpha: Option<f64>,
    /// Twist parameter as a witness vector, e.g. `1,4`.
    #[arg(long, value_delimiter = ',')]
    witness: Option<Vec<u64>>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants of every member function.
    Invariants {
        #[command(flatten)]
        common: Common,
        /// Also list structural invariants d_F(0..=ell).
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Spectrum points up to alpha_max.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        alpha_max: f64,
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// The twist at points `s`, given as `re,im;re,im;..` (one pair per member).
    Eval {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long = "s", required = true, allow_hyphen_values = true)]
        points: Vec<String>,
        /// Evaluate on `steps` equally spaced points from the first to the second `--s`.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value = "continue")]
        method: Method,
        /// Smoothing parameter for `series` and `mb`.
        #[arg(long)]
        x: Option<f64>,
    },
    /// Numeric and closed-form residue at a point of H*_ell.
    Residue {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long = "s", allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Numeric against closed-form residues at random points of H*_ell.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print one of the symbolic polynomials.
    Expand {
        #[arg(long, value_enum)]
        kind: ExpandKind,
        #[arg(long)]
        index: usize,
        /// Weights lambda_nu as rationals (Q, V, P).
        #[arg(long, value_delimiter = ',', default_value = "1/2,1/2")]
        lambdas: Vec<String>,
        /// Constant A of the rewriting (R).
        #[arg(long, default_value = "1")]
        a: String,
        /// Constant b of the rewriting (R).
        #[arg(long, default_value = "0")]
        b: String,
        /// Family for W (required for `--kind w`).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        out: OutFormat,
    },
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            let _ = writeln!(out, "{}", error_json("usage", &e.to_string()));
            return 1;
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let _ = writeln!(out, "{}", error_json(e.kind(), &e.to_string()));
            if e.is_convergence() {
                2
            } else {
                1
            }
        }
    }
}

fn error_json(kind: &str, message: &str) -> String {
    json!({"error": {"kind": kind, "message": message.trim()}}).to_string()
}

fn dispatch(cmd: Command) -> Result<String> {
    match cmd {
        Command::Invariants { common, ell } => invariants(&common, ell),
        Command::Spectrum {
            common,
            alpha_max,
            n_max,
        } => spectrum(&common, alpha_max, n_max),
        Command::Eval {
            common,
            alpha,
            points,
            steps,
            method,
            x,
        } => eval(&common, &alpha, &points, steps, method, x),
        Command::Residue {
            common,
            alpha,
            point,
            ell,
            seed,
        } => residue(&common, &alpha, &point, ell, seed),
        Command::Verify {
            common,
            alpha,
            ell,
            samples,
            seed,
        } => verify(&common, &alpha, ell, samples, seed),
        Command::Expand {
            kind,
            index,
            lambdas,
            a,
            b,
            config,
            out,
        } => expand(kind, index, &lambdas, &a, &b, config.as_deref(), out),
    }
}

fn load(common: &Common) -> Result<(RunConfig, TwistFamily)> {
    let cfg = RunConfig::load(&common.config)?;
    let family = cfg.family()?;
    Ok((cfg, family))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidInput(format!("csv output: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn invariants(common: &Common, ell: Option<usize>) -> Result<String> {
    let (_, family) = load(common)?;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for (m, inv) in family.members().iter().zip(family.invariants()) {
        let mut item = json!({
            "label": m.label,
            "d": inv.d,
            "q": inv.q,
            "omega": pair(inv.omega_f),
            "tau": inv.tau,
            "xi": pair(inv.xi),
            "eta": inv.eta,
            "theta": inv.theta,
        });
        if let Some(l) = ell {
            let d = structural_invariants(m, l)?;
            item["structural"] = Value::Array(d.into_iter().map(pair).collect());
        }
        rows.push(vec![
            m.label.clone(),
            inv.d.to_string(),
            inv.q.to_string(),
            inv.omega_f.re.to_string(),
            inv.omega_f.im.to_string(),
            inv.tau.to_string(),
            inv.xi.re.to_string(),
            inv.xi.im.to_string(),
            inv.eta.to_string(),
            inv.theta.to_string(),
        ]);
        items.push(item);
    }
    match common.out {
        OutFormat::Json => {
            if items.len() == 1 {
                Ok(pretty(&items[0]))
            } else {
                Ok(pretty(&json!({ "functions": items })))
            }
        }
        OutFormat::Csv => csv_text(
            &["label", "d", "q", "omega_re", "omega_im", "tau", "xi_re", "xi_im", "eta", "theta"]
                .map(String::from),
            &rows,
        ),
    }
}

fn witness_text(w: &[u64]) -> String {
    let inner: Vec<String> = w.iter().map(|k| k.to_string()).collect();
    format!("({})", inner.join(","))
}

fn spectrum(common: &Common, alpha_max: f64, n_max: Option<u64>) -> Result<String> {
    let (_, family) = load(common)?;
    let n_max = n_max.unwrap_or_else(|| family.required_n_max(alpha_max));
    let hits = family.enumerate_spectrum(alpha_max, n_max)?;
    match common.out {
        OutFormat::Json => {
            let points: Vec<Value> = hits
                .iter()
                .map(|h| {
                    json!({
                        "alpha": h.alpha,
                        "exact_key": format!("{:?}", h.exact_key),
                        "witness_count": h.witnesses.len(),
                        "witnesses": h.witnesses,
                    })
                })
                .collect();
            Ok(pretty(&json!({"alpha_max": alpha_max, "n_max": n_max, "points": points})))
        }
        OutFormat::Csv => {
            let rows: Vec<Vec<String>> = hits
                .iter()
                .map(|h| {
                    let w: Vec<String> = h.witnesses.iter().map(|w| witness_text(w)).collect();
                    vec![h.alpha.to_string(), h.witnesses.len().to_string(), w.join(";")]
                })
                .collect();
            csv_text(&["alpha", "witness_count", "witnesses"].map(String::from), &rows)
        }
    }
}

/// `re,im;re,im;..` or plain reals `re;re`.
fn parse_point(text: &str, n: usize) -> Result<Vec<Complex64>> {
    let bad = || Error::InvalidInput(format!("point {text:?}: expected {n} coordinates `re,im` separated by `;`"));
    let coords: Vec<Complex64> = text
        .split(';')
        .map(|c| {
            let parts: Vec<&str> = c.split(',').map(str::trim).collect();
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
            match parts.as_slice() {
                [re] => Ok(Complex64::new(num(re)?, 0.0)),
                [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
                _ => Err(bad()),
            }
        })
        .collect::<Result<_>>()?;
    if coords.len() != n {
        return Err(bad());
    }
    Ok(coords)
}

fn resolve_alpha(cfg: &RunConfig, family: &TwistFamily, args: &AlphaArgs) -> Result<f64> {
    let spec = if let Some(a) = args.alpha {
        AlphaSpec::Value(a)
    } else if let Some(w) = &args.witness {
        AlphaSpec::Witness(w.clone())
    } else if let Some(a) = &cfg.alpha {
        a.into()
    } else {
        return Err(Error::InvalidInput("alpha missing: give --alpha, --witness or \"alpha\" in the config".into()));
    };
    match spec {
        AlphaSpec::Value(a) => Ok(a),
        AlphaSpec::Witness(w) => {
            let hit = family.membership(&AlphaSpec::Witness(w.clone()), cfg.params.alpha_tol)?;
            match hit {
                Some(h) => Ok(h.alpha),
                None => Err(Error::InvalidInput(format!(
                    "witness {} has a vanishing coefficient product",
                    witness_text(&w)
                ))),
            }
        }
    }
}

fn params_with_seed(cfg: &RunConfig, seed: Option<u64>) -> EvalParams {
    let mut p = cfg.params.clone();
    if let Some(s) = seed.or(cfg.seed) {
        p.seed = s;
    }
    p
}

fn eval(
    common: &Common,
    alpha_args: &AlphaArgs,
    points: &[String],
    steps: Option<usize>,
    method: Method,
    x: Option<f64>,
) -> Result<String> {
    let (cfg, family) = load(common)?;
    let alpha = resolve_alpha(&cfg, &family, alpha_args)?;
    let mut params = params_with_seed(&cfg, None);
    if let Some(x) = x {
        params.x = x;
    }
    let mut pts: Vec<Vec<Complex64>> = points.iter().map(|p| parse_point(p, family.len())).collect::<Result<_>>()?;
    if let Some(n) = steps {
        if pts.len() != 2 || n < 2 {
            return Err(Error::InvalidInput("--steps needs exactly two --s endpoints and at least 2 steps".into()));
        }
        let (a, b) = (pts[0].clone(), pts[1].clone());
        pts = (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                a.iter().zip(&b).map(|(x, y)| x + (y - x) * t).collect()
            })
            .collect();
    }
    let mut results = Vec::with_capacity(pts.len());
    for p in &pts {
        let (value, diff) = match method {
            Method::Continue => {
                let r = continue_twist_report(&family, p, alpha, &params, Mode::Analytic)?;
                (r.value, Some(r.fit.spread))
            }
            Method::Series => (smoothed_twist_series(&family, p, alpha, &params)?, None),
            Method::Mb => (smoothed_twist_mb(&family, p, alpha, &params)?, None),
        };
        results.push((p.clone(), value, diff));
    }
    match common.out {
        OutFormat::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|(p, v, d)| {
                    json!({
                        "s": p.iter().map(|z| pair(*z)).collect::<Vec<_>>(),
                        "value": pair(*v),
                        "ladder_diff": d,
                    })
                })
                .collect();
            Ok(pretty(&json!({"alpha": alpha, "method": format!("{method:?}").to_lowercase(), "points": rows})))
        }
        OutFormat::Csv => {
            let mut header = Vec::new();
            for nu in 1..=family.len() {
                header.push(format!("s{nu}_re"));
                header.push(format!("s{nu}_im"));
            }
            header.extend(["value_re", "value_im", "ladder_diff"].map(String::from));
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|(p, v, d)| {
                    let mut r: Vec<String> = p.iter().flat_map(|z| [z.re.to_string(), z.im.to_string()]).collect();
                    r.push(v.re.to_string());
                    r.push(v.im.to_string());
                    r.push(d.map_or_else(String::new, |d| d.to_string()));
                    r
                })
                .collect();
            csv_text(&header, &rows)
        }
    }
}

fn residue(common: &Common, alpha_args: &AlphaArgs, point: &str, ell: usize, seed: Option<u64>) -> Result<String> {
    let (cfg, family) = load(common)?;
    let alpha = resolve_alpha(&cfg, &family, alpha_args)?;
    let params = params_with_seed(&cfg, seed);
    let s = parse_point(point, family.len())?;
    let s = family.hyperplane(ell).project(&s)?;
    let num = numeric_residue(&family, &s, alpha, ell, &params)?;
    let analytic = analytic_residue(&family, &s, alpha, ell)?;
    let rel = (num.value - analytic).norm() / analytic.norm().max(1e-300);
    match common.out {
        OutFormat::Json => Ok(pretty(&json!({
            "ell": ell,
            "alpha": alpha,
            "seed": params.seed,
            "s": s.iter().map(|z| pair(*z)).collect::<Vec<_>>(),
            "numeric": pair(num.value),
            "analytic": pair(analytic),
            "rel_error": rel,
            "direction": num.direction.iter().map(|z| pair(*z)).collect::<Vec<_>>(),
            "epsilons": num.epsilons,
            "approach": num.approach.iter().map(|z| pair(*z)).collect::<Vec<_>>(),
            "attempts": num.attempts,
        }))),
        OutFormat::Csv => {
            let (header, row) = report_row(family.len(), ell, &s, num.value, analytic, rel, params.seed);
            csv_text(&header, &[row])
        }
    }
}

fn report_row(
    n: usize,
    ell: usize,
    s: &[Complex64],
    numeric: Complex64,
    analytic: Complex64,
    rel: f64,
    seed: u64,
) -> (Vec<String>, Vec<String>) {
    let mut header = vec!["ell".to_string()];
    for nu in 1..=n {
        header.push(format!("s{nu}_re"));
        header.push(format!("s{nu}_im"));
    }
    header.extend(
        ["numeric_re", "numeric_im", "analytic_re", "analytic_im", "rel_error", "seed"].map(String::from),
    );
    let mut row = vec![ell.to_string()];
    row.extend(s.iter().flat_map(|z| [z.re.to_string(), z.im.to_string()]));
    row.extend([
        numeric.re.to_string(),
        numeric.im.to_string(),
        analytic.re.to_string(),
        analytic.im.to_string(),
        rel.to_string(),
        seed.to_string(),
    ]);
    (header, row)
}

fn verify(common: &Common, alpha_args: &AlphaArgs, ell: usize, samples: usize, seed: Option<u64>) -> Result<String> {
    let (cfg, family) = load(common)?;
    let alpha = resolve_alpha(&cfg, &family, alpha_args)?;
    let params = params_with_seed(&cfg, seed);
    let reports = verify_residues(&family, alpha, ell, samples, &params)?;
    match common.out {
        OutFormat::Json => {
            let rows = serde_json::to_value(&reports).expect("reports serialise");
            Ok(pretty(&json!({"alpha": alpha, "ell": ell, "seed": params.seed, "reports": rows})))
        }
        OutFormat::Csv => {
            let mut header = Vec::new();
            let mut rows = Vec::new();
            for r in &reports {
                let (h, row) = report_row(family.len(), ell, &r.s, r.numeric, r.analytic, r.rel_error, r.seed);
                header = h;
                rows.push(row);
            }
            if header.is_empty() {
                header = report_row(family.len(), ell, &[], Complex64::default(), Complex64::default(), 0.0, 0).0;
            }
            csv_text(&header, &rows)
        }
    }
}

fn rational(text: &str, what: &str) -> Result<Coeff> {
    BigRational::from_str(text.trim())
        .map(Coeff::rational)
        .map_err(|_| Error::InvalidInput(format!("{what}: expected a rational \"p/q\", got {text:?}")))
}

fn expand(
    kind: ExpandKind,
    index: usize,
    lambdas: &[String],
    a: &str,
    b: &str,
    config: Option<&std::path::Path>,
    out: OutFormat,
) -> Result<String> {
    let lam = || -> Result<Vec<Coeff>> { lambdas.iter().map(|l| rational(l, "lambdas")).collect() };
    let poly: MultiPoly = match kind {
        ExpandKind::R => {
            if index < 1 {
                return Err(Error::InvalidInput("R_m needs m >= 1".into()));
            }
            let forms = sumxt_forms(rational(a, "a")?, rational(b, "b")?, index)?;
            forms.r[index - 1].clone()
        }
        ExpandKind::Q => qj_poly(index, &lam()?)?,
        ExpandKind::V => vk_poly(index, &lam()?)?,
        ExpandKind::P => pm_poly(index, &lam()?)?,
        ExpandKind::W => {
            let path = config.ok_or_else(|| Error::InvalidInput("--kind w needs --config".into()))?;
            let family = RunConfig::load(path)?.family()?;
            w_ell_poly(&family.well_data(index)?, index)?
        }
    };
    let name = format!("{kind:?}").to_uppercase();
    match out {
        OutFormat::Json => Ok(pretty(&json!({
            "kind": name,
            "index": index,
            "text": poly.to_string(),
            "degree": poly.degree(),
            "polynomial": poly.to_json(),
        }))),
        OutFormat::Csv => {
            let rows: Vec<Vec<String>> = poly
                .terms()
                .map(|(e, c)| {
                    let exps: Vec<String> = e.iter().map(|k| k.to_string()).collect();
                    vec![exps.join(" "), c.to_string()]
                })
                .collect();
            csv_text(&["exponents", "coefficient"].map(String::from), &rows)
        }
    }
}
