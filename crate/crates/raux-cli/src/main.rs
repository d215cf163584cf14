//! `raux`: evaluate R(s), emit coefficient tables, count zeros, run the acceptance checks.

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use raux_core::calibration::{self, Calibration, CAL_ARGS, CAL_RADII};
use raux_core::coeffs::{coeff_csv, coeff_document, KMAX};
use raux_core::contour::xray;
use raux_core::expansion::regions::{classify_region, phi_of_r, phi_series, u_function};
use raux_core::expansion::{eval_auto, expand_left_with, expand_right_with, z_of_t, ExpansionResult};
use raux_core::gfunc::{border_image, g_eval};
use raux_core::oracle::{r_quad_origin_detail, r_quad_saddle};
use raux_core::verify::{run_suite, suite};
use raux_core::zeros::{census, count_zeros, eval_r, ZeroBox};
use raux_core::ScaledComplex;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "raux", version, about = "Riemann's auxiliary function R(s)")]
struct Cli {
    /// calibration sidecar written by `raux calibrate`
    #[arg(long, global = true, env = "RAUX_CALIBRATION")]
    calibration: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalMethod {
    Auto,
    Right,
    Left,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum OraclePath {
    Origin,
    Saddle,
}

#[derive(Clone, Copy, ValueEnum)]
enum XrayFunc {
    #[value(name = "G")]
    G,
    #[value(name = "R")]
    R,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate R(s)
    Eval {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        /// truncation order for the right and left expansions
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[arg(long, value_enum, default_value = "auto")]
        method: EvalMethod,
        /// relative accuracy asked of the automatic method
        #[arg(long, default_value_t = 1e-12)]
        target: f64,
        /// accepted for symmetry with the other commands; output is always JSON
        #[arg(long)]
        json: bool,
    },
    /// Hardy's Z(t)
    Z {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Exact expansion coefficients
    Coeffs {
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[arg(long, alias = "out", value_enum, default_value = "json")]
        format: Format,
    },
    /// Validity regions containing s
    Region {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        theta: f64,
    },
    /// Boundary angle of the zeta-sum region
    Phi {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        series: bool,
    },
    /// Count the zeros of R in an open box, optionally locating each one
    Zeros {
        #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true)]
        bounds: [f64; 4],
        #[arg(long)]
        refine: bool,
        #[arg(long, alias = "format", value_enum, default_value = "json")]
        out: Format,
    },
    /// Sign pattern of Re f and Im f on a grid
    Xray {
        #[arg(long, value_enum)]
        func: XrayFunc,
        #[arg(long, value_parser = parse_box, allow_hyphen_values = true)]
        window: [f64; 4],
        #[arg(long)]
        step: f64,
        #[arg(long, alias = "format", value_enum, default_value = "csv")]
        out: Format,
    },
    /// Image of the parallelogram border under G
    Border {
        #[arg(long, default_value_t = 3.0)]
        mu_max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, alias = "format", value_enum, default_value = "csv")]
        out: Format,
    },
    /// R(s) by direct quadrature
    Oracle {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, value_enum, default_value = "origin")]
        path: OraclePath,
    },
    /// Run acceptance criteria
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
    /// Refit the per-order error constants and write a calibration sidecar
    Calibrate {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        safety: f64,
    },
}

fn parse_pair(text: &str, n: usize) -> Result<Vec<f64>, String> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", parts.len()));
    }
    Ok(parts)
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let v = parse_pair(text, 2)?;
    Ok(Complex64::new(v[0], v[1]))
}

fn parse_box(text: &str) -> Result<[f64; 4], String> {
    let v = parse_pair(text, 4)?;
    if !(v[0] < v[1] && v[2] < v[3]) {
        return Err("need x0 < x1 and y0 < y1".into());
    }
    Ok([v[0], v[1], v[2], v[3]])
}

fn scaled_json(v: &ScaledComplex) -> Value {
    let z = v.to_complex();
    let mut out = json!({ "log_mod": v.log_mod, "phase": v.phase });
    if z.re.is_finite() && z.im.is_finite() && (v.is_zero() || v.log_mod.abs() < 700.0) {
        out["re"] = json!(z.re);
        out["im"] = json!(z.im);
    }
    out
}

fn expansion_json(s: Complex64, r: &ExpansionResult, theta: f64) -> Value {
    json!({
        "s": [s.re, s.im],
        "value": scaled_json(&r.value),
        "region": classify_region(s, theta).tag,
        "k": r.k_used,
        "err_estimate": r.err_estimate,
        "method": r.method,
    })
}

fn load_calibration(path: &Option<PathBuf>) -> raux_core::Result<Calibration> {
    match path {
        Some(p) => Calibration::load(p),
        None => Ok(Calibration::default()),
    }
}

fn csv<T, const N: usize>(
    header: [&str; N],
    rows: impl IntoIterator<Item = T>,
    row: impl Fn(T) -> [String; N],
) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&row(r).join(","));
        out.push('\n');
    }
    out
}

enum Emit {
    Json(Value),
    Text(String),
    Verify(Value, String, bool),
}

fn run(cli: Cli) -> raux_core::Result<Emit> {
    let cal = load_calibration(&cli.calibration)?;
    let theta = std::f64::consts::FRAC_PI_4;
    Ok(match cli.command {
        Command::Eval { s, k, method, target, json: _ } => {
            let r = match method {
                EvalMethod::Auto => eval_auto(s, target, &cal)?,
                EvalMethod::Right => expand_right_with(s, k, &cal)?,
                EvalMethod::Left => expand_left_with(s, k, &cal)?,
                EvalMethod::Oracle => {
                    let v = r_quad_saddle(s).or_else(|_| r_quad_origin_detail(s).map(|q| q.value))?;
                    return Ok(Emit::Json(json!({
                        "s": [s.re, s.im],
                        "value": scaled_json(&v),
                        "region": classify_region(s, theta).tag,
                        "k": null,
                        "err_estimate": null,
                        "method": "oracle",
                    })));
                }
            };
            Emit::Json(expansion_json(s, &r, theta))
        }
        Command::Z { t } => Emit::Json(json!({ "t": t, "z": z_of_t(t, &cal)? })),
        Command::Coeffs { kmax, format } => {
            if kmax > KMAX {
                return Err(raux_core::Error::OrderOutOfRange { k: kmax, max: KMAX });
            }
            let doc = coeff_document(kmax);
            match format {
                Format::Json => Emit::Json(serde_json::to_value(&doc).expect("coefficient document serializes")),
                Format::Csv => Emit::Text(coeff_csv(&doc)),
            }
        }
        Command::Region { s, theta } => {
            if !(theta > 0.0 && theta < std::f64::consts::PI) {
                return Err(raux_core::Error::Precondition(format!("theta must lie in (0, π), got {theta}")));
            }
            Emit::Json(json!({ "s": [s.re, s.im], "label": classify_region(s, theta) }))
        }
        Command::Phi { r, series } => {
            let phi = phi_of_r(r)?;
            let mut doc = json!({ "r": r, "phi": phi, "residual": u_function(r, phi) });
            if series {
                doc["series"] = json!(phi_series(r)?);
            }
            Emit::Json(doc)
        }
        Command::Zeros { bounds: [x0, x1, y0, y1], refine, out } => {
            let b = ZeroBox::new(x0, x1, y0, y1);
            if !refine {
                let n = count_zeros(&b, &cal)?;
                match out {
                    Format::Json => Emit::Json(json!({ "box": [x0, x1, y0, y1], "count": n.count, "shift": n.shift })),
                    Format::Csv => Emit::Text(format!("x0,x1,y0,y1,count\n{x0},{x1},{y0},{y1},{}\n", n.count)),
                }
            } else {
                let mut found = census(&b, &cal)?;
                found.sort_by(|a, b| (a.y0, a.x0).partial_cmp(&(b.y0, b.x0)).expect("finite box corners"));
                match out {
                    Format::Json => Emit::Json(serde_json::to_value(&found).expect("census serializes")),
                    Format::Csv => {
                        let rows = found.iter().flat_map(|b| b.zeros.iter().map(move |z| (b, z)));
                        Emit::Text(csv(["re", "im", "x0", "x1", "y0", "y1"], rows, |(b, z)| {
                            [z.re, z.im, b.x0, b.x1, b.y0, b.y1].map(|v| v.to_string())
                        }))
                    }
                }
            }
        }
        Command::Xray { func, window, step, out } => {
            if !(step > 0.0) {
                return Err(raux_core::Error::Precondition("step must be positive".into()));
            }
            let cells = match func {
                XrayFunc::G => xray(window, step, |q| Some(ScaledComplex::from_complex(g_eval(q)))),
                XrayFunc::R => xray(window, step, |s| eval_r(s, &cal).ok()),
            };
            match out {
                Format::Json => Emit::Json(serde_json::to_value(&cells).expect("grid serializes")),
                Format::Csv => Emit::Text(csv(["x", "y", "sign_re", "sign_im"], &cells, |c| {
                    [c.x.to_string(), c.y.to_string(), c.sign_re.to_string(), c.sign_im.to_string()]
                })),
            }
        }
        Command::Border { mu_max, step, out } => {
            if !(step > 0.0 && mu_max > 0.0) {
                return Err(raux_core::Error::Precondition("mu_max and step must be positive".into()));
            }
            let pts = border_image(mu_max, step);
            match out {
                Format::Json => Emit::Json(serde_json::to_value(&pts).expect("border serializes")),
                Format::Csv => Emit::Text(csv(["mu", "nu", "re", "im"], &pts, |p| {
                    [p.mu, p.nu, p.g.re, p.g.im].map(|v| v.to_string())
                })),
            }
        }
        Command::Oracle { s, path } => {
            let doc = match path {
                OraclePath::Origin => {
                    let q = r_quad_origin_detail(s)?;
                    json!({ "s": [s.re, s.im], "path": "origin", "value": scaled_json(&q.value), "cond": q.cond, "change": q.change })
                }
                OraclePath::Saddle => {
                    json!({ "s": [s.re, s.im], "path": "saddle", "value": scaled_json(&r_quad_saddle(s)?) })
                }
            };
            Emit::Json(doc)
        }
        Command::Verify { suite: name, json } => {
            let reports = run_suite(&suite(&name)?, &cal);
            let passed = reports.iter().all(|r| r.passed);
            let text: String = reports.iter().map(|r| r.line() + "\n").collect();
            let doc = if json { serde_json::to_value(&reports).expect("reports serialize") } else { Value::Null };
            Emit::Verify(doc, text, passed)
        }
        Command::Calibrate { out, safety } => {
            let (fitted, _) = calibration::fit(&CAL_ARGS, &CAL_RADII, safety)?;
            fitted.save(&out)?;
            Emit::Json(serde_json::to_value(&fitted).expect("calibration serializes"))
        }
    })
}

fn init_threads() {
    if let Some(n) = std::env::var("RAUX_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // the pool can only be built once per process; a failure leaves the default in place
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

// a closed pipe downstream is not an error worth reporting
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON value prints") + "\n"
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_threads();
    match run(cli) {
        Ok(Emit::Json(v)) => {
            emit(&pretty(&v));
            ExitCode::SUCCESS
        }
        Ok(Emit::Text(t)) => {
            emit(&t);
            ExitCode::SUCCESS
        }
        Ok(Emit::Verify(doc, text, passed)) => {
            emit(&if doc.is_null() { text } else { pretty(&doc) });
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(e) => {
            eprintln!("raux: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
