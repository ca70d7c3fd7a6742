//! Command-line front end. Reports are JSON (schema "mockradial/1"), CSV for
//! `scan`, or plain text.

#![allow(non_snake_case)]

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact::{gcd, set_order_cap, CyclotomicNumber};
use crate::numeric::BigComplex;
use crate::radial::{cusp_data, radial_limit, CaseLabel, RadialLimitResult, SpecializationParams};
use crate::verify::{
    conjecture_check, corollary_check, identity_check, radial_check, ConjectureStatus, IdentityId, RadialSchedule,
};

pub const SCHEMA: &str = "mockradial/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "mockradial", version, about = "Radial limits of the universal mock theta function g3")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Working precision in decimal digits.
    #[arg(long = "precision", global = true, default_value_t = 50)]
    pub precision_digits: u32,
    /// First t of the radial schedule.
    #[arg(long, global = true, default_value_t = 0.2)]
    pub t_start: f64,
    /// Number of schedule points, halving t each step.
    #[arg(long, global = true, default_value_t = 9)]
    pub t_steps: usize,
    #[arg(long = "format", global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output_format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 20_251_016)]
    pub seed: u64,
    /// Largest cyclotomic order the exact layer may use.
    #[arg(long, global = true, default_value_t = 600)]
    pub order_cap: u32,
}

impl RunConfig {
    fn validate(&self) -> std::result::Result<(), String> {
        if self.precision_digits < 10 {
            return Err("--precision must be at least 10".into());
        }
        if self.t_steps < 3 {
            return Err("--t-steps must be at least 3".into());
        }
        if !(self.t_start > 0.0 && self.t_start <= 0.5) {
            return Err("--t-start must lie in (0, 0.5]".into());
        }
        Ok(())
    }

    fn schedule(&self) -> RadialSchedule {
        RadialSchedule::geometric(self.t_start, self.t_steps, self.precision_digits).expect("validated schedule")
    }
}

#[derive(Debug, Clone, Args)]
pub struct CuspArgs {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long = "A")]
    pub A: u32,
    #[arg(long = "B")]
    pub B: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub h: i64,
    #[arg(long)]
    pub k: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a cusp for a specialization.
    Classify(CuspArgs),
    /// Exact and numeric radial limit.
    Limit(CuspArgs),
    /// Numeric radial convergence check against the exact limit.
    VerifyRadial {
        #[command(flatten)]
        cusp: CuspArgs,
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
    },
    /// Residual suites for the q-series identities.
    Check {
        /// One identity id, or all of them when omitted.
        #[arg(long)]
        identity: Option<String>,
        #[arg(long, default_value_t = 25)]
        samples: usize,
    },
    /// Exact check of the fifth-order corollary.
    Corollary {
        #[arg(long, default_value_t = 30)]
        kmax: u32,
    },
    /// Exact evidence for the sixth-root conjecture.
    Conjecture {
        #[arg(long, default_value_t = 8)]
        kmax: u32,
    },
    /// Classify and compute limits over a parameter grid.
    Scan {
        #[arg(long, default_value_t = 6)]
        b_max: u32,
        #[arg(long = "A-max", default_value_t = 3)]
        A_max: u32,
        #[arg(long = "B-max", default_value_t = 4)]
        B_max: u32,
        #[arg(long, default_value_t = 12)]
        kmax: u32,
    },
}

/// A finished report and its exit code.
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

/// Parse arguments, run the command and write the report. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.config.out {
        Some(path) => std::fs::write(path, &outcome.body).map_err(|e| e.to_string()),
        None => std::io::stdout().write_all(outcome.body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}

/// Run a parsed command; `Err` carries a usage message.
pub fn execute(cli: &Cli) -> std::result::Result<Outcome, String> {
    let cfg = &cli.config;
    cfg.validate()?;
    if cfg.output_format == OutputFormat::Csv && !matches!(cli.command, Command::Scan { .. }) {
        return Err("CSV output is only available for scan".into());
    }
    set_order_cap(cfg.order_cap);
    let d = cfg.precision_digits;
    match &cli.command {
        Command::Classify(c) => {
            let p = params(c)?;
            let cusp = cusp_data(&p, c.h, c.k).map_err(|e| e.to_string())?;
            let v = json!({
                "schema": SCHEMA,
                "command": "classify",
                "params": p,
                "h": cusp.h,
                "k": cusp.k,
                "label": cusp.label.name(),
                "kprime": cusp.kprime,
                "Bprime": cusp.Bprime,
                "mu": cusp.mu.to_string(),
                "inQ": cusp.in_q,
            });
            let text = format!(
                "{p} at {}/{}: {} (k' = {}, B' = {}, mu = {}, in Q: {})\n",
                cusp.h, cusp.k, cusp.label, cusp.kprime, cusp.Bprime, cusp.mu, cusp.in_q
            );
            Ok(Outcome { body: render(cfg, v, text), code: EXIT_OK })
        }
        Command::Limit(c) => {
            let p = params(c)?;
            match radial_limit(&p, c.h, c.k, d) {
                Ok(r) => {
                    let code = if r.exact.is_some() { EXIT_OK } else { EXIT_UNSUPPORTED };
                    let text = match &r.exact {
                        Some(e) => format!("{p} at {}/{}: {}\n  Q = {e}\n  Q ~ {}\n", r.cusp.h, r.cusp.k, r.label, decimal(e, d)),
                        None => format!("{p} at {}/{}: {} (no closed form)\n", r.cusp.h, r.cusp.k, r.label),
                    };
                    Ok(Outcome { body: render(cfg, limit_json(&r, d), text), code })
                }
                Err(Error::Unsupported { label, trace }) => {
                    let v = json!({"schema": SCHEMA, "command": "limit", "params": p, "label": label, "reduction_trace": trace});
                    Ok(Outcome { body: render(cfg, v, format!("{p}: {label} (no closed form)\n")), code: EXIT_UNSUPPORTED })
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::VerifyRadial { cusp, tolerance } => {
            let p = params(cusp)?;
            match radial_check(&p, cusp.h, cusp.k, &cfg.schedule(), *tolerance) {
                Ok(r) => {
                    let mut text = format!("{p} at {}/{}: {}\n", r.h, r.k, r.label);
                    for pt in &r.points {
                        text += &format!("  t = {:<12e} residual = {:.3e} ({} digits)\n", pt.t, pt.residual, pt.digits);
                    }
                    text += &format!("  {}\n", if r.passed { "passed" } else { "FAILED" });
                    let mut v = serde_json::to_value(&r).map_err(|e| e.to_string())?;
                    tag(&mut v, "verify-radial");
                    Ok(Outcome { body: render(cfg, v, text), code: if r.passed { EXIT_OK } else { EXIT_FAILED } })
                }
                Err(Error::Unsupported { label, trace }) => {
                    let v = json!({"schema": SCHEMA, "command": "verify-radial", "params": p, "label": label, "reduction_trace": trace});
                    Ok(Outcome { body: render(cfg, v, format!("{p}: {label} (no closed form)\n")), code: EXIT_UNSUPPORTED })
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Check { identity, samples } => {
            let ids: Vec<IdentityId> = match identity {
                Some(s) => vec![IdentityId::parse(s).ok_or_else(|| format!("unknown identity {s}"))?],
                None => IdentityId::ALL.to_vec(),
            };
            let mut reports = Vec::new();
            for id in ids {
                reports.push(identity_check(id, *samples, cfg.seed, d).map_err(|e| e.to_string())?);
            }
            let ok = reports.iter().all(|r| r.passed);
            let text: String = reports
                .iter()
                .map(|r| {
                    format!(
                        "{:14} {:>3} samples  max residual {:.3e}  tolerance {:.0e}  {}\n",
                        r.identity_id.name(),
                        r.sample_points,
                        r.max_residual,
                        r.tolerance,
                        if r.passed { "pass" } else { "FAIL" }
                    )
                })
                .collect();
            let reports: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).unwrap();
                    v["identity_id"] = json!(r.identity_id.name());
                    v
                })
                .collect();
            let v = json!({"schema": SCHEMA, "command": "check", "seed": cfg.seed, "digits": d, "reports": reports, "passed": ok});
            Ok(Outcome { body: render(cfg, v, text), code: if ok { EXIT_OK } else { EXIT_FAILED } })
        }
        Command::Corollary { kmax } => {
            let items = corollary_check(*kmax).map_err(|e| e.to_string())?;
            let ok = items.iter().all(|i| i.passed);
            let text: String =
                items.iter().map(|i| format!("k = {:>3}  h = {:>3}  {}\n", i.k, i.h, if i.passed { "equal" } else { "DIFFER" })).collect();
            let arr: Vec<Value> = items
                .iter()
                .map(|i| json!({"k": i.k, "h": i.h, "passed": i.passed, "lhs": exact_json(&i.lhs, d), "rhs": exact_json(&i.rhs, d)}))
                .collect();
            let v = json!({"schema": SCHEMA, "command": "corollary", "kmax": kmax, "items": arr, "passed": ok});
            Ok(Outcome { body: render(cfg, v, text), code: if ok { EXIT_OK } else { EXIT_FAILED } })
        }
        Command::Conjecture { kmax } => {
            let items = conjecture_check(*kmax).map_err(|e| e.to_string())?;
            let counter: Vec<_> = items.iter().filter(|i| i.status == ConjectureStatus::Counterexample).collect();
            let mut text = String::new();
            for i in &items {
                let st = match &i.status {
                    ConjectureStatus::Equal => "equal".to_string(),
                    ConjectureStatus::Counterexample => "COUNTEREXAMPLE".to_string(),
                    ConjectureStatus::HypothesisViolated(w) => format!("hypothesis violated: {w}"),
                };
                text += &format!("k = {}  q = zeta_{}^{}  x = q^{}  {st}\n", i.k, 3 * i.k, i.h, i.m.unwrap_or(0));
            }
            text += &format!("{} counterexample(s) among {} items\n", counter.len(), items.len());
            let arr: Vec<Value> = items
                .iter()
                .map(|i| {
                    let status = match &i.status {
                        ConjectureStatus::Equal => json!("equal"),
                        ConjectureStatus::Counterexample => json!("counterexample"),
                        ConjectureStatus::HypothesisViolated(w) => json!({"hypothesis_violated": w}),
                    };
                    json!({
                        "k": i.k, "q": {"h": i.h, "order": 3 * i.k}, "m": i.m,
                        "x": exact_json(&i.x, d), "status": status,
                        "lhs": i.lhs.as_ref().map(|e| exact_json(e, d)),
                        "rhs": i.rhs.as_ref().map(|e| exact_json(e, d)),
                    })
                })
                .collect();
            let v = json!({
                "schema": SCHEMA, "command": "conjecture", "kmax": kmax,
                "items": arr, "counterexamples": counter.len(),
            });
            Ok(Outcome { body: render(cfg, v, text), code: if counter.is_empty() { EXIT_OK } else { EXIT_FAILED } })
        }
        Command::Scan { b_max, A_max, B_max, kmax } => Ok(Outcome { body: scan(cfg, *b_max, *A_max, *B_max, *kmax), code: EXIT_OK }),
    }
}

fn params(c: &CuspArgs) -> std::result::Result<SpecializationParams, String> {
    SpecializationParams::new(c.a, c.b, c.A, c.B).map_err(|e| e.to_string())
}

fn tag(v: &mut Value, command: &str) {
    if let Value::Object(m) = v {
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(command));
    }
}

fn render(cfg: &RunConfig, v: Value, text: String) -> String {
    match cfg.output_format {
        OutputFormat::Text => text,
        _ => serde_json::to_string_pretty(&v).unwrap() + "\n",
    }
}

fn decimal(e: &CyclotomicNumber, digits: u32) -> String {
    e.embed_complex(digits).to_decimal_string(digits as usize)
}

/// {order, coeffs, decimal}, plus the rational value when there is one.
pub fn exact_json(e: &CyclotomicNumber, digits: u32) -> Value {
    let mut v = serde_json::to_value(e).unwrap();
    v["decimal"] = json!(decimal(e, digits));
    v["digits"] = json!(digits);
    if let Some(r) = e.to_rational() {
        v["rational"] = json!(r.to_string());
    }
    v
}

fn numeric_json(z: &BigComplex, digits: u32) -> Value {
    json!({"re": crate::numeric::format_float(z.re(), digits as usize), "im": crate::numeric::format_float(z.im(), digits as usize), "digits": digits})
}

fn limit_json(r: &RadialLimitResult, digits: u32) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "limit",
        "params": r.params,
        "h": r.cusp.h,
        "k": r.cusp.k,
        "label": r.label.name(),
        "exact": r.exact.as_ref().map(|e| exact_json(e, digits)),
        "numeric": r.numeric.as_ref().map(|z| numeric_json(z, digits)),
        "companion": r.companion,
        "reduction_trace": r.reduction_trace.as_ref().map(|t| t.notes.clone()),
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn scan(cfg: &RunConfig, b_max: u32, A_max: u32, B_max: u32, kmax: u32) -> String {
    use rayon::prelude::*;
    let mut tuples = Vec::new();
    for b in 1..=b_max {
        for a in 0..b {
            for A in 0..=A_max {
                for B in 1..=B_max {
                    let Ok(p) = SpecializationParams::new(a, b, A, B) else { continue };
                    for k in 1..=kmax {
                        for h in (1..=k).filter(|h| gcd(*h as u64, k as u64) == 1) {
                            tuples.push((p, h, k));
                        }
                    }
                }
            }
        }
    }
    let d = cfg.precision_digits;
    let rows: Vec<(Value, String)> = tuples
        .par_iter()
        .map(|(p, h, k)| {
            let cusp = cusp_data(p, *h as i64, *k).unwrap();
            let (exact, err) = match cusp.label {
                CaseLabel::EdgeSixthUnsupported | CaseLabel::DivergentThreeUnsupported => (None, String::new()),
                _ => match radial_limit(p, *h as i64, *k, d) {
                    Ok(r) => (r.exact, String::new()),
                    Err(e) => (None, e.to_string()),
                },
            };
            let coeffs = exact.as_ref().map(|e| e.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
            let fields = [
                p.a.to_string(),
                p.b.to_string(),
                p.A.to_string(),
                p.B.to_string(),
                h.to_string(),
                k.to_string(),
                cusp.kprime.to_string(),
                cusp.Bprime.to_string(),
                cusp.mu.to_string(),
                cusp.label.name().to_string(),
                cusp.in_q.to_string(),
                exact.as_ref().map(|e| e.order().to_string()).unwrap_or_default(),
                coeffs.clone().unwrap_or_default(),
                exact.as_ref().map(|e| decimal(e, 20)).unwrap_or_default(),
                err.clone(),
            ];
            let csv = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
            let v = json!({
                "params": p, "h": h, "k": k, "kprime": cusp.kprime, "Bprime": cusp.Bprime,
                "mu": cusp.mu.to_string(), "label": cusp.label.name(), "inQ": cusp.in_q,
                "exact": exact.as_ref().map(|e| exact_json(e, d)), "error": if err.is_empty() { Value::Null } else { json!(err) },
            });
            (v, csv)
        })
        .collect();
    match cfg.output_format {
        OutputFormat::Csv => {
            let mut s = "a,b,A,B,h,k,kprime,Bprime,mu,label,inQ,order,coeffs,decimal,error\n".to_string();
            for (_, line) in &rows {
                s += line;
                s.push('\n');
            }
            s
        }
        OutputFormat::Text => rows.iter().map(|(_, l)| format!("{l}\n")).collect(),
        OutputFormat::Json => {
            let recs: Vec<Value> = rows.into_iter().map(|(v, _)| v).collect();
            serde_json::to_string_pretty(&json!({"schema": SCHEMA, "command": "scan", "records": recs})).unwrap() + "\n"
        }
    }
}
