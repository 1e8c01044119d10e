//! Command-line jobs: argument model, manifest lines and execution.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use exactalg::mpoly::{Y, Z};
use exactalg::{parse_mpoly, MPoly, Rational};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::certify::{certify_hyperbolic, certify_real_rooted, Certificate};
use crate::curvedata::{analyze_curve, check_no_real_ramification, lift};
use crate::error::{Error, Result};
use crate::hvpipeline::{hv_representation_factors, to_rational_bipoly, verify_pencil};
use crate::json;
use crate::represent::{represent, verify_representation, Kind};

pub const BOUND_ENV: &str = "SPECTREP_SEARCH_BOUND";

#[derive(Parser, Debug)]
#[command(name = "spectrep", version, about = "Exact real-rootedness certificates and spectral representations of plane curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Add floating-point renderings with P decimal digits.
    #[arg(long = "float", value_name = "P", global = true)]
    pub float: Option<usize>,
    /// Run one job per line of this file, in parallel.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Decide real-rootedness of f(x, t), or hyperbolicity of a form in x, y, z.
    Certify {
        input: String,
        #[arg(long, default_value = "0,0,1")]
        e: String,
    },
    /// Discriminant, branch points and smoothness.
    Analyze { input: String },
    /// Spectral representation of f(x, t).
    Represent {
        input: String,
        #[arg(long, default_value = "hermitian")]
        kind: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Definite pencil of a hyperbolic form; several inputs are read as a factor list.
    Hv {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long, default_value = "hermitian")]
        kind: String,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value = "0,0,1")]
        e: String,
    },
    /// Re-check an artifact produced by this tool.
    Verify { input: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub command: Command,
    pub float: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub value: Value,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { code: 0, value }
    }

    pub fn from_error(e: &Error) -> Self {
        Outcome { code: e.exit_code(), value: json::error_json(e) }
    }
}

/// `@path` reads the file; anything else is the text itself.
pub fn read_input(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|t| t.trim().to_string())
            .map_err(|e| Error::Usage(format!("cannot read {}: {}", path, e))),
        None => Ok(s.to_string()),
    }
}

pub fn parse_direction(s: &str) -> Result<[Rational; 3]> {
    let parts = s
        .split(',')
        .map(|p| json::rational_from_str(p.trim()).map_err(|_| Error::Usage(format!("bad direction component '{}'", p))))
        .collect::<Result<Vec<_>>>()?;
    parts.try_into().map_err(|_| Error::Usage("direction must have three components".into()))
}

fn env_bound() -> Result<Option<usize>> {
    match std::env::var(BOUND_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Error::Usage(format!("{} must be a nonnegative integer", BOUND_ENV))),
        Err(_) => Ok(None),
    }
}

fn parse_poly(s: &str) -> Result<MPoly> {
    Ok(parse_mpoly(&read_input(s)?)?)
}

fn certificate_outcome(input: &str, c: &Certificate) -> Outcome {
    Outcome { code: if c.verdict { 0 } else { 1 }, value: json::certificate_json(input, c) }
}

pub fn run(cfg: &JobConfig) -> Outcome {
    match run_inner(cfg) {
        Ok(o) => o,
        Err(e) => Outcome::from_error(&e),
    }
}

fn run_inner(cfg: &JobConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Certify { input, e } => {
            let p = parse_poly(input)?;
            let text = p.to_string();
            let cert = if p.uses_var(Y) || p.uses_var(Z) {
                certify_hyperbolic(&p, &parse_direction(e)?)?
            } else {
                certify_real_rooted(&to_rational_bipoly(&p)?)?
            };
            Ok(certificate_outcome(&text, &cert))
        }
        Command::Analyze { input } => {
            let f = to_rational_bipoly(&parse_poly(input)?)?;
            let cd = analyze_curve(&f)?;
            let ok = check_no_real_ramification(&cd);
            Ok(Outcome::ok(json::curve_json(&cd, ok)))
        }
        Command::Represent { input, kind, bound } => {
            let kind: Kind = kind.parse()?;
            let f = to_rational_bipoly(&parse_poly(input)?)?;
            let bound = match bound {
                Some(b) => Some(*b),
                None => env_bound()?,
            };
            let rep = represent(&f, kind, bound)?;
            Ok(Outcome::ok(json::rep_json(&lift(&f), &rep, cfg.float)))
        }
        Command::Hv { inputs, kind, bound, e } => {
            let kind: Kind = kind.parse()?;
            let factors = inputs.iter().map(|s| parse_poly(s)).collect::<Result<Vec<_>>>()?;
            let bound = match bound {
                Some(b) => Some(*b),
                None => env_bound()?,
            };
            let pencil = hv_representation_factors(&factors, &parse_direction(e)?, kind, bound)?;
            Ok(Outcome::ok(json::pencil_json(&pencil, cfg.float)))
        }
        Command::Verify { input } => {
            let text = read_input(input)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Usage(format!("artifact is not JSON: {}", e)))?;
            let (kind, valid) = verify_artifact(&v)?;
            let mut out = json!({"schema": json::SCHEMA, "type": "verification", "artifact": kind, "valid": valid});
            if !valid {
                out["reason"] = json!("artifact does not satisfy its exact identities");
            }
            Ok(Outcome { code: if valid { 0 } else { 1 }, value: out })
        }
    }
}

/// Artifact type and whether it checks.
pub fn verify_artifact(v: &Value) -> Result<(String, bool)> {
    if v.get("schema") != Some(&json!(json::SCHEMA)) {
        return Err(Error::Usage("unsupported or missing schema version".into()));
    }
    let kind = v.get("type").and_then(Value::as_str).unwrap_or("").to_string();
    let valid = match kind.as_str() {
        "spectral_rep" => {
            let (f, rep) = json::rep_from_json(v)?;
            verify_representation(&f, &rep)
        }
        "pencil" => verify_pencil(&json::pencil_from_json(v)?).is_ok(),
        "certificate" => {
            let input = v.get("input").and_then(Value::as_str).ok_or_else(|| Error::Usage("certificate without input".into()))?;
            let p = parse_mpoly(input)?;
            let e = v
                .get("e")
                .and_then(Value::as_str)
                .map(parse_direction)
                .transpose()?
                .unwrap_or_else(|| parse_direction("0,0,1").expect("literal"));
            let fresh = if p.uses_var(Y) || p.uses_var(Z) {
                certify_hyperbolic(&p, &e)?
            } else {
                certify_real_rooted(&to_rational_bipoly(&p)?)?
            };
            let claimed = json::witness_from_json(v.get("witness").unwrap_or(&Value::Null))?;
            v.get("verdict") == Some(&json!(fresh.verdict)) && claimed.as_ref().is_none_or(|w| w.check()) && claimed.is_some() != fresh.verdict
        }
        "curve" => {
            let f = to_rational_bipoly(&parse_mpoly(v.get("f").and_then(Value::as_str).unwrap_or(""))?)?;
            let cd = analyze_curve(&f)?;
            json::curve_json(&cd, check_no_real_ramification(&cd)) == *v
        }
        other => return Err(Error::Usage(format!("unknown artifact type '{}'", other))),
    };
    Ok((kind, valid))
}

/// One manifest line: `{"command": ..., "input": ... | "inputs": [...], "kind", "bound", "e", "float"}`.
pub fn job_from_json(line: &str) -> Result<JobConfig> {
    let v: Value = serde_json::from_str(line).map_err(|e| Error::Usage(format!("manifest line is not JSON: {}", e)))?;
    let s = |k: &str| v.get(k).and_then(Value::as_str).map(str::to_string);
    let input = || s("input").ok_or_else(|| Error::Usage("job needs an 'input'".into()));
    let kind = s("kind").unwrap_or_else(|| "hermitian".into());
    let bound = match v.get("bound") {
        None | Some(Value::Null) => None,
        Some(b) => Some(b.as_u64().ok_or_else(|| Error::Usage("bound must be a nonnegative integer".into()))? as usize),
    };
    let e = s("e").unwrap_or_else(|| "0,0,1".into());
    let command = match s("command").as_deref() {
        Some("certify") => Command::Certify { input: input()?, e },
        Some("analyze") => Command::Analyze { input: input()? },
        Some("represent") => Command::Represent { input: input()?, kind, bound },
        Some("hv") => {
            let inputs = match v.get("inputs").and_then(Value::as_array) {
                Some(a) => a.iter().map(|x| x.as_str().map(str::to_string)).collect::<Option<Vec<_>>>().ok_or_else(|| Error::Usage("inputs must be strings".into()))?,
                None => vec![input()?],
            };
            Command::Hv { inputs, kind, bound, e }
        }
        Some("verify") => Command::Verify { input: input()? },
        other => return Err(Error::Usage(format!("unknown command {:?}", other))),
    };
    let float = v.get("float").and_then(Value::as_u64).map(|p| p as usize);
    Ok(JobConfig { command, float })
}

/// Runs every nonblank manifest line; results keep manifest order.
pub fn run_manifest(text: &str) -> Vec<Outcome> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    lines
        .par_iter()
        .map(|l| match job_from_json(l) {
            Ok(cfg) => run(&cfg),
            Err(e) => Outcome::from_error(&e),
        })
        .collect()
}

/// Full process behaviour: returns the exit status and the text written.
pub fn main_with_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            return (code, e.to_string());
        }
    };
    let (code, text) = if let Some(path) = &cli.manifest {
        match std::fs::read_to_string(path) {
            Ok(t) => {
                let outs = run_manifest(&t);
                let code = outs.iter().map(|o| o.code).max().unwrap_or(0);
                let text: Vec<String> = outs.iter().map(|o| o.value.to_string()).collect();
                (code, text.join("\n") + "\n")
            }
            Err(e) => {
                let err = Error::Usage(format!("cannot read manifest {}: {}", path.display(), e));
                let o = Outcome::from_error(&err);
                (o.code, o.value.to_string() + "\n")
            }
        }
    } else if let Some(command) = cli.command.clone() {
        let o = run(&JobConfig { command, float: cli.float });
        (o.code, serde_json::to_string_pretty(&o.value).expect("serializable") + "\n")
    } else {
        let o = Outcome::from_error(&Error::Usage("a subcommand or --manifest is required".into()));
        (o.code, o.value.to_string() + "\n")
    };
    if let Some(out) = &cli.output {
        if let Err(e) = std::fs::write(out, &text) {
            let o = Outcome::from_error(&Error::Usage(format!("cannot write {}: {}", out.display(), e)));
            return (o.code, o.value.to_string() + "\n");
        }
        return (code, String::new());
    }
    (code, text)
}
