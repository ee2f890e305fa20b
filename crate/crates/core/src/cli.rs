//! Batch front end. [`run`] is pure: it returns the exit code and the text
//! that `main` prints, so the binary stays a thin shell around it.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::engine::{axiom_check, functoriality_check, minimal_data_with, HarnessConfig, MinimalData, Report};
use crate::presentation::{first_homology, parse, parse_script, render, signature, Presentation};
use crate::scalar::{DSquared, ExactScalar};
use crate::theory::{resolve_theory, AbelianTheory, EvalOptions, Normalization, PhaseTwist, TheoryError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

/// Largest number of boundary colorings `eval` will tabulate.
const MAX_EVAL_ROWS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Evaluate the invariant of presentations.
    Eval,
    /// Apply a move script and compare invariants before and after.
    Moves,
    /// Run the axiom suite on a theory's minimal data.
    Axioms,
    /// Check the functor laws of the extension.
    Functor,
    /// Signature and first homology of presentations.
    Homology,
}

/// Deliberately corrupted oracles, for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mutation {
    /// Twist the phase of one group element on surgery circles.
    Twist,
    /// Drop the D⁻¹ normalization constant.
    Normalization,
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(
    name = "framed-tqft",
    version,
    about = "Exact invariants of 2-framed surgery presentations"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Theory configuration file or built-in name (semion, semion-bar, toric-code, z3, z4).
    #[arg(long, global = true)]
    pub theory: Option<String>,
    /// Presentation file (repeatable).
    #[arg(long, global = true)]
    pub presentation: Vec<PathBuf>,
    /// Move script file.
    #[arg(long, global = true)]
    pub script: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random instances per axiom or law.
    #[arg(long, global = true, default_value_t = 20)]
    pub budget: usize,
    /// Also report γ^(−σ)·Z, the signature-corrected value.
    #[arg(long, global = true)]
    pub corrected: bool,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Corrupt the oracle (axioms/functor only).
    #[arg(long, global = true, value_enum)]
    pub mutation: Option<Mutation>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            theory: None,
            presentation: Vec::new(),
            script: None,
            seed: 0,
            budget: 20,
            corrected: false,
            json: false,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure(String);

type Step<T> = Result<T, Failure>;

fn fail<T>(msg: impl Into<String>) -> Step<T> {
    Err(Failure(msg.into()))
}

pub fn run(cfg: &RunConfig) -> RunOutput {
    let result = match cfg.command {
        Command::Eval => eval(cfg),
        Command::Moves => moves(cfg),
        Command::Axioms | Command::Functor => harness(cfg),
        Command::Homology => homology(cfg),
    };
    match result {
        Ok((code, stdout)) => RunOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure(msg)) => RunOutput {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn load_theory(cfg: &RunConfig) -> Step<AbelianTheory> {
    let Some(arg) = &cfg.theory else {
        return fail("--theory is required for this command");
    };
    resolve_theory(arg).map_err(|e| match &e {
        TheoryError::Parse { line, .. } => located(Path::new(arg), *line, &e),
        TheoryError::QuadraticLaw(msg) | TheoryError::Degenerate(msg) => match leading_line(msg) {
            Some((line, rest)) => {
                let kind = if matches!(e, TheoryError::QuadraticLaw(_)) {
                    "quadratic law"
                } else {
                    "nondegeneracy"
                };
                Failure(format!("{arg}:{line}: {kind} violated: {rest}"))
            }
            None => Failure(format!("{arg}: {e}")),
        },
        TheoryError::Io(..) => Failure(e.to_string()),
        _ => Failure(format!("{arg}: {e}")),
    })
}

/// `path:line: message`, the usual compiler-style location prefix.
fn located(path: &Path, line: usize, err: &impl std::fmt::Display) -> Failure {
    let text = err.to_string();
    let prefix = format!("line {line}: ");
    Failure(format!(
        "{}:{line}: {}",
        path.display(),
        text.strip_prefix(&prefix).unwrap_or(&text)
    ))
}

/// Splits a `line N: ` prefix off a validation message.
fn leading_line(msg: &str) -> Option<(usize, &str)> {
    let rest = msg.strip_prefix("line ")?;
    let (n, tail) = rest.split_once(": ")?;
    Some((n.parse().ok()?, tail))
}

fn read(path: &Path) -> Step<String> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_presentations(cfg: &RunConfig) -> Step<Vec<(String, Presentation)>> {
    if cfg.presentation.is_empty() {
        return fail("--presentation is required for this command");
    }
    cfg.presentation
        .iter()
        .map(|path| {
            let text = read(path)?;
            let p = parse(&text).map_err(|e| located(path, e.line(), &e))?;
            Ok((path.display().to_string(), p))
        })
        .collect()
}

// Values are shown with the D-power reduced to 0 or -1.
fn scalar_json(x: &ExactScalar, ctx: DSquared) -> Value {
    let mut v = x.reduced(ctx).to_json();
    v["approx"] = Value::String(x.approx_string(ctx));
    v
}

fn scalar_text(x: &ExactScalar, ctx: DSquared) -> String {
    format!("{}  (approx {})", x.reduced(ctx), x.approx_string(ctx))
}

fn homology_text(divisors: &[u64]) -> String {
    if divisors.is_empty() {
        return "0".into();
    }
    divisors
        .iter()
        .map(|&d| if d == 0 { "Z".to_string() } else { format!("Z/{d}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// γ^k for any integer k.
fn gamma_power(t: &AbelianTheory, k: i64) -> ExactScalar {
    t.gauss_milgram().pow(k).expect("γ is a unit")
}

/// Every coloring of the boundary, as per-handlebody basis indices.
fn all_bases(md: &MinimalData, p: &Presentation) -> Step<Vec<Vec<usize>>> {
    let dims: Vec<usize> = md.dims(&p.genera());
    let total = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .unwrap_or(usize::MAX);
    if total > MAX_EVAL_ROWS {
        return fail(format!(
            "{total} boundary basis vectors exceed the limit of {MAX_EVAL_ROWS}"
        ));
    }
    Ok((0..total)
        .map(|mut i| {
            let mut out = vec![0; dims.len()];
            for (slot, &d) in out.iter_mut().zip(&dims).rev() {
                *slot = i % d;
                i /= d;
            }
            out
        })
        .collect())
}

fn values(md: &MinimalData, p: &Presentation) -> Step<Vec<(Vec<usize>, ExactScalar)>> {
    all_bases(md, p)?
        .into_iter()
        .map(|b| {
            let v = md.functional(p, &b).map_err(|e| Failure(e.to_string()))?;
            Ok((b, v))
        })
        .collect()
}

fn eval(cfg: &RunConfig) -> Step<(i32, String)> {
    let theory = load_theory(cfg)?;
    let inputs = load_presentations(cfg)?;
    let ctx = theory.d_squared();
    let md = minimal_data_with(&theory, EvalOptions::default());
    let mut out = String::new();
    for (path, p) in &inputs {
        let sig = signature(p);
        let hom = first_homology(p);
        let vals = values(&md, p)?;
        let correction = gamma_power(&theory, -sig);
        if cfg.json {
            let invariant: Vec<Value> = vals
                .iter()
                .map(|(b, v)| {
                    let mut row = json!({ "basis": b, "value": scalar_json(v, ctx) });
                    if cfg.corrected {
                        row["corrected"] = scalar_json(&correction.mul(v), ctx);
                    }
                    row
                })
                .collect();
            let mut obj = json!({
                "presentation": path,
                "theory": theory.name(),
                "signature": sig,
                "homology": hom,
            });
            if p.handlebodies().is_empty() {
                obj["invariant"] = invariant[0]["value"].clone();
                if cfg.corrected {
                    obj["corrected"] = invariant[0]["corrected"].clone();
                }
            } else {
                obj["invariant"] = Value::Array(invariant);
            }
            writeln!(out, "{obj}").unwrap();
        } else {
            writeln!(out, "presentation: {path}").unwrap();
            writeln!(out, "theory: {theory}").unwrap();
            writeln!(out, "signature: {sig}").unwrap();
            writeln!(out, "homology: {}", homology_text(&hom)).unwrap();
            for (b, v) in &vals {
                let label = if p.handlebodies().is_empty() {
                    "invariant".to_string()
                } else {
                    let b: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                    format!("invariant[{}]", b.join(","))
                };
                writeln!(out, "{label}: {}", scalar_text(v, ctx)).unwrap();
                if cfg.corrected {
                    writeln!(out, "corrected: {}", scalar_text(&correction.mul(v), ctx)).unwrap();
                }
            }
        }
    }
    Ok((EXIT_OK, out))
}

fn moves(cfg: &RunConfig) -> Step<(i32, String)> {
    let inputs = load_presentations(cfg)?;
    let Some(script_path) = &cfg.script else {
        return fail("--script is required for `moves`");
    };
    let script = parse_script(&read(script_path)?).map_err(|e| located(script_path, e.line(), &e))?;
    let theory = match &cfg.theory {
        Some(_) => Some(load_theory(cfg)?),
        None => None,
    };
    let mut out = String::new();
    let mut code = EXIT_OK;
    for (path, before) in &inputs {
        let after = script
            .apply(before)
            .map_err(|e| Failure(format!("{}: {e}", script_path.display())))?;
        let shift = script.signature_shift(before).map_err(|e| Failure(e.to_string()))?;
        let (s0, s1) = (signature(before), signature(&after));
        let mut check = None;
        if let Some(t) = &theory {
            let md = minimal_data_with(t, EvalOptions::default());
            let ctx = t.d_squared();
            let factor = gamma_power(t, s1 - s0);
            let v0 = values(&md, before)?;
            let v1 = values(&md, &after)?;
            let holds = v0.len() == v1.len() && v0.iter().zip(&v1).all(|((_, a), (_, b))| b.eq_in(&factor.mul(a), ctx));
            if !holds {
                code = EXIT_CHECK_FAILED;
            }
            check = Some((factor, holds, v0, v1, ctx));
        }
        if cfg.json {
            let mut obj = json!({
                "presentation": path,
                "before": render(before),
                "after": render(&after),
                "signature_before": s0,
                "signature_after": s1,
                "signature_shift": shift,
            });
            if let Some((factor, holds, v0, v1, ctx)) = &check {
                obj["expected_ratio"] = scalar_json(factor, *ctx);
                obj["ratio_holds"] = json!(holds);
                obj["invariant_before"] = Value::Array(v0.iter().map(|(_, v)| scalar_json(v, *ctx)).collect());
                obj["invariant_after"] = Value::Array(v1.iter().map(|(_, v)| scalar_json(v, *ctx)).collect());
            }
            writeln!(out, "{obj}").unwrap();
        } else {
            writeln!(out, "presentation: {path}").unwrap();
            writeln!(out, "before:").unwrap();
            out.push_str(&indent(&render(before)));
            writeln!(out, "after:").unwrap();
            out.push_str(&indent(&render(&after)));
            writeln!(out, "signature: {s0} -> {s1}").unwrap();
            if let Some((factor, holds, v0, v1, ctx)) = &check {
                for ((_, a), (_, b)) in v0.iter().zip(v1) {
                    writeln!(out, "invariant: {} -> {}", scalar_text(a, *ctx), scalar_text(b, *ctx)).unwrap();
                }
                writeln!(out, "expected ratio gamma^{}: {}", s1 - s0, scalar_text(factor, *ctx)).unwrap();
                writeln!(out, "ratio holds: {holds}").unwrap();
            }
        }
    }
    Ok((code, out))
}

fn indent(text: &str) -> String {
    if text.is_empty() {
        return "  (empty)\n".into();
    }
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn harness(cfg: &RunConfig) -> Step<(i32, String)> {
    let theory = load_theory(cfg)?;
    let options = match cfg.mutation {
        None => EvalOptions::default(),
        Some(Mutation::Twist) => EvalOptions {
            twist: Some(PhaseTwist {
                element: 1.min(theory.size() - 1),
                shift: 1,
            }),
            ..Default::default()
        },
        Some(Mutation::Normalization) => EvalOptions {
            normalization: Normalization {
                constant: 0,
                per_handlebody: 0,
            },
            ..Default::default()
        },
    };
    let md = minimal_data_with(&theory, options);
    let hc = HarnessConfig {
        seed: cfg.seed,
        budget: cfg.budget,
        ..Default::default()
    };
    let report: Report = if cfg.command == Command::Axioms {
        axiom_check(&md, &hc)
    } else {
        functoriality_check(&md, &hc)
    };
    let code = if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    let out = if cfg.json {
        report.to_json_lines()
    } else {
        let mut s = format!(
            "theory: {}\nseed: {}  budget: {}\n",
            md.oracle().describe(),
            cfg.seed,
            cfg.budget
        );
        s.push_str(&report.summary());
        if let Some(f) = report.failures().next() {
            let ctx = theory.d_squared();
            writeln!(s, "first failure ({}):", f.axiom).unwrap();
            s.push_str(&indent(&f.instance));
            writeln!(
                s,
                "  lhs = {}\n  rhs = {}",
                scalar_text(&f.lhs, ctx),
                scalar_text(&f.rhs, ctx)
            )
            .unwrap();
        }
        s
    };
    Ok((code, out))
}

fn homology(cfg: &RunConfig) -> Step<(i32, String)> {
    let inputs = load_presentations(cfg)?;
    let mut out = String::new();
    for (path, p) in &inputs {
        let sig = signature(p);
        let hom = first_homology(p);
        if cfg.json {
            writeln!(
                out,
                "{}",
                json!({ "presentation": path, "signature": sig, "homology": hom })
            )
            .unwrap();
        } else {
            writeln!(
                out,
                "presentation: {path}\nsignature: {sig}\nhomology: {}",
                homology_text(&hom)
            )
            .unwrap();
        }
    }
    Ok((EXIT_OK, out))
}

/// Parses arguments and runs; clap's own errors map to exit code 1
/// (help and version to 0).
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                RunOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                RunOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}
