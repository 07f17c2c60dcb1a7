//! Command-line front end behind the `toa` binary.
//!
//! Exit codes: 0 proved (or gordan kernel), 1 refuted (or strict dual),
//! 2 unknown, 3 usage or input error.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::alternatives::{prove_consequence, ConsequenceReport, ProofResult};
use crate::density::{check_density_property, density_transform, DensityInstance};
use crate::formula::{parse, Formula};
use crate::interpolation::lift_interpolant;
use crate::linear::{gordan, IntMatrix};
use crate::logics::{check_toa_condition, lookup_logic, LogicSpec};
use crate::oracles::{Budget, Countermodel, MultWitness, OracleVerdict};

pub const EXIT_PROVED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "toa", version, about = "Decide consequence in logics with a theorem of alternatives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Logic name; overrides a `logic` line in the file.
    #[arg(long)]
    logic: Option<String>,
    /// Cap on the coefficient sum, also scaling the derivation budget.
    #[arg(long)]
    budget: Option<u64>,
    /// Half-width of the Sugihara decision chains.
    #[arg(long)]
    chain_bound: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide `assume` lines ⊢ `prove` line.
    Prove {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Gordan's alternative for an integer matrix (rows on lines).
    Gordan {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Uniform interpolant of the `assume` lines over `--vars`.
    Interpolate {
        file: PathBuf,
        /// Comma-separated variables to keep.
        #[arg(long)]
        vars: String,
        #[command(flatten)]
        common: Common,
    },
    /// Transform a certificate for (phi -> p) | (p -> psi) | chi, or
    /// sample random instances with `--samples`.
    Density {
        file: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Check (n p)^k -> m (p^n) for n up to `--n-max`.
    CheckToa {
        #[arg(long, default_value_t = 6)]
        n_max: u64,
        /// Witness `n:k:m`; repeatable. Defaults to 1:1 for other n.
        #[arg(long = "witness")]
        witnesses: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
}

/// Parsed problem file.
#[derive(Debug, Default)]
pub struct Problem {
    pub logic: Option<String>,
    pub assume: Vec<Formula>,
    pub prove: Option<Formula>,
    pub phi: Option<Formula>,
    pub psi: Option<Formula>,
    pub chi: Option<Formula>,
    pub fresh: Option<String>,
}

/// Lines `logic <name>`, `assume <formula>`, `prove <formula>` (and for
/// density `phi`, `psi`, `chi`, `fresh`); `#` starts a comment.
pub fn parse_problem(text: &str) -> Result<Problem, String> {
    let mut p = Problem::default();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let err = |m: String| format!("line {}: {m}", no + 1);
        let formula = || parse(rest).map_err(|e| err(e.to_string()));
        let once = |slot: &Option<Formula>, name: &str| {
            if slot.is_some() {
                Err(err(format!("duplicate '{name}' line")))
            } else {
                Ok(())
            }
        };
        match key {
            "logic" => p.logic = Some(rest.to_string()),
            "assume" => p.assume.push(formula()?),
            "prove" => {
                once(&p.prove, "prove")?;
                p.prove = Some(formula()?);
            }
            "phi" => {
                once(&p.phi, "phi")?;
                p.phi = Some(formula()?);
            }
            "psi" => {
                once(&p.psi, "psi")?;
                p.psi = Some(formula()?);
            }
            "chi" => {
                once(&p.chi, "chi")?;
                p.chi = Some(formula()?);
            }
            "fresh" => p.fresh = Some(rest.to_string()),
            other => return Err(err(format!("unknown directive '{other}'"))),
        }
    }
    Ok(p)
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Runs the CLI with `args` (including the program name).
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PROVED };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Usage> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
    }
}

fn setup(common: &Common, file_logic: Option<&str>) -> Result<(LogicSpec, Budget), Usage> {
    let name = common.logic.as_deref().or(file_logic).ok_or_else(|| Usage("no logic given".into()))?;
    let logic = lookup_logic(name)?;
    let mut budget = common.budget.map_or_else(Budget::default, Budget::scaled);
    budget.chain_bound = common.chain_bound;
    Ok((logic, budget))
}

fn emit(out: &mut dyn Write, format: Format, text: String, value: Value) -> Result<(), Usage> {
    match format {
        Format::Text => write!(out, "{text}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?,
    }
    Ok(())
}

fn run(cmd: Command, out: &mut dyn Write) -> Result<i32, Usage> {
    match cmd {
        Command::Prove { file, common } => {
            let p = parse_problem(&read(&file)?)?;
            let (logic, budget) = setup(&common, p.logic.as_deref())?;
            let goal = p.prove.ok_or_else(|| Usage("missing 'prove' line".into()))?;
            let report = prove_consequence(&logic, &p.assume, &goal, &budget)?;
            emit(out, common.format, prove_text(&logic, &report), prove_json(&logic, &report))?;
            Ok(status_code(report.status()))
        }
        Command::Gordan { file, format } => {
            let m = IntMatrix::parse(&read(&file)?)?;
            let r = gordan(&m);
            let v: Vec<String> = r.vector().iter().map(ToString::to_string).collect();
            let text = format!("branch: {}\nvector: {}\n", r.branch_name(), v.join(" "));
            let value = json!({ "branch": r.branch_name(), "vector": r.vector().iter().map(int).collect::<Vec<_>>() });
            emit(out, format, text, value)?;
            Ok(if r.branch_name() == "kernel" { EXIT_PROVED } else { EXIT_REFUTED })
        }
        Command::Interpolate { file, vars, common } => {
            let p = parse_problem(&read(&file)?)?;
            let (logic, budget) = setup(&common, p.logic.as_deref())?;
            let keep: BTreeSet<String> = vars.split(',').map(str::trim).filter(|v| !v.is_empty()).map(String::from).collect();
            let pi = lift_interpolant(&logic, &p.assume, &keep, &budget)?;
            let mut text = format!("logic: {}\ninterpolant ({} formulas):\n", logic.name, pi.len());
            for f in &pi {
                text.push_str(&format!("  {f}\n"));
            }
            let value = json!({
                "logic": logic.name,
                "vars": keep,
                "interpolant": pi.iter().map(Formula::render).collect::<Vec<_>>(),
            });
            emit(out, common.format, text, value)?;
            Ok(EXIT_PROVED)
        }
        Command::Density { file, samples, seed, common } => match (file, samples) {
            (Some(file), _) => density_file(&file, &common, out),
            (None, Some(n)) => {
                let (logic, budget) = setup(&common, None)?;
                let r = match check_density_property(&logic, n, seed, &budget) {
                    Ok(r) => r,
                    Err(e @ crate::density::DensityError::PreconditionFailed(_)) => {
                        let text = format!("status: precondition-failed\n{e}\n");
                        emit(out, common.format, text, json!({ "status": "precondition-failed", "logic": logic.name }))?;
                        return Ok(EXIT_REFUTED);
                    }
                    Err(e) => return Err(e.into()),
                };
                let text = format!(
                    "logic: {}\nattempted: {}\naccepted: {}\nfailures: {}\n{}",
                    logic.name,
                    r.attempted,
                    r.accepted,
                    r.failures.len(),
                    r.failures.iter().map(|f| format!("  {f}\n")).collect::<String>()
                );
                let value = json!({
                    "logic": logic.name, "attempted": r.attempted, "accepted": r.accepted, "failures": r.failures,
                });
                emit(out, common.format, text, value)?;
                Ok(if r.failures.is_empty() { EXIT_PROVED } else { EXIT_REFUTED })
            }
            (None, None) => Err(Usage("density needs a problem file or --samples".into())),
        },
        Command::CheckToa { n_max, witnesses, common } => {
            let (logic, budget) = setup(&common, None)?;
            let ws = witnesses
                .iter()
                .map(|w| {
                    let parts: Vec<u64> = w.split(':').map(str::parse).collect::<Result<_, _>>().map_err(|_| Usage(format!("bad witness '{w}'")))?;
                    match parts[..] {
                        [n, k, m] => Ok((n, k, m)),
                        _ => Err(Usage(format!("bad witness '{w}', expected n:k:m"))),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            let report = check_toa_condition(&logic, n_max, &ws, &budget);
            let mut text = format!("logic: {}\n", logic.name);
            for e in &report.entries {
                text.push_str(&format!("n={} k={} m={} {}: {}\n", e.n, e.k, e.m, e.formula, e.verdict.status()));
            }
            let entries: Vec<Value> = report
                .entries
                .iter()
                .map(|e| {
                    let mut v = json!({
                        "n": e.n, "k": e.k, "m": e.m, "formula": e.formula.render(), "status": e.verdict.status(),
                    });
                    match &e.verdict {
                        OracleVerdict::Proved(w) => v["witness"] = witness_json(w),
                        OracleVerdict::Refuted(cm) => v["countermodel"] = countermodel_json(cm),
                        OracleVerdict::Unknown(r) => v["reason"] = json!(r),
                    }
                    v
                })
                .collect();
            let status = if report.all_proved() {
                "proved"
            } else if report.entries.iter().any(|e| e.verdict.is_refuted()) {
                "refuted"
            } else {
                "unknown"
            };
            text.push_str(&format!("status: {status}\n"));
            emit(out, common.format, text, json!({ "logic": logic.name, "status": status, "entries": entries }))?;
            Ok(status_code(status))
        }
    }
}

fn density_file(file: &PathBuf, common: &Common, out: &mut dyn Write) -> Result<i32, Usage> {
    let p = parse_problem(&read(file)?)?;
    let (logic, budget) = setup(common, p.logic.as_deref())?;
    let inst = DensityInstance {
        hypotheses: p.assume,
        phi: p.phi.ok_or_else(|| Usage("missing 'phi' line".into()))?,
        psi: p.psi.ok_or_else(|| Usage("missing 'psi' line".into()))?,
        chi: p.chi,
        fresh: p.fresh.unwrap_or_else(|| "p".into()),
    };
    let input = inst.input_goal();
    if !crate::density::density_precondition(&logic, &budget) {
        let text = format!("status: precondition-failed\n{} does not prove 1 -> 0\n", logic.name);
        emit(out, common.format, text, json!({ "status": "precondition-failed", "logic": logic.name }))?;
        return Ok(EXIT_REFUTED);
    }
    let cert = match crate::alternatives::prove_disjunction(&logic, &input, &budget)? {
        ProofResult::Proved(c) => c,
        other => {
            let status = other.status();
            let text = format!("status: input-{status}\ninput goal: {input}\n");
            emit(out, common.format, text, json!({ "status": format!("input-{status}"), "input": input.to_string() }))?;
            return Ok(status_code(status));
        }
    };
    let outc = density_transform(&logic, &inst, &cert, &budget)?;
    let output = inst.output_goal();
    let text = format!(
        "status: proved\ninput goal: {input}\ninput lambdas: {:?}\noutput goal: {output}\noutput lambdas: {:?}\nwitness: {}\n",
        cert.lambdas, outc.lambdas, outc.witness
    );
    let value = json!({
        "status": "proved",
        "input": { "goal": input.to_string(), "lambdas": cert.lambdas },
        "output": {
            "hypotheses": output.hypotheses.iter().map(Formula::render).collect::<Vec<_>>(),
            "disjuncts": output.clause.disjuncts.iter().map(Formula::render).collect::<Vec<_>>(),
            "lambdas": outc.lambdas,
            "witness": witness_json(&outc.witness),
        },
    });
    emit(out, common.format, text, value)?;
    Ok(EXIT_PROVED)
}

fn status_code(status: &str) -> i32 {
    match status {
        "proved" => EXIT_PROVED,
        "refuted" => EXIT_REFUTED,
        _ => EXIT_UNKNOWN,
    }
}

fn int(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

pub fn witness_json(w: &MultWitness) -> Value {
    match w {
        MultWitness::Linear { mu, scale } => json!({
            "kind": "linear", "mu": mu.iter().map(int).collect::<Vec<_>>(), "scale": int(scale),
        }),
        MultWitness::ChainExhaustive { half_width, chains } => json!({
            "kind": "chain-exhaustive", "half_width": half_width, "chains": chains,
        }),
        MultWitness::Derivation(d) => json!({
            "kind": "derivation", "lines": d.to_string().lines().collect::<Vec<_>>(),
        }),
    }
}

pub fn countermodel_json(cm: &Countermodel) -> Value {
    json!({ "chain": cm.chain.to_string(), "valuation": cm.valuation })
}

fn prove_text(logic: &LogicSpec, r: &ConsequenceReport) -> String {
    let mut s = format!("logic: {}\nstatus: {}\n", logic.name, r.status());
    for (i, (g, res)) in r.goals.iter().enumerate() {
        s.push_str(&format!("goal {}: {}\n", i + 1, g));
        match res {
            ProofResult::Proved(c) => {
                s.push_str(&format!("  proved: {c}\n"));
            }
            ProofResult::Refuted(cm) => s.push_str(&format!("  refuted: countermodel {cm}\n")),
            ProofResult::Unknown(why) => s.push_str(&format!("  unknown: {why}\n")),
        }
    }
    s
}

fn prove_json(logic: &LogicSpec, r: &ConsequenceReport) -> Value {
    let goals: Vec<Value> = r
        .goals
        .iter()
        .map(|(g, res)| {
            let mut v = json!({
                "hypotheses": g.hypotheses.iter().map(Formula::render).collect::<Vec<_>>(),
                "disjuncts": g.clause.disjuncts.iter().map(Formula::render).collect::<Vec<_>>(),
                "status": res.status(),
            });
            match res {
                ProofResult::Proved(c) => {
                    v["lambdas"] = json!(c.lambdas);
                    v["witness"] = witness_json(&c.witness);
                }
                ProofResult::Refuted(cm) => v["countermodel"] = countermodel_json(cm),
                ProofResult::Unknown(why) => v["reason"] = json!(why),
            }
            v
        })
        .collect();
    let mut v = json!({ "logic": logic.name, "status": r.status(), "goals": goals });
    if let Some(cm) = r.countermodel() {
        v["countermodel"] = countermodel_json(cm);
    }
    v
}
