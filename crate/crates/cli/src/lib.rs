//! Command-line front end. `run` takes the full argument vector (program
//! name first) and returns the exit code with everything meant for stdout.
//!
//! Exit codes: 0 on logical success, 1 on logical failure, 2 on usage,
//! parse, input or budget errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use six_core::algebra::{audit_identities, BuiltinAlgebra, FiniteAlgebra};
use six_core::lfi::{dat_check, lfi_audit, LawCheck};
use six_core::normalform::{block_count, to_conjunctive_form_with};
use six_core::semantics::{check_variable_budget, entails_degree, truth_table};
use six_core::sequent::{check_proof, expand_macros, proof_from_json, prove_with, ProverOptions};
use six_core::syntax::parse_entailment;
use six_core::{parse_formula, NfOptions, ProofOutcome, Sequent};

#[derive(Debug, Parser)]
#[command(name = "six", version, about = "Six-valued logic of involutive Stone algebras")]
struct Cli {
    /// Built-in algebra (S6, L2..L5, B4) or path to a table file.
    #[arg(long, global = true, default_value = "S6")]
    algebra: String,
    /// Largest number of distinct variables a query may use.
    #[arg(long, global = true, default_value_t = 8)]
    max_vars: usize,
    /// Largest number of blocks a conjunctive form may have.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_blocks: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Print proofs with every macro node expanded into primitive rules.
    #[arg(long, global = true)]
    expand_macros: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Structured,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree-preserving entailment: "G1, G2 |= a".
    Check { query: String },
    /// Truth table of a formula in carrier order.
    Table { formula: String },
    /// Conjunctive normal form and its block count.
    Nf { formula: String },
    /// Prove a sequent "G => D" or print a countermodel.
    Prove { sequent: String },
    /// Check a proof stored as JSON.
    Verify { file: PathBuf },
    /// Consistency operator report.
    Lfi {
        #[command(subcommand)]
        action: LfiAction,
    },
    /// Same as `lfi audit`.
    LfiAudit,
    /// Compare a classical query with its consistency-adjusted version.
    Dat { query: String },
    /// Check the defining identities on the selected algebra.
    AlgebraAudit,
}

#[derive(Debug, Subcommand)]
enum LfiAction {
    Audit,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(i32, String), Failure>;

pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(Failure(msg)) => (2, format!("error: {msg}\n")),
    }
}

fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check { query } => check(cli, query),
        Command::Table { formula } => table(cli, formula),
        Command::Nf { formula } => nf(cli, formula),
        Command::Prove { sequent } => prove(cli, sequent),
        Command::Verify { file } => verify(cli, file),
        Command::Lfi { action: LfiAction::Audit } | Command::LfiAudit => audit_lfi(cli),
        Command::Dat { query } => dat(cli, query),
        Command::AlgebraAudit => audit_algebra(cli),
    }
}

fn load_algebra(spec: &str) -> Result<FiniteAlgebra, Failure> {
    if let Ok(b) = spec.parse::<BuiltinAlgebra>() {
        return Ok(FiniteAlgebra::builtin(b));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Failure(format!("`{spec}` is neither a built-in algebra nor a readable file: {e}")))?;
    Ok(FiniteAlgebra::from_table_text(&text)?)
}

/// Commands that only make sense over the six-element algebra.
fn require_s6(cli: &Cli, command: &str) -> Result<(), Failure> {
    match cli.algebra.parse::<BuiltinAlgebra>() {
        Ok(BuiltinAlgebra::S6) => Ok(()),
        _ => Err(Failure(format!("`{command}` works over S6 only"))),
    }
}

fn structured(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

fn check(cli: &Cli, query: &str) -> Outcome {
    let algebra = load_algebra(&cli.algebra)?;
    let (premises, goal) = parse_entailment(query)?;
    check_variable_budget(premises.iter().chain([&goal]), cli.max_vars)?;
    let result = entails_degree(&premises, &goal, &algebra);
    if let Some(cm) = &result.countermodel {
        if !cm.refutes(&premises, std::slice::from_ref(&goal), &algebra) {
            return Err(Failure(format!("internal error: countermodel {cm} does not refute the query")));
        }
    }
    let code = if result.holds { 0 } else { 1 };
    let text = match cli.format {
        Format::Structured => structured(json!({
            "query": query,
            "algebra": algebra.name(),
            "holds": result.holds,
            "countermodel": result.countermodel,
        })),
        Format::Plain => match &result.countermodel {
            None => "VALID\n".to_string(),
            Some(cm) => format!("INVALID  {cm}\n"),
        },
    };
    Ok((code, text))
}

fn table(cli: &Cli, formula: &str) -> Outcome {
    let algebra = load_algebra(&cli.algebra)?;
    let f = parse_formula(formula)?;
    check_variable_budget([&f], cli.max_vars)?;
    let t = truth_table(&f, &algebra);
    if cli.format == Format::Structured {
        return Ok((0, structured(json!({ "formula": f, "algebra": algebra.name(), "table": t }))));
    }
    let width = algebra.values().iter().map(|v| v.name().len()).max().unwrap_or(1);
    let width = t.vars.iter().map(String::len).fold(width, usize::max);
    let mut out = String::new();
    for v in &t.vars {
        let _ = write!(out, "{v:<width$}  ");
    }
    let _ = writeln!(out, "| {}", formula.trim());
    for row in &t.rows {
        for x in &row.inputs {
            let _ = write!(out, "{:<width$}  ", x.name());
        }
        let _ = writeln!(out, "| {}", row.value.name());
    }
    Ok((0, out))
}

fn nf(cli: &Cli, formula: &str) -> Outcome {
    require_s6(cli, "nf")?;
    let f = parse_formula(formula)?;
    let opts = NfOptions {
        max_blocks: cli.max_blocks,
        ..NfOptions::default()
    };
    let cf = to_conjunctive_form_with(&f, &opts)?;
    let blocks = block_count(&cf);
    let text = match cli.format {
        Format::Structured => structured(json!({
            "formula": f,
            "form": cf.to_string(),
            "blocks": blocks,
        })),
        Format::Plain => format!("{cf}  blocks={blocks}\n"),
    };
    Ok((0, text))
}

fn prove(cli: &Cli, text: &str) -> Outcome {
    require_s6(cli, "prove")?;
    let s = Sequent::parse(text)?;
    let opts = ProverOptions {
        max_blocks: cli.max_blocks,
        max_vars: cli.max_vars,
        ..ProverOptions::default()
    };
    match prove_with(&s, &opts)? {
        ProofOutcome::Proved(t) => {
            let expanded = expand_macros(&t)?;
            check_proof(&expanded).map_err(|e| Failure(format!("internal error: proof does not check: {e}")))?;
            let shown = if cli.expand_macros { &expanded } else { &t };
            let out = match cli.format {
                Format::Structured => structured(json!({
                    "sequent": s,
                    "outcome": "proved",
                    "proof": shown,
                })),
                Format::Plain => format!("PROVED  {s}\n{}", shown.render()),
            };
            Ok((0, out))
        }
        ProofOutcome::Refuted(cm) => {
            if !cm.refutes(&s.left_vec(), &s.right_vec(), FiniteAlgebra::s6()) {
                return Err(Failure(format!("internal error: countermodel {cm} does not refute {s}")));
            }
            let out = match cli.format {
                Format::Structured => structured(json!({
                    "sequent": s,
                    "outcome": "refuted",
                    "countermodel": cm,
                })),
                Format::Plain => format!("REFUTED  {cm}\n"),
            };
            Ok((1, out))
        }
    }
}

fn verify(cli: &Cli, file: &PathBuf) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
    let tree = proof_from_json(&text)?;
    let checked = expand_macros(&tree).and_then(|t| check_proof(&t).map(|()| t).map_err(Into::into));
    let (code, verdict, detail) = match &checked {
        Ok(t) => (0, "VERIFIED", format!("{} primitive nodes", t.size())),
        Err(e) => (1, "REJECTED", e.to_string()),
    };
    let out = match cli.format {
        Format::Structured => structured(json!({
            "conclusion": tree.conclusion,
            "verified": code == 0,
            "nodes": checked.as_ref().ok().map(|t| t.size()),
            "error": checked.as_ref().err().map(|e| e.to_string()),
        })),
        Format::Plain => format!("{verdict}  {}\n{detail}\n", tree.conclusion),
    };
    Ok((code, out))
}

fn law_line(out: &mut String, c: &LawCheck) {
    let mark = if c.as_expected() { "ok  " } else { "FAIL" };
    let verdict = if c.holds { "holds" } else { "fails" };
    let _ = write!(out, "{mark} {:<28} {:<40} {verdict}", c.name, c.claim);
    if let Some(w) = &c.witness {
        let _ = write!(out, "  ({w})");
    }
    out.push('\n');
}

fn audit_lfi(cli: &Cli) -> Outcome {
    require_s6(cli, "lfi audit")?;
    let report = lfi_audit(3);
    let code = if report.clean() { 0 } else { 1 };
    if cli.format == Format::Structured {
        return Ok((code, structured(json!({ "clean": report.clean(), "report": report }))));
    }
    let mut out = String::from("x     o x   * x\n");
    for row in &report.table {
        let _ = writeln!(out, "{:<5} {:<5} {}", row.value.name(), row.circ.name(), row.bullet.name());
    }
    out.push('\n');
    for c in report.all_checks() {
        law_line(&mut out, c);
    }
    let _ = writeln!(out, "{}", if report.clean() { "CLEAN" } else { "FAILED" });
    Ok((code, out))
}

fn dat(cli: &Cli, query: &str) -> Outcome {
    require_s6(cli, "dat")?;
    let (premises, goal) = parse_entailment(query)?;
    check_variable_budget(premises.iter().chain([&goal]), cli.max_vars)?;
    let outcome = dat_check(&premises, &goal)?;
    let code = if outcome.agree { 0 } else { 1 };
    let word = |b: bool| if b { "VALID" } else { "INVALID" };
    let out = match cli.format {
        Format::Structured => structured(json!({ "query": query, "outcome": outcome })),
        Format::Plain => format!(
            "classical: {}\nwith consistency hypotheses: {}\n{}\n",
            word(outcome.cpl),
            word(outcome.six_with_circ),
            if outcome.agree { "AGREE" } else { "DISAGREE" }
        ),
    };
    Ok((code, out))
}

fn audit_algebra(cli: &Cli) -> Outcome {
    let algebra = load_algebra(&cli.algebra)?;
    let checks = audit_identities(&algebra);
    let clean = checks.iter().all(|c| c.holds);
    let code = if clean { 0 } else { 1 };
    if cli.format == Format::Structured {
        return Ok((code, structured(json!({ "algebra": algebra.name(), "clean": clean, "checks": checks }))));
    }
    let mut out = format!("algebra {} ({} elements)\n", algebra.name(), algebra.size());
    for c in &checks {
        let _ = write!(out, "{:<5} {}", c.name, if c.holds { "holds" } else { "fails" });
        if let Some(w) = &c.witness {
            let names: Vec<&str> = w.iter().map(|v| v.name()).collect();
            let _ = write!(out, "  at ({})", names.join(", "));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{}", if clean { "CLEAN" } else { "FAILED" });
    Ok((code, out))
}
