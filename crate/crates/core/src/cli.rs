//! Command-line front end.
//!
//! Exit codes: 0 for success (or a check that holds), 1 for a check that fails, 2 for usage,
//! parse and evaluation errors. Results go to stdout, diagnostics to stderr.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formula::{parse, Formula};
use crate::koti::{
    build_koti, check_representatives, classify_formula, dilemma_partition, duality_check,
    exhaustiveness, mutual_exclusion, negate_tuple, partition_report, KotiKind, KotiTuple,
    PartitionReport,
};
use crate::many_valued::{
    audit_reference_tables, b4_correspondence, diff_tables, full_table, B4Label, Connective,
    SemanticsId,
};
use crate::predicate::{
    eval_model, parse_monadic, predicate_koti_check, FiniteModel, ModelChecker, DEFAULT_MAX_DOMAIN,
};
use crate::semantics::{Checker, SemanticStatus, Valuation, DEFAULT_MAX_LETTERS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "structured")]
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "catuskoti",
    version,
    about = "Tetralemma tuples under classical, four-valued and finite-model semantics"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest number of sentence letters enumerated exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LETTERS)]
    max_letters: usize,
    /// Largest domain size for finite-model checks.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DOMAIN)]
    max_domain: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula and print its canonical form and letters.
    Parse { formula: String },
    /// Tautology, contradiction, or generic (with witnesses).
    Status { formula: String },
    /// Classical equivalence of two formulas.
    Equiv { p: String, q: String },
    /// Whether the premises entail the conclusion (the last formula).
    Entails {
        #[arg(required = true, num_args = 1..)]
        formulas: Vec<String>,
    },
    /// Whether two formulas are separable.
    Separable { a: String, b: String },
    /// Quadrant of a formula under a valuation pair.
    Classify {
        formula: String,
        #[arg(long)]
        v0: String,
        #[arg(long)]
        v1: String,
    },
    /// Partition formulas by a valuation pair (--v0/--v1) or a single valuation (--v).
    Partition {
        #[arg(required = true, num_args = 1..)]
        formulas: Vec<String>,
        #[arg(long, conflicts_with = "v")]
        v0: Option<String>,
        #[arg(long, conflicts_with = "v")]
        v1: Option<String>,
        #[arg(long)]
        v: Option<String>,
    },
    /// Tetralemma tuples.
    #[command(subcommand)]
    Koti(KotiCommand),
    /// Four-valued tables.
    #[command(subcommand)]
    Mv(MvCommand),
    /// Monadic predicate formulas over finite models.
    #[command(subcommand)]
    Fol(FolCommand),
}

#[derive(Debug, Subcommand)]
enum KotiCommand {
    /// Expand a tuple from its generators.
    Build {
        #[arg(long)]
        kind: KotiKind,
        #[arg(required = true, num_args = 1..=2)]
        generators: Vec<String>,
    },
    /// Exclusivity, exhaustiveness and representatives of a tuple.
    Check {
        #[arg(long)]
        kind: KotiKind,
        #[arg(required = true, num_args = 1..=2)]
        generators: Vec<String>,
        #[arg(long, requires = "v1")]
        v0: Option<String>,
        #[arg(long, requires = "v0")]
        v1: Option<String>,
    },
    /// Negated dual tuple of ~a, ~b against the modified tuple of a, b.
    Duality { a: String, b: String },
}

#[derive(Debug, Subcommand)]
enum MvCommand {
    /// Print a connective's table.
    Table {
        connective: Connective,
        #[arg(long, default_value = "pairing")]
        semantics: SemanticsId,
        /// List (op, x, y, result) tuples instead of the grid.
        #[arg(long)]
        tuples: bool,
    },
    /// Compare the computed pairing tables with the reference transcription.
    Audit,
    /// Cells where two semantics disagree.
    Diff {
        left: SemanticsId,
        right: SemanticsId,
        connective: Connective,
    },
    /// Check the B4 relabeling against the pairing tables.
    B4,
}

#[derive(Debug, Subcommand)]
enum FolCommand {
    /// Evaluate a closed formula in a model over d1..dN.
    Eval {
        formula: String,
        #[arg(long, default_value_t = 1)]
        domain: usize,
        /// Extension as PRED=d1,d2 (repeatable; PRED= for empty).
        #[arg(long = "ext")]
        extensions: Vec<String>,
    },
    /// Equivalence over every model up to --max-domain.
    Equiv { p: String, q: String },
    /// Checks on the predicate instance of the proper tuple.
    Koti,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command's result in both renderings.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub exit_code: i32,
    pub text: String,
    pub structured: Value,
}

impl Output {
    fn new(holds: bool, text: String, structured: Value) -> Self {
        Output {
            exit_code: if holds { 0 } else { 1 },
            text,
            structured,
        }
    }
}

pub fn render_output(output: &Output, format: Format) -> String {
    match format {
        Format::Text => output.text.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&output.structured).expect("values serialize");
            s.push('\n');
            s
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    exit_code: 0,
                    stdout: err.to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let rendered = err.to_string();
                    let line = rendered.lines().next().unwrap_or("error: invalid usage");
                    CommandResult {
                        exit_code: 2,
                        stdout: String::new(),
                        stderr: format!("{line}\n"),
                    }
                }
            };
        }
    };
    match execute(&cli) {
        Ok(output) => CommandResult {
            exit_code: output.exit_code,
            stdout: render_output(&output, cli.format),
            stderr: String::new(),
        },
        Err(err) => CommandResult {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}

fn formula(src: &str) -> Result<Formula> {
    parse(src)
}

fn valuation(src: &str) -> Result<Valuation> {
    src.parse()
}

fn execute(cli: &Cli) -> Result<Output> {
    let checker = Checker::with_max_letters(cli.max_letters);
    match &cli.command {
        Command::Parse { formula: src } => {
            let f = formula(src)?;
            let letters: Vec<String> = f.letters().iter().map(|l| l.to_string()).collect();
            Ok(Output::new(
                true,
                format!("formula: {f}\nletters: {}\n", letters.join(", ")),
                json!({ "formula": f, "letters": letters }),
            ))
        }
        Command::Status { formula: src } => {
            let f = formula(src)?;
            let status = checker.status(&f)?;
            Ok(status_output(&f, &status))
        }
        Command::Equiv { p, q } => {
            let (p, q) = (formula(p)?, formula(q)?);
            let verdict = checker.equivalent(&p, &q)?;
            let mut text = format!("equivalent: {}\n", verdict.holds);
            if let Some(v) = &verdict.counterexample {
                writeln!(text, "counterexample: {v}").unwrap();
            }
            Ok(Output::new(
                verdict.holds,
                text,
                json!({ "formulas": [p, q], "equivalent": verdict.holds, "counterexample": verdict.counterexample }),
            ))
        }
        Command::Entails { formulas } => {
            let parsed = formulas
                .iter()
                .map(|s| formula(s))
                .collect::<Result<Vec<_>>>()?;
            let (conclusion, premises) = parsed.split_last().expect("clap requires one formula");
            let verdict = checker.entails(premises, conclusion)?;
            let mut text = format!("entails: {}\n", verdict.holds);
            if let Some(v) = &verdict.counterexample {
                writeln!(text, "counterexample: {v}").unwrap();
            }
            Ok(Output::new(
                verdict.holds,
                text,
                json!({
                    "premises": premises,
                    "conclusion": conclusion,
                    "entails": verdict.holds,
                    "counterexample": verdict.counterexample,
                }),
            ))
        }
        Command::Separable { a, b } => {
            let (a, b) = (formula(a)?, formula(b)?);
            let witnesses = checker.separable(&a, &b)?;
            let mut text = format!("separable: {}\n", witnesses.is_some());
            if let Some(w) = &witnesses {
                writeln!(text, "v0: {}\nv1: {}", w.v0, w.v1).unwrap();
            }
            Ok(Output::new(
                witnesses.is_some(),
                text,
                json!({ "formulas": [a, b], "separable": witnesses.is_some(), "witnesses": witnesses }),
            ))
        }
        Command::Classify {
            formula: src,
            v0,
            v1,
        } => {
            let f = formula(src)?;
            let (v0, v1) = (valuation(v0)?, valuation(v1)?);
            let quadrant = classify_formula(&f, &v0, &v1)?;
            Ok(Output::new(
                true,
                format!("formula: {f}\nquadrant: {quadrant}\n"),
                json!({ "formula": f, "quadrant": quadrant, "valuations": [v0, v1] }),
            ))
        }
        Command::Partition {
            formulas,
            v0,
            v1,
            v,
        } => {
            let fs = formulas
                .iter()
                .map(|s| formula(s))
                .collect::<Result<Vec<_>>>()?;
            let report = match (v0, v1, v) {
                (None, None, Some(v)) => dilemma_partition(&fs, &valuation(v)?)?,
                (Some(v0), Some(v1), None) => {
                    partition_report(&fs, &valuation(v0)?, &valuation(v1)?)?
                }
                _ => {
                    return Err(Error::InvalidValuation(
                        "partition needs either --v0 and --v1, or --v".into(),
                    ))
                }
            };
            Ok(Output::new(true, partition_text(&report), json!(report)))
        }
        Command::Koti(cmd) => koti_command(cmd, &checker),
        Command::Mv(cmd) => mv_command(cmd),
        Command::Fol(cmd) => fol_command(cmd, cli.max_domain),
    }
}

fn status_output(f: &Formula, status: &SemanticStatus) -> Output {
    let mut text = format!("formula: {f}\nstatus: {}\n", status.name());
    let witnesses = match status {
        SemanticStatus::Generic {
            falsifying,
            satisfying,
        } => {
            writeln!(
                text,
                "falsified by: {falsifying}\nsatisfied by: {satisfying}"
            )
            .unwrap();
            json!({ "falsifying": falsifying, "satisfying": satisfying })
        }
        _ => Value::Null,
    };
    Output::new(
        true,
        text,
        json!({ "formula": f, "status": status.name(), "witnesses": witnesses }),
    )
}

fn partition_text(report: &PartitionReport) -> String {
    let mut text = String::new();
    match report.valuations.as_slice() {
        [v0, v1] => writeln!(text, "v0: {v0}\nv1: {v1}").unwrap(),
        [v] => writeln!(text, "v: {v}").unwrap(),
        _ => {}
    }
    for class in &report.classes {
        writeln!(text, "{}:", class.quadrant).unwrap();
        if class.members.is_empty() {
            text.push_str("  (none)\n");
        }
        for m in &class.members {
            writeln!(text, "  {m}").unwrap();
        }
    }
    text
}

fn build_from_args(kind: KotiKind, generators: &[String]) -> Result<KotiTuple> {
    let gens = generators
        .iter()
        .map(|s| formula(s))
        .collect::<Result<Vec<_>>>()?;
    build_koti(kind, &gens[0], gens.get(1))
}

fn tuple_text(t: &KotiTuple) -> String {
    let mut text = format!("kind: {}\n", t.kind);
    let gens: Vec<String> = t.generators.iter().map(Formula::render).collect();
    writeln!(text, "generators: {}", gens.join("; ")).unwrap();
    for (i, alt) in t.alternatives.iter().enumerate() {
        writeln!(text, "C{}: {alt}", i + 1).unwrap();
    }
    text
}

fn koti_command(cmd: &KotiCommand, checker: &Checker) -> Result<Output> {
    match cmd {
        KotiCommand::Build { kind, generators } => {
            let t = build_from_args(*kind, generators)?;
            Ok(Output::new(true, tuple_text(&t), json!(t)))
        }
        KotiCommand::Check {
            kind,
            generators,
            v0,
            v1,
        } => {
            let t = build_from_args(*kind, generators)?;
            let exclusion = mutual_exclusion(&t, checker)?;
            let exhaustive = exhaustiveness(&t, checker)?;
            let mut text = tuple_text(&t);
            writeln!(text, "exclusive: {}", exclusion.holds).unwrap();
            if let (Some((i, j)), Some(w)) = (exclusion.offending, &exclusion.witness) {
                writeln!(text, "  C{i} and C{j} both hold at {w}").unwrap();
            }
            writeln!(text, "exhaustive: {}", exhaustive.holds).unwrap();
            if let Some(v) = &exhaustive.counterexample {
                writeln!(text, "  no alternative holds at {v}").unwrap();
            }

            let witnesses = match (v0, v1) {
                (Some(v0), Some(v1)) => Some((valuation(v0)?, valuation(v1)?)),
                _ => derived_witnesses(&t, checker)?,
            };
            let representatives = match &witnesses {
                Some((v0, v1)) => {
                    let report = check_representatives(&t, v0, v1)?;
                    let labels: Vec<&str> = report.quadrants.iter().map(|q| q.label()).collect();
                    writeln!(
                        text,
                        "representatives at v0={v0} v1={v1}: {} (distinct: {})",
                        labels.join(", "),
                        report.distinct
                    )
                    .unwrap();
                    json!({ "v0": v0, "v1": v1, "quadrants": report.quadrants, "distinct": report.distinct })
                }
                None => {
                    text.push_str(
                        "representatives: not applicable (hypothesis on generators fails)\n",
                    );
                    Value::Null
                }
            };
            Ok(Output::new(
                exclusion.holds && exhaustive.holds,
                text,
                json!({
                    "tuple": t,
                    "exclusive": exclusion,
                    "exhaustive": exhaustive,
                    "representatives": representatives,
                }),
            ))
        }
        KotiCommand::Duality { a, b } => {
            let (a, b) = (formula(a)?, formula(b)?);
            let verdict = duality_check(&a, &b, checker)?;
            let negated = negate_tuple(&build_koti(
                KotiKind::Dual12,
                &a.clone().not(),
                Some(&b.clone().not()),
            )?);
            let modified = build_koti(KotiKind::Modified7, &a, Some(&b))?;
            let join = |fs: &[Formula]| {
                fs.iter()
                    .map(Formula::render)
                    .collect::<Vec<_>>()
                    .join("; ")
            };
            let mut text = format!(
                "negated dual tuple: {}\nmodified tuple: {}\ncomponentwise equivalent: {}\n",
                join(&negated),
                join(&modified.alternatives),
                verdict.holds
            );
            if let (Some(i), Some(v)) = (verdict.component, &verdict.counterexample) {
                writeln!(text, "  component {i} differs at {v}").unwrap();
            }
            Ok(Output::new(
                verdict.holds,
                text,
                json!({
                    "negated_dual": negated,
                    "modified": modified.alternatives,
                    "equivalent": verdict.holds,
                    "component": verdict.component,
                    "counterexample": verdict.counterexample,
                }),
            ))
        }
    }
}

/// First-witness valuations for the tuple's hypothesis, when it holds.
fn derived_witnesses(t: &KotiTuple, checker: &Checker) -> Result<Option<(Valuation, Valuation)>> {
    match t.generators.as_slice() {
        [a] => Ok(match checker.status(a)? {
            SemanticStatus::Generic {
                falsifying,
                satisfying,
            } => Some((falsifying, satisfying)),
            _ => None,
        }),
        [a, b] => Ok(checker.separable(a, b)?.map(|w| (w.v0, w.v1))),
        _ => Ok(None),
    }
}

fn operands_text(operands: &[impl std::fmt::Display]) -> String {
    operands
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn mv_command(cmd: &MvCommand) -> Result<Output> {
    match cmd {
        MvCommand::Table {
            connective,
            semantics,
            tuples,
        } => {
            let table = full_table(*semantics, *connective)?;
            let text = if *tuples {
                table.render_tuples()
            } else {
                table.render_text()
            };
            Ok(Output::new(
                true,
                text,
                json!({ "semantics": semantics, "connective": connective, "table": table.entries }),
            ))
        }
        MvCommand::Audit => {
            let report = audit_reference_tables();
            let mut text = String::new();
            for table in &report.tables {
                writeln!(
                    text,
                    "{:<2} : {} cells, {} mismatches",
                    table.connective.symbol(),
                    table.cells,
                    table.mismatches.len()
                )
                .unwrap();
                for m in &table.mismatches {
                    let operands: Vec<_> = std::iter::once(m.x).chain(m.y).collect();
                    writeln!(
                        text,
                        "  ({}): printed {}, computed {}",
                        operands_text(&operands),
                        m.printed,
                        m.computed
                    )
                    .unwrap();
                }
            }
            let mismatches: Vec<Value> = report
                .tables
                .iter()
                .flat_map(|t| {
                    t.mismatches.iter().map(move |m| {
                        json!({ "connective": t.connective, "x": m.x, "y": m.y, "printed": m.printed, "computed": m.computed })
                    })
                })
                .collect();
            Ok(Output::new(
                true,
                text,
                json!({ "tables": report.tables, "mismatches": mismatches }),
            ))
        }
        MvCommand::Diff {
            left,
            right,
            connective,
        } => {
            let diff = diff_tables(*left, *right, *connective)?;
            let mut text = format!(
                "{left} vs {right} on {connective}: {} differing cells\n",
                diff.len()
            );
            for d in &diff {
                writeln!(
                    text,
                    "  ({}): {left} {}, {right} {}",
                    operands_text(&d.operands),
                    d.left,
                    d.right
                )
                .unwrap();
            }
            Ok(Output::new(
                true,
                text,
                json!({ "left": left, "right": right, "connective": connective, "differences": diff }),
            ))
        }
        MvCommand::B4 => {
            let report = b4_correspondence();
            let relabeling: Vec<String> = B4Label::ALL
                .iter()
                .map(|l| format!("{l} -> {}", l.to_four_value()))
                .collect();
            let mut text = format!(
                "relabeling: {}\nbijective: {}\n",
                relabeling.join(", "),
                report.bijective
            );
            for c in &report.connectives {
                writeln!(
                    text,
                    "{:<2} : {} cells, {} mismatches",
                    c.connective.symbol(),
                    c.cells,
                    c.mismatches
                )
                .unwrap();
            }
            writeln!(text, "correspondence: {}", report.holds()).unwrap();
            Ok(Output::new(
                report.holds(),
                text,
                json!({
                    "bijective": report.bijective,
                    "connectives": report.connectives,
                    "correspondence": report.holds(),
                }),
            ))
        }
    }
}

fn model_from_args(domain: usize, extensions: &[String]) -> Result<FiniteModel> {
    let mut parsed = Vec::new();
    for ext in extensions {
        let (name, members) = ext
            .split_once('=')
            .ok_or_else(|| Error::InvalidModel(format!("`{ext}` is not PRED=elements")))?;
        let members = members
            .split(',')
            .map(str::trim)
            .filter(|m| !m.is_empty())
            .map(String::from)
            .collect();
        parsed.push((name.trim().to_string(), members));
    }
    FiniteModel::synthetic(domain, parsed)
}

fn fol_command(cmd: &FolCommand, max_domain: usize) -> Result<Output> {
    let checker = ModelChecker::with_max_domain(max_domain);
    match cmd {
        FolCommand::Eval {
            formula: src,
            domain,
            extensions,
        } => {
            let f = parse_monadic(src)?;
            let model = model_from_args(*domain, extensions)?;
            let value = eval_model(&f, &model)?;
            Ok(Output::new(
                true,
                format!("formula: {f}\nmodel: {model}\nvalue: {}\n", u8::from(value)),
                json!({ "formula": f, "model": model, "value": u8::from(value) }),
            ))
        }
        FolCommand::Equiv { p, q } => {
            let (p, q) = (parse_monadic(p)?, parse_monadic(q)?);
            let verdict = checker.equivalent(&p, &q)?;
            let mut text = format!("equivalent on domains 1..{max_domain}: {}\n", verdict.holds);
            if let Some(m) = &verdict.countermodel {
                writeln!(text, "countermodel: {m}").unwrap();
            }
            Ok(Output::new(
                verdict.holds,
                text,
                json!({ "formulas": [p, q], "max_domain": max_domain, "equivalent": verdict.holds, "countermodel": verdict.countermodel }),
            ))
        }
        FolCommand::Koti => {
            let report = predicate_koti_check(max_domain)?;
            let mut text = String::from("instance: A = exists x. F(x), B = exists x. ~F(x)\n");
            for c in &report.components {
                writeln!(
                    text,
                    "C{}: {}  ==  {}: {}",
                    c.index, c.proper, c.reduced, c.verdict.holds
                )
                .unwrap();
            }
            let sat_line = |label: &str, rows: &[crate::predicate::SatisfiabilityAtSize]| {
                let cells: Vec<String> = rows
                    .iter()
                    .map(|s| match &s.witness {
                        Some(m) => format!("n={} yes ({m})", s.size),
                        None => format!("n={} no", s.size),
                    })
                    .collect();
                format!("{label} satisfiable: {}\n", cells.join("; "))
            };
            text.push_str(&sat_line("C3", &report.third_satisfiable));
            text.push_str(&sat_line("C4", &report.fourth_satisfiable));
            writeln!(
                text,
                "exclusive over models: {}",
                report.exclusive_violation.is_none()
            )
            .unwrap();
            writeln!(
                text,
                "exhaustive over models: {}",
                report.exhaustive_violation.is_none()
            )
            .unwrap();
            for d in &report.dualities {
                writeln!(text, "{}: {}", d.name, d.verdict.holds).unwrap();
            }
            for g in &report.redundant_guard {
                writeln!(
                    text,
                    "guarded C{} == C{}: {}",
                    g.index, g.index, g.verdict.holds
                )
                .unwrap();
            }
            writeln!(text, "passed: {}", report.passed()).unwrap();
            let passed = report.passed();
            Ok(Output::new(
                passed,
                text,
                json!({ "report": report, "passed": passed }),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CommandResult {
        run(std::iter::once("catuskoti").chain(args.iter().copied()))
    }

    #[test]
    fn status_tautology() {
        let out = run_args(&["status", "A | ~A"]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("status: tautology"));
    }

    #[test]
    fn parse_error_exits_2_with_one_line() {
        let out = run_args(&["status", "A &"]);
        assert_eq!(out.exit_code, 2);
        assert_eq!(out.stderr.lines().count(), 1);
        assert!(out.stdout.is_empty());
    }

    #[test]
    fn usage_error_exits_2() {
        let out = run_args(&["koti", "build", "--kind", "nonsense", "A"]);
        assert_eq!(out.exit_code, 2);
        assert_eq!(out.stderr.lines().count(), 1);
    }

    #[test]
    fn failed_check_exits_1() {
        let out = run_args(&["equiv", "A", "B"]);
        assert_eq!(out.exit_code, 1);
        assert!(out.stdout.contains("counterexample: A=0,B=1"));
    }

    #[test]
    fn help_exits_0() {
        let out = run_args(&["--help"]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("koti"));
    }
}
