//! Command-line front end: argument parsing, dispatch, text and JSON output.
//!
//! [`run`] does all the work and returns an [`Outcome`]; the `divfield` binary only
//! prints it and exits with its code.

pub mod fixtures;
pub mod tables;

use crate::algebra_core::parse_rational;
use crate::audit::AuditReport;
use crate::division_fields::{
    classify_all_with, classify_level_with, in_theorem_table, ClassificationReport, ClassifyOptions, CurveFixture,
    Provenance, ALL_LEVELS,
};
use crate::elliptic::WeierstrassCurve;
use crate::families::{self, audit_proof_identities, verify_family_claims, FamilyError};
use crate::frobenius::DEFAULT_PRIME_BOUND;
use crate::matgroups::{audit_borel_lemma, audit_diagonalizability, audit_mod_p2_diagonal};
use clap::{Parser, Subcommand, ValueEnum};
use fixtures::{parse_coefficients, FixtureFile};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;
use tables::RowDiff;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "divfield", version, about = "Abelian division fields of elliptic curves over Q")]
pub struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Extra curves, one `label,a1,a2,a3,a4,a6` per line.
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,
    /// Primes up to this bound feed Frobenius certificates.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME_BOUND)]
    pub prime_bound: u64,
    /// Parameter samples per family.
    #[arg(long, global = true, default_value_t = 25)]
    pub samples: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify Q(E[n]) for one curve.
    Classify {
        /// `a1,a2,a3,a4,a6`, integers or fractions.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "label", conflicts_with = "label")]
        curve: Option<String>,
        /// A fixture label, or `FAMILY@t` for a family member.
        #[arg(long)]
        label: Option<String>,
        /// A level, or `all`.
        #[arg(long, default_value = "all")]
        n: String,
    },
    /// Run exhaustive or sampled audits.
    Audit {
        #[command(subcommand)]
        target: AuditTarget,
    },
    /// Recompute table rows and diff them against the printed values.
    Tables {
        /// Tables to check; all four by default.
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        tables: Vec<u8>,
    },
    /// Inspect the family catalog.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum AuditTarget {
    /// Subgroup audits of GL2 over Z/p and Z/p^2.
    Groups {
        #[arg(long, value_delimiter = ',', default_value = "3")]
        p: Vec<u32>,
        #[arg(long, value_enum)]
        only: Option<GroupAudit>,
    },
    /// Exact polynomial identities behind the family constructions.
    Identities,
    /// Claims of one family, or of every family, on deterministic samples.
    Families {
        #[arg(long)]
        id: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupAudit {
    Borel,
    ModP2Diagonal,
    Diagonalizability,
}

#[derive(Subcommand, Debug)]
pub enum FamilyAction {
    /// Families with their j-lines, claims and the catalog checksum
    List,
    /// The curve of one family at a rational parameter
    Instantiate {
        #[arg(long)]
        id: String,
        /// Integer or fraction
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Check family claims on deterministic samples
    Verify {
        /// One family; all when omitted
        #[arg(long)]
        id: Option<String>,
    },
}

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Exit {
    Success = 0,
    Failure = 1,
    ParseError = 2,
    UnknownLabel = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn from_ok(ok: bool) -> Self {
        if ok {
            Exit::Success
        } else {
            Exit::Failure
        }
    }
}

/// One record of a run report.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ReportEntry {
    Classification(ClassificationReport),
    Audit(AuditReport),
    TableRow(RowDiff),
    Other(Value),
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

/// JSON document printed by `--json`.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub version: String,
    pub tool_version: String,
    pub command: String,
    pub inputs: Value,
    pub reports: Vec<ReportEntry>,
    pub timing: Timing,
}

impl RunReport {
    fn new(command: &str, inputs: Value) -> Self {
        RunReport {
            version: SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            inputs,
            reports: Vec::new(),
            timing: Timing { elapsed_ms: 0 },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The JSON value without the timing field.
    pub fn deterministic_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        v.as_object_mut().unwrap().remove("timing");
        v
    }
}

/// Result of one command.
#[derive(Debug)]
pub struct Outcome {
    pub exit: Exit,
    pub report: Option<RunReport>,
    /// Human-readable output.
    pub text: String,
    /// Message for stderr.
    pub error: Option<String>,
}

impl Outcome {
    fn fail(exit: Exit, msg: impl Into<String>) -> Self {
        Outcome { exit, report: None, text: String::new(), error: Some(msg.into()) }
    }

    /// What the binary prints on stdout.
    pub fn stdout(&self, json: bool) -> String {
        match (&self.report, json) {
            (Some(r), true) => r.to_json() + "\n",
            _ => self.text.clone(),
        }
    }
}

/// Runs the parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Classify { curve, label, n } => cmd_classify(cli, curve.as_deref(), label.as_deref(), n),
        Command::Audit { target } => cmd_audit(cli, target),
        Command::Tables { tables } => cmd_tables(cli, tables),
        Command::Family { action } => cmd_family(cli, action),
    };
    if let Some(r) = out.report.as_mut() {
        r.timing.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    out
}

/// Parses `args` (program name first) and runs; clap usage errors map to exit 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let exit = if e.use_stderr() { Exit::ParseError } else { Exit::Success };
            Outcome { exit, report: None, text: e.to_string(), error: None }
        }
    }
}

fn load_fixtures(cli: &Cli) -> Result<FixtureFile, Outcome> {
    let mut f = FixtureFile::bundled();
    if let Some(path) = &cli.fixtures {
        let extra = FixtureFile::load(path).map_err(|e| Outcome::fail(Exit::ParseError, e.to_string()))?;
        f.merge(extra).map_err(|e| Outcome::fail(Exit::ParseError, e.to_string()))?;
    }
    Ok(f)
}

fn family_error(e: FamilyError) -> Outcome {
    let exit = match e {
        FamilyError::UnknownFamily(_) => Exit::UnknownLabel,
        _ => Exit::ParseError,
    };
    Outcome::fail(exit, e.to_string())
}

/// Resolves `--curve` or `--label`.
fn resolve_curve(cli: &Cli, curve: Option<&str>, label: Option<&str>) -> Result<CurveFixture, Outcome> {
    if let Some(src) = curve {
        let c = parse_coefficients(src).map_err(|e| Outcome::fail(Exit::ParseError, e.to_string()))?;
        return Ok(CurveFixture { label: src.to_string(), curve: c, provenance: Provenance::ExternalDatabase });
    }
    let label = label.expect("clap requires --curve or --label");
    if let Some((id, t)) = label.split_once('@') {
        let t = parse_rational(t).ok_or_else(|| Outcome::fail(Exit::ParseError, format!("bad parameter {t:?}")))?;
        let inst = families::instantiate(id, &t).map_err(family_error)?;
        return Ok(CurveFixture { label: label.to_string(), curve: inst.curve, provenance: Provenance::FamilyInstantiated });
    }
    let fx = load_fixtures(cli)?;
    fx.get(label)
        .cloned()
        .ok_or_else(|| Outcome::fail(Exit::UnknownLabel, format!("unknown label {label}; supply it with --fixtures")))
}

/// An abelian verdict outside the theorem table, or a CM cross-check that disagrees.
pub fn inconsistencies(r: &ClassificationReport) -> Vec<String> {
    let mut out = Vec::new();
    if r.is_abelian() && !in_theorem_table(r.n, &r.group) {
        out.push(format!("n = {}: abelian group {} is not in the table of possible groups", r.n, r.group));
    }
    for e in &r.evidence {
        if e.quote.contains("DISAGREE") {
            out.push(format!("n = {}: {}: {}", r.n, e.cite, e.quote));
        }
    }
    out
}

fn describe_curve(label: &str, e: &WeierstrassCurve) -> String {
    if label == e.coeff_strings().join(",") {
        e.to_string()
    } else {
        format!("{label}: {e}")
    }
}

fn cmd_classify(cli: &Cli, curve: Option<&str>, label: Option<&str>, n: &str) -> Outcome {
    let fx = match resolve_curve(cli, curve, label) {
        Ok(fx) => fx,
        Err(o) => return o,
    };
    let opts = ClassifyOptions { prime_bound: cli.prime_bound, certify: true };
    let reports: Vec<ClassificationReport> = if n == "all" {
        classify_all_with(&fx.curve, &opts).into_values().collect()
    } else {
        let level = match n.parse::<u32>() {
            Ok(v) if ALL_LEVELS.contains(&v) => v,
            _ => return Outcome::fail(Exit::ParseError, format!("--n must be `all` or one of {ALL_LEVELS:?}")),
        };
        vec![classify_level_with(&fx.curve, level, &opts).expect("supported level")]
    };
    let reports: Vec<ClassificationReport> = reports.into_iter().map(|r| r.with_label(&fx.label)).collect();

    let mut text = describe_curve(&fx.label, &fx.curve) + "\n";
    let mut problems = Vec::new();
    for r in &reports {
        writeln!(text, "  {}", r.summary()).unwrap();
        for e in &r.evidence {
            writeln!(text, "      {}: {}", e.cite, e.quote).unwrap();
        }
        problems.extend(inconsistencies(r));
    }
    let abelian: Vec<u32> = reports.iter().filter(|r| r.is_abelian()).map(|r| r.n).collect();
    writeln!(text, "abelian at {abelian:?}").unwrap();
    for p in &problems {
        writeln!(text, "INCONSISTENT {p}").unwrap();
    }
    let mut report = RunReport::new(
        "classify",
        json!({ "label": fx.label, "curve": fx.curve.coeff_strings(), "n": n, "prime_bound": cli.prime_bound }),
    );
    report.reports = reports.into_iter().map(ReportEntry::Classification).collect();
    Outcome { exit: Exit::from_ok(problems.is_empty()), report: Some(report), text, error: None }
}

fn audits_outcome(command: &str, inputs: Value, audits: Vec<AuditReport>) -> Outcome {
    let mut text = String::new();
    for a in &audits {
        let status = if a.passed() { "pass" } else { "FAIL" };
        writeln!(text, "{:<28} {:<14} {:>8} cases  {status}", a.name, a.scope, a.cases).unwrap();
        for c in a.counterexamples.iter().take(10) {
            writeln!(text, "    {c}").unwrap();
        }
        if a.counterexamples.len() > 10 {
            writeln!(text, "    ... {} more", a.counterexamples.len() - 10).unwrap();
        }
    }
    let ok = audits.iter().all(AuditReport::passed);
    let mut report = RunReport::new(command, inputs);
    report.reports = audits.into_iter().map(ReportEntry::Audit).collect();
    Outcome { exit: Exit::from_ok(ok), report: Some(report), text, error: None }
}

fn family_ids(id: Option<&str>) -> Result<Vec<&'static str>, Outcome> {
    match id {
        Some(id) => Ok(vec![families::family(id).map_err(family_error)?.id]),
        None => Ok(families::catalog().iter().map(|f| f.id).collect()),
    }
}

fn verify_families(cli: &Cli, command: &str, id: Option<&str>) -> Outcome {
    let ids = match family_ids(id) {
        Ok(ids) => ids,
        Err(o) => return o,
    };
    let audits = ids
        .iter()
        .map(|id| verify_family_claims(id, &families::samples(id, cli.samples).expect("catalog id")))
        .collect();
    audits_outcome(command, json!({ "ids": ids, "samples": cli.samples }), audits)
}

fn cmd_audit(cli: &Cli, target: &AuditTarget) -> Outcome {
    match target {
        AuditTarget::Groups { p, only } => {
            if let Some(bad) = p.iter().find(|p| ![3, 5, 7].contains(*p)) {
                return Outcome::fail(Exit::ParseError, format!("--p {bad}: audits cover p = 3, 5, 7"));
            }
            let wants = |g: GroupAudit| only.is_none_or(|o| o == g);
            let mut audits = Vec::new();
            for &p in p {
                if wants(GroupAudit::Borel) {
                    audits.push(audit_borel_lemma(p, 1));
                    audits.push(audit_borel_lemma(p, 2));
                }
                if wants(GroupAudit::ModP2Diagonal) {
                    audits.push(audit_mod_p2_diagonal(p));
                }
                if wants(GroupAudit::Diagonalizability) {
                    audits.push(audit_diagonalizability(p));
                }
            }
            let only = only.map(|o| format!("{o:?}"));
            audits_outcome("audit groups", json!({ "p": p, "only": only }), audits)
        }
        AuditTarget::Identities => audits_outcome("audit identities", json!({}), vec![audit_proof_identities()]),
        AuditTarget::Families { id } => verify_families(cli, "audit families", id.as_deref()),
    }
}

fn cmd_tables(cli: &Cli, which: &[u8]) -> Outcome {
    let fx = match load_fixtures(cli) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let which: Vec<u8> = if which.is_empty() { vec![1, 2, 3, 4] } else { which.to_vec() };
    let mut rows = Vec::new();
    for &t in &which {
        match t {
            1 => rows.extend(tables::diff_cm_table()),
            _ => rows.extend(tables::diff_level_table(t, &fx)),
        }
    }
    let mut text = String::new();
    for r in &rows {
        writeln!(text, "{}", r.line()).unwrap();
    }
    let count = |s: tables::RowStatus| rows.iter().filter(|r| r.status == s).count();
    writeln!(
        text,
        "{} agree, {} agree with erratum, {} disagree, {} skipped",
        count(tables::RowStatus::Agree),
        count(tables::RowStatus::AgreeWithErratum),
        count(tables::RowStatus::Disagree),
        count(tables::RowStatus::Skipped)
    )
    .unwrap();
    let ok = !rows.iter().any(RowDiff::is_failure);
    let fixtures = cli.fixtures.as_ref().map(|p| p.display().to_string());
    let mut report = RunReport::new("tables", json!({ "tables": which, "fixtures": fixtures }));
    report.reports = rows.into_iter().map(ReportEntry::TableRow).collect();
    Outcome { exit: Exit::from_ok(ok), report: Some(report), text, error: None }
}

fn cmd_family(cli: &Cli, action: &FamilyAction) -> Outcome {
    match action {
        FamilyAction::List => {
            let catalog = families::catalog_json();
            let mut text = String::new();
            for f in families::catalog() {
                writeln!(text, "{:<14} {:<8} {} claims", f.id, format!("{:?}", f.source), f.claims.len()).unwrap();
                for c in f.claims {
                    writeln!(text, "    {c}").unwrap();
                }
            }
            writeln!(text, "catalog sha256 {}", families::catalog_checksum()).unwrap();
            let mut report = RunReport::new("family list", json!({ "checksum": families::catalog_checksum() }));
            report.reports = catalog.as_array().unwrap().iter().cloned().map(ReportEntry::Other).collect();
            Outcome { exit: Exit::Success, report: Some(report), text, error: None }
        }
        FamilyAction::Instantiate { id, t } => {
            let Some(tq) = parse_rational(t) else {
                return Outcome::fail(Exit::ParseError, format!("bad parameter {t:?}"));
            };
            let inst = match families::instantiate(id, &tq) {
                Ok(i) => i,
                Err(e) => return family_error(e),
            };
            let entry = json!({
                "family": inst.family,
                "t": t,
                "curve": inst.curve.coeff_strings(),
                "j": crate::algebra_core::format_rational(&inst.curve.j),
                "twist": inst.twist.as_ref().map(|d| d.to_string()),
            });
            let mut text = format!("{}@{}: {}\n  j = {}\n", inst.family, t, inst.curve, entry["j"].as_str().unwrap());
            if let Some(d) = &inst.twist {
                writeln!(text, "  twist by {d}").unwrap();
            }
            writeln!(text, "  fixture line: {}@{},{}", inst.family, t, inst.curve.coeff_strings().join(",")).unwrap();
            let mut report = RunReport::new("family instantiate", json!({ "id": id, "t": t }));
            report.reports.push(ReportEntry::Other(entry));
            Outcome { exit: Exit::Success, report: Some(report), text, error: None }
        }
        FamilyAction::Verify { id } => verify_families(cli, "family verify", id.as_deref()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> Outcome {
        run_args(std::iter::once("divfield").chain(args.iter().copied()))
    }

    #[test]
    fn classify_exit_codes() {
        let o = run_cli(&["classify", "--curve", "0,-1,1,-10,-20", "--n", "5"]);
        assert_eq!(o.exit, Exit::Success, "{o:?}");
        assert!(o.text.contains("Z/4") && o.text.contains("cyclotomic"), "{}", o.text);
        assert_eq!(run_cli(&["classify", "--curve", "0,0,0,0,0"]).exit, Exit::ParseError);
        assert_eq!(run_cli(&["classify", "--curve", "0,0,1,-1,-10,-20", "--n", "5"]).exit, Exit::ParseError);
        assert_eq!(run_cli(&["classify", "--label", "nosuch1"]).exit, Exit::UnknownLabel);
        assert_eq!(run_cli(&["classify", "--label", "Xnope@2"]).exit, Exit::UnknownLabel);
        assert_eq!(run_cli(&["classify", "--label", "11a1", "--n", "13"]).exit, Exit::ParseError);
        assert_eq!(run_cli(&["classify"]).exit, Exit::ParseError);
    }

    #[test]
    fn classify_family_member() {
        let o = run_cli(&["classify", "--label", "X(3)@2", "--n", "3", "--json"]);
        assert_eq!(o.exit, Exit::Success);
        let v: Value = serde_json::from_str(&o.stdout(true)).unwrap();
        assert_eq!(v["reports"][0]["group"], "Z/2");
        assert_eq!(v["reports"][0]["label"], "X(3)@2");
    }

    #[test]
    fn json_is_deterministic() {
        let a = run_cli(&["classify", "--label", "19a1", "--n", "3", "--json"]).report.unwrap();
        let b = run_cli(&["classify", "--label", "19a1", "--n", "3", "--json"]).report.unwrap();
        assert_eq!(a.deterministic_json(), b.deterministic_json());
        let v = a.deterministic_json();
        assert_eq!(v["version"], SCHEMA_VERSION);
        assert_eq!(v["reports"][0]["field"]["basis"], json!([-3]));
    }

    #[test]
    fn audit_and_family_commands() {
        assert_eq!(run_cli(&["audit", "identities"]).exit, Exit::Success);
        assert_eq!(run_cli(&["audit", "groups", "--p", "4"]).exit, Exit::ParseError);
        let o = run_cli(&["audit", "groups", "--p", "3", "--only", "borel"]);
        assert_eq!((o.exit, o.report.unwrap().reports.len()), (Exit::Success, 2));
        assert_eq!(run_cli(&["family", "verify", "--id", "nope"]).exit, Exit::UnknownLabel);
        let o = run_cli(&["family", "instantiate", "--id", "X(3)", "--t", "-1/2"]);
        assert_eq!(o.exit, Exit::Success, "{o:?}");
        assert_eq!(run_cli(&["family", "instantiate", "--id", "X(3)", "--t", "x"]).exit, Exit::ParseError);
        let o = run_cli(&["family", "list", "--json"]);
        assert_eq!(o.report.unwrap().reports.len(), families::catalog().len());
    }

    #[test]
    fn tables_with_missing_fixture_file() {
        assert_eq!(run_cli(&["tables", "2", "--fixtures", "/nonexistent/file"]).exit, Exit::ParseError);
        assert_eq!(run_cli(&["tables", "5"]).exit, Exit::ParseError);
    }
}
