//! Command-line front end: argument parsing, input loading, dispatch and
//! rendering. [`run`] does all the work so it can be driven from tests.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand};
use dynres_core::betti_check::{admissibility_report, BettiTable};
use dynres_core::graded_res::{
    be_multipliers, classify_family, is_zero_matrix, structure_maps, tor_m11, validate_complex, FamilyLabel,
    GradedComplex,
};
use dynres_core::polyalg::json::{matrix_to_json, poly_to_json};
use dynres_core::polyalg::{Budget, Coeff, GroebnerBudget, SolveBudget};
use dynres_core::repdecomp::{coset_betti_numbers, z1_decomposition};
use dynres_core::schubert::{height_twists, patch_parametrization, schubert_ideal, schubert_resolution, Sigma};
use dynres_core::weyl::{family_count, format_double_cosets, table_grid};
use dynres_core::{DiagramType, Error, Format};
use serde_json::{json, Value};

/// Environment variable selecting a budget profile.
pub const PROFILE_VAR: &str = "DYNRES_BUDGET_PROFILE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dynres",
    version,
    about = "Exact computations for grade-three perfect ideals of Dynkin format",
    after_help = "Exit codes: 0 success, 1 usage or input error, 2 mathematical rejection, 3 budget exhausted.\n\
                  Budget profile: DYNRES_BUDGET_PROFILE=small|default|large scales every cap (small: /10, large: x10)."
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Budget profile (small, default, large); overrides DYNRES_BUDGET_PROFILE.
    #[arg(long, global = true, value_name = "NAME")]
    profile: Option<String>,
    /// Cap on S-polynomial reductions per Gröbner basis [default: 20000 in the default profile].
    #[arg(long, global = true, value_name = "N")]
    groebner_steps: Option<usize>,
    /// Cap on the degree of an unknown entry when lifting [default: 64 in the default profile].
    #[arg(long, global = true, value_name = "D")]
    max_degree: Option<i64>,
    /// Cap on scalar unknowns in one linear system [default: 200000 in the default profile].
    #[arg(long, global = true, value_name = "N")]
    max_unknowns: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the table of double-coset counts #(d,t).
    Table {
        #[arg(long, default_value_t = 5)]
        max_d: usize,
        #[arg(long, default_value_t = 5)]
        max_t: usize,
    },
    /// List the double cosets labelling the families of a format.
    Cosets {
        /// Format as f0,f1,f2,f3.
        #[arg(long, value_parser = parse_format)]
        format: [usize; 4],
    },
    /// Decompose the critical representation over the Levi factor.
    Decompose {
        #[arg(long, value_parser = parse_format)]
        format: [usize; 4],
    },
    /// Graded Betti table checks.
    Betti {
        #[command(subcommand)]
        action: BettiCommand,
    },
    /// Operations on a graded free complex given as JSON.
    Res {
        #[command(subcommand)]
        action: ResCommand,
    },
    /// Explicit Schubert-variety charts.
    Schubert {
        #[command(subcommand)]
        action: SchubertCommand,
    },
    /// Classify a format: diagram, type and family count.
    Format {
        /// Four ranks, separated by spaces or commas.
        #[arg(required = true, num_args = 1..=4)]
        ranks: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
enum BettiCommand {
    /// Necessary conditions on a table {"f":[..],"s1":[..],"s2":[..],"s3":[..]}.
    Check {
        /// Inline JSON, a file path, or - for standard input.
        input: String,
    },
}

#[derive(Debug, Subcommand)]
enum ResCommand {
    /// d∘d = 0, homogeneity, ranks and grade conditions.
    Validate { input: String },
    /// Buchsbaum–Eisenbud multipliers a3, a2, a1.
    Multipliers { input: String },
    /// First structure maps and the multiplication on Tor_1.
    Structure { input: String },
    /// Locate the resolution among the double cosets.
    Classify { input: String },
}

#[derive(Debug, Subcommand)]
enum SchubertCommand {
    /// Chart variables and ideal generators.
    Ideal(ChartArgs),
    /// The resolution of the chart ideal.
    Resolution(ChartArgs),
}

#[derive(Debug, Args)]
struct ChartArgs {
    #[arg(long, value_parser = parse_format)]
    format: [usize; 4],
    /// e, w0, or an explicit word such as s:z1,u,x1.
    #[arg(long, default_value = "w0")]
    sigma: String,
}

fn parse_format(s: &str) -> Result<[usize; 4], String> {
    let parts: Vec<usize> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("`{t}` is not a rank")))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|p: Vec<usize>| format!("a format has four ranks, got {}", p.len()))
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Rejected(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Step = Result<String, Failure>;

/// Runs the command line `args` (program name first). `profile` is the
/// value of the budget-profile environment variable, if set.
pub fn run<I, T>(args: I, profile: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let result = budget_for(&cli.budget, profile).map_err(Failure::Usage).and_then(|b| dispatch(&cli, &b));
    match result {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Rejected(stdout)) => Outcome { code: EXIT_REJECTED, stdout, stderr: String::new() },
        Err(Failure::Lib(e)) => {
            let code = if e.is_budget() {
                EXIT_BUDGET
            } else if matches!(e, Error::Parse(_) | Error::UnknownNode(_)) {
                EXIT_USAGE
            } else {
                EXIT_REJECTED
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn budget_for(args: &BudgetArgs, env: Option<&str>) -> Result<Budget, String> {
    let name = args.profile.as_deref().or(env).unwrap_or("default");
    let base = Budget::profile(name).map_err(|e| e.to_string())?;
    Ok(Budget {
        groebner: GroebnerBudget { max_steps: args.groebner_steps.unwrap_or(base.groebner.max_steps) },
        solve: SolveBudget {
            max_degree: args.max_degree.unwrap_or(base.solve.max_degree),
            max_unknowns: args.max_unknowns.unwrap_or(base.solve.max_unknowns),
        },
    })
}

fn dispatch(cli: &Cli, budget: &Budget) -> Step {
    let json = cli.json;
    match &cli.command {
        Command::Table { max_d, max_t } => table(*max_d, *max_t, json),
        Command::Cosets { format } => cosets(*format, json),
        Command::Decompose { format } => decompose(*format, json),
        Command::Betti { action: BettiCommand::Check { input } } => betti_check(&load(input)?, json),
        Command::Res { action } => {
            let (input, op): (&str, fn(&GradedComplex, &Budget, bool) -> Step) = match action {
                ResCommand::Validate { input } => (input, res_validate),
                ResCommand::Multipliers { input } => (input, res_multipliers),
                ResCommand::Structure { input } => (input, res_structure),
                ResCommand::Classify { input } => (input, res_classify),
            };
            let value = load(input)?;
            let complex = GradedComplex::from_json(value.get("complex").unwrap_or(&value))?;
            op(&complex, budget, json)
        }
        Command::Schubert { action } => match action {
            SchubertCommand::Ideal(args) => chart_ideal(args, json),
            SchubertCommand::Resolution(args) => chart_resolution(args, json),
        },
        Command::Format { ranks } => format_info(&parse_format(&ranks.join(",")).map_err(Failure::Usage)?, json),
    }
}

fn load(input: &str) -> Result<Value, Failure> {
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(input).map_err(|e| Failure::Usage(format!("reading {input}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid JSON: {e}")))
}

fn emit(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn coeff_rows(m: &[Vec<Coeff>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|c| Value::String(c.to_string())).collect())).collect())
}

fn table(max_d: usize, max_t: usize, json: bool) -> Step {
    let grid = table_grid(max_d, max_t)?;
    if json {
        return Ok(emit(&json!({ "max_d": max_d, "max_t": max_t, "rows": grid })));
    }
    let mut out = format!("{:<8}", "#(d,t)");
    for t in 1..=max_t {
        let _ = write!(out, "{:>6}", format!("t={t}"));
    }
    out.push('\n');
    for (d, row) in grid.iter().enumerate() {
        let _ = write!(out, "{:<8}", format!("d={d}"));
        for cell in row {
            let text = cell.map_or_else(|| "--".to_string(), |c| c.to_string());
            let _ = write!(out, "{text:>6}");
        }
        out.push('\n');
    }
    Ok(out)
}

fn dynkin_format(f: [usize; 4]) -> Result<Format, Failure> {
    let format = Format::new(f)?;
    format.require_dynkin()?;
    Ok(format)
}

fn cosets(f: [usize; 4], json: bool) -> Step {
    let format = dynkin_format(f)?;
    let shape = format.shape();
    let (_, table) = format_double_cosets(&format)?;
    let families = if f[0] == 1 { Some(family_count(&format)?) } else { None };
    let rows: Vec<Value> = table
        .cosets()
        .iter()
        .map(|c| {
            let word = c.representative.word();
            json!({
                "word": word.iter().map(|&i| shape.node(i).to_string()).collect::<Vec<_>>(),
                "length": word.len(),
                "levi_dominant_weight": c.levi_dominant_weight,
                "orbit_points": c.members.len(),
                "betti": (f[0] == 1).then(|| coset_betti_numbers(&shape, word)),
            })
        })
        .collect();
    if json {
        return Ok(emit(&json!({
            "format": f,
            "diagram": shape.to_string(),
            "cosets": rows,
            "families_with_exact_betti_numbers": families,
        })));
    }
    let mut out = format!("format {f:?}: {shape}, {} double cosets\n", rows.len());
    for c in table.cosets() {
        let word = c.representative.word();
        let label = if word.is_empty() { "e".to_string() } else { c.representative.word_labels(&shape) };
        let _ = write!(out, "  {label:<40} points {:>4}", c.members.len());
        if f[0] == 1 {
            let _ = write!(out, "  betti {:?}", coset_betti_numbers(&shape, word));
        }
        out.push('\n');
    }
    if let Some(n) = families {
        let _ = writeln!(out, "families with Betti numbers exactly {f:?}: {n}");
    }
    Ok(out)
}

fn decompose(f: [usize; 4], json: bool) -> Step {
    let format = dynkin_format(f)?;
    let d = z1_decomposition(&format)?;
    if json {
        let components: Vec<Value> = d
            .components
            .iter()
            .map(|c| {
                json!({
                    "degree": c.degree,
                    "label": c.label(),
                    "f3_dual": c.f3_dual.parts(),
                    "f1": c.f1.parts(),
                    "multiplicity": c.multiplicity,
                    "dimension": c.dimension,
                    "extremal": c.extremal,
                })
            })
            .collect();
        return Ok(emit(&json!({ "format": f, "dimension": d.total_dimension(), "components": components })));
    }
    let mut out = format!("format {f:?}: dimension {}\n", d.total_dimension());
    for c in &d.components {
        let mult = if c.multiplicity > 1 { format!(" (x{})", c.multiplicity) } else { String::new() };
        let tag = if c.extremal { "extremal" } else { "" };
        let _ = writeln!(out, "  j={}  {:<32} dim {:>5}{mult}  {tag}", c.degree, c.label(), c.dimension);
    }
    Ok(out)
}

fn betti_check(value: &Value, json: bool) -> Step {
    let table: BettiTable =
        serde_json::from_value(value.clone()).map_err(|e| Failure::Usage(format!("Betti table: {e}")))?;
    table.validate()?;
    let report = admissibility_report(&table)?;
    if json {
        return Ok(emit(&json!({ "report": report, "verdict": report.verdict() })));
    }
    let mut out = emit(&serde_json::to_value(&report).expect("report serializes"));
    let _ = writeln!(out, "verdict: {}", report.verdict());
    Ok(out)
}

fn res_validate(c: &GradedComplex, budget: &Budget, json: bool) -> Step {
    let report = validate_complex(c, budget)?;
    if json {
        return Ok(emit(&serde_json::to_value(&report).expect("report serializes")));
    }
    let mut out = format!("format {:?}\n", report.format);
    for check in &report.checks {
        let _ = write!(out, "  {:<36} {:?}", check.name, check.outcome);
        if !check.detail.is_empty() {
            let _ = write!(out, "  ({})", check.detail);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "acyclic: {:?}\ndual acyclic: {:?}", report.acyclic, report.dual_acyclic);
    Ok(out)
}

fn res_multipliers(c: &GradedComplex, budget: &Budget, json: bool) -> Step {
    let m = be_multipliers(c, budget)?;
    if json {
        return Ok(emit(&json!({
            "a3": matrix_to_json(&m.a3),
            "a2": matrix_to_json(&m.a2),
            "a1": matrix_to_json(&m.a1),
        })));
    }
    Ok(format!("a3:\n{}\na2:\n{}\na1:\n{}\n", m.a3, m.a2, m.a1))
}

fn res_structure(c: &GradedComplex, budget: &Budget, json: bool) -> Step {
    let (m, s) = structure_maps(c, budget)?;
    let m11 = if c.is_minimal() { Some(tor_m11(c, &s)?) } else { None };
    if json {
        return Ok(emit(&json!({
            "a1": matrix_to_json(&m.a1),
            "w3_1": matrix_to_json(&s.w3_1),
            "w2_1": matrix_to_json(&s.w2_1),
            "m11": m11.as_deref().map(coeff_rows),
            "m11_zero": m11.as_deref().map(is_zero_matrix),
        })));
    }
    let mut out = format!("a1 = {}\nw3_1:\n{}\nw2_1:\n{}\n", m.a1, s.w3_1, s.w2_1);
    match m11 {
        Some(t) => {
            let _ = writeln!(out, "m11 on Tor_1 ⊗ Tor_1: {}", if is_zero_matrix(&t) { "zero" } else { "nonzero" });
        }
        None => out.push_str("m11 skipped: the complex is not minimal\n"),
    }
    Ok(out)
}

fn res_classify(c: &GradedComplex, budget: &Budget, json: bool) -> Step {
    let label = classify_family(c, budget)?;
    if json {
        return Ok(emit(&serde_json::to_value(&label).expect("label serializes")));
    }
    Ok(match label {
        FamilyLabel::Coset { format, word, betti, m11_zero } => {
            let word = if word.is_empty() { "e".into() } else { word.join(",") };
            let m11 = m11_zero.map_or(String::new(), |z| format!(", m11 {}", if z { "zero" } else { "nonzero" }));
            format!("format {format:?}, Betti numbers {betti:?}: double coset of {word}{m11}\n")
        }
        FamilyLabel::Partial { format, betti, candidates, .. } => {
            let list: Vec<String> = candidates.iter().map(|w| w.join(",")).collect();
            format!("format {format:?}, Betti numbers {betti:?}: one of {}\n", list.join(" | "))
        }
    })
}

fn chart(args: &ChartArgs) -> Result<dynres_core::schubert::SchubertChart, Failure> {
    let format = Format::new(args.format)?;
    let sigma: Sigma = args.sigma.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    Ok(patch_parametrization(&format, &sigma.resolve(&format)?)?)
}

fn chart_ideal(args: &ChartArgs, json: bool) -> Step {
    let chart = chart(args)?;
    let ideal = schubert_ideal(&chart)?;
    if json {
        return Ok(emit(&serde_json::to_value(chart.to_json()).expect("chart serializes")));
    }
    let names = chart.variable_names();
    let mut out = format!("sigma = {}\nvariables: {}\n", sigma_label(&chart), names.join(" "));
    for g in ideal.generators() {
        let _ = writeln!(out, "  {}", g.fmt_with(&names));
    }
    Ok(out)
}

fn chart_resolution(args: &ChartArgs, json: bool) -> Step {
    let chart = chart(args)?;
    let c = schubert_resolution(&chart)?;
    let twists = height_twists(&c);
    if json {
        let mut summary = serde_json::to_value(chart.to_json()).expect("chart serializes");
        summary["generators"] = Value::Array(chart.generators().iter().map(poly_to_json).collect());
        return Ok(emit(&json!({ "chart": summary, "height_twists": twists, "complex": c.to_json() })));
    }
    let names = chart.variable_names();
    let mut out = format!(
        "sigma = {}\nformat {:?}, minimal: {}\nvariables: {}\n",
        sigma_label(&chart),
        c.format(),
        c.is_minimal(),
        names.join(" ")
    );
    for (i, t) in twists.iter().enumerate() {
        let _ = writeln!(out, "s{i}: {t:?}");
    }
    for (i, d) in [c.d1(), c.d2(), c.d3()].into_iter().enumerate() {
        let _ = writeln!(out, "d{}:", i + 1);
        for r in 0..d.rows() {
            let row: Vec<String> = (0..d.cols()).map(|k| d.get(r, k).fmt_with(&names)).collect();
            let _ = writeln!(out, "  [{}]", row.join(", "));
        }
    }
    Ok(out)
}

fn sigma_label(chart: &dynres_core::schubert::SchubertChart) -> String {
    if chart.sigma().is_identity() {
        "e".into()
    } else {
        chart.sigma().word_labels(&chart.format().shape())
    }
}

fn format_info(f: &[usize; 4], json: bool) -> Step {
    let format = Format::new(*f)?;
    let shape = format.shape();
    let kind = shape.classify();
    let dynkin = matches!(kind, DiagramType::Finite(_));
    let families = if dynkin && f[0] == 1 { Some(family_count(&format)?) } else { None };
    let text = if json {
        emit(&json!({
            "format": f,
            "diagram": shape.to_string(),
            "type": kind.to_string(),
            "dynkin": dynkin,
            "families": families,
        }))
    } else {
        let mut s = format!("format {f:?}: diagram {shape}, {kind}\n");
        if let Some(n) = families {
            let _ = writeln!(s, "families with exactly these Betti numbers: {n}");
        }
        if !dynkin {
            let _ = writeln!(s, "not a Dynkin format");
        }
        s
    };
    if dynkin {
        Ok(text)
    } else {
        Err(Failure::Rejected(text))
    }
}
