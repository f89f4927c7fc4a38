//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::FilteredComplex;
use crate::catalog::{self, Fixture};
use crate::cover::render_svg;
use crate::diagram::DiagramDescription;
use crate::floer::window_limit_from_env;
use crate::invariants::{alternating_model, check_symmetry, symmetric_coefficients, HfkTable};
use crate::pretzel;
use crate::report::RunReport;
use crate::{analyze, run_diagram, same_named_complex, Checks, Error};

#[derive(Parser, Debug)]
#[command(name = "elevenfloer", version, about = "Knot Floer homology of (1,1)-knots over the integers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute HFK and tau from diagram files.
    Compute(ComputeArgs),
    /// The pretzel knots P(-2, m, n).
    Pretzel(PretzelArgs),
    /// Built-in fixtures.
    Catalog {
        #[command(subcommand)]
        sub: CatalogCommand,
    },
    /// Check every row of the ten-crossing table.
    VerifyTable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long)]
    pub tau: bool,
    #[arg(long)]
    pub genus: bool,
    /// Write the lifted diagram with its bigons. With several inputs the
    /// file stem of each input is appended.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutFormat,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
#[group(id = "mode", multiple = false)]
pub struct PretzelModes {
    #[arg(long)]
    pub closed_form: bool,
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub diagram: bool,
    #[arg(long)]
    pub compare: bool,
}

#[derive(Args, Debug)]
pub struct PretzelArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    #[command(flatten)]
    pub mode: PretzelModes,
    #[arg(long, value_enum, default_value = "text")]
    pub out: OutFormat,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List,
    Show { name: String },
    Export { name: String },
}

/// What a command printed, and its exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, stderr: String::new(), code: 0 }
    }

    fn fail(e: &Error) -> Self {
        Output { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() }
    }
}

/// Parse arguments (including the program name) and run.
pub fn run_args<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Output::ok(text)
            } else {
                Output { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Output {
    match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Pretzel(a) => match cmd_pretzel(a) {
            Ok(s) => Output::ok(s),
            Err(e) => Output::fail(&e),
        },
        Command::Catalog { sub } => match cmd_catalog(sub) {
            Ok(s) => Output::ok(s),
            Err(e) => Output::fail(&e),
        },
        Command::VerifyTable => cmd_verify_table(),
    }
}

/// Read and parse a diagram file; the file stem names unnamed diagrams.
pub fn load_diagram(path: &Path) -> Result<DiagramDescription, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut d = DiagramDescription::from_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if d.name.is_none() {
        d.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(d)
}

fn svg_path(base: &Path, input: &Path, several: bool) -> PathBuf {
    if !several {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let input_stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    base.with_file_name(format!("{stem}-{input_stem}.svg"))
}

struct Computed {
    report: RunReport,
    table: HfkTable,
}

fn compute_one(path: &Path, a: &ComputeArgs, several: bool, limit: usize) -> Result<Computed, Error> {
    let d = load_diagram(path)?;
    let run = run_diagram(&d, limit)?;
    if let Some(base) = &a.svg {
        let svg = render_svg(&run.lifted, Some(&run.bigons));
        let target = svg_path(base, path, several);
        std::fs::write(&target, svg).map_err(|e| Error::Io(format!("{}: {e}", target.display())))?;
    }
    let table = run.analysis.table;
    Ok(Computed { report: RunReport::new(&table, run.analysis.checks), table })
}

fn cmd_compute(a: &ComputeArgs) -> Output {
    let limit = window_limit_from_env();
    let several = a.files.len() > 1;
    let jobs = a.jobs.max(1).min(a.files.len());
    let mut results: Vec<Option<Result<Computed, Error>>> = (0..a.files.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        for (w, chunk) in results.chunks_mut(a.files.len().div_ceil(jobs)).enumerate() {
            let offset = w * a.files.len().div_ceil(jobs);
            s.spawn(move || {
                for (k, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(compute_one(&a.files[offset + k], a, several, limit));
                }
            });
        }
    });
    let mut out = Output::default();
    let mut reports = Vec::new();
    for (path, r) in a.files.iter().zip(results) {
        match r.expect("every input computed") {
            Ok(c) => {
                if a.out == OutFormat::Text {
                    out.stdout.push_str(&c.report.to_text(&c.table, a.tau, a.genus));
                }
                reports.push(c.report);
            }
            Err(e) => {
                let _ = writeln!(out.stderr, "error: {}: {e}", path.display());
                if out.code == 0 {
                    out.code = e.exit_code();
                }
            }
        }
    }
    if a.out == OutFormat::Json {
        out.stdout = if several {
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        } else {
            reports.first().map(RunReport::to_json).unwrap_or_default()
        };
        if !out.stdout.is_empty() {
            out.stdout.push('\n');
        }
    }
    out
}

fn table_checks(t: &HfkTable) -> Checks {
    let mut c = Checks::new();
    c.insert("symmetric".into(), check_symmetry(&t.groups).is_ok());
    c.insert("euler_at_one_is_unit".into(), t.euler_at_one().abs() == 1);
    c.insert("torsion_free".into(), t.is_free());
    c
}

fn emit(table: &HfkTable, checks: Checks, out: OutFormat, header: &str) -> String {
    let r = RunReport::new(table, checks);
    match out {
        OutFormat::Json => r.to_json() + "\n",
        OutFormat::Text => format!("{header}{}", r.to_text(table, true, true)),
    }
}

fn same_table(a: &HfkTable, b: &HfkTable) -> bool {
    a.groups == b.groups && a.tau == b.tau && a.genus == b.genus
}

/// Homology of the explicit pretzel complex, named after the knot.
pub fn pretzel_oracle(m: i64, n: i64) -> Result<(FilteredComplex, HfkTable, Checks), Error> {
    let c = pretzel::oracle_complex(m, n)?;
    let an = analyze(&c, &format!("P(-2,{m},{n})"), None)?;
    Ok((an.complex, an.table, an.checks))
}

/// The geometric engine on the built diagram, generators renamed.
pub fn pretzel_engine(m: i64, n: i64) -> Result<(FilteredComplex, HfkTable, Checks), Error> {
    let d = pretzel::build_diagram(m, n)?;
    let run = run_diagram(&d, window_limit_from_env())?;
    let renamed = pretzel::rename_engine_complex(&run.raw_complex, m, n)?;
    let mut table = run.analysis.table;
    table.name = format!("P(-2,{m},{n})");
    Ok((renamed, table, run.analysis.checks))
}

/// Closed form, oracle and engine must agree; the oracle and engine
/// complexes must agree sign for sign.
pub fn pretzel_compare(m: i64, n: i64) -> Result<(HfkTable, Checks), Error> {
    let closed = pretzel::closed_form(m, n)?;
    let (_, ot, _) = pretzel_oracle(m, n)?;
    let (ec, et, mut checks) = pretzel_engine(m, n)?;
    if !same_table(&closed, &ot) {
        return Err(Error::CompareMismatch("oracle homology differs from the closed form".into()));
    }
    if !same_table(&closed, &et) {
        return Err(Error::CompareMismatch("engine homology differs from the closed form".into()));
    }
    let raw_oracle = pretzel::oracle_complex(m, n)?;
    let strip = |c: &FilteredComplex| {
        let mut c = c.clone();
        for g in &mut c.generators {
            g.maslov = None;
            g.alexander = None;
        }
        c
    };
    if !same_named_complex(&strip(&raw_oracle), &strip(&ec)) {
        return Err(Error::CompareMismatch("engine complex differs from the oracle complex".into()));
    }
    checks.insert("engine_equals_oracle_complex".into(), true);
    checks.insert("oracle_equals_closed_form".into(), true);
    Ok((closed, checks))
}

fn cmd_pretzel(a: &PretzelArgs) -> Result<String, Error> {
    let (m, n) = (a.m, a.n);
    let md = &a.mode;
    if md.compare {
        let (t, checks) = pretzel_compare(m, n)?;
        return Ok(emit(&t, checks, a.out, "oracle = closed-form = engine\n"));
    }
    if md.oracle {
        let (_, t, checks) = pretzel_oracle(m, n)?;
        return Ok(emit(&t, checks, a.out, ""));
    }
    if md.diagram {
        let (_, t, checks) = pretzel_engine(m, n)?;
        return Ok(emit(&t, checks, a.out, ""));
    }
    let t = pretzel::closed_form(m, n)?;
    let checks = table_checks(&t);
    if checks.values().any(|ok| !ok) {
        return Err(Error::Consistency(format!("closed form of P(-2,{m},{n})")));
    }
    Ok(emit(&t, checks, a.out, ""))
}

fn cmd_catalog(sub: &CatalogCommand) -> Result<String, Error> {
    match sub {
        CatalogCommand::List => {
            let mut s = String::new();
            for e in catalog::entries() {
                let _ = writeln!(s, "{}\t{}", e.name, e.kind());
                if let Fixture::TableRow(r) = e.fixture {
                    for alias in r.aliases {
                        let _ = writeln!(s, "{alias}\talias of {}", r.name);
                    }
                }
            }
            Ok(s)
        }
        CatalogCommand::Show { name } => {
            let e = catalog::lookup(name).ok_or_else(|| Error::Parse(format!("no catalog entry named {name}")))?;
            let mut s = String::new();
            if e.name != *name {
                let _ = writeln!(s, "{name} is an alias of {}", e.name);
            }
            match &e.fixture {
                Fixture::TableRow(r) => {
                    let t = r.table();
                    let _ = writeln!(s, "{}", t.name);
                    s.push_str(&t.to_text());
                    let _ = writeln!(s, "tau = {}", r.tau);
                }
                Fixture::Complex(c) => {
                    let an = analyze(c, &e.name, None)?;
                    let _ = writeln!(s, "{}", e.name);
                    for g in &an.complex.generators {
                        let _ = writeln!(
                            s,
                            "{}: M={} A={}",
                            g.name,
                            g.maslov.unwrap_or_default(),
                            g.alexander.unwrap_or_default()
                        );
                    }
                    s.push_str(&an.table.to_text());
                    let _ = writeln!(s, "tau = {}", an.tau);
                }
                Fixture::Diagram(d) => s.push_str(&d.to_json()),
            }
            if !s.ends_with('\n') {
                s.push('\n');
            }
            Ok(s)
        }
        CatalogCommand::Export { name } => {
            let e = catalog::lookup(name).ok_or_else(|| Error::Parse(format!("no catalog entry named {name}")))?;
            let mut s = match &e.fixture {
                Fixture::TableRow(r) => {
                    let t = r.table();
                    let checks = table_checks(&t);
                    RunReport::new(&t, checks).to_json()
                }
                Fixture::Complex(c) => serde_json::to_string_pretty(c).expect("complex serializes"),
                Fixture::Diagram(d) => d.to_json(),
            };
            s.push('\n');
            Ok(s)
        }
    }
}

/// Result of checking the ten-crossing table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableVerification {
    /// Per row: symmetric, `P(1) = +-1`.
    pub rows: BTreeMap<&'static str, (bool, bool)>,
    pub alternating_10_129: bool,
    pub fixture_10_161: bool,
}

impl TableVerification {
    pub fn passed(&self) -> bool {
        self.rows.values().all(|&(s, p)| s && p) && self.alternating_10_129 && self.fixture_10_161
    }
}

pub fn verify_table() -> TableVerification {
    let rows = catalog::table1()
        .iter()
        .map(|r| {
            let t = r.table();
            (r.name, (check_symmetry(&t.groups).is_ok(), t.euler_at_one().abs() == 1))
        })
        .collect();
    let alternating_10_129 = match (catalog::table_row("10_129"), alternating_model(&symmetric_coefficients(&[9, -6, 2]), "10_129")) {
        (Some(r), Ok(model)) => {
            let t = r.table();
            t.groups == model.groups && r.tau == 0 && model.tau == Some(0)
        }
        _ => false,
    };
    let fixture_10_161 = match (catalog::table_row("10_161"), analyze(&catalog::fixture_10_161(), "10_161", None)) {
        (Some(r), Ok(an)) => r.table().groups == an.table.groups && an.tau == r.tau,
        _ => false,
    };
    TableVerification { rows, alternating_10_129, fixture_10_161 }
}

fn cmd_verify_table() -> Output {
    let v = verify_table();
    let mut s = String::new();
    let yes = |b: bool| if b { "ok" } else { "FAIL" };
    for (name, &(sym, p1)) in &v.rows {
        let _ = writeln!(s, "{name}: symmetry {}, P(1)=+-1 {}", yes(sym), yes(p1));
    }
    let good = v.rows.values().filter(|&&(a, b)| a && b).count();
    let _ = writeln!(s, "{good}/{} rows pass symmetry and P(1)=+-1", v.rows.len());
    let _ = writeln!(s, "10_129 equals the alternating model (9, -6, 2), tau = 0: {}", yes(v.alternating_10_129));
    let _ = writeln!(s, "10_161 fixture homology equals its table row: {}", yes(v.fixture_10_161));
    let code = if v.passed() { 0 } else { 2 };
    Output { stdout: s, stderr: String::new(), code }
}
