//! Command-line front end. The binary is a thin wrapper around [`run_args`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::endo::{generic_endo, numeric_determinants, numeric_instantiate, resolve_bindings, Bindings, SymbolicEndo};
use crate::poly::{Polynomial, Variables};
use crate::report::{analyze, build_report, Report};
use crate::sample::sample_point;
use crate::scalar::{Field, FieldElement, Rational};
use crate::solver::SolverOptions;
use crate::weil::{build_algebra, parse_specs, AlgebraSpec, Element, WeilAlgebra};

#[derive(Parser, Debug, Clone)]
#[command(name = "weilaut", version, about = "Automorphism groups of Weil algebras, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Also write a JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Variable precedence for the monomial order, e.g. "Y>X".
    #[arg(long, global = true)]
    pub precedence: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 16)]
    pub max_branch_depth: usize,
    /// Which algebra of a multi-algebra spec file to use (default: the first).
    #[arg(long, global = true)]
    pub algebra: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Ordered standard monomials.
    Basis { specfile: PathBuf },
    /// Multiplication table of the nilradical basis.
    Table { specfile: PathBuf },
    /// Equations for a generic endomorphism to be an algebra map.
    Constraints { specfile: PathBuf },
    /// Case split into families, components and determinants.
    Solve { specfile: PathBuf },
    /// Numeric check of sampled endomorphisms from a bindings file, or of
    /// the solver's families when no file is given.
    Verify { specfile: PathBuf, bindings: Option<PathBuf> },
    /// Everything, with reference values and discrepancies.
    Report { specfile: PathBuf },
}

impl Command {
    pub fn specfile(&self) -> &Path {
        match self {
            Command::Basis { specfile }
            | Command::Table { specfile }
            | Command::Constraints { specfile }
            | Command::Solve { specfile }
            | Command::Verify { specfile, .. }
            | Command::Report { specfile } => specfile,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
}

/// What a run printed and the exit code it asks for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs. Usage errors give
/// exit code 1; `--help` and `--version` give 0.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match run(&cli) {
            Ok(o) => o,
            Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: 1 },
        },
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: 1 }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: 0 }
            }
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn input_error(path: &Path, message: impl ToString) -> CliError {
    CliError::Input { path: path.display().to_string(), message: message.to_string() }
}

/// Reads the spec file, picks the algebra and applies `--precedence`.
pub fn load_spec(cli: &Cli) -> Result<AlgebraSpec, CliError> {
    let path = cli.command.specfile();
    let specs = parse_specs(&read(path)?).map_err(|e| input_error(path, e))?;
    let mut spec = match &cli.algebra {
        Some(name) => specs
            .into_iter()
            .find(|s| &s.name == name)
            .ok_or_else(|| input_error(path, format!("no algebra named '{name}'")))?,
        None => specs.into_iter().next().ok_or_else(|| input_error(path, "no algebra defined"))?,
    };
    if let Some(p) = &cli.precedence {
        spec.set_precedence_text(p).map_err(|e| input_error(path, e))?;
    }
    Ok(spec)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let spec = load_spec(cli)?;
    let path = cli.command.specfile();
    let algebra = Arc::new(build_algebra(&spec).map_err(|e| input_error(path, e))?);
    let opts = SolverOptions { max_branch_depth: cli.max_branch_depth, ..SolverOptions::default() };
    if let Command::Verify { bindings, .. } = &cli.command {
        return verify(cli, &algebra, bindings.as_deref(), &opts);
    }
    let analysis = analyze(algebra.clone(), &opts);
    let report = build_report(&analysis);
    if let Some(p) = &cli.json {
        write(p, &report.to_json())?;
    }
    let residual = !report.residuals.is_empty();
    let (stdout, code) = match &cli.command {
        Command::Basis { .. } => (report.render_basis(), 0),
        Command::Table { .. } => (render_table(&algebra), 0),
        Command::Constraints { .. } => (report.render_constraints(), 0),
        Command::Solve { .. } => (report.render_solution(), if residual { 2 } else { 0 }),
        Command::Report { .. } => (report.render_full(), if residual { 2 } else { 0 }),
        Command::Verify { .. } => unreachable!(),
    };
    Ok(Outcome { stdout, stderr: String::new(), code })
}

/// Runs the pipeline on a spec without any I/O.
pub fn report_for(spec: &AlgebraSpec, opts: &SolverOptions) -> Result<Report, crate::weil::WeilError> {
    let algebra = Arc::new(build_algebra(spec)?);
    Ok(build_report(&analyze(algebra, opts)))
}

pub fn render_table(alg: &WeilAlgebra) -> String {
    let labels = alg.basis_labels();
    let mut s = format!("dim {}: {}\n", alg.dim(), labels.join(", "));
    let gb: Vec<String> = alg.groebner_basis().elements().iter().map(|p| p.to_string()).collect();
    let _ = writeln!(s, "groebner basis: {}", gb.join(", "));
    let nil = alg.nil_basis();
    for (a, &i) in nil.iter().enumerate() {
        for &j in &nil[a..] {
            let mut coords = vec![FieldElement::int(0); alg.dim()];
            for (k, c) in alg.product_terms(i, j) {
                coords[*k] = FieldElement::rational(c.clone());
            }
            let _ = writeln!(s, "{} * {} = {}", labels[i], labels[j], alg.format_element(&Element::new(coords)));
        }
    }
    s
}

/// A parsed bindings file.
#[derive(Clone, Debug)]
pub struct BindingsFile {
    pub field: Field,
    pub bindings: Bindings,
    pub free: Option<Vec<usize>>,
    pub nonzero: Vec<Polynomial>,
}

fn parse_field(text: &str) -> Option<Field> {
    // c^k = d
    let (lhs, rhs) = text.split_once('=')?;
    let (name, k) = lhs.trim().split_once('^')?;
    let k: u32 = k.trim().parse().ok()?;
    let d: Rational = rhs.trim().parse().ok()?;
    Field::real_root(name.trim(), k, &d).ok()
}

/// Lines `SYMBOL = polynomial`, `free: SYMBOL, ...`, `nonzero: poly, ...`
/// and `field: c^k = d`; `#` starts a comment.
pub fn parse_bindings(text: &str, unknowns: &Variables) -> Result<BindingsFile, String> {
    let mut field = Field::rationals();
    let mut bindings = Bindings::new();
    let mut free = None;
    let mut nonzero_text = Vec::new();
    let mut binding_text = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        let at = |m: String| format!("line {}: {m}", n + 1);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("field:") {
            field = parse_field(rest).ok_or_else(|| at(format!("bad field '{}', expected c^k = d", rest.trim())))?;
        } else if let Some(rest) = line.strip_prefix("free:") {
            let mut list = Vec::new();
            for name in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                list.push(unknowns.index_of(name).ok_or_else(|| at(format!("unknown symbol '{name}'")))?);
            }
            free = Some(list);
        } else if let Some(rest) = line.strip_prefix("nonzero:") {
            for p in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                nonzero_text.push((n, p.to_string()));
            }
        } else if let Some((lhs, rhs)) = line.split_once('=') {
            let name = lhs.trim();
            let k = unknowns.index_of(name).ok_or_else(|| at(format!("unknown symbol '{name}'")))?;
            binding_text.push((n, k, rhs.trim().to_string()));
        } else {
            return Err(at(format!("cannot read '{line}'")));
        }
    }
    for (n, k, rhs) in binding_text {
        let p = Polynomial::parse(&rhs, unknowns, &field).map_err(|e| format!("line {}: {e}", n + 1))?;
        if bindings.insert(k, p).is_some() {
            return Err(format!("line {}: '{}' bound twice", n + 1, unknowns.name(k)));
        }
    }
    let mut nonzero = Vec::new();
    for (n, p) in nonzero_text {
        nonzero.push(Polynomial::parse(&p, unknowns, &field).map_err(|e| format!("line {}: {e}", n + 1))?);
    }
    resolve_bindings(&bindings, unknowns).map_err(|e| e.to_string())?;
    if let Some(list) = &free {
        for k in 0..unknowns.len() {
            if !bindings.contains_key(&k) && !list.contains(&k) {
                return Err(format!("'{}' is neither bound nor declared free", unknowns.name(k)));
            }
        }
    }
    Ok(BindingsFile { field, bindings, free, nonzero })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleResult {
    pub family: usize,
    pub index: usize,
    pub values: BTreeMap<String, String>,
    pub homomorphism: bool,
    pub failing_pair: Option<(String, String)>,
    pub automorphism: bool,
    pub det_full: String,
    pub det_linear: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub seed: u64,
    pub samples: Vec<SampleResult>,
    pub passed: usize,
    pub total: usize,
}

impl SampleResult {
    pub fn passed(&self) -> bool {
        self.homomorphism && self.automorphism
    }
}

/// Samples `n` points of one family and checks each numerically.
pub fn check_samples(
    endo: &SymbolicEndo,
    family: usize,
    field: &Field,
    bindings: &Bindings,
    nonzero: &[Polynomial],
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<SampleResult> {
    let alg = endo.algebra();
    let labels = alg.basis_labels();
    let unknowns = endo.unknowns();
    let mut out = Vec::new();
    for index in 1..=n {
        let Some(values) = sample_point(unknowns, field, bindings, nonzero, rng) else {
            out.push(SampleResult {
                family,
                index,
                values: BTreeMap::new(),
                homomorphism: false,
                failing_pair: None,
                automorphism: false,
                det_full: "no admissible point found".into(),
                det_linear: String::new(),
            });
            break;
        };
        let num = numeric_instantiate(endo, &values).expect("one value per unknown");
        let (d, d1) = numeric_determinants(alg, &num.matrix);
        out.push(SampleResult {
            family,
            index,
            values: (0..unknowns.len()).map(|k| (unknowns.name(k).to_string(), values[k].to_string())).collect(),
            homomorphism: num.is_homomorphism,
            failing_pair: num.failing_pair.map(|(i, j)| (labels[i].clone(), labels[j].clone())),
            automorphism: num.is_automorphism,
            det_full: d.to_string(),
            det_linear: d1.to_string(),
        });
    }
    out
}

fn verify(cli: &Cli, alg: &Arc<WeilAlgebra>, file: Option<&Path>, opts: &SolverOptions) -> Result<Outcome, CliError> {
    let endo = generic_endo(alg, None);
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut results = Vec::new();
    match file {
        Some(path) => {
            let b = parse_bindings(&read(path)?, endo.unknowns()).map_err(|m| input_error(path, m))?;
            results.extend(check_samples(&endo, 1, &b.field, &b.bindings, &b.nonzero, cli.samples, &mut rng));
        }
        None => {
            let analysis = analyze(alg.clone(), opts);
            for (i, f) in analysis.families.iter().enumerate() {
                results.extend(check_samples(
                    &endo,
                    i + 1,
                    &f.field,
                    &f.bindings,
                    &f.strict_nonzero,
                    cli.samples,
                    &mut rng,
                ));
            }
        }
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    let report = VerifyReport {
        algebra: alg.name().to_string(),
        seed: cli.seed,
        total: results.len(),
        passed,
        samples: results,
    };
    if let Some(p) = &cli.json {
        let mut s = serde_json::to_string_pretty(&report).expect("serializable");
        s.push('\n');
        write(p, &s)?;
    }
    let mut s = String::new();
    for r in &report.samples {
        let status = if r.passed() {
            "pass".to_string()
        } else if let Some((a, b)) = &r.failing_pair {
            format!("fail: not multiplicative at ({a}, {b})")
        } else if r.values.is_empty() {
            format!("fail: {}", r.det_full)
        } else {
            "fail: not invertible".to_string()
        };
        let _ = writeln!(
            s,
            "family {} sample {}: {status} (det M = {}, det M1 = {})",
            r.family, r.index, r.det_full, r.det_linear
        );
    }
    let _ = writeln!(s, "{}/{} passed", report.passed, report.total);
    let code = if report.passed == report.total && report.total > 0 { 0 } else { 2 };
    Ok(Outcome { stdout: s, stderr: String::new(), code })
}
