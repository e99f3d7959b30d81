//! The `specseq` command-line front end.
//!
//! Exit codes: `0` success, `1` a verification campaign found failures,
//! `2` malformed input or usage, `3` the input is not a double complex,
//! `4` an internal consistency check failed, `5` an I/O error.
//!
//! Every command prints either text or, with `--format structured`, a JSON
//! document carrying `"schema": "specseq/1"`. Both are rendered from the
//! same values. Output files are written atomically.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bicomplex::io::{parse_complex, to_document, AnyComplex, ParseError};
use crate::bicomplex::{random_complex, AtomMix, DoubleComplex, Recipe, ValidationReport};
use crate::exactlin::{Field, FieldSpec, Matrix, PrimeField, Rationals};
use crate::filtration::FilteredTotal;
use crate::harness::{run_campaign, Campaign, CampaignError, Property, SCHEMA};
use crate::obstruction::{dd_lemma_report, obstruction_nonempty, ObstructionTable};
use crate::pages::SpectralSequence;
use crate::{with_complex, InternalError};

#[derive(Debug, Parser)]
#[command(name = "specseq", version, about = "Spectral sequences of double complexes, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Complex file to read; standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// File to write; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for `generate` and `verify`; a fresh one is printed when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// The d'd''-lemma forces degeneration at `E_1`.
    Main,
    /// Degeneration page from pages equals the obstruction-set prediction.
    Eqdeg,
    /// `d_r = 0` against the comparison maps `α`, `β`.
    PropAlphaBeta,
    /// Non-isomorphic `α` yields obstruction witnesses.
    LemmaAlpha,
    /// Obstruction sets against `β`.
    LemmaBeta,
}

impl Theorem {
    fn properties(self) -> Vec<Property> {
        match self {
            Theorem::Main => vec![Property::MainTheorem],
            Theorem::Eqdeg => vec![Property::EqDeg],
            Theorem::PropAlphaBeta => vec![Property::PropAlphaBeta],
            Theorem::LemmaAlpha => vec![Property::LemmaAlpha, Property::WitnessSoundness],
            Theorem::LemmaBeta => vec![Property::LemmaBeta, Property::WitnessSoundness],
        }
    }

    fn default_mix(self) -> AtomMix {
        match self {
            Theorem::Main => AtomMix::SquaresAndDots,
            _ => AtomMix::Mixed,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check shapes and the double-complex axioms.
    Validate,
    /// Print the pages `E_0, …, E_{max-r}` with their differentials and `E_∞`.
    Pages {
        /// Last page to print; defaults to one past the cutoff.
        #[arg(long)]
        max_r: Option<usize>,
    },
    /// Print the degeneration page.
    Degeneration,
    /// Check the d'd''-lemma cell by cell.
    Ddlemma,
    /// Print which obstruction sets are nonempty up to the cutoff.
    Obstructions,
    /// Print an element of one obstruction set, or `empty`.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        p: i32,
        #[arg(long, allow_hyphen_values = true)]
        q: i32,
        #[arg(long)]
        r: usize,
    },
    /// Write a random complex.
    Generate {
        /// `squares+dots`, `zigzags` or `mixed`.
        #[arg(long, default_value = "mixed")]
        recipe: String,
        /// `Q`, `F2`, `F3`, ...
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
        #[arg(long, default_value_t = 4)]
        max_atoms: usize,
        /// Keep the direct sum of atoms in its standard basis.
        #[arg(long)]
        no_basis_change: bool,
        /// Same as `--output`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded verification campaign.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Defaults to `squares+dots` for `main`, `mixed` otherwise.
        #[arg(long)]
        recipe: Option<String>,
        /// Comma-separated fields, cycled over the trials.
        #[arg(long, value_delimiter = ',', default_value = "Q,F2,F3")]
        fields: Vec<FieldSpec>,
        /// Directory for shrunk failing complexes.
        #[arg(long)]
        bundle_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("not a double complex: {0}")]
    Invalid(ValidationReport),
    #[error("internal error: {0}")]
    Internal(#[from] InternalError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Internal(_) => 4,
            CliError::Io { .. } => 5,
        }
    }
}

/// A command result in both output modes.
struct Rendered {
    text: String,
    json: Value,
    exit: i32,
}

impl Rendered {
    fn new(text: String, json: Value) -> Self {
        Self { text, json, exit: 0 }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run_with(args: impl IntoIterator<Item = OsString>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli, stderr) {
        Ok(rendered) => {
            let body = match cli.format {
                Format::Text => rendered.text,
                Format::Structured => {
                    let mut s = serde_json::to_string_pretty(&rendered.json).expect("reports always serialize");
                    s.push('\n');
                    s
                }
            };
            match emit(cli.output.as_deref(), &body, stdout) {
                Ok(()) => rendered.exit,
                Err(e) => report_error(&e, cli.format, stderr),
            }
        }
        Err(e) => report_error(&e, cli.format, stderr),
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run_with(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock())
}

fn report_error(e: &CliError, format: Format, stderr: &mut dyn Write) -> i32 {
    let code = e.exit_code();
    let message = match (format, e) {
        (Format::Structured, CliError::Invalid(report)) => {
            let mut s = serde_json::to_string_pretty(&json!({
                "schema": SCHEMA,
                "error": "invalid",
                "validation": validation_json(report),
            }))
            .expect("reports always serialize");
            s.push('\n');
            s
        }
        (Format::Structured, _) => {
            let mut s = serde_json::to_string_pretty(&json!({"schema": SCHEMA, "error": e.to_string(), "exit": code}))
                .expect("reports always serialize");
            s.push('\n');
            s
        }
        (Format::Text, _) => format!("error: {e}\n"),
    };
    let _ = stderr.write_all(message.as_bytes());
    code
}

fn emit(path: Option<&Path>, body: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(path) => write_atomic(path, body),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

/// Writes `body` to a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, body: &str) -> Result<(), CliError> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, body).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(path) => {
            fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
        }
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            Ok(s)
        }
    }
}

fn seed_or_fresh(seed: Option<u64>, stderr: &mut dyn Write) -> u64 {
    seed.unwrap_or_else(|| {
        let seed = rand::random();
        let _ = writeln!(stderr, "seed: {seed}");
        seed
    })
}

fn parse_mix(name: &str) -> Result<AtomMix, CliError> {
    AtomMix::parse(name).ok_or_else(|| {
        CliError::Usage(format!("unknown recipe `{name}` (expected squares+dots, zigzags or mixed)"))
    })
}

fn execute(cli: &Cli, stderr: &mut dyn Write) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Generate { recipe, field, max_atoms, no_basis_change, out } => {
            let mut r = Recipe::new(parse_mix(recipe)?);
            r.max_atoms = *max_atoms;
            r.basis_change = !no_basis_change;
            let seed = seed_or_fresh(cli.seed, stderr);
            let doc = match field {
                FieldSpec::Rationals => to_document(&random_complex(Rationals, seed, &r).complex),
                FieldSpec::PrimeField(p) => {
                    let f = PrimeField::new(*p).map_err(|e| CliError::Usage(e.to_string()))?;
                    to_document(&random_complex(f, seed, &r).complex)
                }
            };
            match out {
                Some(path) => {
                    write_atomic(path, &doc)?;
                    let text = format!("wrote {} (seed {seed})\n", path.display());
                    Ok(Rendered::new(text, json!({"schema": SCHEMA, "written": path.display().to_string(), "seed": seed})))
                }
                None => {
                    let json: Value = serde_json::from_str(&doc).expect("documents are JSON");
                    Ok(Rendered::new(doc, json))
                }
            }
        }
        Command::Verify { theorem, trials, recipe, fields, bundle_dir } => {
            let mix = match recipe {
                Some(name) => parse_mix(name)?,
                None => theorem.default_mix(),
            };
            let seed = seed_or_fresh(cli.seed, stderr);
            let mut campaign = Campaign::new(seed, *trials, Recipe::new(mix), theorem.properties());
            campaign.fields = fields.clone();
            let report = run_campaign(&campaign, bundle_dir.as_deref()).map_err(|e| match e {
                CampaignError::Io { path, source } => CliError::Io { path: path.display().to_string(), source },
                other => CliError::Usage(other.to_string()),
            })?;
            let _ = writeln!(stderr, "wall time: {:.3}s", report.wall_time.as_secs_f64());
            let json: Value = serde_json::from_str(&report.to_json()).expect("reports are JSON");
            let mut rendered = Rendered::new(report.to_text(), json);
            rendered.exit = if report.failures() == 0 { 0 } else { 1 };
            Ok(rendered)
        }
        command => {
            let any = parse_complex(&read_input(cli.input.as_deref())?)?;
            with_complex!(&any, c => analyze(command, c, &any))
        }
    }
}

fn validation_json(report: &ValidationReport) -> Value {
    json!({
        "valid": report.is_valid(),
        "shape_issues": report.shape_issues.iter().map(|s| json!({
            "map": s.map.name(), "p": s.p, "q": s.q,
            "expected": [s.expected.0, s.expected.1], "found": [s.found.0, s.found.1],
        })).collect::<Vec<_>>(),
        "axiom_failures": report.axiom_failures.iter().map(|a| json!({
            "axiom": a.axiom.name(), "p": a.p, "q": a.q, "nonzero": a.nonzero,
        })).collect::<Vec<_>>(),
    })
}

fn matrix_json<F: Field>(m: &Matrix<F>) -> Value {
    json!(crate::bicomplex::io::encode_matrix(m))
}

fn dims_text(out: &mut String, dims: impl IntoIterator<Item = ((i32, i32), usize)>) {
    let entries: Vec<String> = dims.into_iter().map(|((p, q), d)| format!("({p},{q}):{d}")).collect();
    if entries.is_empty() {
        out.push_str("  0\n");
    } else {
        let _ = writeln!(out, "  {}", entries.join(" "));
    }
}

fn analyze<F: Field>(command: &Command, c: &DoubleComplex<F>, any: &AnyComplex) -> Result<Rendered, CliError> {
    let field = any.field_spec();
    let report = c.validate();
    if let Command::Validate = command {
        let json = json!({"schema": SCHEMA, "command": "validate", "field": field, "validation": validation_json(&report)});
        let mut rendered = Rendered::new(format!("{report}\n"), json);
        rendered.exit = if report.is_valid() { 0 } else { 3 };
        return Ok(rendered);
    }
    if !report.is_valid() {
        return Err(CliError::Invalid(report));
    }
    let ft = FilteredTotal::new(c).map_err(|e| CliError::Usage(e.to_string()))?;
    let rendered = match command {
        Command::Pages { max_r } => {
            let last = max_r.unwrap_or(ft.cutoff() + 1);
            let ss = SpectralSequence::compute_through(&ft, last)?;
            let mut text = String::new();
            let mut pages = Vec::new();
            for page in ss.pages() {
                let r = page.r();
                let _ = writeln!(text, "E_{r}:");
                dims_text(&mut text, page.dims());
                let mut diffs = Vec::new();
                for ((p, q), cell) in page.cells() {
                    if cell.differential().is_zero() {
                        continue;
                    }
                    let (tp, tq) = cell.target();
                    let _ = writeln!(text, "  d_{r} ({p},{q}) -> ({tp},{tq}): {}", cell.differential());
                    diffs.push(json!({"p": p, "q": q, "target": [tp, tq], "matrix": matrix_json(cell.differential())}));
                }
                pages.push(json!({"r": r, "dims": dims_json(page.dims()), "differentials": diffs}));
            }
            let inf = ss.infinity();
            text.push_str("E_inf:\n");
            dims_text(&mut text, inf.dims.clone());
            let h: Vec<String> = inf.cohomology.iter().map(ToString::to_string).collect();
            let _ = writeln!(text, "H: [{}]", h.join(", "));
            Rendered::new(
                text,
                json!({"schema": SCHEMA, "command": "pages", "field": field, "cutoff": ft.cutoff(), "pages": pages,
                       "infinity": dims_json(inf.dims.clone()), "cohomology": inf.cohomology}),
            )
        }
        Command::Degeneration => {
            let r = crate::pages::degeneration_page(&ft)?;
            Rendered::new(format!("{r}\n"), json!({"schema": SCHEMA, "command": "degeneration", "degeneration_page": r}))
        }
        Command::Ddlemma => {
            let report = dd_lemma_report(c);
            let mut text = String::new();
            for cell in &report.cells {
                let _ = writeln!(
                    text,
                    "({},{}): im d1 & ker d2 = {}, ker d1 & im d2 = {}, im d1d2 = {}: {}",
                    cell.p,
                    cell.q,
                    cell.im_d1_ker_d2,
                    cell.ker_d1_im_d2,
                    cell.im_d1d2,
                    if cell.pass { "pass" } else { "fail" }
                );
            }
            let _ = writeln!(text, "dd-lemma: {}", if report.passes() { "pass" } else { "fail" });
            Rendered::new(
                text,
                json!({"schema": SCHEMA, "command": "ddlemma", "pass": report.passes(), "cells": report.cells}),
            )
        }
        Command::Obstructions => {
            let table = ObstructionTable::compute(&ft)?;
            let keys: Vec<(i32, i32, usize)> = table.nonempty_keys().collect();
            let mut text = format!("cutoff {}\n", table.cutoff);
            if keys.is_empty() {
                text.push_str("all empty\n");
            }
            for (p, q, r) in &keys {
                let _ = writeln!(text, "E^{{{p},{q}}}_{r} nonempty");
            }
            let _ = writeln!(text, "degeneration page by obstructions: {}", table.degeneration_page());
            let nonempty: Vec<Value> = keys.iter().map(|(p, q, r)| json!({"p": p, "q": q, "r": r})).collect();
            Rendered::new(
                text,
                json!({"schema": SCHEMA, "command": "obstructions", "cutoff": table.cutoff, "nonempty": nonempty,
                       "checked": table.entries.len(), "degeneration_page": table.degeneration_page()}),
            )
        }
        Command::Witness { p, q, r } => match obstruction_nonempty(&ft, *p, *q, *r)? {
            Some(w) => {
                let json: Value = serde_json::from_str(&w.to_document(c.field())).expect("witnesses are JSON");
                Rendered::new(w.render(c.field()), json)
            }
            None => Rendered::new(
                "empty\n".to_string(),
                json!({"schema": SCHEMA, "command": "witness", "p": p, "q": q, "r": r, "empty": true}),
            ),
        },
        Command::Validate | Command::Generate { .. } | Command::Verify { .. } => unreachable!("handled earlier"),
    };
    Ok(rendered)
}

fn dims_json(dims: impl IntoIterator<Item = ((i32, i32), usize)>) -> Value {
    Value::Array(dims.into_iter().map(|((p, q), d)| json!({"p": p, "q": q, "dim": d})).collect())
}
