//! Command-line front end: load a quiver, a ring and elements, run one
//! library operation and write a JSON report.
//!
//! Exit status is 0 whenever the evaluation completes (whatever the boolean
//! outcome), 2 on input errors and 3 on budget exhaustion. Errors are written
//! to stderr as `{"error":{"code":..,"message":..}}`.

use std::fs;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{AlgElem, AlgElemJson, AlgebraError, PathAlgebra};
use crate::classify::{
    classify, enumerate_full_families_trivial_idem, full_family_report, one_sided_vanishes,
    strongly_orthogonal, try_standard_form, ClassifyError,
};
use crate::exec::Exec;
use crate::oracle::{
    check_morita, check_special_by_modules, check_split_by_sequences, fullness_bruteforce,
    orthogonality_bruteforce, OracleBudget, OracleError,
};
use crate::quiver::{Quiver, QuiverError, QuiverJson};
use crate::representation::RepError;
use crate::ring::{RingError, RingSpec};

#[derive(Parser, Debug)]
#[command(
    name = "quiver-idem",
    version,
    about = "Classify idempotents of quiver path algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub inputs: Inputs,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Parse the inputs and report basic facts about them.
    Validate,
    /// Idempotent, special, split and central tests for one element.
    Classify,
    /// Standard form of one element, or the first failing condition.
    StandardForm,
    /// Strong orthogonality of two special elements.
    Orthogonal,
    /// Fullness of a family of special elements.
    FullFamily,
    /// All full families of vertex-set idempotents (rings with only 0 and 1 as idempotents).
    EnumerateFamilies,
    /// Search small representations for a subquotient-closure failure.
    OracleSpecial,
    /// Search small representations for a non-split sequence.
    OracleSplit,
    /// Compare Hom spaces with corner-ring intertwiners (acyclic quivers).
    MoritaCheck,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Classify => "classify",
            Command::StandardForm => "standard-form",
            Command::Orthogonal => "orthogonal",
            Command::FullFamily => "full-family",
            Command::EnumerateFamilies => "enumerate-families",
            Command::OracleSpecial => "oracle-special",
            Command::OracleSplit => "oracle-split",
            Command::MoritaCheck => "morita-check",
        }
    }
}

#[derive(Args, Debug, Default, Clone)]
pub struct Inputs {
    /// Quiver JSON file.
    #[arg(long, global = true)]
    pub quiver: Option<PathBuf>,
    /// Base ring: `Fp:5`, `Zn:6`, `Q` or the JSON form.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Element JSON file or inline JSON; repeatable.
    #[arg(long = "element", global = true)]
    pub elements: Vec<String>,
    /// JSON file holding an array of elements.
    #[arg(long, global = true)]
    pub family: Option<PathBuf>,
    /// Total dimension bound for representation enumeration.
    #[arg(long, global = true)]
    pub max_dim: Option<usize>,
    /// Path degree for brute-force checks (default: number of vertices).
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Run oracle sweeps on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorCode {
    Usage,
    Io,
    MalformedJson,
    InvalidQuiver,
    UnknownIdentifier,
    InvalidPath,
    InvalidRing,
    RingIncompatible,
    NotIdempotent,
    NotSpecial,
    CyclicQuiver,
    Budget,
}

impl ErrorCode {
    pub fn exit_status(self) -> i32 {
        match self {
            ErrorCode::Budget => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Error)]
#[error("{message}")]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
}

impl CliError {
    fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"code": self.code, "message": self.message}})
    }
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        let code = match e {
            QuiverError::UnknownVertex(_) | QuiverError::UnknownEdge(_) => {
                ErrorCode::UnknownIdentifier
            }
            QuiverError::NotComposable(..) => ErrorCode::InvalidPath,
            QuiverError::TooManyVertices(..) | QuiverError::TooManyPaths(_) => ErrorCode::Budget,
            _ => ErrorCode::InvalidQuiver,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::new(ErrorCode::InvalidRing, e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Quiver(q) => q.into(),
            AlgebraError::Ring(r) => r.into(),
            AlgebraError::Budget { .. } => CliError::new(ErrorCode::Budget, e.to_string()),
            AlgebraError::AmbientMismatch => {
                CliError::new(ErrorCode::RingIncompatible, e.to_string())
            }
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::NotSpecial { .. } => CliError::new(ErrorCode::NotSpecial, e.to_string()),
            ClassifyError::NontrivialIdempotents(_) => {
                CliError::new(ErrorCode::RingIncompatible, e.to_string())
            }
            ClassifyError::Algebra(a) => a.into(),
            ClassifyError::Quiver(q) => q.into(),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Algebra(a) => a.into(),
            RepError::Ring(r) => r.into(),
            RepError::NotIdempotent => CliError::new(ErrorCode::NotIdempotent, e.to_string()),
            RepError::CyclicQuiver => CliError::new(ErrorCode::CyclicQuiver, e.to_string()),
            RepError::NotAField(_) | RepError::NotFree(_) => {
                CliError::new(ErrorCode::RingIncompatible, e.to_string())
            }
            _ => CliError::new(ErrorCode::InvalidPath, e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        if e.is_budget() {
            return CliError::new(ErrorCode::Budget, e.to_string());
        }
        match e {
            OracleError::NotPrimeField(_) => {
                CliError::new(ErrorCode::RingIncompatible, e.to_string())
            }
            OracleError::NotIdempotent => CliError::new(ErrorCode::NotIdempotent, e.to_string()),
            OracleError::NotSpecial => CliError::new(ErrorCode::NotSpecial, e.to_string()),
            OracleError::Rep(r) => r.into(),
            OracleError::Algebra(a) => a.into(),
            _ => CliError::new(ErrorCode::Usage, e.to_string()),
        }
    }
}

fn read(path: &FsPath) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::new(ErrorCode::Io, format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(bytes: &[u8], what: &str) -> Result<T, CliError> {
    serde_json::from_slice(bytes)
        .map_err(|e| CliError::new(ErrorCode::MalformedJson, format!("{what}: {e}")))
}

/// Loaded inputs plus the running hash of their raw bytes.
struct Loaded {
    algebra: Option<Arc<PathAlgebra>>,
    quiver: Option<Quiver>,
    elements: Vec<AlgElem>,
    hasher: Sha256,
}

fn hash_part(h: &mut Sha256, tag: &str, bytes: &[u8]) {
    h.update(tag.as_bytes());
    h.update((bytes.len() as u64).to_le_bytes());
    h.update(bytes);
}

fn load(cmd: Command, inputs: &Inputs) -> Result<Loaded, CliError> {
    let mut hasher = Sha256::new();
    hash_part(&mut hasher, "command", cmd.name().as_bytes());
    let quiver = match &inputs.quiver {
        Some(path) => {
            let bytes = read(path)?;
            hash_part(&mut hasher, "quiver", &bytes);
            let j: QuiverJson = parse_json(&bytes, "quiver")?;
            Some(Quiver::from_json(&j)?)
        }
        None => None,
    };
    let ring = match &inputs.ring {
        Some(s) => {
            let r: RingSpec = s.parse()?;
            hash_part(&mut hasher, "ring", r.to_string().as_bytes());
            Some(r)
        }
        None => None,
    };
    let algebra = match (&quiver, ring) {
        (Some(q), Some(r)) => Some(PathAlgebra::new(q.clone(), r)),
        _ => None,
    };
    let mut raw_elements: Vec<(String, Vec<u8>)> = Vec::new();
    for (i, s) in inputs.elements.iter().enumerate() {
        let bytes = if s.trim_start().starts_with('{') {
            s.as_bytes().to_vec()
        } else {
            read(FsPath::new(s))?
        };
        raw_elements.push((format!("element {i}"), bytes));
    }
    let mut parsed: Vec<AlgElemJson> = Vec::new();
    for (what, bytes) in &raw_elements {
        hash_part(&mut hasher, "element", bytes);
        parsed.push(parse_json(bytes, what)?);
    }
    if let Some(path) = &inputs.family {
        let bytes = read(path)?;
        hash_part(&mut hasher, "family", &bytes);
        let fam: Vec<AlgElemJson> = parse_json(&bytes, "family")?;
        parsed.extend(fam);
    }
    for (tag, v) in [("max_dim", inputs.max_dim), ("degree", inputs.degree)] {
        if let Some(v) = v {
            hash_part(&mut hasher, tag, &(v as u64).to_le_bytes());
        }
    }
    let elements = match (&algebra, parsed.is_empty()) {
        (_, true) => Vec::new(),
        (Some(alg), false) => parsed
            .iter()
            .map(|j| AlgElem::from_json(alg, j))
            .collect::<Result<_, _>>()?,
        (None, false) => {
            return Err(CliError::new(
                ErrorCode::Usage,
                "elements need both --quiver and --ring",
            ))
        }
    };
    Ok(Loaded {
        algebra,
        quiver,
        elements,
        hasher,
    })
}

fn require_algebra(l: &Loaded) -> Result<&Arc<PathAlgebra>, CliError> {
    l.algebra
        .as_ref()
        .ok_or_else(|| CliError::new(ErrorCode::Usage, "this command needs --quiver and --ring"))
}

fn require_elements(l: &Loaded, n: usize) -> Result<&[AlgElem], CliError> {
    if l.elements.len() != n {
        return Err(CliError::new(
            ErrorCode::Usage,
            format!("expected {n} element(s), got {}", l.elements.len()),
        ));
    }
    Ok(&l.elements)
}

fn budget_for(alg: &PathAlgebra, inputs: &Inputs) -> OracleBudget {
    let mut b = OracleBudget::default_for(alg);
    if let Some(d) = inputs.max_dim {
        b.max_total_dim = d;
    }
    if let Some(d) = inputs.degree {
        b.max_path_degree = d;
    }
    b.exec = if inputs.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    b
}

fn evaluate(cmd: Command, inputs: &Inputs, l: &Loaded) -> Result<Value, CliError> {
    match cmd {
        Command::Validate => {
            let q = l
                .quiver
                .as_ref()
                .ok_or_else(|| CliError::new(ErrorCode::Usage, "validate needs --quiver"))?;
            Ok(json!({
                "vertices": q.vertex_count(),
                "edges": q.edge_count(),
                "acyclic": q.is_acyclic(),
                "weak_components": q.weak_components().len(),
                "ring": l.algebra.as_ref().map(|a| a.ring.to_string()),
                "elements": l.elements.iter().map(|e| json!({"idempotent": e.is_idempotent()})).collect::<Vec<_>>(),
            }))
        }
        Command::Classify => {
            let alg = require_algebra(l)?;
            let e = &require_elements(l, 1)?[0];
            let r = classify(e);
            Ok(json!({
                "idempotent": r.is_idempotent,
                "special": r.is_left_special,
                "split": r.is_left_split,
                "central": r.is_central,
                "standard_form": r.standard_form.map(|f| val(&f.to_json(&alg.quiver, alg.ring))),
                "witnesses": r.witnesses.iter().map(|w| val(&w.to_json(&alg.quiver))).collect::<Vec<_>>(),
            }))
        }
        Command::StandardForm => {
            let alg = require_algebra(l)?;
            let e = &require_elements(l, 1)?[0];
            Ok(match try_standard_form(e) {
                Ok(f) => json!({
                    "special": true,
                    "standard_form": val(&f.to_json(&alg.quiver, alg.ring)),
                    "reassembles": f.reassemble(alg) == *e,
                }),
                Err(w) => json!({
                    "special": false,
                    "witness": val(&w.to_json(&alg.quiver)),
                }),
            })
        }
        Command::Orthogonal => {
            let alg = require_algebra(l)?;
            let es = require_elements(l, 2)?;
            let degree = inputs.degree.unwrap_or(alg.quiver.vertex_count());
            Ok(json!({
                "strongly_orthogonal": strongly_orthogonal(&es[0], &es[1])?,
                "first_second_vanishes": one_sided_vanishes(&es[0], &es[1])?,
                "second_first_vanishes": one_sided_vanishes(&es[1], &es[0])?,
                "bruteforce": {
                    "degree": degree,
                    "first_second_vanishes": orthogonality_bruteforce(&es[0], &es[1], degree)?,
                    "second_first_vanishes": orthogonality_bruteforce(&es[1], &es[0], degree)?,
                },
            }))
        }
        Command::FullFamily => {
            let alg = require_algebra(l)?;
            let es = &l.elements;
            let report = full_family_report(es)?;
            let degree = inputs.degree.unwrap_or(alg.quiver.vertex_count());
            let mut pairwise = true;
            for (i, e) in es.iter().enumerate() {
                for f in &es[i + 1..] {
                    pairwise &= orthogonality_bruteforce(e, f, degree)?
                        && orthogonality_bruteforce(f, e, degree)?;
                }
            }
            let fullness = fullness_bruteforce(alg, es, 0)?;
            Ok(json!({
                "full": report.full,
                "size": es.len(),
                "non_orthogonal": report.non_orthogonal.map(|(i, j)| [i, j]),
                "uncovered_vertex": report.uncovered_vertex.map(|v| alg.quiver.vertex_id(v).to_string()),
                "bruteforce": {
                    "orthogonality_degree": degree,
                    "pairwise_orthogonal": pairwise,
                    "fullness_degree": 0,
                    "fullness": val(&fullness),
                },
            }))
        }
        Command::EnumerateFamilies => {
            let alg = require_algebra(l)?;
            let q = &alg.quiver;
            let families = enumerate_full_families_trivial_idem(alg)?;
            let named: Vec<Vec<Vec<&str>>> = families
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|s| s.iter().map(|&v| q.vertex_id(v)).collect())
                        .collect()
                })
                .collect();
            Ok(json!({"count": named.len(), "families": named}))
        }
        Command::OracleSpecial | Command::OracleSplit => {
            let alg = require_algebra(l)?;
            let e = &require_elements(l, 1)?[0];
            let budget = budget_for(alg, inputs);
            let verdict = if cmd == Command::OracleSpecial {
                check_special_by_modules(e, &budget)?
            } else {
                check_split_by_sequences(e, &budget)?
            };
            Ok(json!({
                "budget": val(&budget),
                "verdict": val(&verdict.to_json()),
            }))
        }
        Command::MoritaCheck => {
            let alg = require_algebra(l)?;
            if !alg.quiver.is_acyclic() {
                return Err(CliError::new(
                    ErrorCode::CyclicQuiver,
                    "morita-check needs an acyclic quiver",
                ));
            }
            let e = &require_elements(l, 1)?[0];
            let budget = budget_for(alg, inputs);
            let sweep = check_morita(e, &budget)?;
            Ok(json!({
                "budget": val(&budget),
                "all_bijective": sweep.all_bijective(),
                "sweep": val(&sweep),
            }))
        }
    }
}

fn val<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

/// Runs one job and returns the report text.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let loaded = load(cli.command, &cli.inputs)?;
    let result = evaluate(cli.command, &cli.inputs, &loaded)?;
    let report = json!({
        "command": cli.command.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "input_hash": hex::encode(loaded.hasher.finalize()),
        "result": result,
    });
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    if let Some(out) = &cli.inputs.out {
        write_atomic(out, text.as_bytes())?;
    }
    Ok(text)
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &FsPath, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::new(ErrorCode::Io, format!("{}: {e}", path.display()));
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(FsPath::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| CliError::new(ErrorCode::Io, "output path has no file name"))?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

/// Parses arguments, runs the job, prints the report or the error, and
/// returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(text) => {
            if cli.inputs.out.is_none() {
                print!("{text}");
            }
            0
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.code.exit_status()
        }
    }
}
