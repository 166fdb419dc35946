//! Command-line front end: file formats, commands and reports.
//!
//! Exit codes: 0 pass, 1 mathematical failure, 2 input error, 3 internal
//! inconsistency.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cochain::{Cochain, SplitContext};
use crate::constructions::{check_relative_rb, closed_form_rb_twist};
use crate::error::{Error, Result};
use crate::linear::LinearMap;
use crate::linfty::{HomCochain, Twilled};
use crate::scalar::Scalar;
use crate::system::{Representation, TripleSystem};
use crate::twisting::{twist_conjugation, twist_series, ProtoTwilledStructure};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Malformed(_) | Error::Parse(_) | Error::DimensionMismatch { .. } => EXIT_INPUT,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_FAILURE,
    }
}

fn default_field() -> String {
    "rational".to_string()
}

fn check_field(field: &str) -> Result<()> {
    if field == "rational" {
        Ok(())
    } else {
        Err(Error::Malformed(format!("unsupported field {field:?}")))
    }
}

/// One sparse entry: three indices and a sparse value vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseEntry {
    pub args: [usize; 3],
    pub value: BTreeMap<usize, Scalar>,
}

fn dense(value: &BTreeMap<usize, Scalar>, dim: usize) -> Result<Vec<Scalar>> {
    let mut v = vec![Scalar::zero(); dim];
    for (&i, c) in value {
        *v.get_mut(i).ok_or_else(|| Error::Malformed(format!("value index {i} out of range for dimension {dim}")))? =
            c.clone();
    }
    Ok(v)
}

fn sparse(v: &[Scalar]) -> BTreeMap<usize, Scalar> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// A triple system as structure constants. Unlisted entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default = "default_field")]
    pub field: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub entries: Vec<SparseEntry>,
}

impl AlgebraFile {
    pub fn to_system(&self) -> Result<TripleSystem> {
        check_field(&self.field)?;
        if let Some(l) = &self.labels {
            if l.len() != self.dim {
                return Err(Error::Malformed(format!("{} labels for dimension {}", l.len(), self.dim)));
            }
        }
        let mut t = TripleSystem::zero(self.dim)?;
        for e in &self.entries {
            if e.args.iter().any(|&i| i >= self.dim) {
                return Err(Error::Malformed(format!("entry args {:?} out of range", e.args)));
            }
            let [i, j, k] = e.args;
            t.set(i, j, k, &dense(&e.value, self.dim)?);
        }
        Ok(t)
    }

    pub fn from_system(t: &TripleSystem) -> Self {
        let n = t.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let value = sparse(t.bracket_basis(i, j, k));
                    if !value.is_empty() {
                        entries.push(SparseEntry { args: [i, j, k], value });
                    }
                }
            }
        }
        AlgebraFile { field: default_field(), dim: n, labels: None, entries }
    }
}

/// A representation `ρ(e_i, e_j) f_c`, listed as `args: [i, j, c]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    #[serde(default = "default_field")]
    pub field: String,
    pub base_dim: usize,
    pub carrier_dim: usize,
    pub entries: Vec<SparseEntry>,
}

impl RepresentationFile {
    pub fn to_representation(&self) -> Result<Representation> {
        check_field(&self.field)?;
        let (n, m) = (self.base_dim, self.carrier_dim);
        let mut r = Representation::zero(n, m)?;
        for e in &self.entries {
            let [i, j, c] = e.args;
            if i >= n || j >= n || c >= m {
                return Err(Error::Malformed(format!("entry args {:?} out of range", e.args)));
            }
            r.act_mut(i, j, c).clone_from_slice(&dense(&e.value, m)?);
        }
        Ok(r)
    }
}

/// A matrix in the column convention: column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    #[serde(default = "default_field")]
    pub field: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Scalar>>,
}

impl MapFile {
    pub fn to_map(&self) -> Result<LinearMap> {
        check_field(&self.field)?;
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Malformed(format!("matrix entries do not have shape {}x{}", self.rows, self.cols)));
        }
        if self.rows == 0 || self.cols == 0 {
            return Ok(LinearMap::zeros(self.rows, self.cols));
        }
        LinearMap::from_rows(self.entries.clone())
    }

    pub fn from_map(m: &LinearMap) -> Self {
        MapFile { field: default_field(), rows: m.rows(), cols: m.cols(), entries: m.to_rows() }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_algebra(path: &Path) -> Result<TripleSystem> {
    read_json::<AlgebraFile>(path)?.to_system()
}

pub fn load_map(path: &Path) -> Result<LinearMap> {
    read_json::<MapFile>(path)?.to_map()
}

fn load_rep(path: Option<&Path>, t: &TripleSystem) -> Result<Representation> {
    match path {
        None => Ok(t.adjoint_representation()),
        Some(p) => read_json::<RepresentationFile>(p)?.to_representation(),
    }
}

#[derive(Parser, Debug)]
#[command(name = "lts", version, about = "Exact checks and twisting for Lie triple systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Operands {
    /// Algebra file (JSON).
    algebra: PathBuf,
    /// Map file `T: V → g` (JSON, column convention).
    #[arg(long)]
    map: PathBuf,
    /// Representation file; the adjoint representation when omitted.
    #[arg(long)]
    rep: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms (and a representation, if given).
    Verify {
        algebra: PathBuf,
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Twist the semidirect product by a map and classify the result.
    Twist {
        #[command(flatten)]
        ops: Operands,
        #[arg(long, group = "path")]
        series: bool,
        #[arg(long, group = "path")]
        conjugation: bool,
        #[arg(long, group = "path")]
        both: bool,
        /// Test hook: perturb the series result before comparison.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Maurer-Cartan residual of a map in the derived L∞ algebra.
    McCheck {
        #[command(flatten)]
        ops: Operands,
    },
    /// Relative Rota-Baxter identity for a map.
    RbCheck {
        #[command(flatten)]
        ops: Operands,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub holds: bool,
    pub counterexample: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub dim: usize,
    pub axioms: Vec<CheckLine>,
    pub representation: Option<Vec<CheckLine>>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathAgreement {
    pub agree: bool,
    pub differing_entries: usize,
    pub first_difference: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionLine {
    pub bidegree: String,
    pub equation: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReport {
    pub dims: [usize; 2],
    pub paths: Vec<String>,
    pub path_agreement: Option<PathAgreement>,
    pub classification: Option<String>,
    pub conditions: Vec<ConditionLine>,
    pub rota_baxter: bool,
    pub closed_form_agrees: bool,
    pub axioms_pass: bool,
    pub entries: Vec<SparseEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McReport {
    pub residual_zero: bool,
    pub residual_nonzero_entries: usize,
    pub first_nonzero: Option<SparseEntry>,
    pub rota_baxter: bool,
    pub rb_counterexample: Option<[usize; 3]>,
    pub agree: bool,
}

fn fmt_tuple(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn fmt_value(v: &BTreeMap<usize, Scalar>) -> String {
    let mut s = String::new();
    for (n, (i, c)) in v.iter().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        let a = c.abs();
        let coef = if a.is_one() { String::new() } else { format!("{a}*") };
        match (n, c.is_negative()) {
            (0, false) => {}
            (0, true) => s.push('-'),
            _ => {
                let _ = write!(s, " {sign} ");
            }
        }
        let _ = write!(s, "{coef}e{i}");
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn fmt_check(out: &mut String, c: &CheckLine) {
    let _ = write!(out, "  {}: {}", c.name, if c.holds { "pass" } else { "FAIL" });
    if let Some(t) = &c.counterexample {
        let _ = write!(out, " at {}", fmt_tuple(t));
    }
    out.push('\n');
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("dimension: {}\naxioms:\n", self.dim);
        self.axioms.iter().for_each(|c| fmt_check(&mut s, c));
        if let Some(rep) = &self.representation {
            s.push_str("representation:\n");
            rep.iter().for_each(|c| fmt_check(&mut s, c));
        }
        let _ = writeln!(s, "result: {}", if self.passed { "pass" } else { "fail" });
        s
    }
}

impl TwistReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("dimensions: {}+{}\npaths: {}\n", self.dims[0], self.dims[1], self.paths.join(", "));
        if let Some(a) = &self.path_agreement {
            let _ = write!(s, "path agreement: {}", if a.agree { "yes" } else { "NO" });
            if !a.agree {
                let _ = write!(s, " ({} differing entries", a.differing_entries);
                if let Some(t) = &a.first_difference {
                    let _ = write!(s, ", first at {}", fmt_tuple(t));
                }
                s.push(')');
            }
            s.push('\n');
        }
        match &self.classification {
            Some(c) => {
                let _ = writeln!(s, "classification: {c}");
            }
            None => s.push_str("classification: unavailable\n"),
        }
        for c in &self.conditions {
            let _ = writeln!(s, "  [{}] {}: {}", c.bidegree, c.equation, if c.holds { "holds" } else { "fails" });
        }
        let _ = writeln!(s, "rota-baxter: {}", self.rota_baxter);
        let _ = writeln!(s, "closed form agrees: {}", self.closed_form_agrees);
        let _ = writeln!(s, "axioms: {}", if self.axioms_pass { "pass" } else { "fail" });
        let _ = writeln!(s, "nonzero entries: {}", self.entries.len());
        for e in &self.entries {
            let _ = writeln!(s, "  {} = {}", fmt_tuple(&e.args), fmt_value(&e.value));
        }
        s
    }
}

impl McReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "mc residual: {}\n",
            if self.residual_zero {
                "zero".to_string()
            } else {
                format!("{} nonzero entries", self.residual_nonzero_entries)
            }
        );
        if let Some(e) = &self.first_nonzero {
            let _ = writeln!(s, "  first nonzero: {} = {}", fmt_tuple(&e.args), fmt_value(&e.value));
        }
        let _ = write!(s, "rota-baxter: {}", self.rota_baxter);
        if let Some(t) = &self.rb_counterexample {
            let _ = write!(s, " (fails at {})", fmt_tuple(t));
        }
        let _ = writeln!(s, "\nagreement: {}", if self.agree { "yes" } else { "NO" });
        s
    }
}

pub fn verify(t: &TripleSystem, rep: Option<&Representation>) -> Result<VerifyReport> {
    let axioms: Vec<CheckLine> = t
        .check_axioms()
        .checks
        .into_iter()
        .map(|c| CheckLine {
            name: c.axiom.to_string(),
            holds: c.counterexample.is_none(),
            counterexample: c.counterexample,
        })
        .collect();
    let representation = rep
        .map(|r| {
            r.check(t).map(|rr| {
                rr.checks
                    .into_iter()
                    .map(|c| CheckLine {
                        name: format!("{:?} representation identity", c.identity).to_lowercase(),
                        holds: c.counterexample.is_none(),
                        counterexample: c.counterexample,
                    })
                    .collect::<Vec<_>>()
            })
        })
        .transpose()?;
    let passed = axioms.iter().chain(representation.iter().flatten()).all(|c| c.holds);
    Ok(VerifyReport { dim: t.dim(), axioms, representation, passed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistPaths {
    Series,
    Conjugation,
    Both,
}

fn sparse_entries(c: &Cochain) -> Vec<SparseEntry> {
    c.nonzero_entries()
        .into_iter()
        .map(|(args, v)| SparseEntry { args: [args[0], args[1], args[2]], value: sparse(&v) })
        .collect()
}

pub fn twist_report(
    t: &TripleSystem,
    r: &Representation,
    op: &LinearMap,
    paths: TwistPaths,
    corrupt: bool,
) -> Result<TwistReport> {
    let ctx = SplitContext::new(t.dim(), r.carrier_dim())?;
    crate::error::check_dim("map rows (dim g)", t.dim(), op.rows())?;
    crate::error::check_dim("map cols (dim V)", r.carrier_dim(), op.cols())?;
    let theta = Cochain::from_system(&t.semidirect_product(r)?);
    let series = match paths {
        TwistPaths::Conjugation => None,
        _ => {
            let mut s = twist_series(&theta, op, &ctx)?;
            if corrupt {
                let first = s.value_mut(&[0, 0, 0]);
                first[0] = &first[0] + &Scalar::one();
            }
            Some(s)
        }
    };
    let conj = match paths {
        TwistPaths::Series => None,
        _ => Some(twist_conjugation(&theta, op, &ctx)?),
    };
    let path_agreement = match (&series, &conj) {
        (Some(s), Some(c)) => {
            let diff = s.sub(c)?;
            let nz = diff.nonzero_entries();
            Some(PathAgreement {
                agree: nz.is_empty(),
                differing_entries: nz.len(),
                first_difference: nz.into_iter().next().map(|(t, _)| t),
            })
        }
        _ => None,
    };
    let twisted = conj.or(series).expect("at least one path");
    let mut names = Vec::new();
    if paths != TwistPaths::Conjugation {
        names.push("series".to_string());
    }
    if paths != TwistPaths::Series {
        names.push("conjugation".to_string());
    }
    let axioms_pass = twisted.to_system()?.check_axioms().passed();
    let (classification, conditions) = if axioms_pass && path_agreement.as_ref().is_none_or(|a| a.agree) {
        let c = ProtoTwilledStructure::new(twisted.clone(), ctx)?.classify()?;
        let lines = c
            .conditions
            .iter()
            .map(|k| ConditionLine {
                bidegree: k.bidegree.to_string(),
                equation: k.equation.to_string(),
                holds: k.holds,
            })
            .collect();
        (Some((c.kind.to_string(), c.is_twilled())), lines)
    } else {
        (None, Vec::new())
    };
    let rota_baxter = check_relative_rb(op, t, r)?.holds;
    let closed_form_agrees = closed_form_rb_twist(op, t, r)? == twisted;
    if rota_baxter && !closed_form_agrees {
        return Err(Error::Internal("closed form disagrees with the twist for a Rota-Baxter map".into()));
    }
    if let Some((kind, twilled)) = &classification {
        if *twilled != rota_baxter {
            return Err(Error::Internal(format!("classification {kind} disagrees with the Rota-Baxter check")));
        }
    }
    Ok(TwistReport {
        dims: [ctx.n1(), ctx.n2()],
        paths: names,
        path_agreement,
        classification: classification.map(|(k, _)| k),
        conditions,
        rota_baxter,
        closed_form_agrees,
        axioms_pass,
        entries: sparse_entries(&twisted),
    })
}

pub fn mc_report(t: &TripleSystem, r: &Representation, op: &LinearMap) -> Result<McReport> {
    let ctx = SplitContext::new(t.dim(), r.carrier_dim())?;
    let rb = check_relative_rb(op, t, r)?;
    let tw = Twilled::new(ProtoTwilledStructure::from_system(&t.semidirect_product(r)?, ctx)?)?;
    let residual = tw.mc_residual(&HomCochain::from_linear_map(op, ctx)?)?;
    let nz = residual.lift().nonzero_entries();
    let residual_zero = nz.is_empty();
    Ok(McReport {
        residual_zero,
        residual_nonzero_entries: nz.len(),
        first_nonzero: nz
            .into_iter()
            .next()
            .map(|(args, v)| SparseEntry { args: [args[0], args[1], args[2]], value: sparse(&v) }),
        rota_baxter: rb.holds,
        rb_counterexample: rb.counterexample,
        agree: residual_zero == rb.holds,
    })
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, report: &T, text: String) -> std::io::Result<()> {
    match format {
        Format::Text => out.write_all(text.as_bytes()),
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            out.write_all(b"\n")
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::Internal(format!("write failed: {e}"));
    match cmd {
        Command::Verify { algebra, rep, format } => {
            let t = load_algebra(&algebra)?;
            let r = rep.as_deref().map(|p| load_rep(Some(p), &t)).transpose()?;
            let report = verify(&t, r.as_ref())?;
            emit(out, format, &report, report.to_text()).map_err(io)?;
            Ok(if report.passed { EXIT_PASS } else { EXIT_FAILURE })
        }
        Command::Twist { ops, series, conjugation, both: _, corrupt } => {
            let t = load_algebra(&ops.algebra)?;
            let r = load_rep(ops.rep.as_deref(), &t)?;
            let op = load_map(&ops.map)?;
            let paths = match (series, conjugation) {
                (true, _) => TwistPaths::Series,
                (_, true) => TwistPaths::Conjugation,
                _ => TwistPaths::Both,
            };
            let report = twist_report(&t, &r, &op, paths, corrupt)?;
            emit(out, ops.format, &report, report.to_text()).map_err(io)?;
            let agree = report.path_agreement.as_ref().is_none_or(|a| a.agree);
            Ok(if agree && report.axioms_pass { EXIT_PASS } else { EXIT_FAILURE })
        }
        Command::McCheck { ops } | Command::RbCheck { ops } => {
            let t = load_algebra(&ops.algebra)?;
            let r = load_rep(ops.rep.as_deref(), &t)?;
            let op = load_map(&ops.map)?;
            let report = mc_report(&t, &r, &op)?;
            emit(out, ops.format, &report, report.to_text()).map_err(io)?;
            Ok(if !report.agree {
                EXIT_INTERNAL
            } else if report.rota_baxter {
                EXIT_PASS
            } else {
                EXIT_FAILURE
            })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
