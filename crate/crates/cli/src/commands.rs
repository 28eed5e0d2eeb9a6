//! Subcommands of the `qreduce` driver.
//!
//! Every command produces a [`Report`]: ordered key/value lines plus an exit
//! status, so the binary is a thin shell and tests can call commands
//! directly.

use std::path::{Path, PathBuf};

use num_traits::{One, Signed};
use qreduce::field::Rat;
use qreduce::gosper::{gosper_representation, gosper_solve, is_summable, GosperRep};
use qreduce::identity::generate;
use qreduce::numeval::{check_telescoping, eval_series, BigFloat};
use qreduce::reduction::{rational_reduce, reduce_poly, QuotientPair, ShiftPairSpec, ReductionOutput};
use qreduce::{XPoly, XRat};
use rayon::prelude::*;
use thiserror::Error;

use crate::expr::{parse_xpoly, parse_xrat, ParseError};
use crate::idfile::{read_document, write_derivation, DerivationFile, Document, FileError};
use crate::print::{print_qrat, print_xpoly, print_xrat};

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Usage = 2,
    NotSummable = 3,
    Internal = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{flag}: {err}")]
    Parse { flag: String, err: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    File(#[from] FileError),
    #[error("{0}")]
    Algebra(#[from] qreduce::Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        let internal = |e: &qreduce::Error| matches!(e, qreduce::Error::CertificateInvalid(_));
        match self {
            CliError::Algebra(e) if internal(e) => Status::Internal,
            CliError::File(FileError::Algebra(e)) if internal(e) => Status::Internal,
            _ => Status::Usage,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<(String, String)>,
    pub status: Status,
}

impl Report {
    fn ok() -> Self {
        Report {
            lines: Vec::new(),
            status: Status::Ok,
        }
    }

    fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.lines.push((key.into(), value.into()));
    }

    /// `key: value` for people, `key=value` for machines.
    pub fn render(&self, kv: bool) -> String {
        let sep = if kv { "=" } else { ": " };
        self.lines
            .iter()
            .map(|(k, v)| format!("{k}{sep}{v}\n"))
            .collect()
    }
}

fn xpoly(flag: &str, src: &str) -> CliResult<XPoly> {
    parse_xpoly(src).map_err(|err| CliError::Parse {
        flag: flag.into(),
        err,
    })
}

fn xrat(flag: &str, src: &str) -> CliResult<XRat> {
    parse_xrat(src).map_err(|err| CliError::Parse {
        flag: flag.into(),
        err,
    })
}

fn pair(a: &str, b: &str, step: u32) -> CliResult<QuotientPair> {
    Ok(QuotientPair::new(xpoly("--a", a)?, xpoly("--b", b)?, step)?)
}

fn push_reduction(r: &mut Report, out: &ReductionOutput) {
    for (i, c) in &out.coeffs {
        r.push(format!("coeff[{i}]"), print_qrat(c));
    }
    let residual: Vec<String> = out.residual_set.iter().map(usize::to_string).collect();
    r.push("residual_set", residual.join(","));
    r.push("remainder", print_xpoly(&out.remainder));
    r.push("denominator", print_xpoly(&out.denominator));
    r.push("certificate", print_xrat(&out.certificate));
}

pub fn reduce(a: &str, b: &str, p: &str, step: u32) -> CliResult<Report> {
    let pair = pair(a, b, step)?;
    let out = reduce_poly(&pair, &xpoly("--p", p)?)?;
    let mut r = Report::ok();
    push_reduction(&mut r, &out);
    Ok(r)
}

pub struct SpecArgs<'a> {
    pub a1: &'a str,
    pub b1: &'a str,
    pub n1: u32,
    pub n2: u32,
}

impl SpecArgs<'_> {
    fn parse(&self) -> CliResult<ShiftPairSpec> {
        Ok(ShiftPairSpec {
            a1: xpoly("--a1", self.a1)?,
            b1: xpoly("--b1", self.b1)?,
            n1: self.n1,
            n2: self.n2,
        })
    }
}

pub fn rational_reduce_cmd(a: &str, b: &str, spec: &SpecArgs, p: &str, step: u32) -> CliResult<Report> {
    let pair = pair(a, b, step)?;
    let out = rational_reduce(&pair, &spec.parse()?, &xpoly("--p", p)?)?;
    let mut r = Report::ok();
    push_reduction(&mut r, &out);
    Ok(r)
}

pub fn gosper_rep(a: &str, b: &str, step: u32) -> CliResult<Report> {
    let rep = gosper_representation(&xpoly("--a", a)?, &xpoly("--b", b)?, step)?;
    let mut r = Report::ok();
    r.push("a", print_xpoly(&rep.a));
    r.push("b", print_xpoly(&rep.b));
    r.push("c", print_xpoly(&rep.c));
    Ok(r)
}

pub fn gosper_solve_cmd(a: &str, b: &str, c: &str, step: u32) -> CliResult<Report> {
    let rep = GosperRep {
        a: xpoly("--a", a)?,
        b: xpoly("--b", b)?,
        c: xpoly("--c", c)?,
        step,
    };
    if step == 0 || rep.a.is_zero() || rep.b.is_zero() {
        return Err(CliError::Usage("a and b must be nonzero and step at least 1".into()));
    }
    let mut r = Report::ok();
    match gosper_solve(&rep) {
        Some(g) => r.push("g", print_xrat(&g.to_xrat())),
        None => {
            r.push("result", "not summable");
            r.status = Status::NotSummable;
        }
    }
    Ok(r)
}

pub fn summable(a: &str, b: &str, rnum: &str, rden: &str, step: u32) -> CliResult<Report> {
    let pair = pair(a, b, step)?;
    let num = xrat("--rnum", rnum)?;
    let den = xrat("--rden", rden)?;
    let multiplier = num.div(&den).map_err(|_| CliError::Usage("--rden is zero".into()))?;
    let mut r = Report::ok();
    match is_summable(&pair, &multiplier)? {
        Some(rho) => r.push("certificate", print_xrat(&rho)),
        None => {
            r.push("result", "not summable");
            r.status = Status::NotSummable;
        }
    }
    Ok(r)
}

pub fn generate_cmd(base: &Path, spec: &SpecArgs, out: &Path, name: Option<&str>) -> CliResult<Report> {
    let base = match read_document(base)? {
        Document::Identity(f) => f.identity,
        Document::Derivation(_) => {
            return Err(CliError::Usage("--base must be an identity file".into()))
        }
    };
    let name = match name {
        Some(n) => n.to_string(),
        None => out
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| format!("{}-derived", base.name)),
    };
    let derivation = generate(&base, &spec.parse()?, &name)?;
    let file = DerivationFile {
        derivation,
        notes: vec!["assumption: rho(q^(step*k))*t_k -> 0 as k -> infinity".into()],
    };
    std::fs::write(out, write_derivation(&file)).map_err(FileError::from)?;
    let d = &file.derivation;
    let mut r = Report::ok();
    r.push("multiplier", print_xrat(&d.output.multiplier));
    r.push("certificate", print_xrat(&d.certificate));
    r.push("boundary", print_qrat(&d.boundary));
    r.push("written", out.display().to_string());
    Ok(r)
}

pub fn verify(path: &Path) -> CliResult<Report> {
    let Document::Derivation(file) = read_document(path)? else {
        return Err(CliError::Usage("--derivation must be a derivation file".into()));
    };
    let ok = file.derivation.verify();
    let mut r = Report::ok();
    r.push("verified", ok.to_string());
    if !ok {
        r.status = Status::Failed;
    }
    Ok(r)
}

/// Parses `n` or `n/d` as an exact rational.
pub fn parse_rat(src: &str) -> CliResult<Rat> {
    src.trim()
        .parse::<Rat>()
        .map_err(|_| CliError::Usage(format!("not a rational number: {src:?}")))
}

/// Evaluation settings shared by `eval` and `batch`.
#[derive(Clone, Debug)]
pub struct EvalArgs {
    pub q0: Rat,
    pub terms: usize,
    pub bits: usize,
    /// Pass when `absdiff < 10^-tol_digits`.
    pub tol_digits: usize,
}

impl Default for EvalArgs {
    fn default() -> Self {
        EvalArgs {
            q0: Rat::new(1.into(), 2.into()),
            terms: 128,
            bits: 256,
            tol_digits: 20,
        }
    }
}

pub fn eval(path: &Path, args: &EvalArgs) -> CliResult<Report> {
    let identity = match read_document(path)? {
        Document::Identity(f) => f.identity,
        Document::Derivation(f) => f.derivation.output,
    };
    if args.bits < 64 {
        return Err(CliError::Usage("--bits must be at least 64".into()));
    }
    if !(args.q0.is_positive() && args.q0 < Rat::one()) {
        return Err(CliError::Usage("--q must lie strictly between 0 and 1".into()));
    }
    let rep = eval_series(&identity, &args.q0, args.terms, args.bits)?;
    let tol = BigFloat::ten_pow_neg(args.tol_digits, args.bits);
    let mut r = Report::ok();
    r.push("name", identity.name.clone());
    r.push("q", args.q0.to_string());
    r.push("lhs", rep.lhs.to_string());
    r.push("rhs", rep.rhs.to_string());
    r.push("absdiff", rep.absdiff.to_string());
    r.push("terms_used", rep.terms_used.to_string());
    r.push("tail_estimate", rep.tail_estimate.to_string());
    let pass = rep.absdiff.lt(&tol);
    r.push("pass", pass.to_string());
    if !pass {
        r.status = Status::Failed;
    }
    Ok(r)
}

/// Files `batch` picks up: `*.qid`, searched recursively.
pub fn collect_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d)? {
            let path = entry?.path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|e| e == "qid") {
                out.push(path);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Evaluation points used by `batch`.
fn batch_points() -> [Rat; 2] {
    [Rat::new(1.into(), 2.into()), Rat::new(3.into(), 5.into())]
}

/// Checks one corpus file: identities are evaluated at every batch point;
/// derivations are verified symbolically, their telescoping is checked at
/// `q0 = 1/2` and their output identity is evaluated.
fn check_file(path: &Path, defaults: &EvalArgs) -> CliResult<(Status, String)> {
    let doc = read_document(path)?;
    let mut failures = Vec::new();
    let identity = match doc {
        Document::Identity(f) => f.identity,
        Document::Derivation(f) => {
            if !f.derivation.verify() {
                failures.push("certificate".to_string());
            }
            let p = &defaults.bits;
            let t = check_telescoping(&f.derivation, &batch_points()[0], 40, *p)?;
            if !(t.residual.lt(&BigFloat::ten_pow_neg(30, *p))
                && t.last_boundary.lt(&BigFloat::ten_pow_neg(40, *p)))
            {
                failures.push("telescoping".to_string());
            }
            f.derivation.output
        }
    };
    let tol = BigFloat::ten_pow_neg(defaults.tol_digits, defaults.bits);
    for q0 in batch_points() {
        let rep = eval_series(&identity, &q0, defaults.terms, defaults.bits)?;
        if !rep.absdiff.lt(&tol) {
            failures.push(format!("eval at q={q0}"));
        }
    }
    Ok(if failures.is_empty() {
        (Status::Ok, "ok".into())
    } else {
        (Status::Failed, format!("FAILED ({})", failures.join(", ")))
    })
}

pub fn batch(dir: &Path, jobs: Option<usize>) -> CliResult<Report> {
    let files = collect_files(dir).map_err(FileError::from)?;
    if files.is_empty() {
        return Err(CliError::Usage(format!("no .qid files under {}", dir.display())));
    }
    let defaults = EvalArgs::default();
    let run = || -> Vec<(Status, String)> {
        files
            .par_iter()
            .map(|f| match check_file(f, &defaults) {
                Ok(res) => res,
                Err(e) => (e.status(), format!("error: {e}")),
            })
            .collect()
    };
    let results = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut r = Report::ok();
    for (path, (status, msg)) in files.iter().zip(results) {
        r.push(path.display().to_string(), msg);
        r.status = r.status.max(status);
    }
    Ok(r)
}
