//! Line-oriented identity and derivation files.
//!
//! Each line is `key = value`; `key = [` opens a nested block that a line
//! holding only `]` closes. Blank lines and lines starting with `#` are
//! ignored. Expression values use the grammar of [`crate::expr`]. See
//! `docs/identity-format.md` for the full schema.

use std::fmt::Write as _;

use qreduce::identity::{Derivation, PochFactor, PochTerm, SeriesIdentity, TermSpec};
use qreduce::reduction::{QuotientPair, ShiftPairSpec};
use qreduce::{QRat, XPoly, XRat};
use thiserror::Error;

use crate::expr::{parse_qrat, parse_xpoly, ParseError};
use crate::print::{print_qrat, print_xpoly};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("missing key `{0}`")]
    Missing(String),
    #[error("key `{key}`: {err}")]
    Expr { key: String, err: ParseError },
    #[error("key `{key}`: {msg}")]
    Value { key: String, msg: String },
    #[error("{0}")]
    Algebra(#[from] qreduce::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Text(String),
    Block(Vec<Entry>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: Value,
    pub line: usize,
}

/// Parses the generic key/value tree.
pub fn parse_tree(src: &str) -> Result<Vec<Entry>, FileError> {
    let mut stack: Vec<(String, usize, Vec<Entry>)> = vec![(String::new(), 0, Vec::new())];
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        if text == "]" {
            if stack.len() == 1 {
                return Err(FileError::Format {
                    line,
                    msg: "unmatched ']'".into(),
                });
            }
            let (key, open, entries) = stack.pop().unwrap();
            stack.last_mut().unwrap().2.push(Entry {
                key,
                value: Value::Block(entries),
                line: open,
            });
            continue;
        }
        let Some((k, v)) = text.split_once('=') else {
            return Err(FileError::Format {
                line,
                msg: "expected `key = value`".into(),
            });
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(FileError::Format {
                line,
                msg: format!("invalid key {k:?}"),
            });
        }
        if v == "[" {
            stack.push((k.to_string(), line, Vec::new()));
        } else {
            stack.last_mut().unwrap().2.push(Entry {
                key: k.to_string(),
                value: Value::Text(v.to_string()),
                line,
            });
        }
    }
    if stack.len() > 1 {
        let (_, open, _) = stack.last().unwrap();
        return Err(FileError::Format {
            line: *open,
            msg: "block is never closed".into(),
        });
    }
    Ok(stack.pop().unwrap().2)
}

/// Lookup helpers over one block.
struct Fields<'a>(&'a [Entry]);

impl<'a> Fields<'a> {
    fn get(&self, key: &str) -> Option<&'a Value> {
        self.0.iter().find(|e| e.key == key).map(|e| &e.value)
    }

    fn text(&self, key: &str) -> Result<&'a str, FileError> {
        match self.get(key) {
            Some(Value::Text(t)) => Ok(t),
            Some(Value::Block(_)) => Err(FileError::Value {
                key: key.into(),
                msg: "expected a value, found a block".into(),
            }),
            None => Err(FileError::Missing(key.into())),
        }
    }

    fn opt_text(&self, key: &str) -> Option<&'a str> {
        match self.get(key) {
            Some(Value::Text(t)) => Some(t),
            _ => None,
        }
    }

    fn block(&self, key: &str) -> Result<&'a [Entry], FileError> {
        match self.get(key) {
            Some(Value::Block(b)) => Ok(b),
            Some(Value::Text(_)) => Err(FileError::Value {
                key: key.into(),
                msg: "expected a block".into(),
            }),
            None => Err(FileError::Missing(key.into())),
        }
    }

    fn blocks(&self, key: &'a str) -> impl Iterator<Item = &'a [Entry]> + 'a {
        self.0.iter().filter_map(move |e| match &e.value {
            Value::Block(b) if e.key == key => Some(b.as_slice()),
            _ => None,
        })
    }

    fn all_text(&self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.0.iter().filter_map(move |e| match &e.value {
            Value::Text(t) if e.key == key => Some(t.as_str()),
            _ => None,
        })
    }

    fn xpoly(&self, key: &str) -> Result<XPoly, FileError> {
        parse_xpoly(self.text(key)?).map_err(|err| FileError::Expr {
            key: key.into(),
            err,
        })
    }

    fn qrat(&self, key: &str) -> Result<QRat, FileError> {
        parse_qrat(self.text(key)?).map_err(|err| FileError::Expr {
            key: key.into(),
            err,
        })
    }

    fn int<T: std::str::FromStr>(&self, key: &str) -> Result<T, FileError> {
        self.text(key)?.parse().map_err(|_| FileError::Value {
            key: key.into(),
            msg: "expected an integer".into(),
        })
    }
}

/// Which kind of file a tree describes.
#[derive(Debug, Clone)]
pub enum Document {
    Identity(IdentityFile),
    Derivation(DerivationFile),
}

/// A series identity plus free-form notes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFile {
    pub identity: SeriesIdentity,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationFile {
    pub derivation: Derivation,
    pub notes: Vec<String>,
}

fn identity_from(block: &[Entry]) -> Result<IdentityFile, FileError> {
    let f = Fields(block);
    let step: u32 = f.int("step")?;
    if step == 0 {
        return Err(FileError::Value {
            key: "step".into(),
            msg: "must be at least 1".into(),
        });
    }
    let pair = QuotientPair::new(f.xpoly("a")?, f.xpoly("b")?, step)?;
    let term = TermSpec::new(pair, f.qrat("t0")?)?;
    let den = match f.opt_text("multiplier_den") {
        Some(_) => f.xpoly("multiplier_den")?,
        None => XPoly::one(),
    };
    let multiplier = XRat::new(f.xpoly("multiplier_num")?, den)?;
    let mut rhs = Vec::new();
    if let Ok(b) = f.block("rhs") {
        for t in Fields(b).blocks("term") {
            rhs.push(term_from(t)?);
        }
    }
    Ok(IdentityFile {
        identity: SeriesIdentity {
            name: f.text("name")?.to_string(),
            term,
            multiplier,
            rhs,
        },
        notes: f.all_text("note").map(str::to_string).collect(),
    })
}

fn term_from(block: &[Entry]) -> Result<PochTerm, FileError> {
    let f = Fields(block);
    let mut factors = Vec::new();
    for spec in f.all_text("factor") {
        let parts: Vec<&str> = spec.split(';').map(str::trim).collect();
        let [base, modulus, exponent] = parts[..] else {
            return Err(FileError::Value {
                key: "factor".into(),
                msg: "expected `base ; modulus ; exponent`".into(),
            });
        };
        let bad = |msg: &str| FileError::Value {
            key: "factor".into(),
            msg: msg.into(),
        };
        let modulus: u32 = modulus.parse().map_err(|_| bad("modulus must be a positive integer"))?;
        if modulus == 0 {
            return Err(bad("modulus must be a positive integer"));
        }
        factors.push(PochFactor {
            base: parse_qrat(base).map_err(|err| FileError::Expr {
                key: "factor".into(),
                err,
            })?,
            modulus,
            exponent: exponent.parse().map_err(|_| bad("exponent must be an integer"))?,
        });
    }
    Ok(PochTerm {
        prefactor: f.qrat("prefactor")?,
        factors,
    })
}

fn derivation_from(block: &[Entry]) -> Result<DerivationFile, FileError> {
    let f = Fields(block);
    let base = identity_from(f.block("base")?)?.identity;
    let output = identity_from(f.block("output")?)?.identity;
    let spec = ShiftPairSpec {
        a1: f.xpoly("a1")?,
        b1: f.xpoly("b1")?,
        n1: f.int("n1")?,
        n2: f.int("n2")?,
    };
    let certificate = XRat::new(f.xpoly("certificate_num")?, f.xpoly("certificate_den")?)?;
    Ok(DerivationFile {
        derivation: Derivation {
            base,
            spec,
            output,
            certificate,
            boundary: f.qrat("boundary")?,
        },
        notes: f.all_text("note").map(str::to_string).collect(),
    })
}

pub fn parse_document(src: &str) -> Result<Document, FileError> {
    let tree = parse_tree(src)?;
    let f = Fields(&tree);
    match f.text("kind")? {
        "identity" => Ok(Document::Identity(identity_from(&tree)?)),
        "derivation" => Ok(Document::Derivation(derivation_from(&tree)?)),
        other => Err(FileError::Value {
            key: "kind".into(),
            msg: format!("unknown kind {other:?}"),
        }),
    }
}

pub fn read_document(path: &std::path::Path) -> Result<Document, FileError> {
    parse_document(&std::fs::read_to_string(path)?)
}

fn write_identity_body(out: &mut String, id: &SeriesIdentity, notes: &[String], indent: &str) {
    let pair = &id.term.pair;
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{indent}{k} = {v}");
    };
    kv("name", id.name.clone());
    for n in notes {
        kv("note", n.clone());
    }
    kv("step", pair.step.to_string());
    kv("a", print_xpoly(&pair.a));
    kv("b", print_xpoly(&pair.b));
    kv("t0", print_qrat(&id.term.t0));
    kv("multiplier_num", print_xpoly(id.multiplier.num()));
    kv("multiplier_den", print_xpoly(id.multiplier.den()));
    let _ = writeln!(out, "{indent}rhs = [");
    for t in &id.rhs {
        let _ = writeln!(out, "{indent}  term = [");
        let _ = writeln!(out, "{indent}    prefactor = {}", print_qrat(&t.prefactor));
        for f in &t.factors {
            let _ = writeln!(
                out,
                "{indent}    factor = {} ; {} ; {}",
                print_qrat(&f.base),
                f.modulus,
                f.exponent
            );
        }
        let _ = writeln!(out, "{indent}  ]");
    }
    let _ = writeln!(out, "{indent}]");
}

pub fn write_identity(file: &IdentityFile) -> String {
    let mut out = String::from("kind = identity\n");
    write_identity_body(&mut out, &file.identity, &file.notes, "");
    out
}

pub fn write_derivation(file: &DerivationFile) -> String {
    let d = &file.derivation;
    let mut out = String::from("kind = derivation\n");
    for n in &file.notes {
        let _ = writeln!(out, "note = {n}");
    }
    out.push_str("base = [\n");
    write_identity_body(&mut out, &d.base, &[], "  ");
    out.push_str("]\n");
    let _ = writeln!(out, "a1 = {}", print_xpoly(&d.spec.a1));
    let _ = writeln!(out, "b1 = {}", print_xpoly(&d.spec.b1));
    let _ = writeln!(out, "n1 = {}", d.spec.n1);
    let _ = writeln!(out, "n2 = {}", d.spec.n2);
    out.push_str("output = [\n");
    write_identity_body(&mut out, &d.output, &[], "  ");
    out.push_str("]\n");
    let _ = writeln!(out, "certificate_num = {}", print_xpoly(d.certificate.num()));
    let _ = writeln!(out, "certificate_den = {}", print_xpoly(d.certificate.den()));
    let _ = writeln!(out, "boundary = {}", print_qrat(&d.boundary));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
kind = identity
# a comment
name = geometric
step = 1
a = q
b = 1
t0 = 1
multiplier_num = 1
rhs = [
  term = [
    prefactor = 1
    factor = q ; 1 ; 0
  ]
]
";

    #[test]
    fn reads_and_rewrites() {
        let Document::Identity(file) = parse_document(SAMPLE).unwrap() else {
            panic!("expected identity");
        };
        assert_eq!(file.identity.name, "geometric");
        assert_eq!(file.identity.rhs.len(), 1);
        let text = write_identity(&file);
        let Document::Identity(again) = parse_document(&text).unwrap() else {
            panic!("expected identity");
        };
        assert_eq!(again, file);
    }

    #[test]
    fn reports_structure_errors() {
        assert!(matches!(
            parse_tree("a = [\nb = 1\n"),
            Err(FileError::Format { line: 1, .. })
        ));
        assert!(matches!(parse_tree("]\n"), Err(FileError::Format { line: 1, .. })));
        assert!(matches!(parse_tree("nonsense\n"), Err(FileError::Format { line: 1, .. })));
        let missing = SAMPLE.replace("t0 = 1\n", "");
        assert!(matches!(parse_document(&missing), Err(FileError::Missing(k)) if k == "t0"));
        let bad = SAMPLE.replace("b = 1", "b = 1 +");
        assert!(matches!(parse_document(&bad), Err(FileError::Expr { .. })));
    }
}
