//! Operator files.
//!
//! Text form, one string per line with Pauli-letter coefficients:
//!
//! ```text
//! # N=4
//! X1Z1 1.0 0.0
//! 11Y1 0.0 -0.5
//! ```
//!
//! A `# translation-symmetric` header line marks a [`SymOperator1D`]
//! representative. The JSON form is `{"N", "translation_symmetric", "terms":
//! [{"s", "re", "im"}]}`. Both forms round-trip bit for bit.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{PauliError, Result};
use crate::operator::Operator;
use crate::string::{mul_i_pow, Bits, PauliTerm};
use crate::symmetric::SymOperator1D;

const SYMMETRIC_FLAG: &str = "translation-symmetric";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub s: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorRecord {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default)]
    pub translation_symmetric: bool,
    pub terms: Vec<TermRecord>,
}

/// Either representation, as read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadedOperator<B: Bits = u64> {
    Full(Operator<B>),
    Symmetric(SymOperator1D<B>),
}

impl<B: Bits> LoadedOperator<B> {
    pub fn into_full(self) -> Operator<B> {
        match self {
            Self::Full(op) => op,
            Self::Symmetric(s) => s.to_operator(),
        }
    }
}

fn sorted_records<B: Bits>(op: &Operator<B>) -> Vec<TermRecord> {
    let mut terms: Vec<_> = op.iter().map(|(t, c)| (*t, *c)).collect();
    terms.sort_by_key(|a| a.0);
    terms
        .into_iter()
        .map(|(t, c)| {
            let p = mul_i_pow(c, t.y_count());
            TermRecord {
                s: t.to_label(op.n()),
                re: p.re,
                im: p.im,
            }
        })
        .collect()
}

fn to_record<B: Bits>(op: &Operator<B>, symmetric: bool) -> OperatorRecord {
    OperatorRecord {
        n: op.n(),
        translation_symmetric: symmetric,
        terms: sorted_records(op),
    }
}

fn from_record<B: Bits>(rec: &OperatorRecord) -> Result<LoadedOperator<B>> {
    let mut op = Operator::try_new(rec.n)?;
    let mut seen = std::collections::HashSet::with_capacity(rec.terms.len());
    for (i, r) in rec.terms.iter().enumerate() {
        let (t, n) = PauliTerm::<B>::from_label(&r.s)?;
        if n != rec.n {
            return Err(PauliError::Parse {
                line: i + 1,
                msg: format!("label {} has {} sites, expected {}", r.s, n, rec.n),
            });
        }
        if !seen.insert(t) {
            return Err(PauliError::Parse {
                line: i + 1,
                msg: format!("duplicate string {}", r.s),
            });
        }
        if rec.translation_symmetric && t.shift_left(n) != t {
            return Err(PauliError::Parse {
                line: i + 1,
                msg: format!("{} is not a canonical representative", r.s),
            });
        }
        // Pauli letters back to τ space: multiply by (-i)^{#Y}
        let c = mul_i_pow(Complex64::new(r.re, r.im), 3 * t.y_count());
        op.set(t, c);
    }
    Ok(if rec.translation_symmetric {
        LoadedOperator::Symmetric(SymOperator1D::from_canonical(op))
    } else {
        LoadedOperator::Full(op)
    })
}

fn write_text_record(rec: &OperatorRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# N={}", rec.n);
    if rec.translation_symmetric {
        let _ = writeln!(out, "# {SYMMETRIC_FLAG}");
    }
    for t in &rec.terms {
        let _ = writeln!(out, "{} {:?} {:?}", t.s, t.re, t.im);
    }
    out
}

pub fn to_text<B: Bits>(op: &Operator<B>) -> String {
    write_text_record(&to_record(op, false))
}

pub fn sym_to_text<B: Bits>(op: &SymOperator1D<B>) -> String {
    write_text_record(&to_record(op.representative(), true))
}

pub fn to_json<B: Bits>(op: &Operator<B>) -> String {
    serde_json::to_string_pretty(&to_record(op, false)).expect("record serializes")
}

pub fn sym_to_json<B: Bits>(op: &SymOperator1D<B>) -> String {
    serde_json::to_string_pretty(&to_record(op.representative(), true)).expect("record serializes")
}

pub fn parse_text<B: Bits>(text: &str) -> Result<LoadedOperator<B>> {
    let mut n = None;
    let mut symmetric = false;
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: String| PauliError::Parse { line: i + 1, msg };
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(v) = comment.strip_prefix("N=") {
                n = Some(v.trim().parse().map_err(|_| err(format!("bad site count {v:?}")))?);
            } else if comment == SYMMETRIC_FLAG {
                symmetric = true;
            }
            continue;
        }
        let fields: Vec<_> = line.split_whitespace().collect();
        let [s, re, im] = fields[..] else {
            return Err(err(format!("expected `<label> <re> <im>`, got {line:?}")));
        };
        let num = |x: &str| x.parse::<f64>().map_err(|_| err(format!("bad number {x:?}")));
        terms.push(TermRecord {
            s: s.to_string(),
            re: num(re)?,
            im: num(im)?,
        });
    }
    let n = match n {
        Some(n) => n,
        None => terms
            .first()
            .map(|t| t.s.chars().count())
            .ok_or_else(|| PauliError::Parse {
                line: 0,
                msg: "empty file without `# N=` header".into(),
            })?,
    };
    from_record(&OperatorRecord {
        n,
        translation_symmetric: symmetric,
        terms,
    })
}

pub fn parse_json<B: Bits>(text: &str) -> Result<LoadedOperator<B>> {
    let rec: OperatorRecord = serde_json::from_str(text).map_err(|e| PauliError::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    from_record(&rec)
}
