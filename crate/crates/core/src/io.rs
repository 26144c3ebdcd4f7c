//! JSON documents for descriptors (schema version 1) and LaTeX rendering.
//!
//! Rationals always travel as canonical `p/q` text. Field order in the JSON
//! output is fixed: `schema_version, id, n_min, citation, lhs, rhs`.

use serde::{Deserialize, Serialize};

use crate::engine::{GeometricTerm, IdentityDescriptor, SumSide, Summand};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::sequences::{named_def, NamedFamily, SequenceDef};

pub const SCHEMA_VERSION: i64 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeqDoc {
    c1: String,
    c2: String,
    x0: String,
    x1: String,
    label: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    coef: String,
    ratio: String,
    seq: Option<SeqDoc>,
    stride: u32,
    offset: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SummandDoc {
    coef: String,
    seq: SeqDoc,
    stride: u32,
    offset: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SumDoc {
    outer_coef: String,
    outer_ratio: String,
    beta: String,
    summands: Vec<SummandDoc>,
}

/// On-disk form of an [`IdentityDescriptor`].
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DescriptorDocument {
    schema_version: i64,
    id: String,
    n_min: u32,
    citation: String,
    lhs: Vec<TermDoc>,
    rhs: SumDoc,
}

#[derive(Deserialize)]
struct VersionProbe {
    schema_version: Option<serde_json::Value>,
}

fn seq_doc(s: &SequenceDef) -> SeqDoc {
    SeqDoc {
        c1: s.c1().to_string(),
        c2: s.c2().to_string(),
        x0: s.x0().to_string(),
        x1: s.x1().to_string(),
        label: s.label().to_string(),
    }
}

pub fn to_json(d: &IdentityDescriptor) -> String {
    let doc = DescriptorDocument {
        schema_version: SCHEMA_VERSION,
        id: d.id.clone(),
        n_min: d.n_min,
        citation: d.citation.clone(),
        lhs: d
            .lhs
            .iter()
            .map(|t| TermDoc {
                coef: t.coef.to_string(),
                ratio: t.ratio.to_string(),
                seq: t.seq.as_ref().map(seq_doc),
                stride: t.stride,
                offset: t.offset,
            })
            .collect(),
        rhs: SumDoc {
            outer_coef: d.rhs.outer_coef.to_string(),
            outer_ratio: d.rhs.outer_ratio.to_string(),
            beta: d.rhs.beta.to_string(),
            summands: d
                .rhs
                .summands
                .iter()
                .map(|s| SummandDoc {
                    coef: s.coef.to_string(),
                    seq: seq_doc(&s.seq),
                    stride: s.stride,
                    offset: s.offset,
                })
                .collect(),
        },
    };
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

fn rat(text: &str, at: &str) -> Result<Rational> {
    text.parse::<Rational>().map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(at, format!("{message} in {text:?}")),
        other => other,
    })
}

fn seq_from(doc: &SeqDoc, at: &str) -> Result<SequenceDef> {
    let c2 = rat(&doc.c2, &format!("{at}.c2"))?;
    if c2.is_zero() {
        return Err(Error::parse(format!("{at}.c2"), "c2 must be nonzero"));
    }
    SequenceDef::new(
        rat(&doc.c1, &format!("{at}.c1"))?,
        c2,
        rat(&doc.x0, &format!("{at}.x0"))?,
        rat(&doc.x1, &format!("{at}.x1"))?,
        doc.label.clone(),
    )
}

pub fn from_json(text: &str) -> Result<IdentityDescriptor> {
    let syntax = |e: serde_json::Error| {
        Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
    };
    let probe: VersionProbe = serde_json::from_str(text).map_err(syntax)?;
    match probe.schema_version {
        Some(serde_json::Value::Number(n)) if n.as_i64() == Some(SCHEMA_VERSION) => {}
        Some(serde_json::Value::Number(n)) => return Err(Error::Version(n.as_i64().unwrap_or(-1))),
        Some(_) => return Err(Error::parse("schema_version", "must be an integer")),
        None => return Err(Error::parse("schema_version", "missing field")),
    }
    let doc: DescriptorDocument = serde_json::from_str(text).map_err(syntax)?;
    let lhs = doc
        .lhs
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let at = format!("lhs[{i}]");
            Ok(GeometricTerm {
                coef: rat(&t.coef, &format!("{at}.coef"))?,
                ratio: rat(&t.ratio, &format!("{at}.ratio"))?,
                seq: t.seq.as_ref().map(|s| seq_from(s, &format!("{at}.seq"))).transpose()?,
                stride: t.stride,
                offset: t.offset,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summands = doc
        .rhs
        .summands
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let at = format!("rhs.summands[{i}]");
            Ok(Summand {
                coef: rat(&s.coef, &format!("{at}.coef"))?,
                seq: seq_from(&s.seq, &format!("{at}.seq"))?,
                stride: s.stride,
                offset: s.offset,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityDescriptor {
        id: doc.id,
        lhs,
        rhs: SumSide {
            outer_coef: rat(&doc.rhs.outer_coef, "rhs.outer_coef")?,
            outer_ratio: rat(&doc.rhs.outer_ratio, "rhs.outer_ratio")?,
            beta: rat(&doc.rhs.beta, "rhs.beta")?,
            summands,
        },
        n_min: doc.n_min,
        citation: doc.citation,
    })
}

// ---- LaTeX ----

/// Letter for a sequence: the named families get their usual letters,
/// anything else is `X`, `Y`, `Z`, `W`, then `X_1`-style fallbacks.
struct Symbols {
    generic: Vec<SequenceDef>,
}

impl Symbols {
    fn letter(&mut self, s: &SequenceDef) -> String {
        let named = [
            (NamedFamily::Fibonacci, "F"),
            (NamedFamily::Lucas, "L"),
            (NamedFamily::Pell, "P"),
            (NamedFamily::PellLucas, "Q"),
            (NamedFamily::Bronze, "B"),
            (NamedFamily::A015530, "a"),
        ];
        for (fam, letter) in named {
            if named_def(&fam).expect("fixed family").same_terms(s) {
                return letter.to_string();
            }
        }
        let idx = match self.generic.iter().position(|g| g.same_terms(s)) {
            Some(i) => i,
            None => {
                self.generic.push(s.clone());
                self.generic.len() - 1
            }
        };
        generic_letter(idx)
    }
}

fn generic_letter(idx: usize) -> String {
    const LETTERS: [&str; 4] = ["X", "Y", "Z", "W"];
    LETTERS
        .get(idx)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("X^{{({idx})}}"))
}

/// `stride*var + offset`, e.g. `n+1`, `3i`, `2n-4`, `5`.
fn index_expr(var: &str, stride: u32, offset: i64) -> String {
    let lead = match stride {
        0 => String::new(),
        1 => var.to_string(),
        s => format!("{s}{var}"),
    };
    match (lead.is_empty(), offset) {
        (true, o) => o.to_string(),
        (false, 0) => lead,
        (false, o) if o > 0 => format!("{lead}+{o}"),
        (false, o) => format!("{lead}{o}"),
    }
}

fn braced(s: &str) -> String {
    if s.chars().count() == 1 {
        s.to_string()
    } else {
        format!("{{{s}}}")
    }
}

fn frac(r: &Rational) -> String {
    let a = r.abs();
    let body = if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    };
    if r.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

/// `base^exp` for a geometric ratio, or empty when the ratio is 1. Bare
/// naturals with a one-character exponent stay unbraced (`2^i`) and are
/// followed by a space; everything else is `(base)^{exp}`.
fn power(ratio: &Rational, exp: &str) -> String {
    if ratio.is_one() {
        return String::new();
    }
    if ratio.is_integer() && !ratio.is_negative() {
        let b = ratio.numer().to_string();
        if exp.chars().count() == 1 {
            format!("{b}^{exp} ")
        } else {
            format!("{b}^{{{exp}}}")
        }
    } else {
        format!("({})^{{{exp}}}", frac(ratio))
    }
}

/// `coef * ratio^var` with the coefficient folded into the exponent when it
/// is a small power of the ratio (`2*2^n` becomes `2^{n+1}`).
fn coef_and_power(coef: &Rational, ratio: &Rational, var: &str) -> (bool, String) {
    let neg = coef.is_negative();
    let abs = coef.abs();
    if !ratio.is_one() && !ratio.is_zero() {
        for m in 1..=3u64 {
            let p = ratio.pow_u(m);
            if p == *coef || -&p == *coef {
                return (p != *coef, power(ratio, &format!("{var}+{m}")));
            }
        }
    }
    let pow = power(ratio, var);
    let c = coef_text(&abs, true);
    let sep = if !c.is_empty() && !pow.is_empty() { "\\cdot " } else { "" };
    (neg, format!("{c}{sep}{pow}"))
}

/// Leading coefficient with its sign handled by the caller; 1 is omitted.
fn coef_text(abs: &Rational, has_factor: bool) -> String {
    if abs.is_one() && has_factor {
        String::new()
    } else {
        frac(abs)
    }
}

fn join_signed(parts: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn render_lhs(d: &IdentityDescriptor, sym: &mut Symbols) -> String {
    let parts = d
        .lhs
        .iter()
        .filter(|t| !t.coef.is_zero())
        .map(|t| {
            let (neg, lead) = coef_and_power(&t.coef, &t.ratio, "n");
            let seq = t
                .seq
                .as_ref()
                .map(|s| format!("{}_{}", sym.letter(s), braced(&index_expr("n", t.stride, t.offset))))
                .unwrap_or_default();
            let body = match (lead.is_empty(), seq.is_empty()) {
                (true, true) => "1".to_string(),
                _ => format!("{lead}{seq}"),
            };
            (neg, body.trim_end().to_string())
        })
        .collect();
    join_signed(parts)
}

fn render_summands(summands: &[Summand], sym: &mut Symbols) -> String {
    let parts: Vec<(bool, String)> = summands
        .iter()
        .filter(|s| !s.coef.is_zero())
        .map(|s| {
            let seq = format!("{}_{}", sym.letter(&s.seq), braced(&index_expr("i", s.stride, s.offset)));
            (s.coef.is_negative(), format!("{}{}", coef_text(&s.coef.abs(), true), seq))
        })
        .collect();
    if parts.len() > 1 {
        format!("\\big({}\\big)", join_signed(parts))
    } else {
        join_signed(parts)
    }
}

fn render_rhs(d: &IdentityDescriptor, sym: &mut Symbols) -> String {
    let r = &d.rhs;
    let inner = render_summands(&r.summands, sym);
    let (outer_pow, weight) = match d.weight_ratio() {
        Some(t) if !t.is_one() => (String::new(), power(t, "n-i")),
        _ => (power(&r.outer_ratio, "n"), power(&r.beta, "i")),
    };
    let coef = if r.outer_coef.is_one() {
        String::new()
    } else if r.outer_coef == -Rational::one() {
        "-".into()
    } else if outer_pow.is_empty() {
        frac(&r.outer_coef)
    } else {
        format!("{}\\cdot ", frac(&r.outer_coef))
    };
    format!("{coef}{outer_pow}\\sum_{{i=0}}^n {weight}{inner}")
}

fn describe(s: &SequenceDef, letter: &str) -> String {
    format!(
        "% {letter}: {} with {letter}_n = ({}){letter}_{{n-1}} + ({}){letter}_{{n-2}}, {letter}_0 = {}, {letter}_1 = {}",
        if s.label().is_empty() { "sequence" } else { s.label() },
        s.c1(),
        s.c2(),
        s.x0(),
        s.x1()
    )
}

/// One display equation. Named families use `F, L, P, Q, B, a`; other
/// sequences get `X, Y, ...` and a comment line giving their definition.
pub fn to_latex(d: &IdentityDescriptor) -> String {
    let mut sym = Symbols { generic: Vec::new() };
    let lhs = render_lhs(d, &mut sym);
    let rhs = render_rhs(d, &mut sym);
    let mut out = String::new();
    for (i, s) in sym.generic.iter().enumerate() {
        out.push_str(&describe(s, &generic_letter(i)));
        out.push('\n');
    }
    out.push_str(&format!("\\[ {lhs} = {rhs} \\]"));
    out
}
