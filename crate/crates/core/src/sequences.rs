//! Second-order linear recurrences `X_n = c1 X_{n-1} + c2 X_{n-2}` over the
//! rationals, extended to negative indices with the backward step
//! `X_{n-2} = (X_n - c1 X_{n-1}) / c2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Coefficients and initial values of a bi-infinite second-order sequence.
///
/// `c2` is never zero, so every term at a negative index is well defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SequenceDef {
    c1: Rational,
    c2: Rational,
    x0: Rational,
    x1: Rational,
    label: String,
}

impl SequenceDef {
    pub fn new(
        c1: impl Into<Rational>,
        c2: impl Into<Rational>,
        x0: impl Into<Rational>,
        x1: impl Into<Rational>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let c2 = c2.into();
        if c2.is_zero() {
            return Err(Error::ZeroC2);
        }
        Ok(SequenceDef {
            c1: c1.into(),
            c2,
            x0: x0.into(),
            x1: x1.into(),
            label: label.into(),
        })
    }

    pub fn c1(&self) -> &Rational {
        &self.c1
    }

    pub fn c2(&self) -> &Rational {
        &self.c2
    }

    pub fn x0(&self) -> &Rational {
        &self.x0
    }

    pub fn x1(&self) -> &Rational {
        &self.x1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Same recurrence, initial values multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> SequenceDef {
        SequenceDef {
            c1: self.c1.clone(),
            c2: self.c2.clone(),
            x0: &self.x0 * factor,
            x1: &self.x1 * factor,
            label: self.label.clone(),
        }
    }

    /// True when both definitions describe the same numbers, ignoring labels.
    pub fn same_terms(&self, other: &SequenceDef) -> bool {
        self.c1 == other.c1 && self.c2 == other.c2 && self.x0 == other.x0 && self.x1 == other.x1
    }

    pub fn term(&self, n: i64) -> Rational {
        term(self, n)
    }
}

impl fmt::Display for SequenceDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (c1={}, c2={}, x0={}, x1={})",
            self.label, self.c1, self.c2, self.x0, self.x1
        )
    }
}

/// A sequence together with its memoized terms.
///
/// Terms live in two growable runs, `forward[n] = X_n` for `n >= 0` and
/// `backward[m - 1] = X_{-m}`. Not shareable across threads while mutating;
/// parallel callers give each worker its own instance.
#[derive(Clone, Debug)]
pub struct Sequence {
    def: SequenceDef,
    forward: Vec<Rational>,
    backward: Vec<Rational>,
}

/// Alias kept for readers looking for the cache by its role.
pub type TermCache = Sequence;

impl Sequence {
    pub fn new(def: SequenceDef) -> Self {
        let forward = vec![def.x0.clone(), def.x1.clone()];
        Sequence {
            def,
            forward,
            backward: Vec::new(),
        }
    }

    pub fn def(&self) -> &SequenceDef {
        &self.def
    }

    pub fn term(&mut self, n: i64) -> Rational {
        if n >= 0 {
            let n = n as usize;
            while self.forward.len() <= n {
                let len = self.forward.len();
                let next = &self.def.c1 * &self.forward[len - 1] + &self.def.c2 * &self.forward[len - 2];
                self.forward.push(next);
            }
            self.forward[n].clone()
        } else {
            let m = n.unsigned_abs() as usize;
            while self.backward.len() < m {
                // X_{j-2} = (X_j - c1 X_{j-1}) / c2 with j = -len + 1
                let len = self.backward.len();
                let (xj, xj1) = match len {
                    0 => (&self.forward[1], &self.forward[0]),
                    1 => (&self.forward[0], &self.backward[0]),
                    _ => (&self.backward[len - 2], &self.backward[len - 1]),
                };
                let prev = (xj - &self.def.c1 * xj1) / &self.def.c2;
                self.backward.push(prev);
            }
            self.backward[m - 1].clone()
        }
    }

    /// Number of memoized terms on each side of zero.
    pub fn cached_len(&self) -> (usize, usize) {
        (self.forward.len(), self.backward.len())
    }
}

/// `X_n` for any integer `n`.
pub fn term(def: &SequenceDef, n: i64) -> Rational {
    Sequence::new(def.clone()).term(n)
}

/// The named families of the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedFamily {
    Fibonacci,
    Lucas,
    Pell,
    PellLucas,
    Bronze,
    A015530,
    GeneralizedU(Rational, Rational),
    GeneralizedV(Rational, Rational),
}

impl NamedFamily {
    /// The six fixed families, in catalog order.
    pub const FIXED: [NamedFamily; 6] = [
        NamedFamily::Fibonacci,
        NamedFamily::Lucas,
        NamedFamily::Pell,
        NamedFamily::PellLucas,
        NamedFamily::Bronze,
        NamedFamily::A015530,
    ];

    pub fn name(&self) -> String {
        match self {
            NamedFamily::Fibonacci => "fibonacci".into(),
            NamedFamily::Lucas => "lucas".into(),
            NamedFamily::Pell => "pell".into(),
            NamedFamily::PellLucas => "pelllucas".into(),
            NamedFamily::Bronze => "bronze".into(),
            NamedFamily::A015530 => "a015530".into(),
            NamedFamily::GeneralizedU(a, b) => format!("U({a},{b})"),
            NamedFamily::GeneralizedV(a, b) => format!("V({a},{b})"),
        }
    }

    pub fn def(&self) -> Result<SequenceDef> {
        named_def(self)
    }
}

impl FromStr for NamedFamily {
    type Err = Error;

    /// Parses `fibonacci`, `lucas`, `pell`, `pelllucas`, `bronze`, `a015530`,
    /// and `u:a,b` / `v:a,b` for the generalized pairs.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let fam = match lower.as_str() {
            "fibonacci" | "fib" => NamedFamily::Fibonacci,
            "lucas" => NamedFamily::Lucas,
            "pell" => NamedFamily::Pell,
            "pelllucas" | "pell-lucas" | "pell_lucas" => NamedFamily::PellLucas,
            "bronze" => NamedFamily::Bronze,
            "a015530" => NamedFamily::A015530,
            other => {
                let parsed = other
                    .split_once(':')
                    .and_then(|(kind, args)| {
                        let (a, b) = args.split_once(',')?;
                        Some((kind, a.parse::<Rational>().ok()?, b.parse::<Rational>().ok()?))
                    });
                match parsed {
                    Some(("u", a, b)) => NamedFamily::GeneralizedU(a, b),
                    Some(("v", a, b)) => NamedFamily::GeneralizedV(a, b),
                    _ => {
                        return Err(Error::Usage(format!(
                            "unknown family {s:?} (expected fibonacci, lucas, pell, pelllucas, \
                             bronze, a015530, u:a,b or v:a,b)"
                        )))
                    }
                }
            }
        };
        Ok(fam)
    }
}

pub fn named_def(f: &NamedFamily) -> Result<SequenceDef> {
    match f {
        NamedFamily::Fibonacci => SequenceDef::new(1, 1, 0, 1, "F"),
        NamedFamily::Lucas => SequenceDef::new(1, 1, 2, 1, "L"),
        NamedFamily::Pell => SequenceDef::new(2, 1, 0, 1, "P"),
        NamedFamily::PellLucas => SequenceDef::new(2, 1, 1, 1, "Q"),
        NamedFamily::Bronze => SequenceDef::new(3, 1, 0, 1, "B"),
        NamedFamily::A015530 => SequenceDef::new(4, 3, 0, 1, "a"),
        NamedFamily::GeneralizedU(a, b) => {
            SequenceDef::new(a.clone(), b.clone(), 0, 1, format!("U^{{{a},{b}}}"))
        }
        NamedFamily::GeneralizedV(a, b) => {
            SequenceDef::new(a.clone(), b.clone(), 2, a.clone(), format!("V^{{{a},{b}}}"))
        }
    }
}

pub fn fibonacci() -> SequenceDef {
    named_def(&NamedFamily::Fibonacci).expect("fixed family")
}

pub fn lucas() -> SequenceDef {
    named_def(&NamedFamily::Lucas).expect("fixed family")
}

pub fn pell() -> SequenceDef {
    named_def(&NamedFamily::Pell).expect("fixed family")
}

pub fn pell_lucas() -> SequenceDef {
    named_def(&NamedFamily::PellLucas).expect("fixed family")
}

pub fn bronze() -> SequenceDef {
    named_def(&NamedFamily::Bronze).expect("fixed family")
}

pub fn a015530() -> SequenceDef {
    named_def(&NamedFamily::A015530).expect("fixed family")
}

/// `V_j` of the `(c1, c2)` recurrence, with `V_0 = 2` and `V_1 = c1`.
pub fn generalized_v(c1: &Rational, c2: &Rational, j: u32) -> Rational {
    let (mut prev, mut cur) = (Rational::from(2), c1.clone());
    if j == 0 {
        return prev;
    }
    for _ in 1..j {
        let next = c1 * &cur + c2 * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The j-step subsequence `Y_n = X_{jn+k}`, itself second-order with
/// coefficients `(V_j, -(-c2)^j)`.
pub fn subsequence_def(def: &SequenceDef, j: u32, k: i64) -> Result<SequenceDef> {
    if j == 0 {
        return Err(Error::Precondition("subsequence step j must be >= 1".into()));
    }
    let c1 = generalized_v(&def.c1, &def.c2, j);
    let c2 = -(-&def.c2).pow_u(j as u64);
    let mut seq = Sequence::new(def.clone());
    let x0 = seq.term(k);
    let x1 = seq.term(j as i64 + k);
    let label = if j == 1 && k == 0 {
        def.label.clone()
    } else {
        format!("{}[{}n{:+}]", def.label, j, k)
    };
    SequenceDef::new(c1, c2, x0, x1, label)
}
