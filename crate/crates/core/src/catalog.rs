//! Every displayed weighted-sum identity, as ready-to-verify descriptors.
//!
//! Parametrized families are instantiated over small fixed grids. Entries
//! `eq19`, `eq44` and `eq45` take their weights from the generators in
//! [`crate::engine`]; everything else is written out in its polished form and
//! cross-checked against the generators by evaluation in the tests.

use std::collections::BTreeMap;

use crate::engine::{
    rewrite_scale, theorem1_descriptor, theorem2_descriptor, GeometricTerm, IdentityDescriptor,
    SumSide, Summand,
};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::sequences::{
    a015530, bronze, fibonacci, lucas, named_def, pell, pell_lucas, subsequence_def, NamedFamily,
    SequenceDef,
};

/// Instantiated parameters, keyed by name (`j`, `k`, `m`, `t`, `a`, `b`, `seq`).
pub type Params = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub descriptor: IdentityDescriptor,
    pub citation: String,
    pub params: Params,
}

impl CatalogEntry {
    /// Instance name such as `eq8[m=6]`; also the descriptor id.
    pub fn name(&self) -> &str {
        &self.descriptor.id
    }
}

/// A family of catalog entries sharing one id.
pub struct Family {
    pub id: &'static str,
    pub citation: &'static str,
    /// Parameter names in display order.
    pub param_names: &'static [&'static str],
    grid: fn() -> Vec<Vec<String>>,
    build: fn(&Params) -> Sides,
}

impl Family {
    pub fn grid(&self) -> Vec<Params> {
        (self.grid)()
            .into_iter()
            .map(|vals| {
                self.param_names
                    .iter()
                    .map(|k| k.to_string())
                    .zip(vals)
                    .collect()
            })
            .collect()
    }

    fn instantiate(&self, params: &Params) -> Result<CatalogEntry> {
        let (lhs, rhs) = (self.build)(params)?;
        let name = if params.is_empty() {
            self.id.to_string()
        } else {
            let inner: Vec<String> = self
                .param_names
                .iter()
                .map(|k| format!("{k}={}", params[*k]))
                .collect();
            format!("{}[{}]", self.id, inner.join(","))
        };
        Ok(CatalogEntry {
            id: self.id.to_string(),
            descriptor: IdentityDescriptor {
                id: name,
                lhs,
                rhs,
                n_min: 0,
                citation: self.citation.to_string(),
            },
            citation: self.citation.to_string(),
            params: params.clone(),
        })
    }
}

fn q(s: &str) -> Rational {
    s.parse().expect("catalog literal")
}

fn r(n: i64) -> Rational {
    Rational::from(n)
}

fn ints(values: impl IntoIterator<Item = i64>) -> Vec<Vec<String>> {
    values.into_iter().map(|v| vec![v.to_string()]).collect()
}

fn none() -> Vec<Vec<String>> {
    vec![vec![]]
}

fn int_param(p: &Params, key: &str) -> i64 {
    p[key].parse().expect("validated grid value")
}

fn rat_param(p: &Params, key: &str) -> Rational {
    q(&p[key])
}

fn fib(n: i64) -> Rational {
    fibonacci().term(n)
}

fn luc(n: i64) -> Rational {
    lucas().term(n)
}

type Sides = Result<(Vec<GeometricTerm>, SumSide)>;

fn sury(_: &Params) -> Sides {
    let (f, l) = (fibonacci(), lucas());
    Ok((
        vec![GeometricTerm::seq(2, 2, &f, 1, 1)],
        SumSide::plain(1, 2, vec![Summand::new(1, &l, 1, 0)]),
    ))
}

fn martinjak(_: &Params) -> Sides {
    let (f, l) = (fibonacci(), lucas());
    Ok((
        vec![GeometricTerm::seq(1, q("-1/2"), &f, 1, 1)],
        SumSide::plain(1, q("-1/2"), vec![Summand::new(1, &l, 1, 1)]),
    ))
}

fn convolution(_: &Params) -> Sides {
    let (f, l) = (fibonacci(), lucas());
    Ok((
        vec![GeometricTerm::seq(1, 1, &f, 1, 1)],
        SumSide::weighted(1, &r(-2), vec![Summand::new(1, &l, 1, 1)])?,
    ))
}

fn marques(_: &Params) -> Sides {
    let (f, l) = (fibonacci(), lucas());
    Ok((
        vec![GeometricTerm::seq(3, 3, &f, 1, 1)],
        SumSide::plain(1, 3, vec![Summand::new(1, &l, 1, 0), Summand::new(1, &f, 1, 1)]),
    ))
}

fn edgar(p: &Params) -> Sides {
    let t = rat_param(p, "t");
    let (f, l) = (fibonacci(), lucas());
    let mut summands = vec![Summand::new(1, &l, 1, 0)];
    let tail = &t - r(2);
    if !tail.is_zero() {
        summands.push(Summand::new(tail, &f, 1, 1));
    }
    Ok((
        vec![GeometricTerm::seq(t.clone(), t.clone(), &f, 1, 1)],
        SumSide::plain(1, t, summands),
    ))
}

/// `t^{n+1} U_{n+1} = (1/a) sum t^i (V_i + (at - 2) U_{i+1})` for the
/// `(a, b)` Lucas pair, read with `U_{n+2} = a U_{n+1} + b U_n`.
fn aez(p: &Params) -> Sides {
    let (a, b, t) = (rat_param(p, "a"), rat_param(p, "b"), rat_param(p, "t"));
    let u = named_def(&NamedFamily::GeneralizedU(a.clone(), b.clone()))?;
    let v = named_def(&NamedFamily::GeneralizedV(a.clone(), b))?;
    let mut summands = vec![Summand::new(1, &v, 1, 0)];
    let tail = &a * &t - r(2);
    if !tail.is_zero() {
        summands.push(Summand::new(tail, &u, 1, 1));
    }
    Ok((
        vec![GeometricTerm::seq(t.clone(), t.clone(), &u, 1, 1)],
        SumSide::plain(a.recip()?, t, summands),
    ))
}

fn favorites(p: &Params) -> Sides {
    let (f, l) = (fibonacci(), lucas());
    let m = int_param(p, "m");
    let s = m as u32;
    let sides = match m {
        // sum (-2)^i L_{3i} = 2 - (-2)^{n+1} F_{3n}
        3 => (
            vec![GeometricTerm::constant(2, 1), GeometricTerm::seq(2, -2, &f, s, 0)],
            SumSide::plain(1, -2, vec![Summand::new(1, &l, s, 0)]),
        ),
        // 4 sum 9^i L_{6i} = 9^{n+1} F_{6n} + 8
        6 => (
            vec![GeometricTerm::seq(9, 9, &f, s, 0), GeometricTerm::constant(8, 1)],
            SumSide::plain(4, 9, vec![Summand::new(1, &l, s, 0)]),
        ),
        // 17 sum (-38)^i L_{9i} = 34 - (-38)^{n+1} F_{9n}
        9 => (
            vec![GeometricTerm::constant(34, 1), GeometricTerm::seq(38, -38, &f, s, 0)],
            SumSide::plain(17, -38, vec![Summand::new(1, &l, s, 0)]),
        ),
        _ => unreachable!("grid checked"),
    };
    Ok(sides)
}

fn adegoke_frontczak(p: &Params) -> Sides {
    let (f, l) = (fibonacci(), lucas());
    let j = int_param(p, "j");
    let (coef, base) = match j {
        3 => (1, 2),
        6 => (4, 9),
        9 => (17, 38),
        _ => unreachable!("grid checked"),
    };
    let w = Rational::new(1, base)?;
    let s = j as u32;
    Ok((
        vec![GeometricTerm::seq(1, w.clone(), &f, s, j)],
        SumSide::plain(coef, w, vec![Summand::new(1, &l, s, 0)]),
    ))
}

/// `F_{j(n+1)} = c sum t^{n-i} X_{ji+1}` with the displayed `(c, t)`.
fn steps(p: &Params) -> Sides {
    let f = fibonacci();
    let j = int_param(p, "j");
    let lucas_variant = p["seq"] == "L";
    let (coef, t) = match (j, lucas_variant) {
        (2, false) => (1, 1),
        (2, true) => (1, -1),
        (3, false) => (2, 1),
        (3, true) => (2, -3),
        (4, false) => (3, 2),
        (4, true) => (3, -4),
        _ => unreachable!("grid checked"),
    };
    let summed = if lucas_variant { lucas() } else { fibonacci() };
    let s = j as u32;
    Ok((
        vec![GeometricTerm::seq(1, 1, &f, s, j)],
        SumSide::weighted(coef, &r(t), vec![Summand::new(1, &summed, s, 1)])?,
    ))
}

fn pell_steps(p: &Params) -> Sides {
    let pl = pell();
    let k = int_param(p, "k");
    let (coef, t) = match k {
        2 => (q("1/2"), q("-1/2")),
        3 => (q("1/5"), q("-2/5")),
        4 => (q("1/12"), q("-5/12")),
        _ => unreachable!("grid checked"),
    };
    Ok((
        vec![GeometricTerm::seq(1, 1, &pl, 1, 1)],
        SumSide::weighted(coef, &t, vec![Summand::new(1, &pl, 1, k)])?,
    ))
}

/// `(1/3)^{n+1} Q_{n+1} = 1 - (2/3) sum (1/3)^i P_{i-1}`, with the constant
/// moved to the left: `(1/3)^{n+1} Q_{n+1} - 1 = -(2/3) sum (1/3)^i P_{i-1}`.
fn aez_pell(_: &Params) -> Sides {
    let third = q("1/3");
    Ok((
        vec![
            GeometricTerm::seq(third.clone(), third.clone(), &pell_lucas(), 1, 1),
            GeometricTerm::constant(-1, 1),
        ],
        SumSide::plain(q("-2/3"), third, vec![Summand::new(1, &pell(), 1, -1)]),
    ))
}

fn bronze_steps(p: &Params) -> Sides {
    let b = bronze();
    let j = int_param(p, "j");
    let (coef, t) = match j {
        2 => (3, 1),
        3 => (10, 3),
        4 => (33, 10),
        _ => unreachable!("grid checked"),
    };
    let s = j as u32;
    Ok((
        vec![GeometricTerm::seq(1, 1, &b, s, j)],
        SumSide::weighted(coef, &r(t), vec![Summand::new(1, &b, s, 1)])?,
    ))
}

/// `F_{n+1} = (1/L_k) sum (-L_{k-1}/L_k)^{n-i} L_{i+k}`: the generated Lucas
/// identity at offset `k`, divided by 5, with `2L_{n+2} - L_{n+1}` written as `5F_{n+1}`.
fn lucas_offset(p: &Params) -> Sides {
    let k = int_param(p, "k");
    let raw = theorem2_descriptor(&lucas(), k)?;
    let scaled = rewrite_scale(&raw, &q("1/5"), &Rational::one())?;
    Ok((vec![GeometricTerm::seq(1, 1, &fibonacci(), 1, 1)], scaled.rhs))
}

/// `L_j^{n+1} F_{j(n-1)} + (-1)^{j(n+1)} F_{2j} = sum (-1)^{j(n+i)} L_j^i F_{ji}`.
fn jstep_fib_zero(p: &Params) -> Sides {
    let f = fibonacci();
    let j = int_param(p, "j");
    let lj = luc(j);
    let alt = Rational::sign_pow(j);
    Ok((
        vec![
            GeometricTerm::seq(lj.clone(), lj.clone(), &f, j as u32, -j),
            GeometricTerm::constant(&alt * fib(2 * j), alt.clone()),
        ],
        SumSide {
            outer_coef: Rational::one(),
            outer_ratio: alt.clone(),
            beta: alt * lj,
            summands: vec![Summand::new(1, &f, j as u32, 0)],
        },
    ))
}

/// `2 (L_j/2)^{n+1} F_{jn}/F_j + 2 (-1)^{jn} = sum (-1)^{j(n+i)} (L_j/2)^i L_{ji}`.
fn jstep_lucas_zero(p: &Params) -> Sides {
    let j = int_param(p, "j");
    let half = luc(j) / r(2);
    let alt = Rational::sign_pow(j);
    Ok((
        vec![
            GeometricTerm::seq(luc(j) / fib(j), half.clone(), &fibonacci(), j as u32, 0),
            GeometricTerm::constant(2, alt.clone()),
        ],
        SumSide {
            outer_coef: Rational::one(),
            outer_ratio: alt.clone(),
            beta: alt * half,
            summands: vec![Summand::new(1, &lucas(), j as u32, 0)],
        },
    ))
}

/// `F_{j(n+1)} = (F_j / S_k) sum t^{n-i} S_{ji+k}` where `S` is Fibonacci or
/// Lucas and `t` comes from the normalized generator applied to `S_{jn+k}/S_k`.
fn offset_family(base: &SequenceDef, p: &Params) -> Sides {
    let j = int_param(p, "j");
    let k = int_param(p, "k");
    let sk = base.term(k);
    let normalized = subsequence_def(base, j as u32, k)?.scaled(&sk.recip()?);
    let generated = theorem1_descriptor(&normalized)?;
    let t = generated.rhs.outer_ratio;
    Ok((
        vec![GeometricTerm::seq(1, 1, &fibonacci(), j as u32, j)],
        SumSide::weighted(fib(j) / sk, &t, vec![Summand::new(1, base, j as u32, k)])?,
    ))
}

fn offset_fib(p: &Params) -> Sides {
    offset_family(&fibonacci(), p)
}

fn offset_lucas(p: &Params) -> Sides {
    offset_family(&lucas(), p)
}

fn reciprocal_lucas_weights(p: &Params) -> Sides {
    let f = fibonacci();
    let j = int_param(p, "j");
    let s = j as u32;
    let sides = match j {
        // 3 - F_{2(n+2)}/3^n = sum (1/3)^i F_{2i}
        2 => (
            vec![GeometricTerm::constant(3, 1), GeometricTerm::seq(-1, q("1/3"), &f, s, 4)],
            SumSide::plain(1, q("1/3"), vec![Summand::new(1, &f, s, 0)]),
        ),
        // F_{3(n+2)}/4^n - 8 = sum (1/4)^i F_{3i}
        3 => (
            vec![GeometricTerm::seq(1, q("1/4"), &f, s, 6), GeometricTerm::constant(-8, 1)],
            SumSide::plain(1, q("1/4"), vec![Summand::new(1, &f, s, 0)]),
        ),
        // 21 - F_{4(n+2)}/7^n = sum (1/7)^i F_{4i}
        4 => (
            vec![GeometricTerm::constant(21, 1), GeometricTerm::seq(-1, q("1/7"), &f, s, 8)],
            SumSide::plain(1, q("1/7"), vec![Summand::new(1, &f, s, 0)]),
        ),
        _ => unreachable!("grid checked"),
    };
    Ok(sides)
}

/// `P_{n+1} = sum 2^{n-i} P_{i-1}`
fn pell_neg(_: &Params) -> Sides {
    let pl = pell();
    Ok((
        vec![GeometricTerm::seq(1, 1, &pl, 1, 1)],
        SumSide::weighted(1, &r(2), vec![Summand::new(1, &pl, 1, -1)])?,
    ))
}

/// `P_{n+2} = 2^{n+1} + sum 2^{n-i} P_i`
fn pell_dt(_: &Params) -> Sides {
    let pl = pell();
    Ok((
        vec![GeometricTerm::seq(1, 1, &pl, 1, 2), GeometricTerm::constant(-2, 2)],
        SumSide::weighted(1, &r(2), vec![Summand::new(1, &pl, 1, 0)])?,
    ))
}

fn a015530_steps(p: &Params) -> Sides {
    let a = a015530();
    let k = int_param(p, "k");
    let (coef, t) = match k {
        2 => (q("1/4"), q("-3/4")),
        3 => (q("1/19"), q("-12/19")),
        _ => unreachable!("grid checked"),
    };
    Ok((
        vec![GeometricTerm::seq(1, 1, &a, 1, 1)],
        SumSide::weighted(coef, &t, vec![Summand::new(1, &a, 1, k)])?,
    ))
}

fn offset_grid(zero_allowed: bool, j_min: i64) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for j in j_min..=6i64 {
        for k in -(j - 1)..=(j - 1) {
            if k != 0 || zero_allowed {
                out.push(vec![j.to_string(), k.to_string()]);
            }
        }
    }
    out
}

pub static FAMILIES: &[Family] = &[
    Family {
        id: "eq1",
        citation: "Sury's identity: Fibonacci, Lucas and powers of two",
        param_names: &[],
        grid: none,
        build: sury,
    },
    Family {
        id: "eq2",
        citation: "Martinjak's telescoping-sum identity with weights (-1/2)^i",
        param_names: &[],
        grid: none,
        build: martinjak,
    },
    Family {
        id: "eq3",
        citation: "Martinjak's identity as a convolution with (-2)^(n-i)",
        param_names: &[],
        grid: none,
        build: convolution,
    },
    Family {
        id: "eq4",
        citation: "Marques' variant of Sury's identity with 3^i",
        param_names: &[],
        grid: none,
        build: marques,
    },
    Family {
        id: "eq5",
        citation: "Edgar's generalization with arbitrary weight t",
        param_names: &["t"],
        grid: || {
            ["2", "3", "-1/2", "5"]
                .iter()
                .map(|t| vec![t.to_string()])
                .collect()
        },
        build: edgar,
    },
    Family {
        id: "eq7",
        citation: "Abd-Elhameed and Zeyada's version for the Lucas pair U, V of (a, b)",
        param_names: &["a", "b", "t"],
        grid: || {
            let mut out = Vec::new();
            for (a, b) in [("1", "1"), ("2", "1"), ("3", "1")] {
                for t in ["1", "2", "-1/2"] {
                    out.push(vec![a.to_string(), b.to_string(), t.to_string()]);
                }
            }
            out
        },
        build: aez,
    },
    Family {
        id: "eq8",
        citation: "weighted Lucas sums over every m-th term with weights (L_m/2)^i, signed",
        param_names: &["m"],
        grid: || ints([3, 6, 9]),
        build: favorites,
    },
    Family {
        id: "eq8b",
        citation: "Adegoke and Frontczak's weighted Lucas sums over every j-th term",
        param_names: &["j"],
        grid: || ints([3, 6, 9]),
        build: adegoke_frontczak,
    },
    Family {
        id: "eq9",
        citation: "F_{j(n+1)} as a weighted sum of Fibonacci or Lucas terms F_{ji+1}, L_{ji+1}",
        param_names: &["j", "seq"],
        grid: || {
            let mut out = Vec::new();
            for j in 2..=4 {
                for s in ["F", "L"] {
                    out.push(vec![j.to_string(), s.to_string()]);
                }
            }
            out
        },
        build: steps,
    },
    Family {
        id: "eq10",
        citation: "Pell numbers as weighted sums starting at P_k",
        param_names: &["k"],
        grid: || ints([2, 3, 4]),
        build: pell_steps,
    },
    Family {
        id: "eq11",
        citation: "Abd-Elhameed and Zeyada's Pell/Pell-Lucas identity with weights (1/3)^i",
        param_names: &[],
        grid: none,
        build: aez_pell,
    },
    Family {
        id: "eq12",
        citation: "bronze Fibonacci numbers B_{j(n+1)} as weighted sums of B_{ji+1}",
        param_names: &["j"],
        grid: || ints([2, 3, 4]),
        build: bronze_steps,
    },
    Family {
        id: "eq19",
        citation: "F_{n+1} as a weighted Lucas sum starting at L_k",
        param_names: &["k"],
        grid: || ints(1..=4),
        build: lucas_offset,
    },
    Family {
        id: "eq23",
        citation: "j-step Fibonacci numbers with zero offset",
        param_names: &["j"],
        grid: || ints(1..=9),
        build: jstep_fib_zero,
    },
    Family {
        id: "eq33",
        citation: "j-step Lucas numbers with zero offset",
        param_names: &["j"],
        grid: || ints(1..=9),
        build: jstep_lucas_zero,
    },
    Family {
        id: "eq44",
        citation: "j-step Fibonacci numbers with offset k, 0 < |k| < j",
        param_names: &["j", "k"],
        grid: || offset_grid(false, 2),
        build: offset_fib,
    },
    Family {
        id: "eq45",
        citation: "j-step Lucas numbers with offset k, |k| < j",
        param_names: &["j", "k"],
        grid: || offset_grid(true, 1),
        build: offset_lucas,
    },
    Family {
        id: "eqDT",
        citation: "weighted j-step Fibonacci sums with weights (1/L_j)^i",
        param_names: &["j"],
        grid: || ints([2, 3, 4]),
        build: reciprocal_lucas_weights,
    },
    Family {
        id: "eqPP",
        citation: "Pell numbers as a weighted sum starting at P_{-1}",
        param_names: &[],
        grid: none,
        build: pell_neg,
    },
    Family {
        id: "eqPP2",
        citation: "Pell numbers P_{n+2} - 2^(n+1) as a weighted sum with weights 2^(n-i)",
        param_names: &[],
        grid: none,
        build: pell_dt,
    },
    Family {
        id: "eqA",
        citation: "A015530 (a_n = 4a_{n-1} + 3a_{n-2}) as weighted sums starting at a_k",
        param_names: &["k"],
        grid: || ints([2, 3]),
        build: a015530_steps,
    },
];

pub fn family(id: &str) -> Result<&'static Family> {
    FAMILIES.iter().find(|f| f.id == id).ok_or_else(|| {
        let ids: Vec<_> = FAMILIES.iter().map(|f| f.id).collect();
        Error::Usage(format!("unknown catalog id {id:?} (known: {})", ids.join(", ")))
    })
}

/// Canonical spelling of a user-supplied parameter value, so `t=-2/4`
/// matches the grid value `-1/2`.
fn canonical_value(key: &str, value: &str) -> String {
    if key == "seq" {
        return value.trim().to_ascii_uppercase();
    }
    value
        .parse::<Rational>()
        .map(|r| r.to_string())
        .unwrap_or_else(|_| value.trim().to_string())
}

/// Builds one catalog entry; `params` must name a point of the family's grid.
pub fn entry(id: &str, params: &Params) -> Result<CatalogEntry> {
    let fam = family(id)?;
    let wanted: Params = params
        .iter()
        .map(|(k, v)| (k.clone(), canonical_value(k, v)))
        .collect();
    let grid = fam.grid();
    if !grid.contains(&wanted) {
        let shown: Vec<String> = grid
            .iter()
            .map(|p| {
                p.iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        return Err(Error::Usage(format!(
            "parameters {wanted:?} are not on the grid of {id}; available: [{}]",
            shown.join("; ")
        )));
    }
    fam.instantiate(&wanted)
}

/// Every instantiated entry, in table order.
pub fn all_entries() -> Vec<CatalogEntry> {
    FAMILIES
        .iter()
        .flat_map(|fam| {
            fam.grid()
                .into_iter()
                .map(move |p| fam.instantiate(&p).expect("catalog grid point builds"))
        })
        .collect()
}

/// Convenience for tests and the CLI: `params(&[("j", "3"), ("k", "1")])`.
pub fn params(pairs: &[(&str, &str)]) -> Params {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}
