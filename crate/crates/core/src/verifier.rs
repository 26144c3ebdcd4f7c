//! Exact range verification, catalog sweeps and seeded fuzzing of the two
//! generators.

use std::fmt;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::all_entries;
use crate::engine::{theorem1_descriptor, theorem2_descriptor, Evaluator, IdentityDescriptor};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::sequences::SequenceDef;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

/// First `n` at which the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub n: i64,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub n_lo: i64,
    pub n_hi: i64,
    pub status: Status,
    pub first_failure: Option<Witness>,
    pub elapsed: Duration,
}

/// Equality ignores `elapsed`, the one field that is not reproducible.
impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.n_lo == other.n_lo
            && self.n_hi == other.n_hi
            && self.status == other.status
            && self.first_failure == other.first_failure
    }
}

impl Eq for VerificationReport {}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn skipped(&self) -> bool {
        matches!(self.status, Status::Skipped(_))
    }

    fn skip(id: String, n_range: &RangeInclusive<i64>, reason: impl Into<String>) -> Self {
        VerificationReport {
            id,
            n_lo: *n_range.start(),
            n_hi: *n_range.end(),
            status: Status::Skipped(reason.into()),
            first_failure: None,
            elapsed: Duration::ZERO,
        }
    }
}

/// One line, without timing: `PASS eq1 n=0..64`.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "PASS {} n={}..{}", self.id, self.n_lo, self.n_hi),
            Status::Skipped(why) => write!(f, "SKIP {} ({why})", self.id),
            Status::Fail => match &self.first_failure {
                Some(w) => write!(
                    f,
                    "FAIL {} n={}..{}: first counterexample n={} lhs={} rhs={}",
                    self.id, self.n_lo, self.n_hi, w.n, w.lhs, w.rhs
                ),
                None => write!(f, "FAIL {} n={}..{}", self.id, self.n_lo, self.n_hi),
            },
        }
    }
}

/// Renders a report list, one line each, with no timing information.
pub fn render_reports(reports: &[VerificationReport]) -> String {
    reports.iter().map(|r| format!("{r}\n")).collect()
}

/// Running value of `sum_{i=0..n} beta^i * summand(i)`, extended one index at a time.
struct RunningSum {
    next_i: i64,
    sum: Rational,
    beta_pow: Rational,
}

impl RunningSum {
    fn new() -> Self {
        RunningSum {
            next_i: 0,
            sum: Rational::zero(),
            beta_pow: Rational::one(),
        }
    }

    fn extend_to(&mut self, ev: &mut Evaluator<'_>, n: i64) -> &Rational {
        let beta = ev.descriptor().rhs.beta.clone();
        while self.next_i <= n {
            let v = ev.summand(self.next_i);
            self.sum += &self.beta_pow * v;
            self.beta_pow *= &beta;
            self.next_i += 1;
        }
        &self.sum
    }
}

/// Checks `lhs(n) == rhs(n)` exactly for every `n` in `n_lo..=n_hi`, stopping
/// at the first counterexample.
pub fn verify(d: &IdentityDescriptor, n_lo: i64, n_hi: i64) -> Result<VerificationReport> {
    if n_lo < d.n_min as i64 || n_hi < n_lo {
        return Err(Error::Usage(format!(
            "bad range {n_lo}..{n_hi} for {} (need n_min={} <= n_lo <= n_hi)",
            d.id, d.n_min
        )));
    }
    let start = Instant::now();
    let mut ev = Evaluator::new(d);
    let mut running = RunningSum::new();
    let mut outer_pow = d.rhs.outer_ratio.pow_u(n_lo as u64);
    let mut first_failure = None;
    for n in n_lo..=n_hi {
        let sum = running.extend_to(&mut ev, n);
        let rhs = &d.rhs.outer_coef * &outer_pow * sum;
        let lhs = ev.lhs(n);
        if lhs != rhs {
            first_failure = Some(Witness { n, lhs, rhs });
            break;
        }
        outer_pow *= &d.rhs.outer_ratio;
    }
    Ok(VerificationReport {
        id: d.id.clone(),
        n_lo,
        n_hi,
        status: if first_failure.is_some() {
            Status::Fail
        } else {
            Status::Pass
        },
        first_failure,
        elapsed: start.elapsed(),
    })
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .unwrap_or_else(|_| panic!("could not start {n} worker threads")),
        _ => f(),
    }
}

/// Verifies every catalog entry on `n_min..=n_hi`, in catalog order.
pub fn verify_catalog(n_hi: u32) -> Vec<VerificationReport> {
    verify_catalog_with_jobs(n_hi, None)
}

pub fn verify_catalog_with_jobs(n_hi: u32, jobs: Option<usize>) -> Vec<VerificationReport> {
    let entries = all_entries();
    with_jobs(jobs, || {
        entries
            .par_iter()
            .map(|e| {
                let d = &e.descriptor;
                let lo = d.n_min as i64;
                let hi = (n_hi as i64).max(lo);
                verify(d, lo, hi).expect("range is valid by construction")
            })
            .collect()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub instance_count: usize,
    pub coefficient_pool: Vec<Rational>,
    pub k_range: RangeInclusive<i64>,
    pub n_range: RangeInclusive<i64>,
    pub jobs: Option<usize>,
}

impl FuzzConfig {
    /// Integer pool `-3..=3`, `k` in `-4..=5`, `n` in `0..=32`.
    pub fn new(seed: u64, instance_count: usize) -> Self {
        FuzzConfig {
            seed,
            instance_count,
            coefficient_pool: (-3..=3).map(Rational::from).collect(),
            k_range: -4..=5,
            n_range: 0..=32,
            jobs: None,
        }
    }

    pub fn with_pool(mut self, pool: Vec<Rational>) -> Self {
        self.coefficient_pool = pool;
        self
    }
}

/// Distinct fractions `p/q` with `p` in `-3..=3` and `q` in `1..=3`.
pub fn small_rational_pool() -> Vec<Rational> {
    let mut pool: Vec<Rational> = (-3i64..=3)
        .flat_map(|p| (1i64..=3).map(move |q| Rational::new(p, q).expect("q > 0")))
        .collect();
    pool.sort();
    pool.dedup();
    pool
}

fn pick(rng: &mut ChaCha8Rng, pool: &[Rational]) -> Rational {
    pool[rng.random_range(0..pool.len())].clone()
}

fn nonzero_pool(pool: &[Rational]) -> Vec<Rational> {
    let nz: Vec<Rational> = pool.iter().filter(|r| !r.is_zero()).cloned().collect();
    if nz.is_empty() {
        vec![Rational::one()]
    } else {
        nz
    }
}

fn instance_label(prefix: &str, idx: usize, def: &SequenceDef, k: Option<i64>) -> String {
    let k = k.map(|k| format!(",k={k}")).unwrap_or_default();
    format!(
        "{prefix}#{idx}[c1={},c2={},x0={},x1={}{k}]",
        def.c1(),
        def.c2(),
        def.x0(),
        def.x1()
    )
}

/// The `(sequence, k)` stream for the offset generator; same seed, same stream.
pub fn theorem2_instances(cfg: &FuzzConfig) -> Vec<(SequenceDef, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool = if cfg.coefficient_pool.is_empty() {
        vec![Rational::zero()]
    } else {
        cfg.coefficient_pool.clone()
    };
    let c2_pool = nonzero_pool(&pool);
    (0..cfg.instance_count)
        .map(|i| {
            let c1 = pick(&mut rng, &pool);
            let c2 = pick(&mut rng, &c2_pool);
            let x0 = pick(&mut rng, &pool);
            let x1 = pick(&mut rng, &pool);
            let k = rng.random_range(cfg.k_range.clone());
            let def = SequenceDef::new(c1, c2, x0, x1, format!("X{i}")).expect("c2 drawn nonzero");
            (def, k)
        })
        .collect()
}

/// Normalized sequences (`x0 = 1`) for the normalized generator.
pub fn theorem1_instances(cfg: &FuzzConfig) -> Vec<SequenceDef> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool = if cfg.coefficient_pool.is_empty() {
        vec![Rational::zero()]
    } else {
        cfg.coefficient_pool.clone()
    };
    let c2_pool = nonzero_pool(&pool);
    (0..cfg.instance_count)
        .map(|i| {
            let c1 = pick(&mut rng, &pool);
            let c2 = pick(&mut rng, &c2_pool);
            let x1 = pick(&mut rng, &pool);
            SequenceDef::new(c1, c2, 1, x1, format!("A{i}")).expect("c2 drawn nonzero")
        })
        .collect()
}

fn run_generated(id: String, generated: Result<IdentityDescriptor>, cfg: &FuzzConfig) -> VerificationReport {
    let (lo, hi) = (*cfg.n_range.start(), *cfg.n_range.end());
    match generated {
        Ok(mut d) => {
            d.id = id;
            verify(&d, lo, hi).unwrap_or_else(|e| VerificationReport::skip(d.id.clone(), &cfg.n_range, e.to_string()))
        }
        Err(Error::InvalidOffset { reason, .. }) => VerificationReport::skip(id, &cfg.n_range, reason),
        Err(Error::DegenerateRatio) => VerificationReport::skip(id, &cfg.n_range, "t=0"),
        Err(other) => VerificationReport {
            id: format!("{id} ({other})"),
            n_lo: lo,
            n_hi: hi,
            status: Status::Fail,
            first_failure: None,
            elapsed: Duration::ZERO,
        },
    }
}

/// Generates and verifies one offset identity per instance. Instances whose
/// `X_k` or `X_{k-1}` vanishes are reported as skipped.
pub fn fuzz_theorem2(cfg: &FuzzConfig) -> Vec<VerificationReport> {
    let instances = theorem2_instances(cfg);
    with_jobs(cfg.jobs, || {
        instances
            .par_iter()
            .enumerate()
            .map(|(i, (def, k))| {
                let id = instance_label("thm2", i, def, Some(*k));
                run_generated(id, theorem2_descriptor(def, *k), cfg)
            })
            .collect()
    })
}

/// Generates and verifies one normalized identity per instance; `t = 0`
/// instances are reported as skipped.
pub fn fuzz_theorem1(cfg: &FuzzConfig) -> Vec<VerificationReport> {
    let instances = theorem1_instances(cfg);
    with_jobs(cfg.jobs, || {
        instances
            .par_iter()
            .enumerate()
            .map(|(i, def)| {
                let id = instance_label("thm1", i, def, None);
                run_generated(id, theorem1_descriptor(def), cfg)
            })
            .collect()
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Tally {
    pub fn of(reports: &[VerificationReport]) -> Self {
        reports.iter().fold(Tally::default(), |mut t, r| {
            match r.status {
                Status::Pass => t.passed += 1,
                Status::Fail => t.failed += 1,
                Status::Skipped(_) => t.skipped += 1,
            }
            t
        })
    }

    pub fn total(&self) -> usize {
        self.passed + self.failed + self.skipped
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} instances: {} pass, {} fail, {} skipped",
            self.total(),
            self.passed,
            self.failed,
            self.skipped
        )
    }
}
