//! Command-line front end: argument definitions and the subcommand bodies.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or hypothesis
//! error, 3 external-resource error.

use std::fmt;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use identity_forge::catalog::{self, Params};
use identity_forge::engine::{classical_eval, reduce_generated, theorem1_descriptor, theorem2_descriptor};
use identity_forge::io::{from_json, to_json, to_latex};
use identity_forge::verifier::{
    fuzz_theorem1, fuzz_theorem2, render_reports, verify, verify_catalog_with_jobs, FuzzConfig, Tally,
};
use identity_forge::{Error, IdentityDescriptor, NamedFamily, Rational, SequenceDef};

pub mod oeis;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_EXTERNAL: u8 = 3;

/// An error carrying the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }

    fn external(message: impl Into<String>) -> Self {
        CliError { code: EXIT_EXTERNAL, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Every library error surfaces as a usage or hypothesis error.
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::usage(e.to_string())
    }
}

type CmdResult = Result<u8, CliError>;

/// Writes to stdout; a closed pipe (`| head`) ends the process quietly.
fn emit_str(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
    }
}

macro_rules! emit {
    ($($arg:tt)*) => { emit_str(&format!($($arg)*)) };
}

macro_rules! emitln {
    ($($arg:tt)*) => { emit_str(&format!("{}\n", format!($($arg)*))) };
}

#[derive(Parser, Debug)]
#[command(name = "identity-forge", version, about = "Exact weighted-sum identities for second-order recurrences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print X_n for a named family or an explicit recurrence.
    Eval {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Generate a weighted-sum identity from a sequence.
    Generate {
        #[command(flatten)]
        seq: SeqArgs,
        /// Offset of the summed sequence.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "theorem1")]
        k: Option<i64>,
        /// Use the normalized generator (requires X_0 = 1).
        #[arg(long)]
        theorem1: bool,
        /// Divide through by X_0 X_2 - X_1^2.
        #[arg(long)]
        reduced: bool,
        #[arg(long, conflicts_with = "latex")]
        json: bool,
        #[arg(long)]
        latex: bool,
    },
    /// Verify a catalog entry or a JSON descriptor over a range of n.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        n_min: Option<i64>,
        #[arg(long, default_value_t = 64)]
        n_max: i64,
    },
    /// Browse and sweep the catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Seeded random instances of both generators.
    Fuzz {
        /// Omitted: a random seed is drawn and printed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compare a family with its OEIS b-file.
    OeisCheck {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 30)]
        count: usize,
        #[arg(long)]
        offline: bool,
        #[arg(long, default_value = "fixtures")]
        fixtures: PathBuf,
    },
    /// Evaluate both sides of a classical identity.
    #[command(allow_negative_numbers = true)]
    Classical {
        /// ruggles, lucas_add, koshy55, catalan_fib, lucas_fib_mixed or lucas_lucas
        name: String,
        params: Vec<i64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// One line per entry.
    List,
    /// Render one entry.
    Show {
        #[command(flatten)]
        entry: EntryArgs,
        #[arg(long, conflicts_with = "latex")]
        json: bool,
        #[arg(long)]
        latex: bool,
    },
    /// Verify every entry on 0..=n-max (or from its n_min).
    VerifyAll {
        #[arg(long, default_value_t = 64)]
        n_max: u32,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    /// fibonacci, lucas, pell, pelllucas, bronze, a015530, u:a,b or v:a,b
    #[arg(long, conflicts_with_all = ["c1", "c2", "x0", "x1"])]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x1: Option<String>,
}

#[derive(Args, Debug)]
pub struct EntryArgs {
    #[arg(long)]
    pub id: String,
    /// Family parameter as key=value, repeatable.
    #[arg(long = "param", allow_hyphen_values = true)]
    pub params: Vec<String>,
}

#[derive(Args, Debug)]
pub struct Target {
    #[arg(long, required_unless_present = "json", conflicts_with = "json")]
    pub id: Option<String>,
    #[arg(long = "param", allow_hyphen_values = true, requires = "id")]
    pub params: Vec<String>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

impl SeqArgs {
    pub fn resolve(&self) -> Result<SequenceDef, CliError> {
        if let Some(name) = &self.family {
            return Ok(name.parse::<NamedFamily>()?.def()?);
        }
        let field = |v: &Option<String>, flag: &str| -> Result<Rational, CliError> {
            let text = v
                .as_deref()
                .ok_or_else(|| CliError::usage(format!("either --family or all of --c1 --c2 --x0 --x1 is required (missing {flag})")))?;
            Ok(text.parse::<Rational>()?)
        };
        let def = SequenceDef::new(
            field(&self.c1, "--c1")?,
            field(&self.c2, "--c2")?,
            field(&self.x0, "--x0")?,
            field(&self.x1, "--x1")?,
            "X",
        )?;
        Ok(def)
    }
}

fn parse_params(raw: &[String]) -> Result<Params, CliError> {
    raw.iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| CliError::usage(format!("--param expects key=value, got {kv:?}")))
        })
        .collect()
}

fn catalog_descriptor(id: &str, raw: &[String]) -> Result<IdentityDescriptor, CliError> {
    Ok(catalog::entry(id, &parse_params(raw)?)?.descriptor)
}

fn summary(d: &IdentityDescriptor) -> String {
    let mut out = format!("id: {}\n", d.id);
    if let Some(t) = d.weight_ratio() {
        out.push_str(&format!("t = {t}\n"));
    }
    let coef = match d.rhs.summands.as_slice() {
        [only] => &d.rhs.outer_coef * &only.coef,
        _ => d.rhs.outer_coef.clone(),
    };
    out.push_str(&format!("coefficient = {coef}\n"));
    out.push_str(&format!("n_min = {}\n", d.n_min));
    if !d.citation.is_empty() {
        out.push_str(&format!("citation: {}\n", d.citation));
    }
    out.push_str(&to_latex(d));
    out.push('\n');
    out
}

fn render(d: &IdentityDescriptor, json: bool, latex: bool) -> String {
    if json {
        format!("{}\n", to_json(d))
    } else if latex {
        format!("{}\n", to_latex(d))
    } else {
        summary(d)
    }
}

pub fn cmd_eval(seq: &SeqArgs, n: i64) -> CmdResult {
    emitln!("{}", seq.resolve()?.term(n));
    Ok(EXIT_OK)
}

pub fn cmd_generate(seq: &SeqArgs, k: Option<i64>, theorem1: bool, reduced: bool, json: bool, latex: bool) -> CmdResult {
    let def = seq.resolve()?;
    let mut d = match (theorem1, k) {
        (true, _) => theorem1_descriptor(&def)?,
        (false, Some(k)) => theorem2_descriptor(&def, k)?,
        (false, None) => return Err(CliError::usage("generate needs --k <int> or --theorem1")),
    };
    if reduced {
        d = reduce_generated(&d, &def)?;
    }
    emit!("{}", render(&d, json, latex));
    Ok(EXIT_OK)
}

pub fn cmd_verify(target: &Target, n_min: Option<i64>, n_max: i64) -> CmdResult {
    let d = match (&target.id, &target.json) {
        (Some(id), _) => catalog_descriptor(id, &target.params)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::external(format!("cannot read {}: {e}", path.display())))?;
            from_json(&text)?
        }
        (None, None) => return Err(CliError::usage("verify needs --id or --json")),
    };
    let report = verify(&d, n_min.unwrap_or(d.n_min as i64), n_max)?;
    emitln!("{report}");
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

pub fn cmd_catalog(action: &CatalogAction) -> CmdResult {
    match action {
        CatalogAction::List => {
            for e in catalog::all_entries() {
                emitln!("{}\t{}", e.name(), e.citation);
            }
            Ok(EXIT_OK)
        }
        CatalogAction::Show { entry, json, latex } => {
            let d = catalog_descriptor(&entry.id, &entry.params)?;
            emit!("{}", render(&d, *json, *latex));
            Ok(EXIT_OK)
        }
        CatalogAction::VerifyAll { n_max, jobs } => {
            let reports = verify_catalog_with_jobs(*n_max, *jobs);
            emit!("{}", render_reports(&reports));
            let tally = Tally::of(&reports);
            emitln!("{tally}");
            Ok(if tally.failed == 0 { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

pub fn cmd_fuzz(seed: Option<u64>, count: usize, jobs: Option<usize>) -> CmdResult {
    let seed = seed.unwrap_or_else(rand::random);
    emitln!("seed = {seed}");
    let mut cfg = FuzzConfig::new(seed, count);
    cfg.jobs = jobs;
    let mut failed = 0;
    for (name, reports) in [("offset generator", fuzz_theorem2(&cfg)), ("normalized generator", fuzz_theorem1(&cfg))] {
        let tally = Tally::of(&reports);
        for r in reports.iter().filter(|r| r.failed()) {
            emitln!("{r}");
        }
        emitln!("{name}: {tally}");
        failed += tally.failed;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAIL })
}

pub fn cmd_oeis_check(family: &str, count: usize, offline: bool, dir: &std::path::Path) -> CmdResult {
    let fam: NamedFamily = family.parse()?;
    let id = oeis::oeis_id(&fam)
        .ok_or_else(|| CliError::usage(format!("family {} has no OEIS mapping", fam.name())))?;
    let offline = offline || oeis::offline_from_env();
    let fixture = oeis::load(id, dir, offline).map_err(|e| match e {
        oeis::OeisError::Unavailable(m) => CliError::external(m),
        other => CliError::external(other.to_string()),
    })?;
    let source = match fixture.source {
        oeis::Source::Live => "live",
        oeis::Source::Cached => "cached",
    };
    match oeis::compare(&fam, &fixture, count).map_err(|e| CliError::usage(e.to_string()))? {
        oeis::Comparison::Match { count } => {
            emitln!("{} {id} ({source}): first {count} terms match", fam.name());
            Ok(EXIT_OK)
        }
        oeis::Comparison::Mismatch { index, expected, computed } => {
            emitln!("{} {id} ({source}): mismatch at index {index}: OEIS {expected}, computed {computed}", fam.name());
            Ok(EXIT_FAIL)
        }
        oeis::Comparison::TooShort { available, wanted } => Err(CliError::external(format!(
            "{id} ({source}) lists {available} terms, {wanted} requested"
        ))),
    }
}

pub fn cmd_classical(name: &str, params: &[i64]) -> CmdResult {
    let (lhs, rhs) = classical_eval(name, params)?;
    emitln!("lhs = {lhs}\nrhs = {rhs}");
    Ok(if lhs == rhs { EXIT_OK } else { EXIT_FAIL })
}

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Eval { seq, n } => cmd_eval(seq, *n),
        Command::Generate { seq, k, theorem1, reduced, json, latex } => {
            cmd_generate(seq, *k, *theorem1, *reduced, *json, *latex)
        }
        Command::Verify { target, n_min, n_max } => cmd_verify(target, *n_min, *n_max),
        Command::Catalog { action } => cmd_catalog(action),
        Command::Fuzz { seed, count, jobs } => cmd_fuzz(*seed, *count, *jobs),
        Command::OeisCheck { family, count, offline, fixtures } => {
            cmd_oeis_check(family, *count, *offline, fixtures)
        }
        Command::Classical { name, params } => cmd_classical(name, params),
    }
}
