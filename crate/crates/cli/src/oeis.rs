//! OEIS b-files: parsing, the family-to-id table, live fetch and the local
//! fixture cache.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use identity_forge::numeric::{BigInt, Rational};
use identity_forge::sequences::{named_def, NamedFamily};

pub const OFFLINE_ENV: &str = "IDENTITY_FORGE_OFFLINE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Live,
    Cached,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OeisFixture {
    pub id: String,
    pub terms: Vec<(i64, BigInt)>,
    pub source: Source,
}

#[derive(Debug, PartialEq, Eq)]
pub enum OeisError {
    /// Malformed b-file content.
    Format { line: usize, message: String },
    /// No network result and no usable fixture.
    Unavailable(String),
    UnmappedFamily(String),
}

impl fmt::Display for OeisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OeisError::Format { line, message } => write!(f, "b-file line {line}: {message}"),
            OeisError::Unavailable(why) => write!(f, "{why}"),
            OeisError::UnmappedFamily(name) => write!(f, "family {name} has no OEIS mapping"),
        }
    }
}

impl std::error::Error for OeisError {}

/// OEIS id for each fixed family; the b-file index equals the sequence index.
pub fn oeis_id(family: &NamedFamily) -> Option<&'static str> {
    match family {
        NamedFamily::Fibonacci => Some("A000045"),
        NamedFamily::Lucas => Some("A000032"),
        NamedFamily::Pell => Some("A000129"),
        NamedFamily::PellLucas => Some("A001333"),
        NamedFamily::Bronze => Some("A006190"),
        NamedFamily::A015530 => Some("A015530"),
        _ => None,
    }
}

pub fn bfile_url(id: &str) -> String {
    format!("https://oeis.org/{id}/b{}.txt", id.trim_start_matches('A'))
}

pub fn fixture_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("{id}.txt"))
}

/// Parses `index value` lines, skipping blanks and `#` comments. Indices must
/// run consecutively from the first one.
pub fn parse_bfile(id: &str, text: &str, source: Source) -> Result<OeisFixture, OeisError> {
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| OeisError::Format { line: lineno + 1, message };
        let mut fields = line.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad(format!("expected \"index value\", got {line:?}")));
        };
        let idx: i64 = idx.parse().map_err(|_| bad(format!("bad index {idx:?}")))?;
        let val: BigInt = val.parse().map_err(|_| bad(format!("bad value {val:?}")))?;
        if let Some((prev, _)) = terms.last() {
            if idx != prev + 1 {
                return Err(bad(format!("index {idx} does not follow {prev}")));
            }
        }
        terms.push((idx, val));
    }
    Ok(OeisFixture { id: id.to_string(), terms, source })
}

pub fn offline_from_env() -> bool {
    std::env::var(OFFLINE_ENV).map(|v| v == "1").unwrap_or(false)
}

fn read_fixture(dir: &Path, id: &str) -> Result<OeisFixture, OeisError> {
    let path = fixture_path(dir, id);
    let text = fs::read_to_string(&path)
        .map_err(|e| OeisError::Unavailable(format!("cannot read fixture {}: {e}", path.display())))?;
    parse_bfile(id, &text, Source::Cached)
}

fn fetch(id: &str) -> Result<String, String> {
    let url = bfile_url(id);
    let resp = ureq::get(&url)
        .timeout(Duration::from_secs(20))
        .call()
        .map_err(|e| format!("fetching {url}: {e}"))?;
    resp.into_string().map_err(|e| format!("reading {url}: {e}"))
}

/// Live fetch (cached into `dir`) unless offline; falls back to the fixture
/// when the network is unreachable.
pub fn load(id: &str, dir: &Path, offline: bool) -> Result<OeisFixture, OeisError> {
    if offline {
        return read_fixture(dir, id);
    }
    match fetch(id) {
        Ok(text) => {
            let fixture = parse_bfile(id, &text, Source::Live)?;
            // A failed cache write does not invalidate the fetched data.
            let _ = fs::create_dir_all(dir).and_then(|_| fs::write(fixture_path(dir, id), &text));
            Ok(fixture)
        }
        Err(net) => read_fixture(dir, id)
            .map_err(|fx| OeisError::Unavailable(format!("{net}; {fx}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Match { count: usize },
    Mismatch { index: i64, expected: BigInt, computed: Rational },
    TooShort { available: usize, wanted: usize },
}

/// Compares the first `count` fixture terms with the family's own terms.
pub fn compare(family: &NamedFamily, fixture: &OeisFixture, count: usize) -> Result<Comparison, OeisError> {
    let def = named_def(family).map_err(|_| OeisError::UnmappedFamily(family.name()))?;
    if fixture.terms.len() < count {
        return Ok(Comparison::TooShort { available: fixture.terms.len(), wanted: count });
    }
    for (idx, val) in fixture.terms.iter().take(count) {
        let computed = def.term(*idx);
        if computed != Rational::from(val.clone()) {
            return Ok(Comparison::Mismatch { index: *idx, expected: val.clone(), computed });
        }
    }
    Ok(Comparison::Match { count })
}
