//! OEIS b-file access: bundled fixtures, a local cache, and an HTTP
//! fetcher, plus sequence comparison against computed terms.
//!
//! Wire format: plain text, one "index value" pair per line, blank lines
//! and '#' comments skipped, indices strictly increasing. The first index
//! is whatever the file says it is; offsets are never assumed.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::ring::Int;
use crate::verify::{compare_terms, CoeffReport};

const FIXTURE_A004018: &str = include_str!("../fixtures/b004018.txt");
const FIXTURE_A258210: &str = include_str!("../fixtures/b258210.txt");

const USER_AGENT: &str = concat!("etaq/", env!("CARGO_PKG_VERSION"), " (q-series toolkit)");

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("malformed sequence id {0:?}; expected 'A' followed by six digits")]
    InvalidId(String),
    #[error("malformed b-file line {line_no}: {content:?}")]
    MalformedLine { line_no: usize, content: String },
    #[error("b-file indices not strictly increasing at line {line_no}")]
    NonIncreasingIndex { line_no: usize },
    #[error("fetch of {url} failed after {attempts} attempts: {message}")]
    Http {
        url: String,
        attempts: u32,
        message: String,
    },
    #[error("no bundled fixture for {0} in offline mode")]
    FixtureMissing(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Where a b-file's content came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Network,
    Cache,
    Fixture,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    sequence_id: String,
    entries: Vec<(i64, Int)>,
    source: Source,
}

impl BFile {
    pub fn sequence_id(&self) -> &str {
        &self.sequence_id
    }

    pub fn entries(&self) -> &[(i64, Int)] {
        &self.entries
    }

    pub fn source(&self) -> Source {
        self.source
    }
}

/// Checks "A######" shape and returns the digit part.
fn validate_id(id: &str) -> Result<&str, OeisError> {
    let digits = id
        .strip_prefix('A')
        .filter(|d| d.len() == 6 && d.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(|| OeisError::InvalidId(id.to_string()))?;
    Ok(digits)
}

/// Parses b-file text. Loss-free on entries; comments and blank lines are
/// skipped; indices must strictly increase.
pub fn parse_bfile(id: &str, text: &str, source: Source) -> Result<BFile, OeisError> {
    validate_id(id)?;
    let mut entries: Vec<(i64, Int)> = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (index_str, value_str) = match (parts.next(), parts.next(), parts.next()) {
            (Some(i), Some(v), None) => (i, v),
            _ => {
                return Err(OeisError::MalformedLine {
                    line_no,
                    content: raw.to_string(),
                })
            }
        };
        let index: i64 = index_str.parse().map_err(|_| OeisError::MalformedLine {
            line_no,
            content: raw.to_string(),
        })?;
        let value = Int::from_str(value_str).map_err(|_| OeisError::MalformedLine {
            line_no,
            content: raw.to_string(),
        })?;
        if let Some(&(last, _)) = entries.last() {
            if index <= last {
                return Err(OeisError::NonIncreasingIndex { line_no });
            }
        }
        entries.push((index, value));
    }
    Ok(BFile {
        sequence_id: id.to_string(),
        entries,
        source,
    })
}

/// Renders entries back into wire format.
pub fn serialize_bfile(b: &BFile) -> String {
    let mut out = String::new();
    for (index, value) in &b.entries {
        out.push_str(&format!("{index} {value}\n"));
    }
    out
}

/// The b-files shipped inside the crate (A004018 and A258210).
pub fn bundled_fixture(id: &str) -> Option<&'static str> {
    match id {
        "A004018" => Some(FIXTURE_A004018),
        "A258210" => Some(FIXTURE_A258210),
        _ => None,
    }
}

/// Parsed form of a bundled fixture.
pub fn bundled_bfile(id: &str) -> Result<BFile, OeisError> {
    let text = bundled_fixture(id).ok_or_else(|| OeisError::FixtureMissing(id.to_string()))?;
    parse_bfile(id, text, Source::Fixture)
}

/// Cache directory: ETAQ_CACHE_DIR when set, otherwise a per-user temp
/// subdirectory.
pub fn default_cache_dir() -> PathBuf {
    match std::env::var_os("ETAQ_CACHE_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => std::env::temp_dir().join("etaq-oeis-cache"),
    }
}

/// Retry policy for the network path.
#[derive(Debug, Clone)]
pub struct FetchOptions {
    /// Extra attempts after the first failure.
    pub retries: u32,
    /// First backoff delay; doubles per retry.
    pub backoff: Duration,
}

impl Default for FetchOptions {
    fn default() -> Self {
        FetchOptions {
            retries: 3,
            backoff: Duration::from_secs(1),
        }
    }
}

pub fn bfile_url(id: &str) -> Result<String, OeisError> {
    let digits = validate_id(id)?;
    Ok(format!("https://oeis.org/{id}/b{digits}.txt"))
}

fn cache_path(cache_dir: &Path, id: &str) -> Result<PathBuf, OeisError> {
    let digits = validate_id(id)?;
    Ok(cache_dir.join(format!("b{digits}.txt")))
}

fn write_cache(path: &Path, text: &str) -> Result<(), OeisError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    // Write-to-temp-then-rename keeps concurrent readers consistent.
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Fetch with an injectable transport; `http_get` performs one attempt.
/// Lookup order: local cache, then (offline) bundled fixture or (online)
/// the network with retries, caching the downloaded text.
pub fn fetch_bfile_with<G>(
    id: &str,
    offline: bool,
    cache_dir: &Path,
    options: &FetchOptions,
    mut http_get: G,
) -> Result<BFile, OeisError>
where
    G: FnMut(&str) -> Result<String, String>,
{
    let path = cache_path(cache_dir, id)?;
    if let Ok(text) = std::fs::read_to_string(&path) {
        return parse_bfile(id, &text, Source::Cache);
    }
    if offline {
        return bundled_bfile(id);
    }
    let url = bfile_url(id)?;
    let attempts = options.retries + 1;
    let mut delay = options.backoff;
    let mut last_error = String::new();
    for attempt in 0..attempts {
        match http_get(&url) {
            Ok(text) => {
                let parsed = parse_bfile(id, &text, Source::Network)?;
                write_cache(&path, &text)?;
                return Ok(parsed);
            }
            Err(message) => {
                last_error = message;
                if attempt + 1 < attempts && !delay.is_zero() {
                    std::thread::sleep(delay);
                    delay *= 2;
                }
            }
        }
    }
    Err(OeisError::Http {
        url,
        attempts,
        message: last_error,
    })
}

/// Production fetch: 30 s timeout per attempt, custom user agent.
pub fn fetch_bfile(id: &str, offline: bool, cache_dir: Option<&Path>) -> Result<BFile, OeisError> {
    let dir = cache_dir
        .map(Path::to_path_buf)
        .unwrap_or_else(default_cache_dir);
    fetch_bfile_with(id, offline, &dir, &FetchOptions::default(), |url| {
        let config = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(30)))
            .user_agent(USER_AGENT)
            .build();
        let agent = ureq::Agent::new_with_config(config);
        let mut response = agent.get(url).call().map_err(|e| e.to_string())?;
        response
            .body_mut()
            .read_to_string()
            .map_err(|e| e.to_string())
    })
}

/// Compares stored entries against a term generator, at the indices the
/// file declares (offsets are read, never guessed). At most `limit`
/// entries are examined.
pub fn compare_sequence(b: &BFile, f: impl Fn(i64) -> Int, limit: usize) -> CoeffReport {
    let taken = &b.entries[..limit.min(b.entries.len())];
    let id = format!("oeis:{}", b.sequence_id);
    if taken.is_empty() {
        return CoeffReport {
            identity_id: id,
            order_checked: 0,
            passed: true,
            first_mismatch: None,
            elapsed_ms: 0,
        };
    }
    let last_index = taken.last().map(|&(i, _)| i).unwrap_or(0);
    let report = compare_terms(
        &id,
        taken.len().saturating_sub(1) as u64,
        |slot| {
            let (index, value) = &taken[slot as usize];
            format!("n={index}: {value}")
        },
        |slot| {
            let (index, _) = &taken[slot as usize];
            format!("n={index}: {}", f(*index))
        },
    );
    // Report the sequence index range rather than the slot count, and map
    // a mismatching slot back to the sequence index.
    CoeffReport {
        identity_id: report.identity_id,
        order_checked: last_index.max(0) as u64,
        passed: report.passed,
        first_mismatch: report.first_mismatch.map(|m| {
            let n = taken[m.n as usize].0.max(0) as u64;
            crate::verify::Mismatch { n, ..m }
        }),
        elapsed_ms: report.elapsed_ms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{a2_closed_form, a6_closed_form, a6_divisor_sum, r_lattice};
    use std::cell::Cell;

    #[test]
    fn fixture_a004018_parses_with_offset_zero() {
        let b = bundled_bfile("A004018").unwrap();
        assert_eq!(b.source(), Source::Fixture);
        let head: Vec<(i64, i64)> = b.entries()[..6]
            .iter()
            .map(|(i, v)| (*i, i64::try_from(v).unwrap()))
            .collect();
        assert_eq!(head, vec![(0, 1), (1, 4), (2, 4), (3, 0), (4, 4), (5, 8)]);
        assert!(b.entries().len() >= 1000);
    }

    #[test]
    fn fixture_a258210_starts_at_one() {
        let b = bundled_bfile("A258210").unwrap();
        assert_eq!(b.entries()[0], (1, Int::from(-1)));
        assert_eq!(i64::try_from(&b.entries()[0].1).unwrap(), a6_closed_form(1));
        assert!(b.entries().len() >= 1000);
    }

    #[test]
    fn fixtures_validate_against_independent_oracles() {
        // the lattice count for r(n), the divisor sum for a_6(n); neither
        // route generated the fixture values used by the comparison checks
        let r_file = bundled_bfile("A004018").unwrap();
        for (n, value) in &r_file.entries()[..600] {
            assert_eq!(value, &Int::from(r_lattice(*n as u64)), "r at {n}");
        }
        let a6_file = bundled_bfile("A258210").unwrap();
        for (n, value) in &a6_file.entries()[..600] {
            assert_eq!(value, &Int::from(a6_divisor_sum(*n as u64)), "a6 at {n}");
        }
    }

    #[test]
    fn parse_rejects_malformed_lines() {
        let err = parse_bfile("A004018", "0 1\nabc\n", Source::Fixture).unwrap_err();
        match err {
            OeisError::MalformedLine { line_no, content } => {
                assert_eq!(line_no, 2);
                assert_eq!(content, "abc");
            }
            other => panic!("unexpected error {other:?}"),
        }
        let err = parse_bfile("A004018", "0 1\n0 2\n", Source::Fixture).unwrap_err();
        assert!(matches!(err, OeisError::NonIncreasingIndex { line_no: 2 }));
        assert!(matches!(
            parse_bfile("nope", "", Source::Fixture),
            Err(OeisError::InvalidId(_))
        ));
    }

    #[test]
    fn parse_serialize_round_trip() {
        for id in ["A004018", "A258210"] {
            let b = bundled_bfile(id).unwrap();
            let again = parse_bfile(id, &serialize_bfile(&b), Source::Fixture).unwrap();
            assert_eq!(b.entries(), again.entries());
        }
    }

    #[test]
    fn compare_against_closed_forms() {
        let r_file = bundled_bfile("A004018").unwrap();
        let report = compare_sequence(
            &r_file,
            |n| Int::from(crate::arith::r_from_excess(n as u64)),
            1000,
        );
        assert!(report.passed, "{report}");

        let a6_file = bundled_bfile("A258210").unwrap();
        let report = compare_sequence(&a6_file, |n| Int::from(a6_closed_form(n as u64)), 1000);
        assert!(report.passed, "{report}");
    }

    #[test]
    fn negative_control_fails_at_one() {
        // a_2 is not a_6: the A258210 entries disagree from the very first
        let a6_file = bundled_bfile("A258210").unwrap();
        let report = compare_sequence(&a6_file, |n| Int::from(a2_closed_form(n as u64)), 20);
        assert!(!report.passed);
        let m = report.first_mismatch.unwrap();
        assert_eq!(m.n, 1);
        assert!(m.lhs.contains("-1"), "{}", m.lhs);
        assert!(m.rhs.contains("-4"), "{}", m.rhs);
    }

    #[test]
    fn offsets_come_from_the_file() {
        let b = parse_bfile("A000000", "5 25\n6 36\n7 49\n", Source::Fixture).unwrap();
        let report = compare_sequence(&b, |n| Int::from(n * n), 3);
        assert!(report.passed);
        assert_eq!(report.order_checked, 7);
    }

    #[test]
    fn cache_hit_never_touches_the_network() {
        let dir = tempfile::tempdir().unwrap();
        let b = bundled_bfile("A004018").unwrap();
        write_cache(
            &cache_path(dir.path(), "A004018").unwrap(),
            &serialize_bfile(&b),
        )
        .unwrap();

        let calls = Cell::new(0u32);
        let fetched = fetch_bfile_with(
            "A004018",
            false,
            dir.path(),
            &FetchOptions {
                retries: 0,
                backoff: Duration::ZERO,
            },
            |_| {
                calls.set(calls.get() + 1);
                Err("network disabled".to_string())
            },
        )
        .unwrap();
        assert_eq!(calls.get(), 0);
        assert_eq!(fetched.source(), Source::Cache);
        assert_eq!(fetched.entries(), b.entries());
    }

    #[test]
    fn network_fetch_caches_the_body() {
        let dir = tempfile::tempdir().unwrap();
        let calls = Cell::new(0u32);
        let fetched = fetch_bfile_with(
            "A004018",
            false,
            dir.path(),
            &FetchOptions {
                retries: 0,
                backoff: Duration::ZERO,
            },
            |url| {
                assert_eq!(url, "https://oeis.org/A004018/b004018.txt");
                calls.set(calls.get() + 1);
                Ok("0 1\n1 4\n".to_string())
            },
        )
        .unwrap();
        assert_eq!(calls.get(), 1);
        assert_eq!(fetched.source(), Source::Network);
        assert!(cache_path(dir.path(), "A004018").unwrap().exists());

        // second fetch is served from the fresh cache
        let again = fetch_bfile_with(
            "A004018",
            false,
            dir.path(),
            &FetchOptions {
                retries: 0,
                backoff: Duration::ZERO,
            },
            |_| panic!("must not hit the network"),
        )
        .unwrap();
        assert_eq!(again.source(), Source::Cache);
    }

    #[test]
    fn transient_failures_are_retried() {
        let dir = tempfile::tempdir().unwrap();
        let calls = Cell::new(0u32);
        let fetched = fetch_bfile_with(
            "A004018",
            false,
            dir.path(),
            &FetchOptions {
                retries: 3,
                backoff: Duration::ZERO,
            },
            |_| {
                calls.set(calls.get() + 1);
                if calls.get() < 3 {
                    Err("flaky".to_string())
                } else {
                    Ok("0 1\n".to_string())
                }
            },
        )
        .unwrap();
        assert_eq!(calls.get(), 3);
        assert_eq!(fetched.source(), Source::Network);
    }

    #[test]
    fn exhausted_retries_report_the_failure() {
        let dir = tempfile::tempdir().unwrap();
        let calls = Cell::new(0u32);
        let err = fetch_bfile_with(
            "A004018",
            false,
            dir.path(),
            &FetchOptions {
                retries: 2,
                backoff: Duration::ZERO,
            },
            |_| {
                calls.set(calls.get() + 1);
                Err("down".to_string())
            },
        )
        .unwrap_err();
        assert_eq!(calls.get(), 3);
        match err {
            OeisError::Http { attempts, message, .. } => {
                assert_eq!(attempts, 3);
                assert_eq!(message, "down");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn offline_mode_uses_fixture_or_fails() {
        let dir = tempfile::tempdir().unwrap();
        let fetched = fetch_bfile_with(
            "A258210",
            true,
            dir.path(),
            &FetchOptions {
                retries: 0,
                backoff: Duration::ZERO,
            },
            |_| panic!("offline must not hit the network"),
        )
        .unwrap();
        assert_eq!(fetched.source(), Source::Fixture);

        let missing = fetch_bfile_with(
            "A000001",
            true,
            dir.path(),
            &FetchOptions {
                retries: 0,
                backoff: Duration::ZERO,
            },
            |_| panic!("offline must not hit the network"),
        );
        assert!(matches!(missing, Err(OeisError::FixtureMissing(_))));
    }
}
