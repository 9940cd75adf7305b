//! Registry index snapshots: fetch over HTTP, cache on disk, fall back to the
//! cache when the remote is unreachable.
//!
//! Cache layout: `<cache-dir>/<date>/<checksum>.dcf` plus `index.tsv` mapping
//! date to checksum. Files are written with a write-then-rename discipline so
//! concurrent fetches cannot corrupt entries.

use super::{parse_dcf, PackageRecord, ParseWarning};
use crate::error::{Error, Result};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};

/// A parsed registry index tied to the bytes it came from.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub records: Vec<PackageRecord>,
    /// Capture date (UTC, `YYYY-MM-DD`) — the cache's key granularity.
    pub captured_at: String,
    /// URL or file path the bytes came from.
    pub source: String,
    /// SHA-256 of the raw bytes, lowercase hex.
    pub checksum: String,
    /// True when served from cache because the remote was unreachable.
    pub stale: bool,
    pub parse_warnings: Vec<ParseWarning>,
    pub fetch_notes: Vec<String>,
}

/// Abstraction over the network so the cache logic is testable offline.
pub trait RemoteSource {
    fn fetch(&self, url: &str) -> Result<Vec<u8>>;
}

/// Default HTTP client.
pub struct HttpSource;

impl RemoteSource for HttpSource {
    fn fetch(&self, url: &str) -> Result<Vec<u8>> {
        let agent = ureq::AgentBuilder::new()
            .timeout_connect(std::time::Duration::from_secs(15))
            .timeout(std::time::Duration::from_secs(300))
            .build();
        let response = agent
            .get(url)
            .call()
            .map_err(|e| Error::Network(format!("GET {url} failed: {e}")))?;
        let mut bytes = Vec::new();
        response
            .into_reader()
            .read_to_end(&mut bytes)
            .map_err(|e| Error::Network(format!("reading body of {url} failed: {e}")))?;
        Ok(bytes)
    }
}

pub struct FetchOptions<'a> {
    /// Re-download even if a snapshot for today is cached.
    pub force_refresh: bool,
    pub source: &'a dyn RemoteSource,
}

impl Default for FetchOptions<'static> {
    fn default() -> Self {
        FetchOptions {
            force_refresh: false,
            source: &HttpSource,
        }
    }
}

/// Fetches the registry index at `url`, caching under `cache_dir`.
///
/// A snapshot already cached for today's date is served without touching the
/// network. On network failure with a warm cache the newest cached copy is
/// returned with the stale flag set; with an empty cache the failure is fatal.
pub fn fetch_snapshot(url: &str, cache_dir: &Path) -> Result<Snapshot> {
    fetch_snapshot_with(url, cache_dir, &FetchOptions::default())
}

pub fn fetch_snapshot_with(url: &str, cache_dir: &Path, opts: &FetchOptions) -> Result<Snapshot> {
    std::fs::create_dir_all(cache_dir)?;
    let mut index = read_index(cache_dir)?;
    let today = utc_date_today();

    // Freshness check: an entry for today means the cache is current.
    if !opts.force_refresh {
        if let Some(checksum) = index.get(&today) {
            let path = entry_path(cache_dir, &today, checksum);
            if path.exists() {
                return load_entry(cache_dir, url, &today, checksum, false, Vec::new());
            }
        }
    }

    match opts.source.fetch(url) {
        Ok(bytes) => {
            let checksum = hex_sha256(&bytes);
            let mut notes = Vec::new();
            if let Some(old) = index.get(&today) {
                if old != &checksum {
                    notes.push(format!(
                        "checksum changed on re-download for {today}: kept {old} and {checksum}, using the newest"
                    ));
                }
            }
            let path = entry_path(cache_dir, &today, &checksum);
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            atomic_write(&path, &bytes)?;
            index.insert(today.clone(), checksum.clone());
            write_index(cache_dir, &index)?;
            load_entry(cache_dir, url, &today, &checksum, false, notes)
        }
        Err(fetch_err) => {
            // Newest cached entry, if any, keeps the pipeline alive.
            let newest = index
                .iter()
                .rev()
                .find(|(date, checksum)| entry_path(cache_dir, date, checksum).exists());
            match newest {
                Some((date, checksum)) => {
                    let notes = vec![format!(
                        "remote unreachable ({fetch_err}); serving stale snapshot captured {date}"
                    )];
                    load_entry(cache_dir, url, &date.clone(), &checksum.clone(), true, notes)
                }
                None => Err(Error::Network(format!(
                    "{fetch_err}; cache at {} is empty — check connectivity or pass a local index file instead",
                    cache_dir.display()
                ))),
            }
        }
    }
}

fn load_entry(
    cache_dir: &Path,
    url: &str,
    date: &str,
    checksum: &str,
    stale: bool,
    fetch_notes: Vec<String>,
) -> Result<Snapshot> {
    let bytes = std::fs::read(entry_path(cache_dir, date, checksum))?;
    let outcome = parse_dcf(&bytes)?;
    let (records, mut parse_warnings) = dedup_records(outcome.records);
    parse_warnings.extend(outcome.warnings);
    parse_warnings.sort_by_key(|w| w.line);
    Ok(Snapshot {
        records,
        captured_at: date.to_string(),
        source: url.to_string(),
        checksum: checksum.to_string(),
        stale,
        parse_warnings,
        fetch_notes,
    })
}

/// Keeps the first record for each name; duplicates are reported, satisfying
/// the uniqueness requirement on snapshots.
pub(crate) fn dedup_records(
    records: Vec<PackageRecord>,
) -> (Vec<PackageRecord>, Vec<ParseWarning>) {
    let mut seen = std::collections::HashSet::new();
    let mut kept = Vec::with_capacity(records.len());
    let mut warnings = Vec::new();
    for record in records {
        if seen.insert(record.name.clone()) {
            kept.push(record);
        } else {
            warnings.push(ParseWarning {
                line: 0,
                message: format!(
                    "duplicate record for {} dropped (first occurrence kept)",
                    record.name
                ),
            });
        }
    }
    (kept, warnings)
}

fn entry_path(cache_dir: &Path, date: &str, checksum: &str) -> PathBuf {
    cache_dir.join(date).join(format!("{checksum}.dcf"))
}

fn read_index(cache_dir: &Path) -> Result<BTreeMap<String, String>> {
    let path = cache_dir.join("index.tsv");
    let mut index = BTreeMap::new();
    if !path.exists() {
        return Ok(index);
    }
    let text = std::fs::read_to_string(path)?;
    for line in text.lines() {
        if let Some((date, checksum)) = line.split_once('\t') {
            index.insert(date.to_string(), checksum.to_string());
        }
    }
    Ok(index)
}

fn write_index(cache_dir: &Path, index: &BTreeMap<String, String>) -> Result<()> {
    let mut body = String::new();
    for (date, checksum) in index {
        body.push_str(date);
        body.push('\t');
        body.push_str(checksum);
        body.push('\n');
    }
    atomic_write(&cache_dir.join("index.tsv"), body.as_bytes())
}

fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub(crate) fn hex_sha256(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Current UTC date as `YYYY-MM-DD`, from the civil-from-days algorithm.
fn utc_date_today() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs() as i64)
        .unwrap_or(0);
    let days = secs.div_euclid(86_400);
    let (y, m, d) = civil_from_days(days);
    format!("{y:04}-{m:02}-{d:02}")
}

fn civil_from_days(z: i64) -> (i64, u32, u32) {
    let z = z + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z.rem_euclid(146_097);
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let y = yoe + era * 400;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let d = (doy - (153 * mp + 2) / 5 + 1) as u32;
    let m = if mp < 10 { mp + 3 } else { mp - 9 } as u32;
    (if m <= 2 { y + 1 } else { y }, m, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::RefCell;
    use std::collections::VecDeque;

    struct ScriptedSource {
        responses: RefCell<VecDeque<Result<Vec<u8>>>>,
        calls: std::cell::Cell<usize>,
    }

    impl ScriptedSource {
        fn new(responses: Vec<Result<Vec<u8>>>) -> Self {
            ScriptedSource {
                responses: RefCell::new(responses.into()),
                calls: std::cell::Cell::new(0),
            }
        }
    }

    impl RemoteSource for ScriptedSource {
        fn fetch(&self, _url: &str) -> Result<Vec<u8>> {
            self.calls.set(self.calls.get() + 1);
            self.responses
                .borrow_mut()
                .pop_front()
                .unwrap_or_else(|| Err(Error::Network("script exhausted".into())))
        }
    }

    const INDEX: &[u8] = b"Package: a\nImports: b\n\nPackage: b\n";

    #[test]
    fn second_invocation_served_from_cache() {
        let dir = tempfile::tempdir().unwrap();
        let source = ScriptedSource::new(vec![Ok(INDEX.to_vec())]);
        let opts = FetchOptions {
            force_refresh: false,
            source: &source,
        };

        let first = fetch_snapshot_with("http://example/PACKAGES", dir.path(), &opts).unwrap();
        assert_eq!(first.records.len(), 2);
        assert!(!first.stale);

        // No responses left: a network read would fail the test.
        let second = fetch_snapshot_with("http://example/PACKAGES", dir.path(), &opts).unwrap();
        assert_eq!(source.calls.get(), 1);
        assert_eq!(second.checksum, first.checksum);
        assert!(!second.stale);
    }

    #[test]
    fn unreachable_host_with_warm_cache_sets_stale() {
        let dir = tempfile::tempdir().unwrap();
        let warm = ScriptedSource::new(vec![Ok(INDEX.to_vec())]);
        fetch_snapshot_with(
            "http://example/P",
            dir.path(),
            &FetchOptions {
                force_refresh: false,
                source: &warm,
            },
        )
        .unwrap();

        let down = ScriptedSource::new(vec![Err(Error::Network("refused".into()))]);
        let snap = fetch_snapshot_with(
            "http://example/P",
            dir.path(),
            &FetchOptions {
                force_refresh: true,
                source: &down,
            },
        )
        .unwrap();
        assert!(snap.stale);
        assert!(snap.fetch_notes[0].contains("stale"));
    }

    #[test]
    fn unreachable_host_with_empty_cache_is_fatal() {
        let dir = tempfile::tempdir().unwrap();
        let down = ScriptedSource::new(vec![Err(Error::Network("refused".into()))]);
        let err = fetch_snapshot_with(
            "http://example/P",
            dir.path(),
            &FetchOptions {
                force_refresh: false,
                source: &down,
            },
        )
        .unwrap_err();
        match err {
            Error::Network(msg) => assert!(msg.contains("cache"), "{msg}"),
            other => panic!("expected network error, got {other:?}"),
        }
    }

    #[test]
    fn checksum_mismatch_on_forced_redownload_keeps_both() {
        let dir = tempfile::tempdir().unwrap();
        let source =
            ScriptedSource::new(vec![Ok(INDEX.to_vec()), Ok(b"Package: changed\n".to_vec())]);
        let first = fetch_snapshot_with(
            "http://example/P",
            dir.path(),
            &FetchOptions {
                force_refresh: false,
                source: &source,
            },
        )
        .unwrap();
        let second = fetch_snapshot_with(
            "http://example/P",
            dir.path(),
            &FetchOptions {
                force_refresh: true,
                source: &source,
            },
        )
        .unwrap();
        assert_ne!(first.checksum, second.checksum);
        assert!(second.fetch_notes[0].contains("checksum changed"));
        let day_dir = dir.path().join(&second.captured_at);
        let kept: Vec<_> = std::fs::read_dir(day_dir).unwrap().collect();
        assert_eq!(kept.len(), 2);
        // Index points at the newest copy.
        let again = fetch_snapshot_with(
            "http://example/P",
            dir.path(),
            &FetchOptions {
                force_refresh: false,
                source: &source,
            },
        )
        .unwrap();
        assert_eq!(again.checksum, second.checksum);
    }

    #[test]
    fn duplicate_names_deduplicated() {
        let (records, warnings) = dedup_records(vec![
            PackageRecord::new("a"),
            PackageRecord::new("b"),
            PackageRecord::new("a"),
        ]);
        assert_eq!(records.len(), 2);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn civil_date_known_values() {
        assert_eq!(civil_from_days(0), (1970, 1, 1));
        assert_eq!(civil_from_days(18_261), (2019, 12, 31));
    }
}
