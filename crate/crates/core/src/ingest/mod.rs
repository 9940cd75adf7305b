//! Registry metadata ingestion: DCF indexes, JSON manifests, snapshot fetching.

mod dcf;
mod manifest;
mod snapshot;

pub use dcf::parse_dcf;
pub use manifest::parse_manifest_json;
pub use snapshot::{fetch_snapshot, fetch_snapshot_with, FetchOptions, RemoteSource, Snapshot};

pub(crate) use snapshot::{dedup_records, hex_sha256};

use serde::{Deserialize, Serialize};

/// Where a package's metadata came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    MainRegistry,
    CompanionRegistry,
    Unknown,
}

impl Origin {
    pub fn as_str(&self) -> &'static str {
        match self {
            Origin::MainRegistry => "main-registry",
            Origin::CompanionRegistry => "companion-registry",
            Origin::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Origin> {
        match s {
            "main-registry" => Some(Origin::MainRegistry),
            "companion-registry" => Some(Origin::CompanionRegistry),
            "unknown" => Some(Origin::Unknown),
            _ => None,
        }
    }
}

/// One parsed registry entry, normalized: version qualifiers stripped from
/// dependency lists, the language constraint `R` dropped, duplicates and
/// self-references removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackageRecord {
    pub name: String,
    pub version: String,
    pub imports: Vec<String>,
    pub depends: Vec<String>,
    pub suggests: Vec<String>,
    pub description: String,
    pub published: Option<String>,
    pub origin: Origin,
}

impl PackageRecord {
    pub fn new(name: impl Into<String>) -> Self {
        PackageRecord {
            name: name.into(),
            version: String::new(),
            imports: Vec::new(),
            depends: Vec::new(),
            suggests: Vec::new(),
            description: String::new(),
            published: None,
            origin: Origin::MainRegistry,
        }
    }
}

/// A non-fatal problem found while parsing; `line` is 1-based where known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

/// Records plus the warnings accumulated while producing them.
#[derive(Debug, Clone, Default)]
pub struct ParseOutcome {
    pub records: Vec<PackageRecord>,
    pub warnings: Vec<ParseWarning>,
}

/// Splits a raw dependency field element list and normalizes each element:
/// trims whitespace, strips a parenthesized version qualifier, drops empties.
/// `drop_language` additionally removes the bare `R` entry.
pub(crate) fn normalize_dep_list<I, S>(items: I, own_name: &str, drop_language: bool) -> Vec<String>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for item in items {
        let name = strip_version_qualifier(item.as_ref());
        if name.is_empty() || name == own_name {
            continue;
        }
        if drop_language && name == "R" {
            continue;
        }
        if seen.insert(name.to_string()) {
            out.push(name.to_string());
        }
    }
    out
}

/// `"pkg (>= 1.2-3)"` → `"pkg"`. Everything from the first `(` is discarded.
pub(crate) fn strip_version_qualifier(raw: &str) -> &str {
    let head = match raw.find('(') {
        Some(pos) => &raw[..pos],
        None => raw,
    };
    head.trim()
}

/// Name rule shared by all parsers: non-empty and free of whitespace.
pub(crate) fn valid_package_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(char::is_whitespace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qualifier_stripping() {
        assert_eq!(strip_version_qualifier("pkg (>= 1.2)"), "pkg");
        assert_eq!(strip_version_qualifier("  pkg  "), "pkg");
        assert_eq!(strip_version_qualifier("pkg(1.0)"), "pkg");
        assert_eq!(strip_version_qualifier("(>= 2)"), "");
    }

    #[test]
    fn dep_list_drops_self_language_and_duplicates() {
        let got = normalize_dep_list(["R (>= 3.5)", "b", "me", "b", "c (>= 2.0)"], "me", true);
        assert_eq!(got, vec!["b", "c"]);
    }

    #[test]
    fn suggests_keep_language_entry_rule_scoped() {
        // The R drop applies only where requested.
        let got = normalize_dep_list(["R", "x"], "me", false);
        assert_eq!(got, vec!["R", "x"]);
    }
}
