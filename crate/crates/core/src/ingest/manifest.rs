//! JSON manifest input: a top-level array of package objects, for ecosystems
//! without a DCF index. Normalization matches the DCF parser.

use super::{
    normalize_dep_list, valid_package_name, Origin, PackageRecord, ParseOutcome, ParseWarning,
};
use crate::error::{Error, Result};

#[derive(serde::Deserialize)]
struct ManifestEntry {
    name: Option<String>,
    #[serde(default)]
    version: String,
    #[serde(default)]
    imports: Vec<String>,
    #[serde(default)]
    depends: Vec<String>,
    #[serde(default)]
    suggests: Vec<String>,
    #[serde(default)]
    description: String,
    #[serde(default)]
    published: Option<String>,
}

/// Parses a JSON manifest. A non-array top level is fatal; entries without a
/// usable `name` are skipped with a warning (positions reported as 1-based
/// entry indexes, since JSON carries no line information after parsing).
pub fn parse_manifest_json(raw: &[u8]) -> Result<ParseOutcome> {
    let top: serde_json::Value = serde_json::from_slice(raw)
        .map_err(|e| Error::Parse(format!("invalid JSON manifest: {e}")))?;
    let entries = match top {
        serde_json::Value::Array(entries) => entries,
        other => {
            return Err(Error::Parse(format!(
                "manifest top level must be an array, got {}",
                json_type_name(&other)
            )))
        }
    };

    let mut outcome = ParseOutcome::default();
    for (idx, value) in entries.into_iter().enumerate() {
        let entry: ManifestEntry = match serde_json::from_value(value) {
            Ok(entry) => entry,
            Err(e) => {
                outcome.warnings.push(ParseWarning {
                    line: idx + 1,
                    message: format!("skipped entry {}: {e}", idx + 1),
                });
                continue;
            }
        };
        let name = match entry.name {
            Some(n) if valid_package_name(&n) => n,
            _ => {
                outcome.warnings.push(ParseWarning {
                    line: idx + 1,
                    message: format!("skipped entry {}: missing or invalid name", idx + 1),
                });
                continue;
            }
        };
        outcome.records.push(PackageRecord {
            imports: normalize_dep_list(&entry.imports, &name, true),
            depends: normalize_dep_list(&entry.depends, &name, true),
            suggests: normalize_dep_list(&entry.suggests, &name, false),
            version: entry.version,
            description: entry.description,
            published: entry.published,
            origin: Origin::MainRegistry,
            name,
        });
    }
    Ok(outcome)
}

fn json_type_name(v: &serde_json::Value) -> &'static str {
    match v {
        serde_json::Value::Null => "null",
        serde_json::Value::Bool(_) => "a boolean",
        serde_json::Value::Number(_) => "a number",
        serde_json::Value::String(_) => "a string",
        serde_json::Value::Array(_) => "an array",
        serde_json::Value::Object(_) => "an object",
    }
}
