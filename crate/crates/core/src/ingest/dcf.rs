//! Parser for DCF-style package indexes (the format of CRAN's `PACKAGES` file):
//! RFC-822-like stanzas separated by blank lines, `Key: value` fields,
//! continuation lines indented by whitespace.

use super::{
    normalize_dep_list, valid_package_name, Origin, PackageRecord, ParseOutcome, ParseWarning,
};
use crate::error::{Error, Result};

/// Parses a DCF byte stream into package records.
///
/// Stanzas without a `Package` field (or with an invalid name) are skipped
/// with a warning carrying the stanza's first line number. Field names are
/// matched case-sensitively; unknown fields are ignored. Each stanza is
/// decoded as UTF-8 with a Latin-1 fallback, since CRAN indexes historically
/// mix encodings.
pub fn parse_dcf(raw: &[u8]) -> Result<ParseOutcome> {
    // NUL bytes mark binary input; the text formats never contain them.
    if let Some(pos) = raw.iter().position(|&b| b == 0) {
        return Err(Error::Parse(format!(
            "undecodable byte 0x00 at offset {pos}: input is not a text index"
        )));
    }

    let mut outcome = ParseOutcome::default();
    for stanza in split_stanzas(raw) {
        let text = decode_stanza(stanza.bytes);
        match parse_stanza(&text, stanza.first_line) {
            StanzaResult::Record(record) => outcome.records.push(record),
            StanzaResult::Skip(warning) => outcome.warnings.push(warning),
            StanzaResult::Empty => {}
        }
    }
    Ok(outcome)
}

struct RawStanza<'a> {
    bytes: &'a [u8],
    /// 1-based line number of the stanza's first line.
    first_line: usize,
}

/// Splits on blank lines (empty or whitespace-only), tracking line numbers.
fn split_stanzas(raw: &[u8]) -> Vec<RawStanza<'_>> {
    let mut stanzas = Vec::new();
    let mut start = None::<usize>;
    let mut start_line = 0usize;
    let mut line_no = 0usize;
    let mut offset = 0usize;

    for line in raw.split(|&b| b == b'\n') {
        line_no += 1;
        let blank = line.iter().all(|&b| b == b' ' || b == b'\t' || b == b'\r');
        if blank {
            if let Some(s) = start.take() {
                stanzas.push(RawStanza {
                    bytes: &raw[s..offset.saturating_sub(1)],
                    first_line: start_line,
                });
            }
        } else if start.is_none() {
            start = Some(offset);
            start_line = line_no;
        }
        offset += line.len() + 1;
    }
    if let Some(s) = start {
        stanzas.push(RawStanza {
            bytes: &raw[s..raw.len()],
            first_line: start_line,
        });
    }
    stanzas
}

fn decode_stanza(bytes: &[u8]) -> String {
    match std::str::from_utf8(bytes) {
        Ok(s) => s.to_string(),
        // Latin-1: every byte maps directly to the code point of equal value.
        Err(_) => bytes.iter().map(|&b| b as char).collect(),
    }
}

enum StanzaResult {
    Record(PackageRecord),
    Skip(ParseWarning),
    Empty,
}

fn parse_stanza(text: &str, first_line: usize) -> StanzaResult {
    let mut fields: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.starts_with(' ') || line.starts_with('\t') {
            // Continuation: fold onto the previous field with a single space.
            if let Some((_, value)) = fields.last_mut() {
                if !value.is_empty() {
                    value.push(' ');
                }
                value.push_str(line.trim());
            }
            continue;
        }
        match line.split_once(':') {
            Some((key, value)) => fields.push((key.trim().to_string(), value.trim().to_string())),
            None => {
                // Not a field, not a continuation; ignore the line.
            }
        }
    }
    if fields.is_empty() {
        return StanzaResult::Empty;
    }

    let get = |key: &str| {
        fields
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    };

    let name = match get("Package") {
        Some(n) if valid_package_name(n) => n.to_string(),
        Some(n) => {
            return StanzaResult::Skip(ParseWarning {
                line: first_line,
                message: format!("skipped stanza: invalid package name {n:?}"),
            })
        }
        None => {
            return StanzaResult::Skip(ParseWarning {
                line: first_line,
                message: "skipped stanza: no Package field".to_string(),
            })
        }
    };

    let split = |field: Option<&str>| -> Vec<String> {
        field
            .map(|v| v.split(',').map(str::to_string).collect())
            .unwrap_or_default()
    };

    let record = PackageRecord {
        imports: normalize_dep_list(split(get("Imports")), &name, true),
        depends: normalize_dep_list(split(get("Depends")), &name, true),
        suggests: normalize_dep_list(split(get("Suggests")), &name, false),
        version: get("Version").unwrap_or_default().to_string(),
        description: get("Description").unwrap_or_default().to_string(),
        published: get("Date/Publication")
            .or_else(|| get("Published"))
            .map(str::to_string),
        origin: Origin::MainRegistry,
        name,
    };
    StanzaResult::Record(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stanza_with_qualifiers_and_language_dep() {
        let out =
            parse_dcf(b"Package: a\nImports: b, c (>= 2.0)\nDepends: R (>= 3.5), d\n").unwrap();
        assert_eq!(out.records.len(), 1);
        let r = &out.records[0];
        assert_eq!(r.name, "a");
        assert_eq!(r.imports, vec!["b", "c"]);
        assert_eq!(r.depends, vec!["d"]);
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn folded_continuation_line() {
        let out = parse_dcf(b"Package: a\nImports: b,\n    c\n").unwrap();
        assert_eq!(out.records[0].imports, vec!["b", "c"]);
    }

    #[test]
    fn stanza_without_package_field_warns_with_line() {
        let out = parse_dcf(b"Package: a\n\nVersion: 1.0\nLicense: MIT\n\nPackage: b\n").unwrap();
        assert_eq!(out.records.len(), 2);
        assert_eq!(out.warnings.len(), 1);
        assert_eq!(out.warnings[0].line, 3);
        assert!(out.warnings[0].message.contains("no Package field"));
    }

    #[test]
    fn nul_byte_is_fatal_with_offset() {
        let err = parse_dcf(b"Package: a\x00bad").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("offset 10"), "{msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn latin1_fallback_per_stanza() {
        // 0xE9 is 'é' in Latin-1 and invalid UTF-8 on its own.
        let mut raw = b"Package: a\nDescription: caf".to_vec();
        raw.push(0xE9);
        raw.extend_from_slice(b"\n\nPackage: b\nDescription: ok\n");
        let out = parse_dcf(&raw).unwrap();
        assert_eq!(out.records[0].description, "café");
        assert_eq!(out.records[1].description, "ok");
    }

    #[test]
    fn duplicate_and_self_deps_removed() {
        let out = parse_dcf(b"Package: a\nImports: b, b, a, c\n").unwrap();
        assert_eq!(out.records[0].imports, vec!["b", "c"]);
    }

    #[test]
    fn blank_lines_with_spaces_separate_stanzas() {
        let out = parse_dcf(b"Package: a\n   \nPackage: b\n").unwrap();
        assert_eq!(out.records.len(), 2);
    }

    #[test]
    fn crlf_input() {
        let out = parse_dcf(b"Package: a\r\nImports: b,\r\n  c\r\n\r\nPackage: b\r\n").unwrap();
        assert_eq!(out.records.len(), 2);
        assert_eq!(out.records[0].imports, vec!["b", "c"]);
    }
}
