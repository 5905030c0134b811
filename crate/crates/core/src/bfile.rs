//! Reader for OEIS b-files: one `index value` pair per line, `#` comments
//! and blank lines ignored.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

/// Parses b-file text into an index → value map.
pub fn parse_bfile(text: &str) -> Result<BTreeMap<u64, u64>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::BFileParse {
                line: line_no,
                message: format!("expected `index value`, got `{line}`"),
            });
        };
        let parse = |s: &str, what: &str| {
            s.parse::<u64>().map_err(|e| Error::BFileParse {
                line: line_no,
                message: format!("bad {what} `{s}`: {e}"),
            })
        };
        let index = parse(idx, "index")?;
        let value = parse(val, "value")?;
        if out.insert(index, value).is_some() {
            return Err(Error::BFileDuplicate {
                line: line_no,
                index,
            });
        }
    }
    Ok(out)
}

pub fn load_bfile(path: impl AsRef<Path>) -> Result<BTreeMap<u64, u64>> {
    let text = std::fs::read_to_string(path)?;
    parse_bfile(&text)
}
