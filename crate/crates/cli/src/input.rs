use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

pub fn read_text(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Byte offset of the 1-based `(line, column)` position serde_json reports,
/// which points at the last byte it read.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let line_start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (line_start + column.saturating_sub(1)).min(text.len())
}

pub fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| {
        format!(
            "{}: invalid JSON at byte {}: {e}",
            path.display(),
            if e.is_eof() {
                text.len()
            } else {
                byte_offset(text, e.line(), e.column())
            }
        )
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    parse_json(path, &read_text(path)?)
}

pub fn seed_from_env() -> Result<Option<u64>, String> {
    match std::env::var("COOLLAB_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("COOLLAB_SEED must be an unsigned integer, got '{v}'")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("COOLLAB_SEED: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets() {
        let text = "{\n  \"a\": 1,\n  \"b\": ";
        assert_eq!(byte_offset(text, 1, 1), 0);
        assert_eq!(byte_offset(text, 2, 3), 4);
        assert_eq!(byte_offset(text, 3, 8), text.len());
        let text = "[1, 2, x]";
        let err = serde_json::from_str::<serde_json::Value>(text).unwrap_err();
        assert_eq!(byte_offset(text, err.line(), err.column()), 7);
    }
}
