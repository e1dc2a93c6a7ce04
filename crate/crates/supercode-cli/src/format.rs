//! The `SUPERCODE v1` matrix interchange format.
//!
//! Line 1 is the literal magic `SUPERCODE v1`. Line 2 carries the parameters
//! as space-separated `key=value` pairs in the fixed order
//! `t n k d w lambda seed`. Lines 3..t+2 are the matrix rows, row-major,
//! exactly n characters from {0,1} each. Text rows beat a packed encoding at
//! the sizes these codes have, and diffability pays for itself in testing.
//!
//! Parsing enforces the structure (magic, header, dimensions, alphabet) but
//! deliberately not the (w,d) column constraints: a structurally sound file
//! whose columns break the declared constraints is exactly what `verify` is
//! for, and must load.

use std::fs;
use std::path::Path;

use supercode::types::{CodeMatrix, CodeMeta, WdColumn};

pub const MAGIC: &str = "SUPERCODE v1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read matrix file: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed matrix file: {0}")]
    Malformed(String),
}

fn malformed(msg: impl Into<String>) -> FormatError {
    FormatError::Malformed(msg.into())
}

/// Render a matrix in the v1 format. The writer is canonical: parsing its
/// output and re-rendering reproduces it byte for byte.
pub fn write_matrix(matrix: &CodeMatrix) -> String {
    let meta = matrix.meta();
    let (t, n) = (meta.t, meta.n);
    let mut out = String::with_capacity(t * (n + 1) + 64);
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!(
        "t={} n={} k={} d={} w={} lambda={} seed={}\n",
        meta.t, meta.n, meta.k, meta.d, meta.w, meta.lambda, meta.seed
    ));
    let mut rows = vec![b'0'; t * n];
    for (c, col) in matrix.columns().iter().enumerate() {
        for &r in col.support() {
            rows[r * n + c] = b'1';
        }
    }
    for r in 0..t {
        out.push_str(std::str::from_utf8(&rows[r * n..(r + 1) * n]).expect("ascii"));
        out.push('\n');
    }
    out
}

fn parse_header_field(token: Option<&str>, key: &str) -> Result<u64, FormatError> {
    let token = token.ok_or_else(|| malformed(format!("header is missing `{key}=`")))?;
    let value = token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| malformed(format!("expected `{key}=<value>`, found `{token}`")))?;
    value
        .parse::<u64>()
        .map_err(|_| malformed(format!("`{key}` value `{value}` is not an unsigned integer")))
}

/// Parse the v1 format back into a matrix. Structural errors only; the
/// declared (w, d, lambda) are carried along unchecked for `verify`.
pub fn read_matrix(text: &str) -> Result<CodeMatrix, FormatError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(line) if line == MAGIC => {}
        Some(line) => return Err(malformed(format!("bad magic line `{line}`"))),
        None => return Err(malformed("empty file")),
    }
    let header = lines.next().ok_or_else(|| malformed("missing header line"))?;
    let mut tokens = header.split(' ');
    let t = parse_header_field(tokens.next(), "t")? as usize;
    let n = parse_header_field(tokens.next(), "n")? as usize;
    let k = parse_header_field(tokens.next(), "k")? as usize;
    let d = parse_header_field(tokens.next(), "d")? as usize;
    let w = parse_header_field(tokens.next(), "w")? as usize;
    let lambda = parse_header_field(tokens.next(), "lambda")? as usize;
    let seed = parse_header_field(tokens.next(), "seed")?;
    if let Some(extra) = tokens.next() {
        return Err(malformed(format!("unexpected header token `{extra}`")));
    }
    if t == 0 || n == 0 {
        return Err(malformed("t and n must be positive"));
    }
    if k < 2 || k > n {
        return Err(malformed(format!("k = {k} out of range 2..=n (n = {n})")));
    }

    let mut supports: Vec<Vec<usize>> = vec![Vec::new(); n];
    for r in 0..t {
        let row = lines
            .next()
            .ok_or_else(|| malformed(format!("expected {t} rows, found {r}")))?;
        if row.len() != n {
            return Err(malformed(format!(
                "row {} has {} characters, expected n = {}",
                r,
                row.len(),
                n
            )));
        }
        for (c, byte) in row.bytes().enumerate() {
            match byte {
                b'0' => {}
                b'1' => supports[c].push(r),
                other => {
                    return Err(malformed(format!(
                        "row {} column {} has byte {:?}, expected '0' or '1'",
                        r, c, other as char
                    )))
                }
            }
        }
    }
    if let Some(extra) = lines.find(|l| !l.is_empty()) {
        return Err(malformed(format!("trailing content `{extra}` after row {t}")));
    }

    let columns = supports
        .into_iter()
        .map(|s| WdColumn::new(t, s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| malformed(e.to_string()))?;
    let meta = CodeMeta {
        t,
        n,
        k,
        d,
        w,
        lambda,
        seed,
    };
    CodeMatrix::from_raw_columns(columns, meta).map_err(|e| malformed(e.to_string()))
}

pub fn read_matrix_file(path: &Path) -> Result<CodeMatrix, FormatError> {
    read_matrix(&fs::read_to_string(path)?)
}

pub fn write_matrix_file(path: &Path, matrix: &CodeMatrix) -> Result<(), FormatError> {
    Ok(fs::write(path, write_matrix(matrix))?)
}
