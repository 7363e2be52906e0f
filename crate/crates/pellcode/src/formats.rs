//! Line-oriented text formats.
//!
//! `PELLE 1` carries a code package:
//!
//! ```text
//! PELLE 1
//! p=1 n=3 det=392
//! 221 92
//! 158 64
//! ```
//!
//! `PELLK 1` carries a blocking package, one `d b1 b3 b4` record per line:
//!
//! ```text
//! PELLK 1
//! mode=pell p=1 n=2 side=4
//! 392 18 4 22
//! ...
//! ```
//!
//! Writers emit ASCII with `\n` line endings. Readers also accept `\r\n`
//! and a missing final newline.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use pellcode_core::{BlockMode, BlockRecord, CodePackage, IntMatrix, KPackage, MessageMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    /// 1-based line number; 0 when the problem is the file as a whole.
    pub line: usize,
    pub message: String,
}

impl FormatError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError { line, message: message.into() }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

type Result<T> = std::result::Result<T, FormatError>;

fn split_lines(text: &str) -> Result<Vec<&str>> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Err(FormatError::new(0, "file is empty"));
    }
    let lines: Vec<&str> = body.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    if let Some(i) = lines.iter().position(|l| l.trim().is_empty()) {
        return Err(FormatError::new(i + 1, "blank line"));
    }
    Ok(lines)
}

fn parse_int(token: &str, line: usize) -> Result<BigInt> {
    token.parse().map_err(|_| FormatError::new(line, format!("not an integer: {token:?}")))
}

fn parse_u32(token: &str, line: usize) -> Result<u32> {
    token.parse().map_err(|_| FormatError::new(line, format!("not a non-negative integer: {token:?}")))
}

/// Splits `key=value` tokens, requiring exactly `keys` in order.
fn header_fields<'a>(line: &'a str, keys: &[&str], number: usize) -> Result<Vec<&'a str>> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != keys.len() {
        return Err(FormatError::new(number, format!("expected header fields {}", keys.join(" "))));
    }
    tokens
        .iter()
        .zip(keys)
        .map(|(tok, key)| match tok.split_once('=') {
            Some((k, v)) if k == *key => Ok(v),
            _ => Err(FormatError::new(number, format!("expected {key}=<value>, found {tok:?}"))),
        })
        .collect()
}

fn int_row(line: &str, width: usize, number: usize) -> Result<Vec<BigInt>> {
    let row: Vec<BigInt> = line.split_whitespace().map(|t| parse_int(t, number)).collect::<Result<_>>()?;
    if row.len() != width {
        return Err(FormatError::new(number, format!("expected {width} integers, found {}", row.len())));
    }
    Ok(row)
}

fn expect_magic(lines: &[&str], magic: &str) -> Result<()> {
    if lines[0] != magic {
        return Err(FormatError::new(1, format!("expected {magic:?}")));
    }
    Ok(())
}

pub fn write_pelle(pkg: &CodePackage) -> String {
    let mut out = String::new();
    writeln!(out, "PELLE 1").unwrap();
    writeln!(out, "p={} n={} det={}", pkg.p, pkg.n, pkg.det_m).unwrap();
    out.push_str(&pkg.e.to_string());
    out
}

pub fn read_pelle(text: &str) -> Result<CodePackage> {
    let lines = split_lines(text)?;
    expect_magic(&lines, "PELLE 1")?;
    let header = lines.get(1).ok_or_else(|| FormatError::new(0, "missing header line"))?;
    let fields = header_fields(header, &["p", "n", "det"], 2)?;
    let p = parse_u32(fields[0], 2)?;
    let n = parse_u32(fields[1], 2)?;
    let det = parse_int(fields[2], 2)?;
    if p == 0 || n == 0 {
        return Err(FormatError::new(2, "p and n must be at least 1"));
    }
    let order = p as usize + 1;
    if lines.len() != 2 + order {
        return Err(FormatError::new(0, format!("expected {order} matrix rows, found {}", lines.len() - 2)));
    }
    let mut entries = Vec::with_capacity(order * order);
    for (i, line) in lines[2..].iter().enumerate() {
        entries.extend(int_row(line, order, i + 3)?);
    }
    let e = IntMatrix::new(order, order, entries).map_err(|e| FormatError::new(0, e.to_string()))?;
    CodePackage::new(e, p, n, det).map_err(|e| FormatError::new(2, e.to_string()))
}

pub fn write_pellk(k: &KPackage) -> String {
    let mut out = String::new();
    writeln!(out, "PELLK 1").unwrap();
    writeln!(out, "mode={} p={} n={} side={}", k.mode(), k.p(), k.n(), k.side()).unwrap();
    for r in k.records() {
        writeln!(out, "{} {} {} {}", r.d, r.b1, r.b3, r.b4).unwrap();
    }
    out
}

pub fn read_pellk(text: &str) -> Result<KPackage> {
    let lines = split_lines(text)?;
    expect_magic(&lines, "PELLK 1")?;
    let header = lines.get(1).ok_or_else(|| FormatError::new(0, "missing header line"))?;
    let fields = header_fields(header, &["mode", "p", "n", "side"], 2)?;
    let mode =
        BlockMode::from_name(fields[0]).ok_or_else(|| FormatError::new(2, format!("unknown mode {:?}", fields[0])))?;
    let p = parse_u32(fields[1], 2)?;
    let n = parse_u32(fields[2], 2)?;
    let side: usize =
        fields[3].parse().map_err(|_| FormatError::new(2, format!("not a side length: {:?}", fields[3])))?;
    if side == 0 || !side.is_multiple_of(2) {
        return Err(FormatError::new(2, "side must be even and positive"));
    }
    let expected = (side / 2) * (side / 2);
    if lines.len() - 2 != expected {
        return Err(FormatError::new(0, format!("expected {expected} records, found {}", lines.len() - 2)));
    }
    let mut records = Vec::with_capacity(expected);
    for (i, line) in lines[2..].iter().enumerate() {
        let v = int_row(line, 4, i + 3)?;
        let [d, b1, b3, b4]: [BigInt; 4] = v.try_into().expect("four fields");
        records.push(BlockRecord { d, b1, b3, b4 });
    }
    KPackage::new(mode, p, n, side, records).map_err(|e| FormatError::new(2, e.to_string()))
}

/// A message matrix as whitespace-separated rows, one row per line.
pub fn read_message(text: &str) -> Result<MessageMatrix> {
    let lines = split_lines(text)?;
    let order = lines.len();
    let mut entries = Vec::with_capacity(order * order);
    for (i, line) in lines.iter().enumerate() {
        entries.extend(int_row(line, order, i + 1)?);
    }
    let m = IntMatrix::new(order, order, entries).map_err(|e| FormatError::new(0, e.to_string()))?;
    MessageMatrix::new(m).map_err(|e| FormatError::new(0, e.to_string()))
}

/// Parses `"a,b;c,d"` into a square matrix.
pub fn parse_inline_matrix(spec: &str) -> std::result::Result<IntMatrix, String> {
    let rows: Vec<Vec<BigInt>> = spec
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|t| t.trim().parse::<BigInt>().map_err(|_| format!("not an integer: {:?}", t.trim())))
                .collect()
        })
        .collect::<std::result::Result<_, _>>()?;
    let order = rows.len();
    if rows.iter().any(|r| r.len() != order) {
        return Err(format!("matrix must be square; got {order} rows of unequal or mismatched width"));
    }
    IntMatrix::new(order, order, rows.into_iter().flatten().collect()).map_err(|e| e.to_string())
}
