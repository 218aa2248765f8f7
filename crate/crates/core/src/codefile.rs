//! Text format for a single code.
//!
//! ```text
//! q=5 p=5 m=1
//! n=7 k=3
//! 1 0 0 0 0 2 0
//! 0 1 0 2 2 0 4
//! 0 0 1 1 3 0 3
//! ```
//!
//! For `m > 1` a `modulus=c0,c1,...,cm` line follows the field line. Blank
//! lines and lines starting with `#` are ignored.

use std::collections::HashMap;
use std::fmt::Write;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// A non-blank, non-comment line with its 1-based line number.
pub(crate) struct Line<'a> {
    pub(crate) number: usize,
    pub(crate) text: &'a str,
}

pub(crate) fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| Line {
            number: i + 1,
            text: l,
        })
        .filter(|l| {
            let t = l.text.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .collect()
}

/// Column (1-based) of `token` inside `line`, which must be a subslice.
fn column_of(line: &str, token: &str) -> usize {
    token.as_ptr() as usize - line.as_ptr() as usize + 1
}

fn parse_uint(line: &Line<'_>, token: &str, what: &str) -> Result<u64> {
    token.parse::<u64>().map_err(|_| {
        Error::parse(
            line.number,
            column_of(line.text, token),
            format!("expected a non-negative integer for {what}, found {token:?}"),
        )
    })
}

/// Parses `key=value` tokens on one line.
fn key_values<'a>(line: &Line<'a>) -> Result<HashMap<&'a str, &'a str>> {
    let mut out = HashMap::new();
    for tok in line.text.split_whitespace() {
        let Some((k, v)) = tok.split_once('=') else {
            return Err(Error::parse(
                line.number,
                column_of(line.text, tok),
                format!("expected key=value, found {tok:?}"),
            ));
        };
        out.insert(k, v);
    }
    Ok(out)
}

fn required<'a>(map: &HashMap<&'a str, &'a str>, line: &Line<'a>, key: &str) -> Result<&'a str> {
    map.get(key)
        .copied()
        .ok_or_else(|| Error::parse(line.number, 1, format!("missing {key}=")))
}

/// Parses a row of space-separated encodings.
pub(crate) fn parse_row(
    line: &Line<'_>,
    expected: Option<usize>,
    field: Option<&Field>,
) -> Result<Vec<Elem>> {
    let mut row = Vec::new();
    for tok in line.text.split_whitespace() {
        let v = parse_uint(line, tok, "an entry")?;
        if let Some(f) = field {
            if v >= f.q() as u64 {
                return Err(Error::parse(
                    line.number,
                    column_of(line.text, tok),
                    format!("entry {v} is not an element of {f}"),
                ));
            }
        }
        row.push(v as Elem);
    }
    if let Some(n) = expected {
        if row.len() != n {
            return Err(Error::parse(
                line.number,
                line.text.len().max(1),
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
    }
    Ok(row)
}

/// Parses the body of a `key=v1 v2 ...` line (space- or comma-separated).
pub(crate) fn parse_list(line: &Line<'_>, key: &str) -> Result<Vec<u64>> {
    let text = line.text.trim_start();
    let Some(rest) = text.strip_prefix(key).and_then(|r| r.strip_prefix('=')) else {
        return Err(Error::parse(line.number, 1, format!("expected {key}=...")));
    };
    rest.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_uint(line, t, key))
        .collect()
}

pub fn parse_code(text: &str) -> Result<LinearCode> {
    let lines = content_lines(text);
    let mut it = lines.iter().peekable();
    let eof = || Error::parse(text.lines().count().max(1), 1, "unexpected end of file");

    let header = it.next().ok_or_else(eof)?;
    let kv = key_values(header)?;
    let q = parse_uint(header, required(&kv, header, "q")?, "q")?;
    let p = parse_uint(header, required(&kv, header, "p")?, "p")?;
    let m = parse_uint(header, required(&kv, header, "m")?, "m")?;
    if p.checked_pow(m as u32) != Some(q) {
        return Err(Error::parse(
            header.number,
            1,
            format!("q={q} is not p^m = {p}^{m}"),
        ));
    }
    let field_err = |line: &Line<'_>, e: Error| Error::parse(line.number, 1, e.to_string());

    let field = match it.peek() {
        Some(l) if l.text.trim_start().starts_with("modulus=") => {
            let l = it.next().expect("peeked");
            let coeffs = parse_list(l, "modulus")?;
            if coeffs.len() as u64 != m + 1 {
                return Err(Error::parse(
                    l.number,
                    1,
                    format!(
                        "modulus needs {} coefficients, found {}",
                        m + 1,
                        coeffs.len()
                    ),
                ));
            }
            let coeffs = coeffs.into_iter().map(|c| c as u32).collect();
            Field::with_modulus(p as u32, coeffs).map_err(|e| field_err(l, e))?
        }
        _ => Field::new(p as u32, m as u32).map_err(|e| field_err(header, e))?,
    };

    let dims = it.next().ok_or_else(eof)?;
    let kv = key_values(dims)?;
    let n = parse_uint(dims, required(&kv, dims, "n")?, "n")? as usize;
    let k = parse_uint(dims, required(&kv, dims, "k")?, "k")? as usize;
    if k == 0 || n == 0 || k > n {
        return Err(Error::parse(
            dims.number,
            1,
            format!("need 1 <= k <= n, got n={n} k={k}"),
        ));
    }

    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let l = it.next().ok_or_else(eof)?;
        rows.push(parse_row(l, Some(n), Some(&field))?);
    }
    if let Some(extra) = it.next() {
        return Err(Error::parse(
            extra.number,
            1,
            format!("expected {k} generator rows, found more"),
        ));
    }
    LinearCode::from_rows(&field, &rows).map_err(|e| Error::parse(dims.number, 1, e.to_string()))
}

pub fn format_code(code: &LinearCode) -> String {
    let f = code.field();
    let mut out = String::new();
    writeln!(out, "q={} p={} m={}", f.q(), f.p(), f.m()).unwrap();
    if f.m() > 1 {
        let coeffs: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
        writeln!(out, "modulus={}", coeffs.join(",")).unwrap();
    }
    writeln!(out, "n={} k={}", code.n(), code.k()).unwrap();
    out.push_str(&code.generator().to_string());
    out
}
