//! The function file format.
//!
//! ```text
//! p n m
//! c_0 c_1 ... c_n        (modulus, low to high; omitted when n = 1)
//! f_0 f_1 ... f_{q^m-1}  (values in canonical point order)
//! ```

use grm_core::{FTable, FieldSpec};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Core(#[from] grm_core::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<u32>, FormatError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u32>()
                .map_err(|_| syntax(line, format!("`{tok}` is not a nonnegative integer")))
        })
        .collect()
}

/// Parses a function file.
pub fn parse(text: &str) -> Result<FTable, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hl, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing header `p n m`"))?;
    let header = numbers(hl, header)?;
    let [p, n, m] = header[..] else {
        return Err(syntax(
            hl,
            format!("header needs 3 numbers, found {}", header.len()),
        ));
    };

    let modulus = if n > 1 {
        let (ml, text) = lines
            .next()
            .ok_or_else(|| syntax(hl + 1, "missing modulus line"))?;
        let coeffs = numbers(ml, text)?;
        if coeffs.len() != n as usize + 1 {
            return Err(syntax(
                ml,
                format!(
                    "modulus needs {} coefficients, found {}",
                    n + 1,
                    coeffs.len()
                ),
            ));
        }
        Some(coeffs)
    } else {
        None
    };
    let field = FieldSpec::new(p, n, modulus.as_deref())?;

    let (bl, body) = lines.next().ok_or_else(|| syntax(hl + 1, "missing body"))?;
    let codes = numbers(bl, body)?;
    if let Some((extra, _)) = lines.next() {
        return Err(syntax(extra, "unexpected content after body"));
    }
    let expected = field.space_size(m as usize)?;
    if codes.len() != expected {
        return Err(syntax(
            bl,
            format!("body needs q^m = {expected} values, found {}", codes.len()),
        ));
    }
    if let Some(bad) = codes.iter().find(|&&c| c >= field.q()) {
        return Err(syntax(
            bl,
            format!("value {bad} is not below q = {}", field.q()),
        ));
    }
    Ok(FTable::from_codes(&field, m as usize, &codes)?)
}

fn join(xs: impl IntoIterator<Item = u32>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Field header lines (`p n m`, then the modulus when `n > 1`).
pub fn header(field: &FieldSpec, m: usize) -> String {
    let mut out = format!("{} {} {}\n", field.p(), field.n(), m);
    if let Some(modulus) = field.modulus() {
        out.push_str(&join(modulus.iter().copied()));
        out.push('\n');
    }
    out
}

/// Writes a function file.
pub fn write(f: &FTable) -> String {
    let mut out = header(f.field(), f.m());
    out.push_str(&join(f.codes()));
    out.push('\n');
    out
}
