//! Plain-text 4×4 complex matrices: four rows of four entries separated
//! by whitespace or commas, entries like `0.5`, `-1i`, `0.5-0.5i`.
//! `#` starts a comment; blank lines are ignored.

use std::str::FromStr;

use incoq_core::Mat4;
use num_complex::Complex64;

use crate::error::ParseError;

pub fn parse_matrix(src: &str) -> Result<Mat4, ParseError> {
    let mut rows = Vec::with_capacity(4);
    let mut last_line = 1;
    for (i, line) in src.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        if rows.len() == 4 {
            return Err(ParseError::new(line_no, 1, "more than four rows"));
        }
        let mut row = Vec::with_capacity(4);
        for (column, token) in tokens(body) {
            let z = parse_entry(token)
                .ok_or_else(|| ParseError::new(line_no, column, format!("invalid complex number `{token}`")))?;
            row.push(z);
        }
        if row.len() != 4 {
            return Err(ParseError::new(line_no, 1, format!("expected 4 entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != 4 {
        return Err(ParseError::new(last_line, 1, format!("expected 4 rows, found {}", rows.len())));
    }
    Ok(Mat4::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j]))))
}

/// Tokens with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

fn parse_entry(token: &str) -> Option<Complex64> {
    let normalized = token.replace('j', "i");
    let z = Complex64::from_str(&normalized).ok()?;
    (z.re.is_finite() && z.im.is_finite()).then_some(z)
}
