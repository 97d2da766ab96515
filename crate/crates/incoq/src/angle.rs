//! Angles as rational multiples of π.

use std::f64::consts::PI;

pub const MAX_DEN: i64 = 64;
pub const TOL: f64 = 1e-9;

/// `"p*pi/q"`-style text when `x` is within [`TOL`] of `pπ/q`, `q ≤ 64`.
pub fn format_pi(x: f64) -> Option<String> {
    if !x.is_finite() {
        return None;
    }
    if x.abs() <= TOL {
        return Some("0".into());
    }
    let r = x / PI;
    let q = (1..=MAX_DEN).find(|&q| ((r * q as f64).round() - r * q as f64).abs() * PI <= TOL)?;
    let p = (r * q as f64).round() as i64;
    let sign = if p < 0 { "-" } else { "" };
    let num = match p.abs() {
        1 => "pi".to_string(),
        n => format!("{n}pi"),
    };
    Some(if q == 1 { format!("{sign}{num}") } else { format!("{sign}{num}/{q}") })
}

/// Reads `1.5`, `pi`, `-pi/4`, `3pi/8`, `3*pi/8`, `pi*3/8` and `π/2`.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let bad = || format!("invalid time `{text}`");
    let s: String = text.trim().replace('π', "pi").replace(' ', "").to_ascii_lowercase();
    if !s.contains("pi") {
        let v: f64 = s.parse().map_err(|_| bad())?;
        return if v.is_finite() { Ok(v) } else { Err(bad()) };
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s.as_str(), None),
    };
    let (sign, num) = match num.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, num.strip_prefix('+').unwrap_or(num)),
    };
    let factor = num.replacen("pi", "", 1);
    let factor = factor.trim_matches('*');
    let mult: f64 = if factor.is_empty() { 1.0 } else { factor.parse().map_err(|_| bad())? };
    let den: f64 = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => 1.0,
    };
    let v = sign * mult * PI / den;
    if v.is_finite() && den != 0.0 {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// Comma-separated list of [`parse_angle`] values.
pub fn parse_angle_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(parse_angle).collect::<Result<Vec<_>, _>>().and_then(|v| {
        if v.is_empty() {
            Err("empty time list".into())
        } else {
            Ok(v)
        }
    })
}
