//! Text form of a joint Hamiltonian.
//!
//! ```text
//! spec  := term ((';' | '\n') term)*
//! term  := coeff WORD
//! coeff := ['+' | '-'] (integer | decimal | integer '/' integer)
//! WORD  := [IXYZ][IXYZ]          system factor first
//! ```
//!
//! Empty terms and `#` comments are skipped. Integer, decimal and `p/q`
//! literals are kept exact; scientific notation is read as a float.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use incoq_core::{pauli_word, Mat4, Pauli};
use num_rational::Ratio;

use crate::error::ParseError;

/// A coefficient with its exact value when the literal had one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficient {
    pub value: f64,
    pub exact: Option<Ratio<i64>>,
}

impl Coefficient {
    pub const ZERO: Coefficient = Coefficient { value: 0.0, exact: Some(Ratio::new_raw(0, 1)) };

    pub fn exact(r: Ratio<i64>) -> Self {
        Self { value: *r.numer() as f64 / *r.denom() as f64, exact: Some(r) }
    }

    pub fn float(value: f64) -> Self {
        Self { value, exact: None }
    }

    fn add(self, other: Coefficient) -> Coefficient {
        let exact = match (self.exact, other.exact) {
            (Some(a), Some(b)) => checked_add(a, b),
            _ => None,
        };
        match exact {
            Some(r) => Coefficient::exact(r),
            None => Coefficient::float(self.value + other.value),
        }
    }
}

fn checked_add(a: Ratio<i64>, b: Ratio<i64>) -> Option<Ratio<i64>> {
    let den = a.denom().checked_mul(*b.denom())?;
    let num = a.numer().checked_mul(*b.denom())?.checked_add(b.numer().checked_mul(*a.denom())?)?;
    Some(Ratio::new(num, den))
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            None => write!(f, "{}", self.value),
        }
    }
}

/// Merged Pauli-product expansion `Σ h_w w` with `w = σ_S ⊗ σ_P`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HamiltonianSpec {
    terms: BTreeMap<(Pauli, Pauli), Coefficient>,
}

impl HamiltonianSpec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a term; repeated words accumulate.
    pub fn add(&mut self, system: Pauli, probe: Pauli, coeff: Coefficient) {
        let entry = self.terms.entry((system, probe)).or_insert(Coefficient::ZERO);
        *entry = entry.add(coeff);
    }

    pub fn terms(&self) -> impl Iterator<Item = (Pauli, Pauli, Coefficient)> + '_ {
        self.terms.iter().map(|(&(s, p), &c)| (s, p, c))
    }

    pub fn coefficient(&self, system: Pauli, probe: Pauli) -> Coefficient {
        self.terms.get(&(system, probe)).copied().unwrap_or(Coefficient::ZERO)
    }

    pub fn to_matrix(&self) -> Mat4 {
        self.terms().fold(Mat4::zeros(), |acc, (s, p, c)| acc + pauli_word(s, p).scale_real(c.value))
    }

    /// `(c_x, c_y, c_z)` as exact rationals when all three literals were exact.
    pub fn exact_cartan(&self) -> Option<[Ratio<i64>; 3]> {
        let get = |p| self.coefficient(p, p).exact;
        Some([get(Pauli::X)?, get(Pauli::Y)?, get(Pauli::Z)?])
    }

    /// True when every term other than the identity is a `σ_k⊗σ_k` product.
    pub fn is_pure_cartan(&self) -> bool {
        self.terms().all(|(s, p, c)| c.value == 0.0 || s == p)
    }
}

impl fmt::Display for HamiltonianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, p, c) in self.terms() {
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            write!(f, "{c} {}{}", s.to_char(), p.to_char())?;
        }
        if first {
            f.write_str("0 II")?;
        }
        Ok(())
    }
}

impl FromStr for HamiltonianSpec {
    type Err = ParseError;

    fn from_str(src: &str) -> Result<Self, ParseError> {
        let mut spec = HamiltonianSpec::new();
        let mut seen = false;
        for (line_no, line) in src.lines().enumerate() {
            let line_no = line_no + 1;
            let body = line.split('#').next().unwrap_or("");
            let mut offset = 0;
            for piece in body.split(';') {
                let column = offset + 1;
                offset += piece.len() + 1;
                let lead = piece.len() - piece.trim_start().len();
                let text = piece.trim();
                if text.is_empty() {
                    continue;
                }
                let (coeff, word) =
                    parse_term(text).map_err(|(col, msg)| ParseError::new(line_no, column + lead + col, msg))?;
                spec.add(word.0, word.1, coeff);
                seen = true;
            }
        }
        if !seen {
            return Err(ParseError::new(1, 1, "empty Hamiltonian"));
        }
        Ok(spec)
    }
}

/// Errors carry a 0-based column inside `text`.
fn parse_term(text: &str) -> Result<(Coefficient, (Pauli, Pauli)), (usize, String)> {
    let mut parts = text.split_whitespace();
    let coeff_text = parts.next().unwrap_or("");
    let Some(word_text) = parts.next() else {
        return Err((0, format!("expected `coeff WORD`, found `{text}`")));
    };
    let word_col = text.find(word_text).unwrap_or(0);
    if let Some(extra) = parts.next() {
        let col = text.rfind(extra).unwrap_or(0);
        return Err((col, format!("unexpected `{extra}` after Pauli word")));
    }
    let coeff = parse_coefficient(coeff_text).map_err(|msg| (0, msg))?;
    let word = parse_word(word_text).map_err(|msg| (word_col, msg))?;
    Ok((coeff, word))
}

fn parse_word(text: &str) -> Result<(Pauli, Pauli), String> {
    let mut chars = text.chars().map(|c| Pauli::from_char(c.to_ascii_uppercase()));
    match (chars.next(), chars.next(), chars.next()) {
        (Some(Some(s)), Some(Some(p)), None) => Ok((s, p)),
        _ => Err(format!("Pauli word must be two letters from I, X, Y, Z, found `{text}`")),
    }
}

/// Decimal, integer or `p/q` literal with optional sign.
pub fn parse_coefficient(text: &str) -> Result<Coefficient, String> {
    let bad = || format!("invalid coefficient `{text}`");
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.parse().map_err(|_| bad())?;
        let den: i64 = den.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(format!("zero denominator in `{text}`"));
        }
        return Ok(Coefficient::exact(Ratio::new(num, den)));
    }
    if let Some(r) = exact_decimal(text) {
        return Ok(Coefficient::exact(r));
    }
    let value: f64 = text.parse().map_err(|_| bad())?;
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(Coefficient::float(value))
}

fn exact_decimal(text: &str) -> Option<Ratio<i64>> {
    let (neg, body) = match text.as_bytes().first()? {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) || frac.len() > 18 {
        return None;
    }
    let digits: i64 = format!("{int}{frac}").parse().ok()?;
    let den = 10i64.checked_pow(frac.len() as u32)?;
    let r = Ratio::new(digits, den);
    Some(if neg { -r } else { r })
}
