//! Characters `ρ: Γ → (ℝ₊*, ×)` given by their values on generators.
//!
//! Values are stored multiplicatively (`y = e^c`), never as logarithms, so a
//! character with value `(3+√5)/2` stays exact.

use crate::error::{Error, Result};
use crate::linalg::Warning;
use crate::parse::{strip_comment, tokens_with_columns};
use crate::scalar::{parse_scalars, Mode, Precision, Scalar};
use crate::word::{Presentation, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    values: Vec<Scalar>,
    mode: Mode,
}

impl Character {
    /// All values must share `mode` and be strictly positive.
    pub fn new(values: Vec<Scalar>, mode: Mode) -> Result<Self> {
        for (index, v) in values.iter().enumerate() {
            if v.mode() != mode {
                return Err(Error::ModeMismatch {
                    left: mode,
                    right: v.mode(),
                });
            }
            if !v.is_positive() {
                return Err(Error::NonPositive {
                    index,
                    value: v.to_string(),
                });
            }
        }
        Ok(Character { values, mode })
    }

    pub fn trivial(generators: usize, mode: Mode) -> Self {
        Character {
            values: vec![Scalar::one(mode); generators],
            mode,
        }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, generator: usize) -> &Scalar {
        &self.values[generator]
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Product of `ρ(g)^e` over the syllables of `w`; the identity maps to 1.
    pub fn evaluate(&self, w: &Word) -> Scalar {
        w.syllables().iter().fold(Scalar::one(self.mode), |acc, s| {
            let v = self.values[s.generator]
                .pow(s.exponent)
                .expect("character values are non-zero");
            &acc * &v
        })
    }

    /// True when every value equals 1 under the mode's equality.
    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Scalar::is_one)
    }

    /// True iff `ρ(r) = 1` for every relator `r`.
    pub fn is_admissible(&self, p: &Presentation) -> bool {
        self.check_admissible(p).is_ok()
    }

    /// Like [`is_admissible`](Self::is_admissible) but reports the first failing relator.
    pub fn check_admissible(&self, p: &Presentation) -> Result<()> {
        if self.values.len() != p.num_generators() {
            return Err(Error::DimensionMismatch {
                expected: p.num_generators(),
                found: self.values.len(),
            });
        }
        for (relator, r) in p.relators().iter().enumerate() {
            let v = self.evaluate(r);
            if !v.is_one() {
                return Err(Error::Inadmissible {
                    relator,
                    value: v.to_string(),
                });
            }
        }
        Ok(())
    }

    /// In approximate mode, a non-trivial character whose values all sit
    /// within `1000·eps` of 1 is reported.
    pub fn near_trivial_warning(&self) -> Option<Warning> {
        let Mode::Approx(eps) = self.mode else {
            return None;
        };
        if self.is_trivial() {
            return None;
        }
        let dev = self
            .values
            .iter()
            .map(|v| (v.to_f64() - 1.0).abs())
            .fold(0.0, f64::max);
        (dev <= crate::linalg::CONDITIONING_FACTOR * eps)
            .then_some(Warning::NearTrivialCharacter { max_deviation: dev })
    }

    pub fn to_mode(&self, mode: Mode) -> Result<Character> {
        let values = self
            .values
            .iter()
            .map(|v| v.to_mode(mode))
            .collect::<Result<Vec<_>>>()?;
        Character::new(values, mode)
    }

    /// `name=value` pairs in generator order, as accepted by [`parse_assignments`].
    pub fn display(&self, names: &[String]) -> String {
        assignments_to_string(names, &self.values)
    }
}

pub(crate) fn assignments_to_string(names: &[String], values: &[Scalar]) -> String {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses `name=value` assignments (optionally after a `keyword:` prefix).
///
/// Missing generators receive `default` (converted into the resolved mode).
/// Returns the common mode and one value per generator.
pub fn parse_assignments(
    text: &str,
    keyword: &str,
    names: &[String],
    precision: Precision,
    default: i64,
) -> Result<(Mode, Vec<Scalar>)> {
    let mut pairs: Vec<(usize, String)> = Vec::new();
    let mut seen_keyword = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = strip_comment(raw);
        let mut body = line;
        let mut offset = 0;
        if let Some((k, rest)) = line.split_once(':') {
            if k.trim() != keyword {
                return Err(Error::syntax(line_no, 1, format!("expected `{keyword}:`")));
            }
            if seen_keyword {
                return Err(Error::syntax(line_no, 1, format!("second `{keyword}:` line")));
            }
            seen_keyword = true;
            offset = line.len() - rest.len();
            body = rest;
        }
        for (col, tok) in tokens_with_columns(body) {
            let column = offset + col + 1;
            let (name, value) = tok
                .split_once('=')
                .ok_or_else(|| Error::syntax(line_no, column, format!("expected name=value, found `{tok}`")))?;
            let index = names.iter().position(|n| n == name).ok_or_else(|| {
                Error::UnknownGenerator {
                    name: name.to_string(),
                    at: crate::error::Location { line: line_no, column },
                }
            })?;
            if pairs.iter().any(|(i, _)| *i == index) {
                return Err(Error::syntax(line_no, column, format!("`{name}` assigned twice")));
            }
            pairs.push((index, value.to_string()));
        }
    }
    let texts: Vec<&str> = pairs.iter().map(|(_, v)| v.as_str()).collect();
    let (mode, parsed) = parse_scalars(&texts, precision)?;
    let mut values = vec![Scalar::from_integer(default, mode); names.len()];
    for ((index, _), v) in pairs.iter().zip(parsed) {
        values[*index] = v;
    }
    Ok((mode, values))
}

/// Parses `char: a=2 b=1 t=3/2+1/2*sqrt(5)`; unlisted generators default to 1.
pub fn parse_character(text: &str, names: &[String], precision: Precision) -> Result<Character> {
    let (mode, values) = parse_assignments(text, "char", names, precision, 1)?;
    Character::new(values, mode)
}
