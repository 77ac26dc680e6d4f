//! Line-oriented text grammar for presentations.
//!
//! ```text
//! # comment
//! gens: a b
//! rel: [a,b]
//! rel: a^2 b^-1 a^-
//! ```
//!
//! `gens:` must be the first non-comment line and appear once. A word is a
//! whitespace-separated sequence of `name`, `name^k` (`k` a non-zero signed
//! integer, `^-` meaning `^-1`) and nestable commutators `[w1,w2]`.

use crate::error::{Error, Location, Result};
use crate::word::{is_identifier, Presentation, Word};

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut generators: Option<Vec<String>> = None;
    let mut relators = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let body = line.trim_start();
        let (keyword, rest) = match body.split_once(':') {
            Some((k, r)) => (k.trim_end(), r),
            None => return Err(Error::syntax(line_no, indent + 1, "expected `gens:` or `rel:`")),
        };
        let rest_col = indent + keyword.len() + 2 + (body.len() - keyword.len() - 1 - rest.len());
        match keyword {
            "gens" => {
                if generators.is_some() {
                    return Err(Error::syntax(line_no, indent + 1, "second `gens:` line"));
                }
                let mut names: Vec<String> = Vec::new();
                for (col, tok) in tokens_with_columns(rest) {
                    let at = Location {
                        line: line_no,
                        column: rest_col + col,
                    };
                    if !is_identifier(tok) {
                        return Err(Error::Syntax {
                            at,
                            message: format!("`{tok}` is not a generator name"),
                        });
                    }
                    if names.iter().any(|n| n == tok) {
                        return Err(Error::DuplicateGenerator {
                            name: tok.to_string(),
                            at,
                        });
                    }
                    names.push(tok.to_string());
                }
                generators = Some(names);
            }
            "rel" => {
                let names = generators.as_ref().ok_or_else(|| {
                    Error::syntax(line_no, indent + 1, "`rel:` before `gens:`")
                })?;
                let mut parser = WordParser {
                    chars: rest.chars().collect(),
                    pos: 0,
                    line: line_no,
                    col_offset: rest_col,
                    names,
                };
                relators.push(parser.parse_line()?);
            }
            other => {
                let message = if generators.is_none() {
                    "first line must be `gens:`".to_string()
                } else {
                    format!("unknown keyword `{other}`")
                };
                return Err(Error::syntax(line_no, indent + 1, message));
            }
        }
    }

    let generators = generators.ok_or_else(|| Error::syntax(1, 1, "missing `gens:` line"))?;
    Presentation::new(generators, relators)
}

/// Parses a single word against a list of generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    WordParser {
        chars: strip_comment(text).chars().collect(),
        pos: 0,
        line: 1,
        col_offset: 1,
        names,
    }
    .parse_line()
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(before, _)| before)
}

/// Whitespace-separated tokens with 0-based character columns.
pub(crate) fn tokens_with_columns(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(st)) => {
                out.push((s[..st].chars().count(), &s[st..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((s[..st].chars().count(), &s[st..]));
    }
    out.into_iter()
}

struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col_offset: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::syntax(self.line, self.col_offset + self.pos, message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn parse_line(&mut self) -> Result<Word> {
        let w = self.parse_word()?;
        self.skip_ws();
        match self.peek() {
            None => Ok(w),
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }

    /// word := (atom)*, stopping at `,` `]` or end.
    fn parse_word(&mut self) -> Result<Word> {
        let mut w = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(',') | Some(']') => return Ok(w),
                Some('[') => {
                    self.pos += 1;
                    let x = self.parse_word()?;
                    self.skip_ws();
                    if self.peek() != Some(',') {
                        return Err(self.err("expected `,` in commutator"));
                    }
                    self.pos += 1;
                    let y = self.parse_word()?;
                    self.skip_ws();
                    if self.peek() != Some(']') {
                        return Err(self.err("expected `]` closing commutator"));
                    }
                    self.pos += 1;
                    w = w.concat(&Word::commutator(&x, &y));
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                        self.pos += 1;
                    }
                    let name: String = self.chars[start..self.pos].iter().collect();
                    let index = self.names.iter().position(|n| *n == name).ok_or_else(|| {
                        Error::UnknownGenerator {
                            name: name.clone(),
                            at: Location {
                                line: self.line,
                                column: self.col_offset + start,
                            },
                        }
                    })?;
                    let exponent = self.parse_exponent()?;
                    w.push(index, exponent);
                }
                Some(c) => return Err(self.err(format!("unexpected `{c}`"))),
            }
        }
    }

    fn parse_exponent(&mut self) -> Result<i64> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            // `^-` abbreviates `^-1`.
            return if sign == -1 && start > 0 && self.chars[start - 1] == '-' {
                Ok(-1)
            } else {
                Err(self.err("expected exponent digits"))
            };
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let k: i64 = digits.parse().map_err(|_| self.err("exponent out of range"))?;
        if k == 0 {
            return Err(self.err("zero exponent"));
        }
        Ok(sign * k)
    }
}
