//! Reduced free-group words and finite presentations.

use std::fmt;

use crate::error::{Error, Location, Result};

/// One syllable `g^e` of a word: generator index and non-zero exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

/// A freely reduced word. Adjacent syllables never share a generator and no
/// exponent is zero; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: usize) -> Self {
        Word::letter(index, 1)
    }

    pub fn letter(generator: usize, exponent: i64) -> Self {
        let mut w = Word::identity();
        w.push(generator, exponent);
        w
    }

    /// Builds a word from arbitrary `(generator, exponent)` pairs, reducing freely.
    pub fn from_pairs<I: IntoIterator<Item = (usize, i64)>>(pairs: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in pairs {
            w.push(g, e);
        }
        w
    }

    /// Appends `g^e`, cancelling against the last syllable as needed.
    pub fn push(&mut self, generator: usize, exponent: i64) {
        if exponent == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.generator == generator => {
                last.exponent += exponent;
                if last.exponent == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(Syllable {
                generator,
                exponent,
            }),
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters `g^{±1}` in the word.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    /// Letters of the word one at a time, as `(generator, ±1)`.
    pub fn letters(&self) -> impl DoubleEndedIterator<Item = (usize, i64)> + '_ {
        self.syllables.iter().flat_map(|s| {
            let sign = s.exponent.signum();
            std::iter::repeat((s.generator, sign)).take(s.exponent.unsigned_abs() as usize)
        })
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for s in &other.syllables {
            w.push(s.generator, s.exponent);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    generator: s.generator,
                    exponent: -s.exponent,
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    /// Exponent sum of `generator`.
    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| s.exponent)
            .sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.generator).max()
    }

    /// Renders the word with the given generator names in the presentation grammar.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.names[s.generator])?;
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

/// A finite presentation `⟨generators | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates distinct names and relator indices. Relators are already
    /// reduced by construction of [`Word`].
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, name) in generators.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidParameter(format!("`{name}` is not a generator name")));
            }
            if generators[..i].contains(name) {
                return Err(Error::DuplicateGenerator {
                    name: name.clone(),
                    at: Location { line: 0, column: i + 1 },
                });
            }
        }
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(Error::DimensionMismatch {
                        expected: generators.len(),
                        found: g + 1,
                    });
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Exponent sums: entry `(i, j)` is the exponent sum of generator `j` in relator `i`.
    pub fn abelianized_exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| (0..self.num_generators()).map(|j| r.exponent_sum(j)).collect())
            .collect()
    }
}

/// Canonical text form, accepted back by [`parse_presentation`](crate::parse::parse_presentation).
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens:")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            writeln!(f, "rel: {}", r.display(&self.generators))?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
