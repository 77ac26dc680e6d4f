//! Candidate characters from commutator-subgroup conjugation data.
//!
//! If `[Γ,Γ]` is generated by `b_1 … b_k` and `a_j⁻¹ b_i a_j = ∏_ℓ b_ℓ^{n_{ijℓ}}`,
//! any character supporting an indecomposable representation sends `a_j` to a
//! positive real eigenvalue of `N_j = (n_{ijℓ})`. The top-right entries of the
//! unipotent images of the `b_ℓ` add, so the order of the product is irrelevant.

use std::fmt;

use rayon::prelude::*;

use crate::character::Character;
use crate::cocycle::{twisted_h1_dimension, CohomologyReport};
use crate::eigen::positive_real_eigenvalues;
use crate::error::{Error, Result};
use crate::parse::strip_comment;
use crate::scalar::{Mode, Scalar};
use crate::word::Presentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationData {
    m: usize,
    k: usize,
    n: Vec<Vec<Vec<i64>>>,
}

impl ConjugationData {
    pub fn new(m: usize, k: usize, n: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(Error::InvalidParameter("conjugation data needs m ≥ 1 and k ≥ 1".into()));
        }
        if n.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: n.len(),
            });
        }
        for block in &n {
            if block.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: block.len(),
                });
            }
            if let Some(row) = block.iter().find(|r| r.len() != k) {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: row.len(),
                });
            }
        }
        Ok(ConjugationData { m, k, n })
    }

    /// Number of outer generators.
    pub fn outer(&self) -> usize {
        self.m
    }

    /// Number of commutator-subgroup generators.
    pub fn comm(&self) -> usize {
        self.k
    }

    pub fn matrices(&self) -> &[Vec<Vec<i64>>] {
        &self.n
    }

    /// `k^m`, saturating.
    pub fn bound(&self) -> u128 {
        u32::try_from(self.m)
            .ok()
            .and_then(|m| (self.k as u128).checked_pow(m))
            .unwrap_or(u128::MAX)
    }

    /// Parses
    ///
    /// ```text
    /// outer: 1
    /// comm: 2
    /// N_1:
    /// 1 -1
    /// -1 2
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut m = None;
        let mut k = None;
        let mut blocks: Vec<Vec<Vec<i64>>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, rest)) = line.split_once(':') {
                let key = key.trim();
                let rest = rest.trim();
                let count = |what: &str| -> Result<usize> {
                    rest.parse()
                        .map_err(|_| Error::syntax(line_no, key.len() + 2, format!("bad {what} count `{rest}`")))
                };
                match key {
                    "outer" if m.is_none() => m = Some(count("outer")?),
                    "comm" if k.is_none() => k = Some(count("comm")?),
                    _ if key.starts_with("N_") => {
                        let index: usize = key[2..]
                            .parse()
                            .map_err(|_| Error::syntax(line_no, 3, format!("bad block label `{key}`")))?;
                        if index != blocks.len() + 1 {
                            return Err(Error::syntax(line_no, 1, format!("expected N_{}", blocks.len() + 1)));
                        }
                        if !rest.is_empty() {
                            return Err(Error::syntax(line_no, key.len() + 2, "matrix rows go on the following lines"));
                        }
                        blocks.push(Vec::new());
                    }
                    _ => return Err(Error::syntax(line_no, 1, format!("unexpected `{key}:`"))),
                }
                continue;
            }
            let block = blocks
                .last_mut()
                .ok_or_else(|| Error::syntax(line_no, 1, "matrix row before any `N_j:` label"))?;
            let mut row = Vec::new();
            let mut column = 0;
            for tok in line.split_whitespace() {
                let at = line[column..].find(tok).map_or(column, |p| column + p);
                column = at + tok.len();
                row.push(
                    tok.parse::<i64>()
                        .map_err(|_| Error::syntax(line_no, at + 1, format!("expected an integer, found `{tok}`")))?,
                );
            }
            block.push(row);
        }
        let m = m.ok_or_else(|| Error::syntax(1, 1, "missing `outer:` line"))?;
        let k = k.ok_or_else(|| Error::syntax(1, 1, "missing `comm:` line"))?;
        ConjugationData::new(m, k, blocks)
    }
}

impl fmt::Display for ConjugationData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "outer: {}", self.m)?;
        writeln!(f, "comm: {}", self.k)?;
        for (j, block) in self.n.iter().enumerate() {
            writeln!(f, "N_{}:", j + 1)?;
            for row in block {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                writeln!(f, "{}", cells.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Cartesian product of the positive real eigenvalues of each `N_j`, in
/// lexicographic order with each factor ascending.
///
/// Every tuple is brought into a single mode: rational entries join a
/// quadratic field, and exact entries round into `Approx(eps)` next to an
/// approximate one or when two different quadratic fields meet.
pub fn candidate_characters(d: &ConjugationData, eps: f64) -> Result<Vec<Vec<Scalar>>> {
    let factors = d
        .n
        .iter()
        .map(|n| positive_real_eigenvalues(n, eps))
        .collect::<Result<Vec<_>>>()?;
    let mut tuples: Vec<Vec<Scalar>> = vec![Vec::new()];
    for factor in &factors {
        tuples = tuples
            .iter()
            .flat_map(|prefix| {
                factor.iter().map(move |v| {
                    let mut t = prefix.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    tuples.into_iter().map(|t| unify(t, eps)).collect()
}

fn unify(tuple: Vec<Scalar>, eps: f64) -> Result<Vec<Scalar>> {
    let mut mode = Mode::Rational;
    for v in &tuple {
        mode = match (mode, v.mode()) {
            (Mode::Approx(e), _) | (_, Mode::Approx(e)) => Mode::Approx(e),
            (Mode::Rational, m) | (m, Mode::Rational) => m,
            (Mode::Quadratic(a), Mode::Quadratic(b)) if a == b => mode,
            _ => Mode::Approx(eps),
        };
    }
    tuple.iter().map(|v| v.to_mode(mode)).collect()
}

/// One non-vanishing character found by [`enumerate_nonvanishing`].
#[derive(Clone, Debug)]
pub struct NonVanishing {
    pub character: Character,
    pub report: CohomologyReport,
}

/// Runs the solver at every admissible, non-trivial candidate and keeps
/// those with `h1_dim > 0`, in candidate order.
///
/// `outer[j]` is the generator of `p` receiving the `j`-th tuple entry;
/// every other generator gets 1.
pub fn enumerate_nonvanishing(
    p: &Presentation,
    d: &ConjugationData,
    outer: &[usize],
    eps: f64,
) -> Result<Vec<NonVanishing>> {
    if outer.len() != d.m {
        return Err(Error::InvalidParameter(format!(
            "outer-generator map has {} entries, data has {} outer generators",
            outer.len(),
            d.m
        )));
    }
    for (j, &g) in outer.iter().enumerate() {
        if g >= p.num_generators() {
            return Err(Error::InvalidParameter(format!("outer generator {g} out of range")));
        }
        if outer[..j].contains(&g) {
            let name = &p.generators()[g];
            return Err(Error::InvalidParameter(format!("generator `{name}` mapped twice")));
        }
    }
    let candidates = candidate_characters(d, eps)?;
    let results = candidates
        .into_par_iter()
        .map(|tuple| -> Result<Option<NonVanishing>> {
            let mode = tuple.first().map_or(Mode::Rational, Scalar::mode);
            let mut values = vec![Scalar::one(mode); p.num_generators()];
            for (v, &g) in tuple.into_iter().zip(outer) {
                values[g] = v;
            }
            let character = Character::new(values, mode)?;
            if character.is_trivial() || !character.is_admissible(p) {
                return Ok(None);
            }
            let report = twisted_h1_dimension(p, &character)?;
            Ok(report.is_nonvanishing().then_some(NonVanishing { character, report }))
        })
        .collect::<Vec<_>>();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
