//! Dense elimination over the scalar tower.
//!
//! Exact modes run fraction-free (Bareiss) forward elimination followed by a
//! Gauss–Jordan back pass; approximate mode uses partial pivoting and counts a
//! pivot only when its magnitude exceeds the tolerance.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};

/// Pivots whose magnitude lies within this factor of the tolerance are flagged.
pub const CONDITIONING_FACTOR: f64 = 1000.0;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    mode: Mode,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, mode: Mode, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| e.mode() != mode) {
            return Err(Error::ModeMismatch {
                left: mode,
                right: bad.mode(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            mode,
            entries,
        })
    }

    /// Builds from rows of equal length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize, mode: Mode) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r);
        }
        Matrix::new(n, cols, mode, entries)
    }

    pub fn from_integers(rows: &[Vec<i64>], cols: usize, mode: Mode) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_integer(x, mode)).collect())
            .collect();
        Matrix::from_rows(rows, cols, mode)
    }

    pub fn zeros(rows: usize, cols: usize, mode: Mode) -> Self {
        Matrix {
            rows,
            cols,
            mode,
            entries: vec![Scalar::zero(mode); rows * cols],
        }
    }

    pub fn identity(n: usize, mode: Mode) -> Self {
        let mut m = Matrix::zeros(n, n, mode);
        for i in 0..n {
            m.set(i, i, Scalar::one(mode));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .try_fold(Scalar::zero(self.mode), |acc, (a, x)| {
                        acc.checked_add(&a.checked_mul(x)?)
                    })
            })
            .collect()
    }

    pub fn eliminate(&self) -> Elimination {
        match self.mode {
            Mode::Approx(eps) => self.eliminate_approx(eps),
            _ => self.eliminate_exact(),
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().rank()
    }

    /// Basis of the right null space; see [`Elimination::kernel_basis`].
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.eliminate().kernel_basis()
    }

    fn eliminate_exact(&self) -> Elimination {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prev = Scalar::one(self.mode);
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let pivot = m.get(r, c).clone();
            for i in r + 1..m.rows {
                let factor = m.get(i, c).clone();
                for j in c + 1..m.cols {
                    let v = &(&(&pivot * m.get(i, j)) - &(&factor * m.get(r, j))) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, c, Scalar::zero(self.mode));
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        m.reduce_upward(&pivots);
        Elimination {
            reduced: m,
            pivots,
            warnings: Vec::new(),
        }
    }

    fn eliminate_approx(&self, eps: f64) -> Elimination {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut warnings = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let (p, mag) = (r..m.rows)
                .map(|i| (i, m.get(i, c).to_f64().abs()))
                .fold((r, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if mag <= eps {
                for i in r..m.rows {
                    m.set(i, c, Scalar::zero(self.mode));
                }
                continue;
            }
            if mag <= CONDITIONING_FACTOR * eps {
                warnings.push(Warning::IllConditionedPivot {
                    column: c,
                    magnitude: mag,
                });
            }
            m.swap_rows(r, p);
            let pivot = m.get(r, c).clone();
            for i in r + 1..m.rows {
                let factor = m.get(i, c) / &pivot;
                for j in c + 1..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, v);
                }
                m.set(i, c, Scalar::zero(self.mode));
            }
            pivots.push(c);
            r += 1;
        }
        m.reduce_upward(&pivots);
        Elimination {
            reduced: m,
            pivots,
            warnings,
        }
    }

    /// Normalises pivot rows and clears entries above each pivot.
    fn reduce_upward(&mut self, pivots: &[usize]) {
        let mode = self.mode;
        for (r, &c) in pivots.iter().enumerate().rev() {
            let inv = self.get(r, c).recip().expect("pivot is non-zero");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            self.set(r, c, Scalar::one(mode));
            for i in 0..r {
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(i, j) - &(&factor * self.get(r, j));
                    self.set(i, j, v);
                }
                self.set(i, c, Scalar::zero(mode));
            }
        }
        // Rows below the rank are zero up to the tolerance; make it literal.
        for i in pivots.len()..self.rows {
            for j in 0..self.cols {
                self.set(i, j, Scalar::zero(mode));
            }
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Diagnostics raised by approximate computations.
#[derive(Clone, Debug, PartialEq)]
pub enum Warning {
    IllConditionedPivot { column: usize, magnitude: f64 },
    NearTrivialCharacter { max_deviation: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::IllConditionedPivot { column, magnitude } => write!(
                f,
                "ill-conditioned pivot in column {column}: magnitude {magnitude:e} is within {CONDITIONING_FACTOR}x of the tolerance"
            ),
            Warning::NearTrivialCharacter { max_deviation } => write!(
                f,
                "character is non-trivial but within {max_deviation:e} of trivial"
            ),
        }
    }
}

/// Reduced row echelon form plus pivot data.
#[derive(Clone, Debug)]
pub struct Elimination {
    reduced: Matrix,
    pivots: Vec<usize>,
    warnings: Vec<Warning>,
}

impl Elimination {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduced(&self) -> &Matrix {
        &self.reduced
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    /// One vector per free column `f`: `v[f] = 1`, zero on the other free
    /// columns, and `v[p] = −R[row(p)][f]` on pivot columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let m = &self.reduced;
        let mode = m.mode();
        (0..m.cols())
            .filter(|c| !self.pivots.contains(c))
            .map(|free| {
                let mut v = vec![Scalar::zero(mode); m.cols()];
                v[free] = Scalar::one(mode);
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = -m.get(r, free);
                }
                v
            })
            .collect()
    }
}
