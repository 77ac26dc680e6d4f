//! Twisted cocycles and the first twisted cohomology of a presentation.
//!
//! Convention: a cocycle is a right crossed homomorphism
//!
//! ```text
//! μ(gh) = μ(h) + ρ(h)·μ(g),      μ(g⁻¹) = −μ(g)/ρ(g),
//! ```
//!
//! which is exactly the top-right entry of the product of the matrices
//! `ξ(g) = [[1, μ(g)], [0, ρ(g)]]`. A cocycle on the free group is fixed by its
//! generator values; it descends to the presented group iff it kills every
//! relator, and `μ(r)` is linear in those values (the ρ-evaluated Fox
//! derivative of `r`). Coboundaries are `μ_c(g) = c·(ρ(g) − 1)`.
//!
//! For a non-trivial character `h1_dim > 0` is equivalent to the existence of
//! an indecomposable representation of that shape, hence to non-vanishing of
//! the twisted cohomology of any manifold with this fundamental group.
//! `h1_dim` itself is the group-cohomology dimension.

use serde::Serialize;

use crate::character::Character;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Warning};
use crate::scalar::{Mode, Scalar};
use crate::word::{Presentation, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    values: Vec<Scalar>,
    character: Character,
}

impl Cocycle {
    pub fn new(values: Vec<Scalar>, character: Character) -> Result<Self> {
        if values.len() != character.len() {
            return Err(Error::DimensionMismatch {
                expected: character.len(),
                found: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| v.mode() != character.mode()) {
            return Err(Error::ModeMismatch {
                left: character.mode(),
                right: v.mode(),
            });
        }
        Ok(Cocycle { values, character })
    }

    pub fn zero(character: Character) -> Self {
        Cocycle {
            values: vec![Scalar::zero(character.mode()); character.len()],
            character,
        }
    }

    /// The coboundary `g ↦ c·(ρ(g) − 1)`.
    pub fn coboundary(character: Character, c: &Scalar) -> Result<Self> {
        let values = coboundary_vector(&character)
            .iter()
            .map(|v| c.checked_mul(v))
            .collect::<Result<Vec<_>>>()?;
        Cocycle::new(values, character)
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn mode(&self) -> Mode {
        self.character.mode()
    }

    pub fn evaluate(&self, w: &Word) -> Scalar {
        evaluate_cocycle(self, w)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    /// Scales so the first non-zero value is 1.
    pub fn normalized(&self) -> Cocycle {
        match self.values.iter().find(|v| !v.is_zero()) {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.recip().expect("non-zero");
                Cocycle {
                    values: self.values.iter().map(|v| v * &inv).collect(),
                    character: self.character.clone(),
                }
            }
        }
    }
}

/// `μ(w)` by one right-to-left pass over the letters of `w`:
/// `μ(s₁…s_L) = Σᵢ ρ(s_{i+1}…s_L)·μ(sᵢ)`.
pub fn evaluate_cocycle(mu: &Cocycle, w: &Word) -> Scalar {
    let rho = &mu.character;
    let mode = rho.mode();
    let mut suffix = Scalar::one(mode);
    let mut total = Scalar::zero(mode);
    for (g, e) in w.letters().rev() {
        let y = rho.value(g);
        let letter_value = if e > 0 {
            mu.values[g].clone()
        } else {
            -(&mu.values[g] / y)
        };
        total = &total + &(&suffix * &letter_value);
        suffix = if e > 0 { &suffix * y } else { &suffix / y };
    }
    total
}

/// Coefficients `c_j` with `μ(w) = Σ_j c_j·μ(a_j)` for every cocycle with
/// character `ρ`. No admissibility check.
pub fn fox_row(rho: &Character, w: &Word) -> Vec<Scalar> {
    let mode = rho.mode();
    let mut row = vec![Scalar::zero(mode); rho.len()];
    let mut suffix = Scalar::one(mode);
    for (g, e) in w.letters().rev() {
        let y = rho.value(g);
        if e > 0 {
            row[g] = &row[g] + &suffix;
            suffix = &suffix * y;
        } else {
            row[g] = &row[g] - &(&suffix / y);
            suffix = &suffix / y;
        }
    }
    row
}

/// The ρ-evaluated Fox derivative of `relator`: the linear constraint it
/// imposes on cocycle values. Requires `ρ` admissible for `p`.
pub fn relator_constraint_row(p: &Presentation, rho: &Character, relator: &Word) -> Result<Vec<Scalar>> {
    rho.check_admissible(p)?;
    Ok(fox_row(rho, relator))
}

/// The `relators × generators` constraint matrix.
pub fn constraint_matrix(p: &Presentation, rho: &Character) -> Result<Matrix> {
    rho.check_admissible(p)?;
    let rows = p.relators().iter().map(|r| fox_row(rho, r)).collect();
    Matrix::from_rows(rows, p.num_generators(), rho.mode())
}

/// A basis of `Z¹`, in the reduced parametrisation by free generators.
pub fn cocycle_space(p: &Presentation, rho: &Character) -> Result<Vec<Cocycle>> {
    Ok(solve(p, rho)?.0)
}

fn solve(p: &Presentation, rho: &Character) -> Result<(Vec<Cocycle>, Vec<Warning>)> {
    let elim = constraint_matrix(p, rho)?.eliminate();
    let basis = elim
        .kernel_basis()
        .into_iter()
        .map(|v| Cocycle {
            values: v,
            character: rho.clone(),
        })
        .collect();
    Ok((basis, elim.warnings().to_vec()))
}

/// `(ρ(a_j) − 1)_j`, spanning `B¹`.
pub fn coboundary_vector(rho: &Character) -> Vec<Scalar> {
    let one = Scalar::one(rho.mode());
    rho.values().iter().map(|y| y - &one).collect()
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
    pub z1_basis: Vec<Cocycle>,
    pub coboundary_generator: Option<Vec<Scalar>>,
    pub warnings: Vec<Warning>,
}

impl CohomologyReport {
    /// `h1_dim > 0`, the non-vanishing verdict.
    pub fn is_nonvanishing(&self) -> bool {
        self.h1_dim > 0
    }

    pub fn summary(&self) -> ReportSummary {
        ReportSummary {
            z1_dim: self.z1_dim,
            b1_dim: self.b1_dim,
            h1_dim: self.h1_dim,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReportSummary {
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
}

/// `dim Z¹ − dim B¹` for an admissible character.
///
/// `b1_dim` is 1 for a non-trivial character and 0 otherwise. With zero
/// generators every dimension is 0.
pub fn twisted_h1_dimension(p: &Presentation, rho: &Character) -> Result<CohomologyReport> {
    let (basis, mut warnings) = solve(p, rho)?;
    let trivial = rho.is_trivial();
    warnings.extend(rho.near_trivial_warning());
    let z1_dim = basis.len();
    let b1_dim = usize::from(!trivial && p.num_generators() > 0);
    let h1_dim = z1_dim.checked_sub(b1_dim).ok_or_else(|| {
        Error::Numerical("cocycle space lost the coboundary line; tolerance too tight".into())
    })?;
    Ok(CohomologyReport {
        z1_dim,
        b1_dim,
        h1_dim,
        z1_basis: basis,
        coboundary_generator: (b1_dim == 1).then(|| coboundary_vector(rho)),
        warnings,
    })
}

/// First Betti number: generators minus the rational rank of the exponent-sum matrix.
pub fn betti_one(p: &Presentation) -> usize {
    let rows = p.abelianized_exponent_matrix();
    let m = Matrix::from_integers(&rows, p.num_generators(), Mode::Rational).expect("consistent shape");
    p.num_generators() - m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{heisenberg, mapping_torus_presentation, surface_presentation, free_group};
    use crate::parse::parse_word;
    use num_rational::BigRational;

    fn golden() -> Scalar {
        Scalar::quadratic(BigRational::new(3.into(), 2.into()), BigRational::new(1.into(), 2.into()), 5)
            .unwrap()
    }

    fn torus_char(y: Scalar) -> Character {
        let mode = y.mode();
        Character::new(vec![Scalar::one(mode), Scalar::one(mode), y], mode).unwrap()
    }

    fn rat_char(v: &[(i64, i64)]) -> Character {
        Character::new(v.iter().map(|&(n, d)| Scalar::ratio(n, d)).collect(), Mode::Rational).unwrap()
    }

    /// Top-right entry of ξ(a)ξ(b)ξ(a)⁻¹ξ(b)⁻¹ with ξ(g) = [[1, m], [0, y]],
    /// multiplied out with plain rationals.
    fn commutator_oracle(ma: BigRational, ya: BigRational, mb: BigRational, yb: BigRational) -> BigRational {
        type M = [[BigRational; 2]; 2];
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::from_integer(0.into());
        let mk = |m: &BigRational, y: &BigRational| -> M { [[one.clone(), m.clone()], [zero.clone(), y.clone()]] };
        let inv = |m: &BigRational, y: &BigRational| -> M {
            [[one.clone(), -(m / y)], [zero.clone(), one.clone() / y]]
        };
        let mul = |x: &M, z: &M| -> M {
            [
                [&x[0][0] * &z[0][0] + &x[0][1] * &z[1][0], &x[0][0] * &z[0][1] + &x[0][1] * &z[1][1]],
                [&x[1][0] * &z[0][0] + &x[1][1] * &z[1][0], &x[1][0] * &z[0][1] + &x[1][1] * &z[1][1]],
            ]
        };
        let p = mul(&mul(&mul(&mk(&ma, &ya), &mk(&mb, &yb)), &inv(&ma, &ya)), &inv(&mb, &yb));
        p[0][1].clone()
    }

    #[test]
    fn commutator_value_matches_matrix_oracle() {
        let gens = vec!["a".to_string(), "b".to_string()];
        let w = parse_word("[a,b]", &gens).unwrap();
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        for (ya, yb, ma, mb) in [((2, 1), (3, 1), (1, 1), (0, 1)), ((1, 2), (5, 3), (-2, 7), (4, 1)), ((1, 1), (1, 1), (3, 1), (5, 1))] {
            let rho = rat_char(&[ya, yb]);
            let mu = Cocycle::new(vec![Scalar::ratio(ma.0, ma.1), Scalar::ratio(mb.0, mb.1)], rho).unwrap();
            let oracle = commutator_oracle(r(ma.0, ma.1), r(ya.0, ya.1), r(mb.0, mb.1), r(yb.0, yb.1));
            // Closed form (μa(yb − 1) − μb(ya − 1)) / (ya·yb).
            let (yaa, ybb, maa, mbb) = (r(ya.0, ya.1), r(yb.0, yb.1), r(ma.0, ma.1), r(mb.0, mb.1));
            let one = r(1, 1);
            let closed = (&maa * (&ybb - &one) - &mbb * (&yaa - &one)) / (&yaa * &ybb);
            assert_eq!(oracle, closed);
            assert_eq!(mu.evaluate(&w), Scalar::Rational(oracle));
        }
    }

    #[test]
    fn conjugation_in_mapping_torus() {
        let gens = vec!["u".to_string(), "v".to_string(), "t".to_string()];
        let rho = torus_char(Scalar::ratio(2, 1));
        let mu = Cocycle::new(vec![Scalar::ratio(3, 1), Scalar::ratio(5, 1), Scalar::ratio(7, 1)], rho).unwrap();
        let w = parse_word("t u t^-1", &gens).unwrap();
        assert_eq!(mu.evaluate(&w), Scalar::ratio(3, 2));
    }

    #[test]
    fn identity_and_inverse_words() {
        let rho = rat_char(&[(2, 1), (3, 5)]);
        let mu = Cocycle::new(vec![Scalar::ratio(1, 3), Scalar::ratio(-2, 1)], rho).unwrap();
        assert!(mu.evaluate(&Word::identity()).is_zero());
        let w = Word::from_pairs([(0, 2), (1, -1), (0, 1)]);
        let ww = Word::from_pairs(w.letters().chain(w.inverse().letters()));
        assert!(ww.is_identity());
        // Evaluate w then w⁻¹ through the cocycle law.
        let v = &mu.evaluate(&w.inverse()) + &(&mu.character().evaluate(&w.inverse()) * &mu.evaluate(&w));
        assert!(v.is_zero());
    }

    #[test]
    fn constraint_rows_for_golden_mapping_torus() {
        let p = mapping_torus_presentation([[2, 1], [1, 1]]).unwrap();
        let y = Scalar::ratio(2, 1);
        let rho = torus_char(y.clone());
        let inv = y.recip().unwrap();
        let int = |n| Scalar::from_integer(n, Mode::Rational);
        assert_eq!(relator_constraint_row(&p, &rho, &p.relators()[0]).unwrap(), vec![int(0), int(0), int(0)]);
        assert_eq!(
            relator_constraint_row(&p, &rho, &p.relators()[1]).unwrap(),
            vec![&inv - &int(2), int(-1), int(0)]
        );
        assert_eq!(
            relator_constraint_row(&p, &rho, &p.relators()[2]).unwrap(),
            vec![int(-1), &inv - &int(1), int(0)]
        );
        let bad = rat_char(&[(2, 1), (1, 1), (1, 1)]);
        assert!(matches!(
            relator_constraint_row(&p, &bad, &p.relators()[1]),
            Err(Error::Inadmissible { .. })
        ));
    }

    #[test]
    fn golden_mapping_torus_cohomology() {
        let p = mapping_torus_presentation([[2, 1], [1, 1]]).unwrap();
        let rep = twisted_h1_dimension(&p, &torus_char(golden())).unwrap();
        assert_eq!((rep.z1_dim, rep.b1_dim, rep.h1_dim), (2, 1, 1));
        let rep = twisted_h1_dimension(&p, &torus_char(Scalar::ratio(2, 1))).unwrap();
        assert_eq!((rep.z1_dim, rep.b1_dim, rep.h1_dim), (1, 1, 0));
        assert_eq!(
            rep.coboundary_generator.unwrap(),
            vec![Scalar::ratio(0, 1), Scalar::ratio(0, 1), Scalar::ratio(1, 1)]
        );
    }

    #[test]
    fn heisenberg_vanishes() {
        let rho = rat_char(&[(2, 1), (1, 1), (1, 1)]);
        let rep = twisted_h1_dimension(&heisenberg(), &rho).unwrap();
        assert_eq!(rep.h1_dim, 0);
    }

    #[test]
    fn genus_two_dimensions() {
        let p = surface_presentation(2).unwrap();
        let rep = twisted_h1_dimension(&p, &Character::trivial(4, Mode::Rational)).unwrap();
        assert_eq!((rep.z1_dim, rep.b1_dim, rep.h1_dim), (4, 0, 4));
        assert!(rep.coboundary_generator.is_none());
        let rep = twisted_h1_dimension(&p, &rat_char(&[(2, 1), (1, 1), (1, 1), (1, 1)])).unwrap();
        assert_eq!((rep.z1_dim, rep.b1_dim, rep.h1_dim), (3, 1, 2));
    }

    #[test]
    fn free_group_and_empty_presentation() {
        let rho = rat_char(&[(2, 1), (3, 1)]);
        assert_eq!(cocycle_space(&free_group(2), &rho).unwrap().len(), 2);
        let empty = Presentation::new(vec![], vec![]).unwrap();
        let rep = twisted_h1_dimension(&empty, &Character::trivial(0, Mode::Rational)).unwrap();
        assert_eq!((rep.z1_dim, rep.b1_dim, rep.h1_dim), (0, 0, 0));
    }

    #[test]
    fn coboundary_vectors() {
        assert!(coboundary_vector(&Character::trivial(3, Mode::Rational)).iter().all(Scalar::is_zero));
        assert_eq!(coboundary_vector(&rat_char(&[(2, 1), (1, 1)])), vec![Scalar::ratio(1, 1), Scalar::ratio(0, 1)]);
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(betti_one(&surface_presentation(3).unwrap()), 6);
        assert_eq!(betti_one(&mapping_torus_presentation([[2, 1], [1, 1]]).unwrap()), 1);
        assert_eq!(betti_one(&heisenberg()), 2);
        assert_eq!(betti_one(&free_group(3)), 3);
    }

    #[test]
    fn approximate_mode_agrees() {
        let p = mapping_torus_presentation([[2, 1], [1, 1]]).unwrap();
        let y = golden().to_mode(Mode::Approx(1e-9)).unwrap();
        let rep = twisted_h1_dimension(&p, &torus_char(y)).unwrap();
        assert_eq!(rep.h1_dim, 1);
        assert!(rep.warnings.is_empty());
    }

    #[test]
    fn inadmissible_character_is_an_error() {
        let rho = rat_char(&[(1, 1), (1, 1), (3, 1)]);
        assert!(matches!(twisted_h1_dimension(&heisenberg(), &rho), Err(Error::Inadmissible { .. })));
        assert!(cocycle_space(&heisenberg(), &rho).is_err());
    }
}
