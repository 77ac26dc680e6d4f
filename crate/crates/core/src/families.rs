//! Presentations for the standard example families and their closed-form answers.
//!
//! Mapping tori use the column convention `t·w·t⁻¹ = A·w` for `w ∈ ℤ²`
//! written additively in `(u, v)`.

use crate::certificate::{build_representation, is_decomposable};
use crate::character::Character;
use crate::cocycle::{cocycle_space, Cocycle};
use crate::eigen::positive_real_eigenvalues;
use crate::enumerate::ConjugationData;
use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};
use crate::word::{Presentation, Word};

pub type Sl2 = [[i64; 2]; 2];

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn check_sl2(a: &Sl2) -> Result<()> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det != 1 {
        return Err(Error::InvalidParameter(format!("det A = {det}, expected 1")));
    }
    Ok(())
}

/// `⟨u, v, t | [u,v], t u t⁻¹ v^{−A₂₁} u^{−A₁₁}, t v t⁻¹ v^{−A₂₂} u^{−A₁₂}⟩`.
pub fn mapping_torus_presentation(a: Sl2) -> Result<Presentation> {
    check_sl2(&a)?;
    let (u, v, t) = (0, 1, 2);
    let conj = |x: usize, col: usize| {
        Word::from_pairs([(t, 1), (x, 1), (t, -1), (v, -a[1][col]), (u, -a[0][col])])
    };
    Presentation::new(
        vec!["u".into(), "v".into(), "t".into()],
        vec![
            Word::commutator(&Word::generator(u), &Word::generator(v)),
            conj(u, 0),
            conj(v, 1),
        ],
    )
}

/// `ρ(u) = ρ(v) = 1`, `ρ(t) = y`.
pub fn mapping_torus_character(y: &Scalar) -> Result<Character> {
    let mode = y.mode();
    Character::new(vec![Scalar::one(mode), Scalar::one(mode), y.clone()], mode)
}

/// Closed-form test: `y + 1/y = tr A`.
pub fn mapping_torus_h1_nonzero(a: Sl2, y: &Scalar) -> Result<bool> {
    check_sl2(&a)?;
    let lhs = y.checked_add(&y.recip()?)?;
    let trace = Scalar::from_integer(a[0][0] + a[1][1], y.mode());
    lhs.eq_in_mode(&trace)
}

/// Positive real eigenvalues of `A`, exact (quadratic when irrational), ascending.
pub fn mapping_torus_eigenvalues(a: Sl2) -> Result<Vec<Scalar>> {
    check_sl2(&a)?;
    positive_real_eigenvalues(&[a[0].to_vec(), a[1].to_vec()], crate::scalar::DEFAULT_EPSILON)
}

/// The cocycle `μ(u) = λ₁, μ(v) = λ₂, μ(t) = 0` with `ᵗA λ = λ/y`,
/// scaled so the first non-zero entry is 1.
pub fn mapping_torus_cocycle(a: Sl2, y: &Scalar) -> Result<Cocycle> {
    if !mapping_torus_h1_nonzero(a, y)? {
        return Err(Error::Precondition(format!("{y} is not an eigenvalue of A")));
    }
    if y.is_one() {
        return Err(Error::Precondition("trivial character".into()));
    }
    let mode = y.mode();
    let inv = y.recip()?;
    let int = |n: i64| Scalar::from_integer(n, mode);
    // Rows of ᵗA − 1/y.
    let r0 = [int(a[0][0]).checked_sub(&inv)?, int(a[1][0])];
    let r1 = [int(a[0][1]), int(a[1][1]).checked_sub(&inv)?];
    let row = if r0.iter().any(|s| !s.is_zero()) { r0 } else { r1 };
    let lambda = [row[1].clone(), -&row[0]];
    let rho = mapping_torus_character(y)?;
    let mu = Cocycle::new(vec![lambda[0].clone(), lambda[1].clone(), Scalar::zero(mode)], rho)?;
    Ok(mu.normalized())
}

/// Conjugation data for `Γ = ℤ² ⋊_A ℤ`, using `u, v` for the commutator side
/// and `t` as the single outer generator: `t⁻¹ b t` acts by `A⁻¹`.
pub fn mapping_torus_conjugation(a: Sl2) -> Result<ConjugationData> {
    check_sl2(&a)?;
    // Row i lists the exponents of t⁻¹ b_i t, i.e. column i of A⁻¹.
    let n = vec![vec![a[1][1], -a[1][0]], vec![-a[0][1], a[0][0]]];
    ConjugationData::new(1, 2, vec![n])
}

/// Genus-`g` surface group on `g1 … g(2g)` with one product-of-commutators relator.
pub fn surface_presentation(g: usize) -> Result<Presentation> {
    if g < 1 {
        return Err(Error::InvalidParameter("surface genus must be at least 1".into()));
    }
    let mut relator = Word::identity();
    for j in 0..g {
        relator = relator.concat(&Word::commutator(
            &Word::generator(2 * j),
            &Word::generator(2 * j + 1),
        ));
    }
    Presentation::new(names("g", 2 * g), vec![relator])
}

/// A cocycle on the genus-`g` surface group whose representation is
/// indecomposable, or `None` when the character has none.
///
/// Searches the `Z¹` basis from the generic solver. At most one basis vector
/// can lie on the coboundary line, so this finds a witness whenever `h1_dim > 0`.
pub fn surface_solve(g: usize, y: &[Scalar]) -> Result<Option<Cocycle>> {
    let p = surface_presentation(g)?;
    if y.len() != 2 * g {
        return Err(Error::DimensionMismatch {
            expected: 2 * g,
            found: y.len(),
        });
    }
    let mode = y[0].mode();
    let rho = Character::new(y.to_vec(), mode)?;
    for mu in cocycle_space(&p, &rho)? {
        let cert = build_representation(&p, &rho, &mu)?;
        if is_decomposable(&cert).is_none() {
            return Ok(Some(mu));
        }
    }
    Ok(None)
}

/// Free group on `x1 … xm`.
pub fn free_group(m: usize) -> Presentation {
    Presentation::new(names("x", m), Vec::new()).expect("valid generator names")
}

/// `ℤⁿ` on `x1 … xn` with every commutator `[xi, xj]`, `i < j`.
pub fn free_abelian(n: usize) -> Presentation {
    let mut relators = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            relators.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
        }
    }
    Presentation::new(names("x", n), relators).expect("valid generator names")
}

/// `⟨x, y, z | [x,y]z⁻¹, [x,z], [y,z]⟩`.
pub fn heisenberg() -> Presentation {
    let (x, y, z) = (Word::generator(0), Word::generator(1), Word::generator(2));
    Presentation::new(
        vec!["x".into(), "y".into(), "z".into()],
        vec![
            Word::commutator(&x, &y).concat(&z.inverse()),
            Word::commutator(&x, &z),
            Word::commutator(&y, &z),
        ],
    )
    .expect("valid generator names")
}

/// `x, y` outer, `z` central spanning the commutator subgroup.
pub fn heisenberg_conjugation() -> ConjugationData {
    ConjugationData::new(2, 1, vec![vec![vec![1]], vec![vec![1]]]).expect("consistent sizes")
}

/// The nilpotent and free control groups under fixed names.
pub fn control_groups() -> Vec<(String, Presentation)> {
    let mut out = vec![("heisenberg".to_string(), heisenberg())];
    for n in 1..=4 {
        out.push((format!("abelian-{n}"), free_abelian(n)));
    }
    for m in 1..=3 {
        out.push((format!("free-{m}"), free_group(m)));
    }
    out
}

/// Default character used when a family is written to disk: the larger
/// eigenvalue for hyperbolic mapping tori, otherwise 2 on the first
/// generator that admits it.
pub fn default_character(p: &Presentation, a: Option<Sl2>) -> Result<Character> {
    if let Some(a) = a {
        let eig = mapping_torus_eigenvalues(a)?;
        let y = eig
            .into_iter()
            .rev()
            .find(|y| !y.is_one())
            .unwrap_or_else(|| Scalar::from_integer(2, Mode::Rational));
        return mapping_torus_character(&y);
    }
    let n = p.num_generators();
    for j in 0..n {
        let mut values = vec![Scalar::one(Mode::Rational); n];
        values[j] = Scalar::from_integer(2, Mode::Rational);
        let rho = Character::new(values, Mode::Rational)?;
        if rho.is_admissible(p) {
            return Ok(rho);
        }
    }
    Ok(Character::trivial(n, Mode::Rational))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{evaluate_cocycle, twisted_h1_dimension};
    use num_rational::BigRational;

    fn golden() -> Scalar {
        Scalar::quadratic(BigRational::new(3.into(), 2.into()), BigRational::new(1.into(), 2.into()), 5)
            .unwrap()
    }

    fn text(p: &Presentation) -> Vec<String> {
        p.relators().iter().map(|r| r.display(p.generators()).to_string()).collect()
    }

    #[test]
    fn mapping_torus_relators() {
        let p = mapping_torus_presentation([[2, 1], [1, 1]]).unwrap();
        let q = crate::parse::parse_presentation(
            "gens: u v t\nrel: [u,v]\nrel: t u t^-1 v^-1 u^-2\nrel: t v t^-1 v^-1 u^-1",
        )
        .unwrap();
        assert_eq!(p, q);
        let id = mapping_torus_presentation([[1, 0], [0, 1]]).unwrap();
        let q = crate::parse::parse_presentation("gens: u v t\nrel: [u,v]\nrel: [t,u]\nrel: [t,v]").unwrap();
        assert_eq!(id, q);
        let unip = mapping_torus_presentation([[1, 1], [0, 1]]).unwrap();
        assert_eq!(text(&unip)[1], text(&q)[1]);
        assert!(mapping_torus_presentation([[2, 0], [0, 1]]).is_err());
    }

    #[test]
    fn trace_test() {
        let a = [[2, 1], [1, 1]];
        assert!(mapping_torus_h1_nonzero(a, &golden()).unwrap());
        assert!(!mapping_torus_h1_nonzero(a, &Scalar::ratio(2, 1)).unwrap());
        assert!(!mapping_torus_h1_nonzero([[1, 1], [0, 1]], &Scalar::ratio(2, 1)).unwrap());
        assert!(mapping_torus_character(&Scalar::ratio(1, 1)).unwrap().is_trivial());
    }

    #[test]
    fn golden_cocycle() {
        let a = [[2, 1], [1, 1]];
        let mu = mapping_torus_cocycle(a, &golden()).unwrap();
        let half = BigRational::new((-1).into(), 2.into());
        let expect = Scalar::quadratic(half.clone(), half, 5).unwrap();
        assert!(mu.values()[0].is_one());
        assert_eq!(mu.values()[1], expect);
        assert!(mu.values()[2].is_zero());
        let p = mapping_torus_presentation(a).unwrap();
        for r in p.relators() {
            assert!(evaluate_cocycle(&mu, r).is_zero());
        }
        assert!(mapping_torus_cocycle(a, &Scalar::ratio(2, 1)).is_err());
        assert!(mapping_torus_cocycle([[1, 1], [0, 1]], &Scalar::ratio(1, 1)).is_err());
    }

    #[test]
    fn eigenvalues_of_example() {
        let e = mapping_torus_eigenvalues([[2, 1], [1, 1]]).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[1], golden());
        assert!(mapping_torus_eigenvalues([[0, -1], [1, 0]]).unwrap().is_empty());
    }

    #[test]
    fn surface_shapes() {
        let p = surface_presentation(2).unwrap();
        assert_eq!(p.num_generators(), 4);
        assert_eq!(p.relators()[0].length(), 8);
        assert_eq!(surface_presentation(5).unwrap().relators()[0].length(), 20);
        assert!(surface_presentation(0).is_err());
    }

    #[test]
    fn surface_witnesses() {
        let y: Vec<Scalar> = [2, 1, 1, 1].iter().map(|&v| Scalar::ratio(v, 1)).collect();
        let mu = surface_solve(2, &y).unwrap().unwrap();
        let want: Vec<Scalar> = [0, 0, 1, 0].iter().map(|&v| Scalar::ratio(v, 1)).collect();
        assert_eq!(mu.values(), want.as_slice());
        let ones = vec![Scalar::ratio(1, 1); 4];
        assert!(!surface_solve(2, &ones).unwrap().unwrap().is_zero());
        let torus = [Scalar::ratio(2, 1), Scalar::ratio(1, 1)];
        assert!(surface_solve(1, &torus).unwrap().is_none());
        assert!(surface_solve(2, &torus).is_err());
    }

    #[test]
    fn control_group_shapes() {
        assert_eq!(free_group(2).relators().len(), 0);
        assert_eq!(free_abelian(3).relators().len(), 3);
        let h = heisenberg();
        assert_eq!(text(&h), vec!["x y x^-1 y^-1 z^-1", "x z x^-1 z^-1", "y z y^-1 z^-1"]);
    }

    #[test]
    fn defaults_are_admissible() {
        for (_, p) in control_groups() {
            assert!(default_character(&p, None).unwrap().is_admissible(&p));
        }
        let a = [[2, 1], [1, 1]];
        let p = mapping_torus_presentation(a).unwrap();
        let rho = default_character(&p, Some(a)).unwrap();
        assert_eq!(twisted_h1_dimension(&p, &rho).unwrap().h1_dim, 1);
    }
}
