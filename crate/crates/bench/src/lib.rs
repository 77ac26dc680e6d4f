//! Fixtures shared by the solver benchmarks.

use twisted_core::families::{mapping_torus_character, mapping_torus_eigenvalues, mapping_torus_presentation};
use twisted_core::{Character, Mode, Presentation, Scalar};

/// The hyperbolic mapping torus of `[[2,1],[1,1]]` at its larger eigenvalue.
pub fn golden_mapping_torus() -> (Presentation, Character) {
    let a = [[2, 1], [1, 1]];
    let y = mapping_torus_eigenvalues(a).unwrap().pop().unwrap();
    (mapping_torus_presentation(a).unwrap(), mapping_torus_character(&y).unwrap())
}

/// A non-trivial rational character on the genus-`g` surface group.
pub fn surface_character(g: usize) -> Character {
    let values = (0..2 * g).map(|i| Scalar::ratio(i as i64 + 2, i as i64 % 3 + 1)).collect();
    Character::new(values, Mode::Rational).unwrap()
}

/// Companion matrix of `sᵏ − s − 1`, whose largest real root is irrational.
pub fn companion(k: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; k]; k];
    for i in 1..k {
        m[i][i - 1] = 1;
    }
    m[0][k - 1] = 1;
    m[1][k - 1] = 1;
    m
}
