#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use twisted_core::{Character, Mode, Presentation, Scalar, Word};

pub type Sl2 = [[i64; 2]; 2];

pub fn mul2(a: &Sl2, b: &Sl2) -> Sl2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// Product of up to `max_len` factors from `[[1,±1],[0,1]]`, `[[1,0],[±1,1]]`.
pub fn random_sl2<R: Rng>(rng: &mut R, max_len: usize) -> Sl2 {
    let gens: [Sl2; 4] = [[[1, 1], [0, 1]], [[1, -1], [0, 1]], [[1, 0], [1, 1]], [[1, 0], [-1, 1]]];
    let len = rng.gen_range(1..=max_len);
    (0..len).fold([[1, 0], [0, 1]], |acc, _| mul2(&acc, &gens[rng.gen_range(0..4)]))
}

pub fn random_word<R: Rng>(rng: &mut R, gens: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_pairs((0..len).map(|_| (rng.gen_range(0..gens), if rng.gen_bool(0.5) { 1 } else { -1 })))
}

pub fn random_positive_rational<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::ratio(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{i}")).collect()
}

pub fn random_presentation<R: Rng>(rng: &mut R) -> Presentation {
    let gens = rng.gen_range(1..=4);
    let rels = rng.gen_range(0..=4);
    let relators = (0..rels).map(|_| random_word(rng, gens, 12)).collect();
    Presentation::new(names(gens), relators).unwrap()
}

pub fn rational_character(values: &[(i64, i64)]) -> Character {
    Character::new(values.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect(), Mode::Rational).unwrap()
}

/// `(generator, ±1)` letters; reduction is left to `Word`.
pub fn letters(gens: usize, max_len: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..gens, prop_oneof![Just(1i64), Just(-1i64)]), 0..=max_len)
}

pub fn positive_rationals(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((1i64..=12, 1i64..=12), n)
}

/// Independent h1 oracle: constraint rows from explicit 2×2 products with
/// unit cocycle vectors, then plain Gauss–Jordan.
pub fn brute_force_h1(p: &Presentation, rho: &Character) -> usize {
    let n = p.num_generators();
    let mode = rho.mode();
    let zero = Scalar::zero(mode);
    let one = Scalar::one(mode);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in p.relators() {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            // Top-right entry of the product with μ = e_j.
            let mut top = zero.clone();
            let mut diag = one.clone();
            for (g, e) in r.letters() {
                let y = rho.value(g).clone();
                let mu = if g == j { one.clone() } else { zero.clone() };
                let (m_top, m_diag) = if e > 0 {
                    (mu, y)
                } else {
                    let inv = y.recip().unwrap();
                    (&(-&mu) * &inv, inv)
                };
                // [[1, top], [0, diag]] · [[1, m_top], [0, m_diag]]
                top = &(&top * &m_diag) + &m_top;
                diag = &diag * &m_diag;
            }
            row.push(top);
        }
        rows.push(row);
    }
    let rank = gauss_jordan_rank(rows, n);
    let z1 = n - rank;
    let b1 = usize::from(!rho.is_trivial() && n > 0);
    z1 - b1
}

pub fn gauss_jordan_rank(mut rows: Vec<Vec<Scalar>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for x in rows[rank].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pr = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rank += 1;
    }
    rank
}
