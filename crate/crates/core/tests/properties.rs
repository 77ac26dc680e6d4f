mod common;

use common::{letters, names, positive_rationals, rational_character};
use proptest::prelude::*;
use twisted_core::certificate::Mat2;
use twisted_core::cocycle::evaluate_cocycle;
use twisted_core::families::surface_presentation;
use twisted_core::{
    build_representation, cocycle_space, is_decomposable, Cocycle, Matrix, Mode, Presentation, Scalar, Word,
};

fn free(n: usize) -> Presentation {
    Presentation::new(names(n), Vec::new()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cocycle_law(
        y in positive_rationals(3),
        mu in prop::collection::vec(-20i64..=20, 3),
        w1 in letters(3, 12),
        w2 in letters(3, 12),
    ) {
        let rho = rational_character(&y);
        let mu = Cocycle::new(mu.iter().map(|&m| Scalar::ratio(m, 3)).collect(), rho.clone()).unwrap();
        let (w1, w2) = (Word::from_pairs(w1), Word::from_pairs(w2));
        let lhs = evaluate_cocycle(&mu, &w1.concat(&w2));
        let rhs = &evaluate_cocycle(&mu, &w2) + &(&rho.evaluate(&w2) * &evaluate_cocycle(&mu, &w1));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn free_reduction_invariance(
        y in positive_rationals(3),
        mu in prop::collection::vec(-9i64..=9, 3),
        w in letters(3, 10),
        at in 0usize..=10,
        g in 0usize..3,
    ) {
        let rho = rational_character(&y);
        let mu = Cocycle::new(mu.iter().map(|&m| Scalar::ratio(m, 1)).collect(), rho.clone()).unwrap();
        // Insert g g⁻¹ by concatenating reduced pieces around it.
        let at = at.min(w.len());
        let (head, tail) = w.split_at(at);
        let plain = Word::from_pairs(w.iter().copied());
        let mut padded: Vec<(usize, i64)> = head.to_vec();
        padded.extend([(g, 1), (g, -1)]);
        padded.extend_from_slice(tail);
        let padded = Word::from_pairs(padded);
        prop_assert_eq!(&padded, &plain);
        prop_assert_eq!(rho.evaluate(&padded), rho.evaluate(&plain));
        prop_assert_eq!(evaluate_cocycle(&mu, &padded), evaluate_cocycle(&mu, &plain));
        prop_assert!(evaluate_cocycle(&mu, &plain.concat(&plain.inverse())).is_zero());
    }

    #[test]
    fn coboundaries_are_cocycles(y in positive_rationals(4), c in -9i64..=9) {
        let p = surface_presentation(2).unwrap();
        let rho = rational_character(&y);
        let b = Cocycle::coboundary(rho.clone(), &Scalar::ratio(c, 1)).unwrap();
        for r in p.relators() {
            prop_assert!(evaluate_cocycle(&b, r).is_zero());
        }
        // B¹ lies in the span of the Z¹ basis.
        let basis = cocycle_space(&p, &rho).unwrap();
        let mut rows: Vec<Vec<Scalar>> = basis.iter().map(|m| m.values().to_vec()).collect();
        let before = common::gauss_jordan_rank(rows.clone(), 4);
        rows.push(b.values().to_vec());
        prop_assert_eq!(common::gauss_jordan_rank(rows, 4), before);
    }

    #[test]
    fn certificate_determinant_and_homomorphism(
        y in positive_rationals(2),
        mu in prop::collection::vec(-9i64..=9, 2),
        w1 in letters(2, 8),
        w2 in letters(2, 8),
    ) {
        let p = free(2);
        let rho = rational_character(&y);
        let mu = Cocycle::new(mu.iter().map(|&m| Scalar::ratio(m, 2)).collect(), rho.clone()).unwrap();
        let cert = build_representation(&p, &rho, &mu).unwrap();
        let (w1, w2) = (Word::from_pairs(w1), Word::from_pairs(w2));
        let m1 = cert.matrix_of(&w1).unwrap();
        let m2 = cert.matrix_of(&w2).unwrap();
        let m12 = cert.matrix_of(&w1.concat(&w2)).unwrap();
        prop_assert_eq!(&m12, &m1.mul(&m2).unwrap());
        prop_assert_eq!(m1.det().unwrap(), rho.evaluate(&w1));
        prop_assert_eq!(&m1.entries[0][1], &evaluate_cocycle(&mu, &w1));
    }

    #[test]
    fn decomposable_iff_coboundary(y in positive_rationals(2), c in -6i64..=6, bump in -3i64..=3) {
        let rho = rational_character(&y);
        let p = free(2);
        let b = Cocycle::coboundary(rho.clone(), &Scalar::ratio(c, 1)).unwrap();
        let cert = build_representation(&p, &rho, &b).unwrap();
        if !rho.is_trivial() {
            prop_assert_eq!(is_decomposable(&cert), Some(Scalar::ratio(c, 1)));
        }
        let mut values = b.values().to_vec();
        values[0] = &values[0] + &Scalar::ratio(bump, 1);
        values[1] = &values[1] - &Scalar::ratio(bump, 1);
        let shifted = Cocycle::new(values, rho.clone()).unwrap();
        let cert = build_representation(&p, &rho, &shifted).unwrap();
        let line = twisted_core::cocycle::coboundary_vector(&rho);
        let in_b1 = if rho.is_trivial() {
            shifted.is_zero()
        } else {
            common::gauss_jordan_rank(vec![line, shifted.values().to_vec()], 2) < 2
        };
        prop_assert_eq!(is_decomposable(&cert).is_some(), in_b1);
    }

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-4i64..=4, 36)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|r| seed[r * 6..r * 6 + cols].to_vec()).collect();
        let m = Matrix::from_integers(&data, cols, Mode::Rational).unwrap();
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        let oracle = common::gauss_jordan_rank(
            data.iter().map(|r| r.iter().map(|&x| Scalar::ratio(x, 1)).collect()).collect(),
            cols,
        );
        prop_assert_eq!(m.rank(), oracle);
    }
}

#[test]
fn mat2_inverse() {
    let m = Mat2::affine(Scalar::ratio(3, 2), Scalar::ratio(5, 1));
    assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
    assert!(m.pow(-3).unwrap().mul(&m.pow(3).unwrap()).unwrap().is_identity());
}
