//! Positive real eigenvalues of small integer matrices.
//!
//! 2×2 inputs are solved in closed form and come back exact (rational or in
//! ℚ(√d)). Larger inputs go through the Faddeev–LeVerrier characteristic
//! polynomial, its square-free part, a Sturm chain over ℚ, and rational
//! bisection; those roots are returned as approximate scalars.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat_to_f64, square_decomposition, Mode, Scalar};

/// Largest matrix accepted by [`positive_real_eigenvalues`].
pub const MAX_EIGEN_SIZE: usize = 8;

/// Dense polynomial over ℚ, coefficients from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Polynomial::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.coeffs.last().expect("non-zero polynomial")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / divisor.lead();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn square_free(&self) -> Polynomial {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }
}

/// Characteristic polynomial `det(sI − N)` by Faddeev–LeVerrier, exact over ℤ.
pub fn characteristic_polynomial(n: &[Vec<i64>]) -> Result<Vec<BigInt>> {
    let k = check_square(n)?;
    let a: Vec<Vec<BigInt>> = n
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); k + 1];
    coeffs[k] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); k]; k];
    for step in 1..=k {
        // M_step = A·M_{step−1} + c_{k−step+1}·I
        let mut next = vec![vec![BigInt::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = BigInt::zero();
                for l in 0..k {
                    acc += &a[i][l] * &m[l][j];
                }
                next[i][j] = acc;
            }
            next[i][i] += &coeffs[k - step + 1];
        }
        m = next;
        let mut trace = BigInt::zero();
        for i in 0..k {
            for l in 0..k {
                trace += &a[i][l] * &m[l][i];
            }
        }
        let (q, r) = (-trace).div_rem(&BigInt::from(step));
        debug_assert!(r.is_zero());
        coeffs[k - step] = q;
    }
    Ok(coeffs)
}

fn check_square(n: &[Vec<i64>]) -> Result<usize> {
    let k = n.len();
    if let Some(bad) = n.iter().find(|r| r.len() != k) {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: bad.len(),
        });
    }
    Ok(k)
}

/// Sturm chain `p, p', −rem(p, p'), …` of a square-free polynomial.
pub fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(Polynomial::new(r.coeffs.into_iter().map(|c| -c).collect()));
    }
    chain.pop();
    chain
}

/// Positive multiple of a polynomial with integer coefficients; same signs.
fn integer_form(p: &Polynomial) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// Sign of `p(n/d)` for `d > 0`, from `Σ cᵢ nⁱ d^{deg−i}`.
fn sign_at(c: &[BigInt], n: &BigInt, d: &BigInt) -> Ordering {
    let mut iter = c.iter().rev();
    let Some(first) = iter.next() else {
        return Ordering::Equal;
    };
    let mut acc = first.clone();
    let mut dpow = BigInt::one();
    for ci in iter {
        dpow *= d;
        acc = acc * n + ci * &dpow;
    }
    acc.cmp(&BigInt::zero())
}

fn sign_at_rational(c: &[BigInt], x: &BigRational) -> Ordering {
    sign_at(c, x.numer(), x.denom())
}

fn sign_changes(chain: &[Vec<BigInt>], x: &BigRational) -> usize {
    let signs: Vec<Ordering> = chain
        .iter()
        .map(|p| sign_at_rational(p, x))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct roots in `(lo, hi)`; neither endpoint may be a root.
fn count_roots(chain: &[Vec<BigInt>], lo: &BigRational, hi: &BigRational) -> usize {
    sign_changes(chain, lo) - sign_changes(chain, hi)
}

/// Isolates and refines the strictly positive real roots of `p`.
///
/// Each root is bisected until its bracket no longer separates two `f64`
/// values (and is at most `eps` wide), so the returned floats are accurate to
/// the last bit rather than merely to the tolerance.
pub fn positive_real_roots(p: &Polynomial, eps: f64) -> Vec<f64> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut q = p.square_free();
    // Remove the root at zero.
    while q.coeffs.first().is_some_and(Zero::is_zero) {
        q = Polynomial::new(q.coeffs[1..].to_vec());
    }
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let chain: Vec<Vec<BigInt>> = sturm_chain(&q).iter().map(integer_form).collect();
    let qi = integer_form(&q);
    // Cauchy bound: every root satisfies |x| < 1 + max |c_i / c_n|.
    let lead = q.lead().abs();
    let bound = BigRational::one()
        + q.coeffs[..q.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
    let eps_rat = BigRational::from_float(eps).unwrap_or_else(|| BigRational::new(1.into(), 1_000_000_000.into()));

    let mut roots = Vec::new();
    let mut stack = vec![(BigRational::zero(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        match count_roots(&chain, &lo, &hi) {
            0 => {}
            1 => roots.push(refine(&qi, &lo, &hi, &eps_rat)),
            _ => {
                let mid = split_point(&qi, &lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup();
    roots
}

/// A point of `(lo, hi)` that is not a root, preferring the midpoint, so
/// bracket endpoints never coincide with roots.
fn split_point(q: &[BigInt], lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    for den in 2i64.. {
        for num in 1..den {
            let x = lo + &width * BigRational::new(num.into(), den.into());
            if sign_at_rational(q, &x) != Ordering::Equal {
                return x;
            }
        }
    }
    unreachable!()
}

/// Bisects a bracket `(lo, hi)` holding exactly one simple root.
///
/// Both ends are kept over one power-of-two multiple of a common
/// denominator, so each step is a few integer shifts and one sign evaluation.
fn refine(q: &[BigInt], lo: &BigRational, hi: &BigRational, eps: &BigRational) -> f64 {
    let mut den = lo.denom() * hi.denom();
    let mut a = lo.numer() * hi.denom();
    let mut b = hi.numer() * lo.denom();
    let lo_sign = sign_at(q, &a, &den);
    let to_f64 = |n: &BigInt, d: &BigInt| rat_to_f64(&BigRational::new(n.clone(), d.clone()));
    for _ in 0..400 {
        if BigRational::new(&b - &a, den.clone()) <= *eps && to_f64(&a, &den) == to_f64(&b, &den) {
            break;
        }
        a <<= 1;
        b <<= 1;
        den <<= 1;
        let mid: BigInt = (&a + &b) >> 1;
        match sign_at(q, &mid, &den) {
            Ordering::Equal => return to_f64(&mid, &den),
            s if s == lo_sign => a = mid,
            _ => b = mid,
        }
    }
    to_f64(&(&a + &b), &(den << 1))
}

/// Strictly positive real eigenvalues of a square integer matrix, ascending
/// and without repetition.
///
/// * `k = 1`: the entry itself, exact rational.
/// * `k = 2`: exact; rational when the discriminant is a perfect square,
///   otherwise in `Quadratic(d)` with `d` the square-free part of
///   `tr² − 4·det`; complex pairs give an empty list.
/// * `2 < k ≤ 8`: approximate values with tolerance `eps`.
pub fn positive_real_eigenvalues(n: &[Vec<i64>], eps: f64) -> Result<Vec<Scalar>> {
    let k = check_square(n)?;
    if k > MAX_EIGEN_SIZE {
        return Err(Error::SizeExceeded {
            size: k,
            cap: MAX_EIGEN_SIZE,
        });
    }
    match k {
        0 => Ok(Vec::new()),
        1 => {
            let v = n[0][0];
            Ok(if v > 0 { vec![Scalar::from_integer(v, Mode::Rational)] } else { Vec::new() })
        }
        2 => Ok(two_by_two(n)),
        _ => {
            let cp = characteristic_polynomial(n)?;
            let roots = positive_real_roots(&Polynomial::from_integers(&cp), eps);
            Ok(roots.into_iter().map(|r| Scalar::approx(r, eps)).collect())
        }
    }
}

fn two_by_two(n: &[Vec<i64>]) -> Vec<Scalar> {
    let tr = BigInt::from(n[0][0]) + BigInt::from(n[1][1]);
    let det = BigInt::from(n[0][0]) * BigInt::from(n[1][1]) - BigInt::from(n[0][1]) * BigInt::from(n[1][0]);
    let disc: BigInt = &tr * &tr - BigInt::from(4) * &det;
    if disc.is_negative() {
        return Vec::new();
    }
    let half = |x: BigInt| BigRational::new(x, BigInt::from(2));
    let root = disc.sqrt();
    let mut out: Vec<Scalar> = if &root * &root == disc {
        let mut v = vec![half(&tr - &root), half(&tr + &root)];
        v.dedup();
        v.into_iter().map(Scalar::Rational).collect()
    } else {
        // disc fits in u64 for i64 entries only up to ~2^31; fall back to a
        // bigint square-part split otherwise.
        let (f, d) = big_square_decomposition(&disc);
        let a = half(tr.clone());
        let b = half(f);
        [-b.clone(), b]
            .into_iter()
            .map(|b| Scalar::quadratic(a.clone(), b, d).expect("square-free radicand"))
            .collect()
    };
    out.retain(Scalar::is_positive);
    out
}

fn big_square_decomposition(n: &BigInt) -> (BigInt, u64) {
    match u64::try_from(n) {
        Ok(small) => {
            let (f, d) = square_decomposition(small);
            (BigInt::from(f), d)
        }
        // Entries near the i64 limits are far outside enumeration scale.
        Err(_) => panic!("discriminant {n} too large for a quadratic field"),
    }
}
