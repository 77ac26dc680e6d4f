//! Numeric tower shared by every other module.
//!
//! A [`Scalar`] lives in exactly one [`Mode`]: exact rationals, exact elements
//! `a + b√d` of a single real quadratic field, or floating values carrying the
//! zero-test tolerance of the computation they belong to. Arithmetic never
//! promotes silently; callers convert with [`Scalar::to_mode`].
//!
//! The operator impls (`&x + &y` and friends) panic on a mode mismatch. They
//! are meant for code that has already established a common mode, such as the
//! elimination routines over a validated [`Matrix`](crate::linalg::Matrix).
//! Everything facing user input goes through the `checked_*` methods.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default zero-test tolerance for approximate computations.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Numeric mode of a scalar, matrix, or character.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Rational,
    /// ℚ(√d) for a square-free `d > 1`.
    Quadratic(u64),
    /// Floating values with the zero test `|x| <= eps`.
    Approx(f64),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Rational => f.write_str("rational"),
            Mode::Quadratic(d) => write!(f, "quadratic({d})"),
            Mode::Approx(eps) => write!(f, "approx({eps:e})"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" {
            return Ok(Mode::Rational);
        }
        let inner = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|rest| rest.strip_suffix(')'))
                .map(str::trim)
        };
        if let Some(d) = inner("quadratic(") {
            let d: u64 = d.parse().map_err(|_| Error::InvalidLiteral(s.to_string()))?;
            let (f, core) = square_decomposition(d);
            if d < 2 || f != 1 || core != d {
                return Err(Error::InvalidParameter(format!("radicand {d} is not square-free")));
            }
            return Ok(Mode::Quadratic(d));
        }
        if let Some(eps) = inner("approx(") {
            let eps: f64 = eps.parse().map_err(|_| Error::InvalidLiteral(s.to_string()))?;
            if !(eps.is_finite() && eps > 0.0) {
                return Err(Error::InvalidParameter(format!("tolerance {eps} must be positive")));
            }
            return Ok(Mode::Approx(eps));
        }
        Err(Error::InvalidLiteral(s.to_string()))
    }
}

/// How literals in an input are to be interpreted.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum Precision {
    /// Rational or quadratic, inferred from the literals; decimals rejected.
    #[default]
    Exact,
    /// Every literal becomes an approximate value with this tolerance.
    Approx(f64),
}

/// An element `a + b√d` of a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticElement {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl QuadraticElement {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        let (f, core) = square_decomposition(d);
        if d < 2 || f != 1 || core != d {
            return Err(Error::InvalidParameter(format!("radicand {d} is not square-free")));
        }
        Ok(QuadraticElement { a, b, d })
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn conjugate(&self) -> Self {
        QuadraticElement {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// `a² − d·b²`, the product with the conjugate.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - self.d_rat() * &self.b * &self.b
    }

    fn d_rat(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.d))
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // Opposite signs: the larger square wins.
        let a2 = &self.a * &self.a;
        let b2d = self.d_rat() * &self.b * &self.b;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        QuadraticElement {
            a: &self.a * &other.a + self.d_rat() * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d,
        }
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadraticElement {
            a: &self.a / &n,
            b: -(&self.b / &n),
            d: self.d,
        })
    }

    fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * (self.d as f64).sqrt()
    }
}

/// A floating value together with the tolerance of its computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxValue {
    pub value: f64,
    pub eps: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic(QuadraticElement),
    Approx(ApproxValue),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Rational(_) => Mode::Rational,
            Scalar::Quadratic(q) => Mode::Quadratic(q.d),
            Scalar::Approx(x) => Mode::Approx(x.eps),
        }
    }

    pub fn zero(mode: Mode) -> Self {
        Scalar::from_integer(0, mode)
    }

    pub fn one(mode: Mode) -> Self {
        Scalar::from_integer(1, mode)
    }

    pub fn from_integer(n: i64, mode: Mode) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)), mode)
    }

    pub fn from_rational(r: BigRational, mode: Mode) -> Self {
        match mode {
            Mode::Rational => Scalar::Rational(r),
            Mode::Quadratic(d) => Scalar::Quadratic(QuadraticElement {
                a: r,
                b: BigRational::zero(),
                d,
            }),
            Mode::Approx(eps) => Scalar::Approx(ApproxValue {
                value: rat_to_f64(&r),
                eps,
            }),
        }
    }

    /// Exact rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        QuadraticElement::new(a, b, d).map(Scalar::Quadratic)
    }

    pub fn approx(value: f64, eps: f64) -> Self {
        Scalar::Approx(ApproxValue { value, eps })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quadratic(q) => q.is_zero(),
            Scalar::Approx(x) => x.value.abs() <= x.eps,
        }
    }

    pub fn is_one(&self) -> bool {
        (self - &Scalar::one(self.mode())).is_zero()
    }

    /// Sign under the mode's zero test.
    pub fn signum(&self) -> Ordering {
        match self {
            Scalar::Rational(r) => r.cmp(&BigRational::zero()),
            Scalar::Quadratic(q) => q.signum(),
            Scalar::Approx(x) if x.value.abs() <= x.eps => Ordering::Equal,
            Scalar::Approx(x) => x.value.partial_cmp(&0.0).unwrap_or(Ordering::Equal),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Magnitude as a float, for pivot selection and diagnostics.
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => rat_to_f64(r),
            Scalar::Quadratic(q) => q.to_f64(),
            Scalar::Approx(x) => x.value,
        }
    }

    /// Returns the rational value if this scalar is exactly rational
    /// (a quadratic element with zero surd part counts).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Quadratic(q) if q.b.is_zero() => Some(q.a.clone()),
            _ => None,
        }
    }

    fn check_mode(&self, other: &Scalar) -> Result<()> {
        if self.mode() == other.mode() {
            Ok(())
        } else {
            Err(Error::ModeMismatch {
                left: self.mode(),
                right: other.mode(),
            })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_mode(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Quadratic(x), Scalar::Quadratic(y)) => Scalar::Quadratic(QuadraticElement {
                a: &x.a + &y.a,
                b: &x.b + &y.b,
                d: x.d,
            }),
            (Scalar::Approx(x), Scalar::Approx(y)) => Scalar::approx(x.value + y.value, x.eps),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_mode(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Quadratic(x), Scalar::Quadratic(y)) => Scalar::Quadratic(x.mul(y)),
            (Scalar::Approx(x), Scalar::Approx(y)) => Scalar::approx(x.value * y.value, x.eps),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_mode(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Quadratic(q) => Scalar::Quadratic(q.inv().ok_or(Error::DivisionByZero)?),
            Scalar::Approx(x) => Scalar::approx(1.0 / x.value, x.eps),
        })
    }

    /// Integer power; negative exponents need a non-zero base.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one(self.mode());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Equality under the mode's zero test. Errors on a mode mismatch.
    pub fn eq_in_mode(&self, other: &Scalar) -> Result<bool> {
        Ok(self.checked_sub(other)?.is_zero())
    }

    /// Explicit conversion between modes.
    ///
    /// Rational values embed in every mode; a quadratic value converts to
    /// `Rational` only when its surd part vanishes; exact values round into
    /// `Approx`. Approximate values never become exact.
    pub fn to_mode(&self, mode: Mode) -> Result<Scalar> {
        let mismatch = || Error::ModeMismatch {
            left: self.mode(),
            right: mode,
        };
        match (self, mode) {
            (s, m) if s.mode() == m => Ok(s.clone()),
            (Scalar::Rational(r), m) => Ok(Scalar::from_rational(r.clone(), m)),
            (Scalar::Quadratic(q), Mode::Rational) if q.b.is_zero() => {
                Ok(Scalar::Rational(q.a.clone()))
            }
            (Scalar::Quadratic(q), Mode::Approx(eps)) => Ok(Scalar::approx(q.to_f64(), eps)),
            (Scalar::Approx(x), Mode::Approx(eps)) => Ok(Scalar::approx(x.value, eps)),
            _ => Err(mismatch()),
        }
    }

    /// Parses one literal under `precision`.
    pub fn parse(text: &str, precision: Precision) -> Result<Scalar> {
        let (_, mut values) = parse_scalars(&[text], precision)?;
        Ok(values.remove(0))
    }

    /// Parses a literal and converts it into `mode`.
    pub fn parse_in_mode(text: &str, mode: Mode) -> Result<Scalar> {
        match (Literal::parse(text)?, mode) {
            (Literal::Decimal(v), Mode::Approx(eps)) => Ok(Scalar::approx(v, eps)),
            (Literal::Decimal(_), _) => Err(Error::MixedLiterals(format!(
                "decimal literal `{text}` in {mode} mode"
            ))),
            (Literal::Exact(s), m) => s.to_mode(m),
        }
    }
}

/// A scalar literal before mode resolution.
#[derive(Clone, Debug, PartialEq)]
enum Literal {
    Exact(Scalar),
    Decimal(f64),
}

impl Literal {
    fn parse(text: &str) -> Result<Literal> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidLiteral(text.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        if let Some(pos) = t.find("sqrt(") {
            let radicand = t[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
            let n: u64 = radicand.parse().map_err(|_| bad())?;
            let prefix = &t[..pos];
            let (core, starred) = match prefix.strip_suffix('*') {
                Some(c) => (c, true),
                None => (prefix, false),
            };
            let split = core
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(i, _)| i)
                .last();
            let (a_str, b_str) = match split {
                Some(i) => (&core[..i], &core[i..]),
                None => ("", core),
            };
            let a = if a_str.is_empty() {
                BigRational::zero()
            } else {
                parse_rational(a_str).ok_or_else(bad)?
            };
            let b = match (b_str, starred) {
                ("" | "+", false) => BigRational::one(),
                ("-", false) => -BigRational::one(),
                (s, true) => parse_rational(s.strip_prefix('+').unwrap_or(s)).ok_or_else(bad)?,
                _ => return Err(bad()),
            };
            if n == 0 {
                return Ok(Literal::Exact(Scalar::Rational(a)));
            }
            let (f, d) = square_decomposition(n);
            let b = b * BigRational::from_integer(BigInt::from(f));
            if d == 1 {
                return Ok(Literal::Exact(Scalar::Rational(a + b)));
            }
            return Ok(Literal::Exact(Scalar::Quadratic(QuadraticElement { a, b, d })));
        }
        if let Some(r) = parse_rational(&t) {
            return Ok(Literal::Exact(Scalar::Rational(r)));
        }
        let looks_decimal = t
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'));
        match t.parse::<f64>() {
            Ok(v) if looks_decimal && v.is_finite() => Ok(Literal::Decimal(v)),
            _ => Err(bad()),
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let int = |s: &str| -> Option<BigInt> {
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.strip_prefix('+').unwrap_or(s).parse().ok()
    };
    match s.split_once('/') {
        None => int(s).map(BigRational::from_integer),
        Some((n, d)) => {
            let n = int(n)?;
            let d = int(d)?;
            if d.is_zero() || d.is_negative() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
    }
}

/// Parses several literals and resolves them to one common mode.
///
/// Under [`Precision::Exact`] the result is `Rational` unless some literal
/// carries a radical, in which case every value is embedded in that single
/// quadratic field. Decimals and differing radicands are rejected.
pub fn parse_scalars(texts: &[&str], precision: Precision) -> Result<(Mode, Vec<Scalar>)> {
    let literals = texts
        .iter()
        .map(|t| Literal::parse(t))
        .collect::<Result<Vec<_>>>()?;
    match precision {
        Precision::Approx(eps) => {
            let mode = Mode::Approx(eps);
            let values = literals
                .into_iter()
                .map(|l| match l {
                    Literal::Decimal(v) => Ok(Scalar::approx(v, eps)),
                    Literal::Exact(s) => s.to_mode(mode),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((mode, values))
        }
        Precision::Exact => {
            let mut mode = Mode::Rational;
            for (lit, text) in literals.iter().zip(texts) {
                match lit {
                    Literal::Decimal(_) => {
                        return Err(Error::MixedLiterals(format!(
                            "decimal literal `{text}` requires approximate mode"
                        )))
                    }
                    Literal::Exact(Scalar::Quadratic(q)) => match mode {
                        Mode::Quadratic(d) if d != q.d => {
                            return Err(Error::MixedLiterals(format!(
                                "radicals sqrt({d}) and sqrt({}) in one computation",
                                q.d
                            )))
                        }
                        _ => mode = Mode::Quadratic(q.d),
                    },
                    Literal::Exact(_) => {}
                }
            }
            let values = literals
                .into_iter()
                .map(|l| match l {
                    Literal::Exact(s) => s.to_mode(mode),
                    Literal::Decimal(_) => unreachable!(),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((mode, values))
        }
    }
}

/// Writes `n = f²·d` with `d` square-free; returns `(f, d)`. `n = 0` maps to `(0, 1)`.
pub fn square_decomposition(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let (mut f, mut d, mut rest) = (1u64, 1u64, n);
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    (f, d * rest)
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for magnitudes outside the direct conversion path.
        let (n, d) = (r.numer(), r.denom());
        let shift = n.bits().max(d.bits()).saturating_sub(900) as u32;
        let scale = BigInt::one() << shift;
        let (n, d) = (n / &scale, d / &scale);
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical printing: `p/q`, `a+b*sqrt(d)` (or `a-b*sqrt(d)`), and the
/// shortest round-trip decimal for approximate values.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => fmt_rational(r, f),
            Scalar::Quadratic(q) => {
                fmt_rational(&q.a, f)?;
                if q.b.is_negative() {
                    f.write_str("-")?;
                    fmt_rational(&-&q.b, f)?;
                } else {
                    f.write_str("+")?;
                    fmt_rational(&q.b, f)?;
                }
                write!(f, "*sqrt({})", q.d)
            }
            Scalar::Approx(x) => write!(f, "{}", x.value),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quadratic(q) => Scalar::Quadratic(QuadraticElement {
                a: -&q.a,
                b: -&q.b,
                d: q.d,
            }),
            Scalar::Approx(x) => Scalar::approx(-x.value, x.eps),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar {}: {e}", stringify!($method)),
                }
            }
        }

        impl $tr<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);
