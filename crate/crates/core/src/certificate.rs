//! Explicit 2×2 representation certificates.
//!
//! A certificate assigns `ξ(a_j) = [[1, μ(a_j)], [0, ρ(a_j)]]` to every
//! generator. It is checked by multiplying these matrices along each relator
//! with the small matrix type below, never through the solver's elimination code.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::cocycle::{evaluate_cocycle, Cocycle};
use crate::error::{Error, Result};
use crate::parse::{parse_presentation, parse_word};
use crate::scalar::{Mode, Scalar};
use crate::word::{Presentation, Word};

/// A 2×2 matrix over the scalar tower.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2 {
    pub entries: [[Scalar; 2]; 2],
}

impl Mat2 {
    pub fn identity(mode: Mode) -> Self {
        let (o, z) = (Scalar::one(mode), Scalar::zero(mode));
        Mat2 {
            entries: [[o.clone(), z.clone()], [z, o]],
        }
    }

    /// `[[1, mu], [0, y]]`.
    pub fn affine(mu: Scalar, y: Scalar) -> Self {
        let mode = y.mode();
        Mat2 {
            entries: [[Scalar::one(mode), mu], [Scalar::zero(mode), y]],
        }
    }

    pub fn mul(&self, other: &Mat2) -> Result<Mat2> {
        let (a, b) = (&self.entries, &other.entries);
        let cell = |i: usize, j: usize| -> Result<Scalar> {
            a[i][0].checked_mul(&b[0][j])?.checked_add(&a[i][1].checked_mul(&b[1][j])?)
        };
        Ok(Mat2 {
            entries: [[cell(0, 0)?, cell(0, 1)?], [cell(1, 0)?, cell(1, 1)?]],
        })
    }

    pub fn det(&self) -> Result<Scalar> {
        let e = &self.entries;
        e[0][0].checked_mul(&e[1][1])?.checked_sub(&e[0][1].checked_mul(&e[1][0])?)
    }

    /// Inverse by the adjugate formula.
    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det()?;
        let inv = det.recip()?;
        let e = &self.entries;
        Ok(Mat2 {
            entries: [
                [e[1][1].checked_mul(&inv)?, (-&e[0][1]).checked_mul(&inv)?],
                [(-&e[1][0]).checked_mul(&inv)?, e[0][0].checked_mul(&inv)?],
            ],
        })
    }

    pub fn pow(&self, exp: i64) -> Result<Mat2> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Mat2::identity(self.entries[0][0].mode());
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        let e = &self.entries;
        e[0][0].is_one() && e[1][1].is_one() && e[0][1].is_zero() && e[1][0].is_zero()
    }
}

/// Outcome of the independent verification pass.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationStatus {
    /// Every generator matrix has the shape `[[1, *], [0, *]]`.
    pub fixes_first_basis_vector: bool,
    /// The bottom-right entry, i.e. the determinant, matches the character.
    pub determinant_matches: bool,
    /// The top-right entry matches the recorded cocycle value.
    pub cocycle_matches: bool,
    /// Every relator multiplies out to the identity.
    pub relators_hold: bool,
    /// Index of the first failing relator, if any.
    pub failing_relator: Option<usize>,
}

impl VerificationStatus {
    pub fn verified(&self) -> bool {
        self.fixes_first_basis_vector && self.determinant_matches && self.cocycle_matches && self.relators_hold
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepCertificate {
    generators: Vec<String>,
    matrices: Vec<Mat2>,
    character: Character,
    cocycle: Cocycle,
    status: Option<VerificationStatus>,
}

impl RepCertificate {
    /// Assembles a certificate without any checks; [`verify_homomorphism`]
    /// decides whether it is valid.
    pub fn from_parts(generators: Vec<String>, matrices: Vec<Mat2>, cocycle: Cocycle) -> Result<Self> {
        if matrices.len() != generators.len() || cocycle.values().len() != generators.len() {
            return Err(Error::DimensionMismatch {
                expected: generators.len(),
                found: matrices.len(),
            });
        }
        Ok(RepCertificate {
            generators,
            character: cocycle.character().clone(),
            matrices,
            cocycle,
            status: None,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn matrices(&self) -> &[Mat2] {
        &self.matrices
    }

    pub fn matrices_mut(&mut self) -> &mut [Mat2] {
        self.status = None;
        &mut self.matrices
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn mode(&self) -> Mode {
        self.character.mode()
    }

    /// Result of the last verification pass, if one ran since the matrices changed.
    pub fn status(&self) -> Option<&VerificationStatus> {
        self.status.as_ref()
    }

    pub fn is_verified(&self) -> bool {
        self.status.as_ref().is_some_and(VerificationStatus::verified)
    }

    /// `ξ(w)`: the product of generator matrices along `w`.
    pub fn matrix_of(&self, w: &Word) -> Result<Mat2> {
        let mut acc = Mat2::identity(self.mode());
        for s in w.syllables() {
            let m = self
                .matrices
                .get(s.generator)
                .ok_or(Error::DimensionMismatch {
                    expected: self.matrices.len(),
                    found: s.generator + 1,
                })?;
            acc = acc.mul(&m.pow(s.exponent)?)?;
        }
        Ok(acc)
    }
}

/// Builds `ξ` from a cocycle in `Z¹` and runs the verification pass.
pub fn build_representation(p: &Presentation, rho: &Character, mu: &Cocycle) -> Result<RepCertificate> {
    rho.check_admissible(p)?;
    if mu.character() != rho {
        return Err(Error::Precondition("cocycle belongs to a different character".into()));
    }
    for (relator, r) in p.relators().iter().enumerate() {
        let v = evaluate_cocycle(mu, r);
        if !v.is_zero() {
            return Err(Error::NotACocycle {
                relator,
                value: v.to_string(),
            });
        }
    }
    let matrices = mu
        .values()
        .iter()
        .zip(rho.values())
        .map(|(m, y)| Mat2::affine(m.clone(), y.clone()))
        .collect();
    let mut cert = RepCertificate::from_parts(p.generators().to_vec(), matrices, mu.clone())?;
    verify_homomorphism(&mut cert, p);
    Ok(cert)
}

/// Re-checks the certificate from scratch against `p` and records the outcome.
///
/// Checks each generator matrix for the fixed-vector shape, the determinant
/// against the character, the top-right entry against the cocycle, and that
/// every relator multiplies out to the identity.
pub fn verify_homomorphism(cert: &mut RepCertificate, p: &Presentation) -> bool {
    let status = check(cert, p);
    let ok = status.verified();
    cert.status = Some(status);
    ok
}

fn check(cert: &RepCertificate, p: &Presentation) -> VerificationStatus {
    let mut status = VerificationStatus::default();
    if p.generators() != cert.generators.as_slice() {
        return status;
    }
    let mode = cert.mode();
    let same = |a: &Scalar, b: &Scalar| a.eq_in_mode(b).unwrap_or(false);
    let zero = Scalar::zero(mode);
    let one = Scalar::one(mode);
    status.fixes_first_basis_vector = cert
        .matrices
        .iter()
        .all(|m| same(&m.entries[0][0], &one) && same(&m.entries[1][0], &zero));
    status.determinant_matches = cert
        .matrices
        .iter()
        .zip(cert.character.values())
        .all(|(m, y)| m.det().is_ok_and(|d| same(&d, y)));
    status.cocycle_matches = cert
        .matrices
        .iter()
        .zip(cert.cocycle.values())
        .all(|(m, mu)| same(&m.entries[0][1], mu));
    status.relators_hold = true;
    for (i, r) in p.relators().iter().enumerate() {
        let holds = cert.matrix_of(r).is_ok_and(|m| m.is_identity());
        if !holds {
            status.relators_hold = false;
            status.failing_relator = Some(i);
            break;
        }
    }
    status
}

/// Decomposition test.
///
/// Returns `Some(c)` when every generator matrix preserves the line through
/// `(c, 1)`, i.e. `μ(a_j) = c·(ρ(a_j) − 1)` for all `j`; `None` means the
/// representation is indecomposable. For a trivial character the only
/// decomposable case is `μ ≡ 0`, reported as `c = 0`.
pub fn is_decomposable(cert: &RepCertificate) -> Option<Scalar> {
    let mode = cert.mode();
    let one = Scalar::one(mode);
    let entries: Vec<(Scalar, Scalar)> = cert
        .matrices
        .iter()
        .map(|m| (m.entries[0][1].clone(), &m.entries[1][1] - &one))
        .collect();
    // Pick the generator with the largest |ρ − 1| to fix c.
    let c = match entries
        .iter()
        .filter(|(_, dy)| !dy.is_zero())
        .max_by(|a, b| a.1.to_f64().abs().total_cmp(&b.1.to_f64().abs()))
    {
        Some((mu, dy)) => mu / dy,
        None => Scalar::zero(mode),
    };
    entries
        .iter()
        .all(|(mu, dy)| (mu - &(&c * dy)).is_zero())
        .then_some(c)
}

/// JSON form of a certificate. Scalars use the canonical literal syntax.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub mode: String,
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub character: Vec<String>,
    pub cocycle: Vec<String>,
    pub matrices: Vec<[[String; 2]; 2]>,
    pub verified: bool,
    pub indecomposable: bool,
    pub fixed_line_c: Option<String>,
}

impl CertificateDocument {
    pub fn from_certificate(cert: &RepCertificate, p: &Presentation) -> Self {
        let strings = |v: &[Scalar]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let c = is_decomposable(cert);
        CertificateDocument {
            mode: cert.mode().to_string(),
            generators: cert.generators.clone(),
            relators: p
                .relators()
                .iter()
                .map(|r| r.display(p.generators()).to_string())
                .collect(),
            character: strings(cert.character.values()),
            cocycle: strings(cert.cocycle.values()),
            matrices: cert
                .matrices
                .iter()
                .map(|m| {
                    let e = &m.entries;
                    [
                        [e[0][0].to_string(), e[0][1].to_string()],
                        [e[1][0].to_string(), e[1][1].to_string()],
                    ]
                })
                .collect(),
            verified: cert.is_verified(),
            indecomposable: c.is_none(),
            fixed_line_c: c.map(|c| c.to_string()),
        }
    }

    /// The presentation recorded in the document.
    pub fn presentation(&self) -> Result<Presentation> {
        let mut text = format!("gens: {}\n", self.generators.join(" "));
        for r in &self.relators {
            text.push_str("rel: ");
            text.push_str(r);
            text.push('\n');
        }
        parse_presentation(&text)
    }

    /// Rebuilds the certificate. Recorded verdicts are ignored; the caller
    /// re-verifies.
    pub fn to_certificate(&self) -> Result<RepCertificate> {
        let mode: Mode = self.mode.parse()?;
        let n = self.generators.len();
        for (what, len) in [
            ("character", self.character.len()),
            ("cocycle", self.cocycle.len()),
            ("matrices", self.matrices.len()),
        ] {
            if len != n {
                return Err(Error::Certificate(format!("{what} has {len} entries for {n} generators")));
            }
        }
        let parse = |s: &String| Scalar::parse_in_mode(s, mode);
        let values = self.character.iter().map(parse).collect::<Result<Vec<_>>>()?;
        let character = Character::new(values, mode)?;
        let mu = self.cocycle.iter().map(parse).collect::<Result<Vec<_>>>()?;
        let cocycle = Cocycle::new(mu, character)?;
        let matrices = self
            .matrices
            .iter()
            .map(|m| -> Result<Mat2> {
                Ok(Mat2 {
                    entries: [
                        [parse(&m[0][0])?, parse(&m[0][1])?],
                        [parse(&m[1][0])?, parse(&m[1][1])?],
                    ],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RepCertificate::from_parts(self.generators.clone(), matrices, cocycle)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

/// Parses `name=value` cocycle assignments for a character; missing generators are 0.
pub fn parse_cocycle(text: &str, names: &[String], rho: &Character) -> Result<Cocycle> {
    let mode = rho.mode();
    let precision = match mode {
        Mode::Approx(eps) => crate::scalar::Precision::Approx(eps),
        _ => crate::scalar::Precision::Exact,
    };
    let (_, values) = crate::character::parse_assignments(text, "cocycle", names, precision, 0)?;
    let values = values
        .into_iter()
        .map(|v| v.to_mode(mode))
        .collect::<Result<Vec<_>>>()?;
    Cocycle::new(values, rho.clone())
}

/// Word helper for callers holding only generator names.
pub fn matrix_of_text(cert: &RepCertificate, word: &str) -> Result<Mat2> {
    cert.matrix_of(&parse_word(word, cert.generators())?)
}
