//! First twisted cohomology of finitely presented groups with a positive
//! real character, with explicit 2×2 representation certificates.
//!
//! Characters are the holonomy `ρ = e^θ` of a closed 1-form; a presentation
//! and a character determine `H¹` of the group with coefficients twisted by
//! `ρ`, and a non-zero class is witnessed by an indecomposable representation
//! `γ ↦ [[1, μ(γ)], [0, ρ(γ)]]`.

pub mod certificate;
pub mod character;
pub mod cocycle;
pub mod eigen;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod linalg;
pub mod parse;
pub mod scalar;
pub mod word;

pub use certificate::{build_representation, is_decomposable, verify_homomorphism, CertificateDocument, Mat2, RepCertificate};
pub use character::{parse_character, Character};
pub use cocycle::{betti_one, cocycle_space, twisted_h1_dimension, Cocycle, CohomologyReport};
pub use enumerate::{candidate_characters, enumerate_nonvanishing, ConjugationData, NonVanishing};
pub use error::{Error, Result};
pub use linalg::{Matrix, Warning};
pub use parse::{parse_presentation, parse_word};
pub use scalar::{Mode, Precision, Scalar, DEFAULT_EPSILON};
pub use word::{Presentation, Word};
