//! Exact symbolic verification of omni-Lie algebroids, Dirac structures, and
//! their correspondence with Lie algebroids and Jacobi line bundles.
//!
//! Everything is computed over `ℚ[x₁, …, xₙ]` on a single coordinate patch
//! with a trivialized vector bundle `E = M × ℝᵏ`. Identities are asserted by
//! expanding both sides to canonical polynomials, so a check either passes
//! exactly or produces a nonzero defect polynomial as a witness.

pub mod algebroid;
pub mod bundle;
pub mod cli;
pub mod dirac;
pub mod document;
pub mod error;
pub mod jacobi;
pub mod omni;
pub mod parse;
pub mod poly;
pub mod report;
pub mod sample;
pub mod tensor;

pub use algebroid::{AlgebroidData, NijenhuisOp};
pub use bundle::{DerivationDE, JetSection, SectionE, VectorField};
pub use dirac::{CheckOptions, IntegrabilityMode, PiMap};
pub use error::{Error, Result};
pub use jacobi::{JacobiData, Multivector};
pub use omni::OmniSection;
pub use poly::{Patch, Poly, PolyMatrix, Rational};
pub use report::{Check, CheckSet, Report, Verdict};
pub use tensor::StructureTensor;
