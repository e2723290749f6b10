//! Spherical and circular Kakeya sets over finite fields of odd
//! characteristic: field arithmetic, quadric point counting, explicit
//! constructions with coverage witnesses, exhaustive verifiers and exact
//! minimal-size search in dimension one.

pub mod constructions;
pub mod error;
pub mod exact;
pub mod field;
pub mod geometry;
pub mod report;
pub mod search;
pub mod verification;

pub use error::{KakeyaError, Result};
pub use field::{Field, FieldElement, QuadChar};
pub use geometry::{PointSet, Space};
