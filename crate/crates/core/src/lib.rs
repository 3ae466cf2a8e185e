//! Deep holes of generalized Reed-Solomon codes: finite fields, projective
//! geometry over them, GRS codes and their syndromes, exhaustive searches
//! and the structured results for redundancy 3 and for the full line.

pub mod deep_holes;
pub mod error;
pub mod field;
pub mod geometry;
pub mod grs;
pub mod hyperoval;
pub mod matrix;
pub mod orbits;
pub mod poly;
pub mod red3;
pub mod search;

pub use deep_holes::{DeepHoleClass, Witness};
pub use error::{Error, Result};
pub use field::{Elem, Field, FieldSpec, Fq};
pub use geometry::{MobiusTransform, ProjLinePoint, ProjPoint, ProjSpace};
pub use grs::{EvaluationSet, GrsCode, Syndrome};
pub use matrix::Matrix;
pub use orbits::OrbitLabel;
pub use poly::Poly;
pub use red3::{CanonicalExtensionForm, Family};
pub use search::Budget;
