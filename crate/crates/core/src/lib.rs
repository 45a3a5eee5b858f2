//! Gauss composition of binary quadratic forms computed through modules
//! over quadratic rings.
//!
//! A form goes to its even Clifford ring and odd Clifford module
//! ([`clifford()`]); an invertible module comes back as its norm form
//! ([`norm_form`]). Composition multiplies modules in between.

pub mod classgroup;
pub mod clifford;
pub mod cyclotomic;
pub mod error;
pub mod forms;
pub mod hecke;
pub mod json;
pub mod module;
pub mod ring;
pub mod universal;

pub use classgroup::{compose, dirichlet_compose, ClassGroup, CyclicFactor, Variant};
pub use clifford::{
    canonical_orientation, clifford, norm_form, CliffordPair, Orientation, OrientationMatch,
};
pub use error::{Error, Result};
pub use forms::{canonical_form, enumerate_classes, BinaryForm, Discriminant, UnimodularMap};
pub use module::{is_pseudoregular, GoodFrameModule};
pub use ring::{Matrix2, QuadraticRing, RingElement};
