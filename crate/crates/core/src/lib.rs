//! Finite fields, constacyclic and 2-quasi constacyclic codes, Galois duality and
//! self-dual code construction.

pub mod artifact;
pub mod codes;
pub mod distance;
pub mod error;
pub mod gf;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod rng;
pub mod selfdual;
pub mod semisimple;
pub mod transport;

pub use codes::{CodeKind, CodeMetrics, QuasiCode};
pub use distance::MinWeightOptions;
pub use error::{Error, Result};
pub use gf::{Field, FieldElement, FieldSpec};
pub use matrix::Matrix;
pub use poly::Poly;
pub use ring::{RingContext, RingElement};
