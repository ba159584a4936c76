//! Vertex selection with certified origin-centered inscribed balls.
//!
//! Given a polytope `Q ⊇ Bᵈ` in vertex form, [`steinitz::select_vertices`]
//! picks at most `2d` vertices whose hull contains the ball of radius
//! `1/(5d²)` and returns a certificate trail for every intermediate step.
//! [`upperbound::witness`] builds the matching obstruction: a point of the
//! polar of an absolute hull with norm at least `d/√n`.

pub mod centers;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod polytope;
pub mod rng;
pub mod scalar;
pub mod sparse;
pub mod steinitz;
pub mod upperbound;

pub use error::{GeometryError, Result};
pub use scalar::{Rational, Scalar};
