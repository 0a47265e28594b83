//! Projective lines over finite rings: points, the distant, parallel and
//! adjacency relations, the Grassmann model of matrix rings, and
//! distant-preserving maps together with their algebraic factorizations.

pub mod error;
pub mod grassmann;
pub mod harness;
pub mod linalg;
pub mod morphisms;
pub mod projline;
pub mod ring;
pub mod ringmap;

pub use error::{Error, Result};
pub use ring::{Elem, FiniteRing, Ideal, Mat2};
pub use projline::{PointId, ProjPoint, ProjectiveLine};
pub use ringmap::{MapKind, RingMapTable};
