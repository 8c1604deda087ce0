pub mod arith;
pub mod error;
pub mod field;
pub mod linalg;
pub mod linpoly;
pub mod planar;
pub mod quadform;
pub mod spread;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Elt, FieldCtx, Subfield};
pub use linpoly::QPoly;
pub use quadform::{Base, DOPoly, QuadSpace};
