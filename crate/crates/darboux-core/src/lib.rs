pub mod airy;
pub mod bessel;
pub mod diffop;
pub mod error;
pub mod family;
pub mod field;
pub mod kernel;
pub mod io;
pub mod linalg;
pub mod pipeline;
pub mod registry;
pub mod verify;

pub use diffop::{DForm, DiffOp};
pub use error::{Error, Result};
pub use family::Family;
pub use field::{BiRatFun, RatFun, Scalar, UniPoly};
