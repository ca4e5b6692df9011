//! Exact arithmetic: Q(zeta_N) scalars, dense polynomials, rational functions.

mod birat;
mod modgcd;
mod poly;
mod ratfun;
mod scalar;

pub use birat::BiRatFun;
pub use poly::{write_poly, UniPoly};
pub use ratfun::{RatFun, ZeroDenominator};
pub use scalar::{cyclo_field, cyclotomic_poly, CycloField, ParseScalarError, Scalar};
