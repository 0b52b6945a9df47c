//! Exact reduction of the radical `y = (d + sqrt(R))^(1/p)`, `p` odd, to a
//! `p`-th root `z` of `D = d^2 - R`, a zero `u` of a degree-`p` polynomial `f`,
//! and `sqrt(R)`:
//!
//! ```text
//! {y, y'} = { z^((p+1)/2) * (u/(2D) ± A(u) sqrt(R)) }
//! ```
//!
//! together with exact symbolic checks of the polynomial and summation
//! identities behind it, and a high-precision numeric cross-check.

pub mod coeffs;
pub mod constructors;
pub mod error;
pub mod exact_num;
pub mod expr;
pub mod identity;
pub mod numeric;
pub mod poly;
pub mod reduce;

pub use error::{Error, Result};
pub use exact_num::{QuadExt, Rational};
pub use poly::{BiCoeff, BiCoeffPoly, RatPoly, UniPoly};
