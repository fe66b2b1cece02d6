//! Exact arithmetic engine for Kummer covers `y^n = f(x)` of the projective
//! line over finite fields: field and polynomial arithmetic, divisor profiles
//! of rational functions, genus and exact rational-point counts, and the
//! linearized-polynomial splitting constructions that produce covers with
//! many points.

pub mod arith;
pub mod constructions;
pub mod divisors;
pub mod error;
pub mod gf;
pub mod kummer;
pub mod upoly;

pub use divisors::{DivisorProfile, Location, PlaceData, Point, RatFun};
pub use error::{Error, Result};
pub use gf::{Fe, Field};
pub use kummer::{CurveReport, KummerCurve, Prediction, Ratio};
pub use upoly::{Poly, SqfDecomp};
