//! Exact signal processing on Gaussian-family functions.
//!
//! Signals are finite sums of `√y · exp(-(a + b·u + c·u²)) · p(u)` with
//! `u = √π·t` and all parameters in `ℚ + iℚ`. Translation, modulation,
//! dilation, products, convolution, differentiation and the Fourier transform
//! act as exact parameter maps; [`numeric`] supplies a high-precision
//! pointwise and quadrature semantics to check them against.

pub mod discrete;
pub mod error;
pub mod expr;
pub mod laws;
pub mod mix;
pub mod mutation;
pub mod numeric;
pub mod poly;
pub mod quad;
pub mod scalar;
pub mod simple;

pub use error::{Error, Result};
pub use mix::GaussMix;
pub use numeric::EvalConfig;
pub use poly::{GaussPoly, IntegralResult, Poly};
pub use quad::GaussQuad;
pub use scalar::{Amplitude, ComplexRational, Rational};
pub use simple::{NormOrder, NormValue, SimpleGauss};
