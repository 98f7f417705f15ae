//! Optimal quantizers of the infinitely generated affine measure on the unit
//! square.
//!
//! The measure `P` is the invariant measure of the similitudes
//! `S_(i,j)(x, y) = (T_i(x), T_j(y))`, `T_k(x) = 3^(-k) x + 1 - 3^(1-k)`,
//! with weights `2^(-(i+j))`. It equals the product of two Cantor
//! distributions, which is what makes exact computation possible.
//!
//! * [`words`]: symbolic words and the conjugation to binary Cantor words.
//! * [`measure`]: maps, masses and cells.
//! * [`moments`]: exact centroids and distortions of cells and unions.
//! * [`quantizer`]: closed-form optimal codebooks and errors `V_n`.
//! * [`engine`]: certified distortion of arbitrary codebooks, Lloyd
//!   iteration and multistart search.
//! * [`io`]: JSON/CSV serialisation with exact `p/q` rationals.
//!
//! Everything geometric is generic over [`Scalar`]; [`Rational`] gives exact
//! results and `f64` fast approximate ones.

pub mod codebook;
pub mod engine;
pub mod error;
pub mod io;
pub mod measure;
pub mod moments;
pub mod quantizer;
pub mod scalar;
pub mod words;

pub use codebook::Codebook;
pub use engine::{exact_distortion, lloyd, lloyd_step, multistart_search, resolve_cell, CertifiedInterval};
pub use error::{Error, Result};
pub use measure::{Point, Region};
pub use quantizer::{
    count_variants, default_codebook, enumerate_variants, level, optimal_codebook, quantization_error,
    variant_at, Regime, VariantSpec,
};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
pub type ExactPoint = Point<Rational>;
pub type ExactCodebook = Codebook<Rational>;
pub type FloatCodebook = Codebook<f64>;
pub type ExactRegion = Region<Rational>;
pub type ExactInterval = CertifiedInterval<Rational>;
