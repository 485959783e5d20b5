//! Exact symbolic engine for the two-parameter deformed Grassmann matrix
//! algebra `Gr_{p,q}(2)` and supermatrix algebra `Gr_{p,q}(1|1)`.
//!
//! Algebras are finite presentations over rational functions in `p` and `q`,
//! realised as confluent noncommutative rewrite systems. On top of the normal
//! form engine sit matrix operations (tensor embeddings, R-matrices, dual
//! determinants, inverses, superdeterminant, closed-form powers) and
//! verification suites that reduce each identity to an exact residual.

pub mod cli;
pub mod coeff;
pub mod freealg;
pub mod matops;
pub mod verify;

use num_bigint::BigInt;
use num_rational::Ratio;

/// Default exact base field.
pub type Rat = Ratio<BigInt>;
/// Rational functions in `p`, `q` over [`Rat`].
pub type RatFunc = coeff::RatFunc<Rat>;
/// Laurent polynomials in `p`, `q` over [`Rat`].
pub type LaurentPoly = coeff::LaurentPoly<Rat>;
/// Noncommutative polynomials with [`RatFunc`] coefficients.
pub type Poly = freealg::Poly<RatFunc>;
/// Presentations over [`RatFunc`].
pub type Presentation = freealg::Presentation<RatFunc>;
