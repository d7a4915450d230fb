//! Exact computations in the affine Hecke algebra of type `A1~`, its
//! completions, Lusztig's asymptotic algebra `J`, and the convolution action
//! on Iwahori-invariant functions on the punctured plane.
//!
//! Exponents of Laurent polynomials count powers of `v = q^(1/2)`.

pub mod coeffring;
pub mod completion;
mod error;
mod scalar;
pub mod hecke;
pub mod jalg;
pub mod plane;
pub mod report;
pub mod weyl;

pub use coeffring::{Direction, Laurent, Specialized, TruncSeries};
pub use error::{Error, Result};
pub use scalar::Coeff;
pub use completion::{CompletedHecke, Tail};
pub use hecke::{Basis, HeckeElt};
pub use jalg::{CompletedJ, JElt};
pub use plane::{OrbitWindow, PlaneFunction, Symbol, Window};
pub use report::{Check, Report};
pub use weyl::{Gen, WeylElt};

/// Laurent polynomials in `q^(1/2)` over machine integers.
pub type LaurentHalf = Laurent<i64>;
/// Laurent polynomials with arbitrary-precision coefficients.
pub type BigLaurent = Laurent<num_bigint::BigInt>;
pub type Series = TruncSeries<i64>;
