//! Exact computations with truncated free Lie algebras, Maurer–Cartan
//! calculus on cochain deformation complexes, and Malcev Lie algebra
//! presentations of fundamental groups of finite simplicial sets.
//!
//! The core is generic over a [`Scalar`] field; the aliases below fix it to
//! exact rationals, which is what every public pipeline uses.

pub mod ce;
pub mod envelope;
pub mod error;
pub mod hull;
pub mod json;
pub mod lie_core;
pub mod linalg;
pub mod local_systems;
pub mod presentations;
pub mod scalar;
pub mod sdc;

pub use error::{Error, Result};
pub use lie_core::{Alphabet, FreeLieAlgebra, Generator, LieElement, NilpotentAlgebra, Word};
pub use scalar::{format_rational, parse_rational, Scalar, Q};

pub type LieElementQ = LieElement<Q>;
pub type NilpotentAlgebraQ = NilpotentAlgebra<Q>;
pub type GroupCochainQ = sdc::GroupCochain<Q>;
pub type HullResultQ = hull::HullResult<Q>;
pub type CECohomologyQ = ce::CECohomology<Q>;
pub type DgAlgebraQ = sdc::DgAlgebra<Q>;
