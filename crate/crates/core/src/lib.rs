//! Exact computation in the Banach algebra `ℓ¹(Cu2 ∖ {◊}, #)` of the
//! polycyclic monoid on two generators.
//!
//! * [`words`]: binary words and the positional bijection used by the `ℓᵖ` maps.
//! * [`semigroup`]: canonical-form arithmetic in `Cu2`.
//! * [`algebra`]: the `#` product, the ideal `J`, membership certificates and
//!   factorizations of the unit through elements outside `J`.
//! * [`functionals`]: bounded functionals, the `T*` fixed-point test for the
//!   annihilator of `J`, and the trace `τ`.
//! * [`rep`]: the spatial representation on `ℓᵖ` by shift operators.

pub mod algebra;
pub mod error;
pub mod functionals;
pub mod report;
pub mod rep;
pub mod semigroup;
pub mod words;

pub use algebra::{Element, Scalar};
pub use error::{Error, Result};
pub use semigroup::{CuElement, Monomial};
pub use words::Word;
