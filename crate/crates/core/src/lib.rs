//! Maximal standard monomials, irreducible decompositions and Alexander
//! duals of monomial ideals, computed by splitting slices.
//!
//! ```
//! use slice_core::{decomposition, EngineOptions, MonomialIdeal};
//!
//! let ideal = MonomialIdeal::from_generators(2, [[2u32, 0], [1, 1], [0, 3]]);
//! let components = decomposition::irreducible_decomposition(&ideal, &EngineOptions::default()).unwrap();
//! let rows: Vec<&[u32]> = components.iter().map(|c| c.exponents()).collect();
//! assert_eq!(rows, [&[1, 3][..], &[2, 1][..]]);
//! ```

pub mod base;
pub mod compress;
pub mod decomposition;
pub mod engine;
pub mod error;
pub mod idp;
pub mod io;
pub mod monomial;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod random;
pub mod slice;
pub mod strategy;

pub use compress::{BigIdeal, CompressionMode, ExponentCompression};
pub use decomposition::IrreducibleComponent;
pub use engine::{ContentConsumer, Engine, EngineOptions, EngineStats, SliceGuard, SplitObserver};
pub use error::{Error, Result};
pub use monomial::{Exponent, Monomial, MonomialIdeal};
pub use slice::{lower_bound, simple_lower_bound, Slice};
pub use strategy::{SplitDecision, StrategyId};
