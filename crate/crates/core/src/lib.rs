//! Matrix reorderings for finite-dimensional quantum information.
//!
//! The crate is built around three flattening and regrouping maps on dense
//! complex matrices:
//!
//! * [`reorder::res`] flattens a matrix row by row,
//! * [`reorder::vec`] flattens it column by column,
//! * [`reorder::reshuffle`] regroups a matrix on `C^m ⊗ C^n` into the product
//!   basis of the operator spaces `M_m ⊗ M_n`.
//!
//! On top of these sit the SVD-based [`schmidt`] decompositions for vectors
//! and operators, and the [`channel`] module: superoperators, dynamical
//! (Choi) matrices, canonical Kraus operators, composition of channels,
//! partial transposition/trace and the PPT test.
//!
//! ```
//! use qi_reorder::channel::{self, ChannelRep};
//!
//! let depol = channel::depolarizing_channel(2, 0.5).unwrap();
//! let kraus = channel::kraus_from_dynamical(&depol.to_dynamical().unwrap()).unwrap();
//! assert!(channel::is_trace_preserving(&kraus, 1e-10));
//! assert!(channel::is_completely_positive(&ChannelRep::Kraus(kraus), 1e-8));
//! ```

pub mod channel;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod random;
pub mod reorder;
pub mod schmidt;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};

pub use reorder::DimPair;
