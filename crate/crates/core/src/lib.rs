//! Quantum thermal transistor: three strongly coupled qubits in thermal
//! reservoirs that may induce correlated transitions.

// `!(x >= lo)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod channels;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod format;
pub mod model;
pub mod observables;
pub mod params;
pub mod transistor;

pub use error::{Error, Result};
pub use params::{SystemParams, Terminal};
pub use transistor::Transistor;
