//! Certifying 3-connectivity in linear time.
//!
//! The engine builds a Barnette–Grünbaum construction sequence for the input
//! graph: starting from a `K₂³`-subdivision it adds BG-paths one by one until
//! the whole graph is covered. A successful run yields a machine-checkable
//! certificate of 3-connectedness; a failed run yields a small witness
//! (low-degree vertex, cut vertex, separation pair, ...) that is verified by
//! deletion and component counting before it is returned.
//!
//! The crate is `no_std` + `alloc`: all algorithms are pure computations over
//! integer-indexed adjacency lists. IO, file formats and the CLI live in the
//! companion `tricon-cli` crate.
//!
//! Module map:
//! - [`graph`]: graph representation, witnesses, witness verification
//! - [`dfs`]: depth-first search, DFIs, backedge orientation, ancestry
//! - [`chains`]: chain decomposition, parent tree, type classification
//! - [`construction`]: the subdivision engine producing certificates
//! - [`verifier`]: independent O(m) certificate validation by reverse removal
//! - [`transforms`]: edge representation and removal sequences
//! - [`edge3`]: certifying 3-edge-connectivity via the wheel reduction
//! - [`oracle`]: brute-force references and deterministic generators

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod chains;
pub mod construction;
pub mod dfs;
pub mod edge3;
pub mod graph;
pub mod oracle;
pub mod transforms;
pub mod verifier;

pub use construction::{certify, CertifyOutcome, ConstructionCertificate};
pub use graph::{Graph, NegativeWitness};

/// Sentinel for "no vertex / no edge / no chain" in index arrays.
pub(crate) const UNSET: u32 = u32::MAX;

/// Fatal internal error: an invariant the algorithm relies on was violated,
/// or a witness failed its own verification. Either means a bug, never a
/// property of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalError(pub alloc::string::String);

impl core::fmt::Display for InternalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "internal error: {}", self.0)
    }
}

#[macro_export]
macro_rules! internal {
    ($($arg:tt)*) => {
        $crate::InternalError(alloc::format!($($arg)*))
    };
}
