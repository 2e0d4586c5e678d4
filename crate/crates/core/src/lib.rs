//! Structural analysis of DAEs through their signature matrix.
//!
//! From a signature matrix `sigma` the crate finds highest-value transversals
//! and offsets, the coarse and fine block-triangular forms, the essential
//! sparsity pattern, and the fine-block graph whose lead-time vectors
//! parameterise every normalised offset vector. [`oracle`] holds exhaustive
//! reference versions for small inputs.
//!
//! Indices are 0-based throughout; minus infinity is an absent entry.

pub mod assignment;
pub mod blocktri;
pub mod dae;
pub mod error;
pub mod fineblock;
pub mod matching;
pub mod oracle;
pub mod sigfile;
pub mod sigma;

pub use assignment::{canonical_offsets, check_offsets, solve_hvt, Hvt, OffsetClassification};
pub use blocktri::{coarse_blocks, essential_pattern, fine_blocks, BtfResult};
pub use dae::{parse_dae, signature_of, DaeError, DaeSource};
pub use error::{AnalysisError, OracleError, SigmaError};
pub use fineblock::{build_fbg, FineBlockGraph, LeadTimeVector, OffsetSetClass};
pub use sigfile::{parse_sig, write_sig, SigFileError};
pub use sigma::{BlockForm, Emblem, OffsetPair, Permutation, SignatureMatrix, SparsityPattern, Transversal};
