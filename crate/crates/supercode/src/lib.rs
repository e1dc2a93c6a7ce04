//! Construction, verification and length analysis of superimposed codes with
//! runlength constraints, the test matrices behind non-adaptive group testing
//! schemes whose columns must keep their 1's at least d apart.
//!
//! A (k,n,d)-superimposed code of length t is a t-by-n binary matrix such
//! that any two 1's in a column are separated by a run of at least d zeros,
//! and for any k columns and any member c of those k there is a row where c
//! has a 1 and the other k-1 have 0. The constructor reduces the k-wise
//! property to a pairwise overlap budget, then drives a Moser-Tardos
//! resampling loop over exactly-uniform runlength-constrained columns: a Las
//! Vegas procedure whose output is always a valid code.
//!
//! Modules:
//!
//! - [`types`]: parameters, columns, matrices, reports
//! - [`enumcode`]: counting, rank/unrank and uniform sampling of columns
//! - [`lll`]: the resampling engine and the construction pipeline
//! - [`verify`]: runlength, pairwise-overlap and brute-force checkers
//! - [`bounds`]: every length bound and parameter default, exact where it matters

pub mod bounds;
pub mod enumcode;
pub mod error;
pub mod lll;
pub mod types;
pub mod verify;

pub use error::{Error, Result};
pub use lll::{construct_lambda_matrix, construct_superimposed, PairEvent};
pub use types::{
    BoundsTable, CodeMatrix, CodeMeta, CodeParameters, ConstructionReport, WdColumn,
};
