//! Exact-arithmetic engine for plabic graphs, Legendrian weaves, decorated
//! flag chains, cluster seeds and pinching sequences of positive braids.
//!
//! The crate is organised bottom-up:
//!
//! * [`braid`], [`plabic`], [`separated`] — braid words, plabic fences and
//!   graphs, square moves and weakly separated collections;
//! * [`weave`] — the weave compiled from a fence, its strings, cycles and
//!   intersection form;
//! * [`flags`] — decorated flag chains, minors, merodromies, cross and
//!   triple ratios;
//! * [`cluster`] — seeds, mutation and exchange graphs;
//! * [`pinch`] — pinching sequences and the charts they produce;
//! * [`app`] — reports, the command dispatcher and the HTTP session service.
//!
//! All arithmetic is exact over ℚ (see [`linalg::Q`]).

pub mod app;
pub mod braid;
pub mod cluster;
pub mod flags;
pub mod linalg;
pub mod pinch;
pub mod plabic;
pub mod separated;
pub mod weave;

pub use braid::BraidWord;
pub use linalg::{Matrix, Q};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid braid: {0}")]
    InvalidBraid(String),
    #[error("invalid plabic graph: {0}")]
    InvalidGraph(String),
    #[error("face {0} is not eligible for a square move")]
    NotSquareEligible(usize),
    #[error("vertex {vertex} has degree {degree}, expected 2")]
    NotDegreeTwo { vertex: usize, degree: usize },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("vertex {0} is not a mutable vertex")]
    NotMutable(usize),
    #[error("unknown session {0}")]
    UnknownSession(String),
    #[error("identity check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
