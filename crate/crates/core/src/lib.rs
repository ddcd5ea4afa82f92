//! Exact computations with the Khovanov arc algebras `H^m_n` and their
//! extended covers `K^m_n`: weights and cup diagrams, Dyck tilings, the
//! surgery product, the quiver presentation and Ext-quivers.

pub mod arc_algebra;
pub mod cli;
pub mod combinatorics;
pub mod dyck;
pub mod exactlinalg;
pub mod presentation;
pub mod rep_theory;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid context: m={m}, n={n} (need 1 <= m <= n, m+n <= 64)")]
    Context { m: usize, n: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} does not fit the {1}x{2} rectangle")]
    OutOfRectangle(String, usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("({0}, {1}) is not a Dyck pair")]
    NotDyckPair(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use combinatorics::{Catalogue, CupDiagram, Ctx, Partition, QPoly, Weight};
pub use dyck::DyckPath;
