//! Exact-arithmetic toolkit for deciding when uniform hypergraphs are
//! determined, up to complementation, by their small induced restrictions.

pub mod construct;
pub mod decomposition;
pub mod error;
pub mod hypergraph;
pub mod incidence;
pub mod linalg;
pub mod numth;
pub mod reconstruct;
pub mod valued;

pub use error::{Error, Result};
