//! Gauss-Manin connections of isolated hypersurface singularities and formal
//! meromorphic connections over the Laurent series field `Q((t))`.

pub mod brieskorn;
pub mod cli;
pub mod connection;
pub mod error;
pub mod forms;
pub mod local;
pub mod series;

pub use error::{Error, Result};
