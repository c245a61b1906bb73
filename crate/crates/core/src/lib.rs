//! Root systems, Weyl groups, Bruhat order and pattern criteria for
//! (rational) smoothness of Schubert varieties.

pub mod criteria;
pub mod embeddings;
pub mod error;
pub mod linalg;
pub mod models;
pub mod poincare;
pub mod root_system;
pub mod subsystems;
pub mod weyl;

pub use error::{Error, Result};
