//! Exact enumeration of labelled and unlabelled Hamiltonian cycles in the
//! complete multipartite graphs `K_{d,...,d}` through generalized chord
//! diagrams.

pub mod cache;
pub mod engine;
pub mod error;
pub mod export;
pub mod exact;
pub mod fixtures;
pub mod labelled;
pub mod oracle;
pub mod reflective;
pub mod rotational;
pub mod verify;

pub use engine::{Column, CountsRecord, Engine};
pub use error::{Error, Result};
pub use exact::ExactInt;
