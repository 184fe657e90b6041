//! Interleaved alternant codes: construction, collaborative decoding, exact
//! success-probability bounds and Monte Carlo simulation.

pub mod bounds;
pub mod codes;
pub mod counting;
pub mod decoder;
pub mod error;
pub mod gf2m;
pub mod linalg;
pub mod simkit;

pub use codes::{AlternantCode, GrsSpec, InterleavedMatrix};
pub use decoder::{classify, decode, Classification, DecodeOptions, DecodeOutcome, FailureReason};
pub use error::{Error, Result};
pub use gf2m::{Felt, FieldTower};
