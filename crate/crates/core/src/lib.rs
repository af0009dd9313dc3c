pub mod arith;
pub mod covering;
pub mod ecq;
pub mod error;
pub mod localsolve;
pub mod numfield;
pub mod report;
pub mod surface;

pub use error::{Error, Result};
