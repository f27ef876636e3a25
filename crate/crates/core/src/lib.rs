pub mod error;
pub mod functions;
pub mod harness;
pub mod maximal;
pub mod mobius;
pub mod numbers;
pub mod transference;

pub use error::{Error, Result};
