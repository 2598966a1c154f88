pub mod arith;
pub mod aurifeuillian;
pub mod classifier;
pub mod cyclotomic;
pub mod error;
pub mod exec;
pub mod poly;
pub mod selftest;
mod serde_dec;
pub mod two_squares;

pub use error::{Error, Result};
pub use exec::ExecMode;
