pub mod enveloping;
pub mod error;
pub mod ideals;
pub mod linalg;
pub mod report;
pub mod root_system;
pub mod sampling;
pub mod scalar;
pub mod suite;
pub mod verma;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
