pub mod batch;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod eta;
pub mod forms;
pub mod interval;
pub mod knots;
pub mod lambda;
pub mod laurent;
pub mod poly;
pub mod rational;
pub mod spectral;
pub mod sw3d;
pub mod verify;

pub use error::{Error, Result};
