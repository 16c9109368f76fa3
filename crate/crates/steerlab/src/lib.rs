pub mod error;
pub mod qmat;
pub mod tol;
pub use error::{Error, Result};
