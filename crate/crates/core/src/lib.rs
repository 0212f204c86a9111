pub mod audit;
pub mod complexity;
pub mod entropy;
pub mod error;
pub mod fisher;
pub mod moments;
pub mod quadrature;
pub mod radial;
pub mod report;
pub mod special;
pub mod specfun;
pub mod states;

pub use error::{Error, Result};
