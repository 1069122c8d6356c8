pub mod adjoint;
pub mod archive;
pub mod cell;
pub mod comb;
pub mod error;
pub mod free;
pub mod frt;
pub mod instance;
pub mod linear;
pub mod ncmatrix;
pub mod phi;
pub mod report;
pub mod rmatrix;
pub mod scalar;
pub mod sl2;
pub mod word;

pub use error::{Error, Result};
