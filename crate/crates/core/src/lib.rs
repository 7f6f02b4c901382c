pub mod catalog;
pub mod certify;
pub mod cli;
pub mod codec;
pub mod constraints;
pub mod error;
pub mod poly;
pub mod regen;
pub mod search;

pub use error::{Error, Result};
pub use poly::{Bipartition, LittlewoodPoly, MomentKind, MomentSpec, SymmetrySign};
