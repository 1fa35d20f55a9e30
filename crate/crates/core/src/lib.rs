pub mod algebra;
pub mod certificates;
pub mod error;
pub mod extensions;
pub mod families;
pub mod perm;
pub mod petrie;
pub mod report;
pub mod sim;

pub use error::{Error, Result};
