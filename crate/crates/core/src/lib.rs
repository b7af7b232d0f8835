pub mod cli;
pub mod divpow;
pub mod error;
pub mod invsolver;
pub mod linalg;
pub mod modarith;
pub mod partitions;
pub mod perm;
pub mod symmfunc;
pub mod tensorinv;
pub mod vecscovecs;

pub use error::{DpError, Result};
pub use modarith::PrimeCtx;
