pub mod error;
pub mod arrangement;
pub mod badcurve;
pub mod blowup;
pub mod certify;
pub mod cli;
pub mod exactgeom;
pub mod localsys;

pub use error::{Error, Result};
