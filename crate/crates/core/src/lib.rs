pub mod bipoly;
pub mod cli;
pub mod error;
pub mod g2ring;
pub mod golden;
pub mod mapspace;
pub mod molien;
pub mod surjcheck;
pub mod weyl;

pub use bipoly::{BiPoly, Bounds};
pub use error::{Error, Result};
pub use weyl::{CharPolyHistogram, CharPolyVector, LieType};
