//! Torsion of elliptic curves over `Q` with complex multiplication, over `Q`
//! itself and over cubic number fields.

pub mod cmclass;
pub mod cubicgrowth;
pub mod ellcurve;
pub mod error;
pub mod exactnum;
mod intpoly;
pub mod numberfield;
pub mod poly;
pub mod polyfactor;

pub use error::{Error, Result};
pub use exactnum::Rational;
pub use poly::Poly;
