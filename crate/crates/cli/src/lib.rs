//! Command-line front end for `cmtorsion`: `classify`, `verify`, `tables`.

pub mod app;
pub mod document;
pub mod tables;
pub mod verify;

pub use app::run;
