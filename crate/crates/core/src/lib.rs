pub mod bmatching;
pub mod connector;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod graphic;
pub mod io;
pub mod oracle;
pub mod randic_opt;

pub use error::{Error, Result};
