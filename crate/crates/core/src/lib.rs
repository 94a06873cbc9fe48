pub mod alexander;
pub mod cli;
pub mod constructions;
pub mod diagram;
pub mod error;
pub mod fk;
pub mod fox;
pub mod groupalg;
pub mod l2;
pub mod words;

pub use error::{Error, Result};
