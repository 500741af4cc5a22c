pub mod error;
pub mod exactlin;
pub mod multilinear;
pub mod nrbracket;
pub mod qtla;
pub mod defmaps;
pub mod mcalg;
pub mod sampling;
pub mod cohomology;
pub mod cli;

pub use error::{Error, Result};
pub use exactlin::{Matrix, Rational};
