//! Classical simulation of Lie-algebraic quantum computations and exact solution
//! of generalized mean-field Hamiltonians.

pub mod algebra;
pub mod bench;
pub mod commands;
pub mod config;
pub mod crosscheck;
pub mod engine;
pub mod error;
pub mod gmfh;
pub mod io;
pub mod numerics;
pub mod oracle;
pub mod random;
pub mod rep;

pub use error::{Error, Result};
