//! File formats, reports and the `incoq` command line for [`incoq_core`].

pub mod angle;
pub mod cli;
pub mod error;
pub mod hamiltonian;
pub mod report;
pub mod unitary;

pub use error::{Error, ParseError, Result};
pub use hamiltonian::{Coefficient, HamiltonianSpec};
