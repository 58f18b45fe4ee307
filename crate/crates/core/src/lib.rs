//! Root systems of classical basic Lie superalgebras, exhaustive splint
//! enumeration and exact formal-character identities.

pub mod addstruct;
pub mod characters;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod rootsys;
pub mod splints;
pub mod weight;

pub use error::{Error, Result};
pub use rootsys::{build, Root, RootSystem, RootSystemSpec};
pub use weight::{Dims, Parity, Weight};
