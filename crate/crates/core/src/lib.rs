//! Kazhdan–Lusztig cells of the symmetric group through generalized diagrams.

pub mod cells;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod families;
pub mod lifting;
pub mod perm;
pub mod rs;
pub mod shapes;
pub mod verify;

pub use diagram::{DTableau, Diagram, Node};
pub use error::{Error, Result};
pub use perm::{GeneratorWord, ParabolicSet, Permutation};
pub use shapes::{Composition, Partition};
