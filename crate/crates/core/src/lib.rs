//! The descent algebra of the symmetric group over the integers and over
//! prime fields.
//!
//! The crate computes structure constants of `Σ_n` and `Σ(n,p)`, the Young
//! characters and the character homomorphisms `θ` and `φ`, and builds and
//! independently certifies the Jacobson radical `R(n,p)` together with its
//! nilpotency index. A brute-force group-algebra oracle in [`oracle`]
//! recomputes the structure constants from permutations.

pub mod algebra;
pub mod cache;
pub mod characters;
pub mod combinatorics;
mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod radical;
pub mod verify;

pub use algebra::{Element, Ring, Side, StructureTable};
pub use combinatorics::{Composition, MultiplicityVector, Partition};
pub use error::{Error, Result};
pub use field::Prime;
