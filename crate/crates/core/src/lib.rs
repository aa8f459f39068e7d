//! Free groups, surface groups and their direct products: subgroup graphs,
//! fixed subgroups of endomorphisms, coset enumeration and the rank checks
//! built on top of them.

pub mod error;
pub mod morphisms;
pub mod presentations;
pub mod products;
pub mod stallings;
pub mod text;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use words::{Alphabet, Letter, Word};
