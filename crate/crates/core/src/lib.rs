//! Hultman elements of the symmetric groups `S_n` and the hyperoctahedral
//! groups `B_n`, the latter realized inside `S_{2n}` as centrally
//! symmetric permutations.

pub mod arrangement;
pub mod bruhat;
pub mod diagram;
pub mod error;
pub mod group;
pub mod harness;
pub mod pattern;
pub mod perm;

pub use error::{Error, Result};
pub use group::{Family, Group};
pub use perm::Perm;
