//! Exact word-map computations on small finite groups.

pub mod error;
pub mod group;
pub mod prob;
pub mod psl2;
pub mod solvable;
pub mod survey;
pub mod vsmb;
pub mod word;

pub use error::{Error, Result};
pub use group::{named, resolve_group, Elem, FiniteGroup, Subgroup};
pub use prob::{word_probability, EnumConfig, ExactProbability};
pub use word::{parse, Word};
