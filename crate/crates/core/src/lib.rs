//! Exact computation with reversible cellular automata on full shifts.

pub mod alphabet;
pub mod ca;
pub mod clopen;
pub mod compiler;
pub mod config;
pub mod control;
pub mod error;
pub mod gates;
pub mod linear;
pub mod paut;
pub mod perm;
pub mod permgroup;
pub mod verify;
pub mod witnesses;
pub mod word;

pub use alphabet::{Alphabet, Symbol};
pub use ca::{compose, equal, invert, is_reversible, Ca, EqualityVerdict};
pub use clopen::{clopen_is_unbordered, ClopenSet};
pub use config::SupportedConfig;
pub use error::{Error, Result};
pub use perm::Permutation;
pub use word::{canonical_unbordered, word_is_unbordered, Word};
