//! Mealy machines, the groups their states generate, and a certified
//! recognizer for the infinite dihedral group.
//!
//! ```
//! use mealy_groups::builtin::v26;
//! use mealy_groups::group::{element_from_word, GeneratorWord};
//! use mealy_groups::recognizer::recognize_dihedral;
//!
//! let m = v26();
//! let pp = element_from_word(&m, &GeneratorWord::positive(["p", "p"])).unwrap();
//! assert!(pp.is_identity());
//! assert!(recognize_dihedral(&m, "p", "q", 16).unwrap().is_certified());
//! ```
//!
//! The `book/` directory at the repository root explains the concepts at
//! length; its code listings are compiled and run as doc-tests of this
//! crate.

pub mod builtin;
pub mod dihedral;
pub mod error;
pub mod format;
pub mod group;
pub mod machine;
pub mod recognizer;

pub use error::{MachineError, ParseError, ParseErrorKind};
pub use machine::{Alphabet, Letter, MealyMachine, PointedMachine, StateId, Word};

// Book chapters, one module each so failing listings are easy to locate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/machines.md")]
    mod machines {}
    #[doc = include_str!("../../../book/src/group-elements.md")]
    mod group_elements {}
    #[doc = include_str!("../../../book/src/dihedral.md")]
    mod dihedral {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
