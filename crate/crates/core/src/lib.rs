//! Exact computations with 0-Hecke poset modules and quasisymmetric functions.
//!
//! The crate builds labeled posets, their linear extensions and the 0-Hecke
//! actions on them, expands P-partition generating functions in the
//! quasisymmetric power sum basis, and carries brute-force oracles for every
//! formula it implements.

pub mod borderstrips;
pub mod compositions;
pub mod error;
pub mod hecke;
pub mod io;
pub mod permutations;
pub mod posets;
pub mod ppart;
pub mod qsym;
pub mod tableaux;
pub mod verify;

pub use compositions::{compositions_of, partitions_of, Composition, Partition};
pub use error::{Error, Result};
pub use permutations::{all_permutations, interval, Permutation, Side, WeakInterval};
pub use posets::{all_posets, LabeledPoset};
pub use qsym::{Basis, QsymElement, Rational, Tensor};
pub use tableaux::{CompositionTableau, Diagram, Family, TableauKind};
