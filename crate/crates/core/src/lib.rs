//! Numerical semigroups, their relative ideals, and a combinatorial test for
//! the Huneke-Wiegand property of ideals.
//!
//! The entry point is [`NumericalSemigroup::from_generators`]. Ideals live in
//! [`ideal`], the partition criterion in [`hw`], arithmetic sequences in
//! [`sequences`], gluings in [`gluing`] and corpus runs in [`enumeration`].

mod bits;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod gluing;
pub mod hw;
pub mod ideal;
pub mod semigroup;
pub mod sequences;

pub use error::{Error, Multiplier, Result};
pub use gluing::{glue, Gluing};
pub use hw::{is_huneke_wiegand, HWReport, Verdict};
pub use ideal::RelativeIdeal;
pub use semigroup::{AperySet, NumericalSemigroup};
pub use sequences::ArithmeticSequence;
