//! Parabolic subgroups, tables of marks and Solomon descent algebras of
//! finite Coxeter groups, together with their modular representation theory.
//!
//! [`workbench::Workbench`] is the usual entry point: it builds the group
//! for a [`CoxeterType`] and lazily derives the parabolic classes, the table
//! of marks and the descent algebra structure constants. [`modular`] and
//! [`cartan`] work from those tables alone.

pub mod cartan;
pub mod checks;
pub mod classical;
pub mod descent;
pub mod descriptor;
pub mod error;
pub mod group;
pub mod labels;
pub mod linalg;
pub mod marks;
pub mod modular;
pub mod oracle;
pub mod parabolic;
pub mod partitions;
pub mod reference;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod subset;
pub mod workbench;

pub use descriptor::{CoxeterType, Family};
pub use error::{Error, Result};
pub use group::{CoxeterGroup, Element};
pub use subset::GeneratorSubset;
