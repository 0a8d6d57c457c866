pub mod biquandle;
pub mod coloring;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod format;
pub mod gfamily;
pub mod group;
pub mod mcb;
pub mod perm;
pub mod table;

pub use biquandle::Biquandle;
pub use diagram::Diagram;
pub use error::{Error, Result, ValidationReport, Violation};
pub use gfamily::GFamily;
pub use group::FiniteGroup;
pub use mcb::{Mcb, McbTables};
pub use perm::{perm_order, Permutation};
pub use table::{OpTable, PartialOp};
