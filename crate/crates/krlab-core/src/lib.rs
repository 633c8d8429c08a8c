//! Exact tools for partitions with difference conditions whose counts match
//! infinite products of modulus 9 and 12.

pub mod bijection;
pub mod error;
pub mod genfun;
pub mod gordon;
pub mod partitions;
pub mod qseries;
pub mod verify;

pub use bijection::{BaseSpec, CaseTag, MoveTuple, StepKind, TraceStep};
pub use error::{KrError, Result};
pub use genfun::{ProductRecipe, RecipeBook, Role, SeriesRecipe, SeriesVerdict};
pub use gordon::{Cluster, ClusterDecomposition, MarkedPartition, PartRef};
pub use partitions::{CountTable, Family, FamilyRule, Partition, VariantId, Violation};
pub use qseries::{Coeff, LaurentFactor, TruncatedSeries};
pub use verify::{CheckResult, Status, Suite, VerificationReport};
