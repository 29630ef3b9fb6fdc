//! Subcategory calculus shared by both ambient contexts.

pub mod exact;
pub mod lincat;

pub use exact::{all_ones_conflation, all_ones_middle, ConflationWitness, ExactCat, IdSet};
pub use lincat::{LinCat, LinMor};

use serde::{Deserialize, Serialize};

/// A summand- and sum-closed subcategory as written in configs: either an
/// explicit list of indecomposables or, in the derived context, a base cell
/// repeated with a period in degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubcatSpec {
    Items { items: Vec<String> },
    Pattern { cell: Vec<String>, period: i64 },
}
