//! Verification engine for cotorsion pairs, their hearts and cohearts over
//! linear Nakayama algebras and finite windows of `D^b(k A_n)`.

pub mod cli;
pub mod error;
pub mod dercat;
pub mod exactfield;
pub mod exec;
pub mod funcat;
pub mod hearts;
pub mod modcat;
pub mod pairs;

pub use error::{Error, Result};
