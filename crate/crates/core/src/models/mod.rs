//! The four benchmark models and the name registry the CLI resolves
//! problems through.

pub mod all_interval;
pub mod costas;
pub mod magic_square;
pub mod partition;

pub use all_interval::AllIntervalModel;
pub use costas::CostasModel;
pub use magic_square::MagicSquareModel;
pub use partition::PartitionModel;

use crate::error::{Error, Result};
use crate::model::ProblemModel;

/// Registry keys accepted by [`build_model`], in registry order.
pub const PROBLEM_NAMES: [&str; 4] = ["magic-square", "all-interval", "partition", "costas"];

/// Builds a model by registry name.
///
/// `size` is the problem's natural parameter `N`: the grid side for
/// magic-square (so the model has `N²` variables), the sequence/permutation
/// length elsewhere.
pub fn build_model(problem: &str, size: usize) -> Result<Box<dyn ProblemModel>> {
    match problem {
        "magic-square" => Ok(Box::new(MagicSquareModel::new(size)?)),
        "all-interval" => Ok(Box::new(AllIntervalModel::new(size)?)),
        "partition" => Ok(Box::new(PartitionModel::new(size)?)),
        "costas" => Ok(Box::new(CostasModel::new(size)?)),
        other => Err(Error::UnknownProblem(other.to_string())),
    }
}
