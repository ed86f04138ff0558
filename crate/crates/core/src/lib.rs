//! Adaptive-search local solver for permutation constraint problems.
//!
//! States are permutations of a fixed domain and the only move is a swap of
//! two positions, which keeps an all-different constraint implicit. The
//! solver repeatedly projects constraint violations onto variables, repairs
//! the worst variable through its best swap, and escapes local minima with
//! short-lived tabu marks, partial random resets, and full restarts.
//!
//! Four classic benchmark families ship as [`model::ProblemModel`]
//! implementations: magic squares, all-interval series, balanced number
//! partitioning, and Costas arrays. The [`parallel`] module runs many
//! independent walks racing for the first solution, and [`harness`] times
//! grids of (size × worker count) cells into speedup reports.
//!
//! ```
//! use adaptive_search::models::AllIntervalModel;
//! use adaptive_search::solver::{solve, SolverParams};
//! use adaptive_search::ProblemModel;
//!
//! let model = AllIntervalModel::new(8).unwrap();
//! let outcome = solve(&model, &SolverParams::for_size(8)).unwrap();
//! assert!(outcome.solved && model.verify(&outcome.solution));
//! ```

pub mod error;
pub mod harness;
pub mod model;
pub mod models;
pub mod parallel;
pub mod perm;
pub mod report;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};
pub use model::{Cost, ProblemModel};
pub use perm::{Configuration, Value};
pub use solver::{solve, SolveOutcome, SolverParams};
