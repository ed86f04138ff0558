//! The benchmark model interface.
//!
//! A model turns a permutation into numbers the solver can act on: a total
//! cost (zero exactly at solutions), a per-variable error used to pick the
//! culprit variable, and the cost each candidate swap would produce. A
//! separate verifier re-derives satisfaction from the problem statement so
//! that cost functions are checked against an independent route.

use crate::perm::{Configuration, Value};

/// Exact integer cost. All benchmark metrics are integral, which makes the
/// incremental-equals-full contract testable with `==` rather than
/// tolerances. `i64` because partition projections reach `v² · |Δ²|` scale.
pub type Cost = i64;

/// A permutation benchmark.
///
/// Contract, for every permutation `c` of [`base_domain`](Self::base_domain):
///
/// * `cost_of_solution(c) >= 0`, and `cost_of_solution(c) == 0` if and only
///   if `verify(c)`;
/// * `cost_on_variable(c, i) >= 0`, and is 0 for every `i` when `c` is a
///   solution;
/// * `cost_if_swap(c, cost, i, j)` equals `cost_of_solution` of the
///   configuration with positions `i, j` exchanged — models may use deltas,
///   but the result must match a full recompute exactly.
///
/// Instances are immutable after construction and shared state is forbidden:
/// parallel search hands each worker its own instance.
pub trait ProblemModel: Send + Sync {
    /// Registry name, e.g. `"costas"`.
    fn name(&self) -> &'static str;

    /// Number of variables (positions in the permutation).
    fn size(&self) -> usize;

    /// The value set being permuted, in canonical order.
    fn base_domain(&self) -> Vec<Value>;

    fn cost_of_solution(&self, c: &Configuration) -> Cost;

    /// Total error projected onto variable `i`: combined violation of the
    /// constraints variable `i` appears in.
    fn cost_on_variable(&self, c: &Configuration, i: usize) -> Cost;

    /// Cost of the configuration obtained by swapping positions `i` and `j`.
    ///
    /// The default recomputes from scratch on a swapped copy; models
    /// override it with delta evaluation where that is cheaper.
    fn cost_if_swap(&self, c: &Configuration, _current_cost: Cost, i: usize, j: usize) -> Cost {
        let mut probe = c.clone();
        probe.swap(i, j);
        self.cost_of_solution(&probe)
    }

    /// Independent solution check derived from the problem statement, not
    /// from any cost function.
    fn verify(&self, c: &Configuration) -> bool;

    /// Fills `out` with `cost_on_variable(c, i)` for every `i`.
    ///
    /// The default calls [`cost_on_variable`](Self::cost_on_variable) per
    /// variable; models override it to share per-configuration work (line
    /// sums, occurrence counts) across all variables. Must produce the same
    /// values as the per-variable route.
    fn project_errors(&self, c: &Configuration, out: &mut Vec<Cost>) {
        out.clear();
        out.extend((0..self.size()).map(|i| self.cost_on_variable(c, i)));
    }

    /// Fills `out` with `cost_if_swap(c, current_cost, i, j)` for every `j`;
    /// slot `i` holds `current_cost` (the self-swap changes nothing).
    ///
    /// Same override rationale and equivalence requirement as
    /// [`project_errors`](Self::project_errors).
    fn project_swap_costs(&self, c: &Configuration, current_cost: Cost, i: usize, out: &mut Vec<Cost>) {
        out.clear();
        out.extend((0..self.size()).map(|j| {
            if j == i {
                current_cost
            } else {
                self.cost_if_swap(c, current_cost, i, j)
            }
        }));
    }
}
