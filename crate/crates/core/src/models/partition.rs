//! Number partitioning: split `1..N` into two positional halves with equal
//! sums and equal sums of squares.
//!
//! Group A is the first half of the permutation, group B the second, so the
//! usual swap moves explore exactly the two-set partitions. Cost is
//! `|ΔΣ| + |ΔΣ²|` over the signed imbalances; a variable's error grows with
//! its value when it sits on the heavy side of an imbalance (big culprits in
//! the heavy group score highest).
//!
//! `N` must be a multiple of 4: otherwise the target sums `N(N+1)/4` and
//! `N(N+1)(2N+1)/12` are not integers and no solution exists.

use crate::error::{Error, Result};
use crate::model::{Cost, ProblemModel};
use crate::perm::{Configuration, Value};

#[derive(Clone, Debug)]
pub struct PartitionModel {
    n: usize,
}

impl PartitionModel {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 || n % 4 != 0 {
            return Err(Error::InvalidSize {
                problem: "partition",
                size: n,
                reason: "size must be a positive multiple of 4",
            });
        }
        Ok(Self { n })
    }

    fn half(&self) -> usize {
        self.n / 2
    }

    /// Signed imbalances `(ΣA − ΣB, ΣA² − ΣB²)`.
    fn imbalances(&self, c: &Configuration) -> (i64, i64) {
        let mut d1 = 0i64;
        let mut d2 = 0i64;
        for i in 0..self.n {
            let v = i64::from(c[i]);
            let sign = if i < self.half() { 1 } else { -1 };
            d1 += sign * v;
            d2 += sign * v * v;
        }
        (d1, d2)
    }

    fn error_at(&self, c: &Configuration, i: usize, d1: i64, d2: i64) -> Cost {
        let in_a = i < self.half();
        let v = i64::from(c[i]);
        let mut total = 0;
        if d1 != 0 && (d1 > 0) == in_a {
            total += v * d1.abs();
        }
        if d2 != 0 && (d2 > 0) == in_a {
            total += v * v * d2.abs();
        }
        total
    }

    /// Cost after swapping a position in A with a position in B, given the
    /// current imbalances. Within-group swaps never reach here.
    fn cross_swap_cost(&self, c: &Configuration, d1: i64, d2: i64, i: usize, j: usize) -> Cost {
        let (a, b) = if i < self.half() { (i, j) } else { (j, i) };
        let va = i64::from(c[a]);
        let vb = i64::from(c[b]);
        let nd1 = d1 + 2 * (vb - va);
        let nd2 = d2 + 2 * (vb * vb - va * va);
        nd1.abs() + nd2.abs()
    }
}

impl ProblemModel for PartitionModel {
    fn name(&self) -> &'static str {
        "partition"
    }

    fn size(&self) -> usize {
        self.n
    }

    fn base_domain(&self) -> Vec<Value> {
        (1..=self.n as Value).collect()
    }

    fn cost_of_solution(&self, c: &Configuration) -> Cost {
        let (d1, d2) = self.imbalances(c);
        d1.abs() + d2.abs()
    }

    fn cost_on_variable(&self, c: &Configuration, i: usize) -> Cost {
        let (d1, d2) = self.imbalances(c);
        self.error_at(c, i, d1, d2)
    }

    fn cost_if_swap(&self, c: &Configuration, current_cost: Cost, i: usize, j: usize) -> Cost {
        let same_side = (i < self.half()) == (j < self.half());
        if same_side {
            // Groups are sets: order within a half never matters.
            return current_cost;
        }
        let (d1, d2) = self.imbalances(c);
        self.cross_swap_cost(c, d1, d2, i, j)
    }

    fn verify(&self, c: &Configuration) -> bool {
        // Re-derivation from the statement: equal sums and equal square
        // sums across the two halves.
        let h = self.half();
        let sum = |range: std::ops::Range<usize>| -> (i64, i64) {
            range.fold((0, 0), |(s, q), i| {
                let v = i64::from(c[i]);
                (s + v, q + v * v)
            })
        };
        let (sa, qa) = sum(0..h);
        let (sb, qb) = sum(h..self.n);
        sa == sb && qa == qb
    }

    fn project_errors(&self, c: &Configuration, out: &mut Vec<Cost>) {
        let (d1, d2) = self.imbalances(c);
        out.clear();
        out.extend((0..self.n).map(|i| self.error_at(c, i, d1, d2)));
    }

    fn project_swap_costs(&self, c: &Configuration, current_cost: Cost, i: usize, out: &mut Vec<Cost>) {
        let (d1, d2) = self.imbalances(c);
        let i_in_a = i < self.half();
        out.clear();
        out.extend((0..self.n).map(|j| {
            if j == i || (j < self.half()) == i_in_a {
                current_cost
            } else {
                self.cross_swap_cost(c, d1, d2, i, j)
            }
        }));
    }
}
