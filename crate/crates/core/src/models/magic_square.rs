//! Magic square: place `1..N²` on an `N×N` grid so that every row, every
//! column, and both diagonals sum to the magic constant `M = N(N²+1)/2`.
//!
//! Cost is the summed absolute deviation `|line_sum − M|` over all `2N + 2`
//! lines; a variable's error is the deviation of the lines through its cell.

use crate::error::{Error, Result};
use crate::model::{Cost, ProblemModel};
use crate::perm::{Configuration, Value};

/// Row/column/diagonal sums of one configuration, shared by the bulk
/// projection paths so per-variable and per-swap work stays O(1).
struct LineSums {
    rows: Vec<i64>,
    cols: Vec<i64>,
    diag: i64,
    anti: i64,
}

#[derive(Clone, Debug)]
pub struct MagicSquareModel {
    side: usize,
    magic: i64,
}

impl MagicSquareModel {
    /// `side` is the grid edge `N`; the model has `N²` variables.
    pub fn new(side: usize) -> Result<Self> {
        if side < 3 {
            return Err(Error::InvalidSize {
                problem: "magic-square",
                size: side,
                reason: "no magic square of order below 3 exists",
            });
        }
        let s = side as i64;
        Ok(Self {
            side,
            magic: s * (s * s + 1) / 2,
        })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// `N(N²+1)/2`, the required sum of every line.
    pub fn magic_constant(&self) -> i64 {
        self.magic
    }

    fn row_of(&self, k: usize) -> usize {
        k / self.side
    }

    fn col_of(&self, k: usize) -> usize {
        k % self.side
    }

    fn on_diag(&self, k: usize) -> bool {
        self.row_of(k) == self.col_of(k)
    }

    fn on_anti(&self, k: usize) -> bool {
        self.row_of(k) + self.col_of(k) == self.side - 1
    }

    fn row_sum(&self, c: &Configuration, r: usize) -> i64 {
        (0..self.side).map(|t| i64::from(c[r * self.side + t])).sum()
    }

    fn col_sum(&self, c: &Configuration, col: usize) -> i64 {
        (0..self.side).map(|t| i64::from(c[t * self.side + col])).sum()
    }

    fn diag_sum(&self, c: &Configuration) -> i64 {
        (0..self.side).map(|t| i64::from(c[t * self.side + t])).sum()
    }

    fn anti_sum(&self, c: &Configuration) -> i64 {
        (0..self.side)
            .map(|t| i64::from(c[t * self.side + (self.side - 1 - t)]))
            .sum()
    }

    fn line_sums(&self, c: &Configuration) -> LineSums {
        LineSums {
            rows: (0..self.side).map(|r| self.row_sum(c, r)).collect(),
            cols: (0..self.side).map(|col| self.col_sum(c, col)).collect(),
            diag: self.diag_sum(c),
            anti: self.anti_sum(c),
        }
    }

    fn deviation(&self, sum: i64) -> Cost {
        (sum - self.magic).abs()
    }

    /// Change in `|sum − M|` when a line's sum moves by `delta`.
    fn redeviation(&self, sum: i64, delta: i64) -> Cost {
        (sum + delta - self.magic).abs() - (sum - self.magic).abs()
    }

    /// Total cost change for swapping positions `i` and `j`, given the
    /// current line sums. A line both positions share keeps its sum, so only
    /// lines containing exactly one of the two endpoints contribute.
    fn swap_delta(&self, sums: &LineSums, c: &Configuration, i: usize, j: usize) -> Cost {
        let vi = i64::from(c[i]);
        let vj = i64::from(c[j]);
        let (ri, ci) = (self.row_of(i), self.col_of(i));
        let (rj, cj) = (self.row_of(j), self.col_of(j));
        let mut delta = 0;
        if ri != rj {
            delta += self.redeviation(sums.rows[ri], vj - vi);
            delta += self.redeviation(sums.rows[rj], vi - vj);
        }
        if ci != cj {
            delta += self.redeviation(sums.cols[ci], vj - vi);
            delta += self.redeviation(sums.cols[cj], vi - vj);
        }
        let (di, dj) = (self.on_diag(i), self.on_diag(j));
        if di != dj {
            delta += self.redeviation(sums.diag, if di { vj - vi } else { vi - vj });
        }
        let (ai, aj) = (self.on_anti(i), self.on_anti(j));
        if ai != aj {
            delta += self.redeviation(sums.anti, if ai { vj - vi } else { vi - vj });
        }
        delta
    }
}

impl ProblemModel for MagicSquareModel {
    fn name(&self) -> &'static str {
        "magic-square"
    }

    fn size(&self) -> usize {
        self.side * self.side
    }

    fn base_domain(&self) -> Vec<Value> {
        (1..=(self.side * self.side) as Value).collect()
    }

    fn cost_of_solution(&self, c: &Configuration) -> Cost {
        let sums = self.line_sums(c);
        sums.rows.iter().map(|&s| self.deviation(s)).sum::<Cost>()
            + sums.cols.iter().map(|&s| self.deviation(s)).sum::<Cost>()
            + self.deviation(sums.diag)
            + self.deviation(sums.anti)
    }

    fn cost_on_variable(&self, c: &Configuration, k: usize) -> Cost {
        let mut total = self.deviation(self.row_sum(c, self.row_of(k)))
            + self.deviation(self.col_sum(c, self.col_of(k)));
        if self.on_diag(k) {
            total += self.deviation(self.diag_sum(c));
        }
        if self.on_anti(k) {
            total += self.deviation(self.anti_sum(c));
        }
        total
    }

    fn cost_if_swap(&self, c: &Configuration, current_cost: Cost, i: usize, j: usize) -> Cost {
        // Only the ≤ 6 lines through i or j can change; sum them on the fly.
        let vi = i64::from(c[i]);
        let vj = i64::from(c[j]);
        let (ri, ci) = (self.row_of(i), self.col_of(i));
        let (rj, cj) = (self.row_of(j), self.col_of(j));
        let mut delta = 0;
        if ri != rj {
            delta += self.redeviation(self.row_sum(c, ri), vj - vi);
            delta += self.redeviation(self.row_sum(c, rj), vi - vj);
        }
        if ci != cj {
            delta += self.redeviation(self.col_sum(c, ci), vj - vi);
            delta += self.redeviation(self.col_sum(c, cj), vi - vj);
        }
        let (di, dj) = (self.on_diag(i), self.on_diag(j));
        if di != dj {
            delta += self.redeviation(self.diag_sum(c), if di { vj - vi } else { vi - vj });
        }
        let (ai, aj) = (self.on_anti(i), self.on_anti(j));
        if ai != aj {
            delta += self.redeviation(self.anti_sum(c), if ai { vj - vi } else { vi - vj });
        }
        current_cost + delta
    }

    fn verify(&self, c: &Configuration) -> bool {
        // Re-derivation straight from the definition, no cost machinery.
        let n = self.side;
        for r in 0..n {
            if (0..n).map(|t| i64::from(c[r * n + t])).sum::<i64>() != self.magic {
                return false;
            }
        }
        for col in 0..n {
            if (0..n).map(|t| i64::from(c[t * n + col])).sum::<i64>() != self.magic {
                return false;
            }
        }
        if (0..n).map(|t| i64::from(c[t * n + t])).sum::<i64>() != self.magic {
            return false;
        }
        (0..n).map(|t| i64::from(c[t * n + (n - 1 - t)])).sum::<i64>() == self.magic
    }

    fn project_errors(&self, c: &Configuration, out: &mut Vec<Cost>) {
        let sums = self.line_sums(c);
        out.clear();
        out.extend((0..self.size()).map(|k| {
            let mut total = self.deviation(sums.rows[self.row_of(k)])
                + self.deviation(sums.cols[self.col_of(k)]);
            if self.on_diag(k) {
                total += self.deviation(sums.diag);
            }
            if self.on_anti(k) {
                total += self.deviation(sums.anti);
            }
            total
        }));
    }

    fn project_swap_costs(&self, c: &Configuration, current_cost: Cost, i: usize, out: &mut Vec<Cost>) {
        let sums = self.line_sums(c);
        out.clear();
        out.extend((0..self.size()).map(|j| {
            if j == i {
                current_cost
            } else {
                current_cost + self.swap_delta(&sums, c, i, j)
            }
        }));
    }
}
