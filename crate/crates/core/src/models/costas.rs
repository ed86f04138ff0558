//! Costas array: a permutation whose difference triangle has no repeated
//! entry in any row — equivalently, the displacement vectors between all
//! mark pairs are pairwise distinct.
//!
//! Row `d` (for `d = 1..N-1`) holds the `N-d` signed differences
//! `c[k+d] − c[k]`. Cost is the total surplus of duplicated entries across
//! rows; a variable's error counts its own entries that collide with
//! another entry in their row.

use crate::error::{Error, Result};
use crate::model::{Cost, ProblemModel};
use crate::perm::{Configuration, Value};

/// Per-row occurrence counts of difference values (offset by `n-1` so signed
/// differences index into `0..2n-2`), with the total duplicate surplus
/// maintained incrementally. Lets swap probes touch only affected entries.
struct RowCounts {
    rows: Vec<Vec<u32>>,
    total: Cost,
}

impl RowCounts {
    fn add(&mut self, d: usize, slot: usize) {
        let cell = &mut self.rows[d - 1][slot];
        if *cell >= 1 {
            self.total += 1;
        }
        *cell += 1;
    }

    fn remove(&mut self, d: usize, slot: usize) {
        let cell = &mut self.rows[d - 1][slot];
        *cell -= 1;
        if *cell >= 1 {
            self.total -= 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct CostasModel {
    n: usize,
}

impl CostasModel {
    pub fn new(n: usize) -> Result<Self> {
        // Orders 1 and 2 are degenerate but well-defined (every permutation
        // qualifies); only the empty array is meaningless.
        if n == 0 {
            return Err(Error::InvalidSize {
                problem: "costas",
                size: 0,
                reason: "array must have at least one mark",
            });
        }
        Ok(Self { n })
    }

    fn slot(&self, difference: Value) -> usize {
        (difference + (self.n as Value - 1)) as usize
    }

    fn entry(&self, c: &Configuration, d: usize, k: usize) -> Value {
        c[k + d] - c[k]
    }

    /// Entry `(d, k)` as it would read with positions `i`, `j` swapped.
    fn swapped_entry(&self, c: &Configuration, d: usize, k: usize, i: usize, j: usize) -> Value {
        let at = |p: usize| -> Value {
            if p == i {
                c[j]
            } else if p == j {
                c[i]
            } else {
                c[p]
            }
        };
        at(k + d) - at(k)
    }

    fn row_counts(&self, c: &Configuration) -> RowCounts {
        let width = 2 * self.n.max(1) - 1;
        let mut counts = RowCounts {
            rows: vec![vec![0; width]; self.n.saturating_sub(1)],
            total: 0,
        };
        for d in 1..self.n {
            for k in 0..self.n - d {
                counts.add(d, self.slot(self.entry(c, d, k)));
            }
        }
        counts
    }

    /// Entry positions of row `d` that a swap of `i` and `j` can change:
    /// each position participates in row `d` as a left endpoint (`k = p`)
    /// and as a right endpoint (`k = p − d`).
    fn affected_entries(&self, d: usize, i: usize, j: usize) -> ([usize; 4], usize) {
        let len = self.n - d;
        let mut ks = [0usize; 4];
        let mut m = 0;
        for cand in [i.wrapping_sub(d), i, j.wrapping_sub(d), j] {
            if cand < len && !ks[..m].contains(&cand) {
                ks[m] = cand;
                m += 1;
            }
        }
        (ks, m)
    }

    /// Total cost with `i`, `j` swapped, computed against `counts` and rolled
    /// back before returning, so one `RowCounts` serves many probes.
    fn probe_swap(
        &self,
        counts: &mut RowCounts,
        c: &Configuration,
        i: usize,
        j: usize,
        touched: &mut Vec<(usize, usize, usize)>,
    ) -> Cost {
        touched.clear();
        for d in 1..self.n {
            let (ks, m) = self.affected_entries(d, i, j);
            for &k in &ks[..m] {
                let old = self.slot(self.entry(c, d, k));
                let new = self.slot(self.swapped_entry(c, d, k, i, j));
                if old != new {
                    counts.remove(d, old);
                    counts.add(d, new);
                    touched.push((d, old, new));
                }
            }
        }
        let cost = counts.total;
        for &(d, old, new) in touched.iter().rev() {
            counts.remove(d, new);
            counts.add(d, old);
        }
        cost
    }
}

impl ProblemModel for CostasModel {
    fn name(&self) -> &'static str {
        "costas"
    }

    fn size(&self) -> usize {
        self.n
    }

    fn base_domain(&self) -> Vec<Value> {
        (1..=self.n as Value).collect()
    }

    fn cost_of_solution(&self, c: &Configuration) -> Cost {
        let width = 2 * self.n.max(1) - 1;
        let mut occ = vec![0u32; width];
        let mut total = 0;
        for d in 1..self.n {
            for k in 0..self.n - d {
                let s = self.slot(self.entry(c, d, k));
                if occ[s] >= 1 {
                    total += 1;
                }
                occ[s] += 1;
            }
            for k in 0..self.n - d {
                occ[self.slot(self.entry(c, d, k))] = 0;
            }
        }
        total
    }

    fn cost_on_variable(&self, c: &Configuration, i: usize) -> Cost {
        let width = 2 * self.n.max(1) - 1;
        let mut occ = vec![0u32; width];
        let mut total = 0;
        for d in 1..self.n {
            for k in 0..self.n - d {
                occ[self.slot(self.entry(c, d, k))] += 1;
            }
            if i >= d && occ[self.slot(self.entry(c, d, i - d))] >= 2 {
                total += 1;
            }
            if i + d < self.n && occ[self.slot(self.entry(c, d, i))] >= 2 {
                total += 1;
            }
            for k in 0..self.n - d {
                occ[self.slot(self.entry(c, d, k))] = 0;
            }
        }
        total
    }

    fn cost_if_swap(&self, c: &Configuration, current_cost: Cost, i: usize, j: usize) -> Cost {
        if i == j {
            return current_cost;
        }
        let mut counts = self.row_counts(c);
        let mut touched = Vec::new();
        self.probe_swap(&mut counts, c, i, j, &mut touched)
    }

    fn verify(&self, c: &Configuration) -> bool {
        // Straight from the statement: no repeated difference within a row.
        let width = 2 * self.n.max(1) - 1;
        for d in 1..self.n {
            let mut seen = vec![false; width];
            for k in 0..self.n - d {
                let s = self.slot(c[k + d] - c[k]);
                if seen[s] {
                    return false;
                }
                seen[s] = true;
            }
        }
        true
    }

    fn project_errors(&self, c: &Configuration, out: &mut Vec<Cost>) {
        let counts = self.row_counts(c);
        out.clear();
        out.extend((0..self.n).map(|i| {
            let mut total = 0;
            for d in 1..self.n {
                let row = &counts.rows[d - 1];
                if i >= d && row[self.slot(self.entry(c, d, i - d))] >= 2 {
                    total += 1;
                }
                if i + d < self.n && row[self.slot(self.entry(c, d, i))] >= 2 {
                    total += 1;
                }
            }
            total
        }));
    }

    fn project_swap_costs(&self, c: &Configuration, current_cost: Cost, i: usize, out: &mut Vec<Cost>) {
        let mut counts = self.row_counts(c);
        let mut touched = Vec::with_capacity(4 * self.n);
        out.clear();
        for j in 0..self.n {
            if j == i {
                out.push(current_cost);
            } else {
                out.push(self.probe_swap(&mut counts, c, i, j, &mut touched));
            }
        }
    }
}
