//! All-interval series: arrange `0..N-1` so that the absolute differences of
//! consecutive elements are all distinct (a permutation of `1..N-1`).
//!
//! Cost counts the missing distances: `(N-1) − #distinct differences`. A
//! variable's error is how many of its (up to two) adjacent differences are
//! duplicated values.

use crate::error::{Error, Result};
use crate::model::{Cost, ProblemModel};
use crate::perm::{Configuration, Value};

/// Occurrence counts of the `N-1` consecutive distances, with the number of
/// distinct values tracked incrementally so swap probes are O(1) per probe.
struct DistanceCounts {
    occ: Vec<u32>,
    distinct: usize,
}

impl DistanceCounts {
    fn remove(&mut self, v: usize) {
        self.occ[v] -= 1;
        if self.occ[v] == 0 {
            self.distinct -= 1;
        }
    }

    fn add(&mut self, v: usize) {
        if self.occ[v] == 0 {
            self.distinct += 1;
        }
        self.occ[v] += 1;
    }
}

#[derive(Clone, Debug)]
pub struct AllIntervalModel {
    n: usize,
}

impl AllIntervalModel {
    pub fn new(n: usize) -> Result<Self> {
        // N = 1 has zero differences and is trivially solved; only the
        // empty series is meaningless.
        if n == 0 {
            return Err(Error::InvalidSize {
                problem: "all-interval",
                size: 0,
                reason: "series must have at least one element",
            });
        }
        Ok(Self { n })
    }

    fn distance(&self, c: &Configuration, slot: usize) -> usize {
        (c[slot + 1] - c[slot]).unsigned_abs() as usize
    }

    /// Distance at `slot` as it would read with positions `i`, `j` swapped.
    fn swapped_distance(&self, c: &Configuration, slot: usize, i: usize, j: usize) -> usize {
        let at = |p: usize| -> Value {
            if p == i {
                c[j]
            } else if p == j {
                c[i]
            } else {
                c[p]
            }
        };
        (at(slot + 1) - at(slot)).unsigned_abs() as usize
    }

    fn counts(&self, c: &Configuration) -> DistanceCounts {
        let mut counts = DistanceCounts {
            occ: vec![0; self.n],
            distinct: 0,
        };
        for slot in 0..self.n - 1 {
            counts.add(self.distance(c, slot));
        }
        counts
    }

    /// The at-most-four distance slots a swap of `i` and `j` can touch,
    /// deduplicated.
    fn affected_slots(&self, i: usize, j: usize) -> ([usize; 4], usize) {
        let slot_count = self.n - 1;
        let mut slots = [0usize; 4];
        let mut len = 0;
        for cand in [i.wrapping_sub(1), i, j.wrapping_sub(1), j] {
            if cand < slot_count && !slots[..len].contains(&cand) {
                slots[len] = cand;
                len += 1;
            }
        }
        (slots, len)
    }
}

impl ProblemModel for AllIntervalModel {
    fn name(&self) -> &'static str {
        "all-interval"
    }

    fn size(&self) -> usize {
        self.n
    }

    fn base_domain(&self) -> Vec<Value> {
        (0..self.n as Value).collect()
    }

    fn cost_of_solution(&self, c: &Configuration) -> Cost {
        if self.n == 1 {
            return 0;
        }
        (self.n - 1 - self.counts(c).distinct) as Cost
    }

    fn cost_on_variable(&self, c: &Configuration, i: usize) -> Cost {
        if self.n == 1 {
            return 0;
        }
        let counts = self.counts(c);
        let mut total = 0;
        if i > 0 && counts.occ[self.distance(c, i - 1)] >= 2 {
            total += 1;
        }
        if i < self.n - 1 && counts.occ[self.distance(c, i)] >= 2 {
            total += 1;
        }
        total
    }

    fn cost_if_swap(&self, c: &Configuration, current_cost: Cost, i: usize, j: usize) -> Cost {
        if i == j || self.n == 1 {
            return current_cost;
        }
        let mut counts = self.counts(c);
        let (slots, len) = self.affected_slots(i, j);
        for &slot in &slots[..len] {
            counts.remove(self.distance(c, slot));
            counts.add(self.swapped_distance(c, slot, i, j));
        }
        (self.n - 1 - counts.distinct) as Cost
    }

    fn verify(&self, c: &Configuration) -> bool {
        // Straight from the statement: every consecutive absolute
        // difference occurs at most once.
        let mut seen = vec![false; self.n];
        for slot in 0..self.n.saturating_sub(1) {
            let d = (c[slot + 1] - c[slot]).unsigned_abs() as usize;
            if seen[d] {
                return false;
            }
            seen[d] = true;
        }
        true
    }

    fn project_errors(&self, c: &Configuration, out: &mut Vec<Cost>) {
        out.clear();
        if self.n == 1 {
            out.push(0);
            return;
        }
        let counts = self.counts(c);
        out.extend((0..self.n).map(|i| {
            let mut total = 0;
            if i > 0 && counts.occ[self.distance(c, i - 1)] >= 2 {
                total += 1;
            }
            if i < self.n - 1 && counts.occ[self.distance(c, i)] >= 2 {
                total += 1;
            }
            total
        }));
    }

    fn project_swap_costs(&self, c: &Configuration, current_cost: Cost, i: usize, out: &mut Vec<Cost>) {
        out.clear();
        if self.n == 1 {
            out.push(current_cost);
            return;
        }
        let mut counts = self.counts(c);
        let mut removed = [0usize; 4];
        let mut added = [0usize; 4];
        for j in 0..self.n {
            if j == i {
                out.push(current_cost);
                continue;
            }
            let (slots, len) = self.affected_slots(i, j);
            for (k, &slot) in slots[..len].iter().enumerate() {
                removed[k] = self.distance(c, slot);
                added[k] = self.swapped_distance(c, slot, i, j);
                counts.remove(removed[k]);
                counts.add(added[k]);
            }
            out.push((self.n - 1 - counts.distinct) as Cost);
            for k in (0..len).rev() {
                counts.remove(added[k]);
                counts.add(removed[k]);
            }
        }
    }
}
