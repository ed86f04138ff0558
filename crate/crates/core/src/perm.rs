//! Permutation configurations.
//!
//! A [`Configuration`] is a full assignment for a permutation problem: every
//! variable holds one value from the model's base domain and no value repeats
//! (the all-different constraint is implicit). Moves are value swaps between
//! two positions, so the permutation invariant can never be violated by
//! search.

use std::fmt;
use std::ops::Index;

use crate::rng::RandomSource;

/// The value type assigned to variables. All four benchmark domains are
/// small integer ranges; costs use a wider type ([`crate::model::Cost`]).
pub type Value = i32;

/// An assignment `values[i] = value of variable i`, always a permutation of
/// the base domain it was built from. Length is fixed for its lifetime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    values: Vec<Value>,
}

impl Configuration {
    /// Wraps an explicit assignment.
    ///
    /// # Panics
    /// Panics if `values` is empty; zero-variable configurations are
    /// meaningless.
    pub fn new(values: Vec<Value>) -> Self {
        assert!(!values.is_empty(), "configuration must not be empty");
        Self { values }
    }

    /// A uniformly random permutation of `domain` (Fisher–Yates contract:
    /// every arrangement has probability `1/n!`).
    ///
    /// # Panics
    /// Panics if `domain` is empty.
    pub fn shuffled(domain: &[Value], rng: &mut RandomSource) -> Self {
        let mut values = domain.to_vec();
        rng.shuffle(&mut values);
        Self::new(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: construction rejects empty assignments.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    /// Exchanges the values at positions `i` and `j`; every other position
    /// is untouched, so the permutation invariant is preserved.
    ///
    /// # Panics
    /// Panics if either index is out of range.
    pub fn swap(&mut self, i: usize, j: usize) {
        self.values.swap(i, j);
    }
}

impl Index<usize> for Configuration {
    type Output = Value;

    fn index(&self, i: usize) -> &Value {
        &self.values[i]
    }
}

/// Prints as `(3, 6, 0, 7, 2, 4, 5, 1)` — the certificate form used by the
/// CLI.
impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A uniformly random permutation of `0..n-1`.
///
/// # Panics
/// Panics if `n == 0`.
pub fn random_permutation(n: usize, rng: &mut RandomSource) -> Configuration {
    assert!(n >= 1, "permutation size must be at least 1");
    let domain: Vec<Value> = (0..n as Value).collect();
    Configuration::shuffled(&domain, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    #[test]
    fn single_element_permutation_is_the_only_one() {
        let mut rng = RandomSource::new(123);
        assert_eq!(random_permutation(1, &mut rng).values(), [0]);
    }

    #[test]
    fn same_seed_gives_same_permutation() {
        let a = random_permutation(3, &mut RandomSource::new(9));
        let b = random_permutation(3, &mut RandomSource::new(9));
        assert_eq!(a, b);
    }

    #[test]
    fn swap_exchanges_exactly_two_positions() {
        let mut c = Configuration::new(vec![0, 1, 2]);
        c.swap(0, 2);
        assert_eq!(c.values(), [2, 1, 0]);
    }

    #[test]
    fn self_swap_is_identity() {
        let mut c = Configuration::new(vec![0, 1, 2]);
        c.swap(1, 1);
        assert_eq!(c.values(), [0, 1, 2]);
    }

    #[test]
    #[should_panic]
    fn swap_out_of_range_panics() {
        Configuration::new(vec![0, 1, 2]).swap(0, 3);
    }

    #[test]
    #[should_panic(expected = "must not be empty")]
    fn empty_configuration_is_rejected() {
        Configuration::new(vec![]);
    }

    #[test]
    #[should_panic(expected = "at least 1")]
    fn zero_size_permutation_is_rejected() {
        random_permutation(0, &mut RandomSource::new(1));
    }

    #[test]
    fn display_uses_parenthesized_comma_form() {
        let c = Configuration::new(vec![3, 6, 0, 7, 2, 4, 5, 1]);
        assert_eq!(c.to_string(), "(3, 6, 0, 7, 2, 4, 5, 1)");
        assert_eq!(Configuration::new(vec![5]).to_string(), "(5)");
    }

    // All 120 permutations of 5 elements over 10^5 samples: each expected
    // 833.3 times, sigma = sqrt(1e5 * (1/120) * (119/120)) ~ 28.7, so a
    // 5-sigma band is +/- 144. Fixed seed; deterministic.
    #[test]
    fn random_permutation_is_uniform_within_five_sigma() {
        let mut rng = RandomSource::new(4242);
        let mut counts: HashMap<Vec<Value>, i64> = HashMap::new();
        for _ in 0..100_000 {
            let p = random_permutation(5, &mut rng);
            *counts.entry(p.values().to_vec()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 120, "every permutation must appear");
        for (perm, count) in counts {
            assert!(
                (count - 833).abs() <= 144,
                "permutation {perm:?} count {count} outside 833 +/- 144"
            );
        }
    }

    proptest! {
        #[test]
        fn shuffled_preserves_the_domain_multiset(n in 1usize..40, seed: u64) {
            let domain: Vec<Value> = (0..n as Value).collect();
            let c = Configuration::shuffled(&domain, &mut RandomSource::new(seed));
            let mut sorted = c.values().to_vec();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, domain);
        }

        #[test]
        fn swap_is_an_involution(n in 2usize..30, seed: u64, a: usize, b: usize) {
            let mut c = random_permutation(n, &mut RandomSource::new(seed));
            let original = c.clone();
            let (i, j) = (a % n, b % n);
            c.swap(i, j);
            c.swap(i, j);
            prop_assert_eq!(c, original);
        }
    }
}
