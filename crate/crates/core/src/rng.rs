//! Deterministic pseudo-random generation.
//!
//! The solver's reproducibility contract is that one 64-bit seed pins every
//! stochastic choice (initial permutations, tie-breaks, reset transpositions),
//! and that per-worker/per-sample seeds derived from a base seed give
//! independent streams. The generator is therefore part of the interface: a
//! fixed, documented algorithm (xoshiro256** seeded through splitmix64) whose
//! exact output sequence is frozen in the test suite, rather than a library
//! generator whose stream may change between versions.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 state advance + output mix. Used for seeding and for
/// [`derive`]; never used as the main stream.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    mix64(*state)
}

/// The splitmix64 output function: a bijective 64-bit finalizer.
fn mix64(z: u64) -> u64 {
    let z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    let z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent stream seed from a base seed.
///
/// Injective in `stream` for a fixed `base`: `stream + 1` is multiplied by an
/// odd constant (a bijection mod 2^64), offset by `base`, and passed through
/// the bijective splitmix64 finalizer. Used for worker seeds and for the
/// benchmark harness's per-(size, workers, sample) seed chain.
pub fn derive(base: u64, stream: u64) -> u64 {
    mix64(base.wrapping_add(stream.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Seeded xoshiro256** generator.
///
/// Identical seeds produce identical draw sequences; bounded draws are
/// unbiased (rejection sampling, never modulo).
#[derive(Clone, Debug)]
pub struct RandomSource {
    s: [u64; 4],
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        let mut st = seed;
        let mut s = [0u64; 4];
        for slot in &mut s {
            *slot = splitmix64(&mut st);
        }
        if s == [0; 4] {
            // The all-zero state is the one fixed point of xoshiro; splitmix
            // seeding cannot realistically produce it, but keep the guard.
            s[0] = GOLDEN_GAMMA;
        }
        Self { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform draw in `[0, bound)`.
    ///
    /// Uses bitmask rejection: draws are masked to the smallest power-of-two
    /// range covering `bound` and rejected until they land inside, so every
    /// value is exactly equally likely. A forced choice (`bound == 1`)
    /// consumes no draw, which keeps single-candidate selections free.
    ///
    /// # Panics
    /// Panics if `bound == 0`.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "next_below bound must be positive");
        if bound == 1 {
            return 0;
        }
        let mask = u64::MAX >> (bound - 1).leading_zeros();
        loop {
            let v = self.next_u64() & mask;
            if v < bound {
                return v;
            }
        }
    }

    /// Uniform index into a slice of length `len`.
    ///
    /// # Panics
    /// Panics if `len == 0`.
    pub fn next_index(&mut self, len: usize) -> usize {
        self.next_below(len as u64) as usize
    }

    /// Fisher–Yates shuffle. Consumes exactly `xs.len() - 1` bounded draws
    /// (with bounds `n, n-1, ..., 2`), giving every permutation probability
    /// `1/n!`.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for j in (1..xs.len()).rev() {
            let i = self.next_index(j + 1);
            xs.swap(i, j);
        }
    }
}
