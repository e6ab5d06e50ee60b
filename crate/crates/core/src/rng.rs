//! Counter-based random numbers.
//!
//! Every draw is a pure function of a key (seed, stream, counter...), so pair
//! `i` of a sample set or the noise at a point `x` can be produced without
//! touching any shared generator state.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hashes an ordered list of words into one 64-bit key.
pub fn hash_words(words: &[u64]) -> u64 {
    let mut acc = GOLDEN;
    for &w in words {
        acc = mix64(acc ^ mix64(w.wrapping_add(GOLDEN)));
    }
    acc
}

/// Maps a 64-bit word to a uniform double in `[0, 1)`.
#[inline]
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A SplitMix64 stream started from a hashed key.
#[derive(Debug, Clone)]
pub struct CounterRng {
    state: u64,
}

impl CounterRng {
    pub fn new(key: &[u64]) -> Self {
        Self {
            state: hash_words(key),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        unit_f64(self.next_u64())
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Log-uniform in `[lo, hi)`, both positive.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        (lo.ln() + (hi.ln() - lo.ln()) * self.next_f64()).exp()
    }

    /// A vector with independent coordinates uniform in `[-1, 1)`.
    pub fn cube(&mut self, dim: usize) -> Vec<f64> {
        (0..dim).map(|_| self.uniform(-1.0, 1.0)).collect()
    }
}

/// Canonical bit pattern of a coordinate: `-0.0` and `+0.0` hash alike.
#[inline]
pub fn coordinate_bits(v: f64) -> u64 {
    (v + 0.0).to_bits()
}
