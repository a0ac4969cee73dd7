//! Stable seed derivation for per-cell and per-instance RNG streams.
//!
//! `std`'s `DefaultHasher` is not stable across releases, so the mixing
//! here is FNV-1a over the key bytes followed by a SplitMix64 finalizer.

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Incrementally hashes heterogeneous key parts into a 64-bit seed.
#[derive(Debug, Clone)]
pub struct SeedHasher(u64);

impl SeedHasher {
    pub fn new(base: u64) -> Self {
        let mut h = Self(FNV_OFFSET);
        h.bytes(&base.to_le_bytes());
        h
    }

    fn bytes(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.0 ^= u64::from(*b);
            self.0 = self.0.wrapping_mul(FNV_PRIME);
        }
    }

    pub fn str(mut self, s: &str) -> Self {
        self.bytes(&(s.len() as u64).to_le_bytes());
        self.bytes(s.as_bytes());
        self
    }

    pub fn u64(mut self, v: u64) -> Self {
        self.bytes(&v.to_le_bytes());
        self
    }

    pub fn f64(self, v: f64) -> Self {
        self.u64(v.to_bits())
    }

    pub fn finish(&self) -> u64 {
        splitmix(self.0)
    }
}

/// Seed for one comparison cell: `(base, instance, M, k, repetition)`.
pub fn cell_seed(base: u64, instance: &str, m: f64, k: usize, repetition: usize) -> u64 {
    SeedHasher::new(base)
        .str(instance)
        .f64(m)
        .u64(k as u64)
        .u64(repetition as u64)
        .finish()
}
