//! Reproducible seeding for parallel Monte Carlo.
//!
//! A run has one root seed. Work is cut into fixed-size blocks and every block
//! draws from its own ChaCha stream keyed by `(root, domain, block index)`, so
//! the numbers a block sees never depend on how blocks are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const DEFAULT_SEED: u64 = 20_030_219;
pub const BLOCK: u64 = 1024;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent generator for `(root, domain, stream)`.
pub fn stream_rng(root: u64, domain: &str, stream: u64) -> ChaCha8Rng {
    let tag = domain.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(root ^ splitmix64(tag)));
    rng.set_stream(stream);
    rng
}

/// Runs `f(rng, count)` over `total` trials cut into blocks of [`BLOCK`], in
/// parallel, and returns the per-block results in block order.
pub fn run_blocks<T, F>(total: u64, root: u64, domain: &str, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    let blocks = total.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let count = BLOCK.min(total - b * BLOCK);
            let mut rng = stream_rng(root, domain, b);
            f(&mut rng, count)
        })
        .collect()
}
