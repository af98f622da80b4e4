//! Reproducible per-replica random streams.
//!
//! Replica `r` of a run with master seed `s` draws from a ChaCha8 keystream
//! whose 256-bit key is `ChaCha8Rng::seed_from_u64(s)`'s key and whose
//! 64-bit stream id is `r`. The step index is the keystream word position, so
//! the draws of replica `r` at step `k` depend only on `(s, r, k)` and never
//! on scheduling. Results are therefore identical for any thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator type handed to chain steps.
pub type ChainRng = ChaCha8Rng;

/// Stream of replica `replica` under `master_seed`.
pub fn replica_stream(master_seed: u64, replica: u64) -> ChainRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(replica);
    rng.set_word_pos(0);
    rng
}

/// Runs `f` on a rayon pool limited to `threads` workers (0 = rayon default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
