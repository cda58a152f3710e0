//! Fixed inputs shared by the benchmarks.

use qfold_core::corpus::{self, CorpusEntry};
use qfold_core::module_lab::random::{random_theta_fixed, ThetaStableModule};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn entry(name: &str) -> CorpusEntry {
    corpus::load(name).expect("built-in corpus entry")
}

/// A stable module on `name` with `theta(M) = D . M`, dimension `v` and
/// framing `w` at every vertex.
pub fn theta_fixed(name: &str, v: usize, w: usize, seed: u64) -> (CorpusEntry, ThetaStableModule) {
    let e = entry(name);
    let n = e.quiver.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_theta_fixed(&e.quiver.doubled(), &e.automorphism, &vec![v; n], &vec![w; n], &mut rng)
        .expect("generator succeeds on corpus entries");
    (e, m)
}
