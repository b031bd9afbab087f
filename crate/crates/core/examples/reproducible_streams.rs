//! Every trial draws from its own keyed stream, so any trial can be
//! regenerated alone and thread counts never change results.
//!
//! ```bash
//! cargo run -p commutator-metric --example reproducible_streams
//! ```

use commutator_metric::montecarlo::{sample_sq_norms, with_threads};
use commutator_metric::sampling::{sample, sample_triple};
use commutator_metric::{Ensemble, EnsembleKind, SeedSpec, Slot, DEFAULT_SEED};

fn main() -> commutator_metric::Result<()> {
    let e = Ensemble::new(EnsembleKind::GaussianIid, 4)?;

    let triple = sample_triple(e, DEFAULT_SEED, 1234);
    let b_alone = sample(e, SeedSpec::new(DEFAULT_SEED, 1234, Slot::B));
    println!("trial 1234, slot B regenerated alone: identical = {}", triple[1] == b_alone);
    println!("stream key: {:02x?}", SeedSpec::new(DEFAULT_SEED, 1234, Slot::B).key());

    let one = with_threads(1, || sample_sq_norms(e, 5_000, DEFAULT_SEED, false))??;
    let many = with_threads(8, || sample_sq_norms(e, 5_000, DEFAULT_SEED, false))??;
    println!("5000 trials on 1 vs 8 threads: bit-identical = {}", one == many);
    Ok(())
}
