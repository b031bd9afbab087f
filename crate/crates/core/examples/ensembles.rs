//! The squared commutator norm under all three ensembles.
//!
//! ```bash
//! cargo run --release -p commutator-metric --example ensembles
//! ```

use commutator_metric::montecarlo::{pair_norm_stats, sample_sq_norms};
use commutator_metric::theory::{self, Exactness};
use commutator_metric::{Ensemble, EnsembleKind, DEFAULT_SEED};

fn main() -> commutator_metric::Result<()> {
    for kind in EnsembleKind::ALL {
        println!("{kind}");
        for n in [5, 10, 25] {
            let norms = sample_sq_norms(Ensemble::new(kind, n)?, 10_000, DEFAULT_SEED, false)?;
            let (sq, _) = pair_norm_stats(&norms);
            let mean = theory::expected_sq_norm(kind, n)?;
            let var = theory::variance_sq_norm(kind, n)?;
            let tag = match mean.exactness {
                Exactness::Exact => "exact",
                Exactness::LeadingOrder => "leading order",
                Exactness::OrderOnly => "order only",
            };
            println!(
                "  n = {n:>2}: E X = {:>12.5} (closed form {:>12.5}, {tag}), Var X = {:>10.4e} (leading {:>10.4e})",
                sq.mean,
                mean.value,
                sq.variance(),
                var.value
            );
        }
    }
    Ok(())
}
