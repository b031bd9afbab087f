//! Expectation and spread of the squared-distance defect next to the closed
//! forms: `E = 2/n - 2/n^3`, `Var <= 72/n^4`.
//!
//! ```bash
//! cargo run --release -p commutator-metric --example theory_vs_sim
//! ```

use commutator_metric::montecarlo::theory_comparison;
use commutator_metric::{EnsembleKind, DEFAULT_SEED};

fn main() -> commutator_metric::Result<()> {
    let rows = theory_comparison(EnsembleKind::UnitSphere, &[5, 10, 25, 50, 100], 10_000, DEFAULT_SEED)?;
    println!(
        "{:>4} {:>10} {:>10} {:>8} {:>10} {:>10} {:>10} {:>10}",
        "n", "E D2", "2/n-2/n^3", "rel", "std D2", "std bound", "E D1", "predicted"
    );
    for r in rows {
        println!(
            "{:>4} {:>10.5} {:>10.5} {:>+8.4} {:>10.3e} {:>10.3e} {:>10.5} {:>10.5}",
            r.n,
            r.defect2.mean,
            r.theory_mean_d2,
            r.rel_dev_mean_d2(),
            r.defect2.std_dev,
            r.theory_var_bound_d2.sqrt(),
            r.defect1.mean,
            r.theory_mean_d1,
        );
    }
    Ok(())
}
