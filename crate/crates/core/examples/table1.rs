//! Mean and standard deviation of the defect over the (n x alpha) grid on the
//! unit sphere.
//!
//! ```bash
//! cargo run --release -p commutator-metric --example table1 -- [trials] [max_n]
//! ```
//!
//! Defaults: 10000 trials, n up to 50.

use commutator_metric::montecarlo::{run_experiment, ExperimentConfig};
use commutator_metric::report::sig4;
use commutator_metric::theory;

fn main() -> commutator_metric::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: u64 = args.next().map_or(10_000, |s| s.parse().expect("trials"));
    let max_n: usize = args.next().map_or(50, |s| s.parse().expect("max_n"));

    let mut cfg = ExperimentConfig {
        trials,
        ..ExperimentConfig::default()
    };
    cfg.n_list.retain(|&n| n <= max_n);

    let cells = run_experiment(&cfg)?;
    println!("{:>4} {:>6} {:>10} {:>10} {:>10} {:>10}", "n", "alpha", "mean", "std", "P(<0)", "predicted");
    for cell in &cells {
        let predicted = theory::predict(cell.ensemble, cell.n, cell.alpha)?
            .expected_value
            .map_or("-".to_string(), |m| sig4(m.value));
        println!(
            "{:>4} {:>6} {:>10} {:>10} {:>10} {:>10}",
            cell.n,
            cell.alpha.to_string(),
            sig4(cell.stats.mean),
            sig4(cell.stats.std_dev),
            sig4(cell.stats.violation_rate),
            predicted
        );
    }
    Ok(())
}
