//! Moments of `||AB - BA||_F` from those of its square: the mean tracks
//! `sqrt(E X)` to relative O(n^-2) and the variance decays like n^-3.
//!
//! ```bash
//! cargo run --release -p commutator-metric --example delta_method
//! ```

use commutator_metric::montecarlo::sample_sq_norms;
use commutator_metric::theory::{self, delta_method_check, log_log_slope};
use commutator_metric::{Ensemble, EnsembleKind, DEFAULT_SEED};

fn main() -> commutator_metric::Result<()> {
    let kind = EnsembleKind::UnitSphere;
    let mut points = Vec::new();
    println!("{:>4} {:>10} {:>10} {:>9} {:>10} {:>8}", "n", "E sqrt X", "sqrt(mu)", "rel", "Var sqrt X", "ratio");
    for n in [5, 10, 25, 50, 100] {
        let norms = sample_sq_norms(Ensemble::new(kind, n)?, 10_000, DEFAULT_SEED, false)?;
        let xs: Vec<f64> = norms.iter().map(|t| t[0]).collect();
        let mu = theory::expected_sq_norm(kind, n)?.value;
        let sigma2 = theory::variance_sq_norm(kind, n)?.value;
        let r = delta_method_check(mu, sigma2, &xs)?;
        println!(
            "{n:>4} {:>10.6} {:>10.6} {:>+9.5} {:>10.3e} {:>8.3}",
            r.root_mean, r.predicted_root_mean, r.relative_mean_deviation, r.root_variance, r.variance_ratio
        );
        if n >= 10 {
            points.push((n as f64, r.root_variance));
        }
    }
    println!("log-log slope of Var(sqrt X) over n >= 10: {:.3}", log_log_slope(&points)?);
    Ok(())
}
