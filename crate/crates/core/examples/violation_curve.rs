//! Empirical probability of a triangle-inequality violation as n grows,
//! against the Chebyshev bound for the squared distance.
//!
//! ```bash
//! cargo run --release -p commutator-metric --example violation_curve
//! ```

use commutator_metric::montecarlo::violation_curve;
use commutator_metric::{Alpha, EnsembleKind, DEFAULT_SEED};

fn main() -> commutator_metric::Result<()> {
    let n_list = [2, 3, 4, 5, 10, 25, 50];
    for alpha in [Alpha::HALF, Alpha::ONE, Alpha::TWO] {
        println!("alpha = {alpha}");
        let curve = violation_curve(EnsembleKind::UnitSphere, &n_list, alpha, 10_000, DEFAULT_SEED)?;
        for p in curve {
            let bound = p
                .chebyshev_bound
                .map_or("n/a".to_string(), |b| format!("{b:.4}"));
            println!(
                "  n = {:>3}  P(Delta < 0) = {:.4} +- {:.4}  (bound {bound})",
                p.n, p.violation_rate, p.violation_std_error
            );
        }
    }
    Ok(())
}
