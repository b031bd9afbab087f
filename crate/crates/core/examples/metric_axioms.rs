//! Symmetry and identity hold, commuting pairs sit at distance zero, and the
//! triangle inequality sometimes fails.
//!
//! ```bash
//! cargo run -p commutator-metric --example metric_axioms
//! ```

use commutator_metric::metrics::{check_axioms, defect, distance};
use commutator_metric::sampling::{sample_triple, Ensemble, EnsembleKind};
use commutator_metric::{Alpha, Matrix};

fn main() -> commutator_metric::Result<()> {
    let e = Ensemble::new(EnsembleKind::UnitSphere, 3)?;
    let (mut all_hold, mut violations) = (0, 0);
    let trials = 2_000;
    for t in 0..trials {
        let [a, b, c] = sample_triple(e, 1, t);
        if check_axioms(&a, &b, Alpha::ONE)?.all_hold() {
            all_hold += 1;
        }
        if defect(&a, &b, &c, Alpha::ONE)?.violates() {
            violations += 1;
        }
    }
    println!("n = 3: symmetry/identity held for {all_hold}/{trials} pairs");
    println!("n = 3: triangle inequality failed for {violations}/{trials} triples");

    let a = Matrix::from_rows(&[[1.0, 2.0, 0.0], [0.0, 3.0, 1.0], [4.0, 0.0, 1.0]])?;
    let a2 = a.multiply(&a)?;
    println!("d(A, A^2) = {:e}", distance(&a, &a2, Alpha::ONE)?);
    let d1 = Matrix::diagonal(&[1.0, 2.0, 3.0])?;
    let d2 = Matrix::diagonal(&[-4.0, 0.0, 9.0])?;
    println!("d(D1, D2) = {:e}  (but D1 != D2)", distance(&d1, &d2, Alpha::ONE)?);
    Ok(())
}
