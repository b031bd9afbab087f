//! The 2x2 triple that breaks the triangle inequality for every exponent.
//!
//! ```bash
//! cargo run -p commutator-metric --example counterexample
//! ```

use commutator_metric::metrics::{counterexample_triple, defect};
use commutator_metric::Alpha;

fn main() -> commutator_metric::Result<()> {
    let [a, b, c] = counterexample_triple();
    println!("A =\n{a}B =\n{b}C =\n{c}");
    println!("[A,C] =\n{}", a.commutator(&c)?);

    for alpha in [0.5, 1.0, 2.0, 3.0] {
        let s = defect(&a, &b, &c, Alpha::new(alpha)?)?;
        println!(
            "alpha = {alpha:<3}  d(A,B) + d(B,C) - d(A,C) = {} + {} - {:.6} = {:+.6}",
            s.d_ab, s.d_bc, s.d_ac, s.defect
        );
    }
    // B = I commutes with everything, so d(A,C) > 0 is the whole defect.
    Ok(())
}
