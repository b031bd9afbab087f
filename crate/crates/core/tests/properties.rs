use commutator_metric::metrics::{check_axioms, defect, distance};
use commutator_metric::montecarlo::{Histogram, RunningStats};
use commutator_metric::{Alpha, Matrix};
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-10.0f64..10.0, n * n)
        .prop_map(move |v| Matrix::from_row_major(n, v).unwrap())
}

fn pair() -> impl Strategy<Value = (Matrix, Matrix)> {
    (2usize..9).prop_flat_map(|n| (matrix(n), matrix(n)))
}

fn triple() -> impl Strategy<Value = (Matrix, Matrix, Matrix)> {
    (2usize..7).prop_flat_map(|n| (matrix(n), matrix(n), matrix(n)))
}

fn alpha() -> impl Strategy<Value = Alpha> {
    (0.1f64..3.0).prop_map(|a| Alpha::new(a).unwrap())
}

// Reference statistics computed the slow way, independent of the Welford path.
fn two_pass(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

proptest! {
    #[test]
    fn commutator_is_antisymmetric((a, b) in pair()) {
        let ab = a.commutator(&b).unwrap();
        let ba = b.commutator(&a).unwrap();
        prop_assert_eq!(ab, ba.neg());
    }

    #[test]
    fn commutator_is_bilinear((a, b) in pair(), s in -5.0f64..5.0) {
        let lhs = a.scale(s).unwrap().commutator(&b).unwrap();
        let rhs = a.commutator(&b).unwrap().scale(s).unwrap();
        let scale = a.frobenius_norm() * b.frobenius_norm() * s.abs();
        for (x, y) in lhs.as_slice().iter().zip(rhs.as_slice()) {
            prop_assert!((x - y).abs() <= 1e-12 * scale.max(1e-300));
        }
    }

    #[test]
    fn commutator_is_traceless((a, b) in pair()) {
        let tr = a.commutator(&b).unwrap().trace();
        prop_assert!(tr.abs() <= 1e-10 * a.frobenius_norm() * b.frobenius_norm());
    }

    #[test]
    fn commutator_norm_obeys_sqrt2_bound((a, b) in pair()) {
        let lhs = a.commutator(&b).unwrap().frobenius_norm();
        let rhs = 2f64.sqrt() * a.frobenius_norm() * b.frobenius_norm();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn frobenius_norm_is_homogeneous(a in (2usize..9).prop_flat_map(matrix), s in -100.0f64..100.0) {
        let lhs = a.scale(s).unwrap().frobenius_norm();
        let rhs = s.abs() * a.frobenius_norm();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
    }

    #[test]
    fn normalized_matrices_have_unit_norm(a in (2usize..9).prop_flat_map(matrix)) {
        prop_assume!(a.frobenius_norm() > 0.0);
        let u = a.normalize_to_sphere().unwrap();
        prop_assert!((u.frobenius_norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn distance_axioms_hold((a, b) in pair(), alpha in alpha()) {
        let r = check_axioms(&a, &b, alpha).unwrap();
        prop_assert!(r.symmetric && r.identity_forward && r.zero_on_commuting);
    }

    #[test]
    fn polynomial_pairs_are_at_distance_zero(a in (2usize..7).prop_flat_map(|n| {
        prop::collection::vec(-1.0f64..1.0, n * n)
            .prop_map(move |v| Matrix::from_row_major(n, v).unwrap())
    }), alpha in 1.0f64..3.0) {
        let a2 = a.multiply(&a).unwrap();
        prop_assert!(distance(&a, &a2, Alpha::new(alpha).unwrap()).unwrap() <= 1e-10);
    }

    #[test]
    fn diagonal_pairs_are_at_distance_zero(
        d in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 2..12),
        alpha in alpha(),
    ) {
        let (x, y): (Vec<f64>, Vec<f64>) = d.into_iter().unzip();
        let a = Matrix::diagonal(&x).unwrap();
        let b = Matrix::diagonal(&y).unwrap();
        prop_assert!(distance(&a, &b, alpha).unwrap() <= 1e-10);
    }

    #[test]
    fn defect_is_signed_sum((a, b, c) in triple(), alpha in alpha()) {
        let s = defect(&a, &b, &c, alpha).unwrap();
        prop_assert_eq!(s.defect, s.d_ab + s.d_bc - s.d_ac);
        prop_assert!(s.defect >= -s.d_ac);
        prop_assert!(s.d_ab >= 0.0 && s.d_bc >= 0.0 && s.d_ac >= 0.0);
    }

    #[test]
    fn streaming_stats_match_two_pass(
        xs in prop::collection::vec(-1.0f64..1.0, 2..1000),
        scale in 1e-6f64..1e3,
        shift in -10.0f64..10.0,
    ) {
        // Offsets up to 10x the spread, as for defect samples near their mean.
        let xs: Vec<f64> = xs.into_iter().map(|x| (x + shift) * scale).collect();
        let s = xs.iter().copied().collect::<RunningStats>().summary();
        let (mean, sd) = two_pass(&xs);
        prop_assert!((s.mean - mean).abs() <= 1e-10 * mean.abs().max(sd));
        prop_assert!((s.std_dev - sd).abs() <= 1e-10 * sd);
    }

    #[test]
    fn histogram_conserves_mass(
        xs in prop::collection::vec(-5.0f64..5.0, 0..500),
        bins in 2usize..200,
        lo in -3.0f64..0.0,
        width in 0.1f64..4.0,
    ) {
        let mut h = Histogram::uniform(lo, lo + width, bins).unwrap();
        xs.iter().for_each(|&x| h.add(x));
        prop_assert_eq!(h.total(), xs.len() as u64);
        prop_assert!(h.edges().windows(2).all(|w| w[0] < w[1]));

        if !xs.is_empty() {
            let h = Histogram::from_samples(&xs, bins).unwrap();
            prop_assert_eq!(h.counts().iter().sum::<u64>(), xs.len() as u64);
            prop_assert_eq!(h.underflow() + h.overflow(), 0);
        }
    }
}

#[test]
fn symmetry_on_many_random_pairs() {
    use commutator_metric::sampling::{sample, Ensemble, EnsembleKind, SeedSpec, Slot};
    for n in [2, 5, 10] {
        let e = Ensemble::new(EnsembleKind::GaussianIid, n).unwrap();
        for t in 0..1000 {
            let a = sample(e, SeedSpec::new(11, t, Slot::A));
            let b = sample(e, SeedSpec::new(11, t, Slot::B));
            let r = check_axioms(&a, &b, Alpha::ONE).unwrap();
            assert!(r.symmetric, "n={n} t={t}");
            assert!(r.identity_forward);
        }
    }
}
