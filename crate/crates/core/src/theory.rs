//! Closed-form predictors for the commutator norm under the three ensembles.
//!
//! For `X = ||AB - BA||_F^2`, the known results are:
//!
//! | ensemble    | `E X`          | `Var X`                 |
//! |-------------|----------------|-------------------------|
//! | unit sphere | `2/n - 2/n^3`  | `8/n^4 + O(n^-5)`       |
//! | gaussian    | `2n^3 - 2n`    | `24 n^4 + O(n^3)`       |
//! | rademacher  | same orders as gaussian, no constants        |
//!
//! Remainder constants are unknown, so every value carries an [`Exactness`]
//! tag and callers decide how much slack to allow.

use crate::error::{Error, Result};
use crate::matrix::MIN_DIM;
use crate::metrics::Alpha;
use crate::sampling::EnsembleKind;

/// Below this dimension a leading-order term is not trusted as an estimate.
pub const LEADING_ORDER_MIN_N: usize = 10;

/// Bounding `Var(X1 + X2 - X3)` by Cauchy-Schwarz on each of the nine
/// covariance terms gives `(1 + 1 + 1)^2 = 9` times `Var X`.
pub const DEFECT_VARIANCE_FACTOR: f64 = 9.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    /// The closed form is exact for every `n >= 2`.
    Exact,
    /// Leading term only; the dropped remainder has unknown constant.
    LeadingOrder,
    /// Only the order of growth is known; the value shows the order, not a constant.
    OrderOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moment {
    pub value: f64,
    pub exactness: Exactness,
    /// False when the dropped remainder is likely comparable to the value.
    pub reliable: bool,
}

impl Moment {
    fn exact(value: f64) -> Self {
        Self {
            value,
            exactness: Exactness::Exact,
            reliable: true,
        }
    }

    fn leading(value: f64, n: usize) -> Self {
        Self {
            value,
            exactness: Exactness::LeadingOrder,
            reliable: n >= LEADING_ORDER_MIN_N,
        }
    }

    fn order_only(value: f64) -> Self {
        Self {
            value,
            exactness: Exactness::OrderOnly,
            reliable: false,
        }
    }

    /// True when the value may be asserted against data (not order-only).
    pub fn is_quantitative(&self) -> bool {
        self.exactness != Exactness::OrderOnly
    }
}

fn check_n(n: usize) -> Result<f64> {
    if n < MIN_DIM {
        return Err(Error::InvalidDimension(n));
    }
    Ok(n as f64)
}

fn require_unit_sphere(kind: EnsembleKind, what: &'static str) -> Result<()> {
    if kind != EnsembleKind::UnitSphere {
        return Err(Error::UnsupportedEnsemble {
            what,
            ensemble: kind.name(),
        });
    }
    Ok(())
}

/// `E ||AB - BA||_F^2`.
pub fn expected_sq_norm(kind: EnsembleKind, n: usize) -> Result<Moment> {
    let x = check_n(n)?;
    Ok(match kind {
        EnsembleKind::UnitSphere => Moment::exact(2.0 / x - 2.0 / (x * x * x)),
        EnsembleKind::GaussianIid => Moment::exact(2.0 * x * x * x - 2.0 * x),
        EnsembleKind::RademacherIid => Moment::order_only(2.0 * x * x * x - 2.0 * x),
    })
}

/// Leading term of `Var ||AB - BA||_F^2`.
pub fn variance_sq_norm(kind: EnsembleKind, n: usize) -> Result<Moment> {
    let x = check_n(n)?;
    let x4 = x * x * x * x;
    Ok(match kind {
        EnsembleKind::UnitSphere => Moment::leading(8.0 / x4, n),
        EnsembleKind::GaussianIid => Moment::leading(24.0 * x4, n),
        EnsembleKind::RademacherIid => Moment::order_only(24.0 * x4),
    })
}

/// Mean and variance bound of the squared-distance defect on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Defect2Moments {
    /// `E Delta_2`, equal to `E ||AB - BA||_F^2` (exact).
    pub expected: f64,
    /// Upper bound `72/n^4`, leading order.
    pub variance_upper_bound: f64,
}

impl Defect2Moments {
    pub fn std_dev_bound(&self) -> f64 {
        self.variance_upper_bound.sqrt()
    }
}

pub fn defect2_moments(kind: EnsembleKind, n: usize) -> Result<Defect2Moments> {
    require_unit_sphere(kind, "the squared-distance defect moments")?;
    Ok(Defect2Moments {
        // The three squared distances share a mean, so two of them cancel.
        expected: expected_sq_norm(kind, n)?.value,
        variance_upper_bound: DEFECT_VARIANCE_FACTOR * variance_sq_norm(kind, n)?.value,
    })
}

/// Leading term of `E ||AB - BA||_F` on the unit sphere,
/// `sqrt(2) * (1/n - 1/n^3)^(1/2)`; the relative correction is `O(n^-2)`.
pub fn expected_norm_alpha1(n: usize) -> Result<f64> {
    let x = check_n(n)?;
    Ok(2f64.sqrt() * (1.0 / x - 1.0 / (x * x * x)).sqrt())
}

/// Chebyshev bound on `P(Delta_2 < 0)` for the unit sphere:
/// `Var bound / (E Delta_2)^2`. Exceeds 1 (and is vacuous) for small `n`.
pub fn chebyshev_violation_bound(n: usize) -> Result<f64> {
    let m = defect2_moments(EnsembleKind::UnitSphere, n)?;
    Ok(m.variance_upper_bound / (m.expected * m.expected))
}

/// Everything the closed forms say about `Delta_alpha` for one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoryPrediction {
    pub ensemble: EnsembleKind,
    pub n: usize,
    pub alpha: Alpha,
    /// `E Delta_alpha`, when a closed form exists.
    pub expected_value: Option<Moment>,
    /// Upper bound on `Var Delta_alpha` (leading order).
    pub variance_bound: Option<Moment>,
    pub chebyshev_violation_bound: Option<f64>,
    pub order_note: &'static str,
}

pub fn predict(kind: EnsembleKind, n: usize, alpha: Alpha) -> Result<TheoryPrediction> {
    check_n(n)?;
    let mut p = TheoryPrediction {
        ensemble: kind,
        n,
        alpha,
        expected_value: None,
        variance_bound: None,
        chebyshev_violation_bound: None,
        order_note: "no closed form for this exponent",
    };
    if alpha == Alpha::TWO {
        let mean = expected_sq_norm(kind, n)?;
        p.expected_value = Some(mean);
        match kind {
            EnsembleKind::RademacherIid => {
                p.order_note = "same orders as gaussian: E ~ n^3, Var ~ n^4; no constants";
            }
            _ => {
                let var = variance_sq_norm(kind, n)?;
                let bound = Moment {
                    value: DEFECT_VARIANCE_FACTOR * var.value,
                    ..var
                };
                p.variance_bound = Some(bound);
                p.chebyshev_violation_bound = Some(bound.value / (mean.value * mean.value));
                p.order_note = "variance is a Cauchy-Schwarz upper bound; remainder dropped";
            }
        }
    } else if alpha == Alpha::ONE && kind == EnsembleKind::UnitSphere {
        p.expected_value = Some(Moment::leading(expected_norm_alpha1(n)?, n));
        p.order_note = "mean has relative O(n^-2) correction; Var ~ n^-3, constant unknown";
    }
    Ok(p)
}

/// Empirical check of the square-root delta method on samples of a
/// nonnegative random variable with mean `mu` and variance `sigma2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaMethodReport {
    pub count: usize,
    /// Mean of `sqrt(x)` over the samples.
    pub root_mean: f64,
    /// Population variance of `sqrt(x)`.
    pub root_variance: f64,
    /// `sqrt(mu)`.
    pub predicted_root_mean: f64,
    /// `(root_mean - sqrt(mu)) / sqrt(mu)`.
    pub relative_mean_deviation: f64,
    /// Standard error of `root_mean`.
    pub root_mean_std_error: f64,
    /// First-order delta-method variance `sigma2 / (4 mu)`.
    pub predicted_root_variance: f64,
    /// `root_variance / predicted_root_variance`; NaN when the prediction is zero.
    pub variance_ratio: f64,
}

impl DeltaMethodReport {
    /// Deviation of the root mean from `sqrt(mu)` in standard errors.
    pub fn mean_z_score(&self) -> f64 {
        let diff = self.root_mean - self.predicted_root_mean;
        if self.root_mean_std_error == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / self.root_mean_std_error
        }
    }
}

pub fn delta_method_check(mu: f64, sigma2: f64, samples: &[f64]) -> Result<DeltaMethodReport> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::InvalidConfig(format!("mean must be positive, got {mu}")));
    }
    if !(sigma2 >= 0.0 && sigma2.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "variance must be nonnegative, got {sigma2}"
        )));
    }
    if samples.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
        return Err(Error::InvalidConfig(
            "delta method samples must be finite and nonnegative".into(),
        ));
    }

    let count = samples.len();
    let nf = count as f64;
    let root_mean = samples.iter().map(|x| x.sqrt()).sum::<f64>() / nf;
    let root_variance = samples
        .iter()
        .map(|x| {
            let d = x.sqrt() - root_mean;
            d * d
        })
        .sum::<f64>()
        / nf;
    let predicted_root_mean = mu.sqrt();
    let predicted_root_variance = sigma2 / (4.0 * mu);
    Ok(DeltaMethodReport {
        count,
        root_mean,
        root_variance,
        predicted_root_mean,
        relative_mean_deviation: (root_mean - predicted_root_mean) / predicted_root_mean,
        root_mean_std_error: (root_variance / nf).sqrt(),
        predicted_root_variance,
        variance_ratio: if predicted_root_variance > 0.0 {
            root_variance / predicted_root_variance
        } else {
            f64::NAN
        },
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InvalidConfig(
            "log-log fit needs at least two points".into(),
        ));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::InvalidConfig(
            "log-log fit needs positive coordinates".into(),
        ));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidConfig(
            "log-log fit needs distinct abscissae".into(),
        ));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    #[test]
    fn expected_sq_norm_values() {
        let m = expected_sq_norm(EnsembleKind::UnitSphere, 2).unwrap();
        assert_eq!(m.value, 0.75);
        assert_eq!(m.exactness, Exactness::Exact);
        assert!(close(
            expected_sq_norm(EnsembleKind::UnitSphere, 10).unwrap().value,
            0.198,
            1e-14
        ));
        assert_eq!(
            expected_sq_norm(EnsembleKind::GaussianIid, 2).unwrap().value,
            12.0
        );
        let r = expected_sq_norm(EnsembleKind::RademacherIid, 2).unwrap();
        assert_eq!(r.exactness, Exactness::OrderOnly);
        assert!(!r.is_quantitative());
        assert!(matches!(
            expected_sq_norm(EnsembleKind::UnitSphere, 1),
            Err(Error::InvalidDimension(1))
        ));
    }

    #[test]
    fn variance_sq_norm_values() {
        let v = variance_sq_norm(EnsembleKind::UnitSphere, 10).unwrap();
        assert!(close(v.value, 8e-4, 1e-14));
        assert_eq!(v.exactness, Exactness::LeadingOrder);
        assert!(v.reliable);
        assert!(close(
            variance_sq_norm(EnsembleKind::GaussianIid, 10).unwrap().value,
            2.4e5,
            1e-14
        ));
        let small = variance_sq_norm(EnsembleKind::UnitSphere, 2).unwrap();
        assert_eq!(small.value, 0.5);
        assert!(!small.reliable);
        assert!(variance_sq_norm(EnsembleKind::GaussianIid, 0).is_err());
    }

    #[test]
    fn defect2_moment_values() {
        let m = defect2_moments(EnsembleKind::UnitSphere, 10).unwrap();
        assert!(close(m.expected, 0.198, 1e-14));
        assert!(close(m.variance_upper_bound, 7.2e-3, 1e-14));
        assert!((m.std_dev_bound() - 0.0849).abs() < 1e-4);
        // Table 1 shows 0.05 at this cell, inside the bound.
        assert!(m.std_dev_bound() > 0.05);

        let m = defect2_moments(EnsembleKind::UnitSphere, 100).unwrap();
        assert!(close(m.expected, 0.019998, 1e-13));

        assert!(matches!(
            defect2_moments(EnsembleKind::GaussianIid, 10),
            Err(Error::UnsupportedEnsemble { .. })
        ));
    }

    #[test]
    fn defect2_mean_equals_sq_norm_mean() {
        for n in [2, 3, 7, 50, 500] {
            assert_eq!(
                defect2_moments(EnsembleKind::UnitSphere, n).unwrap().expected,
                expected_sq_norm(EnsembleKind::UnitSphere, n).unwrap().value
            );
        }
    }

    #[test]
    fn expected_norm_alpha1_values() {
        assert!((expected_norm_alpha1(10).unwrap() - 0.198f64.sqrt()).abs() < 1e-15);
        assert!((expected_norm_alpha1(10).unwrap() - 0.44497).abs() < 1e-5);
        assert!((expected_norm_alpha1(2).unwrap() - 0.8660).abs() < 1e-4);
        assert!((expected_norm_alpha1(100).unwrap() - 0.14141).abs() < 1e-5);
        assert!(expected_norm_alpha1(1).is_err());
    }

    // Independent route: 18 / (n^2 (1 - 1/n^2)^2).
    fn chebyshev_closed_form(n: usize) -> f64 {
        let x = n as f64;
        18.0 / (x * x * (1.0 - 1.0 / (x * x)).powi(2))
    }

    #[test]
    fn chebyshev_values() {
        let b10 = chebyshev_violation_bound(10).unwrap();
        let b100 = chebyshev_violation_bound(100).unwrap();
        assert!((b10 - 0.183_654_729_1).abs() < 1e-9);
        assert!((b100 - 1.800_360_054e-3).abs() < 1e-12);
        assert!((b100 / b10 - 1e-2).abs() < 2e-4);
        for n in [2, 3, 5, 10, 25, 100, 1000] {
            assert!(close(
                chebyshev_violation_bound(n).unwrap(),
                chebyshev_closed_form(n),
                1e-13
            ));
        }
        // Vacuous but reported as is.
        assert!(chebyshev_violation_bound(2).unwrap() > 1.0);
        let big = chebyshev_violation_bound(10_000).unwrap() * 1e8;
        assert!(close(big, 18.0, 0.01));
    }

    #[test]
    fn unit_sphere_mean_decreases() {
        let values: Vec<f64> = (2..200)
            .map(|n| expected_sq_norm(EnsembleKind::UnitSphere, n).unwrap().value)
            .collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]));
        assert!(expected_sq_norm(EnsembleKind::UnitSphere, 1_000_000).unwrap().value < 1e-5);
    }

    #[test]
    fn predictions_per_cell() {
        let p = predict(EnsembleKind::UnitSphere, 10, Alpha::TWO).unwrap();
        let mean = p.expected_value.unwrap().value;
        let var = p.variance_bound.unwrap().value;
        assert!(mean > 0.0);
        assert_eq!(p.chebyshev_violation_bound.unwrap(), var / (mean * mean));

        let p = predict(EnsembleKind::UnitSphere, 10, Alpha::ONE).unwrap();
        assert_eq!(p.expected_value.unwrap().exactness, Exactness::LeadingOrder);
        assert!(p.variance_bound.is_none());

        let p = predict(EnsembleKind::UnitSphere, 10, Alpha::HALF).unwrap();
        assert!(p.expected_value.is_none());

        let p = predict(EnsembleKind::GaussianIid, 5, Alpha::TWO).unwrap();
        assert_eq!(p.expected_value.unwrap().value, 240.0);
        assert!(p.chebyshev_violation_bound.is_some());

        let p = predict(EnsembleKind::RademacherIid, 5, Alpha::TWO).unwrap();
        assert!(!p.expected_value.unwrap().is_quantitative());
        assert!(p.variance_bound.is_none() && p.chebyshev_violation_bound.is_none());
    }

    #[test]
    fn delta_method_on_constant_samples() {
        let r = delta_method_check(0.25, 0.0, &[0.25; 17]).unwrap();
        assert_eq!(r.root_mean, 0.5);
        assert_eq!(r.root_variance, 0.0);
        assert_eq!(r.relative_mean_deviation, 0.0);
        assert_eq!(r.mean_z_score(), 0.0);
        assert!(r.variance_ratio.is_nan());
    }

    #[test]
    fn delta_method_rejects_bad_input() {
        assert!(matches!(
            delta_method_check(1.0, 0.1, &[]),
            Err(Error::EmptySamples)
        ));
        assert!(delta_method_check(0.0, 0.1, &[1.0]).is_err());
        assert!(delta_method_check(1.0, 0.1, &[-1.0]).is_err());
    }

    #[test]
    fn log_log_slope_recovers_power_law() {
        let pts: Vec<(f64, f64)> = [10.0, 25.0, 50.0, 100.0]
            .iter()
            .map(|&n: &f64| (n, 3.0 * n.powf(-3.0)))
            .collect();
        assert!((log_log_slope(&pts).unwrap() + 3.0).abs() < 1e-12);
        assert!(log_log_slope(&pts[..1]).is_err());
        assert!(log_log_slope(&[(1.0, 1.0), (1.0, 2.0)]).is_err());
    }
}
