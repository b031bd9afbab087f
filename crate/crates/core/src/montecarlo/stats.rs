//! Single-pass mean/variance with violation counting.

/// Welford accumulator. Partial accumulators combine with [`RunningStats::merge`]
/// (Chan et al. pairwise update); merging in a fixed order gives fixed bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
    min: f64,
    max: f64,
    violations: u64,
}

impl Default for RunningStats {
    fn default() -> Self {
        Self::new()
    }
}

impl RunningStats {
    pub fn new() -> Self {
        Self {
            count: 0,
            mean: 0.0,
            m2: 0.0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            violations: 0,
        }
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
        self.min = self.min.min(x);
        self.max = self.max.max(x);
        if x < 0.0 {
            self.violations += 1;
        }
    }

    pub fn merge(&mut self, other: &RunningStats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / total as f64;
        self.mean += delta * w;
        self.m2 += other.m2 + delta * delta * self.count as f64 * w;
        self.count = total;
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
        self.violations += other.violations;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn summary(&self) -> SummaryStats {
        let (std_dev, violation_rate) = if self.count == 0 {
            (0.0, 0.0)
        } else {
            let c = self.count as f64;
            ((self.m2 / c).max(0.0).sqrt(), self.violations as f64 / c)
        };
        SummaryStats {
            count: self.count,
            mean: self.mean,
            std_dev,
            violations: self.violations,
            violation_rate,
            min: self.min,
            max: self.max,
        }
    }
}

impl FromIterator<f64> for RunningStats {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = RunningStats::new();
        iter.into_iter().for_each(|x| s.push(x));
        s
    }
}

/// Batch summary. `std_dev` is the population standard deviation (divide by N).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub count: u64,
    pub mean: f64,
    pub std_dev: f64,
    /// Number of samples strictly below zero.
    pub violations: u64,
    pub violation_rate: f64,
    pub min: f64,
    pub max: f64,
}

impl SummaryStats {
    pub fn variance(&self) -> f64 {
        self.std_dev * self.std_dev
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            return f64::NAN;
        }
        self.std_dev / (self.count as f64).sqrt()
    }

    /// Binomial standard error of the violation rate.
    pub fn violation_std_error(&self) -> f64 {
        if self.count == 0 {
            return f64::NAN;
        }
        let p = self.violation_rate;
        (p * (1.0 - p) / self.count as f64).sqrt()
    }

    /// Standard error of the variance estimate, `sqrt((m4 - s^4) / N)`, from
    /// the fourth central moment supplied by the caller.
    pub fn variance_std_error(&self, fourth_central_moment: f64) -> f64 {
        let s4 = self.variance() * self.variance();
        ((fourth_central_moment - s4).max(0.0) / self.count as f64).sqrt()
    }
}
