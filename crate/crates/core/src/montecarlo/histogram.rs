//! Fixed-edge histograms with under/overflow counters.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    edges: Vec<f64>,
    counts: Vec<u64>,
    underflow: u64,
    overflow: u64,
}

impl Histogram {
    /// `bins` equal-width bins over `[lo, hi]`; the right edge is inclusive.
    pub fn uniform(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if bins < 2 {
            return Err(Error::InvalidConfig(format!(
                "histogram needs at least 2 bins, got {bins}"
            )));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidConfig(format!(
                "invalid histogram range [{lo}, {hi}]"
            )));
        }
        let width = (hi - lo) / bins as f64;
        let mut edges: Vec<f64> = (0..bins).map(|i| lo + i as f64 * width).collect();
        edges.push(hi);
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(format!(
                "range [{lo}, {hi}] too narrow for {bins} bins"
            )));
        }
        Ok(Self {
            edges,
            counts: vec![0; bins],
            underflow: 0,
            overflow: 0,
        })
    }

    /// Bins spanning `[min, max]` of the data, so nothing under- or overflows.
    /// A constant sample gets a unit-scale window around its value.
    pub fn from_samples(samples: &[f64], bins: usize) -> Result<Self> {
        let (lo, hi) = samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
        let (lo, hi) = if samples.is_empty() {
            (0.0, 1.0)
        } else if lo == hi {
            let pad = if lo == 0.0 { 0.5 } else { 0.5 * lo.abs() };
            (lo - pad, hi + pad)
        } else {
            (lo, hi)
        };
        let mut h = Self::uniform(lo, hi, bins)?;
        samples.iter().for_each(|&x| h.add(x));
        Ok(h)
    }

    pub fn add(&mut self, x: f64) {
        let bins = self.counts.len();
        let lo = self.edges[0];
        let hi = self.edges[bins];
        if x.is_nan() || x > hi {
            self.overflow += 1;
            return;
        }
        if x < lo {
            self.underflow += 1;
            return;
        }
        let width = (hi - lo) / bins as f64;
        let mut idx = (((x - lo) / width) as usize).min(bins - 1);
        // Agree with the stored edges when rounding puts x on the wrong side.
        while idx > 0 && x < self.edges[idx] {
            idx -= 1;
        }
        while idx + 1 < bins && x >= self.edges[idx + 1] {
            idx += 1;
        }
        self.counts[idx] += 1;
    }

    /// Adds counts from a histogram with identical edges.
    pub fn merge(&mut self, other: &Histogram) -> Result<()> {
        if self.edges != other.edges {
            return Err(Error::InvalidConfig(
                "cannot merge histograms with different edges".into(),
            ));
        }
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
        self.underflow += other.underflow;
        self.overflow += other.overflow;
        Ok(())
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn underflow(&self) -> u64 {
        self.underflow
    }

    pub fn overflow(&self) -> u64 {
        self.overflow
    }

    /// All samples seen, including under/overflow.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.underflow + self.overflow
    }

    /// Probability density of bin `i`, normalized by the total count.
    pub fn density(&self, i: usize) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        self.counts[i] as f64 / (total as f64 * (self.edges[i + 1] - self.edges[i]))
    }

    /// Fraction of the total in bins lying entirely below `x`, plus underflow.
    pub fn mass_below(&self, x: f64) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        let below: u64 = self
            .counts
            .iter()
            .zip(self.edges.windows(2))
            .filter(|(_, e)| e[1] <= x)
            .map(|(c, _)| *c)
            .sum();
        (below + self.underflow) as f64 / total as f64
    }

    /// `(left, right, count)` per bin.
    pub fn iter_bins(&self) -> impl Iterator<Item = (f64, f64, u64)> + '_ {
        self.edges
            .windows(2)
            .zip(&self.counts)
            .map(|(e, &c)| (e[0], e[1], c))
    }
}
