//! Pearson chi-square goodness-of-fit against a discrete distribution.
//!
//! Bins with expected count below [`MIN_EXPECTED`] are merged into an
//! adjacent bin until every bin reaches it (or one bin is left). Bins with
//! zero expected and zero observed count are dropped first.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bin {
    /// Original categories merged into this bin.
    pub categories: Vec<usize>,
    pub observed: u64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub alpha: f64,
    pub critical_value: f64,
    pub p_value: f64,
    pub reject: bool,
    pub bins: Vec<Bin>,
}

/// Tests observed category counts against `probabilities` (same length,
/// summing to one) at significance level `alpha`.
pub fn goodness_of_fit(observed: &[u64], probabilities: &[f64], alpha: f64) -> ChiSquareTest {
    assert_eq!(observed.len(), probabilities.len(), "one probability per category");
    let total: u64 = observed.iter().sum();
    let mut bins: Vec<Bin> = observed
        .iter()
        .zip(probabilities)
        .enumerate()
        .map(|(i, (&o, &p))| Bin {
            categories: vec![i],
            observed: o,
            expected: p * total as f64,
        })
        .filter(|b| b.observed > 0 || b.expected > 0.0)
        .collect();

    // An observation in a category of probability zero refutes the model.
    if bins.iter().any(|b| b.expected == 0.0) {
        return ChiSquareTest {
            statistic: f64::INFINITY,
            degrees_of_freedom: bins.len().saturating_sub(1),
            alpha,
            critical_value: critical_value(bins.len().saturating_sub(1), alpha),
            p_value: 0.0,
            reject: true,
            bins,
        };
    }

    while bins.len() > 1 {
        let Some(i) = bins.iter().position(|b| b.expected < MIN_EXPECTED) else {
            break;
        };
        // Merge into the neighbor with the smaller expectation; ties go left.
        let j = match (i.checked_sub(1), (i + 1 < bins.len()).then_some(i + 1)) {
            (Some(l), Some(r)) => {
                if bins[l].expected <= bins[r].expected {
                    l
                } else {
                    r
                }
            }
            (Some(l), None) => l,
            (None, Some(r)) => r,
            (None, None) => unreachable!("at least two bins"),
        };
        let (keep, gone) = (i.min(j), i.max(j));
        let removed = bins.remove(gone);
        let target = &mut bins[keep];
        target.categories.extend(removed.categories);
        target.observed += removed.observed;
        target.expected += removed.expected;
    }

    let df = bins.len().saturating_sub(1);
    if df == 0 {
        return ChiSquareTest {
            statistic: 0.0,
            degrees_of_freedom: 0,
            alpha,
            critical_value: 0.0,
            p_value: 1.0,
            reject: false,
            bins,
        };
    }
    let statistic: f64 = bins
        .iter()
        .map(|b| {
            let d = b.observed as f64 - b.expected;
            d * d / b.expected
        })
        .sum();
    let critical = critical_value(df, alpha);
    ChiSquareTest {
        statistic,
        degrees_of_freedom: df,
        alpha,
        critical_value: critical,
        p_value: survival(df, statistic),
        reject: statistic > critical,
        bins,
    }
}

/// Upper `alpha` quantile of the chi-square distribution with `df` degrees
/// of freedom.
pub fn critical_value(df: usize, alpha: f64) -> f64 {
    if df == 0 {
        return 0.0;
    }
    ChiSquared::new(df as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(1.0 - alpha)
}

/// `P(X >= statistic)` for `X` chi-square with `df` degrees of freedom.
pub fn survival(df: usize, statistic: f64) -> f64 {
    if df == 0 {
        return 1.0;
    }
    ChiSquared::new(df as f64)
        .expect("positive degrees of freedom")
        .sf(statistic)
}
