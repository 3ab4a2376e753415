//! Resolution studies: log-log slopes and pass/fail verdicts against fitted thresholds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Verdict thresholds; every field has a documented default and may be overridden
/// from a scenario file.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    /// Norms at or below this at every resolution count as exactly zero.
    pub exact_floor: f64,
    /// Minimum log-log slope for `O(h²)` decay.
    pub pass_slope: f64,
    /// Slopes below this count as non-decaying.
    pub fail_slope: f64,
    /// `τ_pass = pass_factor · C · h_fine²`.
    pub pass_factor: f64,
    /// A non-decaying series fails once its finest norm reaches `fail_factor · τ_pass`.
    pub fail_factor: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { exact_floor: 1e-12, pass_slope: 1.7, fail_slope: 0.5, pass_factor: 1.0, fail_factor: 10.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Exact,
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        matches!(self, Self::Exact | Self::Pass)
    }

    /// Worst of two verdicts: fail, then inconclusive, then pass.
    pub fn combine(self, other: Self) -> Self {
        let rank = |v: Self| match v {
            Self::Fail => 3,
            Self::Inconclusive => 2,
            Self::Pass => 1,
            Self::Exact => 0,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Least-squares slope of `log norm` against `log h`; `None` if any norm is
/// non-positive or fewer than two points are given.
pub fn loglog_slope(hs: &[f64], norms: &[f64]) -> Option<f64> {
    if hs.len() != norms.len() || hs.len() < 2 || norms.iter().any(|n| !(*n > 0.0) || !n.is_finite()) {
        return None;
    }
    let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = norms.iter().map(|n| n.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}

/// Norms of one quantity across resolutions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub label: String,
    pub norms: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assessment {
    pub label: String,
    pub norms: Vec<f64>,
    pub slope: Option<f64>,
    pub verdict: Verdict,
}

/// Outcome of a study: per-series verdicts plus the numbers they were judged by.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Study {
    pub ns: Vec<usize>,
    pub hs: Vec<f64>,
    /// Fitted `C` in `τ_pass = pass_factor · C · h_fine²` (`None` when no series decays).
    pub fitted_constant: Option<f64>,
    pub pass_threshold: f64,
    pub fail_threshold: f64,
    pub thresholds: Thresholds,
    pub series: Vec<Assessment>,
}

impl Study {
    pub fn verdict(&self) -> Verdict {
        self.series.iter().fold(Verdict::Exact, |v, s| v.combine(s.verdict))
    }

    pub fn get(&self, label: &str) -> Option<&Assessment> {
        self.series.iter().find(|s| s.label == label)
    }
}

fn strictly_decreasing(norms: &[f64]) -> bool {
    norms.windows(2).all(|w| w[1] < w[0])
}

/// Classifies each series.
///
/// A series decays when it is strictly decreasing with slope ≥ `pass_slope`.
/// Each decaying series yields `C_i`, the geometric mean of `norm/h²` at the two
/// coarsest resolutions; `C` is the largest `C_i`. Then a decaying series passes
/// when its finest norm is ≤ `τ_pass`, a series fails when its slope is below
/// `fail_slope` and its finest norm is ≥ `fail_factor · τ_pass`, and anything
/// else is inconclusive. Series that stay below `exact_floor` are exact.
pub fn assess(ns: &[usize], hs: &[f64], series: &[Series], t: &Thresholds) -> Result<Study> {
    if ns.len() != hs.len() || ns.len() < 2 {
        return Err(Error::Config(format!("a study needs at least two resolutions, got {}", ns.len())));
    }
    if let Some(s) = series.iter().find(|s| s.norms.len() != hs.len()) {
        return Err(Error::DimensionMismatch { expected: hs.len(), got: s.norms.len() });
    }
    let exact = |s: &Series| s.norms.iter().all(|n| n.abs() <= t.exact_floor);
    let slopes: Vec<Option<f64>> = series.iter().map(|s| loglog_slope(hs, &s.norms)).collect();
    let decaying = |s: &Series, slope: Option<f64>| {
        !exact(s) && strictly_decreasing(&s.norms) && slope.is_some_and(|k| k >= t.pass_slope)
    };
    let fitted_constant = series
        .iter()
        .zip(&slopes)
        .filter(|(s, k)| decaying(s, **k))
        .map(|(s, _)| ((s.norms[0] / (hs[0] * hs[0])) * (s.norms[1] / (hs[1] * hs[1]))).sqrt())
        .reduce(f64::max);
    let h_fine = hs[hs.len() - 1];
    let pass_threshold = match fitted_constant {
        Some(c) => t.pass_factor * c * h_fine * h_fine,
        None => t.exact_floor,
    };
    let fail_threshold = t.fail_factor * pass_threshold;
    let assessed = series
        .iter()
        .zip(&slopes)
        .map(|(s, &slope)| {
            let finest = s.norms[s.norms.len() - 1];
            let verdict = if s.norms.iter().any(|n| n.is_nan()) {
                Verdict::Fail
            } else if exact(s) {
                Verdict::Exact
            } else if decaying(s, slope) && finest <= pass_threshold {
                Verdict::Pass
            } else if slope.map_or(true, |k| k < t.fail_slope) && finest >= fail_threshold {
                Verdict::Fail
            } else {
                Verdict::Inconclusive
            };
            Assessment { label: s.label.clone(), norms: s.norms.clone(), slope, verdict }
        })
        .collect();
    Ok(Study {
        ns: ns.to_vec(),
        hs: hs.to_vec(),
        fitted_constant,
        pass_threshold,
        fail_threshold,
        thresholds: *t,
        series: assessed,
    })
}
