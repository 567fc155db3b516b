//! Uniformly sampled series on `[0, T]` and the demo processes.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Relative tolerance on consecutive time deltas when validating a grid.
pub const GRID_TOL: f64 = 1e-9;

/// Values of a function on the uniform grid `t_k = k·h`, `k = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSeries {
    h: f64,
    values: Vec<f64>,
}

impl SampledSeries {
    /// Wraps samples taken at step `h` starting from `t = 0`.
    ///
    /// Requires `h > 0`, at least three samples (`N ≥ 2`) and finite values.
    pub fn new(h: f64, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Domain("grid step must be positive and finite"));
        }
        if values.len() < 3 {
            return Err(Error::InsufficientData { needed: 2, got: values.len().saturating_sub(1) });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("sample values must be finite"));
        }
        Ok(Self { h, values })
    }

    /// Builds a series from explicit time stamps, checking that they start
    /// at zero and are uniformly spaced to [`GRID_TOL`] relative.
    pub fn from_timed(times: &[f64], values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::GridMismatch);
        }
        let h = grid_step(times)?;
        Self::new(h, values)
    }

    /// Grid step `h`.
    pub fn step(&self) -> f64 {
        self.h
    }

    /// Number of grid intervals `N`.
    pub fn intervals(&self) -> usize {
        self.values.len() - 1
    }

    /// Final time `T = N·h`.
    pub fn end_time(&self) -> f64 {
        self.intervals() as f64 * self.h
    }

    /// Sample values `f(k·h)`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Time of node `k`.
    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.h
    }

    /// Grid index of time `t`, if `t` is a node within [`GRID_TOL`].
    pub fn node_index(&self, t: f64) -> Result<usize> {
        let x = t / self.h;
        let k = libm::round(x);
        if !(t >= 0.0) || (x - k).abs() > GRID_TOL * x.abs().max(1.0) || k > self.intervals() as f64 {
            return Err(Error::OffGrid { t });
        }
        Ok(k as usize)
    }

    /// Prefix of the series ending at grid time `t`.
    pub fn truncate_at(&self, t: f64) -> Result<Self> {
        let k = self.node_index(t)?;
        Self::new(self.h, self.values[..=k].to_vec())
    }

    /// Largest absolute sample value.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// True when both series share `h` and `N`.
    pub fn same_grid(&self, other: &Self) -> bool {
        self.values.len() == other.values.len()
            && (self.h - other.h).abs() <= GRID_TOL * self.h
    }

    /// Pointwise scaling.
    pub fn scaled(&self, c: f64) -> Self {
        Self { h: self.h, values: self.values.iter().map(|v| c * v).collect() }
    }

    /// Pointwise sum of two series on the same grid.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { h: self.h, values })
    }
}

/// Checks a time column and returns its step.
fn grid_step(times: &[f64]) -> Result<f64> {
    if times.len() < 3 {
        return Err(Error::InsufficientData { needed: 2, got: times.len().saturating_sub(1) });
    }
    if times[0] != 0.0 {
        return Err(Error::NonUniformGrid { index: 0 });
    }
    let first = times[1] - times[0];
    if !(first > 0.0 && first.is_finite()) {
        return Err(Error::NonUniformGrid { index: 1 });
    }
    for (k, pair) in times.windows(2).enumerate() {
        let delta = pair[1] - pair[0];
        if !(((delta - first) / first).abs() <= GRID_TOL) {
            return Err(Error::NonUniformGrid { index: k + 1 });
        }
    }
    let n = times.len() - 1;
    Ok(times[n] / n as f64)
}

/// Uniform samples `p(k·t_end/N)` for `k = 0..=N`.
pub fn sample(p: &Polynomial, t_end: f64, n: usize) -> Result<SampledSeries> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Domain("sampling end time must be positive and finite"));
    }
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    let values = (0..=n).map(|k| p.eval(k as f64 * t_end / n as f64)).collect();
    SampledSeries::new(t_end / n as f64, values)
}

/// The two worked processes: a factor `X(t)` and an indicator `Y(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemoId {
    /// Quadratic pair on `[0, 200]`.
    Fig1,
    /// Quartic pair on `[0, 240]`.
    Fig2,
}

/// A demo factor/indicator pair with its plotting interval `[0, t_end]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DemoProcess {
    /// Which demo this is.
    pub id: DemoId,
    /// Factor `X(t)`.
    pub x: Polynomial,
    /// Indicator `Y(t)`.
    pub y: Polynomial,
    /// End of the plotted time interval.
    pub t_end: f64,
}

/// Returns the exact coefficients of the requested demo process.
pub fn demo_process(id: DemoId) -> DemoProcess {
    match id {
        DemoId::Fig1 => DemoProcess {
            id,
            x: Polynomial::new(alloc::vec![70.0, -0.2, 0.001]),
            y: Polynomial::new(alloc::vec![1400.0, -3.0, 0.01]),
            t_end: 200.0,
        },
        DemoId::Fig2 => DemoProcess {
            id,
            x: Polynomial::new(alloc::vec![70.0, -0.58, 5.4e-3, -1.5e-5, 8.2e-9]),
            y: Polynomial::new(alloc::vec![1700.0, -24.0, 0.51, -3.5e-3, 7.5e-6]),
            t_end: 240.0,
        },
    }
}
