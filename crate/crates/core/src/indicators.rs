//! Average, marginal and fractional T-indicators of an indicator `Y(t)`
//! against a factor `X(t)`, both given as functions of time.
//!
//! The T-indicator of order `α` at time `T` is the ratio of Caputo
//! derivatives `D^α Y(T) / D^α X(T)`. It equals the average indicator
//! `Y(T)/X(T)` at `α = 0` and the marginal indicator `Y'(T)/X'(T)` at
//! `α = 1`.
//!
//! Every ratio checks its denominator against `1e-12` times a scale: the
//! largest `|X|` (or `|X'|`) over `[0, T]` for the classical indicators,
//! and the sum of absolute contributions for fractional derivatives.

use alloc::vec::Vec;

use crate::caputo::{FracOrder, Scaled, Signal};
use crate::error::{Error, Result};
use crate::series::SampledSeries;
use crate::specfun::gamma;

/// Relative threshold below which a denominator counts as zero.
pub const DENOM_REL_TOL: f64 = 1e-12;

/// Indicator `Y` and factor `X` sharing one time axis.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorPair {
    x: Signal,
    y: Signal,
}

impl IndicatorPair {
    /// Pairs a factor with an indicator. Both must use the same
    /// representation, and sampled signals must share a grid.
    pub fn new(x: Signal, y: Signal) -> Result<Self> {
        match (&x, &y) {
            (Signal::Poly(_), Signal::Poly(_)) => {}
            (Signal::Sampled(a), Signal::Sampled(b)) if a.same_grid(b) => {}
            _ => return Err(Error::GridMismatch),
        }
        Ok(Self { x, y })
    }

    /// Factor `X(t)`.
    pub fn factor(&self) -> &Signal {
        &self.x
    }

    /// Indicator `Y(t)`.
    pub fn indicator(&self) -> &Signal {
        &self.y
    }

    /// End of the sampled grid, or `None` for closed-form pairs.
    pub fn end_time(&self) -> Option<f64> {
        match &self.x {
            Signal::Sampled(s) => Some(s.end_time()),
            Signal::Poly(_) => None,
        }
    }
}

fn ratio(num: f64, den: Scaled) -> Result<f64> {
    let threshold = DENOM_REL_TOL * den.scale;
    if !(den.value.abs() > threshold) {
        return Err(Error::DenominatorNearZero { value: den.value, threshold });
    }
    Ok(num / den.value)
}

fn check_time(t_end: f64) -> Result<()> {
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::Domain("T must be finite and non-negative"));
    }
    Ok(())
}

/// `Y(T) / X(T)`.
pub fn average_indicator(pair: &IndicatorPair, t_end: f64) -> Result<f64> {
    check_time(t_end)?;
    let x = pair.x.value_at(t_end)?;
    let scale = pair.x.max_abs_until(t_end)?;
    ratio(pair.y.value_at(t_end)?, Scaled { value: x, scale })
}

/// `Y'(T) / X'(T)`, exact for polynomials and second-order one-sided
/// differences for samples.
pub fn marginal_indicator(pair: &IndicatorPair, t_end: f64) -> Result<f64> {
    check_time(t_end)?;
    let dx = pair.x.first_derivative_scaled(t_end)?;
    let dy = pair.y.first_derivative_scaled(t_end)?;
    ratio(dy.value, dx)
}

/// `D^α Y(T) / D^α X(T)`, both derivatives taken with the engine matching
/// the pair's representation on the same grid.
///
/// Orders 0 and 1 return [`average_indicator`] and [`marginal_indicator`].
pub fn t_indicator(pair: &IndicatorPair, alpha: FracOrder, t_end: f64) -> Result<f64> {
    match alpha.integer_order() {
        Some(0) => average_indicator(pair, t_end),
        Some(1) => marginal_indicator(pair, t_end),
        _ => {
            let den = pair.x.caputo_scaled(alpha, t_end)?;
            let num = pair.y.caputo(alpha, t_end)?;
            ratio(num, den)
        }
    }
}

/// T-indicator with time itself as the factor (`X(t) = t`):
/// `Γ(2-α) · T^(α-1) · D^α Y(T)`, for `0 ≤ α < 2`.
///
/// On `[0, 1]` this equals [`t_indicator`] with `X(t) = t`. For `1 < α < 2`
/// the Caputo derivative of `t` is zero, so that ratio is degenerate while
/// this closed form stays finite.
pub fn t_indicator_time(y: &Signal, alpha: FracOrder, t_end: f64) -> Result<f64> {
    let a = alpha.value();
    if a >= 2.0 {
        return Err(Error::Domain("time-factor T-indicator requires alpha < 2"));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Domain("T must be positive and finite"));
    }
    Ok(gamma(2.0 - a)? * libm::pow(t_end, a - 1.0) * y.caputo(alpha, t_end)?)
}

/// One sweep entry's outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepValue {
    /// Finite T-indicator.
    Value(f64),
    /// The factor's derivative vanished at this order.
    Degenerate,
}

impl SweepValue {
    /// The value, or `None` for a degenerate entry.
    pub fn value(self) -> Option<f64> {
        match self {
            SweepValue::Value(v) => Some(v),
            SweepValue::Degenerate => None,
        }
    }
}

/// T-indicator tabulated over increasing orders.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Evaluation time.
    pub t_end: f64,
    /// `(alpha, outcome)` in increasing `alpha`.
    pub entries: Vec<(f64, SweepValue)>,
}

/// Evaluates [`t_indicator`] at each order in `alphas` (strictly increasing).
///
/// Degenerate denominators become [`SweepValue::Degenerate`] entries; any
/// other error aborts the sweep.
pub fn alpha_sweep(pair: &IndicatorPair, alphas: &[f64], t_end: f64) -> Result<SweepResult> {
    if alphas.is_empty() {
        return Err(Error::EmptySweep);
    }
    if alphas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("sweep orders must be strictly increasing"));
    }
    let entries = alphas
        .iter()
        .map(|&a| {
            let value = match t_indicator(pair, FracOrder::new(a)?, t_end) {
                Ok(v) => SweepValue::Value(v),
                Err(Error::DenominatorNearZero { .. }) => SweepValue::Degenerate,
                Err(e) => return Err(e),
            };
            Ok((a, value))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { t_end, entries })
}

/// Sample-time pairs `(t1, t2)`, `t1 < t2`, whose factor values agree to
/// within `x_tol` while the indicator values differ by more than `y_tol`.
/// Any such pair shows that `Y` is not a single-valued function of `X`.
///
/// Pairs are returned sorted by `(t1, t2)`.
pub fn detect_multivalued(
    x: &SampledSeries,
    y: &SampledSeries,
    x_tol: f64,
    y_tol: f64,
) -> Result<Vec<(f64, f64)>> {
    if !x.same_grid(y) {
        return Err(Error::GridMismatch);
    }
    if !(x_tol > 0.0 && y_tol > 0.0) {
        return Err(Error::Domain("tolerances must be positive"));
    }
    let xs = x.values();
    let ys = y.values();
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));

    let mut pairs = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if xs[j] - xs[i] > x_tol {
                break;
            }
            if (ys[i] - ys[j]).abs() > y_tol {
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                pairs.push((a, b));
            }
        }
    }
    pairs.sort_unstable();
    Ok(pairs.into_iter().map(|(a, b)| (x.time(a), x.time(b))).collect())
}
