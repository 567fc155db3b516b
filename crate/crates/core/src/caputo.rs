//! Left-sided Caputo derivative at the end of `[0, T]`.
//!
//! For non-integer `α` with `n = ⌊α⌋ + 1`,
//!
//! ```text
//! D^α f(T) = 1/Γ(n-α) ∫₀ᵀ f⁽ⁿ⁾(t) (T-t)^(n-α-1) dt
//! ```
//!
//! Integer orders dispatch to the classical derivative `f⁽ᵅ⁾(T)`; order 0
//! is `f(T)` itself. Note that this is not the `α → 0⁺` limit of the integral,
//! which is `f(T) - f(0)`.
//!
//! Two engines are provided: [`caputo_poly`] applies the power rule to a
//! polynomial exactly, and [`caputo_numeric`] integrates a sampled series
//! with the L1 scheme (piecewise-linear `f` inside the singular integral),
//! covering `0 ≤ α < 2`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::series::SampledSeries;
use crate::specfun::{gamma, gamma_ratio};

/// Differentiation order `α ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    /// Validates `alpha` (finite, non-negative).
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::Domain("order alpha must be finite and non-negative"));
        }
        Ok(Self(alpha))
    }

    /// The order as a float.
    pub fn value(self) -> f64 {
        self.0
    }

    /// `Some(m)` when `α = m` is an integer.
    pub fn integer_order(self) -> Option<usize> {
        (libm::trunc(self.0) == self.0).then_some(self.0 as usize)
    }

    /// Order `n` of the classical derivative under the integral:
    /// `⌊α⌋ + 1` for non-integer `α`, `α` itself for integer `α`.
    pub fn classical_order(self) -> usize {
        match self.integer_order() {
            Some(m) => m,
            None => libm::floor(self.0) as usize + 1,
        }
    }
}

impl TryFrom<f64> for FracOrder {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

/// A value paired with the sum of the absolute values of the terms that
/// produced it, used to judge cancellation against zero.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scaled {
    pub value: f64,
    pub scale: f64,
}

/// Closed-form Caputo derivative of a polynomial at `t_end`.
///
/// Monomials `t^k` with `k ≤ n-1` vanish; the others follow
/// `Γ(k+1)/Γ(k+1-α) · T^(k-α)`.
pub fn caputo_poly(p: &Polynomial, alpha: FracOrder, t_end: f64) -> Result<f64> {
    caputo_poly_scaled(p, alpha, t_end).map(|s| s.value)
}

pub(crate) fn caputo_poly_scaled(p: &Polynomial, alpha: FracOrder, t_end: f64) -> Result<Scaled> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Domain("T must be positive and finite"));
    }
    if let Some(m) = alpha.integer_order() {
        let d = p.nth_derivative(m);
        let scale = d.coeffs().iter().enumerate().map(|(k, c)| (c * libm::pow(t_end, k as f64)).abs()).sum();
        return Ok(Scaled { value: d.eval(t_end), scale });
    }
    let a = alpha.value();
    let n = alpha.classical_order();
    let mut value = 0.0;
    let mut scale = 0.0;
    for (k, &c) in p.coeffs().iter().enumerate().skip(n) {
        if c == 0.0 {
            continue;
        }
        let kf = k as f64;
        let term = c * gamma_ratio(kf + 1.0, kf + 1.0 - a)? * libm::pow(t_end, kf - a);
        value += term;
        scale += term.abs();
    }
    Ok(Scaled { value, scale })
}

/// L1 approximation of the Caputo derivative at the series end, `0 ≤ α ≤ 1`.
///
/// `α = 0` returns the last sample and `α = 1` a second-order one-sided
/// difference. In between, with `N` intervals of width `h`:
///
/// ```text
/// h^-α / Γ(2-α) · Σ_{k=0}^{N-1} [(N-k)^(1-α) - (N-1-k)^(1-α)] · (f_{k+1} - f_k)
/// ```
///
/// Exact for constant and linear `f`, `O(h^(2-α))` for smooth `f`.
pub fn caputo_l1(series: &SampledSeries, alpha: FracOrder) -> Result<f64> {
    caputo_l1_scaled(series, alpha).map(|s| s.value)
}

fn caputo_l1_scaled(series: &SampledSeries, alpha: FracOrder) -> Result<Scaled> {
    let a = alpha.value();
    if a > 1.0 {
        return Err(Error::Domain("L1 scheme requires 0 <= alpha <= 1"));
    }
    require_intervals(series, 2)?;
    let f = series.values();
    if a == 0.0 {
        let last = f[f.len() - 1];
        return Ok(Scaled { value: last, scale: last.abs() });
    }
    if a == 1.0 {
        return Ok(backward_first(f, series.step()));
    }
    l1_sum(f, series.step(), a)
}

fn l1_sum(f: &[f64], h: f64, a: f64) -> Result<Scaled> {
    let n = f.len() - 1;
    let p = 1.0 - a;
    let factor = libm::pow(h, -a) / gamma(2.0 - a)?;
    let mut value = 0.0;
    let mut scale = 0.0;
    // Weight for interval k depends on j = N-1-k; walk j upward so each
    // power is computed once.
    let mut lower = 0.0; // j^p
    for j in 0..n {
        let upper = libm::pow((j + 1) as f64, p);
        let k = n - 1 - j;
        let term = (upper - lower) * (f[k + 1] - f[k]);
        value += term;
        scale += term.abs();
        lower = upper;
    }
    Ok(Scaled { value: factor * value, scale: factor * scale })
}

/// Caputo derivative for `1 < α < 2`: differentiate once with central
/// differences (second-order one-sided at both ends), then apply the L1
/// scheme of order `α - 1` to the derivative series.
pub fn caputo_l1_extended(series: &SampledSeries, alpha: FracOrder) -> Result<f64> {
    caputo_l1_extended_scaled(series, alpha).map(|s| s.value)
}

fn caputo_l1_extended_scaled(series: &SampledSeries, alpha: FracOrder) -> Result<Scaled> {
    let a = alpha.value();
    if !(a > 1.0 && a < 2.0) {
        return Err(Error::Domain("extended L1 scheme requires 1 < alpha < 2"));
    }
    require_intervals(series, 4)?;
    let d = first_derivative_series(series.values(), series.step());
    l1_sum(&d, series.step(), a - 1.0)
}

/// Classical derivative of order `n ∈ {0, 1, 2}` at the series end, using
/// second-order one-sided differences. Requires `N ≥ n + 2`.
pub fn caputo_integer(series: &SampledSeries, n: usize) -> Result<f64> {
    caputo_integer_scaled(series, n).map(|s| s.value)
}

fn caputo_integer_scaled(series: &SampledSeries, n: usize) -> Result<Scaled> {
    if n > 2 {
        return Err(Error::Domain("sampled classical derivatives are limited to order 2"));
    }
    require_intervals(series, n + 2)?;
    let f = series.values();
    let h = series.step();
    match n {
        0 => {
            let last = f[f.len() - 1];
            Ok(Scaled { value: last, scale: last.abs() })
        }
        1 => Ok(backward_first(f, h)),
        _ => {
            // 2f_N - 5f_{N-1} + 4f_{N-2} - f_{N-3}, written in differences.
            let m = f.len() - 1;
            let a = 2.0 * (f[m] - f[m - 1]);
            let b = -3.0 * (f[m - 1] - f[m - 2]);
            let c = f[m - 2] - f[m - 3];
            let h2 = h * h;
            Ok(Scaled { value: (a + b + c) / h2, scale: (a.abs() + b.abs() + c.abs()) / h2 })
        }
    }
}

/// Numerical Caputo derivative at the series end for `0 ≤ α < 2`.
///
/// Integer orders use [`caputo_l1`]'s classical branches (`α = 0, 1`);
/// `(0, 1)` uses the L1 scheme and `(1, 2)` the extended scheme.
pub fn caputo_numeric(series: &SampledSeries, alpha: FracOrder) -> Result<f64> {
    caputo_numeric_scaled(series, alpha).map(|s| s.value)
}

pub(crate) fn caputo_numeric_scaled(series: &SampledSeries, alpha: FracOrder) -> Result<Scaled> {
    let a = alpha.value();
    if a <= 1.0 {
        caputo_l1_scaled(series, alpha)
    } else if a < 2.0 {
        caputo_l1_extended_scaled(series, alpha)
    } else {
        Err(Error::Domain("numerical engine supports 0 <= alpha < 2"))
    }
}

/// A function given either in closed form or by samples.
#[derive(Debug, Clone, PartialEq)]
pub enum Signal {
    /// Closed-form polynomial, handled by the analytic engine.
    Poly(Polynomial),
    /// Uniform samples on `[0, N·h]`, handled by the numerical engine.
    Sampled(SampledSeries),
}

impl Signal {
    /// Value at time `t` (a grid node for sampled signals).
    pub fn value_at(&self, t: f64) -> Result<f64> {
        match self {
            Signal::Poly(p) => Ok(p.eval(t)),
            Signal::Sampled(s) => Ok(s.values()[s.node_index(t)?]),
        }
    }

    /// Caputo derivative of order `alpha` at `t_end`, dispatching to the
    /// engine that matches the representation. Sampled signals are truncated
    /// to `[0, t_end]` first, so `t_end` must be a grid node.
    pub fn caputo(&self, alpha: FracOrder, t_end: f64) -> Result<f64> {
        self.caputo_scaled(alpha, t_end).map(|s| s.value)
    }

    pub(crate) fn caputo_scaled(&self, alpha: FracOrder, t_end: f64) -> Result<Scaled> {
        match self {
            Signal::Poly(p) => caputo_poly_scaled(p, alpha, t_end),
            Signal::Sampled(s) => {
                if !(t_end > 0.0) {
                    return Err(Error::Domain("T must be positive and finite"));
                }
                caputo_numeric_scaled(&s.truncate_at(t_end)?, alpha)
            }
        }
    }

    /// Classical first derivative at `t`, with the largest `|f'|` over the
    /// grid `[0, t]` as its scale.
    pub(crate) fn first_derivative_scaled(&self, t: f64) -> Result<Scaled> {
        match self {
            Signal::Poly(p) => {
                let d = p.derivative();
                Ok(Scaled { value: d.eval(t), scale: d.max_abs_on(t, 256) })
            }
            Signal::Sampled(s) => {
                let s = s.truncate_at(t)?;
                let value = caputo_integer(&s, 1)?;
                let scale = first_derivative_series(s.values(), s.step())
                    .iter()
                    .fold(0.0, |m: f64, v| m.max(v.abs()));
                Ok(Scaled { value, scale })
            }
        }
    }

    /// Largest `|f|` over `[0, t]`.
    pub(crate) fn max_abs_until(&self, t: f64) -> Result<f64> {
        match self {
            Signal::Poly(p) => Ok(p.max_abs_on(t, 256)),
            Signal::Sampled(s) => {
                let k = s.node_index(t)?;
                Ok(s.values()[..=k].iter().fold(0.0, |m, v| m.max(v.abs())))
            }
        }
    }
}

fn require_intervals(series: &SampledSeries, needed: usize) -> Result<()> {
    let got = series.intervals();
    if got < needed {
        return Err(Error::InsufficientData { needed, got });
    }
    Ok(())
}

/// `(3f_N - 4f_{N-1} + f_{N-2}) / 2h`, in differences so constants give 0.
fn backward_first(f: &[f64], h: f64) -> Scaled {
    let m = f.len() - 1;
    let a = 3.0 * (f[m] - f[m - 1]);
    let b = f[m - 1] - f[m - 2];
    Scaled { value: (a - b) / (2.0 * h), scale: (a.abs() + b.abs()) / (2.0 * h) }
}

/// Second-order finite-difference derivative at every node.
fn first_derivative_series(f: &[f64], h: f64) -> Vec<f64> {
    let m = f.len() - 1;
    let two_h = 2.0 * h;
    let mut d = Vec::with_capacity(f.len());
    d.push((3.0 * (f[1] - f[0]) - (f[2] - f[1])) / two_h);
    d.extend(f.windows(3).map(|w| (w[2] - w[0]) / two_h));
    d.push(backward_first(f, h).value);
    debug_assert_eq!(d.len(), m + 1);
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::sample;
    use alloc::vec;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn order(a: f64) -> FracOrder {
        FracOrder::new(a).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    /// Independent power-rule oracle for half-integer shifts:
    /// Γ(m + 1/2) = (2m)! √π / (4^m m!).
    fn gamma_half(m: u32) -> f64 {
        let mut g = libm::sqrt(PI);
        for i in 0..m {
            g *= f64::from(i) + 0.5;
        }
        g
    }

    #[test]
    fn frac_order() {
        assert!(FracOrder::new(-0.1).is_err());
        assert!(FracOrder::new(f64::INFINITY).is_err());
        assert_eq!(order(0.5).classical_order(), 1);
        assert_eq!(order(1.5).classical_order(), 2);
        assert_eq!(order(1.0).classical_order(), 1);
        assert_eq!(order(0.0).classical_order(), 0);
        assert_eq!(order(2.0).integer_order(), Some(2));
        assert_eq!(order(2.5).integer_order(), None);
    }

    #[test]
    fn poly_examples() {
        assert_eq!(caputo_poly(&Polynomial::constant(5.0), order(0.5), 2.0).unwrap(), 0.0);
        let t2 = Polynomial::monomial(2);
        assert_eq!(caputo_poly(&t2, order(1.0), 3.0).unwrap(), 6.0);
        // 2/Γ(2.5), 40-digit reference 1.50450555612735009852...
        let v = caputo_poly(&t2, order(0.5), 1.0).unwrap();
        assert!(rel(v, 1.504_505_556_127_350_1) <= 1e-14);
        assert!(rel(v, 2.0 / gamma_half(2)) <= 1e-14);
        assert!(matches!(caputo_poly(&t2, order(0.5), 0.0), Err(Error::Domain(_))));
        assert!(matches!(caputo_poly(&t2, order(0.5), -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn poly_integer_orders_are_classical() {
        let p = Polynomial::new(vec![3.0, -1.0, 2.0, 0.5]);
        assert_eq!(caputo_poly(&p, order(0.0), 2.0).unwrap(), p.eval(2.0));
        assert_eq!(caputo_poly(&p, order(1.0), 2.0).unwrap(), p.derivative().eval(2.0));
        assert_eq!(caputo_poly(&p, order(2.0), 2.0).unwrap(), p.nth_derivative(2).eval(2.0));
        assert_eq!(caputo_poly(&p, order(4.0), 2.0).unwrap(), 0.0);
    }

    #[test]
    fn poly_high_orders() {
        // α = 2.5 kills t, t², leaves t³ → Γ(4)/Γ(1.5) T^0.5.
        let p = Polynomial::new(vec![1.0, 1.0, 1.0, 1.0]);
        let v = caputo_poly(&p, order(2.5), 4.0).unwrap();
        assert!(rel(v, 6.0 / gamma_half(1) * 2.0) <= 1e-14);
        // High-degree monomial goes through the log-gamma path.
        let v = caputo_poly(&Polynomial::monomial(200), order(0.5), 1.0).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn l1_examples() {
        let c = SampledSeries::new(0.1, vec![7.0; 11]).unwrap();
        assert_eq!(caputo_l1(&c, order(0.5)).unwrap(), 0.0);

        let t2 = sample(&Polynomial::monomial(2), 1.0, 4096).unwrap();
        let v = caputo_l1(&t2, order(0.5)).unwrap();
        assert!(rel(v, 2.0 / gamma_half(2)) <= 5e-3);

        let t1 = sample(&Polynomial::monomial(1), 1.0, 1024).unwrap();
        let v = caputo_l1(&t1, order(0.5)).unwrap();
        assert!(rel(v, core::f64::consts::FRAC_2_SQRT_PI) <= 1e-10);
    }

    #[test]
    fn l1_endpoint_orders() {
        let s = sample(&Polynomial::monomial(2), 1.0, 100).unwrap();
        assert_eq!(caputo_l1(&s, order(0.0)).unwrap(), 1.0);
        assert!((caputo_l1(&s, order(1.0)).unwrap() - 2.0).abs() < 1e-10);
        assert!(matches!(caputo_l1(&s, order(1.2)), Err(Error::Domain(_))));
    }

    #[test]
    fn extended_examples() {
        let c = SampledSeries::new(0.25, vec![3.0; 9]).unwrap();
        assert!(caputo_l1_extended(&c, order(1.5)).unwrap().abs() <= 1e-10);

        let t2 = sample(&Polynomial::monomial(2), 1.0, 4096).unwrap();
        let v = caputo_l1_extended(&t2, order(1.5)).unwrap();
        assert!(rel(v, 2.256_758_334_2) <= 1e-2);
        assert!(rel(v, 2.0 / gamma_half(1)) <= 1e-2);

        let t1 = sample(&Polynomial::monomial(1), 1.0, 4096).unwrap();
        assert!(caputo_l1_extended(&t1, order(1.5)).unwrap().abs() <= 1e-6);

        assert!(matches!(caputo_l1_extended(&t1, order(1.0)), Err(Error::Domain(_))));
        assert!(matches!(caputo_l1_extended(&t1, order(2.0)), Err(Error::Domain(_))));
        let short = SampledSeries::new(1.0, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(
            caputo_l1_extended(&short, order(1.5)),
            Err(Error::InsufficientData { needed: 4, got: 3 })
        );
    }

    #[test]
    fn integer_examples() {
        let s = sample(&Polynomial::monomial(2), 1.0, 1000).unwrap();
        assert_eq!(caputo_integer(&s, 0).unwrap(), 1.0);
        assert!((caputo_integer(&s, 1).unwrap() - 2.0).abs() <= 1e-4);
        assert!((caputo_integer(&s, 2).unwrap() - 2.0).abs() <= 1e-2);
        assert!(matches!(caputo_integer(&s, 3), Err(Error::Domain(_))));
        let short = SampledSeries::new(1.0, vec![0.0, 1.0, 4.0, 9.0]).unwrap();
        assert!(caputo_integer(&short, 1).is_ok());
        assert_eq!(caputo_integer(&short, 2), Err(Error::InsufficientData { needed: 4, got: 3 }));
    }

    #[test]
    fn numeric_dispatch() {
        let s = sample(&Polynomial::monomial(3), 1.0, 2048).unwrap();
        for a in [0.3, 1.0, 1.4] {
            let exact = caputo_poly(&Polynomial::monomial(3), order(a), 1.0).unwrap();
            assert!(rel(caputo_numeric(&s, order(a)).unwrap(), exact) <= 1e-2, "alpha {a}");
        }
        assert!(matches!(caputo_numeric(&s, order(2.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_order_is_not_the_small_alpha_limit() {
        // D^0 f = f(T) by convention, while α → 0⁺ of the integral gives f(T) - f(0).
        let p = Polynomial::new(vec![5.0, 1.0]);
        let at_zero = caputo_poly(&p, order(0.0), 2.0).unwrap();
        let near_zero = caputo_poly(&p, order(1e-9), 2.0).unwrap();
        assert_eq!(at_zero, 7.0);
        assert!((near_zero - 2.0).abs() < 1e-6);
    }

    #[test]
    fn convergence_order() {
        let p = Polynomial::monomial(3);
        let exact = caputo_poly(&p, order(0.5), 1.0).unwrap();
        let err = |n| (caputo_l1(&sample(&p, 1.0, n).unwrap(), order(0.5)).unwrap() - exact).abs();
        assert!(err(512) / err(1024) >= libm::pow(2.0, 1.3));
    }

    #[test]
    fn signal_dispatch_truncates() {
        let p = Polynomial::monomial(2);
        let s = Signal::Sampled(sample(&p, 2.0, 4000).unwrap());
        let v = s.caputo(order(0.5), 1.0).unwrap();
        assert!(rel(v, caputo_poly(&p, order(0.5), 1.0).unwrap()) <= 5e-3);
        assert_eq!(s.value_at(1.0).unwrap(), 1.0);
        assert!(matches!(s.caputo(order(0.5), 0.0), Err(Error::Domain(_))));
    }

    fn coeffs() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-10.0f64..10.0, 0..6)
    }

    proptest! {
        #[test]
        fn poly_linearity(p in coeffs(), q in coeffs(), a in -3.0f64..3.0, b in -3.0f64..3.0,
                          alpha in 0.01f64..3.0, t in 0.1f64..5.0) {
            let (p, q) = (Polynomial::new(p), Polynomial::new(q));
            let alpha = order(alpha);
            let combo = &(a * &p) + &(b * &q);
            let lhs = caputo_poly_scaled(&combo, alpha, t).unwrap();
            let rhs = a * caputo_poly(&p, alpha, t).unwrap() + b * caputo_poly(&q, alpha, t).unwrap();
            prop_assert!((lhs.value - rhs).abs() <= 1e-12 * lhs.scale.max(1e-300) + 1e-300);
        }

        #[test]
        fn l1_linearity(a in -3.0f64..3.0, b in -3.0f64..3.0, alpha in 0.01f64..0.99) {
            let p = sample(&Polynomial::new(vec![1.0, -2.0, 0.5]), 1.0, 256).unwrap();
            let q = sample(&Polynomial::new(vec![0.0, 0.0, 0.0, 1.0]), 1.0, 256).unwrap();
            let combo = p.scaled(a).try_add(&q.scaled(b)).unwrap();
            let alpha = order(alpha);
            let lhs = caputo_l1_scaled(&combo, alpha).unwrap();
            let rhs = a * caputo_l1(&p, alpha).unwrap() + b * caputo_l1(&q, alpha).unwrap();
            prop_assert!((lhs.value - rhs).abs() <= 1e-12 * lhs.scale.max(1.0));
        }

        #[test]
        fn constants_vanish(c in -1e3f64..1e3, alpha in 0.001f64..1.999) {
            let alpha = order(alpha);
            prop_assert!(caputo_poly(&Polynomial::constant(c), alpha, 3.0).unwrap().abs() <= 1e-12);
            let s = SampledSeries::new(0.01, vec![c; 300]).unwrap();
            prop_assert!(caputo_numeric(&s, alpha).unwrap().abs() <= 1e-12);
        }

        #[test]
        fn first_order_coincides(p in coeffs(), t in 0.1f64..5.0) {
            let p = Polynomial::new(p);
            prop_assert_eq!(caputo_poly(&p, order(1.0), t).unwrap(), p.derivative().eval(t));
        }
    }
}
