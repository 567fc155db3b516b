//! Dense polynomials in `t`.

use alloc::vec::Vec;
use core::ops::{Add, Mul};

/// Polynomial `Σ coeffs[k] · t^k`. An empty coefficient list is the zero
/// polynomial.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending-power coefficients.
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: f64) -> Self {
        Self::new(alloc::vec![c])
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = alloc::vec![0.0; k + 1];
        coeffs[k] = 1.0;
        Self::new(coeffs)
    }

    /// Ascending-power coefficients.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Index of the last non-zero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    /// Horner evaluation at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// First derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Self::new(coeffs)
    }

    /// `order`-th derivative.
    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// Largest `|p(t)|` over `samples + 1` equally spaced points of `[0, t_end]`.
    pub fn max_abs_on(&self, t_end: f64, samples: usize) -> f64 {
        let samples = samples.max(1);
        (0..=samples)
            .map(|i| self.eval(t_end * i as f64 / samples as f64).abs())
            .fold(0.0, f64::max)
    }
}

impl From<Vec<f64>> for Polynomial {
    fn from(coeffs: Vec<f64>) -> Self {
        Self::new(coeffs)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let at = |p: &Polynomial, k: usize| p.coeffs.get(k).copied().unwrap_or(0.0);
        Polynomial::new((0..len).map(|k| at(self, k) + at(rhs, k)).collect())
    }
}

impl Mul<&Polynomial> for f64 {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::new(rhs.coeffs.iter().map(|c| self * c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn eval_and_degree() {
        let p = Polynomial::new(vec![70.0, -0.2, 0.001]);
        assert_eq!(p.eval(0.0), 70.0);
        assert!((p.eval(100.0) - 60.0).abs() < 1e-12);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Polynomial::new(vec![0.0, 0.0]).degree(), None);
        assert_eq!(Polynomial::default().eval(3.0), 0.0);
    }

    #[test]
    fn derivatives() {
        let p = Polynomial::new(vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(p.derivative().coeffs(), &[2.0, 6.0, 12.0]);
        assert_eq!(p.nth_derivative(2).coeffs(), &[6.0, 24.0]);
        assert!(p.nth_derivative(4).coeffs().is_empty());
        assert_eq!(Polynomial::monomial(3).coeffs(), &[0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn arithmetic() {
        let p = Polynomial::new(vec![1.0, 2.0]);
        let q = Polynomial::new(vec![0.0, 0.0, 5.0]);
        assert_eq!((&p + &q).coeffs(), &[1.0, 2.0, 5.0]);
        assert_eq!((3.0 * &p).coeffs(), &[3.0, 6.0]);
    }
}
