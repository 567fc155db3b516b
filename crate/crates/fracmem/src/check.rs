//! Built-in oracle suite run by `fracmem check`.
//!
//! Each check compares the engines against closed forms that do not go
//! through the implementation under test (√π-based half-integer gamma
//! values, factorials, exact polynomial derivatives) or against each other.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use fracmem_core::caputo::{caputo_l1, caputo_numeric, caputo_poly, FracOrder, Signal};
use fracmem_core::indicators::{average_indicator, marginal_indicator, t_indicator, t_indicator_time, IndicatorPair};
use fracmem_core::poly::Polynomial;
use fracmem_core::series::{demo_process, sample, DemoId};
use fracmem_core::specfun::gamma;
use fracmem_core::Error;
use rand::{rngs::StdRng, Rng, SeedableRng};

/// Seed for every randomized check, so runs are reproducible.
pub const SEED: u64 = 0x5eed_0ca9;

/// Reference T-indicator of the quadratic demo at α = 0.5, T = 200,
/// from the term-by-term power rule in 30-digit arithmetic.
pub const FIG1_HALF_ORDER_REFERENCE: f64 = -5.0;

#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type CheckResult = Result<(bool, String), Error>;

fn order(a: f64) -> FracOrder {
    FracOrder::new(a).expect("valid order")
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Γ(m + 1/2) from √π and the recurrence.
pub fn gamma_half(m: u32) -> f64 {
    (0..m).fold(PI.sqrt(), |g, i| g * (f64::from(i) + 0.5))
}

fn poly_pair(id: DemoId) -> IndicatorPair {
    let d = demo_process(id);
    IndicatorPair::new(Signal::Poly(d.x), Signal::Poly(d.y)).expect("closed-form pair")
}

fn power_rule_oracle() -> CheckResult {
    let mut worst = 0.0_f64;
    let mut zero_ok = true;
    let mut slowest = Duration::ZERO;
    for beta in 1..=4 {
        let p = Polynomial::monomial(beta);
        for alpha in [0.25, 0.5, 0.75] {
            let start = Instant::now();
            let numeric = caputo_l1(&sample(&p, 1.0, 4096)?, order(alpha))?;
            slowest = slowest.max(start.elapsed());
            let exact = caputo_poly(&p, order(alpha), 1.0)?;
            if exact == 0.0 {
                zero_ok &= numeric.abs() <= 1e-6;
            } else {
                worst = worst.max(rel(numeric, exact));
            }
        }
    }
    let ok = worst <= 5e-3 && zero_ok && slowest <= Duration::from_secs(1);
    Ok((ok, format!("max rel err {worst:.3e} (tol 5e-3), slowest case {slowest:.2?}")))
}

fn constant_annihilation(rng: &mut StdRng) -> CheckResult {
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let alpha = order(rng.gen_range(1e-6..2.0 - 1e-6));
        let c = rng.gen_range(-1e3..1e3);
        let analytic = caputo_poly(&Polynomial::constant(c), alpha, 1.0)?;
        let numeric = caputo_numeric(&sample(&Polynomial::constant(c), 1.0, 1000)?, alpha)?;
        worst = worst.max(analytic.abs()).max(numeric.abs());
    }
    Ok((worst <= 1e-12, format!("max |D^a c| {worst:.3e} over 20 orders (tol 1e-12)")))
}

fn zero_order_degeneration(rng: &mut StdRng) -> CheckResult {
    let mut mismatches = 0;
    for id in [DemoId::Fig1, DemoId::Fig2] {
        let pair = poly_pair(id);
        let t_end = demo_process(id).t_end;
        for _ in 0..10 {
            let t = rng.gen_range(0.0..t_end);
            let a = average_indicator(&pair, t)?;
            let b = t_indicator(&pair, order(0.0), t)?;
            if a.to_bits() != b.to_bits() {
                mismatches += 1;
            }
        }
    }
    Ok((mismatches == 0, format!("{mismatches} of 20 evaluations differ from Y(T)/X(T)")))
}

fn first_order_degeneration() -> CheckResult {
    let d = demo_process(DemoId::Fig1);
    let sampled = IndicatorPair::new(
        Signal::Sampled(sample(&d.x, 200.0, 20_000)?),
        Signal::Sampled(sample(&d.y, 200.0, 20_000)?),
    )?;
    let numeric = t_indicator(&sampled, order(1.0), 200.0)?;
    let pair = poly_pair(DemoId::Fig1);
    let analytic = t_indicator(&pair, order(1.0), 200.0)?;
    let marginal = marginal_indicator(&pair, 200.0)?;
    let exact = (0.02 * 200.0 - 3.0) / (0.002 * 200.0 - 0.2);
    let ok = rel(numeric, exact) <= 1e-3 && analytic == marginal && (analytic - exact).abs() <= 1e-12;
    Ok((ok, format!("sampled {numeric} (rel err {:.3e}), closed form {analytic}", rel(numeric, exact))))
}

fn time_factor_consistency() -> CheckResult {
    let y = demo_process(DemoId::Fig1).y;
    let t_end = 100.0;
    let (mut poly_err, mut num_err) = (0.0_f64, 0.0_f64);
    for alpha in [0.3, 0.7] {
        let pair = IndicatorPair::new(Signal::Poly(Polynomial::monomial(1)), Signal::Poly(y.clone()))?;
        let closed = t_indicator_time(&Signal::Poly(y.clone()), order(alpha), t_end)?;
        poly_err = poly_err.max(rel(closed, t_indicator(&pair, order(alpha), t_end)?));

        let ys = Signal::Sampled(sample(&y, t_end, 4096)?);
        let xs = Signal::Sampled(sample(&Polynomial::monomial(1), t_end, 4096)?);
        let closed = t_indicator_time(&ys, order(alpha), t_end)?;
        num_err = num_err.max(rel(closed, t_indicator(&IndicatorPair::new(xs, ys)?, order(alpha), t_end)?));
    }
    let ok = poly_err <= 1e-12 && num_err <= 5e-3;
    Ok((ok, format!("rel err closed form {poly_err:.3e} (tol 1e-12), sampled {num_err:.3e} (tol 5e-3)")))
}

fn intermediate_value() -> CheckResult {
    let sqrt_pi = PI.sqrt();
    let quad = 2.0 / (0.75 * sqrt_pi) * 200f64.powf(1.5);
    let lin = 1.0 / (0.5 * sqrt_pi) * 200f64.sqrt();
    let oracle = (0.01 * quad - 3.0 * lin) / (0.001 * quad - 0.2 * lin);
    let v = t_indicator(&poly_pair(DemoId::Fig1), order(0.5), 200.0)?;
    let ok = (v - FIG1_HALF_ORDER_REFERENCE).abs() <= 1e-8 && (v - oracle).abs() <= 1e-8;
    Ok((ok, format!("value {v}, reference {FIG1_HALF_ORDER_REFERENCE} (tol 1e-8)")))
}

fn gamma_quality(rng: &mut StdRng) -> CheckResult {
    let half = rel(gamma(0.5)?, PI.sqrt());
    let mut fact = 1.0_f64;
    let mut fact_err = 0.0_f64;
    for k in 1..=20u32 {
        if k > 1 {
            fact *= f64::from(k - 1);
        }
        fact_err = fact_err.max(rel(gamma(f64::from(k))?, fact));
    }
    let mut rec_err = 0.0_f64;
    for _ in 0..1000 {
        let z = rng.gen_range(0.1..20.0);
        let g1 = gamma(z + 1.0)?;
        rec_err = rec_err.max(((g1 - z * gamma(z)?) / g1).abs());
    }
    let ok = half <= 1e-10 && fact_err <= 1e-12 && rec_err <= 1e-10;
    Ok((ok, format!("sqrt(pi) {half:.2e}, factorials {fact_err:.2e}, recurrence {rec_err:.2e}")))
}

fn convergence_order() -> CheckResult {
    let p = Polynomial::monomial(3);
    let exact = 6.0 / gamma_half(3);
    let err = |n| -> Result<f64, Error> { Ok((caputo_l1(&sample(&p, 1.0, n)?, order(0.5))? - exact).abs()) };
    let ratio = err(512)? / err(1024)?;
    let bound = 2f64.powf(1.3);
    Ok((ratio >= bound, format!("error ratio {ratio:.4} (need >= {bound:.4})")))
}

/// Runs every check in order.
pub fn run_checks() -> Vec<CheckOutcome> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut out = Vec::new();
    let mut push = |id, name, res: CheckResult| {
        let (passed, detail) = res.unwrap_or_else(|e| (false, e.to_string()));
        out.push(CheckOutcome { id, name, passed, detail });
    };
    push(1, "power-rule oracle equivalence", power_rule_oracle());
    push(2, "constant annihilation", constant_annihilation(&mut rng));
    push(3, "order 0 equals average indicator", zero_order_degeneration(&mut rng));
    push(4, "order 1 equals marginal indicator", first_order_degeneration());
    push(5, "time-as-factor closed form", time_factor_consistency());
    push(7, "intermediate-order reference value", intermediate_value());
    push(8, "gamma quality gates", gamma_quality(&mut rng));
    push(9, "L1 convergence order", convergence_order());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half_values() {
        assert!((gamma_half(0) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half(2) - 0.75 * PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn all_checks_pass() {
        for c in run_checks() {
            assert!(c.passed, "check {} failed: {}", c.id, c.detail);
        }
    }
}
