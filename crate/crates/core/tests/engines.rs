//! Analytic and numerical engines against independent closed forms.

use std::f64::consts::PI;

use fracmem_core::caputo::{caputo_l1, caputo_l1_extended, caputo_numeric, caputo_poly, FracOrder, Signal};
use fracmem_core::indicators::{t_indicator, IndicatorPair};
use fracmem_core::poly::Polynomial;
use fracmem_core::series::{demo_process, sample, DemoId};

fn order(a: f64) -> FracOrder {
    FracOrder::new(a).unwrap()
}

/// Γ(x) for x in {k, k + 1/2}, from factorials and √π.
fn gamma_oracle(x: f64) -> f64 {
    let (mut g, mut z) = if x.fract() == 0.0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while z < x {
        g *= z;
        z += 1.0;
    }
    g
}

#[test]
fn power_rule_half_orders() {
    for beta in 0..=6usize {
        for alpha in [0.5, 1.5, 2.5] {
            let got = caputo_poly(&Polynomial::monomial(beta), order(alpha), 2.0).unwrap();
            let n = alpha as usize + 1;
            let want = if beta < n {
                0.0
            } else {
                let b = beta as f64;
                gamma_oracle(b + 1.0) / gamma_oracle(b + 1.0 - alpha) * 2f64.powf(b - alpha)
            };
            assert!((got - want).abs() <= 1e-13 * want.abs().max(1.0), "beta {beta} alpha {alpha}: {got} vs {want}");
        }
    }
}

#[test]
fn l1_matches_power_rule() {
    for beta in 1..=4usize {
        let s = sample(&Polynomial::monomial(beta), 1.0, 4096).unwrap();
        for alpha in [0.25, 0.5, 0.75] {
            let exact = caputo_poly(&Polynomial::monomial(beta), order(alpha), 1.0).unwrap();
            let got = caputo_l1(&s, order(alpha)).unwrap();
            assert!(((got - exact) / exact).abs() <= 5e-3, "beta {beta} alpha {alpha}");
        }
    }
}

#[test]
fn extended_matches_power_rule() {
    for beta in 2..=4usize {
        let s = sample(&Polynomial::monomial(beta), 1.0, 4096).unwrap();
        for alpha in [1.25, 1.5, 1.75] {
            let exact = caputo_poly(&Polynomial::monomial(beta), order(alpha), 1.0).unwrap();
            let got = caputo_l1_extended(&s, order(alpha)).unwrap();
            assert!(((got - exact) / exact).abs() <= 1e-2, "beta {beta} alpha {alpha}: {got} vs {exact}");
        }
    }
}

#[test]
fn sampled_and_closed_form_indicators_agree() {
    for id in [DemoId::Fig1, DemoId::Fig2] {
        let d = demo_process(id);
        let t = d.t_end;
        let closed = IndicatorPair::new(Signal::Poly(d.x.clone()), Signal::Poly(d.y.clone())).unwrap();
        let sampled = IndicatorPair::new(
            Signal::Sampled(sample(&d.x, t, 8000).unwrap()),
            Signal::Sampled(sample(&d.y, t, 8000).unwrap()),
        )
        .unwrap();
        for alpha in [0.0, 0.2, 0.5, 0.8, 1.0] {
            let a = t_indicator(&closed, order(alpha), t).unwrap();
            let b = t_indicator(&sampled, order(alpha), t).unwrap();
            assert!(((a - b) / a).abs() <= 1e-2, "{id:?} alpha {alpha}: {a} vs {b}");
        }
    }
}

#[test]
fn error_shrinks_with_refinement() {
    let p = Polynomial::new(vec![1.0, -1.0, 0.5, 0.25]);
    let exact = caputo_poly(&p, order(0.3), 2.0).unwrap();
    let errs: Vec<f64> = [128, 256, 512, 1024]
        .iter()
        .map(|&n| (caputo_numeric(&sample(&p, 2.0, n).unwrap(), order(0.3)).unwrap() - exact).abs())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}
