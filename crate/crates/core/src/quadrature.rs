//! Composite Gauss–Legendre quadrature with panel doubling.

use crate::error::{Error, Result};

const ORDER: usize = 10;

/// Nodes and weights of the `ORDER`-point Gauss–Legendre rule on [−1, 1].
fn gauss_legendre() -> ([f64; ORDER], [f64; ORDER]) {
    let mut nodes = [0.0; ORDER];
    let mut weights = [0.0; ORDER];
    let n = ORDER as f64;
    for i in 0..ORDER {
        // Chebyshev initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=ORDER {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, rule: &([f64; ORDER], [f64; ORDER])) -> f64 {
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let mut sum = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        let mut panel = 0.0;
        for (x, w) in rule.0.iter().zip(rule.1.iter()) {
            panel += w * f(mid + half * x);
        }
        sum += half * panel;
    }
    sum
}

/// Integrates `f` over `[a, b]`, doubling the panel count until two successive
/// estimates differ by at most `tol` relative to the larger of 1 and the
/// estimate.
pub(crate) fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, max_panels: usize) -> Result<f64> {
    let rule = gauss_legendre();
    let mut panels = 4;
    let mut prev = composite(&f, a, b, panels, &rule);
    loop {
        panels *= 2;
        let next = composite(&f, a, b, panels, &rule);
        let change = (next - prev).abs();
        if change <= tol * next.abs().max(1.0) {
            return Ok(next);
        }
        if panels >= max_panels {
            return Err(Error::QuadratureNonConvergence { panels, change });
        }
        prev = next;
    }
}
