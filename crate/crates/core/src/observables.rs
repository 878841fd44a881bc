//! Expectation values, correlation, concurrence and wavefunction density.
//!
//! Every function takes interaction-picture amplitudes, so exact, RWA and TLA
//! trajectories are all handled the same way.

use num_complex::Complex64 as C64;

use crate::analytic::RwaSolution;
use crate::coupled::CoupledSystem;
use crate::dynamics::{AmplitudeState, Amplitudes};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Positions {
    pub x1: f64,
    pub x2: f64,
    pub x_sum: f64,
}

/// `⟨x₁⟩`, `⟨x₂⟩` and `⟨x₁ + x₂⟩` from the Φ-basis dipole elements
/// `⟨Φ₀|x_n|Φ₁⟩ = α/2`, `⟨Φ₀|x_n|Φ₂⟩ = ±β/2`, `⟨Φ₁|x_n|Φ₃⟩ = β/2`,
/// `⟨Φ₂|x_n|Φ₃⟩ = ∓α/2` (upper sign for particle 1).
pub fn expectation_positions(state: &AmplitudeState, sys: &CoupledSystem) -> Positions {
    let a = &state.a;
    let t = state.t;
    let term = |mu: usize, nu: usize| (a[mu].conj() * a[nu] * C64::from_polar(1.0, -sys.gap(nu, mu) * t)).re;
    let t01 = term(0, 1);
    let t02 = term(0, 2);
    let t13 = term(1, 3);
    let t23 = term(2, 3);
    let x1 = sys.alpha * (t01 - t23) + sys.beta * (t02 + t13);
    let x2 = sys.alpha * (t01 + t23) + sys.beta * (t13 - t02);
    Positions { x1, x2, x_sum: 2.0 * sys.alpha * t01 + 2.0 * sys.beta * t13 }
}

/// `⟨x₁ + x₂⟩` under the RWA as the sum of components at `ω` and `ω ± Ω`.
pub fn rwa_expectation(sol: &RwaSolution, sys: &CoupledSystem, t: f64) -> f64 {
    let w = sol.omega;
    let om = sol.rabi;
    let z = (sol.r0.conj() * sol.s1 + sol.s0.conj() * sol.r1) * C64::from_polar(1.0, -w * t)
        + sol.r0.conj() * sol.r1 * C64::from_polar(1.0, -(w - om) * t)
        + sol.s0.conj() * sol.s1 * C64::from_polar(1.0, -(w + om) * t);
    2.0 * sys.alpha * z.re
}

/// `Γ² = |Σ_ν a_ν*(0) a_ν(t) e^{−iΔ_ν0 t}|²`
pub fn correlation_sq(state: &AmplitudeState, initial: &Amplitudes, sys: &CoupledSystem) -> f64 {
    let t = state.t;
    let overlap: C64 =
        (0..4).map(|nu| initial[nu].conj() * state.a[nu] * C64::from_polar(1.0, -sys.gap(nu, 0) * t)).sum();
    overlap.norm_sqr()
}

pub fn correlation(state: &AmplitudeState, initial: &Amplitudes, sys: &CoupledSystem) -> f64 {
    correlation_sq(state, initial, sys).sqrt()
}

/// `C²` in terms of the Φ-basis amplitudes.
pub fn concurrence_sq(state: &AmplitudeState, sys: &CoupledSystem) -> f64 {
    let a = &state.a;
    let t = state.t;
    let (s2, c2) = (2.0 * sys.theta).sin_cos();
    let phase = |nu: usize, k: f64| C64::from_polar(1.0, -k * sys.gap(nu, 0) * t);
    let z = (a[0] * a[0] - a[3] * a[3] * phase(3, 2.0)) * s2 + a[0] * a[3] * phase(3, 1.0) * (2.0 * c2)
        - a[1] * a[1] * phase(1, 2.0)
        + a[2] * a[2] * phase(2, 2.0);
    z.norm_sqr()
}

pub fn concurrence(state: &AmplitudeState, sys: &CoupledSystem) -> f64 {
    concurrence_sq(state, sys).sqrt()
}

/// Product-basis coefficients `c[k][ℓ]` of `|Ψ⟩ = Σ c_kℓ φ_k(x₁)φ_ℓ(x₂)`,
/// including the free phases `e^{−iE_ν t/ħ}`.
pub fn product_coefficients(state: &AmplitudeState, sys: &CoupledSystem) -> [[C64; 2]; 2] {
    let hbar = sys.hbar();
    let b: [C64; 4] = std::array::from_fn(|nu| state.a[nu] * C64::from_polar(1.0, -sys.energies[nu] * state.t / hbar));
    let u = sys.eigenvector_matrix();
    let mut c = [[C64::new(0.0, 0.0); 2]; 2];
    for (nu, bn) in b.iter().enumerate() {
        for k in 0..2 {
            for l in 0..2 {
                c[k][l] += bn * u[nu][2 * k + l];
            }
        }
    }
    c
}

/// `C = 2|c₀₀c₁₁ − c₀₁c₁₀|`
pub fn concurrence_from_coefficients(c: &[[C64; 2]; 2]) -> f64 {
    2.0 * (c[0][0] * c[1][1] - c[0][1] * c[1][0]).norm()
}

/// `Γ²` under the RWA, written out in the `r, s` constants.
pub fn rwa_correlation_sq(sol: &RwaSolution, t: f64) -> f64 {
    let (r0, s0, r1, s1) = (sol.r0, sol.s0, sol.r1, sol.s1);
    let w = sol.omega;
    let om = sol.rabi;
    let e = |freq: f64| C64::from_polar(1.0, -freq * t);
    let init0 = (r0 + s0).norm_sqr();
    let init1 = (r1 + s1).norm_sqr();
    let level0 = init0 * (r0.norm_sqr() + s0.norm_sqr() + 2.0 * (s0.conj() * r0 * e(om)).re);
    let level1 = init1 * (r1.norm_sqr() + s1.norm_sqr() + 2.0 * (r1.conj() * s1 * e(om)).re);
    let cross = (r0 + s0)
        * (r1 + s1).conj()
        * ((s0.conj() * r1 + r0.conj() * s1) * e(w) + r0.conj() * r1 * e(w - om) + s0.conj() * s1 * e(w + om));
    level0 + level1 + 2.0 * cross.re
}

pub fn rwa_correlation(sol: &RwaSolution, t: f64) -> f64 {
    rwa_correlation_sq(sol, t).max(0.0).sqrt()
}

/// `C²` under the RWA as `D₀ − D₁ sin2θ + D₂ sin²2θ`.
pub fn rwa_concurrence_sq(sol: &RwaSolution, sys: &CoupledSystem, t: f64) -> f64 {
    let (r0, s0, r1, s1) = (sol.r0, sol.s0, sol.r1, sol.s1);
    let w = sol.omega;
    let om = sol.rabi;
    let e = |freq: f64| C64::from_polar(1.0, -freq * t);
    let (nr0, ns0, nr1, ns1) = (r0.norm_sqr(), s0.norm_sqr(), r1.norm_sqr(), s1.norm_sqr());
    let (r0c, s0c, r1c) = (r0.conj(), s0.conj(), r1.conj());

    let d0 = nr1 * nr1
        + ns1 * ns1
        + 4.0 * nr1 * ns1
        + 2.0 * (2.0 * (nr1 + ns1) * r1c * s1 * e(om) + r1c * r1c * s1 * s1 * e(2.0 * om)).re;
    let d1 = 2.0
        * ((r0c * r0c * s1 * s1 + s0c * s0c * r1 * r1 + 4.0 * r0c * s0c * r1 * s1) * e(2.0 * w)
            + 2.0 * (r0c * s0c * r1 * r1 + r0c * r0c * r1 * s1) * e(2.0 * w - om)
            + 2.0 * (r0c * s0c * s1 * s1 + s0c * s0c * r1 * s1) * e(2.0 * w + om)
            + r0c * r0c * r1 * r1 * e(2.0 * (w - om))
            + s0c * s0c * s1 * s1 * e(2.0 * (w + om)))
        .re;
    let d2 = nr0 * nr0
        + ns0 * ns0
        + 4.0 * nr0 * ns0
        + 2.0 * (2.0 * (nr0 + ns0) * s0c * r0 * e(om) + s0c * s0c * r0 * r0 * e(2.0 * om)).re;
    let s2 = (2.0 * sys.theta).sin();
    d0 - d1 * s2 + d2 * s2 * s2
}

pub fn rwa_concurrence(sol: &RwaSolution, sys: &CoupledSystem, t: f64) -> f64 {
    rwa_concurrence_sq(sol, sys, t).max(0.0).sqrt()
}

/// Trapezoidal mean of uniformly or non-uniformly sampled `values`. With a
/// `period`, samples past the last whole period are discarded.
pub fn time_average(times: &[f64], values: &[f64], period: Option<f64>) -> f64 {
    assert_eq!(times.len(), values.len());
    if times.len() < 2 {
        return values.first().copied().unwrap_or(f64::NAN);
    }
    let start = times[0];
    let mut end = times[times.len() - 1];
    if let Some(p) = period.filter(|p| *p > 0.0 && p.is_finite()) {
        let whole = ((end - start) / p).floor();
        if whole >= 1.0 {
            end = start + whole * p;
        }
    }
    let mut integral = 0.0;
    for i in 1..times.len() {
        let (t0, t1) = (times[i - 1], times[i]);
        if t0 >= end {
            break;
        }
        if t1 <= end {
            integral += 0.5 * (values[i - 1] + values[i]) * (t1 - t0);
        } else {
            // partial interval up to the cut
            let w = (end - t0) / (t1 - t0);
            let v_end = values[i - 1] + w * (values[i] - values[i - 1]);
            integral += 0.5 * (values[i - 1] + v_end) * (end - t0);
        }
    }
    integral / (end - start)
}

/// Time series of every observable along a trajectory.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ObservableSeries {
    pub times: Vec<f64>,
    pub populations: Vec<[f64; 4]>,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub x_sum: Vec<f64>,
    pub corr: Vec<f64>,
    pub conc: Vec<f64>,
}

impl ObservableSeries {
    /// Observables of `states`; the correlation is taken against the first
    /// state.
    pub fn from_states(states: &[AmplitudeState], sys: &CoupledSystem) -> Self {
        let mut out = Self::default();
        let Some(first) = states.first() else {
            return out;
        };
        let initial = first.a;
        for s in states {
            let pos = expectation_positions(s, sys);
            out.times.push(s.t);
            out.populations.push(s.populations());
            out.x1.push(pos.x1);
            out.x2.push(pos.x2);
            out.x_sum.push(pos.x_sum);
            out.corr.push(correlation(s, &initial, sys).min(1.0));
            out.conc.push(concurrence(s, sys).min(1.0));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Trapezoidal means of `Γ²` and `C²`.
    pub fn averages(&self, period: Option<f64>) -> (f64, f64) {
        let c2: Vec<f64> = self.corr.iter().map(|v| v * v).collect();
        let k2: Vec<f64> = self.conc.iter().map(|v| v * v).collect();
        (time_average(&self.times, &c2, period), time_average(&self.times, &k2, period))
    }
}

/// Square grid over `[−extent, extent]²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub points: usize,
    pub extent: f64,
    /// Allowed deviation of the integrated density from 1.
    pub norm_tol: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { points: 201, extent: 3.0, norm_tol: 1e-6 }
    }
}

impl GridSpec {
    pub fn axis(&self) -> Vec<f64> {
        let n = self.points;
        let step = 2.0 * self.extent / (n - 1) as f64;
        (0..n).map(|i| -self.extent + i as f64 * step).collect()
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / (self.points - 1) as f64
    }
}

/// `|Ψ(x₁, x₂, t)|²` sampled on a grid; `values[i * x2_axis.len() + j]` is at
/// `(x1_axis[i], x2_axis[j])`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityGrid {
    pub t: f64,
    pub x1_axis: Vec<f64>,
    pub x2_axis: Vec<f64>,
    pub values: Vec<f64>,
    /// Trapezoidal integral of `values`.
    pub norm: f64,
}

impl DensityGrid {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.x2_axis.len() + j]
    }

    fn weights(axis: &[f64]) -> Vec<f64> {
        let n = axis.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { axis[i] - axis[i - 1] } else { 0.0 };
                let right = if i + 1 < n { axis[i + 1] - axis[i] } else { 0.0 };
                0.5 * (left + right)
            })
            .collect()
    }

    /// Trapezoidal `∫∫ w(x₁, x₂) |Ψ|² dx₁ dx₂`.
    pub fn integrate<F: Fn(f64, f64) -> f64>(&self, weight: F) -> f64 {
        let w1 = Self::weights(&self.x1_axis);
        let w2 = Self::weights(&self.x2_axis);
        let mut sum = 0.0;
        for (i, (&x1, &wi)) in self.x1_axis.iter().zip(&w1).enumerate() {
            for (j, (&x2, &wj)) in self.x2_axis.iter().zip(&w2).enumerate() {
                sum += wi * wj * weight(x1, x2) * self.at(i, j);
            }
        }
        sum
    }

    /// Grid point of the global maximum.
    pub fn peak(&self) -> (f64, f64) {
        let (k, _) =
            self.values
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (k, &v)| if v > best.1 { (k, v) } else { best });
        let n2 = self.x2_axis.len();
        (self.x1_axis[k / n2], self.x2_axis[k % n2])
    }

    /// Cosine similarity of the two value arrays (same grid assumed).
    pub fn cosine_similarity(&self, other: &DensityGrid) -> f64 {
        let dot: f64 = self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum();
        let na: f64 = self.values.iter().map(|a| a * a).sum::<f64>().sqrt();
        let nb: f64 = other.values.iter().map(|b| b * b).sum::<f64>().sqrt();
        dot / (na * nb)
    }
}

pub fn density_grid(state: &AmplitudeState, sys: &CoupledSystem, spec: &GridSpec) -> Result<DensityGrid> {
    if spec.points < 2 || !(spec.extent > 0.0) {
        return Err(Error::GridTooCoarse { norm: f64::NAN, tol: spec.norm_tol });
    }
    let axis = spec.axis();
    let phis: Vec<(f64, f64)> = axis.iter().map(|&x| sys.basis.lowest_pair(x)).collect();
    let c = product_coefficients(state, sys);
    let n = axis.len();
    let mut values = Vec::with_capacity(n * n);
    for &(p0_1, p1_1) in &phis {
        let row0 = c[0][0] * p0_1;
        let row1 = c[1][0] * p1_1;
        let row0b = c[0][1] * p0_1;
        let row1b = c[1][1] * p1_1;
        for &(p0_2, p1_2) in &phis {
            let psi = (row0 + row1) * p0_2 + (row0b + row1b) * p1_2;
            values.push(psi.norm_sqr());
        }
    }
    let mut grid = DensityGrid { t: state.t, x1_axis: axis.clone(), x2_axis: axis, values, norm: 0.0 };
    grid.norm = grid.integrate(|_, _| 1.0);
    if !((grid.norm - 1.0).abs() <= spec.norm_tol) {
        return Err(Error::GridTooCoarse { norm: grid.norm, tol: spec.norm_tol });
    }
    Ok(grid)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Particle {
    First,
    Second,
}

/// `⟨x_n⟩` by two-dimensional quadrature of the density.
pub fn grid_oracle_expectation(grid: &DensityGrid, which: Particle) -> f64 {
    match which {
        Particle::First => grid.integrate(|x1, _| x1),
        Particle::Second => grid.integrate(|_, x2| x2),
    }
}
