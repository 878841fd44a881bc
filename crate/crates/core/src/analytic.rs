//! Closed-form two-level solutions.
//!
//! * Rotating-wave approximation for `F(t) = f sin ωt`: only the slow
//!   `e^{±i(ω−Δ₁₀)t}` terms are kept, levels 2 and 3 are frozen, and
//!
//!   ```text
//!   a₀(t) = r₀ e^{i(ω−Δ₁₀−Ω)t/2} + s₀ e^{i(ω−Δ₁₀+Ω)t/2}
//!   a₁(t) = r₁ e^{−i(ω−Δ₁₀−Ω)t/2} + s₁ e^{−i(ω−Δ₁₀+Ω)t/2}
//!   ```
//!
//!   with the Rabi frequency `Ω = √((ω−Δ₁₀)² + (αf/ħ)²)`.
//! * Two-level approximation for the step field `F(t) = fΘ(t)`, oscillating
//!   at `(Ω_s ± Δ₁₀)/2` with `Ω_s = √(Δ₁₀² + 4(αf/ħ)²)`.

use num_complex::Complex64 as C64;

use crate::coupled::CoupledSystem;
use crate::dynamics::{Amplitudes, InitialState};
use crate::error::Result;

const I: C64 = C64 { re: 0.0, im: 1.0 };

pub fn rabi_frequency(sys: &CoupledSystem, f: f64, omega: f64) -> f64 {
    (omega - sys.delta10()).hypot(sys.alpha * f / sys.hbar())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RwaSolution {
    pub r0: C64,
    pub s0: C64,
    pub r1: C64,
    pub s1: C64,
    /// Rabi angular frequency Ω.
    pub rabi: f64,
    pub omega: f64,
    pub delta10: f64,
    pub a2: C64,
    pub a3: C64,
}

impl RwaSolution {
    /// `ω − Δ₁₀`
    pub fn detuning(&self) -> f64 {
        self.omega - self.delta10
    }

    pub fn amplitudes(&self, t: f64) -> Amplitudes {
        let d = self.detuning();
        let slow = C64::from_polar(1.0, 0.5 * (d - self.rabi) * t);
        let fast = C64::from_polar(1.0, 0.5 * (d + self.rabi) * t);
        [self.r0 * slow + self.s0 * fast, self.r1 * slow.conj() + self.s1 * fast.conj(), self.a2, self.a3]
    }

    /// Amplitudes at `t = 0`.
    pub fn initial(&self) -> Amplitudes {
        [self.r0 + self.s0, self.r1 + self.s1, self.a2, self.a3]
    }
}

/// RWA solution with effective coupling `κ = αf/ħ` (for the symmetric drive).
fn rwa_with_coupling(a: &Amplitudes, kappa: f64, omega: f64, delta10: f64) -> RwaSolution {
    let d = omega - delta10;
    let rabi = d.hypot(kappa);
    let (a0, a1) = (a[0], a[1]);
    if rabi == 0.0 {
        return RwaSolution {
            r0: a0,
            s0: C64::new(0.0, 0.0),
            r1: a1,
            s1: C64::new(0.0, 0.0),
            rabi,
            omega,
            delta10,
            a2: a[2],
            a3: a[3],
        };
    }
    let inv = 1.0 / (2.0 * rabi);
    // integration constants A, B
    let big_a = I * (kappa * inv) * a0 + a1 * ((d + rabi) * inv);
    let big_b = -I * (kappa * inv) * a0 - a1 * ((d - rabi) * inv);
    // r₀ = B(i/κ)(d+Ω), s₀ = A(i/κ)(d−Ω), expanded with d² − Ω² = −κ² so
    // that κ → 0 stays regular
    let r0 = a0 * ((d + rabi) * inv) + I * (kappa * inv) * a1;
    let s0 = a0 * ((rabi - d) * inv) - I * (kappa * inv) * a1;
    RwaSolution { r0, s0, r1: big_a, s1: big_b, rabi, omega, delta10, a2: a[2], a3: a[3] }
}

/// RWA for the symmetric drive `F₁ = F₂ = f sin ωt`.
pub fn rwa_solve(initial: &InitialState, sys: &CoupledSystem, f: f64, omega: f64) -> Result<RwaSolution> {
    let a = initial.amplitudes()?;
    Ok(rwa_with_coupling(&a, sys.alpha * f / sys.hbar(), omega, sys.delta10()))
}

pub fn rwa_amplitudes(sol: &RwaSolution, t: f64) -> Amplitudes {
    sol.amplitudes(t)
}

/// RWA for `F₁ = f sin ωt`, `F₂ = 0`: identical to the symmetric case at
/// amplitude `f/2`.
pub fn rwa_single_well_drive(initial: &InitialState, sys: &CoupledSystem, f: f64, omega: f64) -> Result<RwaSolution> {
    rwa_solve(initial, sys, 0.5 * f, omega)
}

/// Long-time averages of `Γ²` and `C²` under the RWA.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RwaAverages {
    pub corr_sq: f64,
    pub conc_sq: f64,
}

pub fn rwa_time_averages(sol: &RwaSolution, sys: &CoupledSystem) -> RwaAverages {
    let (r0, s0, r1, s1) = (sol.r0.norm_sqr(), sol.s0.norm_sqr(), sol.r1.norm_sqr(), sol.s1.norm_sqr());
    let corr_sq = (sol.r0 + sol.s0).norm_sqr() * (r0 + s0) + (sol.r1 + sol.s1).norm_sqr() * (r1 + s1);
    let sin2 = (2.0 * sys.theta).sin();
    let conc_sq = (r1 * r1 + s1 * s1 + 4.0 * r1 * s1) + sin2 * sin2 * (r0 * r0 + s0 * s0 + 4.0 * r0 * s0);
    RwaAverages { corr_sq, conc_sq }
}

/// Two-level solution for the symmetric step field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TlaStepSolution {
    /// `Ω_s = √(Δ₁₀² + 4(αf/ħ)²)`
    pub rabi_step: f64,
    pub delta10: f64,
    pub alpha: f64,
    pub f: f64,
    /// Integration constants multiplying `e^{i(Δ₁₀∓Ω_s)t/2}` in `a₁`.
    pub big_a: C64,
    pub big_b: C64,
    /// `a₀(0)`, `a₁(0)`
    a0: C64,
    a1: C64,
    kappa: f64,
    pub a2: C64,
    pub a3: C64,
}

impl TlaStepSolution {
    pub fn new(initial: &InitialState, sys: &CoupledSystem, f: f64) -> Result<Self> {
        let a = initial.amplitudes()?;
        let kappa = sys.alpha * f / sys.hbar();
        let delta10 = sys.delta10();
        let rabi_step = delta10.hypot(2.0 * kappa);
        let inv = 1.0 / (2.0 * rabi_step);
        let big_a = (a[1] * (delta10 + rabi_step) - a[0] * (2.0 * kappa)) * inv;
        let big_b = (a[1] * (rabi_step - delta10) + a[0] * (2.0 * kappa)) * inv;
        Ok(Self {
            rabi_step,
            delta10,
            alpha: sys.alpha,
            f,
            big_a,
            big_b,
            a0: a[0],
            a1: a[1],
            kappa,
            a2: a[2],
            a3: a[3],
        })
    }

    pub fn amplitudes(&self, t: f64) -> Amplitudes {
        let (d, w) = (self.delta10, self.rabi_step);
        let lower = C64::from_polar(1.0, 0.5 * (d - w) * t);
        let upper = C64::from_polar(1.0, 0.5 * (d + w) * t);
        let inv = 1.0 / (2.0 * w);
        // (ħ/2αf)(Δ∓Ω_s)·{A,B}, expanded so that f → 0 stays regular
        let coef_upper = -(self.a1 * self.kappa) / w - self.a0 * ((d - w) * inv);
        let coef_lower = (self.a1 * self.kappa) / w + self.a0 * ((d + w) * inv);
        [
            coef_upper * upper.conj() + coef_lower * lower.conj(),
            self.big_a * lower + self.big_b * upper,
            self.a2,
            self.a3,
        ]
    }
}

/// Two-level step-field amplitudes from the ground state.
pub fn tla_step_amplitudes(sys: &CoupledSystem, f: f64, t: f64) -> Amplitudes {
    TlaStepSolution::new(&InitialState::Ground, sys, f).expect("ground state is always valid").amplitudes(t)
}
