//! Interaction-picture propagation of the four amplitudes `a₀..a₃`.
//!
//! With `Ψ = Σ a_ν Φ_ν e^{−iE_ν t/ħ}` and `S = F₁ + F₂`, `D = F₁ − F₂`:
//!
//! ```text
//! iħ ȧ₀ = −(α/2) S e^{−iΔ₁₀t} a₁ − (β/2) D e^{−iΔ₂₀t} a₂
//! iħ ȧ₁ = −(α/2) S e^{+iΔ₁₀t} a₀ − (β/2) S e^{−iΔ₃₁t} a₃
//! iħ ȧ₂ = −(β/2) D e^{+iΔ₂₀t} a₀ + (α/2) D e^{−iΔ₃₂t} a₃
//! iħ ȧ₃ = −(β/2) S e^{+iΔ₃₁t} a₁ + (α/2) D e^{+iΔ₃₂t} a₂
//! ```
//!
//! Symmetric drives leave `a₂` untouched and antisymmetric drives leave `a₁`
//! untouched; both hold exactly here because the corresponding rates are
//! multiplied by an exact zero.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64 as C64;

use crate::coupled::CoupledSystem;
use crate::drive::DriveField;
use crate::error::{Error, Result};

pub type Amplitudes = [C64; 4];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeState {
    pub t: f64,
    pub a: Amplitudes,
}

impl AmplitudeState {
    pub fn new(t: f64, a: Amplitudes) -> Self {
        Self { t, a }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn populations(&self) -> [f64; 4] {
        self.a.map(|z| z.norm_sqr())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InitialState {
    /// `a₀ = 1`
    Ground,
    /// `a₀ = a₁ = 1/√2`, localized in one well of each particle.
    Wavepacket,
    Custom(Amplitudes),
}

impl InitialState {
    pub fn amplitudes(&self) -> Result<Amplitudes> {
        let zero = C64::new(0.0, 0.0);
        match self {
            InitialState::Ground => Ok([C64::new(1.0, 0.0), zero, zero, zero]),
            InitialState::Wavepacket => {
                let r = C64::new(FRAC_1_SQRT_2, 0.0);
                Ok([r, r, zero, zero])
            }
            InitialState::Custom(a) => {
                if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(Error::InvalidInitialState("amplitudes must be finite".into()));
                }
                let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum();
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidInitialState(format!("norm {norm} differs from 1")));
                }
                Ok(*a)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub states: Vec<AmplitudeState>,
    /// Largest `|1 − Σ|a_ν|²|` seen at the recorded states.
    pub norm_drift: f64,
    /// Internal RK4 step actually used.
    pub step: f64,
}

impl Trajectory {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.states.iter().map(|s| s.t)
    }

    pub fn last(&self) -> &AmplitudeState {
        self.states.last().expect("trajectory always holds the initial state")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    /// RK4 steps per period of the fastest rate in the equations.
    pub steps_per_period: f64,
    /// Optional hard cap on the internal step.
    pub max_step: Option<f64>,
    /// Integration fails once the norm drifts by more than this.
    pub norm_bound: f64,
    pub min_step: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { steps_per_period: 400.0, max_step: None, norm_bound: 1e-6, min_step: 1e-12 }
    }
}

/// Fastest angular rate in the amplitude equations: drive frequency plus the
/// largest level gap, plus the largest coupling rate.
pub fn fastest_rate(sys: &CoupledSystem, drive: &DriveField) -> f64 {
    let widest_gap = sys.gap(3, 0).abs();
    let coupling = (sys.alpha.abs() + sys.beta.abs()) * drive.max_amplitude() / sys.hbar();
    drive.max_frequency() + widest_gap + coupling
}

/// Internal step bound for the given configuration.
pub fn internal_step(sys: &CoupledSystem, drive: &DriveField, config: &IntegratorConfig) -> f64 {
    let rate = fastest_rate(sys, drive);
    let mut h = if rate > 0.0 { TAU / (rate * config.steps_per_period) } else { f64::INFINITY };
    if let Some(cap) = config.max_step {
        h = h.min(cap);
    }
    h
}

pub fn amplitude_derivative(state: &AmplitudeState, sys: &CoupledSystem, drive: &DriveField) -> Amplitudes {
    let zero = C64::new(0.0, 0.0);
    let (f1, f2) = drive.eval(state.t);
    let sum = f1 + f2;
    let diff = f1 - f2;
    if sum == 0.0 && diff == 0.0 {
        return [zero; 4];
    }
    let t = state.t;
    let a = &state.a;
    let half_alpha = 0.5 * sys.alpha;
    let half_beta = 0.5 * sys.beta;
    let phase = |nu: usize, mu: usize| C64::from_polar(1.0, -sys.gap(nu, mu) * t);
    let p10 = phase(1, 0);
    let p20 = phase(2, 0);
    let p31 = phase(3, 1);
    let p32 = phase(3, 2);
    let s_alpha = half_alpha * sum;
    let s_beta = half_beta * sum;
    let d_alpha = half_alpha * diff;
    let d_beta = half_beta * diff;
    // iħ ȧ = R  ⇒  ȧ = −(i/ħ) R
    let rhs = [
        -s_alpha * p10 * a[1] - d_beta * p20 * a[2],
        -s_alpha * p10.conj() * a[0] - s_beta * p31 * a[3],
        -d_beta * p20.conj() * a[0] + d_alpha * p32 * a[3],
        -s_beta * p31.conj() * a[1] + d_alpha * p32.conj() * a[2],
    ];
    let factor = C64::new(0.0, -1.0 / sys.hbar());
    rhs.map(|r| factor * r)
}

fn axpy(a: &Amplitudes, h: f64, k: &Amplitudes) -> Amplitudes {
    [a[0] + k[0] * h, a[1] + k[1] * h, a[2] + k[2] * h, a[3] + k[3] * h]
}

/// One classical fourth-order Runge–Kutta step of size `h`.
pub fn rk_step(state: &AmplitudeState, sys: &CoupledSystem, drive: &DriveField, h: f64) -> AmplitudeState {
    let t = state.t;
    let k1 = amplitude_derivative(state, sys, drive);
    let k2 = amplitude_derivative(&AmplitudeState::new(t + 0.5 * h, axpy(&state.a, 0.5 * h, &k1)), sys, drive);
    let k3 = amplitude_derivative(&AmplitudeState::new(t + 0.5 * h, axpy(&state.a, 0.5 * h, &k2)), sys, drive);
    let k4 = amplitude_derivative(&AmplitudeState::new(t + h, axpy(&state.a, h, &k3)), sys, drive);
    let mut a = state.a;
    for i in 0..4 {
        a[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
    }
    AmplitudeState::new(t + h, a)
}

pub fn integrate(
    initial: &InitialState,
    sys: &CoupledSystem,
    drive: &DriveField,
    t_max: f64,
    dt_out: f64,
) -> Result<Trajectory> {
    integrate_with(initial, sys, drive, t_max, dt_out, &IntegratorConfig::default())
}

/// Propagates from `t = 0` to `t_max`, recording the state at every multiple
/// of `dt_out` (and at `t_max` itself if it is not one).
pub fn integrate_with(
    initial: &InitialState,
    sys: &CoupledSystem,
    drive: &DriveField,
    t_max: f64,
    dt_out: f64,
    config: &IntegratorConfig,
) -> Result<Trajectory> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidRun(format!("t_max must be positive and finite, got {t_max}")));
    }
    if !(dt_out > 0.0 && dt_out.is_finite()) {
        return Err(Error::InvalidRun(format!("dt_out must be positive and finite, got {dt_out}")));
    }
    drive.validate()?;
    let a0 = initial.amplitudes()?;
    let h_max = internal_step(sys, drive, config);
    if !(h_max >= config.min_step) {
        return Err(Error::IntegratorStepUnderflow(h_max));
    }

    let n_full = (t_max / dt_out * (1.0 + 1e-12)).floor() as usize;
    let mut targets: Vec<f64> = (1..=n_full).map(|k| k as f64 * dt_out).collect();
    if t_max - n_full as f64 * dt_out > 1e-9 * dt_out {
        targets.push(t_max);
    }

    let mut current = AmplitudeState::new(0.0, a0);
    let mut states = Vec::with_capacity(targets.len() + 1);
    states.push(current);
    let mut drift = (1.0 - current.norm_sqr()).abs();
    let mut step_used = 0.0_f64;
    for target in targets {
        let start = current.t;
        let span = target - start;
        let substeps = (span / h_max).ceil().max(1.0) as usize;
        let h = span / substeps as f64;
        if h < config.min_step {
            return Err(Error::IntegratorStepUnderflow(h));
        }
        step_used = step_used.max(h);
        for j in 0..substeps {
            current.t = start + j as f64 * h;
            current = rk_step(&current, sys, drive, h);
        }
        current.t = target;
        let d = (1.0 - current.norm_sqr()).abs();
        if !d.is_finite() || d > config.norm_bound {
            return Err(Error::NormDrift { drift: d, bound: config.norm_bound, t: target });
        }
        drift = drift.max(d);
        states.push(current);
    }
    Ok(Trajectory { states, norm_drift: drift, step: step_used })
}

/// Propagates `state` to `t_end` (≥ `state.t`) with steps no larger than the
/// configured bound.
pub fn advance(
    state: &AmplitudeState,
    sys: &CoupledSystem,
    drive: &DriveField,
    t_end: f64,
    config: &IntegratorConfig,
) -> Result<AmplitudeState> {
    let span = t_end - state.t;
    if !(span >= 0.0) || !t_end.is_finite() {
        return Err(Error::InvalidRun(format!("cannot advance from t = {} to t = {t_end}", state.t)));
    }
    if span == 0.0 {
        return Ok(*state);
    }
    let h_max = internal_step(sys, drive, config);
    let substeps = (span / h_max).ceil().max(1.0) as usize;
    let h = span / substeps as f64;
    if h < config.min_step {
        return Err(Error::IntegratorStepUnderflow(h));
    }
    let start = state.t;
    let mut current = *state;
    for j in 0..substeps {
        current.t = start + j as f64 * h;
        current = rk_step(&current, sys, drive, h);
    }
    current.t = t_end;
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{PotentialParams, SingleWellBasis};

    fn system(g: f64) -> CoupledSystem {
        CoupledSystem::new(SingleWellBasis::new(PotentialParams::default()).unwrap(), g).unwrap()
    }

    fn random_state(seed: u64) -> Amplitudes {
        // small LCG; the exact distribution does not matter here
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let mut a = [C64::new(0.0, 0.0); 4];
        for z in a.iter_mut() {
            *z = C64::new(next(), next());
        }
        let n: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        a.map(|z| z / n)
    }

    #[test]
    fn initial_states() {
        let g = InitialState::Ground.amplitudes().unwrap();
        assert_eq!(g[0], C64::new(1.0, 0.0));
        let w = InitialState::Wavepacket.amplitudes().unwrap();
        assert!((w.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-15);
        let bad =
            InitialState::Custom([C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)]);
        assert!(matches!(bad.amplitudes(), Err(Error::InvalidInitialState(_))));
    }

    #[test]
    fn symmetric_drive_never_feeds_level_two() {
        let sys = system(0.1);
        let drive = DriveField::SinSymmetric { f: 0.05, omega: 0.03 };
        for seed in 0..20 {
            let mut a = random_state(seed);
            a[2] = C64::new(0.0, 0.0);
            let rate = amplitude_derivative(&AmplitudeState::new(1.7 * seed as f64, a), &sys, &drive);
            assert_eq!(rate[2], C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn antisymmetric_drive_freezes_level_one() {
        let sys = system(0.1);
        let drive = DriveField::SinAntisymmetric { f: 0.05, omega: 0.03 };
        for seed in 0..20 {
            let a = random_state(seed);
            let rate = amplitude_derivative(&AmplitudeState::new(3.1 * seed as f64, a), &sys, &drive);
            assert_eq!(rate[1], C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn zero_field_gives_zero_rates() {
        let sys = system(0.01);
        let a = random_state(7);
        let rate = amplitude_derivative(&AmplitudeState::new(4.0, a), &sys, &DriveField::None);
        assert!(rate.iter().all(|z| *z == C64::new(0.0, 0.0)));
        let stepped = rk_step(&AmplitudeState::new(4.0, a), &sys, &DriveField::None, 0.3);
        assert_eq!(stepped.a, a);
    }

    #[test]
    fn generator_is_antihermitian() {
        // d|a|²/dt = 2 Re(a*·ȧ) must vanish for any state and time
        let sys = system(0.07);
        let drives = [
            DriveField::SinSymmetric { f: 0.04, omega: 0.05 },
            DriveField::SinFirstWell { f: 0.04, omega: 0.05 },
            DriveField::SinAntisymmetric { f: 0.04, omega: 0.05 },
        ];
        for drive in &drives {
            for seed in 0..10 {
                let s = AmplitudeState::new(0.9 * seed as f64, random_state(seed));
                let rate = amplitude_derivative(&s, &sys, drive);
                let dn: f64 = (0..4).map(|i| 2.0 * (s.a[i].conj() * rate[i]).re).sum();
                assert!(dn.abs() < 1e-16);
            }
        }
    }

    #[test]
    fn ground_state_is_stationary_without_drive() {
        let sys = system(0.01);
        let traj = integrate(&InitialState::Ground, &sys, &DriveField::None, 250.0, 0.5).unwrap();
        assert_eq!(traj.states.len(), 501);
        assert!(traj.norm_drift < 1e-12);
        for s in &traj.states {
            assert_eq!(s.a[0], C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn wavepacket_populations_constant_without_drive() {
        let sys = system(0.01);
        let traj = integrate(&InitialState::Wavepacket, &sys, &DriveField::None, 100.0, 1.0).unwrap();
        for s in &traj.states {
            let p = s.populations();
            assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn resonant_drive_transfers_population() {
        let sys = system(0.01);
        let drive = DriveField::SinSymmetric { f: 0.01, omega: sys.delta10() };
        let traj = integrate(&InitialState::Ground, &sys, &drive, 400.0, 0.5).unwrap();
        let max_p1 = traj.states.iter().map(|s| s.populations()[1]).fold(0.0, f64::max);
        let max_p3 = traj.states.iter().map(|s| s.populations()[3]).fold(0.0, f64::max);
        assert!(max_p1 > 0.9, "max p1 = {max_p1}");
        // E₃ − E₁ sits close to Δ₁₀, so level 3 picks up some population
        assert!(max_p3 < 0.2, "max p3 = {max_p3}");
        assert!(traj.states.iter().all(|s| s.a[2] == C64::new(0.0, 0.0)));
        assert!(traj.norm_drift < 1e-9);
    }

    #[test]
    fn output_grid_and_errors() {
        let sys = system(0.01);
        let traj = integrate(&InitialState::Ground, &sys, &DriveField::None, 1.25, 0.5).unwrap();
        let times: Vec<f64> = traj.times().collect();
        assert_eq!(times, vec![0.0, 0.5, 1.0, 1.25]);
        assert!(matches!(
            integrate(&InitialState::Ground, &sys, &DriveField::None, 0.0, 0.5),
            Err(Error::InvalidRun(_))
        ));
        assert!(matches!(
            integrate(&InitialState::Ground, &sys, &DriveField::None, 1.0, -0.5),
            Err(Error::InvalidRun(_))
        ));
        let config = IntegratorConfig { max_step: Some(1e-14), ..Default::default() };
        assert!(matches!(
            integrate_with(&InitialState::Ground, &sys, &DriveField::None, 1.0, 0.5, &config),
            Err(Error::IntegratorStepUnderflow(_))
        ));
        // a step far beyond RK4 stability blows the norm up
        let config = IntegratorConfig { steps_per_period: 0.05, ..Default::default() };
        let drive = DriveField::SinSymmetric { f: 5.0, omega: 0.1 };
        assert!(matches!(
            integrate_with(&InitialState::Ground, &sys, &drive, 2000.0, 100.0, &config),
            Err(Error::NormDrift { .. })
        ));
    }

    #[test]
    fn fourth_order_convergence() {
        // single step from a generic state, against a 10x finer reference
        let sys = system(0.01);
        let drive = DriveField::SinSymmetric { f: 0.05, omega: sys.delta10() };
        let start = AmplitudeState::new(13.0, random_state(3));
        let reference = |h: f64| {
            let mut s = start;
            for _ in 0..10 {
                s = rk_step(&s, &sys, &drive, h / 10.0);
            }
            s
        };
        let err = |h: f64| {
            let r = reference(h);
            let s = rk_step(&start, &sys, &drive, h);
            (0..4).map(|i| (s.a[i] - r.a[i]).norm()).fold(0.0, f64::max)
        };
        let (e1, e2) = (err(2.0), err(1.0));
        let ratio = e1 / e2;
        // local error O(h⁵) → 32x, global O(h⁴) → 16x; a single step sits near 32
        assert!(ratio > 14.0, "error ratio {ratio}");
    }

    #[test]
    fn small_steps_conserve_norm() {
        let sys = system(0.01);
        let drive = DriveField::SinSymmetric { f: 0.05, omega: sys.delta10() };
        for seed in 0..10 {
            let s = AmplitudeState::new(5.0 * seed as f64, random_state(seed));
            let n = rk_step(&s, &sys, &drive, 0.01).norm_sqr();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }
}
