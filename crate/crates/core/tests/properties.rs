mod common;

use std::f64::consts::TAU;

use common::{bundled_scenarios, random_state, spectral_peaks, system};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use razavy_dw::observables::{
    concurrence_from_coefficients, concurrence_sq, correlation_sq, product_coefficients, time_average,
};
use razavy_dw::scenario::{execute, Method, Scenario};
use razavy_dw::{
    integrate, integrate_with, rwa_expectation, rwa_solve, rwa_time_averages, AmplitudeState, DriveField, InitialState,
    IntegratorConfig, ObservableSeries, C64,
};

#[test]
fn bundled_scenarios_conserve_norm() {
    let files = bundled_scenarios();
    assert!(files.len() >= 20);
    for path in files {
        let scenario = Scenario::load(&path).unwrap();
        let result = execute(&scenario).unwrap();
        for run in &result.runs {
            assert!(run.norm_drift < 1e-9, "{}: {} drift {}", path.display(), run.method.name(), run.norm_drift);
        }
    }
}

#[test]
fn halving_the_step_converges() {
    let sys = system(0.01);
    let drive = DriveField::SinSymmetric { f: 0.02, omega: sys.delta10() };
    let coarse = IntegratorConfig::default();
    let fine = IntegratorConfig { steps_per_period: 2.0 * coarse.steps_per_period, ..coarse };
    let a = integrate_with(&InitialState::Ground, &sys, &drive, 400.0, 400.0, &coarse).unwrap();
    let b = integrate_with(&InitialState::Ground, &sys, &drive, 400.0, 400.0, &fine).unwrap();
    let (pa, pb) = (a.last().populations(), b.last().populations());
    for nu in 0..4 {
        assert!((pa[nu] - pb[nu]).abs() < 1e-8, "level {nu}: {} vs {}", pa[nu], pb[nu]);
    }
}

#[test]
fn long_runs_conserve_norm() {
    for g in [0.01, 0.1, 0.2] {
        let sys = system(g);
        for drive in [
            DriveField::SinSymmetric { f: 0.05, omega: sys.delta10() },
            DriveField::SinFirstWell { f: 0.05, omega: 1.2 * sys.delta10() },
            DriveField::StepSymmetric { f: 0.05 },
        ] {
            let traj = integrate(&InitialState::Wavepacket, &sys, &drive, 1000.0, 5.0).unwrap();
            assert!(traj.norm_drift < 1e-9, "g = {g}, {drive:?}: {}", traj.norm_drift);
        }
    }
}

#[test]
fn symmetry_sectors_stay_frozen() {
    let sys = system(0.1);
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..5 {
        let mut a = random_state(&mut rng);
        a[2] = C64::new(0.0, 0.0);
        let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        a.iter_mut().for_each(|z| *z /= norm);
        let sym =
            integrate(&InitialState::Custom(a), &sys, &DriveField::SinSymmetric { f: 0.05, omega: 0.08 }, 300.0, 1.0)
                .unwrap();
        assert!(sym.states.iter().all(|s| s.a[2].norm() < 1e-12));

        let b = random_state(&mut rng);
        let anti = integrate(
            &InitialState::Custom(b),
            &sys,
            &DriveField::SinAntisymmetric { f: 0.05, omega: 0.1 },
            300.0,
            1.0,
        )
        .unwrap();
        assert!(anti.states.iter().all(|s| (s.a[1] - b[1]).norm() < 1e-12));
    }
}

#[test]
fn concurrence_routes_agree_on_random_states() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..1000 {
        let sys = system(rng.gen_range(0.0..0.2));
        let state = AmplitudeState::new(rng.gen_range(0.0..1000.0), random_state(&mut rng));
        let direct = concurrence_sq(&state, &sys).max(0.0).sqrt();
        let via_c = concurrence_from_coefficients(&product_coefficients(&state, &sys));
        assert!((direct - via_c).abs() < 1e-10, "{direct} vs {via_c}");
        assert!((0.0..=1.0 + 1e-12).contains(&direct));
    }
}

#[test]
fn correlation_bounded_and_unity_at_start() {
    let mut rng = StdRng::seed_from_u64(3);
    let sys = system(0.05);
    for _ in 0..200 {
        let a0 = random_state(&mut rng);
        let a = random_state(&mut rng);
        let t = rng.gen_range(0.0..500.0);
        let c = correlation_sq(&AmplitudeState::new(t, a), &a0, &sys);
        assert!((-1e-12..=1.0 + 1e-12).contains(&c));
        assert!((correlation_sq(&AmplitudeState::new(0.0, a0), &a0, &sys) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn x_sum_spectrum_has_rabi_sidebands() {
    let sys = system(0.01);
    let omega = sys.delta10();
    let f = 0.01;
    let rabi = razavy_dw::rabi_frequency(&sys, f, omega);
    let resolution = 2.0 * TAU / 4000.0;
    for initial in [InitialState::Ground, InitialState::Wavepacket] {
        let traj = integrate(&initial, &sys, &DriveField::SinSymmetric { f, omega }, 4000.0, 0.5).unwrap();
        let series = ObservableSeries::from_states(&traj.states, &sys);
        let peaks = spectral_peaks(&series.times, &series.x_sum, 0.2, 1e-4);
        let mut top: Vec<f64> = peaks[..3].iter().map(|p| p.1).collect();
        top.sort_by(f64::total_cmp);
        let expected = [omega - rabi, omega, omega + rabi];
        for (got, want) in top.iter().zip(expected) {
            assert!((got - want).abs() < resolution, "{initial:?}: peak {got} vs {want}");
        }
        if initial == InitialState::Ground {
            for p in &peaks[3..] {
                assert!(p.0 < 0.2 * peaks[0].0, "stray line {p:?}");
            }
        }
    }
}

#[test]
fn ground_resonance_has_no_carrier_line_in_rwa() {
    // r₀*s₁ + s₀*r₁ = 0, so only ω ± Ω survive
    let sys = system(0.01);
    let sol = rwa_solve(&InitialState::Ground, &sys, 0.01, sys.delta10()).unwrap();
    let times: Vec<f64> = (0..8000).map(|k| k as f64 * 0.5).collect();
    let x: Vec<f64> = times.iter().map(|&t| rwa_expectation(&sol, &sys, t)).collect();
    let peaks = spectral_peaks(&times, &x, 0.2, 1e-4);
    let carrier = common::spectrum(&times, &x, sys.delta10());
    assert!(carrier < 0.05 * peaks[0].0, "carrier {carrier} vs {}", peaks[0].0);
}

fn first_return(x: impl Fn(f64) -> f64, period: f64) -> f64 {
    (0..=2000).map(|k| x(0.5 * period + period * k as f64 / 2000.0)).fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn fields_suppress_tunneling_in_rwa() {
    let sys = system(0.01);
    let period = TAU / sys.delta10();
    let returns: Vec<f64> = [0.0, 0.01, 0.02]
        .iter()
        .map(|&f| {
            let sol = rwa_solve(&InitialState::Wavepacket, &sys, f, sys.delta10()).unwrap();
            first_return(|t| rwa_expectation(&sol, &sys, t), period)
        })
        .collect();
    assert!((returns[0] - sys.alpha).abs() < 1e-9);
    assert!(returns[0] > returns[1] && returns[1] > returns[2], "{returns:?}");
}

#[test]
fn weak_field_suppresses_tunneling_exactly() {
    let sys = system(0.01);
    let period = TAU / sys.delta10();
    let free = integrate(&InitialState::Wavepacket, &sys, &DriveField::None, 1.5 * period, 0.1).unwrap();
    let driven = integrate(
        &InitialState::Wavepacket,
        &sys,
        &DriveField::SinSymmetric { f: 0.01, omega: sys.delta10() },
        1.5 * period,
        0.1,
    )
    .unwrap();
    let ret = |traj: &razavy_dw::Trajectory| {
        let s = ObservableSeries::from_states(&traj.states, &sys);
        s.times
            .iter()
            .zip(&s.x_sum)
            .filter(|(t, _)| **t >= 0.5 * period)
            .map(|(_, x)| *x)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    assert!(ret(&driven) < 0.8 * ret(&free));
}

#[test]
fn rwa_mirror_detuning() {
    let sys = system(0.01);
    let d = sys.delta10();
    let lo = rwa_solve(&InitialState::Ground, &sys, 0.01, 0.8 * d).unwrap();
    let hi = rwa_solve(&InitialState::Ground, &sys, 0.01, 1.2 * d).unwrap();
    for k in 0..=800 {
        let t = 0.5 * k as f64;
        let (a, b) = (lo.amplitudes(t), hi.amplitudes(t));
        for nu in 0..4 {
            assert!((a[nu].norm_sqr() - b[nu].norm_sqr()).abs() < 1e-14, "t = {t}");
        }
    }
    let exact = |r: f64| {
        integrate(&InitialState::Ground, &sys, &DriveField::SinSymmetric { f: 0.01, omega: r * d }, 400.0, 0.5).unwrap()
    };
    let (a, b) = (exact(0.8), exact(1.2));
    let gap = a
        .states
        .iter()
        .zip(&b.states)
        .map(|(x, y)| (x.populations()[0] - y.populations()[0]).abs())
        .fold(0.0, f64::max);
    assert!(gap > 0.01, "exact mirror gap {gap}");
}

#[test]
fn rwa_averages_match_long_time_means() {
    let sys = system(0.1);
    let mut rng = StdRng::seed_from_u64(5);
    for detuning in [0.0, 0.3] {
        let omega = (1.0 + detuning) * sys.delta10();
        for _ in 0..3 {
            // superpositions of levels 0 and 1 only
            let mut a = random_state(&mut rng);
            a[2] = C64::new(0.0, 0.0);
            a[3] = C64::new(0.0, 0.0);
            let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            a.iter_mut().for_each(|z| *z /= norm);
            let sol = rwa_solve(&InitialState::Custom(a), &sys, 0.01, omega).unwrap();
            let closed = rwa_time_averages(&sol, &sys);
            let times: Vec<f64> = (0..=200_000).map(|k| k as f64 * 0.5).collect();
            let corr: Vec<f64> = times.iter().map(|&t| razavy_dw::observables::rwa_correlation_sq(&sol, t)).collect();
            let conc: Vec<f64> =
                times.iter().map(|&t| razavy_dw::observables::rwa_concurrence_sq(&sol, &sys, t)).collect();
            let period = Some(TAU / sol.rabi);
            assert!((time_average(&times, &corr, period) - closed.corr_sq).abs() < 1e-3);
            assert!((time_average(&times, &conc, period) - closed.conc_sq).abs() < 1e-3);
        }
    }
}

#[test]
fn scenario_methods_agree_on_weak_fields() {
    let text = std::fs::read_to_string(common::scenarios_dir().join("fig9a.toml")).unwrap();
    let scenario = Scenario::from_toml(&text).unwrap();
    let result = execute(&scenario).unwrap();
    let (exact, tla) = (result.run(Method::Exact).unwrap(), result.run(Method::Tla).unwrap());
    for (e, t) in exact.series.populations.iter().zip(&tla.series.populations) {
        assert!((e[0] + e[1] - 1.0).abs() < 0.05);
        assert!((t[0] + t[1] - 1.0).abs() < 1e-12);
    }
}
