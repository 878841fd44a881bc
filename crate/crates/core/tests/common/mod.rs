//! Helpers shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::f64::consts::TAU;
use std::path::PathBuf;

use rand::Rng;
use razavy_dw::{build_coupled, CoupledSystem, PotentialParams, SingleWellBasis, C64};

pub fn system(g: f64) -> CoupledSystem {
    build_coupled(&SingleWellBasis::new(PotentialParams::default()).unwrap(), g).unwrap()
}

pub fn scenarios_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

pub fn bundled_scenarios() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(scenarios_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    files.sort();
    files
}

/// Hann-windowed DFT magnitude of uniformly sampled `values` at angular
/// frequency `nu`.
pub fn spectrum(times: &[f64], values: &[f64], nu: f64) -> f64 {
    let (t0, t1) = (times[0], times[times.len() - 1]);
    let mut acc = C64::new(0.0, 0.0);
    for (&t, &v) in times.iter().zip(values) {
        let w = 0.5 - 0.5 * (TAU * (t - t0) / (t1 - t0)).cos();
        acc += C64::from_polar(v * w, -nu * t);
    }
    acc.norm() / times.len() as f64
}

/// Local maxima of the spectrum on `[0, nu_max]`, largest first, as
/// `(magnitude, frequency)`.
pub fn spectral_peaks(times: &[f64], values: &[f64], nu_max: f64, d_nu: f64) -> Vec<(f64, f64)> {
    let nus: Vec<f64> = (0..=(nu_max / d_nu) as usize).map(|i| i as f64 * d_nu).collect();
    let mags: Vec<f64> = nus.iter().map(|&n| spectrum(times, values, n)).collect();
    let mut peaks: Vec<(f64, f64)> = (1..mags.len() - 1)
        .filter(|&i| mags[i] > mags[i - 1] && mags[i] >= mags[i + 1])
        .map(|i| (mags[i], nus[i]))
        .collect();
    peaks.sort_by(|a, b| b.0.total_cmp(&a.0));
    peaks
}

/// Period from a least-squares line through the (parabolically refined)
/// times of successive local maxima.
pub fn fitted_period(times: &[f64], values: &[f64]) -> f64 {
    let mut maxima = Vec::new();
    for i in 1..values.len() - 1 {
        let (a, b, c) = (values[i - 1], values[i], values[i + 1]);
        if b > a && b >= c {
            let h = times[i] - times[i - 1];
            let denom = a - 2.0 * b + c;
            let shift = if denom != 0.0 { 0.5 * (a - c) / denom } else { 0.0 };
            maxima.push(times[i] + shift * h);
        }
    }
    assert!(maxima.len() >= 3, "too few maxima to fit a period");
    let n = maxima.len() as f64;
    let mean_k = (n - 1.0) / 2.0;
    let mean_t = maxima.iter().sum::<f64>() / n;
    let (mut num, mut den) = (0.0, 0.0);
    for (k, t) in maxima.iter().enumerate() {
        let dk = k as f64 - mean_k;
        num += dk * (t - mean_t);
        den += dk * dk;
    }
    num / den
}

pub fn random_state<R: Rng>(rng: &mut R) -> [C64; 4] {
    let mut a: [C64; 4] = std::array::from_fn(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut a {
        *z /= norm;
    }
    a
}
