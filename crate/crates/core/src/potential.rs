//! Razavy's hyperbolic double well and its four closed-form eigenstates.
//!
//! The eigenvalues and (unnormalized) eigenfunctions are exact. Normalization
//! constants and the dipole element `γ = ∫φ₀ x φ₁ dx` are obtained by
//! quadrature on a finite window; the weight `exp(−ξ cosh 2x / 4)` makes the
//! integrands vanish to double precision well before `|x| = 5` at `ξ = 1`.

use crate::error::{Error, Result};
use crate::quadrature;

/// Physical constants fixing the potential and the energy unit `ħ²/2m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialParams {
    pub hbar: f64,
    pub mass: f64,
    pub xi: f64,
}

impl Default for PotentialParams {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0, xi: 1.0 }
    }
}

impl PotentialParams {
    pub fn new(hbar: f64, mass: f64, xi: f64) -> Result<Self> {
        let params = Self { hbar, mass, xi };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("hbar", self.hbar), ("mass", self.mass), ("xi", self.xi)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }

    /// `ħ²/2m`, the prefactor of every energy in the model.
    pub fn energy_unit(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }

    fn root_minus(&self) -> f64 {
        (4.0 - 2.0 * self.xi + self.xi * self.xi).sqrt()
    }

    fn root_plus(&self) -> f64 {
        (4.0 + 2.0 * self.xi + self.xi * self.xi).sqrt()
    }
}

pub fn eval_potential(x: f64, params: &PotentialParams) -> f64 {
    let xi = params.xi;
    params.energy_unit() * (xi * xi / 8.0 * (4.0 * x).cosh() - 4.0 * xi * (2.0 * x).cosh() - xi * xi / 8.0)
}

/// `ε₀..ε₃` in ascending order.
pub fn single_well_eigenvalues(params: &PotentialParams) -> [f64; 4] {
    let xi = params.xi;
    let (rm, rp) = (params.root_minus(), params.root_plus());
    let u = params.energy_unit();
    [u * (-xi - 5.0 - 2.0 * rm), u * (xi - 5.0 - 2.0 * rp), u * (-xi - 5.0 + 2.0 * rm), u * (xi - 5.0 + 2.0 * rp)]
}

/// Eigenfunction without its normalization constant.
fn unnormalized(n: usize, x: f64, params: &PotentialParams) -> f64 {
    let xi = params.xi;
    let weight = (-xi * (2.0 * x).cosh() / 4.0).exp();
    let bracket = match n {
        0 => 3.0 * xi * x.cosh() + (4.0 - xi + 2.0 * params.root_minus()) * (3.0 * x).cosh(),
        1 => 3.0 * xi * x.sinh() + (4.0 + xi + 2.0 * params.root_plus()) * (3.0 * x).sinh(),
        2 => 3.0 * xi * x.cosh() + (4.0 - xi - 2.0 * params.root_minus()) * (3.0 * x).cosh(),
        _ => 3.0 * xi * x.sinh() + (4.0 + xi - 2.0 * params.root_plus()) * (3.0 * x).sinh(),
    };
    weight * bracket
}

/// Half-width beyond which every `φₙ²` (unnormalized) is below `e⁻⁸⁰` of its
/// bracket scale: the weight squared `exp(−ξ cosh 2x / 2)` must beat the
/// `cosh² 3x` growth of the bracket.
fn decay_width(params: &PotentialParams) -> f64 {
    let xi = params.xi;
    let mut l: f64 = 1.0;
    while xi * (2.0 * l).cosh() / 2.0 - 6.0 * l < 80.0 {
        l += 0.25;
    }
    l
}

/// Quadrature window and tolerance used to normalize the eigenfunctions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Integrate over at least `[−half_width, half_width]`; the window grows
    /// for small `ξ`, whose states spread further out.
    pub half_width: f64,
    /// Relative tolerance between successive panel refinements.
    pub tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { half_width: 5.0, tol: 1e-12, max_panels: 1 << 14 }
    }
}

/// Normalized single-well eigensystem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleWellBasis {
    pub eps: [f64; 4],
    pub norm_consts: [f64; 4],
    /// Dipole element `∫φ₀ x φ₁ dx` of the normalized functions.
    pub gamma: f64,
    pub params: PotentialParams,
}

impl SingleWellBasis {
    pub fn new(params: PotentialParams) -> Result<Self> {
        Self::with_quadrature(params, &QuadratureConfig::default())
    }

    pub fn with_quadrature(params: PotentialParams, quad: &QuadratureConfig) -> Result<Self> {
        params.validate()?;
        let half_width = quad.half_width.max(decay_width(&params));
        let (a, b) = (-half_width, half_width);
        let mut norm_consts = [0.0; 4];
        for (n, c) in norm_consts.iter_mut().enumerate() {
            let sq = quadrature::integrate(|x| unnormalized(n, x, &params).powi(2), a, b, quad.tol, quad.max_panels)?;
            *c = sq.sqrt().recip();
        }
        let dipole = quadrature::integrate(
            |x| unnormalized(0, x, &params) * x * unnormalized(1, x, &params),
            a,
            b,
            quad.tol,
            quad.max_panels,
        )?;
        Ok(Self {
            eps: single_well_eigenvalues(&params),
            norm_consts,
            gamma: dipole * norm_consts[0] * norm_consts[1],
            params,
        })
    }

    /// Tunneling splitting `δ = ε₁ − ε₀`.
    pub fn delta(&self) -> f64 {
        self.eps[1] - self.eps[0]
    }

    /// `ε = ε₁ + ε₀`.
    pub fn eps_sum(&self) -> f64 {
        self.eps[1] + self.eps[0]
    }

    pub fn eigenfunction(&self, n: usize, x: f64) -> Result<f64> {
        if n > 3 {
            return Err(Error::InvalidLevel(n));
        }
        Ok(self.norm_consts[n] * unnormalized(n, x, &self.params))
    }

    /// `(φ₀(x), φ₁(x))`, the two states the coupled model is built on.
    pub fn lowest_pair(&self, x: f64) -> (f64, f64) {
        (self.norm_consts[0] * unnormalized(0, x, &self.params), self.norm_consts[1] * unnormalized(1, x, &self.params))
    }
}

pub fn eval_eigenfunction(n: usize, x: f64, basis: &SingleWellBasis) -> Result<f64> {
    basis.eigenfunction(n, x)
}

pub fn normalization_and_gamma(params: &PotentialParams) -> Result<SingleWellBasis> {
    SingleWellBasis::new(*params)
}

/// Largest `|−(ħ²/2m)φₙ'' + Vφₙ − εₙφₙ|` over `xs`, with `φₙ''` from the
/// five-point central difference of step `h`.
pub fn schrodinger_residual(n: usize, basis: &SingleWellBasis, xs: &[f64], h: f64) -> Result<f64> {
    if n > 3 {
        return Err(Error::InvalidLevel(n));
    }
    let params = &basis.params;
    let phi = |x: f64| basis.norm_consts[n] * unnormalized(n, x, params);
    let mut worst = 0.0_f64;
    for &x in xs {
        if !(h > 0.0) || !h.is_finite() || x + h == x || h * h == 0.0 {
            return Err(Error::StepUnderflow(h));
        }
        let second = (-phi(x + 2.0 * h) + 16.0 * phi(x + h) - 30.0 * phi(x) + 16.0 * phi(x - h) - phi(x - 2.0 * h))
            / (12.0 * h * h);
        let f = phi(x);
        let residual = -params.energy_unit() * second + eval_potential(x, params) * f - basis.eps[n] * f;
        worst = worst.max(residual.abs());
    }
    Ok(worst)
}
