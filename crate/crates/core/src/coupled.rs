//! Four-level eigensystem of two `−g x₁x₂`-coupled wells.
//!
//! Product basis ordering is `{φ₀φ₀, φ₀φ₁, φ₁φ₀, φ₁φ₁}` (first factor is
//! particle 1). The coupled eigenstates are
//!
//! ```text
//! Φ₀ =  cosθ φ₀φ₀ + sinθ φ₁φ₁
//! Φ₁ = (φ₀φ₁ + φ₁φ₀)/√2
//! Φ₂ = (−φ₀φ₁ + φ₁φ₀)/√2
//! Φ₃ = −sinθ φ₀φ₀ + cosθ φ₁φ₁
//! ```
//!
//! with `tan 2θ = gγ²/δ`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::potential::SingleWellBasis;

pub type Matrix4 = [[f64; 4]; 4];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoupledSystem {
    pub g: f64,
    /// `E₀..E₃`, ascending for `g ≥ 0`.
    pub energies: [f64; 4],
    /// Mixing angle θ ∈ [0, π/4) for `g ≥ 0`.
    pub theta: f64,
    /// `√2 γ (cosθ + sinθ)`.
    pub alpha: f64,
    /// `√2 γ (cosθ − sinθ)`.
    pub beta: f64,
    /// `gaps[ν][μ] = Δ_νμ = (E_ν − E_μ)/ħ`.
    pub gaps: Matrix4,
    pub basis: SingleWellBasis,
}

impl CoupledSystem {
    pub fn new(basis: SingleWellBasis, g: f64) -> Result<Self> {
        if !(g >= 0.0) || !g.is_finite() {
            return Err(Error::NegativeCoupling(g));
        }
        let gamma = basis.gamma;
        let eps = basis.eps_sum();
        let delta = basis.delta();
        let coupling = g * gamma * gamma;
        let split = delta.hypot(coupling);
        let energies = [eps - split, eps - coupling, eps + coupling, eps + split];
        let theta = 0.5 * (coupling / delta).atan();
        let (s, c) = theta.sin_cos();
        let hbar = basis.params.hbar;
        let mut gaps = [[0.0; 4]; 4];
        for (nu, row) in gaps.iter_mut().enumerate() {
            for (mu, gap) in row.iter_mut().enumerate() {
                *gap = (energies[nu] - energies[mu]) / hbar;
            }
        }
        Ok(Self {
            g,
            energies,
            theta,
            alpha: std::f64::consts::SQRT_2 * gamma * (c + s),
            beta: std::f64::consts::SQRT_2 * gamma * (c - s),
            gaps,
            basis,
        })
    }

    pub fn hbar(&self) -> f64 {
        self.basis.params.hbar
    }

    /// `Δ_νμ`.
    pub fn gap(&self, nu: usize, mu: usize) -> f64 {
        self.gaps[nu][mu]
    }

    /// The resonance frequency `Δ₁₀` of the driven 0↔1 transition.
    pub fn delta10(&self) -> f64 {
        self.gaps[1][0]
    }

    /// Row ν holds the product-basis coefficients of Φ_ν. The matrix is
    /// orthogonal.
    pub fn eigenvector_matrix(&self) -> Matrix4 {
        let (s, c) = self.theta.sin_cos();
        let r = FRAC_1_SQRT_2;
        [[c, 0.0, 0.0, s], [0.0, r, r, 0.0], [0.0, -r, r, 0.0], [-s, 0.0, 0.0, c]]
    }
}

pub fn build_coupled(basis: &SingleWellBasis, g: f64) -> Result<CoupledSystem> {
    CoupledSystem::new(*basis, g)
}

/// Hamiltonian in the product basis for a symmetric field `F`.
pub fn energy_matrix_product_basis(sys: &CoupledSystem, field: f64) -> Matrix4 {
    let [e0, e1, _, _] = sys.basis.eps;
    let gamma = sys.basis.gamma;
    let v = -gamma * field;
    let k = -sys.g * gamma * gamma;
    [[2.0 * e0, v, v, k], [v, e0 + e1, k, v], [v, k, e0 + e1, v], [k, v, v, 2.0 * e1]]
}

/// Hamiltonian in the Φ basis for per-well fields `F₁`, `F₂`.
pub fn energy_matrix_eigen_basis(sys: &CoupledSystem, f1: f64, f2: f64) -> Matrix4 {
    let sum = f1 + f2;
    let diff = f1 - f2;
    let (a, b) = (0.5 * sys.alpha, 0.5 * sys.beta);
    let e = sys.energies;
    [
        [e[0], -a * sum, -b * diff, 0.0],
        [-a * sum, e[1], 0.0, -b * sum],
        [-b * diff, 0.0, e[2], a * diff],
        [0.0, -b * sum, a * diff, e[3]],
    ]
}

/// Hamiltonian in the product basis for per-well fields, `−γ(F₁ x₁ + F₂ x₂)`
/// restricted to the two lowest single-well levels.
pub fn energy_matrix_product_basis_general(sys: &CoupledSystem, f1: f64, f2: f64) -> Matrix4 {
    let [e0, e1, _, _] = sys.basis.eps;
    let gamma = sys.basis.gamma;
    let (v1, v2) = (-gamma * f1, -gamma * f2);
    let k = -sys.g * gamma * gamma;
    // x₁ flips the first index, x₂ the second.
    [[2.0 * e0, v2, v1, k], [v2, e0 + e1, k, v1], [v1, k, e0 + e1, v2], [k, v1, v2, 2.0 * e1]]
}
