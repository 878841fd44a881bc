//! Driven coupled double-well systems in Razavy's hyperbolic potential.
//!
//! Two distinguishable particles, each confined to the quasi-exactly
//! solvable double well
//!
//! ```text
//! V(x) = (ħ²/2m) [ (ξ²/8) cosh 4x − 4ξ cosh 2x − ξ²/8 ]
//! ```
//!
//! are coupled by `−g x₁x₂` and driven by `−x₁F₁(t) − x₂F₂(t)`. Restricting each
//! well to its two lowest levels gives a four-level model whose interaction
//! picture amplitudes `a₀..a₃` are propagated numerically ([`dynamics`]) and,
//! for sinusoidal and step fields, in closed form ([`analytic`]). Observables
//! (position expectations, correlation, concurrence, wavefunction density) are
//! computed from any amplitude source ([`observables`]).
//!
//! Scenario files and the `razavy-dw` binary live in [`scenario`].

// `!(x > 0.0)` is how NaN gets rejected throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod coupled;
pub mod drive;
pub mod dynamics;
mod error;
pub mod format;
pub mod observables;
pub mod potential;
mod quadrature;
pub mod scenario;

pub use num_complex::Complex64 as C64;

pub use analytic::{
    rabi_frequency, rwa_amplitudes, rwa_single_well_drive, rwa_solve, rwa_time_averages, tla_step_amplitudes,
    RwaAverages, RwaSolution, TlaStepSolution,
};
pub use coupled::{build_coupled, energy_matrix_eigen_basis, energy_matrix_product_basis, CoupledSystem, Matrix4};
pub use drive::{eval_field, DriveField, FieldShape};
pub use dynamics::{
    advance, amplitude_derivative, integrate, integrate_with, rk_step, AmplitudeState, InitialState, IntegratorConfig,
    Trajectory,
};
pub use error::{Error, Result};
pub use observables::{
    concurrence, correlation, density_grid, expectation_positions, grid_oracle_expectation, rwa_concurrence,
    rwa_correlation, rwa_expectation, DensityGrid, GridSpec, ObservableSeries, Particle, Positions,
};
pub use potential::{
    eval_eigenfunction, eval_potential, normalization_and_gamma, schrodinger_residual, single_well_eigenvalues,
    PotentialParams, QuadratureConfig, SingleWellBasis,
};
