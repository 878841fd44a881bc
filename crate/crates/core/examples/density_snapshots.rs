//! Two-particle density |Psi(x1, x2, t)|^2 of the driven wavepacket, with the
//! grid quadrature cross-checking the position expectations.

use razavy_dw::{
    build_coupled, density_grid, expectation_positions, grid_oracle_expectation, integrate, DriveField, GridSpec,
    InitialState, Particle, PotentialParams, SingleWellBasis,
};

fn main() -> razavy_dw::Result<()> {
    let sys = build_coupled(&SingleWellBasis::new(PotentialParams::default())?, 0.01)?;
    let drive = DriveField::SinSymmetric { f: 0.02, omega: sys.delta10() };
    let traj = integrate(&InitialState::Wavepacket, &sys, &drive, 300.0, 100.0)?;
    let spec = GridSpec::default();
    let first = density_grid(&traj.states[0], &sys, &spec)?;
    for state in &traj.states {
        let grid = density_grid(state, &sys, &spec)?;
        let (px, py) = grid.peak();
        let pos = expectation_positions(state, &sys);
        println!(
            "t = {:3.0}  peak ({px:+.2}, {py:+.2})  norm {:.8}  similarity to t=0 {:.4}  <x1> {:+.6} (grid {:+.6})",
            state.t,
            grid.norm,
            grid.cosine_similarity(&first),
            pos.x1,
            grid_oracle_expectation(&grid, Particle::First)
        );
    }
    Ok(())
}
