//! Resonant symmetric drive from the ground state: exact propagation next to
//! the rotating-wave solution.

use razavy_dw::{build_coupled, integrate, rwa_solve, DriveField, InitialState, PotentialParams, SingleWellBasis};

fn main() -> razavy_dw::Result<()> {
    let sys = build_coupled(&SingleWellBasis::new(PotentialParams::default())?, 0.01)?;
    let omega = sys.delta10();
    for f in [0.01, 0.02, 0.05] {
        let traj = integrate(&InitialState::Ground, &sys, &DriveField::SinSymmetric { f, omega }, 400.0, 50.0)?;
        let rwa = rwa_solve(&InitialState::Ground, &sys, f, omega)?;
        println!("f = {f}  (Rabi frequency {:.5})", rwa.rabi);
        println!("     t   p0 exact  p0 rwa   p1 exact  p3 exact");
        for s in &traj.states {
            let p = s.populations();
            let q = rwa.amplitudes(s.t)[0].norm_sqr();
            println!("{:6.0}   {:.4}    {:.4}   {:.4}    {:.4}", s.t, p[0], q, p[1], p[3]);
        }
    }
    Ok(())
}
