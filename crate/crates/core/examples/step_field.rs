//! Symmetric step field switched on at t = 0: exact propagation against the
//! two-level closed form.

use razavy_dw::{
    build_coupled, integrate, DriveField, InitialState, PotentialParams, SingleWellBasis, TlaStepSolution,
};

fn main() -> razavy_dw::Result<()> {
    let sys = build_coupled(&SingleWellBasis::new(PotentialParams::default())?, 0.01)?;
    for f in [0.01, 0.02, 0.05] {
        let tla = TlaStepSolution::new(&InitialState::Ground, &sys, f)?;
        let traj = integrate(&InitialState::Ground, &sys, &DriveField::StepSymmetric { f }, 200.0, 20.0)?;
        println!("f = {f}  Omega_s = {:.5}", tla.rabi_step);
        for s in &traj.states {
            let p = s.populations();
            println!(
                "  t = {:4.0}  p1 exact {:.5}  p1 TLA {:.5}  p3 exact {:.5}",
                s.t,
                p[1],
                tla.amplitudes(s.t)[1].norm_sqr(),
                p[3]
            );
        }
    }
    Ok(())
}
