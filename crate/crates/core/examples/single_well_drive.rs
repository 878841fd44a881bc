//! Driving only the first well: the antisymmetric sector opens up, and the
//! RWA reduces to the symmetric case at half the amplitude.

use razavy_dw::{
    build_coupled, integrate, rwa_single_well_drive, rwa_solve, DriveField, InitialState, PotentialParams,
    SingleWellBasis,
};

fn main() -> razavy_dw::Result<()> {
    let sys = build_coupled(&SingleWellBasis::new(PotentialParams::default())?, 0.01)?;
    let omega = sys.delta10();
    let single = rwa_single_well_drive(&InitialState::Ground, &sys, 0.02, omega)?;
    let sym = rwa_solve(&InitialState::Ground, &sys, 0.01, omega)?;
    println!("RWA Rabi frequency: first well f=0.02 {:.6}, symmetric f=0.01 {:.6}", single.rabi, sym.rabi);

    let traj = integrate(&InitialState::Ground, &sys, &DriveField::SinFirstWell { f: 0.02, omega }, 400.0, 40.0)?;
    println!("     t   p0      p1      p2      p3");
    for s in &traj.states {
        let p = s.populations();
        println!("{:6.0}   {:.4}  {:.4}  {:.4}  {:.4}", s.t, p[0], p[1], p[2], p[3]);
    }
    Ok(())
}
