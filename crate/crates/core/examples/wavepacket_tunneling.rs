//! A wavepacket localized in one well of each system tunnels back and forth;
//! a resonant field breaks up the simple oscillation.

use razavy_dw::{
    build_coupled, integrate, DriveField, InitialState, ObservableSeries, PotentialParams, SingleWellBasis,
};

fn main() -> razavy_dw::Result<()> {
    let sys = build_coupled(&SingleWellBasis::new(PotentialParams::default())?, 0.01)?;
    let omega = sys.delta10();
    println!("bare tunneling period 2pi/Delta10 = {:.2}", std::f64::consts::TAU / omega);
    for f in [0.0, 0.01, 0.02] {
        let drive = if f == 0.0 { DriveField::None } else { DriveField::SinSymmetric { f, omega } };
        let traj = integrate(&InitialState::Wavepacket, &sys, &drive, 300.0, 10.0)?;
        let s = ObservableSeries::from_states(&traj.states, &sys);
        println!("f = {f}");
        for k in (0..s.len()).step_by(3) {
            println!(
                "  t = {:5.0}  <x1+x2> = {:+.4}  Gamma = {:.4}  C = {:.4}",
                s.times[k], s.x_sum[k], s.corr[k], s.conc[k]
            );
        }
    }
    Ok(())
}
