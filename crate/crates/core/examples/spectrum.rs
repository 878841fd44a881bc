//! Single-well levels, the dipole element and the coupled spectrum for a few
//! couplings.

use razavy_dw::{build_coupled, PotentialParams, SingleWellBasis};

fn main() -> razavy_dw::Result<()> {
    let basis = SingleWellBasis::new(PotentialParams::default())?;
    println!("single well: eps = {:.6?}", basis.eps);
    println!("delta = {:.6}, gamma = {:.6}", basis.delta(), basis.gamma);
    for g in [0.0, 0.01, 0.1, 0.2] {
        let sys = build_coupled(&basis, g)?;
        println!(
            "g = {g:<5} E = {:.5?}  theta = {:.5}  alpha = {:.5}  beta = {:.5}  Delta10 = {:.6}",
            sys.energies,
            sys.theta,
            sys.alpha,
            sys.beta,
            sys.delta10()
        );
    }
    Ok(())
}
