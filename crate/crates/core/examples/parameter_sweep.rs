//! Averaged concurrence across couplings and detunings, run in parallel
//! through the scenario layer.

use razavy_dw::format::Precision;
use razavy_dw::scenario::{sweep, sweep_csv, sweep_range, Scenario, SweepParam};

const BASE: &str = r#"
[system]
g = 0.01

[drive]
kind = "sin-symmetric"
f = 0.01
omega_ratio = 1.0

[run]
t_max = 2000.0
methods = ["exact", "rwa"]

[outputs]
include = ["averages"]
"#;

fn main() {
    let base = Scenario::from_toml(BASE).expect("valid base scenario");
    let rows = sweep(&base, SweepParam::G, &sweep_range(0.01, 0.2, 5).unwrap()).unwrap();
    print!("{}", sweep_csv(&base, SweepParam::G, &rows, Precision::Human));

    let d10 = base.system().unwrap().delta10();
    let omegas: Vec<f64> = [0.8, 0.9, 1.0, 1.1, 1.2].iter().map(|r| r * d10).collect();
    let rows = sweep(&base, SweepParam::Omega, &omegas).unwrap();
    print!("{}", sweep_csv(&base, SweepParam::Omega, &rows, Precision::Human));
}
