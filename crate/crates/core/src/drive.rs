//! Applied fields, always evaluated as the per-well pair `(F₁(t), F₂(t))`.

use crate::error::{Error, Result};

/// Time profile of the field on a single well.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldShape {
    Zero,
    /// `f sin ωt`
    Sine {
        f: f64,
        omega: f64,
    },
    /// `f Θ(t)` with `Θ(0) = 1`.
    Step {
        f: f64,
    },
    /// Piecewise-linear through `(times[i], values[i])`, held constant outside
    /// the table.
    Table {
        times: Vec<f64>,
        values: Vec<f64>,
    },
}

impl FieldShape {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            FieldShape::Zero => 0.0,
            FieldShape::Sine { f, omega } => f * (omega * t).sin(),
            FieldShape::Step { f } => heaviside(t) * f,
            FieldShape::Table { times, values } => interpolate(times, values, t),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            FieldShape::Zero => Ok(()),
            FieldShape::Sine { f, omega } => {
                check_amplitude(*f)?;
                check_frequency(*omega)
            }
            FieldShape::Step { f } => check_amplitude(*f),
            FieldShape::Table { times, values } => {
                if times.is_empty() || times.len() != values.len() {
                    return Err(Error::InvalidDrive(format!(
                        "table needs matching non-empty times/values (got {} and {})",
                        times.len(),
                        values.len()
                    )));
                }
                if times.iter().chain(values).any(|v| !v.is_finite()) {
                    return Err(Error::InvalidDrive("table entries must be finite".into()));
                }
                if times.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidDrive("table times must be strictly increasing".into()));
                }
                Ok(())
            }
        }
    }

    fn max_amplitude(&self) -> f64 {
        match self {
            FieldShape::Zero => 0.0,
            FieldShape::Sine { f, .. } | FieldShape::Step { f } => f.abs(),
            FieldShape::Table { values, .. } => values.iter().fold(0.0, |m, v| m.max(v.abs())),
        }
    }

    fn max_frequency(&self) -> f64 {
        match self {
            FieldShape::Sine { omega, .. } => *omega,
            FieldShape::Table { times, .. } => {
                // the sampling interval bounds the resolvable frequency
                times.windows(2).map(|w| std::f64::consts::PI / (w[1] - w[0])).fold(0.0, f64::max)
            }
            _ => 0.0,
        }
    }
}

fn heaviside(t: f64) -> f64 {
    if t >= 0.0 {
        1.0
    } else {
        0.0
    }
}

fn interpolate(times: &[f64], values: &[f64], t: f64) -> f64 {
    let last = times.len() - 1;
    if t <= times[0] {
        return values[0];
    }
    if t >= times[last] {
        return values[last];
    }
    let hi = times.partition_point(|&x| x <= t);
    let lo = hi - 1;
    let w = (t - times[lo]) / (times[hi] - times[lo]);
    values[lo] + w * (values[hi] - values[lo])
}

fn check_amplitude(f: f64) -> Result<()> {
    if f >= 0.0 && f.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidDrive(format!("amplitude must be non-negative and finite, got {f}")))
    }
}

fn check_frequency(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidDrive(format!("frequency must be positive and finite, got {omega}")))
    }
}

/// Applied field configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum DriveField {
    None,
    /// `F₁ = F₂ = f sin ωt`
    SinSymmetric {
        f: f64,
        omega: f64,
    },
    /// `F₁ = F₂ = f Θ(t)`
    StepSymmetric {
        f: f64,
    },
    /// `F₁ = −F₂ = f sin ωt`
    SinAntisymmetric {
        f: f64,
        omega: f64,
    },
    /// `F₁ = f sin ωt`, `F₂ = 0`
    SinFirstWell {
        f: f64,
        omega: f64,
    },
    /// Independent shapes on each well.
    General {
        first: FieldShape,
        second: FieldShape,
    },
}

impl DriveField {
    pub fn validate(&self) -> Result<()> {
        match self {
            DriveField::None => Ok(()),
            DriveField::SinSymmetric { f, omega }
            | DriveField::SinAntisymmetric { f, omega }
            | DriveField::SinFirstWell { f, omega } => {
                check_amplitude(*f)?;
                check_frequency(*omega)
            }
            DriveField::StepSymmetric { f } => check_amplitude(*f),
            DriveField::General { first, second } => {
                first.validate()?;
                second.validate()
            }
        }
    }

    pub fn eval(&self, t: f64) -> (f64, f64) {
        match self {
            DriveField::None => (0.0, 0.0),
            DriveField::SinSymmetric { f, omega } => {
                let v = f * (omega * t).sin();
                (v, v)
            }
            DriveField::StepSymmetric { f } => {
                let v = heaviside(t) * f;
                (v, v)
            }
            DriveField::SinAntisymmetric { f, omega } => {
                let v = f * (omega * t).sin();
                (v, -v)
            }
            DriveField::SinFirstWell { f, omega } => (f * (omega * t).sin(), 0.0),
            DriveField::General { first, second } => (first.eval(t), second.eval(t)),
        }
    }

    /// Largest `|F_n(t)|` the drive can reach.
    pub fn max_amplitude(&self) -> f64 {
        match self {
            DriveField::None => 0.0,
            DriveField::SinSymmetric { f, .. }
            | DriveField::StepSymmetric { f }
            | DriveField::SinAntisymmetric { f, .. }
            | DriveField::SinFirstWell { f, .. } => f.abs(),
            DriveField::General { first, second } => first.max_amplitude().max(second.max_amplitude()),
        }
    }

    /// Highest angular frequency present in the drive (0 for static fields).
    pub fn max_frequency(&self) -> f64 {
        match self {
            DriveField::SinSymmetric { omega, .. }
            | DriveField::SinAntisymmetric { omega, .. }
            | DriveField::SinFirstWell { omega, .. } => *omega,
            DriveField::General { first, second } => first.max_frequency().max(second.max_frequency()),
            _ => 0.0,
        }
    }

    /// True when `F₁ ≡ F₂`.
    pub fn is_symmetric(&self) -> bool {
        matches!(self, DriveField::None | DriveField::SinSymmetric { .. } | DriveField::StepSymmetric { .. })
    }
}

pub fn eval_field(drive: &DriveField, t: f64) -> (f64, f64) {
    drive.eval(t)
}
