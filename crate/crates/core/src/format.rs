//! Locale-independent number formatting and the CSV / grid JSON writers.
//!
//! All artifact numbers are written in scientific notation so that identical
//! inputs give byte-identical files.

use std::fmt::Write as _;

use crate::observables::{DensityGrid, ObservableSeries};

/// Column header of every trajectory CSV.
pub const CSV_HEADER: &str = "t,p0,p1,p2,p3,x1,x2,x_sum,gamma,conc";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Precision {
    /// 6 significant digits.
    #[default]
    Human,
    /// 17 significant digits (round-trip).
    Machine,
}

impl Precision {
    pub fn digits(self) -> usize {
        match self {
            Precision::Human => 6,
            Precision::Machine => 17,
        }
    }
}

/// Scientific notation with `digits` significant digits, e.g. `7.43109e-2`.
pub fn sci(x: f64, digits: usize) -> String {
    if x == 0.0 {
        // avoid "-0"
        return format!("{:.*e}", digits - 1, 0.0);
    }
    format!("{:.*e}", digits - 1, x)
}

/// `%g`-style formatting: fixed notation for moderate exponents, trailing
/// zeros stripped.
pub fn general(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = strip_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    strip_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Which column groups a CSV carries; absent groups become empty fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Columns {
    pub populations: bool,
    pub positions: bool,
    pub correlation: bool,
    pub concurrence: bool,
}

pub fn series_csv(series: &ObservableSeries, columns: Columns, precision: Precision) -> String {
    let d = precision.digits();
    let mut out = String::with_capacity(series.len() * 16 * d);
    out.push_str(CSV_HEADER);
    out.push('\n');
    let blank = |n: usize| vec![String::new(); n];
    for k in 0..series.len() {
        let mut fields = vec![sci(series.times[k], d)];
        if columns.populations {
            fields.extend(series.populations[k].iter().map(|p| sci(*p, d)));
        } else {
            fields.extend(blank(4));
        }
        if columns.positions {
            fields.extend([series.x1[k], series.x2[k], series.x_sum[k]].iter().map(|v| sci(*v, d)));
        } else {
            fields.extend(blank(3));
        }
        fields.push(if columns.correlation { sci(series.corr[k], d) } else { String::new() });
        fields.push(if columns.concurrence { sci(series.conc[k], d) } else { String::new() });
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn json_array(values: &[f64], d: usize) -> String {
    let items: Vec<String> = values.iter().map(|v| sci(*v, d)).collect();
    format!("[{}]", items.join(","))
}

/// Grid snapshot as a JSON object with `t`, `x1_axis`, `x2_axis`, `values`
/// (one inner array per `x1` sample) and `norm_check`.
pub fn grid_json(grid: &DensityGrid, precision: Precision) -> String {
    let d = precision.digits();
    let n2 = grid.x2_axis.len();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"t\": {},", sci(grid.t, d));
    let _ = writeln!(out, "  \"x1_axis\": {},", json_array(&grid.x1_axis, d));
    let _ = writeln!(out, "  \"x2_axis\": {},", json_array(&grid.x2_axis, d));
    out.push_str("  \"values\": [\n");
    let rows: Vec<String> = grid.values.chunks(n2).map(|row| format!("    {}", json_array(row, d))).collect();
    out.push_str(&rows.join(",\n"));
    out.push_str("\n  ],\n");
    let _ = writeln!(out, "  \"norm_check\": {}", sci(grid.norm, d));
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific() {
        assert_eq!(sci(0.0743109, 6), "7.43109e-2");
        assert_eq!(sci(-4.732050807568877, 6), "-4.73205e0");
        assert_eq!(sci(0.0, 6), "0.00000e0");
        assert_eq!(sci(-0.0, 3), "0.00e0");
        let s = sci(std::f64::consts::PI, 17);
        assert_eq!(s.parse::<f64>().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn general_format() {
        assert_eq!(general(0.07431203, 6), "0.074312");
        assert_eq!(general(-4.732050807568877, 6), "-4.73205");
        assert_eq!(general(1.1382276857, 6), "1.13823");
        assert_eq!(general(0.0, 6), "0");
        assert_eq!(general(1.5e-7, 6), "1.5e-7");
        assert_eq!(general(1234567.0, 6), "1.23457e6");
        assert_eq!(general(0.6457513110645907, 6), "0.645751");
    }
}
