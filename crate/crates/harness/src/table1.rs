//! The `𝒜₁` branch table for odd `l`, and the clamped-plate coefficients
//! set against Cheng-Wei.

use polybound_core::bounds::{coeff_a1, coeff_a2, is_theta_branch, plate_coefficients, plate_threshold};
use polybound_core::geometry::{collar_ratio, CollarSpec, Domain};

/// Published branch pattern: rows `l = 1, 3, 5`, columns `n = 1..=12` and
/// `n ≥ 12` (checked at 13). `true` marks the `Θ` branch.
pub const PUBLISHED: [(usize, [bool; 13]); 3] = [
    (1, [true; 13]),
    (3, [true, true, true, true, true, true, true, false, false, false, false, false, false]),
    (5, [true, true, true, true, true, true, true, true, false, false, false, false, false]),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub n: usize,
    pub l: usize,
    pub expected_theta: bool,
    pub theta: bool,
    pub a1: f64,
    /// `𝒜₁` agrees with the `Θ` expression (or with 0 off-branch).
    pub value_ok: bool,
}

impl Cell {
    pub fn matches(&self) -> bool {
        self.theta == self.expected_theta && self.value_ok
    }
}

fn theta_value(n: usize, l: usize) -> f64 {
    let (nf, lf) = (n as f64, l as f64);
    nf * (2.0 * lf * lf + (4.0 - 2.0 * nf) * lf + 2.0 * nf - 2.0) / (nf + 2.0 * lf - 2.0)
}

pub fn table1_cells() -> Vec<Cell> {
    let mut out = Vec::with_capacity(39);
    for (l, row) in PUBLISHED {
        for (i, &expected_theta) in row.iter().enumerate() {
            let n = i + 1;
            let theta = is_theta_branch(n, l);
            let a1 = coeff_a1(n, l);
            let reference = if theta { theta_value(n, l) } else { 0.0 };
            let value_ok = (a1 - reference).abs() <= 1e-12 * reference.abs().max(1.0);
            out.push(Cell { n, l, expected_theta, theta, a1, value_ok });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlateRow {
    pub n: usize,
    pub a1: f64,
    pub cheng_wei_second: f64,
    pub a2: f64,
    pub cheng_wei_third: f64,
}

impl PlateRow {
    pub fn ok(&self) -> bool {
        self.a1 < self.cheng_wei_second && self.a2 == self.cheng_wei_third
    }
}

pub fn plate_rows() -> Vec<PlateRow> {
    (1..=16)
        .map(|n| {
            let (a1, cw2, a2, cw3) = plate_coefficients(n);
            PlateRow { n, a1, cheng_wei_second: cw2, a2, cheng_wei_third: cw3 }
        })
        .collect()
}

/// `𝒜₂(n, 2) = 4n²` for `n = 1..=16`.
pub fn a2_plate_ok() -> bool {
    (1..=16).all(|n| coeff_a2(n, 2).map(|v| v == 4.0 * (n * n) as f64).unwrap_or(false))
}

/// Smallest `k ≤ k_max` from which the full collar bound stays below
/// Cheng-Wei, on the unit square at several `σ₀`.
pub fn plate_thresholds(k_max: usize) -> Vec<(f64, f64, Option<usize>)> {
    let square = Domain::cube(2, 1.0).expect("unit square");
    [2.5, 4.0, 8.0, 16.0]
        .into_iter()
        .map(|sigma0| {
            let theta = collar_ratio(&square, CollarSpec::new(sigma0).expect("positive sigma"));
            let t = plate_threshold(2, 1.0, theta, 1..=k_max).expect("theta < 1");
            (sigma0, theta, t)
        })
        .collect()
}

/// Prints the tables; returns whether every check passed.
pub fn print_report() -> bool {
    let cells = table1_cells();
    println!("A1(n,l) branch table (T = Theta branch, 0 = zero branch)");
    print!("{:>4}", "l\\n");
    for n in 1..=13 {
        print!("{:>4}", if n == 13 { ">=12".to_string() } else { n.to_string() });
    }
    println!();
    for (l, _) in PUBLISHED {
        print!("{l:>4}");
        for c in cells.iter().filter(|c| c.l == l) {
            let mark = if c.theta { "T" } else { "0" };
            let flag = if c.matches() { "" } else { "!" };
            print!("{:>4}", format!("{mark}{flag}"));
        }
        println!();
    }
    let matched = cells.iter().filter(|c| c.matches()).count();
    println!("cells matching: {matched}/{}", cells.len());

    println!("clamped plate (l = 2): collar vs Cheng-Wei coefficients");
    println!("{:>3} {:>12} {:>12} {:>8} {:>8}", "n", "A1(n,2)", "24n/(n+2)", "A2(n,2)", "4n^2");
    let plate = plate_rows();
    for r in &plate {
        println!(
            "{:>3} {:>12.6} {:>12.6} {:>8} {:>8}{}",
            r.n,
            r.a1,
            r.cheng_wei_second,
            r.a2,
            r.cheng_wei_third,
            if r.ok() { "" } else { "  MISMATCH" }
        );
    }
    for (sigma0, theta, t) in plate_thresholds(10_000) {
        match t {
            Some(k) => println!("unit square sigma0={sigma0} theta={theta:.6}: collar bound <= Cheng-Wei for k >= {k}"),
            None => println!("unit square sigma0={sigma0} theta={theta:.6}: no threshold up to k = 10000"),
        }
    }
    matched == cells.len() && plate.iter().all(PlateRow::ok) && a2_plate_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_cells_match() {
        let cells = table1_cells();
        assert_eq!(cells.len(), 39);
        assert!(cells.iter().all(Cell::matches));
        assert!(plate_rows().iter().all(PlateRow::ok));
        assert!(a2_plate_ok());
    }
}
