//! Deterministic figure-reproduction sweeps over Bernoulli sources.
//!
//! Each sweep walks a grid of `p₁` values and emits one row per point.
//! The CSV writers produce byte-identical output for identical inputs:
//! fixed header, `#`-prefixed metadata comments, reals printed with nine
//! significant digits, `\n` line endings.

use std::io::{self, Write};

use serde::Serialize;

use crate::codec::{generalized_kraft_check, kraft_sum};
use crate::error::{Error, Result};
use crate::measures::{mim_bounds, shannon_bounds, uisc_bounds};
use crate::source_model::{
    mim_normalized, mim_utilities, CodeBase, Distribution, ImportanceCoefficient, WeightVector,
};

/// Grid step used by the shipped figure data.
pub const DEFAULT_GRID_STEP: f64 = 0.01;

/// Importance coefficients of the optimal-length figure panels.
pub const FIG1_DEFAULT_OMEGAS: [f64; 2] = [-1.0, 1.0];

/// Importance coefficients of the bound-comparison figure panels.
pub const FIG2_DEFAULT_OMEGAS: [f64; 4] = [-4.0, 1.0, 4.0, 8.0];

/// Grid `{k·step : k ≥ 1, k·step < 1}`; the default step yields
/// `0.01, 0.02, …, 0.99`.
pub fn grid_with_step(step: f64) -> Result<Vec<f64>> {
    if !step.is_finite() || step <= 0.0 || step >= 1.0 {
        return Err(Error::GridPointOutOfRange(step));
    }
    let mut grid = Vec::new();
    let mut k = 1_u32;
    loop {
        let p = f64::from(k) * step;
        if p >= 1.0 {
            break;
        }
        grid.push(p);
        k += 1;
    }
    Ok(grid)
}

pub fn default_grid() -> Vec<f64> {
    grid_with_step(DEFAULT_GRID_STEP).expect("default step is valid")
}

fn bernoulli(p1: f64) -> Result<Distribution> {
    if !(p1 > 0.0 && p1 < 1.0) {
        return Err(Error::GridPointOutOfRange(p1));
    }
    Distribution::new(vec![p1, 1.0 - p1])
}

/// Ideal first-symbol codeword lengths for a Bernoulli source: Shannon's
/// `−log_D p₁` next to the importance-weighted `−log_D MIM_N(x₁;ω)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig1Row {
    pub p1: f64,
    pub shannon_len1: f64,
    pub iw_len1: f64,
}

pub fn sweep_lengths_fig1(
    omega: ImportanceCoefficient,
    grid: &[f64],
    base: CodeBase,
) -> Result<Vec<Fig1Row>> {
    grid.iter()
        .map(|&p1| {
            let dist = bernoulli(p1)?;
            let normalized = mim_normalized(&dist, omega);
            Ok(Fig1Row {
                p1,
                shannon_len1: -base.log(p1),
                iw_len1: -base.log(normalized[0]),
            })
        })
        .collect()
}

/// Bound pairs of the three theories at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig2Row {
    pub p1: f64,
    pub shannon_lo: f64,
    pub shannon_hi: f64,
    pub uisc_lo: f64,
    pub uisc_hi: f64,
    pub mim_lo: f64,
    pub mim_hi: f64,
}

/// Sweeps Shannon, UISC, and MIM-weighted bounds over the grid. UISC
/// utilities are the exponential factors `uᵢ ∝ e^{ω(1−pᵢ)}` so both
/// weighted theories see the same importance signal.
pub fn sweep_bounds_fig2(
    omega: ImportanceCoefficient,
    grid: &[f64],
    base: CodeBase,
) -> Result<Vec<Fig2Row>> {
    grid.iter()
        .map(|&p1| {
            let dist = bernoulli(p1)?;
            let shannon = shannon_bounds(&dist, base);
            let uisc = uisc_bounds(&dist, &mim_utilities(&dist, omega), base)?;
            let mim = mim_bounds(&dist, omega, base);
            Ok(Fig2Row {
                p1,
                shannon_lo: shannon.lower,
                shannon_hi: shannon.upper,
                uisc_lo: uisc.lower,
                uisc_hi: uisc.upper,
                mim_lo: mim.lower,
                mim_hi: mim.upper,
            })
        })
        .collect()
}

/// One grid point of the generalized-Kraft counterexample: the fixed
/// binary code (0, 1) with utilities (1, 2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CounterexampleRow {
    pub p1: f64,
    pub gk_lhs: f64,
    pub gk_rhs: f64,
    pub holds: bool,
    pub kraft_sum: f64,
}

/// Evaluates the generalized Kraft inequality for the valid binary prefix
/// code (0, 1) under utilities (1, 2). The left side is constant 3/2
/// while the right side is `2 − p₁`, so the inequality fails exactly for
/// `p₁ > 0.5` even though the code stays decodable (Kraft sum 1).
pub fn counterexample_report(grid: &[f64]) -> Result<Vec<CounterexampleRow>> {
    let utilities = WeightVector::new(vec![1.0, 2.0]).expect("static utilities");
    let lengths = [1, 1];
    grid.iter()
        .map(|&p1| {
            let dist = bernoulli(p1)?;
            let check = generalized_kraft_check(&lengths, &utilities, &dist, CodeBase::BINARY)?;
            Ok(CounterexampleRow {
                p1,
                gk_lhs: check.lhs,
                gk_rhs: check.rhs,
                holds: check.holds,
                kraft_sum: kraft_sum(&lengths, CodeBase::BINARY),
            })
        })
        .collect()
}

/// Nine significant digits, scientific notation.
fn fmt_real(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn write_fig1_csv<W: Write>(
    mut out: W,
    omega: ImportanceCoefficient,
    base: CodeBase,
    rows: &[Fig1Row],
) -> io::Result<()> {
    writeln!(out, "# figure=fig1")?;
    writeln!(out, "# omega={}", omega.value())?;
    writeln!(out, "# base={}", base.size())?;
    writeln!(out, "p1,shannon_len1,iw_len1")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{}",
            fmt_real(row.p1),
            fmt_real(row.shannon_len1),
            fmt_real(row.iw_len1)
        )?;
    }
    Ok(())
}

pub fn write_fig2_csv<W: Write>(
    mut out: W,
    omega: ImportanceCoefficient,
    base: CodeBase,
    rows: &[Fig2Row],
) -> io::Result<()> {
    writeln!(out, "# figure=fig2")?;
    writeln!(out, "# omega={}", omega.value())?;
    writeln!(out, "# base={}", base.size())?;
    writeln!(out, "# uisc_utilities=mim_factors")?;
    writeln!(out, "p1,shannon_lo,shannon_hi,uisc_lo,uisc_hi,mim_lo,mim_hi")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_real(row.p1),
            fmt_real(row.shannon_lo),
            fmt_real(row.shannon_hi),
            fmt_real(row.uisc_lo),
            fmt_real(row.uisc_hi),
            fmt_real(row.mim_lo),
            fmt_real(row.mim_hi)
        )?;
    }
    Ok(())
}

pub fn write_counterexample_csv<W: Write>(
    mut out: W,
    rows: &[CounterexampleRow],
) -> io::Result<()> {
    writeln!(out, "# figure=counterexample")?;
    writeln!(out, "# utilities=1,2")?;
    writeln!(out, "# lengths=1,1")?;
    writeln!(out, "# base=2")?;
    writeln!(out, "p1,gk_lhs,gk_rhs,holds,kraft_sum")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_real(row.p1),
            fmt_real(row.gk_lhs),
            fmt_real(row.gk_rhs),
            row.holds,
            fmt_real(row.kraft_sum)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const D2: CodeBase = CodeBase::BINARY;

    fn omega(value: f64) -> ImportanceCoefficient {
        ImportanceCoefficient::new(value).unwrap()
    }

    #[test]
    fn default_grid_shape() {
        let grid = default_grid();
        assert_eq!(grid.len(), 99);
        assert_eq!(grid[0], 0.01);
        assert_eq!(grid[49], 0.5);
        assert_eq!(grid[98], 0.99);
    }

    #[test]
    fn grid_step_validation() {
        assert!(grid_with_step(0.0).is_err());
        assert!(grid_with_step(1.0).is_err());
        assert!(grid_with_step(f64::NAN).is_err());
        assert_eq!(grid_with_step(0.3).unwrap(), vec![0.3, 0.6, 0.8999999999999999]);
    }

    #[test]
    fn fig1_zero_omega_columns_coincide() {
        let rows = sweep_lengths_fig1(omega(0.0), &default_grid(), D2).unwrap();
        for row in rows {
            assert_eq!(row.shannon_len1, row.iw_len1);
        }
    }

    #[test]
    fn fig1_spot_values() {
        let rows = sweep_lengths_fig1(omega(-1.0), &[0.8], D2).unwrap();
        assert!((rows[0].shannon_len1 - 0.32192809488736235).abs() < 1e-12);
        assert!((rows[0].iw_len1 - 0.185489694620884).abs() < 1e-10);
        assert!(rows[0].iw_len1 < rows[0].shannon_len1);

        let rows = sweep_lengths_fig1(omega(1.0), &[0.9], D2).unwrap();
        assert!((rows[0].shannon_len1 - 0.15200309344504997).abs() < 1e-12);
        assert!((rows[0].iw_len1 - 0.31878805966320467).abs() < 1e-10);
        assert!(rows[0].iw_len1 > rows[0].shannon_len1);
    }

    #[test]
    fn fig2_spot_values() {
        let rows = sweep_bounds_fig2(omega(1.0), &[0.2], D2).unwrap();
        assert!((rows[0].mim_lo - 0.8965663270368011).abs() < 1e-10);
        assert!((rows[0].shannon_lo - 0.7219280948873623).abs() < 1e-12);
        assert!(rows[0].mim_lo > rows[0].shannon_lo);

        let rows = sweep_bounds_fig2(omega(8.0), &[0.2], D2).unwrap();
        assert!((rows[0].mim_lo - 0.20368415737252457).abs() < 1e-10);
        assert!(rows[0].mim_lo < rows[0].shannon_lo);

        // symmetric point: every theory gives (1, 2) in binary
        let rows = sweep_bounds_fig2(omega(5.0), &[0.5], D2).unwrap();
        assert!((rows[0].mim_lo - 1.0).abs() < 1e-12);
        assert!((rows[0].shannon_lo - 1.0).abs() < 1e-12);
        assert!((rows[0].uisc_lo - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fig2_rows_are_ordered_pairs() {
        for w in FIG2_DEFAULT_OMEGAS {
            let rows = sweep_bounds_fig2(omega(w), &default_grid(), D2).unwrap();
            for row in rows {
                assert!(row.shannon_lo <= row.shannon_hi);
                assert!(row.uisc_lo <= row.uisc_hi);
                assert!(row.mim_lo <= row.mim_hi);
                for v in [
                    row.shannon_lo,
                    row.shannon_hi,
                    row.uisc_lo,
                    row.uisc_hi,
                    row.mim_lo,
                    row.mim_hi,
                ] {
                    assert!(v.is_finite() && v >= 0.0);
                }
                // fixed widths: one symbol for Shannon/UISC/MIM pairs
                assert!((row.shannon_hi - row.shannon_lo - 1.0).abs() < 1e-15);
                assert!((row.uisc_hi - row.uisc_lo - 1.0).abs() < 1e-15);
                assert!((row.mim_hi - row.mim_lo - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn counterexample_flags_violation_above_half() {
        let rows = counterexample_report(&default_grid()).unwrap();
        for row in rows {
            assert_eq!(row.gk_lhs, 1.5);
            assert_eq!(row.kraft_sum, 1.0);
            assert_eq!(row.holds, row.p1 <= 0.5, "p1 = {}", row.p1);
            assert!((row.gk_rhs - (2.0 - row.p1)).abs() < 1e-12);
        }
    }

    #[test]
    fn counterexample_spot_rows() {
        let rows = counterexample_report(&[0.8, 0.5, 0.3]).unwrap();
        assert!((rows[0].gk_rhs - 1.2).abs() < 1e-12 && !rows[0].holds);
        assert_eq!(rows[1].gk_rhs, 1.5);
        assert!(rows[1].holds);
        assert!((rows[2].gk_rhs - 1.7).abs() < 1e-12 && rows[2].holds);
    }

    #[test]
    fn sweeps_reject_out_of_range_grid() {
        assert!(sweep_lengths_fig1(omega(1.0), &[0.0], D2).is_err());
        assert!(sweep_bounds_fig2(omega(1.0), &[1.0], D2).is_err());
        assert!(counterexample_report(&[-0.1]).is_err());
    }

    #[test]
    fn csv_output_is_deterministic() {
        let rows = sweep_bounds_fig2(omega(4.0), &default_grid(), D2).unwrap();
        let mut first = Vec::new();
        let mut second = Vec::new();
        write_fig2_csv(&mut first, omega(4.0), D2, &rows).unwrap();
        write_fig2_csv(&mut second, omega(4.0), D2, &rows).unwrap();
        assert_eq!(first, second);
        let text = String::from_utf8(first).unwrap();
        assert!(text.starts_with("# figure=fig2\n# omega=4\n# base=2\n# uisc_utilities=mim_factors\n"));
        assert!(text.contains("p1,shannon_lo,shannon_hi,uisc_lo,uisc_hi,mim_lo,mim_hi\n"));
        assert_eq!(text.lines().count(), 4 + 1 + 99);
        assert!(!text.ends_with("\n\n"));
    }

    #[test]
    fn csv_reals_have_nine_significant_digits() {
        assert_eq!(fmt_real(0.7219280948873623), "7.21928095e-1");
        assert_eq!(fmt_real(1.0), "1.00000000e0");
        assert_eq!(fmt_real(0.01), "1.00000000e-2");
    }
}
