//! Deterministic CSV and JSON emission for the command-line tool.
//!
//! Every float is printed in scientific notation with 15 significant
//! digits and no trailing-zero trimming, lines end with `\n`, and field
//! order is fixed, so re-running any command with identical inputs
//! reproduces its output byte for byte.

use crate::closed_form::{
    beta, magnitude_continuous_at, magnitude_discrete_at, IniMatrix, OrthogonalSubsets,
};
use crate::model::{NumerologyPair, MAX_NU};
use crate::sim::IniReport;
use crate::Error;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// 15 significant digits, scientific notation.
pub fn fmt_sci(x: f64) -> String {
    format!("{x:.14e}")
}

fn push_row(out: &mut String, cells: &[String]) {
    out.push_str(&cells.join(","));
    out.push('\n');
}

/// Axes of a magnitude-vs-distance curve family: one column per scaling
/// factor for the continuous form, plus discrete columns at a fixed sample
/// count when one is given.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub nu_values: Vec<u32>,
    pub d_start: f64,
    pub d_stop: f64,
    pub d_step: f64,
    pub discrete_n1: Option<usize>,
}

const MAX_GRID_POINTS: usize = 1 << 22;

/// Evenly spaced distance grid. Points are computed as start + i * step
/// rather than accumulated, so integer crossings land exactly on the grid
/// whenever start and step align with them.
pub fn d_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, Error> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InconsistentConfig(format!(
            "grid step {step} must be positive"
        )));
    }
    if !start.is_finite() || !stop.is_finite() || start >= stop {
        return Err(Error::InconsistentConfig(format!(
            "grid range [{start}, {stop}] must be increasing"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() + 1.0;
    if count.is_nan() || count < 1.0 || count > MAX_GRID_POINTS as f64 {
        return Err(Error::InconsistentConfig(format!(
            "grid of {count} points exceeds the {MAX_GRID_POINTS}-point cap"
        )));
    }
    Ok((0..count as usize).map(|i| start + i as f64 * step).collect())
}

impl CurveSpec {
    fn validate(&self) -> Result<Vec<f64>, Error> {
        if self.nu_values.is_empty() {
            return Err(Error::InconsistentConfig(
                "curve needs at least one scaling factor".into(),
            ));
        }
        for &nu in &self.nu_values {
            if !(2..=MAX_NU).contains(&nu) || !nu.is_power_of_two() {
                return Err(Error::RatioNotPowerOfTwo { ratio: nu as f64 });
            }
        }
        let grid = d_grid(self.d_start, self.d_stop, self.d_step)?;
        if let Some(n1) = self.discrete_n1 {
            let max_abs = grid.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
            if n1 == 0 || max_abs >= n1 as f64 {
                return Err(Error::Domain(format!(
                    "distance range reaches |d| = {max_abs}, outside (-{n1}, {n1})"
                )));
            }
        }
        Ok(grid)
    }
}

/// Build the magnitude-curve CSV: column `d`, then `nu=<v>_continuous` per
/// scaling factor, then `nu=<v>_discrete` when a sample count is set.
pub fn magnitude_curve_csv(spec: &CurveSpec) -> Result<String, Error> {
    let grid = spec.validate()?;
    let mut out = String::new();

    let mut header = vec!["d".to_string()];
    for &nu in &spec.nu_values {
        header.push(format!("nu={nu}_continuous"));
    }
    if spec.discrete_n1.is_some() {
        for &nu in &spec.nu_values {
            header.push(format!("nu={nu}_discrete"));
        }
    }
    push_row(&mut out, &header);

    for &d in &grid {
        let mut row = vec![fmt_sci(d)];
        for &nu in &spec.nu_values {
            row.push(fmt_sci(magnitude_continuous_at(nu, d)));
        }
        if let Some(n1) = spec.discrete_n1 {
            for &nu in &spec.nu_values {
                row.push(fmt_sci(magnitude_discrete_at(nu, n1, d)?));
            }
        }
        push_row(&mut out, &row);
    }
    Ok(out)
}

/// Write the magnitude-curve CSV to `out`.
pub fn emit_magnitude_curve(spec: &CurveSpec, out: &Path) -> Result<(), Error> {
    let csv = magnitude_curve_csv(spec)?;
    std::fs::write(out, csv)?;
    Ok(())
}

/// Build both discretization-factor tables: beta over the distance grid
/// (one column per sample count) and its transpose (one row per sample
/// count, one column per fixed distance).
pub fn beta_surface_csv(
    n1_values: &[usize],
    d_start: f64,
    d_stop: f64,
    d_step: f64,
) -> Result<(String, String), Error> {
    if n1_values.is_empty() {
        return Err(Error::InconsistentConfig(
            "beta surface needs at least one sample count".into(),
        ));
    }
    let grid = d_grid(d_start, d_stop, d_step)?;

    let mut by_d = String::new();
    let mut header = vec!["d".to_string()];
    for &n1 in n1_values {
        header.push(format!("n1={n1}"));
    }
    push_row(&mut by_d, &header);
    for &d in &grid {
        let mut row = vec![fmt_sci(d)];
        for &n1 in n1_values {
            row.push(fmt_sci(beta(d, n1)?));
        }
        push_row(&mut by_d, &row);
    }

    let mut by_n1 = String::new();
    let mut header = vec!["n1".to_string()];
    for &d in &grid {
        header.push(format!("d={d}"));
    }
    push_row(&mut by_n1, &header);
    for &n1 in n1_values {
        let mut row = vec![n1.to_string()];
        for &d in &grid {
            row.push(fmt_sci(beta(d, n1)?));
        }
        push_row(&mut by_n1, &row);
    }

    Ok((by_d, by_n1))
}

/// Companion path for the transposed beta table: `<stem>_by_n1.<ext>`.
pub fn beta_companion_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "beta".to_string());
    let name = match out.extension() {
        Some(ext) => format!("{stem}_by_n1.{}", ext.to_string_lossy()),
        None => format!("{stem}_by_n1"),
    };
    out.with_file_name(name)
}

/// Write the beta-vs-distance table to `out` and the transposed table to
/// the companion path, which is returned.
pub fn emit_beta_surface(
    n1_values: &[usize],
    d_start: f64,
    d_stop: f64,
    d_step: f64,
    out: &Path,
) -> Result<PathBuf, Error> {
    let (by_d, by_n1) = beta_surface_csv(n1_values, d_start, d_stop, d_step)?;
    std::fs::write(out, by_d)?;
    let companion = beta_companion_path(out);
    std::fs::write(&companion, by_n1)?;
    Ok(companion)
}

/// Magnitude table CSV: first column the row (wide) index, one column per
/// narrow index.
pub fn matrix_magnitude_csv(matrix: &IniMatrix) -> String {
    let mut out = String::new();
    let mut header = vec!["m".to_string()];
    for n in 0..matrix.cols() {
        header.push(format!("n={n}"));
    }
    push_row(&mut out, &header);
    for m in 0..matrix.rows() {
        let mut row = vec![m.to_string()];
        for n in 0..matrix.cols() {
            row.push(fmt_sci(matrix.get(m, n).magnitude));
        }
        push_row(&mut out, &row);
    }
    out
}

/// Phase table CSV (radians), same shape as the magnitude table.
pub fn matrix_phase_csv(matrix: &IniMatrix) -> String {
    let mut out = String::new();
    let mut header = vec!["m".to_string()];
    for n in 0..matrix.cols() {
        header.push(format!("n={n}"));
    }
    push_row(&mut out, &header);
    for m in 0..matrix.rows() {
        let mut row = vec![m.to_string()];
        for n in 0..matrix.cols() {
            row.push(fmt_sci(matrix.get(m, n).value.arg()));
        }
        push_row(&mut out, &row);
    }
    out
}

/// Companion path for the phase table: `<stem>_phase.<ext>`.
pub fn matrix_phase_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "matrix".to_string());
    let name = match out.extension() {
        Some(ext) => format!("{stem}_phase.{}", ext.to_string_lossy()),
        None => format!("{stem}_phase"),
    };
    out.with_file_name(name)
}

/// Pair summary as a JSON object.
pub fn pair_json(pair: &NumerologyPair) -> String {
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"bandwidth_hz\": {},", fmt_sci(pair.bandwidth_hz));
    let _ = writeln!(
        s,
        "  \"delta_f1_hz\": {},",
        fmt_sci(pair.wide.subcarrier_spacing_hz)
    );
    let _ = writeln!(
        s,
        "  \"delta_f2_hz\": {},",
        fmt_sci(pair.narrow.subcarrier_spacing_hz)
    );
    let _ = writeln!(s, "  \"t1_s\": {},", fmt_sci(pair.wide.symbol_duration_s));
    let _ = writeln!(s, "  \"t2_s\": {},", fmt_sci(pair.narrow.symbol_duration_s));
    let _ = writeln!(s, "  \"n1\": {},", pair.n_wide());
    let _ = writeln!(s, "  \"n2\": {},", pair.n_narrow());
    let _ = writeln!(s, "  \"nu\": {},", pair.nu);
    let _ = writeln!(
        s,
        "  \"sampling_duration_s\": {}",
        fmt_sci(pair.sampling_duration_s)
    );
    s.push_str("}\n");
    s
}

/// One inner product as a JSON object with fields re, im, magnitude, d.
pub fn inner_product_json(value: num_complex::Complex64, magnitude: f64, d: f64) -> String {
    format!(
        "{{\n  \"re\": {},\n  \"im\": {},\n  \"magnitude\": {},\n  \"d\": {}\n}}\n",
        fmt_sci(value.re),
        fmt_sci(value.im),
        fmt_sci(magnitude),
        fmt_sci(d)
    )
}

/// Orthogonal subsets with co-location flags as JSON.
pub fn subsets_json(pair: &NumerologyPair, subsets: &OrthogonalSubsets) -> String {
    let list = |xs: &[usize]| {
        let cells: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
        format!("[{}]", cells.join(", "))
    };
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"nu\": {},", pair.nu);
    let _ = writeln!(s, "  \"n1\": {},", pair.n_wide());
    let _ = writeln!(s, "  \"n2\": {},", pair.n_narrow());
    let _ = writeln!(s, "  \"wide_only\": {},", list(&subsets.wide_only));
    let _ = writeln!(s, "  \"narrow_only\": {},", list(&subsets.narrow_only));
    s.push_str("  \"mixed\": {\n");
    let _ = writeln!(s, "    \"wide\": {},", list(&subsets.mixed.wide));
    s.push_str("    \"narrow\": [\n");
    for (i, member) in subsets.mixed.narrow.iter().enumerate() {
        let colocated = match member.co_located_with {
            Some(m) => m.to_string(),
            None => "null".to_string(),
        };
        let comma = if i + 1 < subsets.mixed.narrow.len() { "," } else { "" };
        let _ = writeln!(
            s,
            "      {{\"n\": {}, \"co_located_with\": {}}}{}",
            member.n, colocated, comma
        );
    }
    s.push_str("    ]\n");
    s.push_str("  },\n");
    let _ = writeln!(
        s,
        "  \"max_cross_magnitude\": {}",
        fmt_sci(subsets.max_cross_magnitude)
    );
    s.push_str("}\n");
    s
}

/// Experiment report in the fixed wire schema:
/// config, per_subcarrier rows, max_prediction_error, seed.
pub fn ini_report_json(report: &IniReport) -> String {
    let pair = &report.config.pair;
    let mut s = String::new();
    s.push_str("{\n");
    s.push_str("  \"config\": {\n");
    let _ = writeln!(s, "    \"bandwidth_hz\": {},", fmt_sci(pair.bandwidth_hz));
    let _ = writeln!(
        s,
        "    \"delta_f1_hz\": {},",
        fmt_sci(pair.wide.subcarrier_spacing_hz)
    );
    let _ = writeln!(
        s,
        "    \"delta_f2_hz\": {},",
        fmt_sci(pair.narrow.subcarrier_spacing_hz)
    );
    let _ = writeln!(s, "    \"nu\": {},", pair.nu);
    let _ = writeln!(s, "    \"n1\": {},", pair.n_wide());
    let _ = writeln!(s, "    \"n2\": {},", pair.n_narrow());
    let _ = writeln!(
        s,
        "    \"num_wide_symbols\": {},",
        pair.nu as usize * report.config.num_narrow_symbols
    );
    let _ = writeln!(
        s,
        "    \"num_narrow_symbols\": {},",
        report.config.num_narrow_symbols
    );
    let _ = writeln!(
        s,
        "    \"constellation\": \"{}\",",
        report.config.constellation.name()
    );
    let _ = writeln!(s, "    \"rng\": \"splitmix64\",");
    match &report.config.narrow_active {
        None => {
            let _ = writeln!(s, "    \"narrow_active\": null");
        }
        Some(active) => {
            let cells: Vec<String> = active.iter().map(|n| n.to_string()).collect();
            let _ = writeln!(s, "    \"narrow_active\": [{}]", cells.join(", "));
        }
    }
    s.push_str("  },\n");
    s.push_str("  \"per_subcarrier\": [\n");
    for (i, row) in report.per_subcarrier.iter().enumerate() {
        let comma = if i + 1 < report.per_subcarrier.len() { "," } else { "" };
        let _ = writeln!(
            s,
            "    {{\"numerology\": {}, \"m\": {}, \"predicted_power\": {}, \
             \"measured_power\": {}}}{}",
            row.numerology_index,
            row.subcarrier,
            fmt_sci(row.predicted_power),
            fmt_sci(row.measured_power),
            comma
        );
    }
    s.push_str("  ],\n");
    let _ = writeln!(
        s,
        "  \"max_prediction_error\": {},",
        fmt_sci(report.max_prediction_error)
    );
    let _ = writeln!(s, "  \"seed\": {}", report.config.seed);
    s.push_str("}\n");
    s
}
