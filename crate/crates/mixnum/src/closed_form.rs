//! Reduced-form inner products between subcarriers of two numerologies.
//!
//! For a wide subcarrier m and narrow subcarrier n separated by the
//! relative distance d = m - n/nu, the continuous-time inner product is
//!
//! ```text
//! rho = sqrt(1/nu) * exp(-j pi d) * sinc(d)
//! ```
//!
//! and its sampled counterpart, with N1 samples per wide symbol, is
//!
//! ```text
//! rho_bar = sqrt(1/nu) * exp(-j pi (N1-1)/N1 d) * sin(pi d) / (N1 sin(pi d / N1))
//! ```
//!
//! The Dirichlet-kernel ratio above is the numerically stable equivalent of
//! sinc(d) / sinc(d / N1); the two magnitudes differ exactly by the
//! discretization factor beta = 1 / |sinc(d / N1)|.
//!
//! Sign convention: the inner product is conjugate-linear in its first
//! argument throughout, which fixes the phase signs shown above. The
//! brute-force oracles in [`crate::oracle`] validate them.

use crate::model::NumerologyPair;
use crate::numerics::sinc;
use crate::Error;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Cross-numerology magnitudes below this are certified orthogonal.
pub const ORTHOGONALITY_EPS: f64 = 1e-12;

/// Default cap on the number of entries a tabulated matrix may hold.
pub const DEFAULT_MATRIX_CAP: u64 = 1 << 24;

/// Which closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoKind {
    Continuous,
    Discrete { n1: usize },
    OracleQuadrature,
    OracleSoe,
}

/// Direction of the correlation: which numerology's subcarrier supplies the
/// conjugated (receiving) side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Wide receiver correlating against a narrow subcarrier.
    WideFromNarrow,
    /// Narrow receiver correlating against a wide subcarrier.
    NarrowFromWide,
}

/// A complex correlation coefficient between two mixed-numerology
/// subcarriers, with the relative distance it was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerProduct {
    pub value: Complex64,
    pub magnitude: f64,
    pub d: f64,
    pub kind: RhoKind,
    pub direction: Direction,
}

/// Relative distance between wide subcarrier m and narrow subcarrier n:
/// the separation of their center frequencies normalized by the wide
/// spacing, d = m - n/nu. Exact in floating point for power-of-two nu.
pub fn relative_distance(m: usize, n: usize, nu: u32) -> f64 {
    debug_assert!(nu >= 2);
    m as f64 - n as f64 / nu as f64
}

fn check_indices(pair: &NumerologyPair, m: usize, n: usize) -> Result<(), Error> {
    if m >= pair.n_wide() {
        return Err(Error::IndexOutOfRange {
            index: m,
            len: pair.n_wide(),
        });
    }
    if n >= pair.n_narrow() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: pair.n_narrow(),
        });
    }
    Ok(())
}

/// Continuous-time inner product value at relative distance `d`.
///
/// Total over all real d. Integer distances are exact zero crossings of the
/// sinc envelope (except d = 0, the co-located peak).
fn rho_continuous_value(nu: u32, d: f64) -> Complex64 {
    let peak = (1.0 / nu as f64).sqrt();
    if d == 0.0 {
        return Complex64::new(peak, 0.0);
    }
    if d.fract() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let angle = -PI * d;
    peak * sinc(d) * Complex64::new(angle.cos(), angle.sin())
}

/// Discrete-time inner product value at relative distance `d` with N1
/// samples per wide symbol.
///
/// Total over all real d: d = 0 is the co-located peak, nonzero integer d
/// with d/N1 fractional is an exact zero crossing, and d a nonzero integer
/// multiple of N1 is the aliasing limit where every summand of the
/// underlying sum equals 1/sqrt(N1 N2), giving the peak value back.
fn rho_discrete_value(nu: u32, n1: usize, d: f64) -> Complex64 {
    let peak = (1.0 / nu as f64).sqrt();
    if d == 0.0 {
        return Complex64::new(peak, 0.0);
    }
    let n1f = n1 as f64;
    if d.fract() == 0.0 {
        if (d / n1f).fract() == 0.0 {
            return Complex64::new(peak, 0.0);
        }
        return Complex64::new(0.0, 0.0);
    }
    let kernel = (PI * d).sin() / (n1f * (PI * d / n1f).sin());
    let angle = -PI * (n1f - 1.0) / n1f * d;
    peak * kernel * Complex64::new(angle.cos(), angle.sin())
}

fn wrap(value: Complex64, d: f64, kind: RhoKind, direction: Direction) -> InnerProduct {
    InnerProduct {
        value,
        magnitude: value.norm(),
        d,
        kind,
        direction,
    }
}

/// Reduced-form continuous inner product between wide subcarrier m and
/// narrow subcarrier n (wide receiver).
pub fn rho_continuous(pair: &NumerologyPair, m: usize, n: usize) -> Result<InnerProduct, Error> {
    check_indices(pair, m, n)?;
    let d = relative_distance(m, n, pair.nu);
    Ok(wrap(
        rho_continuous_value(pair.nu, d),
        d,
        RhoKind::Continuous,
        Direction::WideFromNarrow,
    ))
}

/// Reduced-form discrete inner product between wide subcarrier m and narrow
/// subcarrier n (wide receiver), over N1 samples.
pub fn rho_discrete(pair: &NumerologyPair, m: usize, n: usize) -> Result<InnerProduct, Error> {
    check_indices(pair, m, n)?;
    let d = relative_distance(m, n, pair.nu);
    Ok(wrap(
        rho_discrete_value(pair.nu, pair.n_wide(), d),
        d,
        RhoKind::Discrete { n1: pair.n_wide() },
        Direction::WideFromNarrow,
    ))
}

/// Directed variant: swapping the receiving side conjugates the value while
/// the relative distance, magnitude, and zero set are unchanged. For
/// `NarrowFromWide` the indices are given receiver-first, i.e. (n, m).
pub fn rho_directed(
    pair: &NumerologyPair,
    mode: RhoMode,
    direction: Direction,
    first: usize,
    second: usize,
) -> Result<InnerProduct, Error> {
    let (m, n) = match direction {
        Direction::WideFromNarrow => (first, second),
        Direction::NarrowFromWide => (second, first),
    };
    let forward = match mode {
        RhoMode::Continuous => rho_continuous(pair, m, n)?,
        RhoMode::Discrete => rho_discrete(pair, m, n)?,
    };
    Ok(match direction {
        Direction::WideFromNarrow => forward,
        Direction::NarrowFromWide => InnerProduct {
            value: forward.value.conj(),
            direction: Direction::NarrowFromWide,
            ..forward
        },
    })
}

/// Magnitude of the continuous inner product: sqrt(1/nu) |sinc(d)|.
pub fn magnitude_continuous(pair: &NumerologyPair, m: usize, n: usize) -> Result<f64, Error> {
    Ok(rho_continuous(pair, m, n)?.magnitude)
}

/// Magnitude of the discrete inner product:
/// sqrt(1/nu) |sinc(d)| / |sinc(d / N1)|.
pub fn magnitude_discrete(pair: &NumerologyPair, m: usize, n: usize) -> Result<f64, Error> {
    Ok(rho_discrete(pair, m, n)?.magnitude)
}

/// Continuous magnitude at an arbitrary real relative distance; the
/// analysis-mode form behind curve emission.
pub fn magnitude_continuous_at(nu: u32, d: f64) -> f64 {
    rho_continuous_value(nu, d).norm()
}

/// Discrete magnitude at an arbitrary real relative distance. Valid for
/// |d| < n1, the in-band distance range.
pub fn magnitude_discrete_at(nu: u32, n1: usize, d: f64) -> Result<f64, Error> {
    check_beta_domain(d, n1)?;
    Ok(rho_discrete_value(nu, n1, d).norm())
}

fn check_beta_domain(d: f64, n1: usize) -> Result<(), Error> {
    if n1 == 0 {
        return Err(Error::Domain("sample count must be at least 1".into()));
    }
    if !d.is_finite() || d.abs() >= n1 as f64 {
        return Err(Error::Domain(format!(
            "relative distance {d} outside (-{n1}, {n1})"
        )));
    }
    Ok(())
}

/// Discretization factor beta = 1 / |sinc(d / n1)|: the multiplicative
/// excess of the discrete magnitude over the continuous one. Always >= 1,
/// with equality exactly at d = 0.
pub fn beta(d: f64, n1: usize) -> Result<f64, Error> {
    check_beta_domain(d, n1)?;
    Ok(1.0 / sinc(d / n1 as f64).abs())
}

/// The percentage by which the discrete magnitude exceeds the continuous
/// one: (beta - 1) * 100.
pub fn discretization_error_pct(d: f64, n1: usize) -> Result<f64, Error> {
    Ok((beta(d, n1)? - 1.0) * 100.0)
}

/// Smallest power-of-two sample count whose discretization error at
/// relative distance `d` does not exceed `tol_pct` percent.
pub fn min_samples_for_tolerance(d: f64, tol_pct: f64) -> Result<usize, Error> {
    if tol_pct.is_nan() || tol_pct <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance {tol_pct}% must be strictly positive"
        )));
    }
    if !d.is_finite() {
        return Err(Error::Domain(format!("relative distance {d} not finite")));
    }
    let mut n1 = 1usize;
    loop {
        if (n1 as f64) > d.abs() && discretization_error_pct(d, n1)? <= tol_pct {
            return Ok(n1);
        }
        n1 = n1.checked_mul(2).ok_or_else(|| {
            Error::Domain(format!(
                "no representable sample count meets {tol_pct}% at d = {d}"
            ))
        })?;
    }
}

/// Orthogonality of wide subcarrier m and narrow subcarrier n: true exactly
/// when the relative distance is a nonzero integer, i.e. n is a multiple of
/// nu and the pair is not co-located (m != n/nu). Co-located pairs have
/// |rho| = sqrt(1/nu) and are never orthogonal.
pub fn is_orthogonal(m: usize, n: usize, nu: u32) -> bool {
    debug_assert!(nu >= 2);
    let nu = nu as usize;
    n.is_multiple_of(nu) && m != n / nu
}

/// A narrow subcarrier admitted to the mixed orthogonal subset, flagged with
/// the wide subcarrier sharing its center frequency when one exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NarrowMember {
    pub n: usize,
    pub co_located_with: Option<usize>,
}

/// The cross-numerology subset: every wide subcarrier plus the narrow
/// subcarriers indexed by multiples of nu.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedSubset {
    pub wide: Vec<usize>,
    pub narrow: Vec<NarrowMember>,
}

/// The three orthogonal subsets of a two-numerology configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalSubsets {
    pub wide_only: Vec<usize>,
    pub narrow_only: Vec<usize>,
    pub mixed: MixedSubset,
    /// Largest cross-numerology magnitude observed while certifying the
    /// mixed subset (co-located pairs excluded), over both the continuous
    /// and discrete forms.
    pub max_cross_magnitude: f64,
}

/// Enumerate the orthogonal subsets and certify the mixed one by
/// exhaustively evaluating every non-co-located cross pair.
pub fn orthogonal_subsets(pair: &NumerologyPair) -> OrthogonalSubsets {
    let nu = pair.nu as usize;
    let wide_only: Vec<usize> = (0..pair.n_wide()).collect();
    let narrow_only: Vec<usize> = (0..pair.n_narrow()).collect();

    let narrow_members: Vec<NarrowMember> = (0..pair.n_narrow())
        .filter(|n| n.is_multiple_of(nu))
        .map(|n| {
            let partner = n / nu;
            NarrowMember {
                n,
                co_located_with: (partner < pair.n_wide()).then_some(partner),
            }
        })
        .collect();

    let mut max_cross: f64 = 0.0;
    for &m in &wide_only {
        for member in &narrow_members {
            if member.co_located_with == Some(m) {
                continue;
            }
            let cont = magnitude_continuous(pair, m, member.n).expect("indices in range");
            let disc = magnitude_discrete(pair, m, member.n).expect("indices in range");
            max_cross = max_cross.max(cont).max(disc);
        }
    }
    assert!(
        max_cross < ORTHOGONALITY_EPS,
        "mixed subset failed certification: residual {max_cross}"
    );

    OrthogonalSubsets {
        wide_only,
        narrow_only,
        mixed: MixedSubset {
            wide: (0..pair.n_wide()).collect(),
            narrow: narrow_members,
        },
        max_cross_magnitude: max_cross,
    }
}

/// Which reduced form a tabulation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoMode {
    Continuous,
    Discrete,
}

/// A full cross-numerology inner-product table.
///
/// For `WideFromNarrow` the table is N1 x N2 with rows indexed by the wide
/// subcarrier; `NarrowFromWide` is its conjugate transpose, N2 x N1.
#[derive(Debug, Clone)]
pub struct IniMatrix {
    pub mode: RhoMode,
    pub direction: Direction,
    rows: usize,
    cols: usize,
    entries: Vec<InnerProduct>,
}

impl IniMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &InnerProduct {
        &self.entries[row * self.cols + col]
    }

    /// Total squared magnitude per row: the interference power a unit
    /// symbol on every column subcarrier deposits on each row subcarrier.
    pub fn row_power(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).magnitude.powi(2)).sum())
            .collect()
    }

    /// Total squared magnitude per column.
    pub fn col_power(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c).magnitude.powi(2)).sum())
            .collect()
    }
}

/// Tabulate the wide-receiver inner products over all (m, n) with the
/// default size cap.
pub fn ini_matrix(pair: &NumerologyPair, mode: RhoMode) -> Result<IniMatrix, Error> {
    ini_matrix_directed(pair, mode, Direction::WideFromNarrow, DEFAULT_MATRIX_CAP)
}

/// Tabulate in either direction with an explicit entry cap.
pub fn ini_matrix_directed(
    pair: &NumerologyPair,
    mode: RhoMode,
    direction: Direction,
    cap: u64,
) -> Result<IniMatrix, Error> {
    let requested = pair.n_wide() as u64 * pair.n_narrow() as u64;
    if requested > cap {
        return Err(Error::CapExceeded { requested, cap });
    }
    let (rows, cols) = match direction {
        Direction::WideFromNarrow => (pair.n_wide(), pair.n_narrow()),
        Direction::NarrowFromWide => (pair.n_narrow(), pair.n_wide()),
    };
    let mut entries = Vec::with_capacity(rows * cols);
    for row in 0..rows {
        for col in 0..cols {
            entries.push(rho_directed(pair, mode, direction, row, col)?);
        }
    }
    Ok(IniMatrix {
        mode,
        direction,
        rows,
        cols,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NumerologyPair;

    fn pair(nu: u32, n1: usize) -> NumerologyPair {
        NumerologyPair::from_dimensionless(nu, n1).unwrap()
    }

    #[test]
    fn relative_distance_examples() {
        assert_eq!(relative_distance(1, 1, 2), 0.5);
        assert_eq!(relative_distance(1, 2, 2), 0.0);
        assert_eq!(relative_distance(0, 3, 4), -0.75);
    }

    #[test]
    fn rho_continuous_colocated_peak() {
        let p = pair(2, 8);
        let rho = rho_continuous(&p, 1, 2).unwrap();
        assert_eq!(rho.d, 0.0);
        assert!((rho.value.re - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(rho.value.im, 0.0);
        #[allow(clippy::approx_constant)] // frozen curve anchor
        let anchor = 0.70711;
        assert!((rho.magnitude - anchor).abs() < 1e-5);
    }

    #[test]
    fn rho_continuous_half_distance_is_negative_imaginary() {
        let p = pair(2, 8);
        let rho = rho_continuous(&p, 1, 1).unwrap();
        assert_eq!(rho.d, 0.5);
        assert!(rho.value.re.abs() < 1e-16);
        assert!((rho.value.im + 0.45016).abs() < 1e-5);
        assert!((rho.magnitude - 0.45016).abs() < 1e-5);
    }

    #[test]
    fn rho_continuous_integer_distance_is_exactly_zero() {
        let p = pair(2, 8);
        let rho = rho_continuous(&p, 2, 2).unwrap();
        assert_eq!(rho.d, 1.0);
        assert_eq!(rho.value, Complex64::new(0.0, 0.0));
        assert_eq!(rho.magnitude, 0.0);
    }

    #[test]
    fn rho_discrete_colocated_peak() {
        let p = pair(2, 8);
        let rho = rho_discrete(&p, 1, 2).unwrap();
        assert!((rho.value.re - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(rho.value.im, 0.0);
    }

    #[test]
    fn rho_discrete_half_distance_magnitude() {
        let p = pair(2, 8);
        let rho = rho_discrete(&p, 1, 1).unwrap();
        assert!((rho.magnitude - 0.45307).abs() < 1e-4);
        // Exceeds the continuous magnitude by beta(0.5, 8).
        let b = beta(0.5, 8).unwrap();
        let cont = magnitude_continuous(&p, 1, 1).unwrap();
        assert!((rho.magnitude - cont * b).abs() < 1e-12);
    }

    #[test]
    fn rho_discrete_integer_distance_is_exactly_zero() {
        let p = pair(2, 8);
        let rho = rho_discrete(&p, 2, 2).unwrap();
        assert_eq!(rho.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rho_rejects_out_of_range_indices() {
        let p = pair(2, 8);
        assert!(rho_continuous(&p, 8, 0).is_err());
        assert!(rho_discrete(&p, 0, 16).is_err());
    }

    #[test]
    fn aliasing_limit_returns_peak() {
        // Unreachable from validated indices, but the evaluator is total:
        // d a nonzero multiple of N1 reproduces the co-located sum.
        let v = rho_discrete_value(2, 8, 8.0);
        assert_eq!(v, Complex64::new(0.5f64.sqrt(), 0.0));
        let v = rho_discrete_value(2, 8, -16.0);
        assert_eq!(v, Complex64::new(0.5f64.sqrt(), 0.0));
    }

    #[test]
    fn magnitude_examples() {
        let p4 = pair(4, 8);
        let mag = magnitude_continuous(&p4, 0, 1).unwrap();
        assert!((mag - 0.45016).abs() < 1e-4);

        let p8 = pair(8, 8);
        let mag = magnitude_continuous(&p8, 0, 0).unwrap();
        assert!((mag - 1.0 / 8f64.sqrt()).abs() < 1e-15);

        // Even narrow indices at nonzero distance are exact zeros for nu=2.
        let p2 = pair(2, 8);
        for m in 0..p2.n_wide() {
            for n in (0..p2.n_narrow()).step_by(2) {
                if m != n / 2 {
                    assert_eq!(magnitude_continuous(&p2, m, n).unwrap(), 0.0);
                    assert_eq!(magnitude_discrete(&p2, m, n).unwrap(), 0.0);
                }
            }
        }
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(0.0, 8).unwrap(), 1.0);
        assert_eq!(beta(0.0, 1024).unwrap(), 1.0);
        assert!((beta(3.5, 8).unwrap() - 1.4014).abs() < 1e-3);
        assert!((beta(2.5, 64).unwrap() - 1.00251).abs() < 1e-4);
    }

    #[test]
    fn beta_rejects_out_of_domain_distance() {
        assert!(matches!(beta(8.0, 8), Err(Error::Domain(_))));
        assert!(matches!(beta(-9.5, 8), Err(Error::Domain(_))));
        assert!(matches!(beta(0.5, 0), Err(Error::Domain(_))));
        assert!(beta(7.999, 8).is_ok());
    }

    #[test]
    fn beta_is_at_least_one() {
        for n1 in [1usize, 2, 8, 64, 1024] {
            let mut d = -(n1 as f64) + 0.25;
            while d < n1 as f64 {
                let b = beta(d, n1).unwrap();
                if d == 0.0 {
                    assert_eq!(b, 1.0);
                } else {
                    assert!(b > 1.0, "beta({d}, {n1}) = {b}");
                }
                d += 0.25;
            }
        }
    }

    #[test]
    fn discretization_error_examples() {
        assert!((discretization_error_pct(0.5, 8).unwrap() - 0.646).abs() < 0.01);
        assert_eq!(discretization_error_pct(0.0, 16).unwrap(), 0.0);
        assert_eq!(min_samples_for_tolerance(2.5, 0.3).unwrap(), 64);
    }

    #[test]
    fn min_samples_requires_positive_tolerance() {
        assert!(min_samples_for_tolerance(1.0, 0.0).is_err());
        assert!(min_samples_for_tolerance(1.0, -2.0).is_err());
    }

    #[test]
    fn min_samples_never_returns_aliased_count() {
        // Even for generous tolerances the result must satisfy |d| < n1.
        let n1 = min_samples_for_tolerance(5.3, 1e6).unwrap();
        assert!(n1 as f64 > 5.3);
        assert!(n1.is_power_of_two());
    }

    #[test]
    fn orthogonality_examples() {
        assert!(is_orthogonal(3, 4, 2));
        assert!(!is_orthogonal(3, 5, 2));
        assert!(!is_orthogonal(2, 4, 2));
    }

    #[test]
    fn subsets_for_nu2() {
        let p = pair(2, 4);
        let subsets = orthogonal_subsets(&p);
        assert_eq!(subsets.wide_only, vec![0, 1, 2, 3]);
        assert_eq!(subsets.narrow_only.len(), 8);
        let narrows: Vec<usize> = subsets.mixed.narrow.iter().map(|m| m.n).collect();
        assert_eq!(narrows, vec![0, 2, 4, 6]);
        assert!(subsets.max_cross_magnitude < ORTHOGONALITY_EPS);
    }

    #[test]
    fn subsets_for_nu4() {
        let p = pair(4, 4);
        let subsets = orthogonal_subsets(&p);
        let narrows: Vec<usize> = subsets.mixed.narrow.iter().map(|m| m.n).collect();
        assert_eq!(narrows, vec![0, 4, 8, 12]);
    }

    #[test]
    fn subsets_smallest_instance_flags_colocation() {
        let p = pair(2, 1);
        let subsets = orthogonal_subsets(&p);
        assert_eq!(subsets.mixed.narrow.len(), 1);
        assert_eq!(subsets.mixed.narrow[0].n, 0);
        assert_eq!(subsets.mixed.narrow[0].co_located_with, Some(0));
    }

    #[test]
    fn every_mixed_narrow_member_is_colocated_in_full_band() {
        // With both numerologies spanning the whole band, each multiple of
        // nu sits on some wide center.
        let p = pair(2, 8);
        let subsets = orthogonal_subsets(&p);
        for member in &subsets.mixed.narrow {
            assert_eq!(member.co_located_with, Some(member.n / 2));
        }
    }

    #[test]
    fn matrix_zeros_match_predicate() {
        let p = pair(2, 2);
        let matrix = ini_matrix(&p, RhoMode::Continuous).unwrap();
        assert_eq!(matrix.rows(), 2);
        assert_eq!(matrix.cols(), 4);
        for m in 0..2 {
            for n in 0..4 {
                let entry = matrix.get(m, n);
                if is_orthogonal(m, n, 2) {
                    assert_eq!(entry.magnitude, 0.0, "m={m} n={n}");
                } else {
                    assert!(entry.magnitude > ORTHOGONALITY_EPS, "m={m} n={n}");
                }
                if entry.d == 0.0 {
                    assert!((entry.magnitude - 0.5f64.sqrt()).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn matrix_reverse_direction_is_conjugate_transpose() {
        let p = pair(2, 4);
        for mode in [RhoMode::Continuous, RhoMode::Discrete] {
            let fwd = ini_matrix(&p, mode).unwrap();
            let rev =
                ini_matrix_directed(&p, mode, Direction::NarrowFromWide, DEFAULT_MATRIX_CAP)
                    .unwrap();
            assert_eq!(rev.rows(), fwd.cols());
            assert_eq!(rev.cols(), fwd.rows());
            for m in 0..fwd.rows() {
                for n in 0..fwd.cols() {
                    assert_eq!(rev.get(n, m).value, fwd.get(m, n).value.conj());
                }
            }
        }
    }

    #[test]
    fn matrix_respects_entry_cap() {
        let p = pair(2, 64);
        let err =
            ini_matrix_directed(&p, RhoMode::Discrete, Direction::WideFromNarrow, 100).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn matrix_power_sums_are_row_and_column_totals() {
        let p = pair(2, 4);
        let matrix = ini_matrix(&p, RhoMode::Discrete).unwrap();
        let rows = matrix.row_power();
        let direct: f64 = (0..matrix.cols())
            .map(|n| matrix.get(1, n).magnitude.powi(2))
            .sum();
        assert!((rows[1] - direct).abs() < 1e-15);
        let cols = matrix.col_power();
        assert_eq!(cols.len(), 8);
    }

    #[test]
    fn magnitude_scales_as_inverse_square_root_of_nu() {
        // Same d = 0.5 at nu = 2, 4, 8: ratios 1 : 1/sqrt(2) : 1/2.
        let m2 = magnitude_continuous(&pair(2, 8), 1, 1).unwrap();
        let m4 = magnitude_continuous(&pair(4, 8), 1, 2).unwrap();
        let m8 = magnitude_continuous(&pair(8, 8), 1, 4).unwrap();
        assert!((m4 / m2 - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((m8 / m2 - 0.5).abs() < 1e-12);
    }
}
