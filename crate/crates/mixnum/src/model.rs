//! Numerology parameter sets and the paired-numerology configuration.
//!
//! Two numerologies sharing one bandwidth are tied by an integer scaling
//! factor: the wider subcarrier spacing is a power-of-two multiple of the
//! narrower one, and the symbol durations scale inversely. Construction
//! validates the whole relation once; every value type is immutable
//! afterwards and freely shareable across threads.

use crate::Error;

/// Largest accepted scaling factor. Bounds the relative-distance range and
/// keeps the float arithmetic on index ratios exact.
pub const MAX_NU: u32 = 1 << 10;

/// Largest accepted subcarrier count per numerology.
pub const MAX_SUBCARRIERS: u64 = 1 << 24;

/// One OFDM parameter set: subcarrier spacing, symbol duration, and the
/// number of subcarriers it places across the shared bandwidth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Numerology {
    /// 1 for the wide-spacing numerology, 2 for the narrow one.
    pub index: u8,
    pub subcarrier_spacing_hz: f64,
    pub symbol_duration_s: f64,
    pub num_subcarriers: usize,
}

impl Numerology {
    /// Duration of one sample when the symbol is represented by
    /// `num_subcarriers` samples.
    pub fn sample_duration_s(&self) -> f64 {
        self.symbol_duration_s / self.num_subcarriers as f64
    }
}

/// A validated two-numerology configuration over a common bandwidth.
///
/// Invariants established at construction:
/// * `wide.subcarrier_spacing_hz = nu * narrow.subcarrier_spacing_hz`
/// * `narrow.symbol_duration_s = nu * wide.symbol_duration_s`
/// * `narrow.num_subcarriers = nu * wide.num_subcarriers`
/// * both subcarrier counts are powers of two
/// * `sampling_duration_s = wide.symbol_duration_s / wide.num_subcarriers`
///   and equals the same ratio on the narrow side
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumerologyPair {
    pub wide: Numerology,
    pub narrow: Numerology,
    pub nu: u32,
    pub bandwidth_hz: f64,
    pub sampling_duration_s: f64,
}

fn check_positive(what: &'static str, value: f64) -> Result<(), Error> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::NonPositive { what, value });
    }
    Ok(())
}

/// Exact integer quotient of two floats, or None when the division does not
/// land on an integer.
fn exact_integer_ratio(num: f64, den: f64) -> Option<u64> {
    let q = num / den;
    if q.fract() != 0.0 || q < 1.0 || q > u64::MAX as f64 {
        return None;
    }
    Some(q as u64)
}

impl NumerologyPair {
    /// Build and validate a pair from the shared bandwidth and the two
    /// subcarrier spacings (wide first).
    pub fn new(bandwidth_hz: f64, delta_f_wide: f64, delta_f_narrow: f64) -> Result<Self, Error> {
        check_positive("bandwidth_hz", bandwidth_hz)?;
        check_positive("delta_f_wide", delta_f_wide)?;
        check_positive("delta_f_narrow", delta_f_narrow)?;
        if delta_f_wide <= delta_f_narrow {
            return Err(Error::OrderViolation {
                delta_f_wide,
                delta_f_narrow,
            });
        }

        let nu = match exact_integer_ratio(delta_f_wide, delta_f_narrow) {
            Some(nu)
                if nu >= 2
                    && nu <= MAX_NU as u64
                    && nu.is_power_of_two()
                    // The spacing relation must hold exactly, not just the
                    // rounded ratio.
                    && delta_f_narrow * nu as f64 == delta_f_wide =>
            {
                nu as u32
            }
            _ => {
                return Err(Error::RatioNotPowerOfTwo {
                    ratio: delta_f_wide / delta_f_narrow,
                })
            }
        };

        let n_wide = Self::subcarrier_count(bandwidth_hz, delta_f_wide)?;
        let n_narrow = Self::subcarrier_count(bandwidth_hz, delta_f_narrow)?;
        debug_assert_eq!(n_narrow, nu as u64 * n_wide);

        let t_wide = 1.0 / delta_f_wide;
        let t_narrow = 1.0 / delta_f_narrow;
        let sampling_duration_s = t_wide / n_wide as f64;

        Ok(Self {
            wide: Numerology {
                index: 1,
                subcarrier_spacing_hz: delta_f_wide,
                symbol_duration_s: t_wide,
                num_subcarriers: n_wide as usize,
            },
            narrow: Numerology {
                index: 2,
                subcarrier_spacing_hz: delta_f_narrow,
                symbol_duration_s: t_narrow,
                num_subcarriers: n_narrow as usize,
            },
            nu,
            bandwidth_hz,
            sampling_duration_s,
        })
    }

    /// Build a pair from the dimensionless parameters alone, anchoring the
    /// narrow spacing at 15 kHz. All interference quantities depend only on
    /// (nu, n1, m, n), so the anchor is a presentation choice.
    pub fn from_dimensionless(nu: u32, n1: usize) -> Result<Self, Error> {
        const ANCHOR_NARROW_HZ: f64 = 15_000.0;
        if n1 == 0 || !(n1 as u64).is_power_of_two() {
            return Err(Error::SubcarrierCountNotPowerOfTwo { count: n1 as u64 });
        }
        let delta_f_wide = ANCHOR_NARROW_HZ * nu as f64;
        let bandwidth_hz = delta_f_wide * n1 as f64;
        Self::new(bandwidth_hz, delta_f_wide, ANCHOR_NARROW_HZ)
    }

    fn subcarrier_count(bandwidth_hz: f64, delta_f_hz: f64) -> Result<u64, Error> {
        let n = exact_integer_ratio(bandwidth_hz, delta_f_hz).ok_or(
            Error::NonIntegralSubcarrierCount {
                bandwidth_hz,
                delta_f_hz,
            },
        )?;
        if !n.is_power_of_two() || n > MAX_SUBCARRIERS {
            return Err(Error::SubcarrierCountNotPowerOfTwo { count: n });
        }
        Ok(n)
    }

    /// The scaling factor tying the two numerologies together. Equal to the
    /// spacing ratio, the inverse duration ratio, and the subcarrier-count
    /// ratio; all three are forced to agree at construction.
    pub fn scaling_factor(&self) -> u32 {
        self.nu
    }

    pub fn n_wide(&self) -> usize {
        self.wide.num_subcarriers
    }

    pub fn n_narrow(&self) -> usize {
        self.narrow.num_subcarriers
    }
}
