//! The normalized rectangular-pulse subcarrier basis.
//!
//! A subcarrier is a frequency-shifted rectangular pulse, available in two
//! renderings: a continuous-time pulse with unit energy over the symbol
//! duration, and its sampled counterpart with unit energy over the sample
//! count. Subcarrier indices run from 0 (DC) to N-1 in both renderings.

use crate::model::Numerology;
use crate::numerics::unit_phasor;
use crate::Error;
use num_complex::Complex64;
use std::f64::consts::PI;

/// One subcarrier of one numerology.
#[derive(Debug, Clone, Copy)]
pub struct SubcarrierRef<'a> {
    pub numerology: &'a Numerology,
    pub m: usize,
}

impl<'a> SubcarrierRef<'a> {
    pub fn new(numerology: &'a Numerology, m: usize) -> Result<Self, Error> {
        if m >= numerology.num_subcarriers {
            return Err(Error::IndexOutOfRange {
                index: m,
                len: numerology.num_subcarriers,
            });
        }
        Ok(Self { numerology, m })
    }

    /// Continuous-time pulse value at time `t` (seconds):
    /// exp(j 2 pi m t / T) / sqrt(T) on [0, T], zero elsewhere.
    pub fn pulse_continuous(&self, t: f64) -> Complex64 {
        let period = self.numerology.symbol_duration_s;
        if !(0.0..=period).contains(&t) {
            return Complex64::new(0.0, 0.0);
        }
        let angle = 2.0 * PI * self.m as f64 * t / period;
        Complex64::new(angle.cos(), angle.sin()) / period.sqrt()
    }

    /// Discrete pulse value at sample `l`:
    /// exp(j 2 pi m l / N) / sqrt(N) for l in [0, N).
    ///
    /// Unlike the continuous pulse, samples outside the symbol have no
    /// defined value; callers handle segment offsets explicitly.
    pub fn pulse_discrete(&self, l: usize) -> Result<Complex64, Error> {
        let n = self.numerology.num_subcarriers;
        if l >= n {
            return Err(Error::IndexOutOfRange { index: l, len: n });
        }
        Ok(dft_phasor(self.m, l, n))
    }
}

/// exp(j 2 pi m l / N) / sqrt(N), with the angle reduced modulo N before
/// evaluation so large index products stay exact.
#[inline]
pub(crate) fn dft_phasor(m: usize, l: usize, n: usize) -> Complex64 {
    unit_phasor(m as u64 * l as u64, n as u64) / (n as f64).sqrt()
}
