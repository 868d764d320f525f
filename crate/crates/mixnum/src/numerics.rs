//! Small numerical kernels shared across the crate: the normalized sinc
//! function, unit phasors on exact rational angles, and compensated
//! (error-free-transformation) accumulation for real and complex sums.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Normalized sinc: sin(pi x) / (pi x), with sinc(0) = 1.
///
/// Near zero the ratio is replaced by a 4-term Taylor expansion in (pi x);
/// at |pi x| < 1e-4 the truncation error is below 1e-18, well under the
/// noise floor of the 0/0 form it avoids.
pub fn sinc(x: f64) -> f64 {
    let z = PI * x;
    if z.abs() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0
    } else {
        z.sin() / z
    }
}

/// exp(j 2 pi num / den) evaluated from the angle 2 pi ((num mod den) / den).
///
/// Reducing the integer ratio first keeps the argument of sin/cos in
/// [0, 2 pi), so products like m*l never lose precision at large indices.
pub fn unit_phasor(num: u64, den: u64) -> Complex64 {
    debug_assert!(den > 0);
    let angle = 2.0 * PI * ((num % den) as f64) / (den as f64);
    Complex64::new(angle.cos(), angle.sin())
}

/// Compensated scalar accumulator (Neumaier variant of Kahan summation).
///
/// Each `add` captures its rounding error exactly via a two-sum and folds it
/// into a running compensation term, so the final value is accurate to a few
/// ulps regardless of term count or ordering.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

/// Compensated accumulator for complex values (per-component Neumaier).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: Complex64) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_at_zero_is_one() {
        assert_eq!(sinc(0.0), 1.0);
    }

    #[test]
    fn sinc_matches_ratio_form_away_from_zero() {
        for &x in &[0.1, 0.5, 1.5, 3.25, -2.75] {
            let direct = (PI * x).sin() / (PI * x);
            assert!((sinc(x) - direct).abs() < 1e-15, "x = {x}");
        }
    }

    #[test]
    fn sinc_taylor_branch_agrees_with_ratio_form() {
        // Evaluate both formulas at the same point near the threshold.
        let x0 = 0.99e-4 / PI;
        let z = PI * x0;
        let z2 = z * z;
        let taylor = 1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0;
        let ratio = z.sin() / z;
        assert!((taylor - ratio).abs() < 1e-15);
        assert_eq!(sinc(x0), taylor);
    }

    #[test]
    fn sinc_half() {
        // sin(pi/2) / (pi/2) = 2/pi
        assert!((sinc(0.5) - 2.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn unit_phasor_reduces_large_arguments() {
        // (m*l) huge but congruent to 1 mod 8: same phasor as 1/8.
        let big = 8u64 * 1_000_000_007 + 1;
        let a = unit_phasor(big, 8);
        let b = unit_phasor(1, 8);
        assert_eq!(a, b);
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut acc = CompensatedSum::new();
        acc.add(1.0);
        acc.add(1e-16);
        acc.add(1e-16);
        acc.add(-1.0);
        assert_eq!(acc.value(), 2e-16);
    }

    #[test]
    fn compensated_sum_is_order_insensitive() {
        let terms: Vec<f64> = (0..1000)
            .map(|i| ((i * 31 + 7) % 97) as f64 * 1e-3 - 0.5)
            .collect();
        let fwd = CompensatedSum::sum_iter(terms.iter().copied());
        let rev = CompensatedSum::sum_iter(terms.iter().rev().copied());
        assert!((fwd - rev).abs() <= f64::EPSILON * fwd.abs().max(1.0));
    }
}
