//! Independent brute-force computations of every inner product.
//!
//! Nothing here shares an evaluation path with the reduced forms in
//! [`crate::closed_form`]: the continuous inner product is obtained by
//! adaptive quadrature of the defining integral, and the discrete one by
//! direct compensated summation over samples. These routines certify the
//! reduced forms and supply frozen expected values for the test suite.

use crate::basis::dft_phasor;
use crate::closed_form::{relative_distance, Direction, InnerProduct, RhoKind};
use crate::model::NumerologyPair;
use crate::numerics::ComplexSum;
use crate::quad::integrate_adaptive;
use crate::Error;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Accepted tolerance range for the quadrature oracle.
pub const QUAD_TOL_MIN: f64 = 1e-13;
pub const QUAD_TOL_MAX: f64 = 1e-6;

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

/// Inner product of continuous subcarriers m (wide) and n (narrow) by
/// adaptive quadrature of conj(phi1_m(t)) * phi2_n(t) over [0, T1].
///
/// Real and imaginary parts are integrated separately as smooth real
/// functions, each to an estimated absolute error of at most `tol`.
pub fn rho_continuous_quadrature(
    pair: &NumerologyPair,
    m: usize,
    n: usize,
    tol: f64,
) -> Result<InnerProduct, Error> {
    check_indices(pair, m, n)?;
    if !(QUAD_TOL_MIN..=QUAD_TOL_MAX).contains(&tol) {
        return Err(Error::Domain(format!(
            "quadrature tolerance {tol} outside [{QUAD_TOL_MIN}, {QUAD_TOL_MAX}]"
        )));
    }

    let t1 = pair.wide.symbol_duration_s;
    let t2 = pair.narrow.symbol_duration_s;
    let scale = 1.0 / (t1 * t2).sqrt();
    // Beat frequency of the integrand in hertz.
    let freq = m as f64 * pair.wide.subcarrier_spacing_hz
        - n as f64 * pair.narrow.subcarrier_spacing_hz;
    let omega = -2.0 * PI * freq;

    // Seed the subdivision with roughly one panel per oscillation cycle.
    let cycles = (freq * t1).abs().ceil() as usize;
    let hint = cycles.max(1);

    let re = integrate_adaptive(|t| scale * (omega * t).cos(), 0.0, t1, tol, hint)?;
    let im = integrate_adaptive(|t| scale * (omega * t).sin(), 0.0, t1, tol, hint)?;

    let value = Complex64::new(re.value, im.value);
    Ok(InnerProduct {
        value,
        magnitude: value.norm(),
        d: relative_distance(m, n, pair.nu),
        kind: RhoKind::OracleQuadrature,
        direction: Direction::WideFromNarrow,
    })
}

/// Discrete inner product by direct summation of
/// `conj(phi1_m[l]) * phi2_n[l]` over l = 0..N1, with compensated
/// accumulation on both components.
pub fn rho_discrete_soe(pair: &NumerologyPair, m: usize, n: usize) -> Result<InnerProduct, Error> {
    check_indices(pair, m, n)?;
    let value = soe_sum(pair, m, n, 0);
    Ok(InnerProduct {
        value,
        magnitude: value.norm(),
        d: relative_distance(m, n, pair.nu),
        kind: RhoKind::OracleSoe,
        direction: Direction::WideFromNarrow,
    })
}

/// Same brute-force sum in the opposite direction:
/// `conj(phi2_n[l]) * phi1_m[l]`. Used to validate conjugate symmetry
/// without assuming it.
pub fn rho_discrete_soe_reversed(
    pair: &NumerologyPair,
    n: usize,
    m: usize,
) -> Result<InnerProduct, Error> {
    check_indices(pair, m, n)?;
    let n1 = pair.n_wide();
    let n2 = pair.n_narrow();
    let mut acc = ComplexSum::new();
    for l in 0..n1 {
        acc.add(dft_phasor(n, l, n2).conj() * dft_phasor(m, l, n1));
    }
    let value = acc.value();
    Ok(InnerProduct {
        value,
        magnitude: value.norm(),
        d: relative_distance(m, n, pair.nu),
        kind: RhoKind::OracleSoe,
        direction: Direction::NarrowFromWide,
    })
}

/// Inner product between a wide-numerology demodulation window and the q-th
/// segment of a narrow-numerology pulse:
/// `sum over l of conj(phi1_m[l]) * phi2_n[q*N1 + l]`.
pub fn segment_rho_soe(
    pair: &NumerologyPair,
    m: usize,
    n: usize,
    q: usize,
) -> Result<Complex64, Error> {
    check_indices(pair, m, n)?;
    if q >= pair.nu as usize {
        return Err(Error::IndexOutOfRange {
            index: q,
            len: pair.nu as usize,
        });
    }
    Ok(soe_sum(pair, m, n, q))
}

fn soe_sum(pair: &NumerologyPair, m: usize, n: usize, q: usize) -> Complex64 {
    let n1 = pair.n_wide();
    let n2 = pair.n_narrow();
    let offset = q * n1;
    let mut acc = ComplexSum::new();
    for l in 0..n1 {
        acc.add(dft_phasor(m, l, n1).conj() * dft_phasor(n, offset + l, n2));
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NumerologyPair;

    fn pair_nu2_n8() -> NumerologyPair {
        NumerologyPair::from_dimensionless(2, 8).unwrap()
    }

    #[test]
    fn quadrature_colocated_subcarriers() {
        // m = 1, n = 2 sit on the same center: constant-phase integrand.
        let p = pair_nu2_n8();
        let rho = rho_continuous_quadrature(&p, 1, 2, 1e-11).unwrap();
        assert!((rho.value.re - 0.5f64.sqrt()).abs() < 1e-11);
        assert!(rho.value.im.abs() < 1e-11);
    }

    #[test]
    fn quadrature_half_distance() {
        let p = pair_nu2_n8();
        let rho = rho_continuous_quadrature(&p, 1, 1, 1e-11).unwrap();
        assert!(rho.value.re.abs() < 1e-9);
        assert!((rho.value.im + 0.45016).abs() < 1e-4);
    }

    #[test]
    fn quadrature_integer_distance_is_a_zero_crossing() {
        let p = pair_nu2_n8();
        let rho = rho_continuous_quadrature(&p, 2, 2, 1e-11).unwrap();
        assert!(rho.magnitude < 1e-10);
    }

    #[test]
    fn quadrature_rejects_bad_tolerance() {
        let p = pair_nu2_n8();
        assert!(rho_continuous_quadrature(&p, 1, 1, 1e-14).is_err());
        assert!(rho_continuous_quadrature(&p, 1, 1, 1e-3).is_err());
    }

    #[test]
    fn quadrature_halving_tolerance_is_self_consistent() {
        let p = NumerologyPair::from_dimensionless(4, 16).unwrap();
        for (m, n) in [(1usize, 1usize), (3, 7), (9, 40), (15, 63)] {
            let mut tol = 1e-7;
            while tol >= 2e-13 {
                let coarse = rho_continuous_quadrature(&p, m, n, tol).unwrap();
                let fine = rho_continuous_quadrature(&p, m, n, tol / 2.0).unwrap();
                assert!(
                    (coarse.value - fine.value).norm() <= tol,
                    "m={m} n={n} tol={tol}"
                );
                tol /= 2.0;
            }
        }
    }

    #[test]
    fn soe_colocated_subcarriers() {
        let p = pair_nu2_n8();
        let rho = rho_discrete_soe(&p, 1, 2).unwrap();
        assert!((rho.value.re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(rho.value.im.abs() < 1e-15);
    }

    #[test]
    fn soe_half_distance_magnitude() {
        let p = pair_nu2_n8();
        let rho = rho_discrete_soe(&p, 1, 1).unwrap();
        assert!((rho.magnitude - 0.45307).abs() < 1e-4);
    }

    #[test]
    fn soe_integer_distance_vanishes() {
        // d = -2: orthogonal pair.
        let p = pair_nu2_n8();
        let rho = rho_discrete_soe(&p, 0, 4).unwrap();
        assert!(rho.magnitude < 1e-15);
    }

    #[test]
    fn soe_is_stable_under_order_reversal() {
        let p = NumerologyPair::from_dimensionless(8, 64).unwrap();
        let n1 = p.n_wide();
        let n2 = p.n_narrow();
        for (m, n) in [(0usize, 1usize), (5, 11), (63, 300), (32, 501)] {
            let forward = rho_discrete_soe(&p, m, n).unwrap().value;
            let mut acc = ComplexSum::new();
            for l in (0..n1).rev() {
                acc.add(dft_phasor(m, l, n1).conj() * dft_phasor(n, l, n2));
            }
            let reversed = acc.value();
            let ulp = |x: f64| {
                let next = f64::from_bits(x.abs().to_bits() + 1);
                next - x.abs()
            };
            assert!((forward.re - reversed.re).abs() <= ulp(forward.re.max(1e-300)));
            assert!((forward.im - reversed.im).abs() <= ulp(forward.im.max(1e-300)));
        }
    }

    #[test]
    fn segment_zero_offset_matches_plain_sum() {
        let p = pair_nu2_n8();
        for m in 0..p.n_wide() {
            for n in 0..p.n_narrow() {
                let seg = segment_rho_soe(&p, m, n, 0).unwrap();
                let plain = rho_discrete_soe(&p, m, n).unwrap().value;
                assert_eq!(seg, plain);
            }
        }
    }

    #[test]
    fn segment_offset_flips_sign_for_odd_narrow_index() {
        // q = 1, nu = 2, n = 1: segment phase exp(j pi) = -1.
        let p = pair_nu2_n8();
        let seg = segment_rho_soe(&p, 1, 1, 1).unwrap();
        let plain = rho_discrete_soe(&p, 1, 1).unwrap().value;
        assert!((seg + plain).norm() < 1e-12);
    }

    #[test]
    fn segment_magnitude_is_offset_invariant() {
        for nu in [2u32, 4] {
            for n1 in [4usize, 8, 16] {
                let p = NumerologyPair::from_dimensionless(nu, n1).unwrap();
                for m in 0..p.n_wide() {
                    for n in 0..p.n_narrow() {
                        let base = rho_discrete_soe(&p, m, n).unwrap().magnitude;
                        for q in 0..nu as usize {
                            let seg = segment_rho_soe(&p, m, n, q).unwrap();
                            assert!(
                                (seg.norm() - base).abs() < 1e-12,
                                "nu={nu} n1={n1} m={m} n={n} q={q}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn segment_phase_factor_is_a_root_of_unity() {
        // segment_rho(m, n, q) = exp(j 2 pi n q / nu) * rho(m, n), verified
        // purely against the brute-force sums.
        for nu in [2u32, 4] {
            for n1 in [4usize, 8, 16] {
                let p = NumerologyPair::from_dimensionless(nu, n1).unwrap();
                for m in 0..p.n_wide() {
                    for n in 0..p.n_narrow() {
                        let base = rho_discrete_soe(&p, m, n).unwrap().value;
                        for q in 0..nu as usize {
                            let seg = segment_rho_soe(&p, m, n, q).unwrap();
                            let angle =
                                2.0 * PI * ((n * q) % nu as usize) as f64 / nu as f64;
                            let phase = Complex64::new(angle.cos(), angle.sin());
                            assert!(
                                (seg - phase * base).norm() < 1e-12,
                                "nu={nu} n1={n1} m={m} n={n} q={q}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn segment_rejects_out_of_range_offset() {
        let p = pair_nu2_n8();
        assert!(matches!(
            segment_rho_soe(&p, 0, 0, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }
}
