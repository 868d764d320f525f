//! Randomized invariants over the valid configuration space.

use num_complex::Complex64;
use proptest::prelude::*;
use mixnum::closed_form::{
    beta, is_orthogonal, magnitude_continuous, magnitude_discrete, relative_distance,
    rho_discrete,
};
use mixnum::oracle::rho_discrete_soe;
use mixnum::sim::{demodulate, modulate, multiplex, SymbolGrid};
use mixnum::NumerologyPair;

fn arb_pair() -> impl Strategy<Value = NumerologyPair> {
    (1u32..=3, 2u32..=5).prop_map(|(mu, n1_exp)| {
        NumerologyPair::from_dimensionless(1 << mu, 1usize << n1_exp).unwrap()
    })
}

fn arb_pair_with_indices() -> impl Strategy<Value = (NumerologyPair, usize, usize)> {
    arb_pair().prop_flat_map(|pair| {
        let n1 = pair.n_wide();
        let n2 = pair.n_narrow();
        (Just(pair), 0..n1, 0..n2)
    })
}

proptest! {
    #[test]
    fn magnitude_never_exceeds_the_colocated_peak((pair, m, n) in arb_pair_with_indices()) {
        let peak = (1.0 / pair.nu as f64).sqrt();
        let d = relative_distance(m, n, pair.nu);
        for magnitude in [
            magnitude_continuous(&pair, m, n).unwrap(),
            magnitude_discrete(&pair, m, n).unwrap(),
        ] {
            prop_assert!(magnitude <= peak + 1e-15);
            if d == 0.0 {
                prop_assert!((magnitude - peak).abs() < 1e-15);
            } else {
                prop_assert!(magnitude < peak);
            }
        }
    }

    #[test]
    fn reduced_form_tracks_brute_force((pair, m, n) in arb_pair_with_indices()) {
        let closed = rho_discrete(&pair, m, n).unwrap().value;
        let brute = rho_discrete_soe(&pair, m, n).unwrap().value;
        prop_assert!((closed - brute).norm() < 1e-12);
    }

    #[test]
    fn magnitude_factorizes_through_beta((pair, m, n) in arb_pair_with_indices()) {
        let d = relative_distance(m, n, pair.nu);
        let cont = magnitude_continuous(&pair, m, n).unwrap();
        let disc = magnitude_discrete(&pair, m, n).unwrap();
        let factor = beta(d, pair.n_wide()).unwrap();
        prop_assert!(factor >= 1.0);
        prop_assert!((disc - cont * factor).abs() < 1e-12);
    }

    #[test]
    fn orthogonality_predicate_is_the_zero_set((pair, m, n) in arb_pair_with_indices()) {
        let vanishes = magnitude_continuous(&pair, m, n).unwrap() < 1e-12;
        prop_assert_eq!(is_orthogonal(m, n, pair.nu), vanishes);
    }

    #[test]
    fn modulation_preserves_energy(
        pair in arb_pair(),
        seed_symbols in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 256),
    ) {
        let n = pair.n_wide();
        let k_total = (seed_symbols.len() / n).clamp(1, 4);
        let symbols: Vec<Complex64> = seed_symbols
            .iter()
            .cycle()
            .take(k_total * n)
            .map(|&(re, im)| Complex64::new(re, im))
            .collect();
        let grid = SymbolGrid::from_symbols(pair.wide, k_total, symbols).unwrap();
        let signal = modulate(&grid);
        prop_assert!((signal.energy() - grid.energy()).abs() < 1e-10);
    }

    #[test]
    fn demodulation_is_linear_over_multiplexing(
        pair in arb_pair(),
        raw in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 512),
    ) {
        let nu = pair.nu as usize;
        let k2_total = 1usize;
        let k1_total = nu * k2_total;
        let take = |count: usize, offset: usize| -> Vec<Complex64> {
            raw.iter()
                .cycle()
                .skip(offset)
                .take(count)
                .map(|&(re, im)| Complex64::new(re, im))
                .collect()
        };
        let wide = SymbolGrid::from_symbols(
            pair.wide,
            k1_total,
            take(k1_total * pair.n_wide(), 0),
        )
        .unwrap();
        let narrow = SymbolGrid::from_symbols(
            pair.narrow,
            k2_total,
            take(k2_total * pair.n_narrow(), 7),
        )
        .unwrap();
        let ws = modulate(&wide);
        let ns = modulate(&narrow);
        let mux = multiplex(&ws, &ns).unwrap();

        let combined = demodulate(&mux, &pair.wide, k1_total).unwrap();
        let part_wide = demodulate(&ws, &pair.wide, k1_total).unwrap();
        let part_narrow = demodulate(&ns, &pair.wide, k1_total).unwrap();
        for k in 0..k1_total {
            for m in 0..pair.n_wide() {
                let sum = part_wide.get(k, m) + part_narrow.get(k, m);
                prop_assert!((combined.get(k, m) - sum).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn round_trip_recovers_symbols(
        pair in arb_pair(),
        raw in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 128),
    ) {
        let n = pair.n_narrow();
        let k_total = 2usize.min(raw.len() / n).max(1);
        let symbols: Vec<Complex64> = raw
            .iter()
            .cycle()
            .take(k_total * n)
            .map(|&(re, im)| Complex64::new(re, im))
            .collect();
        let grid = SymbolGrid::from_symbols(pair.narrow, k_total, symbols).unwrap();
        let recovered = demodulate(&modulate(&grid), &pair.narrow, k_total).unwrap();
        for k in 0..k_total {
            for m in 0..n {
                prop_assert!((recovered.get(k, m) - grid.get(k, m)).norm() < 1e-12);
            }
        }
    }
}
