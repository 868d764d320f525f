//! End-to-end discrete-time mixed-numerology OFDM chain.
//!
//! Per-numerology modulation stacks each symbol's subcarriers into a block
//! of samples; the two numerologies' sample streams are then added at the
//! common sampling rate, and a correlator demodulator recovers symbols per
//! numerology. With no channel or noise in the loop, the difference between
//! recovered and transmitted symbols is exactly the inter-numerology
//! leakage, which [`IniPredictor`] reproduces analytically from segment
//! inner products.
//!
//! Block alignment: wide symbol k overlaps segment q = k mod nu of narrow
//! symbol floor(k / nu); a run covers K2 narrow symbols and therefore
//! exactly nu * K2 wide symbols.

use crate::basis::dft_phasor;
use crate::model::{Numerology, NumerologyPair};
use crate::numerics::ComplexSum;
use crate::oracle::segment_rho_soe;
use crate::Error;
use num_complex::Complex64;
use std::f64::consts::PI;

/// A rectangular grid of complex data symbols for one numerology,
/// indexed by (symbol time k, subcarrier m).
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolGrid {
    numerology: Numerology,
    num_symbols: usize,
    symbols: Vec<Complex64>,
}

impl SymbolGrid {
    pub fn zeros(numerology: Numerology, num_symbols: usize) -> Self {
        let len = num_symbols * numerology.num_subcarriers;
        Self {
            numerology,
            num_symbols,
            symbols: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    /// Wrap a row-major symbol vector (k outer, m inner); the length must
    /// be exactly num_symbols * N and every value finite.
    pub fn from_symbols(
        numerology: Numerology,
        num_symbols: usize,
        symbols: Vec<Complex64>,
    ) -> Result<Self, Error> {
        let expected = num_symbols * numerology.num_subcarriers;
        if symbols.len() != expected {
            return Err(Error::InconsistentConfig(format!(
                "grid needs {expected} symbols, got {}",
                symbols.len()
            )));
        }
        if symbols.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(Error::InconsistentConfig(
                "grid contains non-finite symbols".into(),
            ));
        }
        Ok(Self {
            numerology,
            num_symbols,
            symbols,
        })
    }

    pub fn numerology(&self) -> &Numerology {
        &self.numerology
    }

    pub fn num_symbols(&self) -> usize {
        self.num_symbols
    }

    pub fn num_subcarriers(&self) -> usize {
        self.numerology.num_subcarriers
    }

    pub fn symbols(&self) -> &[Complex64] {
        &self.symbols
    }

    #[inline]
    pub fn get(&self, k: usize, m: usize) -> Complex64 {
        self.symbols[k * self.numerology.num_subcarriers + m]
    }

    pub fn set(&mut self, k: usize, m: usize, value: Complex64) {
        self.symbols[k * self.numerology.num_subcarriers + m] = value;
    }

    pub fn energy(&self) -> f64 {
        self.symbols.iter().map(|s| s.norm_sqr()).sum()
    }
}

/// Complex baseband samples at the common sampling duration.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub sampling_duration_s: f64,
    pub samples: Vec<Complex64>,
}

impl SampledSignal {
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum()
    }
}

/// Modulate a symbol grid into K concatenated blocks of N samples each:
/// block k carries `sum over m of s[k, m] * phi_m[l]`.
pub fn modulate(grid: &SymbolGrid) -> SampledSignal {
    let n = grid.num_subcarriers();
    let k_total = grid.num_symbols();
    let mut samples = Vec::with_capacity(k_total * n);
    for k in 0..k_total {
        for l in 0..n {
            let mut acc = ComplexSum::new();
            for m in 0..n {
                let s = grid.get(k, m);
                if s.re != 0.0 || s.im != 0.0 {
                    acc.add(s * dft_phasor(m, l, n));
                }
            }
            samples.push(acc.value());
        }
    }
    SampledSignal {
        sampling_duration_s: grid.numerology().sample_duration_s(),
        samples,
    }
}

/// Sample-wise sum of the two numerologies' signals. Both must share the
/// sampling duration and cover the same span, i.e. K1 = nu * K2 symbols.
pub fn multiplex(wide: &SampledSignal, narrow: &SampledSignal) -> Result<SampledSignal, Error> {
    if wide.sampling_duration_s != narrow.sampling_duration_s {
        return Err(Error::SampleRateMismatch {
            left: wide.sampling_duration_s,
            right: narrow.sampling_duration_s,
        });
    }
    if wide.samples.len() != narrow.samples.len() {
        return Err(Error::LengthMismatch {
            left: wide.samples.len(),
            right: narrow.samples.len(),
        });
    }
    let samples = wide
        .samples
        .iter()
        .zip(&narrow.samples)
        .map(|(a, b)| a + b)
        .collect();
    Ok(SampledSignal {
        sampling_duration_s: wide.sampling_duration_s,
        samples,
    })
}

/// Correlator demodulation: recover `num_symbols` symbols of the given
/// numerology from consecutive blocks of the signal.
pub fn demodulate(
    signal: &SampledSignal,
    numerology: &Numerology,
    num_symbols: usize,
) -> Result<SymbolGrid, Error> {
    let n = numerology.num_subcarriers;
    let needed = num_symbols * n;
    if signal.samples.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            available: signal.samples.len(),
        });
    }
    let mut grid = SymbolGrid::zeros(*numerology, num_symbols);
    for k in 0..num_symbols {
        let block = &signal.samples[k * n..(k + 1) * n];
        for m in 0..n {
            let mut acc = ComplexSum::new();
            for (l, sample) in block.iter().enumerate() {
                acc.add(sample * dft_phasor(m, l, n).conj());
            }
            grid.set(k, m, acc.value());
        }
    }
    Ok(grid)
}

fn same_numerology(a: &Numerology, b: &Numerology) -> bool {
    a.index == b.index
        && a.num_subcarriers == b.num_subcarriers
        && a.subcarrier_spacing_hz == b.subcarrier_spacing_hz
}

/// Analytic interference predictor built from brute-force segment inner
/// products, one per (offset q, wide m, narrow n).
#[derive(Debug, Clone)]
pub struct IniPredictor {
    pair: NumerologyPair,
    table: Vec<Complex64>,
}

impl IniPredictor {
    pub fn new(pair: &NumerologyPair) -> Self {
        let nu = pair.nu as usize;
        let n1 = pair.n_wide();
        let n2 = pair.n_narrow();
        let mut table = Vec::with_capacity(nu * n1 * n2);
        for q in 0..nu {
            for m in 0..n1 {
                for n in 0..n2 {
                    table.push(segment_rho_soe(pair, m, n, q).expect("indices in range"));
                }
            }
        }
        Self { pair: *pair, table }
    }

    #[inline]
    fn seg(&self, q: usize, m: usize, n: usize) -> Complex64 {
        let n1 = self.pair.n_wide();
        let n2 = self.pair.n_narrow();
        self.table[(q * n1 + m) * n2 + n]
    }

    /// Leakage onto wide subcarrier m in wide symbol k from the narrow
    /// grid: sum over n of s2[floor(k/nu), n] * segment_rho(m, n, k mod nu).
    pub fn onto_wide(&self, narrow: &SymbolGrid, k: usize, m: usize) -> Result<Complex64, Error> {
        if !same_numerology(narrow.numerology(), &self.pair.narrow) {
            return Err(Error::InconsistentConfig(
                "interferer grid is not the pair's narrow numerology".into(),
            ));
        }
        let nu = self.pair.nu as usize;
        if m >= self.pair.n_wide() {
            return Err(Error::IndexOutOfRange {
                index: m,
                len: self.pair.n_wide(),
            });
        }
        if k / nu >= narrow.num_symbols() {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: nu * narrow.num_symbols(),
            });
        }
        let (k2, q) = (k / nu, k % nu);
        let mut acc = ComplexSum::new();
        for n in 0..self.pair.n_narrow() {
            let s = narrow.get(k2, n);
            if s.re != 0.0 || s.im != 0.0 {
                acc.add(s * self.seg(q, m, n));
            }
        }
        Ok(acc.value())
    }

    /// Leakage onto narrow subcarrier n in narrow symbol k2 from the wide
    /// grid: sum over q and m of s1[nu*k2 + q, m] * conj(segment_rho(m, n, q)).
    pub fn onto_narrow(&self, wide: &SymbolGrid, k2: usize, n: usize) -> Result<Complex64, Error> {
        if !same_numerology(wide.numerology(), &self.pair.wide) {
            return Err(Error::InconsistentConfig(
                "interferer grid is not the pair's wide numerology".into(),
            ));
        }
        let nu = self.pair.nu as usize;
        if n >= self.pair.n_narrow() {
            return Err(Error::IndexOutOfRange {
                index: n,
                len: self.pair.n_narrow(),
            });
        }
        if nu * k2 + nu > wide.num_symbols() {
            return Err(Error::IndexOutOfRange {
                index: k2,
                len: wide.num_symbols() / nu,
            });
        }
        let mut acc = ComplexSum::new();
        for q in 0..nu {
            let k1 = nu * k2 + q;
            for m in 0..self.pair.n_wide() {
                let s = wide.get(k1, m);
                if s.re != 0.0 || s.im != 0.0 {
                    acc.add(s * self.seg(q, m, n).conj());
                }
            }
        }
        Ok(acc.value())
    }
}

/// One-shot prediction of the leakage onto one victim subcarrier in one
/// symbol. Builds the full segment table per call; hold an
/// [`IniPredictor`] when evaluating many cells.
pub fn predict_ini(
    pair: &NumerologyPair,
    interferer: &SymbolGrid,
    victim: &Numerology,
    k: usize,
    subcarrier: usize,
) -> Result<Complex64, Error> {
    let predictor = IniPredictor::new(pair);
    match victim.index {
        1 => predictor.onto_wide(interferer, k, subcarrier),
        2 => predictor.onto_narrow(interferer, k, subcarrier),
        other => Err(Error::InconsistentConfig(format!(
            "victim numerology index {other} is not 1 or 2"
        ))),
    }
}

/// SplitMix64: the fixed, portable generator behind every experiment.
/// Named in the report schema so runs reproduce across platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 significant bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Data constellations, all normalized to unit average symbol energy so
/// interference power predictions carry no per-constellation scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constellation {
    Qpsk,
    Qam16,
    RandomPhase,
}

impl Constellation {
    pub fn name(&self) -> &'static str {
        match self {
            Constellation::Qpsk => "qpsk",
            Constellation::Qam16 => "16qam",
            Constellation::RandomPhase => "random",
        }
    }

    fn draw(&self, rng: &mut SplitMix64) -> Complex64 {
        match self {
            Constellation::Qpsk => {
                let bits = rng.next_u64();
                let half = 0.5f64.sqrt();
                Complex64::new(
                    if bits & 1 == 0 { half } else { -half },
                    if bits & 2 == 0 { half } else { -half },
                )
            }
            Constellation::Qam16 => {
                const LEVELS: [f64; 4] = [-3.0, -1.0, 1.0, 3.0];
                let bits = rng.next_u64();
                let scale = 0.1f64.sqrt();
                Complex64::new(
                    LEVELS[(bits & 3) as usize] * scale,
                    LEVELS[((bits >> 2) & 3) as usize] * scale,
                )
            }
            Constellation::RandomPhase => {
                let angle = 2.0 * PI * rng.next_f64();
                Complex64::new(angle.cos(), angle.sin())
            }
        }
    }
}

/// Configuration of one end-to-end experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub pair: NumerologyPair,
    /// K2; the run spans nu * K2 wide symbols.
    pub num_narrow_symbols: usize,
    pub constellation: Constellation,
    pub seed: u64,
    /// Narrow subcarriers that carry data; `None` activates all of them.
    /// Must be strictly increasing and in range.
    pub narrow_active: Option<Vec<usize>>,
}

/// Predicted and measured interference for one victim subcarrier,
/// averaged over symbols.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubcarrierIni {
    pub numerology_index: u8,
    pub subcarrier: usize,
    pub predicted_power: f64,
    pub measured_power: f64,
}

/// Full outcome of one experiment: per-cell predicted and measured leakage
/// grids for both victims, per-subcarrier power summaries, and the largest
/// absolute prediction error anywhere in the run.
#[derive(Debug, Clone, PartialEq)]
pub struct IniReport {
    pub config: ExperimentConfig,
    pub predicted_onto_wide: SymbolGrid,
    pub measured_onto_wide: SymbolGrid,
    pub predicted_onto_narrow: SymbolGrid,
    pub measured_onto_narrow: SymbolGrid,
    pub per_subcarrier: Vec<SubcarrierIni>,
    pub max_prediction_error: f64,
}

fn mean_power_per_subcarrier(grid: &SymbolGrid) -> Vec<f64> {
    let n = grid.num_subcarriers();
    let k_total = grid.num_symbols();
    (0..n)
        .map(|m| {
            (0..k_total).map(|k| grid.get(k, m).norm_sqr()).sum::<f64>() / k_total as f64
        })
        .collect()
}

/// Generate seeded grids, run the chain in both directions, and compare the
/// measured leakage against the analytic prediction. Deterministic for a
/// fixed configuration.
pub fn run_experiment(config: &ExperimentConfig) -> Result<IniReport, Error> {
    let pair = &config.pair;
    let k2_total = config.num_narrow_symbols;
    if k2_total == 0 {
        return Err(Error::InconsistentConfig(
            "experiment needs at least one narrow symbol".into(),
        ));
    }
    if let Some(active) = &config.narrow_active {
        let in_range = active.iter().all(|&n| n < pair.n_narrow());
        let increasing = active.windows(2).all(|w| w[0] < w[1]);
        if !in_range || !increasing {
            return Err(Error::InconsistentConfig(
                "narrow_active must be strictly increasing indices below N2".into(),
            ));
        }
    }
    let k1_total = pair.nu as usize * k2_total;

    // Grid generation order is fixed: every wide cell row-major, then the
    // active narrow cells row-major.
    let mut rng = SplitMix64::new(config.seed);
    let mut wide_grid = SymbolGrid::zeros(pair.wide, k1_total);
    for k in 0..k1_total {
        for m in 0..pair.n_wide() {
            wide_grid.set(k, m, config.constellation.draw(&mut rng));
        }
    }
    let mut narrow_grid = SymbolGrid::zeros(pair.narrow, k2_total);
    for k in 0..k2_total {
        match &config.narrow_active {
            None => {
                for n in 0..pair.n_narrow() {
                    narrow_grid.set(k, n, config.constellation.draw(&mut rng));
                }
            }
            Some(active) => {
                for &n in active {
                    narrow_grid.set(k, n, config.constellation.draw(&mut rng));
                }
            }
        }
    }

    let multiplexed = multiplex(&modulate(&wide_grid), &modulate(&narrow_grid))?;
    let recovered_wide = demodulate(&multiplexed, &pair.wide, k1_total)?;
    let recovered_narrow = demodulate(&multiplexed, &pair.narrow, k2_total)?;

    let predictor = IniPredictor::new(pair);
    let mut predicted_onto_wide = SymbolGrid::zeros(pair.wide, k1_total);
    let mut measured_onto_wide = SymbolGrid::zeros(pair.wide, k1_total);
    let mut predicted_onto_narrow = SymbolGrid::zeros(pair.narrow, k2_total);
    let mut measured_onto_narrow = SymbolGrid::zeros(pair.narrow, k2_total);

    let mut max_err: f64 = 0.0;
    for k in 0..k1_total {
        for m in 0..pair.n_wide() {
            let predicted = predictor.onto_wide(&narrow_grid, k, m)?;
            let measured = recovered_wide.get(k, m) - wide_grid.get(k, m);
            predicted_onto_wide.set(k, m, predicted);
            measured_onto_wide.set(k, m, measured);
            max_err = max_err.max((predicted - measured).norm());
        }
    }
    for k in 0..k2_total {
        for n in 0..pair.n_narrow() {
            let predicted = predictor.onto_narrow(&wide_grid, k, n)?;
            let measured = recovered_narrow.get(k, n) - narrow_grid.get(k, n);
            predicted_onto_narrow.set(k, n, predicted);
            measured_onto_narrow.set(k, n, measured);
            max_err = max_err.max((predicted - measured).norm());
        }
    }

    let mut per_subcarrier = Vec::with_capacity(pair.n_wide() + pair.n_narrow());
    let wide_pred = mean_power_per_subcarrier(&predicted_onto_wide);
    let wide_meas = mean_power_per_subcarrier(&measured_onto_wide);
    for m in 0..pair.n_wide() {
        per_subcarrier.push(SubcarrierIni {
            numerology_index: 1,
            subcarrier: m,
            predicted_power: wide_pred[m],
            measured_power: wide_meas[m],
        });
    }
    let narrow_pred = mean_power_per_subcarrier(&predicted_onto_narrow);
    let narrow_meas = mean_power_per_subcarrier(&measured_onto_narrow);
    for n in 0..pair.n_narrow() {
        per_subcarrier.push(SubcarrierIni {
            numerology_index: 2,
            subcarrier: n,
            predicted_power: narrow_pred[n],
            measured_power: narrow_meas[n],
        });
    }

    Ok(IniReport {
        config: config.clone(),
        predicted_onto_wide,
        measured_onto_wide,
        predicted_onto_narrow,
        measured_onto_narrow,
        per_subcarrier,
        max_prediction_error: max_err,
    })
}
