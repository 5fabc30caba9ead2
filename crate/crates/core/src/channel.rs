//! The noisy five-symbol channel built from the simulator.
//!
//! Noise enters through four parameters: HOM indistinguishability `λ`
//! (two-point mixture, see [`crate::photonic::run_network`]), preparation
//! mixing `ε` (weight of the maximally mixed two-ququart state, so the state
//! fidelity is `1 − 15ε/16`), Gaussian jitter on the four encoder phases,
//! and per-photon detection efficiency `η`. Efficiency never changes the
//! conditional decode probabilities (there are no dark counts); it only
//! scales how many pairs must be sent per conclusive event and is reported
//! separately.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::bell::{bell_state, symbol_to_bell, BellLabel, PAIR_DIM};
use crate::encoder::{apply_alice, encoder_unitary, EncoderSetting};
use crate::error::{Error, Result};
use crate::photonic::{
    classify, embed, pattern_table, sector_distribution, Classification, CoincidenceEvent,
    EventDistribution, Netlist, PatternTable, Sector,
};
use crate::quadrature::gaussian_average_nodes;
use crate::rng::{stream, Stream};

pub use crate::bell::ALPHABET;

/// Column count of the channel matrix: five symbols plus Inconclusive.
pub const N_OUTCOMES: usize = ALPHABET + 1;
/// Column index of the Inconclusive outcome.
pub const INCONCLUSIVE: usize = ALPHABET;

/// Monte Carlo shots are processed in fixed blocks so results do not depend
/// on how blocks are sharded across threads.
pub const MC_BLOCK: u64 = 4096;

const GH_ORDER: usize = 5;

/// Decode result for one coincidence event.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Symbol(u8),
    Inconclusive,
}

impl Outcome {
    pub fn column(&self) -> usize {
        match self {
            Outcome::Symbol(s) => *s as usize,
            Outcome::Inconclusive => INCONCLUSIVE,
        }
    }
}

/// Noise parameters of the simulated experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    /// HOM indistinguishability, in [0, 1].
    pub lambda: f64,
    /// Weight of the maximally mixed 16-dimensional state, in [0, 1].
    pub prep_mixing: f64,
    /// Standard deviation of Gaussian encoder-phase errors, radians.
    pub phase_jitter: f64,
    /// Per-photon detection efficiency, in (0, 1].
    pub efficiency: f64,
}

impl NoiseModel {
    /// The measured operating point: visibility 0.962, state fidelity 0.980,
    /// no phase jitter, pair efficiency 0.109.
    pub fn calibrated() -> Self {
        NoiseModel {
            lambda: 0.962,
            prep_mixing: Self::mixing_for_fidelity(0.980),
            phase_jitter: 0.0,
            efficiency: libm::sqrt(0.109),
        }
    }

    pub fn noiseless() -> Self {
        NoiseModel {
            lambda: 1.0,
            prep_mixing: 0.0,
            phase_jitter: 0.0,
            efficiency: 1.0,
        }
    }

    /// Mixing weight that produces a given state fidelity `F = 1 − 15ε/16`.
    pub fn mixing_for_fidelity(fidelity: f64) -> f64 {
        (1.0 - fidelity) * 16.0 / 15.0
    }

    pub fn state_fidelity(&self) -> f64 {
        1.0 - self.prep_mixing * 15.0 / 16.0
    }

    /// Probability that both photons of a pair are detected.
    pub fn pair_efficiency(&self) -> f64 {
        self.efficiency * self.efficiency
    }

    pub fn validate(&self) -> Result<()> {
        let in_unit = |name: &'static str, v: f64| {
            if (0.0..=1.0).contains(&v) && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    detail: format!("{v} outside [0, 1]"),
                })
            }
        };
        in_unit("lambda", self.lambda)?;
        in_unit("prep_mixing", self.prep_mixing)?;
        in_unit("efficiency", self.efficiency)?;
        if self.efficiency <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "efficiency",
                detail: "must be positive".to_string(),
            });
        }
        if !(self.phase_jitter.is_finite() && self.phase_jitter >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "phase_jitter",
                detail: format!("{} must be a finite non-negative angle", self.phase_jitter),
            });
        }
        Ok(())
    }
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel::calibrated()
    }
}

/// A prior over the five input symbols.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prior([f64; ALPHABET]);

impl Prior {
    pub fn uniform() -> Self {
        Prior([1.0 / ALPHABET as f64; ALPHABET])
    }

    pub fn new(p: [f64; ALPHABET]) -> Result<Self> {
        let total: f64 = p.iter().sum();
        if p.iter().any(|&x| x < 0.0 || !x.is_finite()) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "prior",
                detail: format!("entries must be non-negative and sum to 1 (sum = {total})"),
            });
        }
        Ok(Prior(p))
    }

    pub fn probabilities(&self) -> &[f64; ALPHABET] {
        &self.0
    }
}

/// Conditional probabilities `p(y|x)`: five input symbols over five decode
/// outcomes plus Inconclusive.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelMatrix {
    rows: [[f64; N_OUTCOMES]; ALPHABET],
}

impl ChannelMatrix {
    pub fn from_rows(rows: [[f64; N_OUTCOMES]; ALPHABET]) -> Result<Self> {
        for (x, row) in rows.iter().enumerate() {
            let total: f64 = row.iter().sum();
            if row.iter().any(|&p| p < -1e-12 || !p.is_finite()) || (total - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParameter {
                    name: "channel",
                    detail: format!("row {x} sums to {total} or has negative entries"),
                });
            }
        }
        Ok(ChannelMatrix { rows })
    }

    pub fn identity() -> Self {
        let mut rows = [[0.0; N_OUTCOMES]; ALPHABET];
        for (x, row) in rows.iter_mut().enumerate() {
            row[x] = 1.0;
        }
        ChannelMatrix { rows }
    }

    pub fn rows(&self) -> &[[f64; N_OUTCOMES]; ALPHABET] {
        &self.rows
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.rows[x][y]
    }

    pub fn diagonal(&self, x: usize) -> f64 {
        self.rows[x][x]
    }

    pub fn inconclusive(&self, x: usize) -> f64 {
        self.rows[x][INCONCLUSIVE]
    }

    /// Mean success probability of the four phase-encoded symbols 0..=3.
    pub fn mean_low_diagonal(&self) -> f64 {
        (0..4).map(|x| self.diagonal(x)).sum::<f64>() / 4.0
    }

    /// Resolve the Inconclusive column under a policy. Retry renormalizes
    /// each row over conclusive outcomes; uniform guess spreads the
    /// inconclusive mass evenly over the symbols.
    pub fn with_policy(&self, policy: InconclusivePolicy) -> Result<ChannelMatrix> {
        let mut rows = self.rows;
        match policy {
            InconclusivePolicy::SeparateOutcome => {}
            InconclusivePolicy::RetryUntilConclusive => {
                for (x, row) in rows.iter_mut().enumerate() {
                    let conclusive = 1.0 - row[INCONCLUSIVE];
                    if conclusive <= 0.0 {
                        return Err(Error::InvalidParameter {
                            name: "channel",
                            detail: format!("symbol {x} is never conclusive"),
                        });
                    }
                    for p in row.iter_mut().take(ALPHABET) {
                        *p /= conclusive;
                    }
                    row[INCONCLUSIVE] = 0.0;
                }
            }
            InconclusivePolicy::UniformGuess => {
                for row in rows.iter_mut() {
                    let spread = row[INCONCLUSIVE] / ALPHABET as f64;
                    for p in row.iter_mut().take(ALPHABET) {
                        *p += spread;
                    }
                    row[INCONCLUSIVE] = 0.0;
                }
            }
        }
        ChannelMatrix::from_rows(rows)
    }
}

/// What to do with inconclusive detection patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InconclusivePolicy {
    /// Keep Inconclusive as its own outcome column (default).
    SeparateOutcome,
    /// Repeat the transmission until a conclusive pattern arrives.
    RetryUntilConclusive,
    /// Replace inconclusive results by a uniformly random symbol.
    UniformGuess,
}

/// How to evaluate the channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimMode {
    Exact,
    MonteCarlo { shots: u64, seed: u64 },
}

/// Precomputed propagation results for one analyzer: the pattern table and
/// the per-state coincidence distributions of both sectors.
pub struct AnalyzerModel {
    netlist: Netlist,
    table: PatternTable,
    pnr: bool,
    ind: Vec<EventDistribution>,
    dist: Vec<EventDistribution>,
    cdf_ind: Vec<Vec<(CoincidenceEvent, f64)>>,
    cdf_dist: Vec<Vec<(CoincidenceEvent, f64)>>,
}

impl AnalyzerModel {
    pub fn new(netlist: Netlist, pnr: bool) -> Result<Self> {
        let table = pattern_table(&netlist)?;
        let mut ind = Vec::with_capacity(PAIR_DIM);
        let mut dist = Vec::with_capacity(PAIR_DIM);
        for label in BellLabel::all() {
            let input = embed(&bell_state(label));
            ind.push(sector_distribution(
                &input,
                &netlist,
                Sector::Indistinguishable,
            )?);
            dist.push(sector_distribution(
                &input,
                &netlist,
                Sector::Distinguishable,
            )?);
        }
        let cdf_ind = ind.iter().map(|d| d.cdf()).collect();
        let cdf_dist = dist.iter().map(|d| d.cdf()).collect();
        Ok(AnalyzerModel {
            netlist,
            table,
            pnr,
            ind,
            dist,
            cdf_ind,
            cdf_dist,
        })
    }

    /// Model for the bundled netlist without number-resolving detectors.
    pub fn bundled() -> Result<Self> {
        AnalyzerModel::new(Netlist::bundled(), false)
    }

    pub fn table(&self) -> &PatternTable {
        &self.table
    }

    pub fn netlist(&self) -> &Netlist {
        &self.netlist
    }

    pub fn pnr(&self) -> bool {
        self.pnr
    }

    /// Coincidence distribution of a Bell state at indistinguishability `λ`.
    pub fn state_distribution(&self, label: BellLabel, lambda: f64) -> EventDistribution {
        let k = label.index();
        self.ind[k].mix(&self.dist[k], lambda)
    }

    /// Distribution of the maximally mixed two-ququart state (the uniform
    /// Bell-state ensemble) at indistinguishability `λ`.
    pub fn mixed_distribution(&self, lambda: f64) -> EventDistribution {
        let mut out = EventDistribution::default();
        let w = 1.0 / PAIR_DIM as f64;
        for k in 0..PAIR_DIM {
            for (e, p) in self.ind[k].iter() {
                out.insert(*e, w * lambda * p);
            }
            for (e, p) in self.dist[k].iter() {
                out.insert(*e, w * (1.0 - lambda) * p);
            }
        }
        out
    }

    /// Decode one event: alphabet classes map to their symbol, everything
    /// else (the two non-alphabet classes, unclassified patterns,
    /// same-detector events without number resolution) is inconclusive.
    pub fn decode(&self, event: CoincidenceEvent) -> Outcome {
        match classify(event, &self.table, self.pnr) {
            Classification::Class(c) if c <= ALPHABET => Outcome::Symbol((c - 1) as u8),
            _ => Outcome::Inconclusive,
        }
    }

    /// Exact coincidence distribution for one transmitted symbol under a
    /// noise model. Phase jitter is averaged by Gauss-Hermite quadrature
    /// over the four encoder phases.
    pub fn symbol_distribution(&self, symbol: u8, noise: &NoiseModel) -> Result<EventDistribution> {
        noise.validate()?;
        let label = symbol_to_bell(symbol)?;
        let pure = if noise.phase_jitter == 0.0 {
            self.state_distribution(label, noise.lambda)
        } else {
            self.jittered_distribution(symbol, noise)?
        };
        if noise.prep_mixing == 0.0 {
            return Ok(pure);
        }
        Ok(pure.mix(
            &self.mixed_distribution(noise.lambda),
            1.0 - noise.prep_mixing,
        ))
    }

    fn jittered_distribution(&self, symbol: u8, noise: &NoiseModel) -> Result<EventDistribution> {
        let setting = EncoderSetting::canonical(symbol)?;
        let nodes = gaussian_average_nodes(noise.phase_jitter, GH_ORDER);
        let psi11 = bell_state(BellLabel::new(1, 1)?);
        let mut out = EventDistribution::default();
        for (d1, w1) in &nodes {
            for (d2, w2) in &nodes {
                for (d3, w3) in &nodes {
                    for (d4, w4) in &nodes {
                        let weight = w1 * w2 * w3 * w4;
                        let jittered = EncoderSetting {
                            symbol: setting.symbol,
                            phases: [
                                setting.phases[0] + d1,
                                setting.phases[1] + d2,
                                setting.phases[2] + d3,
                                setting.phases[3] + d4,
                            ],
                            use_u_gate: setting.use_u_gate,
                        };
                        let state = apply_alice(&psi11, &encoder_unitary(&jittered));
                        let input = embed(&state);
                        let ind =
                            sector_distribution(&input, &self.netlist, Sector::Indistinguishable)?;
                        let dist =
                            sector_distribution(&input, &self.netlist, Sector::Distinguishable)?;
                        let mixed = ind.mix(&dist, noise.lambda);
                        for (e, p) in mixed.iter() {
                            out.insert(*e, weight * p);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact conditional decode distribution (one channel row).
    pub fn decode_row(&self, symbol: u8, noise: &NoiseModel) -> Result<[f64; N_OUTCOMES]> {
        let dist = self.symbol_distribution(symbol, noise)?;
        let mut row = [0.0; N_OUTCOMES];
        for (e, p) in dist.iter() {
            row[self.decode(*e).column()] += p;
        }
        Ok(row)
    }

    /// Sample one coincidence event for a transmitted symbol. Used by the
    /// Monte Carlo channel and the image pipeline; one stream per logical
    /// unit keeps results shard-independent.
    pub fn sample_event(
        &self,
        symbol: u8,
        noise: &NoiseModel,
        rng: &mut Stream,
    ) -> Result<CoincidenceEvent> {
        let label = if noise.prep_mixing > 0.0 && rng.f64() < noise.prep_mixing {
            let k = rng.below(PAIR_DIM as u64) as u8;
            BellLabel::new(k / 4 + 1, k % 4 + 1)?
        } else if noise.phase_jitter > 0.0 {
            return self.sample_jittered(symbol, noise, rng);
        } else {
            symbol_to_bell(symbol)?
        };
        let indistinguishable = rng.f64() < noise.lambda;
        let cdf = if indistinguishable {
            &self.cdf_ind[label.index()]
        } else {
            &self.cdf_dist[label.index()]
        };
        Ok(sample_cdf(cdf, rng))
    }

    fn sample_jittered(
        &self,
        symbol: u8,
        noise: &NoiseModel,
        rng: &mut Stream,
    ) -> Result<CoincidenceEvent> {
        let setting = EncoderSetting::canonical(symbol)?;
        let phases =
            core::array::from_fn(|k| setting.phases[k] + noise.phase_jitter * rng.gaussian());
        let jittered = EncoderSetting { phases, ..setting };
        let state = apply_alice(
            &bell_state(BellLabel::new(1, 1)?),
            &encoder_unitary(&jittered),
        );
        let input = embed(&state);
        let sector = if rng.f64() < noise.lambda {
            Sector::Indistinguishable
        } else {
            Sector::Distinguishable
        };
        let dist = sector_distribution(&input, &self.netlist, sector)?;
        Ok(sample_cdf(&dist.cdf(), rng))
    }
}

fn sample_cdf(cdf: &[(CoincidenceEvent, f64)], rng: &mut Stream) -> CoincidenceEvent {
    let u = rng.f64();
    for (event, cum) in cdf {
        if u < *cum {
            return *event;
        }
    }
    cdf.last().expect("distribution is non-empty").0
}

/// Outcome counts for one fixed block of Monte Carlo shots. Blocks are the
/// unit of work-sharing; summing block counts reproduces the serial result
/// for any thread count.
pub fn mc_block_counts(
    model: &AnalyzerModel,
    noise: &NoiseModel,
    symbol: u8,
    seed: u64,
    block: u64,
    block_len: u64,
) -> Result<[u64; N_OUTCOMES]> {
    let mut rng = stream(seed, &[0x6368616e, symbol as u64, block]);
    let mut counts = [0u64; N_OUTCOMES];
    for _ in 0..block_len {
        let event = model.sample_event(symbol, noise, &mut rng)?;
        counts[model.decode(event).column()] += 1;
    }
    Ok(counts)
}

/// The fixed block decomposition of a shot budget: (block index, length).
pub fn blocks_for(shots: u64) -> impl Iterator<Item = (u64, u64)> {
    (0..shots.div_ceil(MC_BLOCK)).map(move |b| {
        let start = b * MC_BLOCK;
        (b, MC_BLOCK.min(shots - start))
    })
}

/// Build the channel matrix, either by exact propagation of the pure-state
/// ensemble or by sampling coincidence events.
pub fn confusion_from_sim(
    model: &AnalyzerModel,
    noise: &NoiseModel,
    mode: SimMode,
) -> Result<ChannelMatrix> {
    noise.validate()?;
    match mode {
        SimMode::Exact => {
            let mut rows = [[0.0; N_OUTCOMES]; ALPHABET];
            for (symbol, row) in rows.iter_mut().enumerate() {
                *row = model.decode_row(symbol as u8, noise)?;
            }
            ChannelMatrix::from_rows(rows)
        }
        SimMode::MonteCarlo { shots, seed } => {
            if shots == 0 {
                return Err(Error::InvalidParameter {
                    name: "shots",
                    detail: "Monte Carlo mode needs shots > 0".to_string(),
                });
            }
            let mut rows = [[0.0; N_OUTCOMES]; ALPHABET];
            for symbol in 0..ALPHABET as u8 {
                let mut counts = [0u64; N_OUTCOMES];
                for (block, len) in blocks_for(shots) {
                    let c = mc_block_counts(model, noise, symbol, seed, block, len)?;
                    for (acc, v) in counts.iter_mut().zip(c) {
                        *acc += v;
                    }
                }
                for (y, &c) in counts.iter().enumerate() {
                    rows[symbol as usize][y] = c as f64 / shots as f64;
                }
            }
            ChannelMatrix::from_rows(rows)
        }
    }
}

/// Integer event counts per (symbol, outcome) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CountsTable {
    counts: [[u64; N_OUTCOMES]; ALPHABET],
}

impl CountsTable {
    pub fn new(counts: [[u64; N_OUTCOMES]; ALPHABET]) -> Self {
        CountsTable { counts }
    }

    /// Expected counts for a fixed number of pairs per symbol, rounded to
    /// the nearest integer.
    pub fn from_channel(channel: &ChannelMatrix, per_symbol: u64) -> Self {
        let mut counts = [[0u64; N_OUTCOMES]; ALPHABET];
        for (x, row) in counts.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                *cell = libm::round(channel.prob(x, y) * per_symbol as f64) as u64;
            }
        }
        CountsTable { counts }
    }

    pub fn cells(&self) -> &[[u64; N_OUTCOMES]; ALPHABET] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> AnalyzerModel {
        AnalyzerModel::bundled().unwrap()
    }

    #[test]
    fn noiseless_channel_is_the_identity() {
        let ch = confusion_from_sim(&model(), &NoiseModel::noiseless(), SimMode::Exact).unwrap();
        for x in 0..ALPHABET {
            assert!((ch.diagonal(x) - 1.0).abs() < 1e-12, "symbol {x}");
            assert!(ch.inconclusive(x).abs() < 1e-12);
        }
    }

    #[test]
    fn calibrated_channel_rows_are_normalized_and_off_identity() {
        let ch = confusion_from_sim(&model(), &NoiseModel::calibrated(), SimMode::Exact).unwrap();
        for x in 0..ALPHABET {
            let total: f64 = ch.rows()[x].iter().sum();
            assert!((total - 1.0).abs() < 1e-9);
            assert!(ch.diagonal(x) > 0.9 && ch.diagonal(x) < 1.0);
        }
        // the phase-encoded symbols lose HOM mass to their partner class,
        // the polarization-read symbol loses it to a non-alphabet class
        assert!(ch.prob(0, 1) > 0.01);
        assert!(ch.inconclusive(4) > 0.01);
    }

    #[test]
    fn lambda_dependence_is_affine() {
        let m = model();
        let noise_at = |l: f64| NoiseModel {
            lambda: l,
            ..NoiseModel::noiseless()
        };
        let at = |l: f64| {
            confusion_from_sim(&m, &noise_at(l), SimMode::Exact)
                .unwrap()
                .diagonal(0)
        };
        let (a, b, c) = (at(0.2), at(0.5), at(0.8));
        assert!((b - (a + c) / 2.0).abs() < 1e-12);
        assert!(c >= b && b >= a);
    }

    #[test]
    fn monte_carlo_agrees_with_exact() {
        let m = model();
        let noise = NoiseModel::calibrated();
        let exact = confusion_from_sim(&m, &noise, SimMode::Exact).unwrap();
        let shots = 200_000;
        let mc = confusion_from_sim(&m, &noise, SimMode::MonteCarlo { shots, seed: 9 }).unwrap();
        for x in 0..ALPHABET {
            for y in 0..N_OUTCOMES {
                let p = exact.prob(x, y);
                let se = libm::sqrt(p.max(1e-9) * (1.0 - p) / shots as f64);
                assert!(
                    (mc.prob(x, y) - p).abs() < 4.0 * se + 1e-4,
                    "cell ({x},{y}): exact {p}, mc {}",
                    mc.prob(x, y)
                );
            }
        }
    }

    #[test]
    fn monte_carlo_is_seed_reproducible() {
        let m = model();
        let noise = NoiseModel::calibrated();
        let mode = SimMode::MonteCarlo {
            shots: 10_000,
            seed: 42,
        };
        let a = confusion_from_sim(&m, &noise, mode).unwrap();
        let b = confusion_from_sim(&m, &noise, mode).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn retry_policy_renormalizes_rows() {
        let ch = confusion_from_sim(&model(), &NoiseModel::calibrated(), SimMode::Exact).unwrap();
        let retried = ch
            .with_policy(InconclusivePolicy::RetryUntilConclusive)
            .unwrap();
        for x in 0..ALPHABET {
            assert!(retried.inconclusive(x).abs() < 1e-15);
            let total: f64 = retried.rows()[x].iter().sum();
            assert!((total - 1.0).abs() < 1e-9);
            assert!(retried.diagonal(x) >= ch.diagonal(x));
        }
    }

    #[test]
    fn jitter_reduces_the_diagonal_smoothly() {
        let m = model();
        let noise = NoiseModel {
            phase_jitter: 0.15,
            ..NoiseModel::noiseless()
        };
        let ch = confusion_from_sim(&m, &noise, SimMode::Exact).unwrap();
        for x in 0..ALPHABET {
            let d = ch.diagonal(x);
            assert!(d > 0.9 && d < 1.0, "symbol {x}: {d}");
        }
    }

    #[test]
    fn invalid_noise_is_rejected() {
        let m = model();
        let bad = NoiseModel {
            lambda: 1.2,
            ..NoiseModel::noiseless()
        };
        assert!(confusion_from_sim(&m, &bad, SimMode::Exact).is_err());
        let bad = NoiseModel {
            prep_mixing: -0.1,
            ..NoiseModel::noiseless()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn fidelity_mixing_round_trip() {
        let eps = NoiseModel::mixing_for_fidelity(0.980);
        let noise = NoiseModel {
            prep_mixing: eps,
            ..NoiseModel::noiseless()
        };
        assert!((noise.state_fidelity() - 0.980).abs() < 1e-12);
        assert!((eps - 0.0213).abs() < 2e-4);
    }
}
