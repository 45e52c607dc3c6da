//! Monte Carlo estimators for the deficiency-zero threshold and the
//! structural events behind it, plus an exact enumeration oracle for tiny `n`.
//!
//! Trials run on the current rayon pool. Trial `i` of a batch with master
//! seed `s` always uses `trial_seed(s, i)` and successes are summed, so every
//! estimate except `wall_time_ms` is independent of the thread count.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex_space::universe_size;
use crate::er_sampler::{
    binomial, count_isolated, is_columns_independent, pair_count, sample_dn_matrix,
    sample_er_network, sample_k_paired, trial_seed, unrank_pair, ErTrialConfig, SamplerError,
};
use crate::network_core::{deficiency, is_paired, ReactionNetwork};
use crate::stats::{wilson_interval, Z_95};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("exact enumeration supports n = 1 or n = 2, got n = {0}")]
    Unsupported(usize),
    #[error("alpha = {alpha} gives p = {p}, outside [0, 1]")]
    AlphaOutOfRange { alpha: f64, p: f64 },
    #[error("sweep parameters must be positive (c = {c}, beta = {beta})")]
    BadSweep { c: f64, beta: f64 },
    #[error(transparent)]
    Sampler(#[from] SamplerError),
}

/// One Monte Carlo estimate with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub wall_time_ms: u64,
    pub seed: u64,
}

impl EstimateRow {
    fn new(n: usize, trials: u64, successes: u64, seed: u64, started: Instant) -> Self {
        let (ci_low, ci_high) = wilson_interval(successes, trials, Z_95);
        Self {
            n,
            p: None,
            k: None,
            trials,
            successes,
            estimate: successes as f64 / trials as f64,
            ci_low,
            ci_high,
            wall_time_ms: started.elapsed().as_millis() as u64,
            seed,
        }
    }

    /// Standard deviation implied by the 95% Wilson interval.
    pub fn sigma(&self) -> f64 {
        crate::stats::wilson_sigma(self.ci_low, self.ci_high)
    }
}

/// Counts the trials `0..trials` for which `event(trial_seed(master, i))` holds.
pub fn count_successes<F>(master: u64, trials: u64, event: F) -> u64
where
    F: Fn(u64) -> bool + Sync,
{
    (0..trials)
        .into_par_iter()
        .filter(|&i| event(trial_seed(master, i)))
        .count() as u64
}

/// Deficiency-zero test that skips the rank computation when `|C| > 2n`,
/// which already forces a positive deficiency.
pub fn has_deficiency_zero(net: &ReactionNetwork) -> bool {
    if net.vertices().len() > 2 * net.num_species() {
        return false;
    }
    deficiency(net).deficiency == 0
}

/// Fraction of `G(N_n, p)` draws whose network has deficiency zero.
/// `cfg.seed` is the master seed of the batch.
pub fn estimate_def_zero_prob(
    cfg: &ErTrialConfig,
    trials: u64,
) -> Result<EstimateRow, ExperimentError> {
    cfg.validate()?;
    if trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    let started = Instant::now();
    let successes = count_successes(cfg.seed, trials, |seed| {
        let net = sample_er_network(&ErTrialConfig { seed, ..*cfg }).expect("validated");
        has_deficiency_zero(&net)
    });
    let mut row = EstimateRow::new(cfg.n, trials, successes, cfg.seed, started);
    row.p = Some(cfg.p);
    Ok(row)
}

/// Number of graphs on the complex universe with `e` edges whose network has
/// deficiency zero, indexed by `e`. Exhaustive over all `2^M` edge sets.
pub fn def_zero_polynomial(n: usize) -> Result<Vec<u64>, ExperimentError> {
    if !(1..=2).contains(&n) {
        return Err(ExperimentError::Unsupported(n));
    }
    let m = pair_count(n) as u32;
    let pairs: Vec<(usize, usize)> = (0..m as u64).map(unrank_pair).collect();
    let per_mask: Vec<Option<u32>> = (0u32..1 << m)
        .into_par_iter()
        .map(|mask| {
            let edges: Vec<(usize, usize)> = (0..m as usize)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            let net = ReactionNetwork::from_edge_list(n, &edges).expect("valid pairs");
            (deficiency(&net).deficiency == 0).then_some(mask.count_ones())
        })
        .collect();
    let mut counts = vec![0u64; m as usize + 1];
    for e in per_mask.into_iter().flatten() {
        counts[e as usize] += 1;
    }
    Ok(counts)
}

/// Evaluates `sum_e counts[e] p^e (1-p)^(M-e)`.
pub fn eval_edge_polynomial(counts: &[u64], p: f64) -> f64 {
    let m = counts.len() as i32 - 1;
    counts
        .iter()
        .enumerate()
        .map(|(e, &c)| c as f64 * p.powi(e as i32) * (1.0 - p).powi(m - e as i32))
        .sum()
}

/// Exact `P(deficiency = 0)` for `n` in `{1, 2}`.
pub fn exact_def_zero_prob_small(n: usize, p: f64) -> Result<f64, ExperimentError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(SamplerError::Probability(p).into());
    }
    Ok(eval_edge_polynomial(&def_zero_polynomial(n)?, p))
}

/// Threshold sweep: `p_n = min(1, c * n^-beta)` for each `n` of the grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub n_grid: Vec<usize>,
    pub c: f64,
    pub beta: f64,
    pub trials: u64,
    pub master_seed: u64,
}

impl SweepSpec {
    pub fn p_for(&self, n: usize) -> f64 {
        (self.c * (n as f64).powf(-self.beta)).clamp(0.0, 1.0)
    }
}

/// One row per grid point, in ascending `n`. Row `n` is seeded with
/// `trial_seed(master_seed, n)`.
pub fn sweep_threshold(spec: &SweepSpec) -> Result<Vec<EstimateRow>, ExperimentError> {
    if !(spec.c > 0.0 && spec.beta > 0.0) {
        return Err(ExperimentError::BadSweep {
            c: spec.c,
            beta: spec.beta,
        });
    }
    if spec.trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    let mut grid = spec.n_grid.clone();
    grid.sort_unstable();
    grid.into_iter()
        .map(|n| {
            let cfg = ErTrialConfig::new(n, spec.p_for(n), trial_seed(spec.master_seed, n as u64))?;
            estimate_def_zero_prob(&cfg, spec.trials)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsolatedTailSpec {
    pub n: usize,
    pub alpha: f64,
    pub trials: u64,
    pub seed: u64,
}

impl IsolatedTailSpec {
    /// `p = (2n + alpha) / (N (N - 1))`.
    pub fn p(&self) -> f64 {
        let big_n = universe_size(self.n) as f64;
        (2.0 * self.n as f64 + self.alpha) / (big_n * (big_n - 1.0))
    }
}

/// Estimates `P(|I| >= N_n - 2n)`, the event that at most `2n` complexes are
/// used, which every deficiency-zero network satisfies.
pub fn estimate_isolated_tail(spec: &IsolatedTailSpec) -> Result<EstimateRow, ExperimentError> {
    let p = spec.p();
    if !(0.0..=1.0).contains(&p) {
        return Err(ExperimentError::AlphaOutOfRange {
            alpha: spec.alpha,
            p,
        });
    }
    if spec.trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    let cfg = ErTrialConfig::new(spec.n, p, spec.seed)?;
    let threshold = universe_size(spec.n).saturating_sub(2 * spec.n);
    let started = Instant::now();
    let successes = count_successes(spec.seed, spec.trials, |seed| {
        let net = sample_er_network(&ErTrialConfig { seed, ..cfg }).expect("validated");
        count_isolated(&net) >= threshold
    });
    let mut row = EstimateRow::new(spec.n, spec.trials, successes, spec.seed, started);
    row.p = Some(p);
    Ok(row)
}

/// Whether every reaction vector of `net` has exactly four non-zero entries.
pub fn all_four_species(net: &ReactionNetwork) -> bool {
    net.reactions().iter().all(|r| r.sparse_vector().len() == 4)
}

/// Fraction of uniform `k`-paired networks in which every reaction involves
/// four distinct species.
pub fn estimate_four_species_given_paired(
    n: usize,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<EstimateRow, ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    // surface the 2k > N_n error before going parallel
    sample_k_paired(n, k, seed)?;
    let started = Instant::now();
    let successes = count_successes(seed, trials, |s| {
        all_four_species(&sample_k_paired(n, k, s).expect("validated"))
    });
    let mut row = EstimateRow::new(n, trials, successes, seed, started);
    row.k = Some(k);
    Ok(row)
}

/// Fraction of random `D_n` matrices with `k` columns whose columns are
/// linearly independent.
pub fn estimate_matrix_independence(
    n: usize,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<EstimateRow, ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    if n < 4 {
        return Err(SamplerError::TooFewSpecies { n, min: 4 }.into());
    }
    let max = binomial(n as u64, 4);
    if k as u64 > max {
        return Err(SamplerError::TooManyColumns { n, k, max }.into());
    }
    let started = Instant::now();
    let successes = count_successes(seed, trials, |s| {
        is_columns_independent(&sample_dn_matrix(n, k, s).expect("validated"))
    });
    let mut row = EstimateRow::new(n, trials, successes, seed, started);
    row.k = Some(k);
    Ok(row)
}

/// Share of paired networks among non-empty deficiency-zero networks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionalEstimate {
    pub total_trials: u64,
    /// Trials whose network is non-empty with deficiency zero.
    pub conditioning_count: u64,
    pub paired_count: u64,
    /// `None` when nothing met the condition; `row.trials` is the
    /// conditioning count.
    pub row: Option<EstimateRow>,
}

impl ConditionalEstimate {
    pub fn estimate(&self) -> Option<f64> {
        self.row.as_ref().map(|r| r.estimate)
    }
}

fn classify(net: &ReactionNetwork) -> (bool, bool) {
    let conditioned = !net.is_empty() && has_deficiency_zero(net);
    (conditioned, conditioned && is_paired(net).0)
}

fn conditional(
    n: usize,
    p: Option<f64>,
    seed: u64,
    total: u64,
    cond: u64,
    paired: u64,
    started: Instant,
) -> ConditionalEstimate {
    let row = (cond > 0).then(|| {
        let mut row = EstimateRow::new(n, cond, paired, seed, started);
        row.p = p;
        row
    });
    ConditionalEstimate {
        total_trials: total,
        conditioning_count: cond,
        paired_count: paired,
        row,
    }
}

/// Conditional paired fraction over an explicit list of networks.
pub fn conditional_paired_fraction(nets: &[ReactionNetwork]) -> ConditionalEstimate {
    let started = Instant::now();
    let (cond, paired) = nets
        .iter()
        .map(classify)
        .fold((0, 0), |(c, q), (a, b)| (c + a as u64, q + b as u64));
    let n = nets.first().map_or(0, ReactionNetwork::num_species);
    conditional(n, None, 0, nets.len() as u64, cond, paired, started)
}

pub fn estimate_paired_given_def_zero(
    cfg: &ErTrialConfig,
    trials: u64,
) -> Result<ConditionalEstimate, ExperimentError> {
    cfg.validate()?;
    if trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    let started = Instant::now();
    let (cond, paired) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let net = sample_er_network(&ErTrialConfig {
                seed: trial_seed(cfg.seed, i),
                ..*cfg
            })
            .expect("validated");
            let (a, b) = classify(&net);
            (a as u64, b as u64)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    Ok(conditional(
        cfg.n,
        Some(cfg.p),
        cfg.seed,
        trials,
        cond,
        paired,
        started,
    ))
}
