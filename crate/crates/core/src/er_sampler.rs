//! Seeded random generators.
//!
//! All randomness comes from [`TrialRng`] (ChaCha8) seeded with
//! `seed_from_u64`. Batched experiments derive one seed per trial with
//! [`trial_seed`], so results do not depend on how trials are scheduled.
//!
//! Erdős–Rényi graphs on the complex universe are drawn sparsely: the edge
//! count is `Binomial(M, p)` with `M = N(N-1)/2`, the edge positions are a
//! uniform `E`-subset of `0..M` (Floyd's algorithm), and each position is
//! unranked into a vertex pair in colexicographic order
//! (`r = v(v-1)/2 + u`, `u < v`). The result has the same law as `M`
//! independent coin flips.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex_space::universe_size;
use crate::network_core::ReactionNetwork;
use crate::rank::{exact_rank, IntMatrix};

pub type TrialRng = ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplerError {
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("species count must be at least {min}, got {n}")]
    TooFewSpecies { n: usize, min: usize },
    #[error("{k}-paired network needs {need} complexes but only {have} exist")]
    TooManyPairs { k: usize, need: usize, have: usize },
    #[error("requested {k} distinct 4-subsets of {n} species, only {max} exist")]
    TooManyColumns { n: usize, k: usize, max: u64 },
    #[error("invalid D_n column: {0}")]
    BadColumn(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErTrialConfig {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl ErTrialConfig {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self, SamplerError> {
        let cfg = Self { n, p, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SamplerError> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(SamplerError::Probability(self.p));
        }
        if self.n < 1 {
            return Err(SamplerError::TooFewSpecies { n: self.n, min: 1 });
        }
        Ok(())
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

pub fn rng_from_seed(seed: u64) -> TrialRng {
    TrialRng::seed_from_u64(seed)
}

/// Number of unordered vertex pairs of the complex universe.
pub fn pair_count(n: usize) -> u64 {
    let big_n = universe_size(n) as u64;
    big_n * (big_n - 1) / 2
}

/// Colexicographic unranking of an unordered pair `u < v`.
pub fn unrank_pair(r: u64) -> (usize, usize) {
    let mut v = ((1.0 + (1.0 + 8.0 * r as f64).sqrt()) / 2.0) as u64;
    while v * (v - 1) / 2 > r {
        v -= 1;
    }
    while (v + 1) * v / 2 <= r {
        v += 1;
    }
    let u = r - v * (v - 1) / 2;
    (u as usize, v as usize)
}

pub fn rank_pair(u: usize, v: usize) -> u64 {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    (v as u64) * (v as u64 - 1) / 2 + u as u64
}

/// Uniform `k`-subset of `0..m`, returned sorted.
fn floyd_sample<R: Rng>(rng: &mut R, m: u64, k: u64) -> Vec<u64> {
    debug_assert!(k <= m);
    let mut chosen: HashSet<u64> = HashSet::with_capacity(k as usize);
    for j in m - k..m {
        let t = rng.random_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut out: Vec<u64> = chosen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Edges of `G(N_n, p)` as sorted `(u, v)` complex-index pairs.
pub fn sample_er_edges(cfg: &ErTrialConfig) -> Vec<(usize, usize)> {
    let mut rng = rng_from_seed(cfg.seed);
    let m = pair_count(cfg.n);
    let e = if cfg.p <= 0.0 {
        0
    } else if cfg.p >= 1.0 {
        m
    } else {
        Binomial::new(m, cfg.p)
            .expect("p in (0, 1)")
            .sample(&mut rng)
    };
    let positions = if e == m {
        (0..m).collect()
    } else {
        floyd_sample(&mut rng, m, e)
    };
    positions.into_iter().map(unrank_pair).collect()
}

/// Reference sampler: one Bernoulli trial per vertex pair, `O(N^2)`.
pub fn sample_er_edges_naive(cfg: &ErTrialConfig) -> Vec<(usize, usize)> {
    let mut rng = rng_from_seed(cfg.seed);
    let m = pair_count(cfg.n);
    (0..m)
        .filter(|_| rng.random_bool(cfg.p))
        .map(unrank_pair)
        .collect()
}

pub fn sample_er_network(cfg: &ErTrialConfig) -> Result<ReactionNetwork, SamplerError> {
    cfg.validate()?;
    let edges = sample_er_edges(cfg);
    Ok(ReactionNetwork::from_edge_list(cfg.n, &edges).expect("sampled edges are valid"))
}

/// Vertices of the complex universe that take part in no reaction.
/// Meaningful for binary networks only.
pub fn count_isolated(net: &ReactionNetwork) -> usize {
    universe_size(net.num_species()) - net.vertices().len()
}

/// Uniformly random `k`-paired network on the complex universe.
pub fn sample_k_paired(n: usize, k: usize, seed: u64) -> Result<ReactionNetwork, SamplerError> {
    let big_n = universe_size(n);
    if 2 * k > big_n {
        return Err(SamplerError::TooManyPairs {
            k,
            need: 2 * k,
            have: big_n,
        });
    }
    let mut rng = rng_from_seed(seed);
    let picks = distinct_sequence(&mut rng, big_n, 2 * k);
    let edges: Vec<(usize, usize)> = picks.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    Ok(ReactionNetwork::from_edge_list(n, &edges).expect("distinct valid indices"))
}

/// `len` distinct values of `0..m` in uniformly random order.
fn distinct_sequence<R: Rng>(rng: &mut R, m: usize, len: usize) -> Vec<usize> {
    if 2 * len <= m {
        let mut seen = HashSet::with_capacity(len);
        let mut out = Vec::with_capacity(len);
        while out.len() < len {
            let x = rng.random_range(0..m);
            if seen.insert(x) {
                out.push(x);
            }
        }
        out
    } else {
        let mut all: Vec<usize> = (0..m).collect();
        for i in 0..len {
            let j = rng.random_range(i..m);
            all.swap(i, j);
        }
        all.truncate(len);
        all
    }
}

/// One column of a [`DnMatrix`]: four distinct rows (0-based, ascending) and
/// their signs, two `+1` and two `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DnColumn {
    pub support: [usize; 4],
    pub signs: [i8; 4],
}

impl DnColumn {
    pub fn new(support: [usize; 4], signs: [i8; 4]) -> Result<Self, SamplerError> {
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SamplerError::BadColumn(format!(
                "support {support:?} must be strictly increasing"
            )));
        }
        let plus = signs.iter().filter(|&&s| s == 1).count();
        let minus = signs.iter().filter(|&&s| s == -1).count();
        if plus != 2 || minus != 2 {
            return Err(SamplerError::BadColumn(format!(
                "signs {signs:?} must be two +1 and two -1"
            )));
        }
        Ok(Self { support, signs })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnMatrix {
    n: usize,
    columns: Vec<DnColumn>,
}

impl DnMatrix {
    /// Builds a matrix from explicit columns. Supports need not be distinct,
    /// which lets tests construct degenerate inputs.
    pub fn from_columns(n: usize, columns: Vec<DnColumn>) -> Result<Self, SamplerError> {
        if let Some(c) = columns.iter().find(|c| c.support[3] >= n) {
            return Err(SamplerError::BadColumn(format!(
                "support {:?} exceeds {n} rows",
                c.support
            )));
        }
        Ok(Self { n, columns })
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[DnColumn] {
        &self.columns
    }

    pub fn has_distinct_supports(&self) -> bool {
        let set: HashSet<[usize; 4]> = self.columns.iter().map(|c| c.support).collect();
        set.len() == self.columns.len()
    }

    /// Dense `n x k` matrix.
    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.columns.len());
        for (j, c) in self.columns.iter().enumerate() {
            for (&r, &s) in c.support.iter().zip(&c.signs) {
                m.set(r, j, s as i64);
            }
        }
        m
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `k` columns with distinct supports drawn uniformly without replacement
/// from the 4-subsets of the `n` rows. The positive pair of each column is
/// one of the six 2-subsets of its support, chosen uniformly, which is the
/// law of the reaction vector of a random reaction between two disjoint
/// mixed binary complexes.
pub fn sample_dn_matrix(n: usize, k: usize, seed: u64) -> Result<DnMatrix, SamplerError> {
    if n < 4 {
        return Err(SamplerError::TooFewSpecies { n, min: 4 });
    }
    let max = binomial(n as u64, 4);
    if k as u64 > max {
        return Err(SamplerError::TooManyColumns { n, k, max });
    }
    let mut rng = rng_from_seed(seed);
    let supports: Vec<[usize; 4]> = if 2 * k as u64 <= max {
        let mut seen = HashSet::with_capacity(k);
        let mut out = Vec::with_capacity(k);
        while out.len() < k {
            let s = floyd_sample(&mut rng, n as u64, 4);
            let s = [s[0] as usize, s[1] as usize, s[2] as usize, s[3] as usize];
            if seen.insert(s) {
                out.push(s);
            }
        }
        out
    } else {
        let mut all = all_four_subsets(n);
        for i in 0..k {
            let j = rng.random_range(i..all.len());
            all.swap(i, j);
        }
        all.truncate(k);
        all
    };

    const POSITIVE_PAIRS: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
    let columns = supports
        .into_iter()
        .map(|support| {
            let [a, b] = POSITIVE_PAIRS[rng.random_range(0..6)];
            let mut signs = [-1i8; 4];
            signs[a] = 1;
            signs[b] = 1;
            DnColumn { support, signs }
        })
        .collect();
    Ok(DnMatrix { n, columns })
}

fn all_four_subsets(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Whether the columns are linearly independent over the rationals.
pub fn is_columns_independent(m: &DnMatrix) -> bool {
    m.cols() <= m.rows() && exact_rank(&m.to_matrix()) == m.cols()
}
