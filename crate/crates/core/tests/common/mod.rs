//! Independent oracles and generators shared by the integration tests.
//! Nothing here calls into the rank or deficiency code under test.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use defzero::complex_space::{index_to_complex, universe_size};
use defzero::er_sampler::{sample_er_network, sample_k_paired, ErTrialConfig};
use defzero::{Reaction, ReactionNetwork};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Upper 1e-3 quantiles of the chi-square law, keyed by degrees of freedom.
pub const CHI2_999_DF2: f64 = 13.815510557964274;
pub const CHI2_999_DF7: f64 = 24.321886347856854;
pub const CHI2_999_DF14: f64 = 36.12327368039813;

/// Prime used by the modular rank oracle. For matrices whose minors are
/// bounded by `8^5` it can never turn a non-zero minor into zero.
pub const ORACLE_PRIME: i64 = 131_071;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<i64>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0] as i128,
        2 => m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128,
        k => {
            let mut det = 0i128;
            for j in 0..k {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                det += sign * m[0][j] as i128 * laplace_det(&minor);
            }
            det
        }
    }
}

fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, k, &mut Vec::new(), &mut out);
    out
}

/// Rank as the size of the largest non-vanishing square minor.
pub fn minor_rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for k in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                    .collect();
                if laplace_det(&sub) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

fn inv_mod(a: i64, p: i64) -> i64 {
    let (mut base, mut exp, mut acc) = (a.rem_euclid(p), p - 2, 1i64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Rank over `GF(p)` by plain Gauss–Jordan elimination.
pub fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|v| v.rem_euclid(p)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][c], p);
        for v in a[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                let pivot = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `n x |R|` matrix of reaction vectors, built from the species counts
/// of each side.
pub fn reaction_columns(net: &ReactionNetwork) -> Vec<Vec<i64>> {
    let n = net.num_species();
    let mut m = vec![vec![0i64; net.reactions().len()]; n];
    for (j, r) in net.reactions().iter().enumerate() {
        for &(s, c) in r.product().terms() {
            m[s.get() as usize - 1][j] += c as i64;
        }
        for &(s, c) in r.source().terms() {
            m[s.get() as usize - 1][j] -= c as i64;
        }
    }
    m
}

/// `(|C|, l, s)` computed with breadth-first search and the modular rank.
pub fn oracle_counts(net: &ReactionNetwork) -> (usize, usize, usize) {
    let mut ids = HashMap::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    for r in net.reactions() {
        let mut id = |v| {
            let next = ids.len();
            let id = *ids.entry(v).or_insert(next);
            if id == adj.len() {
                adj.push(Vec::new());
            }
            id
        };
        let a = id(r.source().clone());
        let b = id(r.product().clone());
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; adj.len()];
    let mut classes = 0;
    for start in 0..adj.len() {
        if seen[start] {
            continue;
        }
        classes += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (
        adj.len(),
        classes,
        rank_mod(&reaction_columns(net), ORACLE_PRIME),
    )
}

/// Kind of random network drawn by [`random_network`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetKind {
    ErdosRenyi,
    Paired,
    Directed,
}

pub const ALL_KINDS: [NetKind; 3] = [NetKind::ErdosRenyi, NetKind::Paired, NetKind::Directed];

/// Random binary network on `n` species. ER draws target a handful of edges
/// per species so that both zero and positive deficiency show up.
pub fn random_network(n: usize, kind: NetKind, seed: u64) -> ReactionNetwork {
    let mut rng = rng(seed);
    let big_n = universe_size(n);
    match kind {
        NetKind::ErdosRenyi => {
            let pairs = (big_n * (big_n - 1) / 2) as f64;
            let target = rng.random_range(1..=2 * n + 2) as f64;
            let p = (target / pairs).min(1.0);
            sample_er_network(&ErTrialConfig::new(n, p, rng.random()).unwrap()).unwrap()
        }
        NetKind::Paired => {
            let k = rng.random_range(1..=(n + 2).min(big_n / 2));
            sample_k_paired(n, k, rng.random()).unwrap()
        }
        NetKind::Directed => {
            let count = rng.random_range(1..=2 * n + 1);
            let mut net = ReactionNetwork::empty(n);
            for _ in 0..count {
                if let Some(r) = random_new_reaction(&net, &mut rng) {
                    net = net.add_reaction(r).unwrap();
                }
            }
            net
        }
    }
}

/// A random reaction between two distinct complexes of the universe that
/// is not yet in `net`, or `None` after a few unlucky draws.
pub fn random_new_reaction(net: &ReactionNetwork, rng: &mut impl Rng) -> Option<Reaction> {
    let n = net.num_species();
    let big_n = universe_size(n);
    for _ in 0..32 {
        let u = rng.random_range(0..big_n);
        let v = rng.random_range(0..big_n);
        if u == v {
            continue;
        }
        let r = Reaction::between(
            index_to_complex(n, u).unwrap(),
            index_to_complex(n, v).unwrap(),
        )
        .unwrap();
        if !net.contains(&r) {
            return Some(r);
        }
    }
    None
}

/// Pearson statistic of `observed` against the probabilities `expected`.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> f64 {
    let total: u64 = observed.iter().sum();
    observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let e = e * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum()
}

/// Homogeneity statistic for two samples over the same categories.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> f64 {
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    a.iter()
        .zip(b)
        .filter(|&(&x, &y)| x + y > 0)
        .map(|(&x, &y)| {
            let pooled = (x + y) as f64 / (na + nb);
            let (ea, eb) = (pooled * na, pooled * nb);
            (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb
        })
        .sum()
}

/// Exact count of deficiency-zero edge sets of each size on `C^0_n`,
/// enumerated with the oracles above.
pub fn oracle_def_zero_polynomial(n: usize) -> Vec<u64> {
    let big_n = universe_size(n);
    let pairs: Vec<(usize, usize)> = (0..big_n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .collect();
    let mut counts = vec![0u64; pairs.len() + 1];
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let net = ReactionNetwork::from_edge_list(n, &edges).unwrap();
        let (c, l, s) = oracle_counts(&net);
        if c == l + s {
            counts[edges.len()] += 1;
        }
    }
    counts
}

/// Evaluates `sum_e counts[e] p^e (1-p)^(M-e)`.
pub fn edge_polynomial(counts: &[u64], p: f64) -> f64 {
    let m = counts.len() as i32 - 1;
    counts
        .iter()
        .enumerate()
        .map(|(e, &c)| c as f64 * p.powi(e as i32) * (1.0 - p).powi(m - e as i32))
        .sum()
}

/// Species-count vectors of every complex of molecularity at most two.
pub fn universe_vectors(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; n]];
    for a in 0..n {
        let mut v = vec![0; n];
        v[a] = 1;
        out.push(v);
    }
    for a in 0..n {
        for b in a..n {
            let mut v = vec![0; n];
            v[a] += 1;
            v[b] += 1;
            out.push(v);
        }
    }
    out
}

/// Probability that a uniform pair of distinct complexes of `C^0_n` differs
/// in exactly four species.
pub fn four_species_pair_fraction(n: usize) -> f64 {
    let vs = universe_vectors(n);
    let mut hits = 0u64;
    let mut total = 0u64;
    for i in 0..vs.len() {
        for j in 0..i {
            total += 1;
            if vs[i].iter().zip(&vs[j]).filter(|(a, b)| a != b).count() == 4 {
                hits += 1;
            }
        }
    }
    hits as f64 / total as f64
}

/// Canonical edge set of a network built from an edge list: the set of
/// unordered vertex pairs, in display form.
pub fn edge_key(net: &ReactionNetwork) -> Vec<(String, String)> {
    let mut set = HashSet::new();
    for r in net.reactions() {
        let (a, b) = (r.source().to_string(), r.product().to_string());
        set.insert(if a <= b { (a, b) } else { (b, a) });
    }
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort();
    v
}
