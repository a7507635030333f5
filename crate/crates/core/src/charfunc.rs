//! Clique counts in `G(n, p)`, estimates of `|E exp(i s X_t)|`, and the
//! closed-form bounds it is compared against.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::constructions::{truncation_dimension, CliqueDecomposedHost};
use crate::error::{Error, Result};
use crate::hypercube::harper_initial_segment_edges;

/// Largest `n` for exact enumeration over all graphs on `n` vertices.
pub const MAX_EXACT_VERTICES: usize = 6;

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} is not a probability")));
    }
    Ok(())
}

fn check_nt(n: usize, t: usize) -> Result<()> {
    if t < 1 || n < t {
        return Err(Error::invalid(format!("need 1 <= t <= n, got t = {t}, n = {n}")));
    }
    Ok(())
}

/// `t`-cliques of the graph with adjacency `adj`, counted once each.
pub fn count_cliques(adj: &[Bitset], t: usize) -> u64 {
    fn rec(adj: &[Bitset], cand: &Bitset, left: usize) -> u64 {
        if left == 1 {
            return cand.count() as u64;
        }
        let mut total = 0;
        for v in cand.iter() {
            let mut next = cand.clone();
            next.and_assign(&adj[v]);
            // Only extend upwards so each clique is found once.
            for w in 0..=v {
                next.remove(w);
            }
            if next.count() + 1 >= left {
                total += rec(adj, &next, left - 1);
            }
        }
        total
    }
    if t == 0 {
        return 1;
    }
    rec(adj, &Bitset::full(adj.len()), t)
}

fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Vec<Bitset> {
    let mut adj = vec![Bitset::new(n); n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    adj
}

fn induced(adj: &[Bitset], n: usize) -> Vec<Bitset> {
    adj[..n]
        .iter()
        .map(|row| Bitset::from_indices(n, row.iter().filter(|&w| w < n)))
        .collect()
}

/// One draw of the number of `t`-cliques in `G(n, p)`.
pub fn sample_clique_count(n: usize, p: f64, t: usize, seed: u64) -> Result<u64> {
    check_nt(n, t)?;
    check_p(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(count_cliques(&random_graph(n, p, &mut rng), t))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharFuncEstimate {
    pub s: f64,
    pub modulus: f64,
    pub stderr: f64,
    pub trials: u64,
    pub n: usize,
    pub p: f64,
    pub t: usize,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Modulus of the empirical mean of `exp(i s X)` and its standard error
/// from the variances of the cosine and sine parts.
fn modulus_of(samples: &[u64], s: f64) -> (f64, f64) {
    let m = samples.len() as f64;
    let (mut sc, mut ss) = (0.0, 0.0);
    for &x in samples {
        let (sin, cos) = (s * x as f64).sin_cos();
        sc += cos;
        ss += sin;
    }
    let (mc, ms) = (sc / m, ss / m);
    if samples.len() < 2 {
        return ((mc * mc + ms * ms).sqrt(), 0.0);
    }
    let (mut vc, mut vs) = (0.0, 0.0);
    for &x in samples {
        let (sin, cos) = (s * x as f64).sin_cos();
        vc += (cos - mc).powi(2);
        vs += (sin - ms).powi(2);
    }
    let var = (vc + vs) / (m - 1.0);
    ((mc * mc + ms * ms).sqrt(), (var / m).sqrt())
}

/// `trials` independent clique counts of `G(n, p)`.
pub fn sample_clique_counts(n: usize, p: f64, t: usize, trials: u64, seed: u64) -> Result<Vec<u64>> {
    check_nt(n, t)?;
    check_p(p)?;
    if trials == 0 {
        return Err(Error::invalid("trials must be positive"));
    }
    Ok((0..trials)
        .into_par_iter()
        .map(|i| count_cliques(&random_graph(n, p, &mut trial_rng(seed, i)), t))
        .collect())
}

/// Estimate `|E exp(i s X_t)|` at every `s` in `grid` from one shared sample.
pub fn estimate_charfunc_grid(
    n: usize,
    p: f64,
    t: usize,
    grid: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<CharFuncEstimate>> {
    let samples = sample_clique_counts(n, p, t, trials, seed)?;
    Ok(grid
        .iter()
        .map(|&s| {
            let (modulus, stderr) = modulus_of(&samples, s);
            CharFuncEstimate {
                s,
                modulus,
                stderr,
                trials,
                n,
                p,
                t,
            }
        })
        .collect())
}

pub fn estimate_charfunc(n: usize, p: f64, t: usize, s: f64, trials: u64, seed: u64) -> Result<CharFuncEstimate> {
    Ok(estimate_charfunc_grid(n, p, t, &[s], trials, seed)?.remove(0))
}

/// Estimates at several `n` from coupled samples: each trial draws one
/// `G(max n, p)` and reads every smaller graph off its first vertices.
pub fn paired_modulus_sequence(
    ns: &[usize],
    p: f64,
    t: usize,
    s: f64,
    trials: u64,
    seed: u64,
) -> Result<Vec<CharFuncEstimate>> {
    let top = *ns.iter().max().ok_or_else(|| Error::invalid("no sizes given"))?;
    for &n in ns {
        check_nt(n, t)?;
    }
    check_p(p)?;
    if trials == 0 {
        return Err(Error::invalid("trials must be positive"));
    }
    let counts: Vec<Vec<u64>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let g = random_graph(top, p, &mut trial_rng(seed, i));
            ns.iter().map(|&n| count_cliques(&induced(&g, n), t)).collect()
        })
        .collect();
    Ok(ns
        .iter()
        .enumerate()
        .map(|(j, &n)| {
            let col: Vec<u64> = counts.iter().map(|row| row[j]).collect();
            let (modulus, stderr) = modulus_of(&col, s);
            CharFuncEstimate {
                s,
                modulus,
                stderr,
                trials,
                n,
                p,
                t,
            }
        })
        .collect())
}

/// Exact law of the `t`-clique count of `G(n, p)` by enumerating all
/// `2^C(n,2)` graphs; entry `x` is `P(X_t = x)`.
pub fn exact_clique_count_distribution(n: usize, p: f64, t: usize) -> Result<Vec<f64>> {
    check_nt(n, t)?;
    check_p(p)?;
    if n > MAX_EXACT_VERTICES {
        return Err(Error::SizeLimit(format!("exact enumeration needs n <= {MAX_EXACT_VERTICES}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut dist: Vec<f64> = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut adj = vec![Bitset::new(n); n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        let x = count_cliques(&adj, t) as usize;
        let e = mask.count_ones() as i32;
        let prob = p.powi(e) * (1.0 - p).powi(pairs.len() as i32 - e);
        if dist.len() <= x {
            dist.resize(x + 1, 0.0);
        }
        dist[x] += prob;
    }
    Ok(dist)
}

/// `|sum_x P(X = x) exp(i s x)|`.
pub fn exact_modulus(dist: &[f64], s: f64) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (x, &q) in dist.iter().enumerate() {
        let (sin, cos) = (s * x as f64).sin_cos();
        re += q * cos;
        im += q * sin;
    }
    (re * re + im * im).sqrt()
}

/// Distance from `x` to the nearest integer.
pub fn dist_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BernoulliBound {
    /// `|p e^{it} + 1 - p|`.
    pub actual: f64,
    /// `1 - 8 p (1-p) ||t / 2 pi||^2`.
    pub bound: f64,
}

pub fn bernoulli_char_bound(p: f64, t: f64) -> Result<BernoulliBound> {
    check_p(p)?;
    let re = 1.0 - p + p * t.cos();
    let im = p * t.sin();
    let r = dist_to_integer(t / (2.0 * PI));
    Ok(BernoulliBound {
        actual: (re * re + im * im).sqrt(),
        bound: 1.0 - 8.0 * p * (1.0 - p) * r * r,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RainbowBoundInput {
    /// Number of rainbow `t`-cliques of the partition.
    pub k_rb: u64,
    pub p: f64,
    pub t: usize,
    pub s: f64,
}

impl RainbowBoundInput {
    /// `C(t,2) - 1`.
    pub fn k(&self) -> u32 {
        (self.t * (self.t - 1) / 2 - 1) as u32
    }

    /// `(2 p (1-p))^k`.
    pub fn q(&self) -> f64 {
        (2.0 * self.p * (1.0 - self.p)).powi(self.k() as i32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RainbowBound {
    /// `exp(-p(1-p) s^2 K q / pi^2) + 2 exp(-K q / 10)`, before the root.
    pub display: f64,
    /// `display^(1/2^k)`, not clipped.
    pub root: f64,
    /// `min(root, 1)`: the bound on `|E exp(i s X_t)|`.
    pub bound_on_phi: f64,
    /// Always `"2^k-th root"`; the normalisation applied to `display`.
    pub normalisation: &'static str,
}

pub fn rainbow_final_bound(inp: &RainbowBoundInput) -> Result<RainbowBound> {
    if !(inp.p > 0.0 && inp.p < 1.0) {
        return Err(Error::invalid(format!("p = {} must lie strictly between 0 and 1", inp.p)));
    }
    if inp.t < 3 {
        return Err(Error::invalid(format!("t = {} must be at least 3", inp.t)));
    }
    if !(inp.s.abs() <= PI) {
        return Err(Error::invalid(format!("|s| = {} exceeds pi", inp.s.abs())));
    }
    let kq = inp.k_rb as f64 * inp.q();
    let p = inp.p;
    let display = (-p * (1.0 - p) * inp.s * inp.s * kq / (PI * PI)).exp() + 2.0 * (-kq / 10.0).exp();
    let root = display.powf(0.5f64.powi(inp.k() as i32));
    Ok(RainbowBound {
        display,
        root,
        bound_on_phi: root.min(1.0),
        normalisation: "2^k-th root",
    })
}

/// Largest rainbow `t`-clique count we can exhibit on `n` vertices: the
/// truncated hypercube colouring for `t = 3`, otherwise disjoint cliques or
/// the given host, whichever is larger.
pub fn best_known_rainbow_count(n: usize, t: usize, host: Option<&CliqueDecomposedHost>) -> Result<u64> {
    if t < 3 || n < t {
        return Err(Error::invalid(format!("need 3 <= t <= n, got t = {t}, n = {n}")));
    }
    if t == 3 {
        let m = truncation_dimension(n);
        return harper_initial_segment_edges(m, (n - m as usize) as u64);
    }
    let from_host = host
        .filter(|h| h.t() == t && h.vertex_bound() <= n)
        .map_or(0, |h| h.cliques().len() as u64);
    Ok(((n / t) as u64).max(from_host))
}
