//! Monte-Carlo checks of the random reductions: projecting to three colours,
//! the random `t`-partite subgraph, and the thinning used for the crossing
//! bound. Every trial draws from its own ChaCha stream keyed by
//! `(seed, trial index)`, so summaries do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::colouring::{pair_count, Colour, ColourBitsets, CompleteColouring, GREEN};
use crate::error::{Error, Result};
use crate::hypercube::half_x_log_x;
use crate::rainbow::{crossing_count_bits, disjoint_sets, enumerate_rainbow_cliques, RainbowCliqueSet};
use crate::search::GallaiWalk;

/// How many leading trials re-run the slow path as a cross-check.
pub const CROSS_CHECK_TRIALS: u64 = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialSummary {
    pub trials: u64,
    pub mean: f64,
    pub stderr: f64,
    pub target: f64,
    /// What `target` is, e.g. `"2 rho / 9"`.
    pub target_kind: String,
    /// `(mean - target) / stderr`; `None` when `stderr` is 0.
    pub z_score: Option<f64>,
    pub seed: u64,
}

impl TrialSummary {
    fn from_values(values: &[f64], target: f64, target_kind: &str, seed: u64) -> Self {
        let trials = values.len() as u64;
        let mean = values.iter().sum::<f64>() / trials as f64;
        let var = if trials > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (trials - 1) as f64
        } else {
            0.0
        };
        let stderr = (var / trials as f64).sqrt();
        TrialSummary {
            trials,
            mean,
            stderr,
            target,
            target_kind: target_kind.to_string(),
            z_score: (stderr > 0.0).then(|| (mean - target) / stderr),
            seed,
        }
    }

    /// Whether the mean is within `sigma` standard errors of the target. With
    /// no spread at all the mean must equal the target.
    pub fn within(&self, sigma: f64) -> bool {
        match self.z_score {
            Some(z) => z.abs() <= sigma,
            None => (self.mean - self.target).abs() <= 1e-12 * self.target.abs().max(1.0),
        }
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::invalid("trials must be positive"));
    }
    Ok(())
}

/// Run `trials` independent trials in parallel, collecting per-trial values.
fn run_trials(trials: u64, seed: u64, f: impl Fn(u64, &mut ChaCha8Rng) -> Result<f64> + Sync) -> Result<Vec<f64>> {
    (0..trials)
        .into_par_iter()
        .map(|i| f(i, &mut trial_rng(seed, i)))
        .collect()
}

fn require_almost_gallai(c: &CompleteColouring, t: usize) -> Result<RainbowCliqueSet> {
    let set = enumerate_rainbow_cliques(c, t)?;
    if let Some(w) = &set.sharing_witness {
        return Err(Error::PreconditionViolation(format!(
            "rainbow cliques {:?} and {:?} share the edge {:?}",
            set.cliques[w.first], set.cliques[w.second], w.edge
        )));
    }
    Ok(set)
}

/// A uniform map from the colours of `c` to `0..3`.
fn draw_projection<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<Colour> {
    (0..k).map(|_| rng.gen_range(0..3)).collect()
}

/// Send every colour of `c` independently to one of three colours.
pub fn project_to_3_colours(c: &CompleteColouring, seed: u64) -> Result<CompleteColouring> {
    let map = draw_projection(&mut ChaCha8Rng::seed_from_u64(seed), c.k());
    c.map_colours(3, &map)
}

/// Mean number of rainbow triangles after a random projection to three
/// colours, against the target `2 rho(c) / 9`.
pub fn retention_check_3colour(c: &CompleteColouring, trials: u64, seed: u64) -> Result<TrialSummary> {
    check_trials(trials)?;
    let set = require_almost_gallai(c, 3)?;
    let colours: Vec<[Colour; 3]> = set
        .cliques
        .iter()
        .map(|k| [c.colour(k[0], k[1]), c.colour(k[0], k[2]), c.colour(k[1], k[2])])
        .collect();
    let values = run_trials(trials, seed, |i, rng| {
        let map = draw_projection(rng, c.k());
        let kept = colours
            .iter()
            .filter(|cs| {
                let [a, b, d] = cs.map(|q| map[q as usize]);
                a != b && b != d && a != d
            })
            .count();
        if i < CROSS_CHECK_TRIALS {
            let projected = c.map_colours(3, &map)?;
            let direct = enumerate_rainbow_cliques(&projected, 3)?;
            if !direct.edge_disjoint {
                return Err(Error::Invariant("projection broke the almost-Gallai property".into()));
            }
            if direct.len() != kept {
                return Err(Error::Invariant(format!(
                    "trial {i}: {} rainbow triangles after projection, fast path says {kept}",
                    direct.len()
                )));
            }
            if direct.cliques.iter().any(|k| set.cliques.binary_search(k).is_err()) {
                return Err(Error::Invariant("a new rainbow triangle appeared".into()));
            }
        }
        Ok(kept as f64)
    })?;
    let target = 2.0 * set.len() as f64 / 9.0;
    Ok(TrialSummary::from_values(&values, target, "2 rho / 9", seed))
}

fn binomial2(t: usize) -> usize {
    t * (t - 1) / 2
}

/// `t! / t^t * C(t,2)^(-C(t,2))`: the chance that a fixed rainbow `t`-clique
/// survives the random partition.
pub fn tpartite_retention_probability(t: usize) -> f64 {
    let p = binomial2(t) as f64;
    let fact: f64 = (1..=t).map(|i| i as f64).product();
    fact / (t as f64).powi(t as i32) * p.powf(-p)
}

/// Class of the pair of parts `{i, j}`, `i < j`, in lexicographic order.
fn part_pair(t: usize, i: usize, j: usize) -> usize {
    let (a, b) = (i.min(j), i.max(j));
    a * (2 * t - a - 1) / 2 + (b - a - 1)
}

/// Number of `t`-cliques in the random subgraph: split the vertices into
/// `t` parts and the colours into `C(t,2)` classes; keep `uv` when its colour
/// lies in the class of its pair of parts. Every clique found must be
/// rainbow in `c`.
fn tpartite_trial(c: &CompleteColouring, t: usize, part: &[usize], class: &[usize]) -> Result<usize> {
    let n = c.n();
    let mut adj = vec![Bitset::new(n); n];
    for (u, v, col) in c.pairs() {
        let (pu, pv) = (part[u], part[v]);
        if pu != pv && class[col as usize] == part_pair(t, pu, pv) {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    // A clique takes one vertex from each part; choose them in part order.
    let mut by_part = vec![Bitset::new(n); t];
    for v in 0..n {
        by_part[part[v]].insert(v);
    }
    let mut count = 0;
    let mut chosen = Vec::with_capacity(t);
    let mut failure = None;
    fn rec(
        adj: &[Bitset],
        by_part: &[Bitset],
        cand: Bitset,
        depth: usize,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let mut here = cand.clone();
        here.and_assign(&by_part[depth]);
        for v in here.iter() {
            chosen.push(v);
            if depth + 1 == by_part.len() {
                visit(chosen);
            } else {
                let mut next = cand.clone();
                next.and_assign(&adj[v]);
                rec(adj, by_part, next, depth + 1, chosen, visit);
            }
            chosen.pop();
        }
    }
    rec(&adj, &by_part, Bitset::full(n), 0, &mut chosen, &mut |k| {
        count += 1;
        let mut cols: Vec<Colour> = Vec::with_capacity(binomial2(t));
        for i in 0..k.len() {
            for j in i + 1..k.len() {
                cols.push(c.colour(k[i], k[j]));
            }
        }
        cols.sort_unstable();
        if cols.windows(2).any(|w| w[0] == w[1]) && failure.is_none() {
            failure = Some(k.to_vec());
        }
    });
    if let Some(k) = failure {
        return Err(Error::Invariant(format!("clique {k:?} of the random subgraph is not rainbow")));
    }
    Ok(count)
}

/// Mean number of `t`-cliques surviving the random `t`-partite split,
/// against `rho_t(c)` times [`tpartite_retention_probability`].
pub fn tpartite_retention_check(c: &CompleteColouring, t: usize, trials: u64, seed: u64) -> Result<TrialSummary> {
    check_trials(trials)?;
    let set = require_almost_gallai(c, t)?;
    let classes = binomial2(t);
    let values = run_trials(trials, seed, |i, rng| {
        let part: Vec<usize> = (0..c.n()).map(|_| rng.gen_range(0..t)).collect();
        let class: Vec<usize> = (0..c.k()).map(|_| rng.gen_range(0..classes)).collect();
        let kept = set
            .cliques
            .iter()
            .filter(|k| {
                let mut parts: Vec<usize> = k.iter().map(|&v| part[v]).collect();
                parts.sort_unstable();
                if parts.windows(2).any(|w| w[0] == w[1]) {
                    return false;
                }
                (0..t).all(|a| {
                    (a + 1..t).all(|b| {
                        class[c.colour(k[a], k[b]) as usize] == part_pair(t, part[k[a]], part[k[b]])
                    })
                })
            })
            .count();
        if i < CROSS_CHECK_TRIALS {
            let direct = tpartite_trial(c, t, &part, &class)?;
            if direct != kept {
                return Err(Error::Invariant(format!(
                    "trial {i}: random subgraph has {direct} cliques, fast path says {kept}"
                )));
            }
        }
        Ok(kept as f64)
    })?;
    let target = set.len() as f64 * tpartite_retention_probability(t);
    Ok(TrialSummary::from_values(&values, target, "rho_t t! t^-t C(t,2)^-C(t,2)", seed))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThinningSummary {
    /// Target is the exact expectation of the thinned crossing count.
    pub summary: TrialSummary,
    /// Crossing count on the full `X`, `Y`.
    pub tau: usize,
    /// `tau / (e (d+1)^2)`, which the mean must reach.
    pub lower_bound: f64,
}

impl ThinningSummary {
    /// The lower bound is met within `sigma` standard errors.
    pub fn meets_lower_bound(&self, sigma: f64) -> bool {
        self.summary.mean + sigma * self.summary.stderr + 1e-12 >= self.lower_bound
    }
}

/// One draw of `S_X` (each `x` kept with probability `1/(d+1)`) and `S_Y`
/// (the `y` with no green neighbour in `S_X`).
pub fn sample_thinning<R: Rng + ?Sized>(
    c: &CompleteColouring,
    x: &[usize],
    y: &[usize],
    d: usize,
    rng: &mut R,
) -> (Vec<usize>, Vec<usize>) {
    let p = 1.0 / (d + 1) as f64;
    let sx: Vec<usize> = x.iter().copied().filter(|_| rng.gen_bool(p)).collect();
    let sy = y
        .iter()
        .copied()
        .filter(|&yv| !sx.iter().any(|&xv| c.colour(xv, yv) == GREEN))
        .collect();
    (sx, sy)
}

/// Green degree of each `y` into `X`, failing if one exceeds `d`.
fn green_degrees(bits: &ColourBitsets, xs: &Bitset, y: &[usize], d: usize) -> Result<Vec<usize>> {
    y.iter()
        .map(|&yv| {
            let g = bits
                .neighbours(yv, GREEN)
                .iter()
                .zip(xs.words())
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum();
            if g > d {
                return Err(Error::PreconditionViolation(format!(
                    "vertex {yv} of Y has {g} green neighbours in X, more than d = {d}"
                )));
            }
            Ok(g)
        })
        .collect()
}

/// Exact `E[tau(S_X, S_Y)]`: a triangle `y x1 x2` survives with probability
/// `p^2 (1-p)^g(y)`, `g(y)` the green degree of `y` into `X`.
pub fn thinning_expectation(c: &CompleteColouring, x: &[usize], y: &[usize], d: usize) -> Result<f64> {
    if c.k() != 3 {
        return Err(Error::invalid("thinning needs a 3-colouring"));
    }
    let (xs, _) = disjoint_sets(c.n(), x, y)?;
    let bits = ColourBitsets::new(c);
    let degrees = green_degrees(&bits, &xs, y, d)?;
    let p = 1.0 / (d + 1) as f64;
    let mut total = 0.0;
    for (&yv, &g) in y.iter().zip(&degrees) {
        let single = Bitset::from_indices(c.n(), [yv]);
        let tau_y = crossing_count_bits(&bits, &xs, &single, GREEN);
        total += tau_y as f64 * p * p * (1.0 - p).powi(g as i32);
    }
    Ok(total)
}

/// Thin `X` and `Y` at random and count crossing rainbow triangles with a
/// green edge inside `S_X`. Each trial asserts the green-free bound
/// `tau(S_X, S_Y) <= (1/2)|S_X| log2 |S_X|`.
pub fn thinning_check(
    c: &CompleteColouring,
    x: &[usize],
    y: &[usize],
    d: usize,
    trials: u64,
    seed: u64,
) -> Result<ThinningSummary> {
    check_trials(trials)?;
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    if c.k() != 3 {
        return Err(Error::invalid("thinning needs a 3-colouring"));
    }
    require_almost_gallai(c, 3)?;
    let n = c.n();
    let (xs, ys) = disjoint_sets(n, x, y)?;
    let bits = ColourBitsets::new(c);
    green_degrees(&bits, &xs, y, d)?;
    let tau = crossing_count_bits(&bits, &xs, &ys, GREEN);
    let exact = thinning_expectation(c, x, y, d)?;
    let values = run_trials(trials, seed, |i, rng| {
        let (sx, sy) = sample_thinning(c, x, y, d, rng);
        let sxs = Bitset::from_indices(n, sx.iter().copied());
        let sys = Bitset::from_indices(n, sy.iter().copied());
        let thinned = crossing_count_bits(&bits, &sxs, &sys, GREEN);
        let bound = half_x_log_x(sx.len());
        if thinned as f64 > bound + 1e-9 {
            return Err(Error::Invariant(format!(
                "trial {i}: {thinned} crossing triangles exceed the green-free bound {bound}"
            )));
        }
        Ok(thinned as f64)
    })?;
    let lower_bound = tau as f64 / (std::f64::consts::E * ((d + 1) * (d + 1)) as f64);
    Ok(ThinningSummary {
        summary: TrialSummary::from_values(&values, exact, "exact thinned expectation", seed),
        tau,
        lower_bound,
    })
}

/// A random almost `t`-Gallai `k`-colouring: start monochromatic and make
/// `sweeps` passes over the pairs in random order, recolouring each to a
/// random colour whenever that keeps the property.
pub fn random_almost_gallai<R: Rng + ?Sized>(
    n: usize,
    t: usize,
    k: usize,
    sweeps: usize,
    rng: &mut R,
) -> Result<CompleteColouring> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let mut walk = GallaiWalk::new(CompleteColouring::new(n, k, 0)?, t)?;
    let mut order: Vec<usize> = (0..pair_count(n)).collect();
    for _ in 0..sweeps {
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
        for &idx in &order {
            let (u, v) = crate::colouring::pair_from_index(n, idx);
            let col = rng.gen_range(0..k as Colour);
            walk.try_recolour(u, v, col, |_, _| true);
        }
    }
    Ok(walk.into_colouring())
}
