//! Exact extremal values for small `n` and a local-search heuristic.
//!
//! `exact_tau` maximises the number of rainbow `t`-cliques over almost
//! `t`-Gallai `k`-colourings of `K_n`; `exact_gamma` maximises monochromatic
//! triangles over good red/blue colourings of a complete tripartite graph.
//! Both assign edges in lexicographic order, so a clique is complete exactly
//! when its last edge `(second largest, largest)` is assigned.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::colouring::{pair_count, pair_index, Colour, CompleteColouring};
use crate::constructions::{gadget_colouring, truncated_hypercube_colouring, CliqueDecomposedHost};
use crate::error::{Error, Result};
use crate::rainbow::{enumerate_rainbow_cliques, rainbow_cliques_through};
use crate::tripartite::{TripartiteColouring, TRI_BLUE, TRI_RED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    Exhaustive,
    BranchAndBound,
    /// Heuristic values are certified lower bounds only.
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Complete(CompleteColouring),
    Tripartite(TripartiteColouring),
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub value: usize,
    #[serde(skip)]
    pub witness: Witness,
    pub nodes_explored: u64,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
    pub method: SearchMethod,
    /// For good tripartite colourings: the largest single-colour count.
    pub max_single_colour: Option<usize>,
}

fn secs<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SearchResult {
    pub fn complete_witness(&self) -> Option<&CompleteColouring> {
        match &self.witness {
            Witness::Complete(c) => Some(c),
            Witness::Tripartite(_) => None,
        }
    }

    pub fn tripartite_witness(&self) -> Option<&TripartiteColouring> {
        match &self.witness {
            Witness::Tripartite(c) => Some(c),
            Witness::Complete(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_vertices: usize,
    /// Abort with a size-limit error after this many nodes.
    pub max_nodes: Option<u64>,
}

impl SearchLimits {
    pub const TAU: SearchLimits = SearchLimits {
        max_vertices: 8,
        max_nodes: None,
    };
    pub const GAMMA: SearchLimits = SearchLimits {
        max_vertices: 9,
        max_nodes: None,
    };
}

/// Largest colour count for exact search (colour sets are `u64` masks).
pub const MAX_SEARCH_COLOURS: usize = 32;

struct NodeBudget {
    nodes: AtomicU64,
    cap: Option<u64>,
    exhausted: AtomicBool,
}

impl NodeBudget {
    fn new(cap: Option<u64>) -> Self {
        NodeBudget {
            nodes: AtomicU64::new(0),
            cap,
            exhausted: AtomicBool::new(false),
        }
    }

    /// Count `local` nodes; false once the cap is hit.
    #[inline]
    fn charge(&self, local: u64) -> bool {
        let total = self.nodes.fetch_add(local, Ordering::Relaxed) + local;
        match self.cap {
            Some(cap) if total > cap => {
                self.exhausted.store(true, Ordering::Relaxed);
                false
            }
            _ => !self.exhausted.load(Ordering::Relaxed),
        }
    }
}

/// Static data for one `(n, t, k)` instance.
struct TauProblem {
    n: usize,
    k: usize,
    /// Edges per clique.
    pairs: usize,
    edges: Vec<(usize, usize)>,
    /// Per edge, the cliques completed by it: flat edge ids, stride `pairs`.
    closing: Vec<Vec<u16>>,
    t: usize,
    symmetry: bool,
    bounding: bool,
}

impl TauProblem {
    fn new(n: usize, t: usize, k: usize, method: SearchMethod) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let pairs = t * (t - 1) / 2;
        let idx = |a: usize, b: usize| pair_index(n, a, b) as u16;
        let closing = edges
            .iter()
            .map(|&(u, v)| {
                let mut flat = Vec::new();
                for rest in subsets(u, t - 2) {
                    let mut clique = rest;
                    clique.push(u);
                    clique.push(v);
                    for i in 0..t {
                        for j in i + 1..t {
                            flat.push(idx(clique[i], clique[j]));
                        }
                    }
                }
                flat
            })
            .collect();
        TauProblem {
            n,
            k,
            pairs,
            edges,
            closing,
            t,
            symmetry: method == SearchMethod::BranchAndBound,
            bounding: method == SearchMethod::BranchAndBound,
        }
    }

    /// Upper bound on the final value below edge `pos`. A clique with top
    /// vertex `w` closes at an edge `(x, w)` still ahead, each such edge closes
    /// at most one clique, and cliques sharing a top vertex use disjoint
    /// edges down from it.
    fn bound(&self, st: &TauState, pos: usize) -> usize {
        let (u, v) = self.edges[pos];
        let t = self.t;
        let free = pair_count(self.n) - self.pairs * st.value;
        let global = free / self.pairs;
        let mut rest = 0;
        for w in t - 1..self.n {
            // Closing edges (x, w) at or after pos: x >= u when w >= v, else x > u.
            let first = if w >= v { u } else { u + 1 }.max(t - 2);
            let closers = w.saturating_sub(first);
            let room = (w - (t - 1) * st.formed[w]) / (t - 1);
            rest += closers.min(room);
        }
        st.value + global.min(rest)
    }
}

/// All `size`-subsets of `0..below`, ascending.
fn subsets(below: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, below: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..below {
            cur.push(x);
            rec(x + 1, below, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, below, size, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone)]
struct TauState {
    colours: Vec<u8>,
    used: Vec<bool>,
    formed: Vec<usize>,
    value: usize,
    max_colour: i32,
}

struct Best {
    value: Option<usize>,
    colours: Vec<u8>,
}

struct TauSearch<'a> {
    p: &'a TauProblem,
    global: &'a AtomicUsize,
    budget: &'a NodeBudget,
    local_nodes: u64,
    best: Best,
}

impl TauSearch<'_> {
    /// Colours allowed at `pos` given the current state.
    fn colour_range(&self, st: &TauState, pos: usize) -> std::ops::Range<usize> {
        let (u, v) = self.p.edges[pos];
        let hi = if self.p.symmetry {
            ((st.max_colour + 1) as usize).min(self.p.k - 1) + 1
        } else {
            self.p.k
        };
        let lo = if self.p.symmetry && u == 0 && v >= 2 {
            st.colours[pos - 1] as usize
        } else {
            0
        };
        lo..hi
    }

    /// Assign `col` to edge `pos`; returns the marked edges for undo, or
    /// `None` if two rainbow cliques would share an edge.
    fn apply(&self, st: &mut TauState, pos: usize, col: u8, marked: &mut Vec<u16>) -> Option<usize> {
        st.colours[pos] = col;
        let pairs = self.p.pairs;
        let mut gained = 0;
        for clique in self.p.closing[pos].chunks_exact(pairs) {
            let mut mask = 0u64;
            for &e in clique {
                mask |= 1 << st.colours[e as usize];
            }
            if mask.count_ones() as usize != pairs {
                continue;
            }
            if clique.iter().any(|&e| st.used[e as usize]) {
                return None;
            }
            for &e in clique {
                st.used[e as usize] = true;
                marked.push(e);
            }
            gained += 1;
        }
        Some(gained)
    }

    fn dfs(&mut self, st: &mut TauState, pos: usize) -> bool {
        self.local_nodes += 1;
        if self.local_nodes & 0xfff == 0 && !self.budget.charge(0x1000) {
            return false;
        }
        if pos == self.p.edges.len() {
            if self.best.value.is_none_or(|b| st.value > b) {
                self.best.value = Some(st.value);
                self.best.colours = st.colours.clone();
                self.global.fetch_max(st.value, Ordering::Relaxed);
            }
            return true;
        }
        if self.p.bounding {
            let bound = self.p.bound(st, pos);
            if self.best.value.is_some_and(|b| bound <= b) || bound < self.global.load(Ordering::Relaxed) {
                return true;
            }
        }
        let v = self.p.edges[pos].1;
        let mut marked = Vec::new();
        for col in self.colour_range(st, pos) {
            marked.clear();
            let prev_max = st.max_colour;
            match self.apply(st, pos, col as u8, &mut marked) {
                Some(gained) => {
                    st.value += gained;
                    st.formed[v] += gained;
                    st.max_colour = st.max_colour.max(col as i32);
                    let go_on = self.dfs(st, pos + 1);
                    st.value -= gained;
                    st.formed[v] -= gained;
                    st.max_colour = prev_max;
                    for &e in &marked {
                        st.used[e as usize] = false;
                    }
                    if !go_on {
                        return false;
                    }
                }
                None => {
                    for &e in &marked {
                        st.used[e as usize] = false;
                    }
                }
            }
        }
        true
    }
}

fn check_tau_args(n: usize, t: usize, k: usize, limits: &SearchLimits) -> Result<()> {
    if t < 3 {
        return Err(Error::invalid(format!("t = {t} must be at least 3")));
    }
    if n < t {
        return Err(Error::invalid(format!("n = {n} must be at least t = {t}")));
    }
    if k < 3 {
        return Err(Error::invalid(format!("k = {k} must be at least 3")));
    }
    if n > limits.max_vertices {
        return Err(Error::SizeLimit(format!(
            "n = {n} exceeds the exact-search limit of {}",
            limits.max_vertices
        )));
    }
    if k > MAX_SEARCH_COLOURS {
        return Err(Error::SizeLimit(format!("k = {k} exceeds {MAX_SEARCH_COLOURS}")));
    }
    Ok(())
}

/// Maximum number of rainbow `t`-cliques over almost `t`-Gallai
/// `k`-colourings of `K_n`.
pub fn exact_tau(n: usize, t: usize, k: usize, method: SearchMethod, limits: SearchLimits) -> Result<SearchResult> {
    check_tau_args(n, t, k, &limits)?;
    if method == SearchMethod::Heuristic {
        return Err(Error::invalid("exact_tau needs an exact method"));
    }
    let start = Instant::now();
    let problem = TauProblem::new(n, t, k, method);
    let global = AtomicUsize::new(0);
    let budget = NodeBudget::new(limits.max_nodes);
    let root = TauState {
        colours: vec![0; problem.edges.len()],
        used: vec![false; problem.edges.len()],
        formed: vec![0; n],
        value: 0,
        max_colour: -1,
    };

    // Split the tree at a fixed depth; subtrees run in parallel and the
    // witness is the first optimum in DFS order, independent of scheduling.
    let split = problem.edges.len().min(if n >= 6 { n + 2 } else { 0 });
    let mut prefixes = Vec::new();
    collect_prefixes(&problem, root, 0, split, &mut prefixes);

    let results: Vec<(Option<usize>, Vec<u8>, u64, bool)> = prefixes
        .into_par_iter()
        .map(|(mut st, pos)| {
            let mut s = TauSearch {
                p: &problem,
                global: &global,
                budget: &budget,
                local_nodes: 0,
                best: Best {
                    value: None,
                    colours: Vec::new(),
                },
            };
            let finished = s.dfs(&mut st, pos);
            (s.best.value, s.best.colours, s.local_nodes, finished)
        })
        .collect();

    if results.iter().any(|r| !r.3) || budget.exhausted.load(Ordering::Relaxed) {
        return Err(Error::SizeLimit(format!(
            "node cap of {} reached before the search finished",
            limits.max_nodes.unwrap_or(u64::MAX)
        )));
    }
    let nodes = results.iter().map(|r| r.2).sum();
    let (value, colours) = results
        .into_iter()
        .filter_map(|(v, c, _, _)| v.map(|v| (v, c)))
        .fold(None::<(usize, Vec<u8>)>, |acc, (v, c)| match acc {
            Some((bv, _)) if bv >= v => acc,
            _ => Some((v, c)),
        })
        .ok_or_else(|| Error::Invariant("search found no colouring".into()))?;

    let witness = CompleteColouring::from_pair_colours(n, k, colours.iter().map(|&c| c as Colour).collect())?;
    certify_tau(&witness, t, value)?;
    Ok(SearchResult {
        value,
        witness: Witness::Complete(witness),
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        method,
        max_single_colour: None,
    })
}

/// Expand the first `depth` edges, keeping feasible prefixes in DFS order.
fn collect_prefixes(p: &TauProblem, st: TauState, pos: usize, depth: usize, out: &mut Vec<(TauState, usize)>) {
    if pos == depth {
        out.push((st, pos));
        return;
    }
    let dummy_global = AtomicUsize::new(0);
    let dummy_budget = NodeBudget::new(None);
    let s = TauSearch {
        p,
        global: &dummy_global,
        budget: &dummy_budget,
        local_nodes: 0,
        best: Best {
            value: None,
            colours: Vec::new(),
        },
    };
    let v = p.edges[pos].1;
    for col in s.colour_range(&st, pos) {
        let mut next = st.clone();
        let mut marked = Vec::new();
        if let Some(gained) = s.apply(&mut next, pos, col as u8, &mut marked) {
            next.value += gained;
            next.formed[v] += gained;
            next.max_colour = next.max_colour.max(col as i32);
            collect_prefixes(p, next, pos + 1, depth, out);
        }
    }
}

fn certify_tau(c: &CompleteColouring, t: usize, value: usize) -> Result<()> {
    let set = enumerate_rainbow_cliques(c, t)?;
    if !set.edge_disjoint || set.len() != value {
        return Err(Error::Invariant(format!(
            "witness re-check failed: {} rainbow cliques, edge-disjoint = {}, claimed {value}",
            set.len(),
            set.edge_disjoint
        )));
    }
    Ok(())
}

/// Maximum number of monochromatic triangles over good red/blue colourings
/// of `K(V1, V2, V3)` with the given part sizes.
pub fn exact_gamma(sizes: [usize; 3], limits: SearchLimits) -> Result<SearchResult> {
    if sizes.contains(&0) {
        return Err(Error::invalid(format!("part sizes {sizes:?} must be positive")));
    }
    let n: usize = sizes.iter().sum();
    if n > limits.max_vertices {
        return Err(Error::SizeLimit(format!(
            "n = {n} exceeds the exact-search limit of {}",
            limits.max_vertices
        )));
    }
    let start = Instant::now();
    let template = TripartiteColouring::new(sizes, TRI_RED)?;
    let edges: Vec<(usize, usize)> = template.cross_pairs().map(|(u, v, _)| (u, v)).collect();
    let index = |a: usize, b: usize| edges.binary_search(&(a.min(b), a.max(b))).expect("cross pair");
    // Triangles complete at their V2–V3 edge.
    let closing: Vec<Vec<[usize; 3]>> = edges
        .iter()
        .map(|&(b, c)| {
            if template.part(b) == 1 && template.part(c) == 2 {
                template
                    .part_range(0)
                    .map(|a| [index(a, b), index(a, c), index(b, c)])
                    .collect()
            } else {
                Vec::new()
            }
        })
        .collect();

    struct Gamma<'a> {
        edges: &'a [(usize, usize)],
        closing: &'a [Vec<[usize; 3]>],
        colours: Vec<u8>,
        used: Vec<bool>,
        count: [usize; 2],
        best_total: Option<usize>,
        best_colours: Vec<u8>,
        best_single: usize,
        nodes: u64,
        cap: Option<u64>,
    }

    impl Gamma<'_> {
        fn dfs(&mut self, pos: usize) -> bool {
            self.nodes += 1;
            if self.cap.is_some_and(|c| self.nodes > c) {
                return false;
            }
            if pos == self.edges.len() {
                let total = self.count[0] + self.count[1];
                if self.best_total.is_none_or(|b| total > b) {
                    self.best_total = Some(total);
                    self.best_colours = self.colours.clone();
                }
                self.best_single = self.best_single.max(self.count[0]).max(self.count[1]);
                return true;
            }
            // Swapping red and blue is a symmetry: fix the first edge red.
            let colours: &[u8] = if pos == 0 { &[TRI_RED] } else { &[TRI_RED, TRI_BLUE] };
            for &col in colours {
                self.colours[pos] = col;
                let mut marked: Vec<usize> = Vec::new();
                let mut ok = true;
                let mut gained = 0;
                for tri in &self.closing[pos] {
                    if tri.iter().all(|&e| self.colours[e] == col) {
                        if tri.iter().any(|&e| self.used[e]) {
                            ok = false;
                            break;
                        }
                        for &e in tri {
                            self.used[e] = true;
                            marked.push(e);
                        }
                        gained += 1;
                    }
                }
                if ok {
                    self.count[col as usize] += gained;
                    let go_on = self.dfs(pos + 1);
                    self.count[col as usize] -= gained;
                    if !go_on {
                        return false;
                    }
                }
                for e in marked {
                    self.used[e] = false;
                }
            }
            true
        }
    }

    let mut g = Gamma {
        edges: &edges,
        closing: &closing,
        colours: vec![0; edges.len()],
        used: vec![false; edges.len()],
        count: [0, 0],
        best_total: None,
        best_colours: Vec::new(),
        best_single: 0,
        nodes: 0,
        cap: limits.max_nodes,
    };
    if !g.dfs(0) {
        return Err(Error::SizeLimit(format!(
            "node cap of {} reached before the search finished",
            limits.max_nodes.unwrap_or(u64::MAX)
        )));
    }
    let value = g.best_total.ok_or_else(|| Error::Invariant("no good colouring found".into()))?;
    let mut witness = template;
    for (&(u, v), &c) in edges.iter().zip(&g.best_colours) {
        witness.set(u, v, c)?;
    }
    if !witness.check_good().good || witness.monochromatic_count().total() != value {
        return Err(Error::Invariant("gamma witness re-check failed".into()));
    }
    Ok(SearchResult {
        value,
        witness: Witness::Tripartite(witness),
        nodes_explored: g.nodes,
        elapsed: start.elapsed(),
        method: SearchMethod::Exhaustive,
        max_single_colour: Some(g.best_single),
    })
}

/// Starting colourings for the heuristic, best first.
fn local_search_seed(n: usize, t: usize, k: usize) -> Result<CompleteColouring> {
    let pairs = t * (t - 1) / 2;
    if t == 3 && n >= 3 {
        let c = truncated_hypercube_colouring(n)?;
        return CompleteColouring::from_pair_colours(n, k, c.pair_colours().to_vec());
    }
    if k >= pairs {
        let host = CliqueDecomposedHost::disjoint_cliques(n, t)?;
        let c = gadget_colouring(&host, n)?;
        return CompleteColouring::from_pair_colours(n, k, c.pair_colours().to_vec());
    }
    CompleteColouring::new(n, k, 0)
}

/// A colouring kept almost `t`-Gallai under single-edge recolourings.
#[derive(Clone, Debug)]
pub struct GallaiWalk {
    c: CompleteColouring,
    t: usize,
    /// Rainbow cliques through each pair (0 or 1).
    load: Vec<u8>,
    value: usize,
}

impl GallaiWalk {
    pub fn new(c: CompleteColouring, t: usize) -> Result<Self> {
        let set = enumerate_rainbow_cliques(&c, t)?;
        if !set.edge_disjoint {
            return Err(Error::PreconditionViolation("start colouring is not almost Gallai".into()));
        }
        let n = c.n();
        let mut load = vec![0u8; pair_count(n)];
        for clique in &set.cliques {
            for_each_pair(clique, |a, b| load[pair_index(n, a, b)] = 1);
        }
        Ok(GallaiWalk {
            c,
            t,
            load,
            value: set.len(),
        })
    }

    pub fn colouring(&self) -> &CompleteColouring {
        &self.c
    }

    pub fn into_colouring(self) -> CompleteColouring {
        self.c
    }

    /// Current number of rainbow cliques.
    pub fn value(&self) -> usize {
        self.value
    }

    /// Recolour `{u, v}` to `col` if the result is still almost Gallai and
    /// `accept(old value, new value)` agrees; returns whether it moved.
    pub fn try_recolour(&mut self, u: usize, v: usize, col: Colour, accept: impl FnOnce(usize, usize) -> bool) -> bool {
        let n = self.c.n();
        let old = self.c.colour(u, v);
        if old == col {
            return false;
        }
        let before = rainbow_cliques_through(&self.c, u, v, self.t);
        self.c.set(u, v, col);
        let after = rainbow_cliques_through(&self.c, u, v, self.t);
        // Every clique through {u, v} loads that edge, so at most one survives.
        let mut ok = after.len() <= 1;
        if ok {
            for clique in &before {
                for_each_pair(clique, |a, b| self.load[pair_index(n, a, b)] = 0);
            }
            if let Some(k) = after.first() {
                for_each_pair(k, |a, b| ok &= self.load[pair_index(n, a, b)] == 0);
            }
            let new_value = self.value + after.len() - before.len();
            ok = ok && accept(self.value, new_value);
            let keep = if ok { &after } else { &before };
            for clique in keep {
                for_each_pair(clique, |a, b| self.load[pair_index(n, a, b)] = 1);
            }
            if ok {
                self.value = new_value;
                return true;
            }
        }
        self.c.set(u, v, old);
        false
    }
}

/// Hill climbing over single-edge recolourings that keep the colouring
/// almost `t`-Gallai; `budget` is the number of proposed moves.
pub fn local_search_tau(n: usize, t: usize, k: usize, budget: u64, seed: u64) -> Result<SearchResult> {
    if t < 3 || n < t {
        return Err(Error::invalid(format!("need 3 <= t <= n, got t = {t}, n = {n}")));
    }
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let start = Instant::now();
    let mut walk = GallaiWalk::new(local_search_seed(n, t, k)?, t)
        .map_err(|_| Error::Invariant("seed colouring is not almost Gallai".into()))?;
    let mut best = (walk.value(), walk.colouring().clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..budget {
        if k < 2 {
            break;
        }
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let old = walk.colouring().colour(u, v);
        let mut new = rng.gen_range(0..k as Colour - 1);
        if new >= old {
            new += 1;
        }
        if walk.try_recolour(u, v, new, |before, after| after >= before) && walk.value() > best.0 {
            best = (walk.value(), walk.colouring().clone());
        }
    }

    certify_tau(&best.1, t, best.0)?;
    Ok(SearchResult {
        value: best.0,
        witness: Witness::Complete(best.1),
        nodes_explored: budget,
        elapsed: start.elapsed(),
        method: SearchMethod::Heuristic,
        max_single_colour: None,
    })
}

fn for_each_pair(clique: &[usize], mut f: impl FnMut(usize, usize)) {
    for i in 0..clique.len() {
        for j in i + 1..clique.len() {
            f(clique[i], clique[j]);
        }
    }
}

/// The trivial bounds `floor(n/t) <= tau_t(n) <= floor(C(n,2)/C(t,2))`.
pub fn trivial_tau_bounds(n: usize, t: usize) -> (usize, usize) {
    (n / t, pair_count(n) / (t * (t - 1) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(n: usize, t: usize, k: usize, m: SearchMethod) -> usize {
        exact_tau(n, t, k, m, SearchLimits::TAU).unwrap().value
    }

    #[test]
    fn tiny_tau_values() {
        for m in [SearchMethod::Exhaustive, SearchMethod::BranchAndBound] {
            assert_eq!(tau(3, 3, 3, m), 1);
            assert_eq!(tau(4, 3, 3, m), 1);
        }
    }

    #[test]
    fn tau_six_beats_the_square_cube() {
        let r = exact_tau(6, 3, 3, SearchMethod::BranchAndBound, SearchLimits::TAU).unwrap();
        assert!(r.value >= 4);
        let set = enumerate_rainbow_cliques(r.complete_witness().unwrap(), 3).unwrap();
        assert_eq!(set.len(), r.value);
        assert!(set.edge_disjoint);
    }

    #[test]
    fn tau_argument_errors() {
        assert!(matches!(
            exact_tau(9, 3, 3, SearchMethod::BranchAndBound, SearchLimits::TAU),
            Err(Error::SizeLimit(_))
        ));
        assert!(exact_tau(3, 4, 6, SearchMethod::BranchAndBound, SearchLimits::TAU).is_err());
        assert!(exact_tau(5, 2, 3, SearchMethod::BranchAndBound, SearchLimits::TAU).is_err());
        let capped = SearchLimits {
            max_vertices: 8,
            max_nodes: Some(10),
        };
        assert!(matches!(
            exact_tau(7, 3, 3, SearchMethod::BranchAndBound, capped),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn four_cliques() {
        // K_4 rainbow needs all six colours; one clique is the best possible.
        assert_eq!(tau(4, 4, 6, SearchMethod::BranchAndBound), 1);
        assert_eq!(tau(5, 4, 6, SearchMethod::BranchAndBound), 1);
    }

    #[test]
    fn gamma_small() {
        let r = exact_gamma([1, 1, 1], SearchLimits::GAMMA).unwrap();
        assert_eq!(r.value, 1);
        let r = exact_gamma([1, 3, 3], SearchLimits::GAMMA).unwrap();
        assert!(r.value >= 3 && r.value <= 18);
        assert!(r.tripartite_witness().unwrap().check_good().good);
        assert!(exact_gamma([0, 1, 1], SearchLimits::GAMMA).is_err());
        assert!(matches!(
            exact_gamma([4, 4, 4], SearchLimits::GAMMA),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn local_search_keeps_seed_with_zero_budget() {
        let r = local_search_tau(11, 3, 3, 0, 1).unwrap();
        assert_eq!(r.value, 12);
        assert_eq!(r.method, SearchMethod::Heuristic);
        let r = local_search_tau(8, 4, 6, 0, 1).unwrap();
        assert_eq!(r.value, 2);
    }

    #[test]
    fn local_search_never_loses_ground() {
        for seed in 0..4 {
            let r = local_search_tau(11, 3, 3, 2000, seed).unwrap();
            assert!(r.value >= 12);
            let r = local_search_tau(9, 3, 4, 2000, seed).unwrap();
            let c = r.complete_witness().unwrap();
            let set = enumerate_rainbow_cliques(c, 3).unwrap();
            assert!(set.edge_disjoint);
            assert_eq!(set.len(), r.value);
        }
        let r = local_search_tau(8, 4, 6, 3000, 9).unwrap();
        assert!(r.value >= 2);
    }

    #[test]
    fn witness_is_deterministic() {
        let a = exact_tau(6, 3, 3, SearchMethod::BranchAndBound, SearchLimits::TAU).unwrap();
        let b = exact_tau(6, 3, 3, SearchMethod::BranchAndBound, SearchLimits::TAU).unwrap();
        assert_eq!(a.witness, b.witness);
        let pool = |threads| rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let run = || exact_tau(7, 3, 3, SearchMethod::BranchAndBound, SearchLimits::TAU).unwrap().witness;
        let one = pool(1).install(run);
        for _ in 0..4 {
            assert_eq!(pool(4).install(run), one);
        }
    }

    /// Best final value below every node, checking the bound on the way.
    fn exhaust(s: &TauSearch, st: &mut TauState, pos: usize) -> Option<usize> {
        if pos == s.p.edges.len() {
            return Some(st.value);
        }
        let v = s.p.edges[pos].1;
        let mut best = None;
        for col in s.colour_range(st, pos) {
            let mut marked = Vec::new();
            if let Some(gained) = s.apply(st, pos, col as u8, &mut marked) {
                let prev_max = st.max_colour;
                st.value += gained;
                st.formed[v] += gained;
                st.max_colour = st.max_colour.max(col as i32);
                best = best.max(exhaust(s, st, pos + 1));
                st.value -= gained;
                st.formed[v] -= gained;
                st.max_colour = prev_max;
            }
            for &e in &marked {
                st.used[e as usize] = false;
            }
        }
        if let Some(b) = best {
            assert!(s.p.bound(st, pos) >= b, "bound {} below {b} at edge {pos}", s.p.bound(st, pos));
        }
        best
    }

    #[test]
    fn bound_never_undercuts_a_subtree() {
        for (n, t, k) in [(6, 3, 3), (6, 3, 4), (5, 4, 6)] {
            let p = TauProblem::new(n, t, k, SearchMethod::BranchAndBound);
            let global = AtomicUsize::new(0);
            let budget = NodeBudget::new(None);
            let s = TauSearch {
                p: &p,
                global: &global,
                budget: &budget,
                local_nodes: 0,
                best: Best {
                    value: None,
                    colours: Vec::new(),
                },
            };
            let mut root = TauState {
                colours: vec![0; p.edges.len()],
                used: vec![false; p.edges.len()],
                formed: vec![0; n],
                value: 0,
                max_colour: -1,
            };
            let best = exhaust(&s, &mut root, 0).unwrap();
            assert_eq!(best, exact_tau(n, t, k, SearchMethod::BranchAndBound, SearchLimits::TAU).unwrap().value);
        }
    }
}
