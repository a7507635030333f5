//! Hypercube-like graphs: a vertex partition into cells `V_S`, `S ⊆ [y]`,
//! where edges only join cells whose labels differ in one element and each
//! such pair of cells spans a matching.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::colouring::{ColourBitsets, CompleteColouring, BLUE, GREEN};
use crate::error::{Error, Result};
use crate::rainbow::disjoint_sets;

/// Largest vertex count for the exhaustive subset sweep.
pub const MAX_SWEEP_VERTICES: usize = 24;

/// A simple graph whose vertices carry subset labels (bitmasks over `[y]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelledGraph {
    y: u32,
    labels: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl LabelledGraph {
    /// Edges are normalised to `(min, max)` and sorted; loops, duplicates
    /// and labels outside `[y]` are rejected.
    pub fn new(y: u32, labels: Vec<u64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if y > 64 {
            return Err(Error::invalid(format!("dimension {y} exceeds 64")));
        }
        if y < 64 {
            if let Some((v, l)) = labels.iter().enumerate().find(|(_, &l)| l >> y != 0) {
                return Err(Error::invalid(format!(
                    "label {l:#x} of vertex {v} is not a subset of [{y}]"
                )));
            }
        }
        let n = labels.len();
        let mut norm = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::invalid(format!("bad edge {u} {v}")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge {} {}", w[0].0, w[0].1)));
        }
        Ok(LabelledGraph {
            y,
            labels,
            edges: norm,
        })
    }

    pub fn y(&self) -> u32 {
        self.y
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum HypercubeViolation {
    /// The labels of the endpoints do not differ in exactly one element.
    NonAdjacentCells { edge: (usize, usize) },
    /// Two edges between the same pair of cells share an endpoint.
    NotMatching {
        first: (usize, usize),
        second: (usize, usize),
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypercubeCheck {
    pub hypercube_like: bool,
    pub violation: Option<HypercubeViolation>,
}

pub fn verify_hypercube_like(g: &LabelledGraph) -> HypercubeCheck {
    let fail = |v| HypercubeCheck {
        hypercube_like: false,
        violation: Some(v),
    };
    for &(u, v) in &g.edges {
        if (g.labels[u] ^ g.labels[v]).count_ones() != 1 {
            return fail(HypercubeViolation::NonAdjacentCells { edge: (u, v) });
        }
    }
    // For each vertex, at most one neighbour per neighbouring cell.
    let mut seen: Vec<Vec<(u64, (usize, usize))>> = vec![Vec::new(); g.vertex_count()];
    for &(u, v) in &g.edges {
        for (a, b) in [(u, v), (v, u)] {
            let cell = g.labels[b];
            if let Some(&(_, prev)) = seen[a].iter().find(|(l, _)| *l == cell) {
                return fail(HypercubeViolation::NotMatching {
                    first: prev,
                    second: (u, v),
                });
            }
            seen[a].push((cell, (u, v)));
        }
    }
    HypercubeCheck {
        hypercube_like: true,
        violation: None,
    }
}

/// A labelled graph known to satisfy both hypercube-like conditions.
#[derive(Clone, Debug)]
pub struct HypercubeLikeGraph {
    graph: LabelledGraph,
    adj: Vec<Bitset>,
}

impl HypercubeLikeGraph {
    pub fn new(graph: LabelledGraph) -> Result<Self> {
        let check = verify_hypercube_like(&graph);
        if let Some(v) = check.violation {
            return Err(Error::PreconditionViolation(format!("not hypercube-like: {v:?}")));
        }
        let n = graph.vertex_count();
        let mut adj = vec![Bitset::new(n); n];
        for &(u, v) in graph.edges() {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(HypercubeLikeGraph { graph, adj })
    }

    /// The hypercube `Q_y` with singleton cells; vertex `v` has label `v`.
    pub fn cube(y: u32) -> Result<Self> {
        if y > 20 {
            return Err(Error::SizeLimit(format!("cube dimension {y} exceeds 20")));
        }
        let n = 1usize << y;
        let edges = (0..n)
            .flat_map(|u| (0..y).map(move |i| (u, u ^ (1 << i))))
            .filter(|&(u, v)| u < v)
            .collect();
        Self::new(LabelledGraph::new(y, (0..n as u64).collect(), edges)?)
    }

    pub fn graph(&self) -> &LabelledGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn neighbours(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }
}

/// `(x / 2) log2 x`, taken as 0 for `x <= 1`.
pub fn half_x_log_x(x: usize) -> f64 {
    if x <= 1 {
        0.0
    } else {
        x as f64 / 2.0 * (x as f64).log2()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InducedEdges {
    pub edges: usize,
    pub bound: f64,
}

/// Edges induced by `subset` together with the bound `(|A|/2) log2 |A|`.
pub fn induced_edge_count(h: &HypercubeLikeGraph, subset: &[usize]) -> Result<InducedEdges> {
    let n = h.vertex_count();
    let mut a = Bitset::new(n);
    for &v in subset {
        if v >= n {
            return Err(Error::invalid(format!("vertex {v} not in graph of {n} vertices")));
        }
        a.insert(v);
    }
    let twice: usize = a.iter().map(|v| h.neighbours(v).intersection_count(&a)).sum();
    Ok(InducedEdges {
        edges: twice / 2,
        bound: half_x_log_x(a.count()),
    })
}

/// Result of checking every vertex subset of a small graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubsetSweep {
    pub subsets: u64,
    pub violations: u64,
    /// Largest `edges - bound` over all subsets, with the subset mask.
    pub worst_excess: f64,
    pub worst_subset: u64,
}

/// Check `e(H[A]) <= (|A|/2) log2 |A|` for all `2^|V|` subsets, using the
/// recurrence `e(A) = e(A - v) + |N(v) ∩ A|` for the lowest vertex `v`.
pub fn sweep_all_subsets(h: &HypercubeLikeGraph) -> Result<SubsetSweep> {
    let n = h.vertex_count();
    if n > MAX_SWEEP_VERTICES {
        return Err(Error::SizeLimit(format!(
            "{n} vertices exceeds the sweep limit of {MAX_SWEEP_VERTICES}"
        )));
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| h.neighbours(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let bounds: Vec<f64> = (0..=n).map(half_x_log_x).collect();
    let total = 1usize << n;
    let mut edges = vec![0u32; total];
    let mut out = SubsetSweep {
        subsets: total as u64,
        violations: 0,
        worst_excess: f64::NEG_INFINITY,
        worst_subset: 0,
    };
    for mask in 1..total {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        edges[mask] = edges[rest] + (masks[v] & rest as u32).count_ones();
        let excess = edges[mask] as f64 - bounds[mask.count_ones() as usize];
        if excess > 1e-9 {
            out.violations += 1;
        }
        if excess > out.worst_excess {
            out.worst_excess = excess;
            out.worst_subset = mask as u64;
        }
    }
    if total == 1 {
        out.worst_excess = 0.0;
    }
    Ok(out)
}

/// Edges of `Q_m` with both endpoints of binary value below `x`.
pub fn harper_initial_segment_edges(m: u32, x: u64) -> Result<u64> {
    if m > 40 {
        return Err(Error::SizeLimit(format!("dimension {m} exceeds 40")));
    }
    if x > 1u64 << m {
        return Err(Error::invalid(format!("x = {x} exceeds 2^{m}")));
    }
    // Each v < x reaches a smaller neighbour through each of its 1-bits.
    Ok((0..x).map(|v| v.count_ones() as u64).sum())
}

/// Random hypercube-like graph: random cell labels, then a random partial
/// matching between every pair of Hamming-adjacent cells.
pub fn random_hypercube_like<R: Rng + ?Sized>(rng: &mut R, y: u32, vertices: usize) -> HypercubeLikeGraph {
    assert!(y <= 16, "random generator supports y <= 16");
    let labels: Vec<u64> = (0..vertices).map(|_| rng.gen_range(0..1u64 << y)).collect();
    let keep: f64 = rng.gen_range(0.3..=1.0);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); 1 << y];
    for (v, &l) in labels.iter().enumerate() {
        cells[l as usize].push(v);
    }
    let mut edges = Vec::new();
    for s in 0..1usize << y {
        for i in 0..y {
            let t = s | 1 << i;
            if t == s || cells[s].is_empty() || cells[t].is_empty() {
                continue;
            }
            let mut a = cells[s].clone();
            let mut b = cells[t].clone();
            a.shuffle(rng);
            b.shuffle(rng);
            for (&u, &v) in a.iter().zip(&b) {
                if rng.gen_bool(keep) {
                    edges.push((u, v));
                }
            }
        }
    }
    let g = LabelledGraph::new(y, labels, edges).expect("generated graph is simple");
    HypercubeLikeGraph::new(g).expect("generated graph is hypercube-like")
}

/// Green edges inside `X` that close a rainbow triangle with some `y` in `Y`,
/// labelled by blue neighbourhoods in `Y`.
#[derive(Clone, Debug, Serialize)]
pub struct GreenStructure {
    pub graph: LabelledGraph,
    /// Original vertex ids of the graph's vertices (sorted `X`).
    pub x_vertices: Vec<usize>,
    /// Original ids of `Y`; bit `j` of a label refers to `y_vertices[j]`.
    pub y_vertices: Vec<usize>,
}

pub fn extract_rainbow_green_structure(
    c: &CompleteColouring,
    x: &[usize],
    y: &[usize],
) -> Result<GreenStructure> {
    if c.k() != 3 {
        return Err(Error::invalid("extraction needs a 3-colouring"));
    }
    let (xs, ys) = disjoint_sets(c.n(), x, y)?;
    let y_vertices: Vec<usize> = ys.iter().collect();
    if y_vertices.len() > 64 {
        return Err(Error::SizeLimit(format!("|Y| = {} exceeds 64", y_vertices.len())));
    }
    let bits = ColourBitsets::new(c);
    let x_vertices: Vec<usize> = xs.iter().collect();
    for &xv in &x_vertices {
        if let Some(yv) = crate::bitset::Ones::from_words(bits.neighbours(xv, GREEN)).find(|&v| ys.contains(v)) {
            return Err(Error::PreconditionViolation(format!(
                "green edge {xv} {yv} between X and Y"
            )));
        }
    }
    let labels: Vec<u64> = x_vertices
        .iter()
        .map(|&xv| {
            y_vertices
                .iter()
                .enumerate()
                .filter(|(_, &yv)| c.colour(xv, yv) == BLUE)
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..x_vertices.len() {
        for j in i + 1..x_vertices.len() {
            // All X–Y edges are red or blue, so some y closes a rainbow
            // triangle iff the blue neighbourhoods differ.
            if c.colour(x_vertices[i], x_vertices[j]) == GREEN && labels[i] != labels[j] {
                edges.push((i, j));
            }
        }
    }
    Ok(GreenStructure {
        graph: LabelledGraph::new(y_vertices.len() as u32, labels, edges)?,
        x_vertices,
        y_vertices,
    })
}
