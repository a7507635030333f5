//! Explicit colourings: the hypercube colouring and its truncation, the
//! clique-gadget colouring, the sharp tripartite colouring and the
//! Ruzsa–Szemerédi host built from a 3-AP-free set.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::bitset::Bitset;
use crate::colouring::{pair_index, Colour, CompleteColouring, HostColouring, BLUE, GREEN, RED};
use crate::error::{Error, Result};
use crate::rainbow::RainbowCliqueSet;
use crate::tripartite::{TripartiteColouring, TRI_BLUE, TRI_RED};

/// Largest dimension accepted by [`hypercube_colouring`].
pub const MAX_HYPERCUBE_DIM: u32 = 26;

/// Vertex layout of the hypercube colouring: the cube `L = {0,1}^m` first,
/// indexed by `b(u) = sum 2^(i-1) u_i`, then the coordinate vertices
/// `R = {1..m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypercubeLayout {
    pub m: u32,
}

impl HypercubeLayout {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("hypercube dimension must be at least 1"));
        }
        if m > MAX_HYPERCUBE_DIM {
            return Err(Error::SizeLimit(format!(
                "hypercube dimension {m} exceeds {MAX_HYPERCUBE_DIM}"
            )));
        }
        Ok(HypercubeLayout { m })
    }

    pub fn cube_size(&self) -> usize {
        1 << self.m
    }

    pub fn n(&self) -> usize {
        self.cube_size() + self.m as usize
    }

    /// Vertex id of coordinate `i` in `1..=m`.
    pub fn coordinate_vertex(&self, i: u32) -> usize {
        debug_assert!((1..=self.m).contains(&i));
        self.cube_size() + i as usize - 1
    }

    pub fn is_cube_vertex(&self, v: usize) -> bool {
        v < self.cube_size()
    }
}

/// Colour of a pair under the hypercube rules. `cube` is the number of cube
/// vertices present (all ids below it are cube vertices).
fn hypercube_pair_colour(cube: usize, u: usize, v: usize) -> Colour {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    match (u < cube, v < cube) {
        (true, true) if (u ^ v).count_ones() == 1 => GREEN,
        (true, false) => {
            // v is a coordinate vertex; v - cube is the 0-based coordinate
            if (u >> (v - cube)) & 1 == 1 {
                BLUE
            } else {
                RED
            }
        }
        _ => RED,
    }
}

/// The 3-colouring of `K_{2^m + m}` with exactly `m 2^(m-1)` rainbow
/// triangles, one per cube edge.
pub fn hypercube_colouring(m: u32) -> Result<CompleteColouring> {
    let layout = HypercubeLayout::new(m)?;
    let cube = layout.cube_size();
    CompleteColouring::from_fn(layout.n(), 3, |u, v| hypercube_pair_colour(cube, u, v))
}

/// Smallest `m` with `n <= 2^m + m`.
pub fn truncation_dimension(n: usize) -> u32 {
    let mut m = 1u32;
    while (1usize << m) + (m as usize) < n {
        m += 1;
    }
    m
}

/// Restriction of the hypercube colouring of dimension
/// [`truncation_dimension`]`(n)` to the `n - m` cube vertices of smallest
/// binary value plus all coordinate vertices.
pub fn truncated_hypercube_colouring(n: usize) -> Result<CompleteColouring> {
    if n < 3 {
        return Err(Error::invalid(format!("n = {n} must be at least 3")));
    }
    let m = truncation_dimension(n);
    HypercubeLayout::new(m)?;
    let kept = n - m as usize;
    // Cube vertices 0..kept keep their ids; coordinate i sits at kept + i - 1.
    CompleteColouring::from_fn(n, 3, |u, v| hypercube_pair_colour(kept, u, v))
}

/// Cube edges with both ends of binary value below `x`, split per coordinate:
/// entry `i - 1` counts the boundary edges `u u^(i)` with `u < x <= u^(i)`.
pub fn green_boundary_by_coordinate(m: u32, x: usize) -> Vec<usize> {
    (0..m)
        .map(|i| (0..x.min(1 << m)).filter(|&u| u ^ (1 << i) >= x).count())
        .collect()
}

/// A graph given as a list of `t`-cliques; its edges are those of the cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueDecomposedHost {
    t: usize,
    cliques: Vec<Vec<usize>>,
}

impl CliqueDecomposedHost {
    /// Each clique must list `t` distinct vertices; they are stored sorted.
    pub fn new(t: usize, cliques: Vec<Vec<usize>>) -> Result<Self> {
        if t < 2 {
            return Err(Error::invalid(format!("clique size t = {t} must be at least 2")));
        }
        let mut sorted = Vec::with_capacity(cliques.len());
        for (i, mut k) in cliques.into_iter().enumerate() {
            k.sort_unstable();
            if k.len() != t || k.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!(
                    "clique {i} is not a set of {t} distinct vertices"
                )));
            }
            sorted.push(k);
        }
        Ok(CliqueDecomposedHost { t, cliques: sorted })
    }

    /// `floor(n / t)` vertex-disjoint cliques on consecutive vertices.
    pub fn disjoint_cliques(n: usize, t: usize) -> Result<Self> {
        if t < 2 {
            return Err(Error::invalid(format!("clique size t = {t} must be at least 2")));
        }
        Self::new(t, (0..n / t).map(|i| (i * t..(i + 1) * t).collect()).collect())
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    /// One more than the largest vertex id used.
    pub fn vertex_bound(&self) -> usize {
        self.cliques
            .iter()
            .filter_map(|k| k.last())
            .max()
            .map_or(0, |&v| v + 1)
    }

    /// Edges as `(u, v)` with `u < v`, each listed once.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut set: Vec<(usize, usize)> = self
            .cliques
            .iter()
            .flat_map(|k| clique_pairs(k))
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    }
}

fn clique_pairs(k: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..k.len()).flat_map(move |i| (i + 1..k.len()).map(move |j| (k[i], k[j])))
}

/// Colour every host clique rainbow with the fixed pattern (the pair of the
/// `i`-th and `j`-th vertices gets the lexicographic index of `(i, j)`), and
/// every other edge of `K_n` with colour 0.
pub fn gadget_colouring(host: &CliqueDecomposedHost, n: usize) -> Result<CompleteColouring> {
    let t = host.t();
    let k = t * (t - 1) / 2;
    if host.vertex_bound() > n {
        return Err(Error::PreconditionViolation(format!(
            "host uses vertex {} but n = {n}",
            host.vertex_bound() - 1
        )));
    }
    let mut c = CompleteColouring::new(n, k, 0)?;
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (ci, clique) in host.cliques().iter().enumerate() {
        for i in 0..t {
            for j in i + 1..t {
                let e = (clique[i], clique[j]);
                if let Some(prev) = owner.insert(e, ci) {
                    return Err(Error::PreconditionViolation(format!(
                        "edge {} {} lies in cliques {prev} and {ci}",
                        e.0, e.1
                    )));
                }
                c.set(e.0, e.1, pair_index(t, i, j) as Colour);
            }
        }
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    /// Every edge lies in exactly one listed clique.
    pub property2: bool,
    /// Every triangle of the graph lies inside a listed clique.
    pub property3: bool,
    pub clique_count: usize,
    pub shared_edge: Option<((usize, usize), usize, usize)>,
    pub stray_triangle: Option<[usize; 3]>,
}

pub fn verify_gadget_properties(host: &CliqueDecomposedHost) -> GadgetReport {
    let mut owners: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (ci, k) in host.cliques().iter().enumerate() {
        for e in clique_pairs(k) {
            owners.entry(e).or_default().push(ci);
        }
    }
    let shared_edge = owners
        .iter()
        .filter(|(_, o)| o.len() > 1)
        .map(|(&e, o)| (e, o[0], o[1]))
        .min();

    // Triangles of the graph via sorted adjacency.
    let nb = host.vertex_bound();
    let mut adj = vec![Bitset::new(nb); nb];
    for &(u, v) in owners.keys() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut edges: Vec<_> = owners.keys().copied().collect();
    edges.sort_unstable();
    let mut stray_triangle = None;
    'outer: for &(u, v) in &edges {
        let mut common = adj[u].clone();
        common.and_assign(&adj[v]);
        for w in common.iter().filter(|&w| w > v) {
            let inside = owners[&(u, v)]
                .iter()
                .any(|&ci| host.cliques()[ci].binary_search(&w).is_ok());
            if !inside {
                stray_triangle = Some([u, v, w]);
                break 'outer;
            }
        }
    }
    GadgetReport {
        property2: shared_edge.is_none(),
        property3: stray_triangle.is_none(),
        clique_count: host.cliques().len(),
        shared_edge,
        stray_triangle,
    }
}

/// The colouring with `|V1| = 1`, `V2`, `V3` balanced, red edges from `V1`
/// and a red matching pairing the `i`-th vertices of `V2` and `V3`.
pub fn sharp_tripartite_colouring(n: usize) -> Result<TripartiteColouring> {
    if n < 3 {
        return Err(Error::invalid(format!("n = {n} must be at least 3")));
    }
    let a = (n - 1).div_ceil(2);
    let b = (n - 1) / 2;
    let mut c = TripartiteColouring::new([1, a, b], TRI_BLUE)?;
    for v in 1..n {
        c.set(0, v, TRI_RED)?;
    }
    for i in 0..b {
        c.set(1 + i, 1 + a + i, TRI_RED)?;
    }
    Ok(c)
}

/// A subset of `[1..n]` with no three-term arithmetic progression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApFreeSet {
    n: usize,
    elements: Vec<usize>,
}

/// Some `a < b < c` in `elements` with `a + c = 2b`, if any.
pub fn find_three_ap(elements: &[usize]) -> Option<(usize, usize, usize)> {
    let set: HashSet<usize> = elements.iter().copied().collect();
    let mut sorted: Vec<usize> = set.iter().copied().collect();
    sorted.sort_unstable();
    for (i, &a) in sorted.iter().enumerate() {
        for &c in &sorted[i + 1..] {
            if (a + c) % 2 == 0 && set.contains(&((a + c) / 2)) {
                return Some((a, (a + c) / 2, c));
            }
        }
    }
    None
}

impl ApFreeSet {
    pub fn new(n: usize, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&x) = elements.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::invalid(format!("element {x} outside [1..{n}]")));
        }
        if let Some((a, b, c)) = find_three_ap(&elements) {
            return Err(Error::PreconditionViolation(format!(
                "{a}, {b}, {c} is a 3-term arithmetic progression"
            )));
        }
        Ok(ApFreeSet { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Greedy scan of `1..=n`, keeping `x` unless it completes a 3-AP.
pub fn greedy_ap3_free(n: usize) -> ApFreeSet {
    let mut member = vec![false; n + 1];
    let mut elements = Vec::new();
    for x in 1..=n {
        // x is the largest term: need b in the set with a = 2b - x in the set.
        let completes = elements
            .iter()
            .any(|&b: &usize| 2 * b > x && member[2 * b - x] && 2 * b - x < b);
        if !completes {
            member[x] = true;
            elements.push(x);
        }
    }
    ApFreeSet { n, elements }
}

/// The tripartite Ruzsa–Szemerédi host with its rainbow triangles.
#[derive(Clone, Debug)]
pub struct RuzsaSzemerediHost {
    pub n: usize,
    pub colouring: HostColouring,
    pub triangles: RainbowCliqueSet,
}

impl RuzsaSzemerediHost {
    /// Vertex id of `x` in `X = [1..n]`.
    pub fn x_vertex(&self, x: usize) -> usize {
        x - 1
    }
    /// Vertex id of `y` in `Y = [1..2n]`.
    pub fn y_vertex(&self, y: usize) -> usize {
        self.n + y - 1
    }
    /// Vertex id of `z` in `Z = [1..3n]`.
    pub fn z_vertex(&self, z: usize) -> usize {
        3 * self.n + z - 1
    }
}

/// Host on `X = [1..n]`, `Y = [1..2n]`, `Z = [1..3n]` with a triangle
/// `(x, x+s, x+2s)` per `x` and `s` in `s_set`, coloured 0 on `X–Y`,
/// 1 on `Y–Z` and 2 on `X–Z`.
pub fn ruzsa_szemeredi_host(n: usize, s_set: &[usize]) -> Result<RuzsaSzemerediHost> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let s = ApFreeSet::new(n, s_set.to_vec())?;
    let mut colouring = HostColouring::new(6 * n, 3)?;
    let (xv, yv, zv) = (|x: usize| x - 1, |y: usize| n + y - 1, |z: usize| 3 * n + z - 1);
    let mut triangles = Vec::with_capacity(n * s.len());
    for x in 1..=n {
        for &step in s.elements() {
            let (a, b, c) = (xv(x), yv(x + step), zv(x + 2 * step));
            colouring.set_edge(a, b, 0)?;
            colouring.set_edge(b, c, 1)?;
            colouring.set_edge(a, c, 2)?;
            triangles.push(vec![a, b, c]);
        }
    }
    triangles.sort_unstable();
    let triangles = RainbowCliqueSet::from_sorted(3, 6 * n, triangles);
    Ok(RuzsaSzemerediHost {
        n,
        colouring,
        triangles,
    })
}
