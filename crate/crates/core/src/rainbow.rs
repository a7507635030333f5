//! Rainbow clique enumeration and the structural verifiers built on it.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::{for_each_in_and, Bitset, Ones};
use crate::colouring::{pair_index, Colour, ColourBitsets, CompleteColouring, EdgeColouring};
use crate::error::{Error, Result};

/// Two listed cliques sharing an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharingWitness {
    pub first: usize,
    pub second: usize,
    pub edge: (usize, usize),
}

/// All rainbow `t`-cliques of a colouring, in lexicographic vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RainbowCliqueSet {
    pub t: usize,
    pub cliques: Vec<Vec<usize>>,
    pub edge_disjoint: bool,
    pub sharing_witness: Option<SharingWitness>,
}

impl RainbowCliqueSet {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub(crate) fn from_sorted(t: usize, n: usize, cliques: Vec<Vec<usize>>) -> Self {
        let sharing_witness = first_sharing_pair(n, &cliques);
        RainbowCliqueSet {
            t,
            edge_disjoint: sharing_witness.is_none(),
            sharing_witness,
            cliques,
        }
    }
}

/// Lexicographically smallest pair of cliques (by index) sharing an edge.
fn first_sharing_pair(n: usize, cliques: &[Vec<usize>]) -> Option<SharingWitness> {
    // edge -> (first user, second user)
    let mut users: HashMap<usize, (usize, Option<usize>)> = HashMap::new();
    for (i, k) in cliques.iter().enumerate() {
        for a in 0..k.len() {
            for b in a + 1..k.len() {
                let e = pair_index(n, k[a], k[b]);
                users
                    .entry(e)
                    .and_modify(|slot| {
                        if slot.1.is_none() {
                            slot.1 = Some(i);
                        }
                    })
                    .or_insert((i, None));
            }
        }
    }
    users
        .into_iter()
        .filter_map(|(e, (f, s))| s.map(|s| (f, s, e)))
        .min()
        .map(|(first, second, e)| SharingWitness {
            first,
            second,
            edge: crate::colouring::pair_from_index(n, e),
        })
}

fn binom2(t: usize) -> usize {
    t * (t - 1) / 2
}

fn check_clique_args<C: EdgeColouring + ?Sized>(c: &C, t: usize) -> Result<()> {
    if t < 3 {
        return Err(Error::invalid(format!("clique size t = {t} must be at least 3")));
    }
    if c.n() < t {
        return Err(Error::invalid(format!(
            "clique size t = {t} exceeds vertex count {}",
            c.n()
        )));
    }
    Ok(())
}

/// Enumerate the rainbow `t`-cliques of `c`.
pub fn enumerate_rainbow_cliques<C: EdgeColouring + ?Sized>(c: &C, t: usize) -> Result<RainbowCliqueSet> {
    check_clique_args(c, t)?;
    let n = c.n();
    if c.k() < binom2(t) {
        return Ok(RainbowCliqueSet::from_sorted(t, n, Vec::new()));
    }
    let mut cliques = if t == 3 && c.k() == 3 {
        three_colour_triangles(c)
    } else {
        backtrack_cliques(c, t)
    };
    cliques.sort_unstable();
    Ok(RainbowCliqueSet::from_sorted(t, n, cliques))
}

/// Rainbow triangles of a 3-colouring, anchored on the rarest colour class:
/// every rainbow triangle has exactly one edge of each colour.
fn three_colour_triangles<C: EdgeColouring + ?Sized>(c: &C) -> Vec<Vec<usize>> {
    let bits = ColourBitsets::new(c);
    let n = c.n();
    let class_size = |q: Colour| -> usize { (0..n).map(|v| bits.degree(v, q)).sum() };
    let anchor = (0..3).min_by_key(|&q| class_size(q)).unwrap_or(0);
    let (b, g) = match anchor {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    (0..n)
        .into_par_iter()
        .flat_map_iter(|u| {
            let mut local = Vec::new();
            let mut scratch = vec![0u64; bits.words()];
            for v in Ones::from_words(bits.neighbours(u, anchor)).filter(|&v| v > u) {
                let (bu, gu) = (bits.neighbours(u, b), bits.neighbours(u, g));
                let (bv, gv) = (bits.neighbours(v, b), bits.neighbours(v, g));
                for (i, s) in scratch.iter_mut().enumerate() {
                    *s = (bu[i] & gv[i]) | (gu[i] & bv[i]);
                }
                for w in Ones::from_words(&scratch) {
                    let mut tri = [u, v, w];
                    tri.sort_unstable();
                    local.push(tri.to_vec());
                }
            }
            local
        })
        .collect()
}

fn backtrack_cliques<C: EdgeColouring + ?Sized>(c: &C, t: usize) -> Vec<Vec<usize>> {
    let n = c.n();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|lead| {
            let mut out = Vec::new();
            let cands: Vec<usize> = (lead + 1..n).filter(|&w| c.get(lead, w).is_some()).collect();
            let mut chosen = vec![lead];
            let mut used = Vec::with_capacity(binom2(t));
            extend(c, t, &mut chosen, &mut used, &cands, &mut out);
            out
        })
        .collect()
}

fn extend<C: EdgeColouring + ?Sized>(
    c: &C,
    t: usize,
    chosen: &mut Vec<usize>,
    used: &mut Vec<Colour>,
    cands: &[usize],
    out: &mut Vec<Vec<usize>>,
) {
    for (i, &x) in cands.iter().enumerate() {
        let before = used.len();
        for &ch in chosen.iter() {
            // Candidates were filtered, so these colours are present and new.
            used.push(c.get(ch, x).expect("filtered candidate"));
        }
        chosen.push(x);
        if chosen.len() == t {
            out.push(chosen.clone());
        } else {
            let mut fresh = Vec::with_capacity(chosen.len());
            let next: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| {
                    fresh.clear();
                    for &ch in chosen.iter() {
                        match c.get(ch, w) {
                            Some(col) if !used.contains(&col) && !fresh.contains(&col) => {
                                fresh.push(col)
                            }
                            _ => return false,
                        }
                    }
                    true
                })
                .collect();
            if next.len() + chosen.len() >= t {
                extend(c, t, chosen, used, &next, out);
            }
        }
        chosen.pop();
        used.truncate(before);
    }
}

/// Rainbow `t`-cliques containing both `u` and `v`, each sorted.
pub fn rainbow_cliques_through<C: EdgeColouring + ?Sized>(c: &C, u: usize, v: usize, t: usize) -> Vec<Vec<usize>> {
    let Some(cuv) = c.get(u, v) else {
        return Vec::new();
    };
    if t < 2 || c.k() < binom2(t) {
        return Vec::new();
    }
    let cands: Vec<usize> = (0..c.n())
        .filter(|&w| w != u && w != v)
        .filter(|&w| match (c.get(u, w), c.get(v, w)) {
            (Some(a), Some(b)) => a != b && a != cuv && b != cuv,
            _ => false,
        })
        .collect();
    let mut out = Vec::new();
    if t == 2 {
        out.push(vec![u.min(v), u.max(v)]);
    } else {
        let mut chosen = vec![u, v];
        let mut used = vec![cuv];
        extend(c, t, &mut chosen, &mut used, &cands, &mut out);
    }
    for k in &mut out {
        k.sort_unstable();
    }
    out
}

/// Two rainbow cliques sharing an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliquePairWitness {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub edge: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GallaiCheck {
    pub almost_gallai: bool,
    pub rainbow_cliques: usize,
    pub witness: Option<CliquePairWitness>,
}

/// Is `c` almost `t`-Gallai, i.e. are its rainbow `t`-cliques pairwise edge-disjoint?
pub fn is_almost_gallai<C: EdgeColouring + ?Sized>(c: &C, t: usize) -> Result<GallaiCheck> {
    let set = enumerate_rainbow_cliques(c, t)?;
    Ok(GallaiCheck {
        almost_gallai: set.edge_disjoint,
        rainbow_cliques: set.len(),
        witness: set.sharing_witness.as_ref().map(|w| CliquePairWitness {
            first: set.cliques[w.first].clone(),
            second: set.cliques[w.second].clone(),
            edge: w.edge,
        }),
    })
}

/// Per-colour degree of one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColourDegreeProfile {
    pub vertex: usize,
    pub degrees: Vec<usize>,
}

pub fn colour_degrees<C: EdgeColouring + ?Sized>(c: &C, v: usize) -> Result<ColourDegreeProfile> {
    if v >= c.n() {
        return Err(Error::invalid(format!("vertex {v} out of range 0..{}", c.n())));
    }
    let mut degrees = vec![0; c.k()];
    for u in (0..c.n()).filter(|&u| u != v) {
        if let Some(q) = c.get(u, v) {
            degrees[q as usize] += 1;
        }
    }
    Ok(ColourDegreeProfile { vertex: v, degrees })
}

pub(crate) fn vertex_set(n: usize, vs: &[usize], what: &str) -> Result<Bitset> {
    let mut b = Bitset::new(n);
    for &v in vs {
        if v >= n {
            return Err(Error::invalid(format!("{what}: vertex {v} out of range 0..{n}")));
        }
        b.insert(v);
    }
    Ok(b)
}

pub(crate) fn disjoint_sets(n: usize, x: &[usize], y: &[usize]) -> Result<(Bitset, Bitset)> {
    let xs = vertex_set(n, x, "X")?;
    let ys = vertex_set(n, y, "Y")?;
    if let Some(v) = xs.iter().find(|&v| ys.contains(v)) {
        return Err(Error::invalid(format!("X and Y overlap at vertex {v}")));
    }
    Ok((xs, ys))
}

#[inline]
fn is_rainbow3(a: Colour, b: Colour, c: Colour) -> bool {
    a != b && b != c && a != c
}

/// Number of rainbow triangles `y x1 x2` with `y` in `Y`, `x1, x2` in `X` and `x1 x2` coloured `q`.
pub fn crossing_rainbow_count<C: EdgeColouring + ?Sized>(
    c: &C,
    x: &[usize],
    y: &[usize],
    q: Colour,
) -> Result<usize> {
    let n = c.n();
    let (xs, ys) = disjoint_sets(n, x, y)?;
    if c.k() == 3 {
        let bits = ColourBitsets::new(c);
        return Ok(crossing_count_bits(&bits, &xs, &ys, q));
    }
    let xv: Vec<usize> = xs.iter().collect();
    let mut count = 0;
    for (i, &x1) in xv.iter().enumerate() {
        for &x2 in &xv[i + 1..] {
            if c.get(x1, x2) != Some(q) {
                continue;
            }
            for yv in ys.iter() {
                if let (Some(a), Some(b)) = (c.get(yv, x1), c.get(yv, x2)) {
                    if is_rainbow3(a, b, q) {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Bitset kernel of [`crossing_rainbow_count`] for 3-colourings.
pub(crate) fn crossing_count_bits(bits: &ColourBitsets, xs: &Bitset, ys: &Bitset, q: Colour) -> usize {
    if q > 2 {
        return 0;
    }
    let others: Vec<Colour> = (0..3).filter(|&r| r != q).collect();
    let (a, b) = (others[0], others[1]);
    let mut count = 0;
    for x1 in xs.iter() {
        for_each_in_and(bits.neighbours(x1, q), xs.words(), |x2| {
            if x2 > x1 {
                let (a1, b1) = (bits.neighbours(x1, a), bits.neighbours(x1, b));
                let (a2, b2) = (bits.neighbours(x2, a), bits.neighbours(x2, b));
                for (i, yw) in ys.words().iter().enumerate() {
                    count += (((a1[i] & b2[i]) | (b1[i] & a2[i])) & yw).count_ones() as usize;
                }
            }
        });
    }
    count
}

/// Edges `xy` not touching `v` whose triangle with `v` is rainbow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialEdges {
    pub edges: Vec<(usize, usize)>,
    pub matching: bool,
}

pub fn special_edges(c: &CompleteColouring, v: usize) -> Result<SpecialEdges> {
    let n = c.n();
    if v >= n {
        return Err(Error::invalid(format!("vertex {v} out of range 0..{n}")));
    }
    let mut edges = Vec::new();
    for x in (0..n).filter(|&x| x != v) {
        for y in (x + 1..n).filter(|&y| y != v) {
            if is_rainbow3(c.colour(v, x), c.colour(v, y), c.colour(x, y)) {
                edges.push((x, y));
            }
        }
    }
    let mut touched = Bitset::new(n);
    let mut matching = true;
    for &(x, y) in &edges {
        if touched.contains(x) || touched.contains(y) {
            matching = false;
        }
        touched.insert(x);
        touched.insert(y);
    }
    Ok(SpecialEdges { edges, matching })
}

/// Rainbow triangles bucketed by their position relative to a vertex `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TriangleClassification {
    /// Triangles through `v`.
    pub type1: usize,
    /// Two vertices in one colour neighbourhood of `v`, the third in another.
    pub type2: usize,
    /// Vertices in three distinct colour neighbourhoods.
    pub type3: usize,
    /// Triangles inside a single neighbourhood `N_q(v)`, indexed by `q`.
    pub inside: Vec<usize>,
}

impl TriangleClassification {
    pub fn total(&self) -> usize {
        self.type1 + self.type2 + self.type3 + self.inside.iter().sum::<usize>()
    }
}

pub fn classify_triangles_wrt_vertex(c: &CompleteColouring, v: usize) -> Result<TriangleClassification> {
    if v >= c.n() {
        return Err(Error::invalid(format!("vertex {v} out of range 0..{}", c.n())));
    }
    let mut out = TriangleClassification {
        inside: vec![0; c.k()],
        ..Default::default()
    };
    if c.n() < 3 {
        return Ok(out);
    }
    for tri in enumerate_rainbow_cliques(c, 3)?.cliques {
        if tri.contains(&v) {
            out.type1 += 1;
            continue;
        }
        let cls = [c.colour(v, tri[0]), c.colour(v, tri[1]), c.colour(v, tri[2])];
        if cls[0] == cls[1] && cls[1] == cls[2] {
            out.inside[cls[0] as usize] += 1;
        } else if is_rainbow3(cls[0], cls[1], cls[2]) {
            out.type3 += 1;
        } else {
            out.type2 += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::HostColouring;

    fn k3_rainbow() -> CompleteColouring {
        CompleteColouring::from_pair_colours(3, 3, vec![0, 1, 2]).unwrap()
    }

    fn k4_shared() -> CompleteColouring {
        // 01 02 03 12 13 23
        CompleteColouring::from_pair_colours(4, 3, vec![0, 1, 1, 2, 2, 0]).unwrap()
    }

    #[test]
    fn single_rainbow_triangle() {
        let set = enumerate_rainbow_cliques(&k3_rainbow(), 3).unwrap();
        assert_eq!(set.cliques, vec![vec![0, 1, 2]]);
        assert!(set.edge_disjoint);
    }

    #[test]
    fn monochromatic_has_none() {
        let c = CompleteColouring::new(5, 3, 0).unwrap();
        assert!(enumerate_rainbow_cliques(&c, 3).unwrap().is_empty());
        for t in 3..=5 {
            assert!(is_almost_gallai(&c, t).unwrap().almost_gallai);
        }
    }

    #[test]
    fn shared_edge_witness() {
        let check = is_almost_gallai(&k4_shared(), 3).unwrap();
        assert!(!check.almost_gallai);
        let w = check.witness.unwrap();
        assert_eq!(w.first, vec![0, 1, 2]);
        assert_eq!(w.second, vec![0, 1, 3]);
        assert_eq!(w.edge, (0, 1));
    }

    #[test]
    fn bad_arguments() {
        let c = k3_rainbow();
        assert!(matches!(enumerate_rainbow_cliques(&c, 2), Err(Error::InvalidArgument(_))));
        assert!(matches!(enumerate_rainbow_cliques(&c, 4), Err(Error::InvalidArgument(_))));
        assert!(colour_degrees(&c, 3).is_err());
    }

    #[test]
    fn fast_and_backtracking_paths_agree() {
        // Same colouring presented with k = 3 and k = 4.
        let c3 = CompleteColouring::from_fn(13, 3, |u, v| ((u * 7 + v * 3 + u * v) % 3) as Colour).unwrap();
        let c4 = CompleteColouring::from_pair_colours(13, 4, c3.pair_colours().to_vec()).unwrap();
        let a = enumerate_rainbow_cliques(&c3, 3).unwrap();
        let b = enumerate_rainbow_cliques(&c4, 3).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn host_requires_all_edges() {
        let mut h = HostColouring::new(4, 3).unwrap();
        h.set_edge(0, 1, 0).unwrap();
        h.set_edge(1, 2, 1).unwrap();
        h.set_edge(0, 2, 2).unwrap();
        h.set_edge(2, 3, 0).unwrap();
        h.set_edge(1, 3, 2).unwrap();
        let set = enumerate_rainbow_cliques(&h, 3).unwrap();
        assert_eq!(set.cliques, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(set.sharing_witness.unwrap().edge, (1, 2));
    }

    #[test]
    fn four_cliques_need_six_colours() {
        let c = CompleteColouring::from_pair_colours(4, 6, (0..6).collect()).unwrap();
        assert_eq!(enumerate_rainbow_cliques(&c, 4).unwrap().cliques, vec![vec![0, 1, 2, 3]]);
        let c5 = CompleteColouring::from_pair_colours(4, 5, vec![0, 1, 2, 3, 4, 0]).unwrap();
        assert!(enumerate_rainbow_cliques(&c5, 4).unwrap().is_empty());
    }

    #[test]
    fn degrees_and_special_edges_on_rainbow_triangle() {
        let c = k3_rainbow();
        let mut d = colour_degrees(&c, 0).unwrap().degrees;
        d.sort_unstable();
        // two neighbours, two distinct colours
        assert_eq!(d, vec![0, 1, 1]);
        let s = special_edges(&c, 0).unwrap();
        assert_eq!(s.edges, vec![(1, 2)]);
        assert!(s.matching);
        let cls = classify_triangles_wrt_vertex(&c, 0).unwrap();
        assert_eq!(cls.type1, 1);
        assert_eq!(cls.total(), 1);
    }

    #[test]
    fn crossing_examples() {
        // x1 = 0, x2 = 1, y = 2
        let c = CompleteColouring::from_fn(3, 3, |u, v| match (u, v) {
            (0, 1) => 2,
            (0, 2) => 0,
            _ => 1,
        })
        .unwrap();
        assert_eq!(crossing_rainbow_count(&c, &[0, 1], &[2], 2).unwrap(), 1);
        let mut d = c.clone();
        d.set(1, 2, 0);
        assert_eq!(crossing_rainbow_count(&d, &[0, 1], &[2], 2).unwrap(), 0);
        assert!(crossing_rainbow_count(&c, &[0, 1], &[1, 2], 2).is_err());
    }

    #[test]
    fn special_edges_of_non_gallai_input_may_touch() {
        let s = special_edges(&k4_shared(), 0).unwrap();
        // triangles 012 and 013 both contain 0: special edges 12 and 13 share vertex 1
        assert_eq!(s.edges, vec![(1, 2), (1, 3)]);
        assert!(!s.matching);
    }
}
