//! Edge colourings of complete graphs and of arbitrary host graphs.
//!
//! Colours are dense ids `0..k`. For three colours the convention
//! [`RED`] = 0, [`BLUE`] = 1, [`GREEN`] = 2 is used throughout the crate.
//! Pairs are stored in a flat triangular array indexed in lexicographic
//! `(min, max)` order, which is also the order of the text format.

use crate::bitset::{words_for, Bitset};
use crate::error::{Error, Result};

pub type Colour = u32;

pub const RED: Colour = 0;
pub const BLUE: Colour = 1;
pub const GREEN: Colour = 2;

/// Largest vertex count accepted for dense pair storage.
pub const MAX_VERTICES: usize = 16_384;

/// Largest colour count accepted.
pub const MAX_COLOURS: usize = 1 << 24;

const ABSENT: Colour = Colour::MAX;

/// Number of unordered pairs on `n` vertices.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{u, v}` in lexicographic order.
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    debug_assert!(a != b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(n: usize, mut idx: usize) -> (usize, usize) {
    let mut u = 0;
    while idx >= n - u - 1 {
        idx -= n - u - 1;
        u += 1;
    }
    (u, u + 1 + idx)
}

/// Read access shared by complete and host colourings.
pub trait EdgeColouring: Sync {
    fn n(&self) -> usize;
    fn k(&self) -> usize;
    /// Colour of `{u, v}`, or `None` if the pair is not an edge.
    fn get(&self, u: usize, v: usize) -> Option<Colour>;
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::SizeLimit(format!(
            "{n} vertices exceeds the dense storage limit of {MAX_VERTICES}"
        )));
    }
    Ok(())
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > MAX_COLOURS {
        return Err(Error::invalid(format!("colour count {k} out of range")));
    }
    Ok(())
}

/// An edge colouring of `K_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompleteColouring {
    n: usize,
    k: usize,
    colours: Vec<Colour>,
}

impl CompleteColouring {
    /// Monochromatic colouring in `fill`.
    pub fn new(n: usize, k: usize, fill: Colour) -> Result<Self> {
        check_size(n)?;
        check_k(k)?;
        if fill as usize >= k {
            return Err(Error::invalid(format!("colour {fill} not below k = {k}")));
        }
        Ok(CompleteColouring {
            n,
            k,
            colours: vec![fill; pair_count(n)],
        })
    }

    pub fn from_fn(n: usize, k: usize, mut f: impl FnMut(usize, usize) -> Colour) -> Result<Self> {
        check_size(n)?;
        check_k(k)?;
        let mut colours = Vec::with_capacity(pair_count(n));
        for u in 0..n {
            for v in u + 1..n {
                let c = f(u, v);
                if c as usize >= k {
                    return Err(Error::invalid(format!(
                        "colour {c} on pair {u} {v} not below k = {k}"
                    )));
                }
                colours.push(c);
            }
        }
        Ok(CompleteColouring { n, k, colours })
    }

    /// Build from colours listed in lexicographic pair order.
    pub fn from_pair_colours(n: usize, k: usize, colours: Vec<Colour>) -> Result<Self> {
        check_size(n)?;
        check_k(k)?;
        if colours.len() != pair_count(n) {
            return Err(Error::invalid(format!(
                "expected {} pair colours, got {}",
                pair_count(n),
                colours.len()
            )));
        }
        if let Some(c) = colours.iter().find(|&&c| c as usize >= k) {
            return Err(Error::invalid(format!("colour {c} not below k = {k}")));
        }
        Ok(CompleteColouring { n, k, colours })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> Colour {
        assert!(u != v, "colour of a loop {u}{u} is undefined");
        self.colours[pair_index(self.n, u, v)]
    }

    pub fn set(&mut self, u: usize, v: usize, c: Colour) {
        assert!(u != v, "cannot colour a loop");
        assert!((c as usize) < self.k, "colour {c} not below k = {}", self.k);
        let idx = pair_index(self.n, u, v);
        self.colours[idx] = c;
    }

    /// Colours in lexicographic pair order.
    pub fn pair_colours(&self) -> &[Colour] {
        &self.colours
    }

    /// `(u, v, colour)` with `u < v` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Colour)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .zip(self.colours.iter())
            .map(|((u, v), &c)| (u, v, c))
    }

    /// Induced colouring on `vertices`, renumbered in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Self> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.n) {
            return Err(Error::invalid(format!("vertex {v} out of range")));
        }
        let mut seen = Bitset::new(self.n);
        for &v in vertices {
            if seen.contains(v) {
                return Err(Error::invalid(format!("vertex {v} repeated")));
            }
            seen.insert(v);
        }
        Self::from_fn(vertices.len(), self.k, |i, j| {
            self.colour(vertices[i], vertices[j])
        })
    }

    /// Apply a colour map `f: 0..k -> 0..new_k` to every edge.
    pub fn map_colours(&self, new_k: usize, map: &[Colour]) -> Result<Self> {
        if map.len() < self.k {
            return Err(Error::invalid("colour map shorter than k"));
        }
        let colours = self.colours.iter().map(|&c| map[c as usize]).collect();
        Self::from_pair_colours(self.n, new_k, colours)
    }

    /// Number of distinct colours actually used.
    pub fn used_colours(&self) -> usize {
        let mut used = vec![false; self.k];
        for &c in &self.colours {
            used[c as usize] = true;
        }
        used.into_iter().filter(|&u| u).count()
    }
}

impl EdgeColouring for CompleteColouring {
    fn n(&self) -> usize {
        self.n
    }
    fn k(&self) -> usize {
        self.k
    }
    #[inline]
    fn get(&self, u: usize, v: usize) -> Option<Colour> {
        if u == v {
            None
        } else {
            Some(self.colours[pair_index(self.n, u, v)])
        }
    }
}

/// An edge colouring of a (not necessarily complete) host graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HostColouring {
    n: usize,
    k: usize,
    colours: Vec<Colour>,
    edges: usize,
}

impl HostColouring {
    /// Edgeless host on `n` vertices.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_size(n)?;
        check_k(k)?;
        Ok(HostColouring {
            n,
            k,
            colours: vec![ABSENT; pair_count(n)],
            edges: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Insert or recolour the edge `{u, v}`.
    pub fn set_edge(&mut self, u: usize, v: usize, c: Colour) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::invalid(format!("bad edge {u} {v}")));
        }
        if c as usize >= self.k {
            return Err(Error::invalid(format!("colour {c} not below k = {}", self.k)));
        }
        let idx = pair_index(self.n, u, v);
        if self.colours[idx] == ABSENT {
            self.edges += 1;
        }
        self.colours[idx] = c;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.get(u, v).is_some()
    }

    pub fn colour(&self, u: usize, v: usize) -> Option<Colour> {
        self.get(u, v)
    }

    /// Present edges as `(u, v, colour)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Colour)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .zip(self.colours.iter())
            .filter(|(_, &c)| c != ABSENT)
            .map(|((u, v), &c)| (u, v, c))
    }
}

impl EdgeColouring for HostColouring {
    fn n(&self) -> usize {
        self.n
    }
    fn k(&self) -> usize {
        self.k
    }
    #[inline]
    fn get(&self, u: usize, v: usize) -> Option<Colour> {
        if u == v {
            return None;
        }
        match self.colours[pair_index(self.n, u, v)] {
            ABSENT => None,
            c => Some(c),
        }
    }
}

impl From<&CompleteColouring> for HostColouring {
    fn from(c: &CompleteColouring) -> Self {
        HostColouring {
            n: c.n,
            k: c.k,
            colours: c.colours.clone(),
            edges: c.colours.len(),
        }
    }
}

/// Per-vertex, per-colour neighbourhood bitsets.
#[derive(Clone, Debug)]
pub struct ColourBitsets {
    n: usize,
    k: usize,
    words: usize,
    data: Vec<u64>,
}

impl ColourBitsets {
    pub fn new<C: EdgeColouring + ?Sized>(c: &C) -> Self {
        let (n, k) = (c.n(), c.k());
        let words = words_for(n);
        let mut data = vec![0u64; n * k * words];
        for u in 0..n {
            for v in u + 1..n {
                if let Some(q) = c.get(u, v) {
                    let q = q as usize;
                    data[(u * k + q) * words + (v >> 6)] |= 1 << (v & 63);
                    data[(v * k + q) * words + (u >> 6)] |= 1 << (u & 63);
                }
            }
        }
        ColourBitsets { n, k, words, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    /// `N_q(v)` as raw words.
    #[inline]
    pub fn neighbours(&self, v: usize, q: Colour) -> &[u64] {
        let start = (v * self.k + q as usize) * self.words;
        &self.data[start..start + self.words]
    }

    pub fn degree(&self, v: usize, q: Colour) -> usize {
        self.neighbours(v, q)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn neighbour_set(&self, v: usize, q: Colour) -> Bitset {
        Bitset::from_indices(self.n, crate::bitset::Ones::from_words(self.neighbours(v, q)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_is_lexicographic() {
        let n = 7;
        let mut expected = 0;
        for u in 0..n {
            for v in u + 1..n {
                assert_eq!(pair_index(n, u, v), expected);
                assert_eq!(pair_index(n, v, u), expected);
                assert_eq!(pair_from_index(n, expected), (u, v));
                expected += 1;
            }
        }
        assert_eq!(expected, pair_count(n));
    }

    #[test]
    fn colour_is_symmetric() {
        let c = CompleteColouring::from_fn(5, 3, |u, v| ((u + 2 * v) % 3) as Colour).unwrap();
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert_eq!(c.colour(u, v), c.colour(v, u));
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range_colours() {
        assert!(CompleteColouring::new(4, 2, 2).is_err());
        assert!(CompleteColouring::from_fn(3, 2, |_, _| 5).is_err());
        assert!(CompleteColouring::from_pair_colours(3, 3, vec![0, 1]).is_err());
        assert!(matches!(
            CompleteColouring::new(MAX_VERTICES + 1, 3, 0),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn host_edges_only_where_set() {
        let mut h = HostColouring::new(4, 3).unwrap();
        h.set_edge(2, 0, 1).unwrap();
        h.set_edge(1, 3, 2).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.colour(0, 2), Some(1));
        assert_eq!(h.colour(0, 1), None);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 2, 1), (1, 3, 2)]);
        assert!(h.set_edge(1, 1, 0).is_err());
    }

    #[test]
    fn bitsets_match_colours() {
        let c = CompleteColouring::from_fn(70, 3, |u, v| ((u * v) % 3) as Colour).unwrap();
        let b = ColourBitsets::new(&c);
        for v in 0..70 {
            let total: usize = (0..3).map(|q| b.degree(v, q)).sum();
            assert_eq!(total, 69);
            for u in b.neighbour_set(v, 1).iter() {
                assert_eq!(c.colour(u, v), 1);
            }
        }
    }
}
