//! Red/blue colourings of complete tripartite graphs.

use serde::Serialize;

use crate::colouring::pair_index;
use crate::error::{Error, Result};

/// Two-colouring of `K(V1, V2, V3)`. Vertices are numbered `V1`, then `V2`,
/// then `V3`; only cross-part pairs carry a colour (0 = red, 1 = blue).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripartiteColouring {
    sizes: [usize; 3],
    /// Indexed by pair position in `K_n`; intra-part pairs hold `NONE`.
    colours: Vec<u8>,
}

pub const TRI_RED: u8 = 0;
pub const TRI_BLUE: u8 = 1;
const NONE: u8 = u8::MAX;

/// Largest vertex count for tripartite colourings.
pub const MAX_TRIPARTITE_VERTICES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonochromaticCount {
    pub red: usize,
    pub blue: usize,
}

impl MonochromaticCount {
    pub fn total(&self) -> usize {
        self.red + self.blue
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodCheck {
    pub good: bool,
    /// Two monochromatic triangles sharing an edge.
    pub witness: Option<([usize; 3], [usize; 3])>,
}

impl TripartiteColouring {
    /// All cross edges coloured `fill`.
    pub fn new(sizes: [usize; 3], fill: u8) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::invalid(format!("part sizes {sizes:?} must be positive")));
        }
        if fill > TRI_BLUE {
            return Err(Error::invalid("colour must be 0 (red) or 1 (blue)"));
        }
        let n: usize = sizes.iter().sum();
        if n > MAX_TRIPARTITE_VERTICES {
            return Err(Error::SizeLimit(format!("{n} vertices exceeds {MAX_TRIPARTITE_VERTICES}")));
        }
        let mut me = TripartiteColouring {
            sizes,
            colours: vec![NONE; n * (n - 1) / 2],
        };
        for u in 0..n {
            for v in u + 1..n {
                if me.part(u) != me.part(v) {
                    me.colours[pair_index(n, u, v)] = fill;
                }
            }
        }
        Ok(me)
    }

    pub fn sizes(&self) -> [usize; 3] {
        self.sizes
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Part index (0, 1 or 2) of vertex `v`.
    pub fn part(&self, v: usize) -> usize {
        if v < self.sizes[0] {
            0
        } else if v < self.sizes[0] + self.sizes[1] {
            1
        } else {
            2
        }
    }

    /// Vertices of part `p`.
    pub fn part_range(&self, p: usize) -> std::ops::Range<usize> {
        let start: usize = self.sizes[..p].iter().sum();
        start..start + self.sizes[p]
    }

    pub fn colour(&self, u: usize, v: usize) -> Option<u8> {
        if u == v {
            return None;
        }
        match self.colours[pair_index(self.n(), u, v)] {
            NONE => None,
            c => Some(c),
        }
    }

    pub fn set(&mut self, u: usize, v: usize, c: u8) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n || self.part(u) == self.part(v) {
            return Err(Error::invalid(format!("{u} {v} is not a cross-part pair")));
        }
        if c > TRI_BLUE {
            return Err(Error::invalid("colour must be 0 (red) or 1 (blue)"));
        }
        self.colours[pair_index(n, u, v)] = c;
        Ok(())
    }

    /// Cross-part pairs `(u, v, colour)` with `u < v` in lexicographic order.
    pub fn cross_pairs(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        let n = self.n();
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .filter_map(move |(u, v)| self.colour(u, v).map(|c| (u, v, c)))
    }

    /// Monochromatic triangles `(v1, v2, v3)` with one vertex per part.
    pub fn monochromatic_triangles(&self) -> Vec<([usize; 3], u8)> {
        let mut out = Vec::new();
        for a in self.part_range(0) {
            for b in self.part_range(1) {
                let c_ab = self.colour(a, b).expect("cross pair");
                for c in self.part_range(2) {
                    if self.colour(a, c) == Some(c_ab) && self.colour(b, c) == Some(c_ab) {
                        out.push(([a, b, c], c_ab));
                    }
                }
            }
        }
        out
    }

    pub fn monochromatic_count(&self) -> MonochromaticCount {
        let tris = self.monochromatic_triangles();
        let red = tris.iter().filter(|(_, c)| *c == TRI_RED).count();
        MonochromaticCount {
            red,
            blue: tris.len() - red,
        }
    }

    /// Good iff no two monochromatic triangles share an edge.
    pub fn check_good(&self) -> GoodCheck {
        let n = self.n();
        let mut owner: std::collections::HashMap<usize, [usize; 3]> = Default::default();
        for (tri, _) in self.monochromatic_triangles() {
            for (a, b) in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
                if let Some(prev) = owner.insert(pair_index(n, a, b), tri) {
                    return GoodCheck {
                        good: false,
                        witness: Some((prev, tri)),
                    };
                }
            }
        }
        GoodCheck {
            good: true,
            witness: None,
        }
    }
}
