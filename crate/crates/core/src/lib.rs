//! Almost Gallai edge colourings of complete graphs.
//!
//! An edge colouring is *almost t-Gallai* when no two rainbow `t`-cliques
//! share an edge. This crate builds the known extremal constructions,
//! verifies and counts their rainbow structure, searches small cases
//! exactly, and runs the Monte-Carlo checks of the randomized reductions
//! together with clique-count characteristic function experiments in
//! `G(n, p)`.

pub mod bitset;
pub mod charfunc;
pub mod colouring;
pub mod constructions;
pub mod counting;
pub mod error;
pub mod format;
pub mod hypercube;
pub mod probabilistic;
pub mod rainbow;
pub mod search;
pub mod tripartite;

pub use colouring::{
    pair_count, pair_index, Colour, ColourBitsets, CompleteColouring, EdgeColouring,
    HostColouring, BLUE, GREEN, RED,
};
pub use error::{Error, Result};
pub use rainbow::{
    classify_triangles_wrt_vertex, colour_degrees, crossing_rainbow_count,
    enumerate_rainbow_cliques, is_almost_gallai, special_edges, ColourDegreeProfile,
    GallaiCheck, RainbowCliqueSet, SpecialEdges, TriangleClassification,
};
