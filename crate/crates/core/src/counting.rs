//! Double-counting quantities on 3-colourings: `c_RB(v)`, nice quadruples
//! and the crossing-triangle bound.

use serde::Serialize;

use crate::bitset::{for_each_in_and, Ones};
use crate::colouring::{ColourBitsets, CompleteColouring, BLUE, GREEN, RED};
use crate::error::{Error, Result};
use crate::hypercube::half_x_log_x;
use crate::rainbow::{crossing_count_bits, disjoint_sets};

fn require_three(c: &CompleteColouring) -> Result<()> {
    if c.k() != 3 {
        return Err(Error::invalid(format!("need a 3-colouring, got k = {}", c.k())));
    }
    Ok(())
}

fn c_rb_bits(bits: &ColourBitsets, v: usize) -> usize {
    let blue = bits.neighbours(v, BLUE);
    Ones::from_words(bits.neighbours(v, RED))
        .map(|x| {
            bits.neighbours(x, GREEN)
                .iter()
                .zip(blue)
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum::<usize>()
        })
        .sum()
}

/// Rainbow triangles `v x y` with `v x` red and `v y` blue.
pub fn c_rb(c: &CompleteColouring, v: usize) -> Result<usize> {
    require_three(c)?;
    if v >= c.n() {
        return Err(Error::invalid(format!("vertex {v} out of range 0..{}", c.n())));
    }
    Ok(c_rb_bits(&ColourBitsets::new(c), v))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NiceQuadrupleReport {
    /// Nice quadruples counted one by one.
    pub total: u64,
    /// `sum_v d_G(v) c_RB(v)`.
    pub per_vertex_sum: u64,
    /// Quadruples by the colours of `(u v_R, u v_B)`: green/red, blue/green,
    /// green/green.
    pub type_counts: [u64; 3],
    /// Quadruples matching none of the three patterns; zero on almost
    /// Gallai inputs.
    pub other: u64,
}

impl NiceQuadrupleReport {
    pub fn identity_holds(&self) -> bool {
        self.total == self.per_vertex_sum
    }
}

/// Count nice quadruples `(v_G, v_R, v_B, u)`: `v_G v_R` blue, `v_G v_B` red,
/// `v_R v_B` and `v_G u` green.
pub fn nice_quadruples(c: &CompleteColouring) -> Result<NiceQuadrupleReport> {
    require_three(c)?;
    let n = c.n();
    let bits = ColourBitsets::new(c);
    let mut report = NiceQuadrupleReport::default();

    // Direct: ordered green edge (v_R, v_B), then v_G, then u.
    for v_r in 0..n {
        for v_b in Ones::from_words(bits.neighbours(v_r, GREEN)) {
            for_each_in_and(bits.neighbours(v_r, BLUE), bits.neighbours(v_b, RED), |v_g| {
                for u in Ones::from_words(bits.neighbours(v_g, GREEN)) {
                    report.total += 1;
                    match (c.colour(u, v_r), c.colour(u, v_b)) {
                        (GREEN, RED) => report.type_counts[0] += 1,
                        (BLUE, GREEN) => report.type_counts[1] += 1,
                        (GREEN, GREEN) => report.type_counts[2] += 1,
                        _ => report.other += 1,
                    }
                }
            });
        }
    }

    report.per_vertex_sum = (0..n)
        .map(|v| bits.degree(v, GREEN) as u64 * c_rb_bits(&bits, v) as u64)
        .sum();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingBound {
    pub tau: usize,
    /// `(e/2)(d+1)|X| log2 |X|`.
    pub bound: f64,
    pub ok: bool,
    /// `(1/2)|X| log2 |X|`, which applies when no green edge joins `X` and `Y`.
    pub green_free_bound: f64,
    pub green_free: bool,
}

const BOUND_TOLERANCE: f64 = 1e-9;

/// Check the crossing bound for green-edged rainbow triangles from `Y` into `X`.
pub fn check_crossing_bound(c: &CompleteColouring, x: &[usize], y: &[usize], d: usize) -> Result<CrossingBound> {
    require_three(c)?;
    let (xs, ys) = disjoint_sets(c.n(), x, y)?;
    let bits = ColourBitsets::new(c);
    let mut green_free = true;
    for yv in ys.iter() {
        let deg = bits
            .neighbours(yv, GREEN)
            .iter()
            .zip(xs.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum::<usize>();
        if deg > d {
            return Err(Error::PreconditionViolation(format!(
                "vertex {yv} of Y has {deg} green neighbours in X, more than d = {d}"
            )));
        }
        green_free &= deg == 0;
    }
    Ok(crossing_bound_bits(&bits, &xs, &ys, d, green_free))
}

pub(crate) fn crossing_bound_bits(
    bits: &ColourBitsets,
    xs: &crate::bitset::Bitset,
    ys: &crate::bitset::Bitset,
    d: usize,
    green_free: bool,
) -> CrossingBound {
    let tau = crossing_count_bits(bits, xs, ys, GREEN);
    let base = half_x_log_x(xs.count());
    let bound = std::f64::consts::E * (d + 1) as f64 * base;
    CrossingBound {
        tau,
        bound,
        ok: tau as f64 <= bound + BOUND_TOLERANCE,
        green_free_bound: base,
        green_free,
    }
}
