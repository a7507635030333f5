//! Plain-text formats for colourings, hosts, AP-free sets and labelled graphs.
//!
//! All formats are line based: ASCII decimal tokens separated by one space,
//! every line terminated by LF. Parsers are strict (no blank lines, no
//! leading zeros, no `\r`), so any accepted input is reproduced byte for
//! byte by the matching writer. Sizes are checked against the number of
//! lines actually present before anything is allocated.

use std::fmt::Write as _;

use crate::colouring::{pair_count, Colour, CompleteColouring, HostColouring, MAX_COLOURS, MAX_VERTICES};
use crate::constructions::{ApFreeSet, CliqueDecomposedHost};
use crate::error::{Error, Result};
use crate::hypercube::LabelledGraph;
use crate::tripartite::{TripartiteColouring, MAX_TRIPARTITE_VERTICES, TRI_BLUE};

/// Hosts store a slot per vertex pair, so they get a smaller cap than
/// complete colourings whose size is bounded by the input itself.
pub const MAX_HOST_VERTICES: usize = 4096;

/// Largest clique size accepted in a host file.
pub const MAX_CLIQUE_SIZE: usize = 64;

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::parse(1, "empty input"));
        }
        let body = text
            .strip_suffix('\n')
            .ok_or_else(|| Error::parse(text.lines().count().max(1), "missing final newline"))?;
        let lines: Vec<&str> = body.split('\n').collect();
        for (i, l) in lines.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::parse(i + 1, "blank line"));
            }
        }
        Ok(Lines { lines, pos: 0 })
    }

    fn remaining(&self) -> usize {
        self.lines.len() - self.pos
    }

    /// 1-based number of the line `next` would return.
    fn line_no(&self) -> usize {
        self.pos + 1
    }

    fn next(&mut self) -> Result<(usize, &'a str)> {
        let no = self.line_no();
        let l = self
            .lines
            .get(self.pos)
            .ok_or_else(|| Error::parse(no, "unexpected end of input"))?;
        self.pos += 1;
        Ok((no, l))
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.lines.len() {
            return Err(Error::parse(self.line_no(), "trailing lines"));
        }
        Ok(())
    }
}

fn number(line: usize, tok: &str) -> Result<u64> {
    let ok = !tok.is_empty()
        && tok.bytes().all(|b| b.is_ascii_digit())
        && (tok == "0" || !tok.starts_with('0'));
    if !ok {
        return Err(Error::parse(line, format!("expected a decimal number, got {tok:?}")));
    }
    tok.parse::<u64>()
        .map_err(|_| Error::parse(line, format!("number {tok} out of range")))
}

/// Exactly `N` numbers separated by single spaces.
fn numbers<const N: usize>(line: usize, text: &str) -> Result<[u64; N]> {
    let mut out = [0u64; N];
    let mut toks = text.split(' ');
    for slot in out.iter_mut() {
        let tok = toks
            .next()
            .ok_or_else(|| Error::parse(line, format!("expected {N} fields")))?;
        *slot = number(line, tok)?;
    }
    if toks.next().is_some() {
        return Err(Error::parse(line, format!("expected {N} fields")));
    }
    Ok(out)
}

fn bounded(line: usize, what: &str, x: u64, max: usize) -> Result<usize> {
    if x > max as u64 {
        return Err(Error::parse(line, format!("{what} = {x} exceeds {max}")));
    }
    Ok(x as usize)
}

/// Parse a complete colouring: `n k`, then every pair `u v c` in
/// lexicographic order.
pub fn parse_colouring(text: &str) -> Result<CompleteColouring> {
    let mut lines = Lines::new(text)?;
    let (no, head) = lines.next()?;
    if head == "host" {
        return Err(Error::parse(no, "this is a host colouring"));
    }
    let [n, k] = numbers::<2>(no, head)?;
    let n = bounded(no, "n", n, MAX_VERTICES)?;
    let k = bounded(no, "k", k, MAX_COLOURS)?;
    if k == 0 {
        return Err(Error::parse(no, "k must be positive"));
    }
    if lines.remaining() != pair_count(n) {
        return Err(Error::parse(
            no,
            format!("n = {n} needs {} pair lines, found {}", pair_count(n), lines.remaining()),
        ));
    }
    let mut colours = Vec::with_capacity(pair_count(n));
    for u in 0..n {
        for v in u + 1..n {
            let (no, l) = lines.next()?;
            let [a, b, c] = numbers::<3>(no, l)?;
            if (a, b) != (u as u64, v as u64) {
                return Err(Error::parse(no, format!("expected pair {u} {v}, got {a} {b}")));
            }
            if c >= k as u64 {
                return Err(Error::parse(no, format!("colour {c} not below k = {k}")));
            }
            colours.push(c as Colour);
        }
    }
    lines.finish()?;
    CompleteColouring::from_pair_colours(n, k, colours)
}

pub fn write_colouring(c: &CompleteColouring) -> String {
    let mut s = String::with_capacity(pair_count(c.n()) * 12 + 16);
    let _ = writeln!(s, "{} {}", c.n(), c.k());
    for (u, v, col) in c.pairs() {
        let _ = writeln!(s, "{u} {v} {col}");
    }
    s
}

/// Parse a host colouring: `host`, `n k`, then present edges `u v c` in
/// strictly ascending lexicographic order.
pub fn parse_host_colouring(text: &str) -> Result<HostColouring> {
    let mut lines = Lines::new(text)?;
    let (no, head) = lines.next()?;
    if head != "host" {
        return Err(Error::parse(no, "expected \"host\""));
    }
    let (no, l) = lines.next()?;
    let [n, k] = numbers::<2>(no, l)?;
    let n = bounded(no, "n", n, MAX_HOST_VERTICES)?;
    let k = bounded(no, "k", k, MAX_COLOURS)?;
    if k == 0 {
        return Err(Error::parse(no, "k must be positive"));
    }
    if lines.remaining() > pair_count(n) {
        return Err(Error::parse(no, format!("more edges than the {} pairs of K_{n}", pair_count(n))));
    }
    let mut host = HostColouring::new(n, k)?;
    let mut last: Option<(u64, u64)> = None;
    while lines.remaining() > 0 {
        let (no, l) = lines.next()?;
        let [u, v, c] = numbers::<3>(no, l)?;
        if u >= v || v >= n as u64 {
            return Err(Error::parse(no, format!("bad edge {u} {v} for n = {n}")));
        }
        if last.is_some_and(|p| p >= (u, v)) {
            return Err(Error::parse(no, "edges not in strictly ascending order"));
        }
        if c >= k as u64 {
            return Err(Error::parse(no, format!("colour {c} not below k = {k}")));
        }
        last = Some((u, v));
        host.set_edge(u as usize, v as usize, c as Colour)?;
    }
    Ok(host)
}

pub fn write_host_colouring(h: &HostColouring) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "host\n{} {}", h.n(), h.k());
    for (u, v, c) in h.edges() {
        let _ = writeln!(s, "{u} {v} {c}");
    }
    s
}

/// Either kind of colouring file, told apart by the first line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyColouring {
    Complete(CompleteColouring),
    Host(HostColouring),
}

pub fn parse_any_colouring(text: &str) -> Result<AnyColouring> {
    if text.starts_with("host\n") {
        parse_host_colouring(text).map(AnyColouring::Host)
    } else {
        parse_colouring(text).map(AnyColouring::Complete)
    }
}

/// Parse a clique list: `t`, `cliques C`, then `C` lines of `t` ascending
/// vertex ids.
pub fn parse_clique_host(text: &str) -> Result<CliqueDecomposedHost> {
    let mut lines = Lines::new(text)?;
    let (no, l) = lines.next()?;
    let [t] = numbers::<1>(no, l)?;
    let t = bounded(no, "t", t, MAX_CLIQUE_SIZE)?;
    if t < 2 {
        return Err(Error::parse(no, "t must be at least 2"));
    }
    let (no, l) = lines.next()?;
    let count = l
        .strip_prefix("cliques ")
        .ok_or_else(|| Error::parse(no, "expected \"cliques C\""))?;
    let [count] = numbers::<1>(no, count)?;
    if count != lines.remaining() as u64 {
        return Err(Error::parse(
            no,
            format!("declared {count} cliques, found {} lines", lines.remaining()),
        ));
    }
    let mut cliques = Vec::with_capacity(count as usize);
    while lines.remaining() > 0 {
        let (no, l) = lines.next()?;
        let mut clique = Vec::with_capacity(t);
        for tok in l.split(' ') {
            if clique.len() == t {
                return Err(Error::parse(no, format!("more than {t} vertices")));
            }
            let v = bounded(no, "vertex", number(no, tok)?, MAX_VERTICES - 1)?;
            if clique.last().is_some_and(|&p| p >= v) {
                return Err(Error::parse(no, "vertices not strictly ascending"));
            }
            clique.push(v);
        }
        if clique.len() != t {
            return Err(Error::parse(no, format!("expected {t} vertices")));
        }
        cliques.push(clique);
    }
    CliqueDecomposedHost::new(t, cliques)
}

pub fn write_clique_host(h: &CliqueDecomposedHost) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}\ncliques {}", h.t(), h.cliques().len());
    for k in h.cliques() {
        let row: Vec<String> = k.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

/// Largest element accepted in an AP-free set file.
pub const MAX_AP_ELEMENT: u64 = 1 << 40;

/// Parse one element per line in strictly ascending order. The range bound
/// is `n` when given, otherwise the largest element.
pub fn parse_ap_free_set(text: &str, n: Option<usize>) -> Result<ApFreeSet> {
    let mut elements: Vec<usize> = Vec::new();
    if !text.is_empty() {
        let mut lines = Lines::new(text)?;
        while lines.remaining() > 0 {
            let (no, l) = lines.next()?;
            let [x] = numbers::<1>(no, l)?;
            let x = bounded(no, "element", x, MAX_AP_ELEMENT as usize)?;
            if x == 0 {
                return Err(Error::parse(no, "elements start at 1"));
            }
            if elements.last().is_some_and(|&p| p >= x) {
                return Err(Error::parse(no, "elements not strictly ascending"));
            }
            elements.push(x);
        }
    }
    let n = n.unwrap_or_else(|| elements.last().copied().unwrap_or(0));
    ApFreeSet::new(n, elements)
}

pub fn write_ap_free_set(s: &ApFreeSet) -> String {
    s.elements().iter().map(|x| format!("{x}\n")).collect()
}

/// Largest vertex count accepted in a labelled-graph file.
pub const MAX_LABELLED_VERTICES: usize = 1 << 20;

/// Parse `y V E`, then `V` lines `id label` with ids `0..V` in order, then
/// `E` lines `u v` with `u < v`, strictly ascending.
pub fn parse_labelled_graph(text: &str) -> Result<LabelledGraph> {
    let mut lines = Lines::new(text)?;
    let (no, l) = lines.next()?;
    let [y, vc, ec] = numbers::<3>(no, l)?;
    let y = bounded(no, "y", y, 64)? as u32;
    let vc = bounded(no, "V", vc, MAX_LABELLED_VERTICES)?;
    if ec.checked_add(vc as u64) != Some(lines.remaining() as u64) {
        return Err(Error::parse(
            no,
            format!("header promises {vc} + {ec} lines, found {}", lines.remaining()),
        ));
    }
    let mut labels = Vec::with_capacity(vc);
    for id in 0..vc {
        let (no, l) = lines.next()?;
        let [v, label] = numbers::<2>(no, l)?;
        if v != id as u64 {
            return Err(Error::parse(no, format!("expected vertex {id}, got {v}")));
        }
        if y < 64 && label >> y != 0 {
            return Err(Error::parse(no, format!("label {label} is not a subset of [{y}]")));
        }
        labels.push(label);
    }
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(ec as usize);
    while lines.remaining() > 0 {
        let (no, l) = lines.next()?;
        let [u, v] = numbers::<2>(no, l)?;
        if u >= v || v >= vc as u64 {
            return Err(Error::parse(no, format!("bad edge {u} {v}")));
        }
        let e = (u as usize, v as usize);
        if edges.last().is_some_and(|&p| p >= e) {
            return Err(Error::parse(no, "edges not strictly ascending"));
        }
        edges.push(e);
    }
    LabelledGraph::new(y, labels, edges)
}

pub fn write_labelled_graph(g: &LabelledGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} {}", g.y(), g.vertex_count(), g.edges().len());
    for (v, l) in g.labels().iter().enumerate() {
        let _ = writeln!(s, "{v} {l}");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Parse `tripartite n1 n2 n3`, then every cross pair `u v c` in
/// lexicographic order with `c` 0 (red) or 1 (blue).
pub fn parse_tripartite(text: &str) -> Result<TripartiteColouring> {
    let mut lines = Lines::new(text)?;
    let (no, l) = lines.next()?;
    let rest = l
        .strip_prefix("tripartite ")
        .ok_or_else(|| Error::parse(no, "expected \"tripartite n1 n2 n3\""))?;
    let sizes = numbers::<3>(no, rest)?;
    let mut parts = [0usize; 3];
    for (p, &s) in parts.iter_mut().zip(&sizes) {
        *p = bounded(no, "part size", s, MAX_TRIPARTITE_VERTICES)?;
        if *p == 0 {
            return Err(Error::parse(no, "part sizes must be positive"));
        }
    }
    let n: usize = parts.iter().sum();
    if n > MAX_TRIPARTITE_VERTICES {
        return Err(Error::parse(no, format!("{n} vertices exceeds {MAX_TRIPARTITE_VERTICES}")));
    }
    let cross = parts[0] * parts[1] + parts[0] * parts[2] + parts[1] * parts[2];
    if lines.remaining() != cross {
        return Err(Error::parse(
            no,
            format!("expected {cross} cross-pair lines, found {}", lines.remaining()),
        ));
    }
    let mut c = TripartiteColouring::new(parts, 0)?;
    let pairs: Vec<(usize, usize)> = c.cross_pairs().map(|(u, v, _)| (u, v)).collect();
    for (u, v) in pairs {
        let (no, l) = lines.next()?;
        let [a, b, col] = numbers::<3>(no, l)?;
        if (a, b) != (u as u64, v as u64) {
            return Err(Error::parse(no, format!("expected pair {u} {v}, got {a} {b}")));
        }
        if col > TRI_BLUE as u64 {
            return Err(Error::parse(no, format!("colour {col} is not 0 or 1")));
        }
        c.set(u, v, col as u8)?;
    }
    lines.finish()?;
    Ok(c)
}

pub fn write_tripartite(c: &TripartiteColouring) -> String {
    let [a, b, d] = c.sizes();
    let mut s = format!("tripartite {a} {b} {d}\n");
    for (u, v, col) in c.cross_pairs() {
        let _ = writeln!(s, "{u} {v} {col}");
    }
    s
}
