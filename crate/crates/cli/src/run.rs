use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;

use gallai::charfunc::{
    best_known_rainbow_count, estimate_charfunc_grid, rainbow_final_bound, RainbowBoundInput,
};
use gallai::constructions::{
    gadget_colouring, greedy_ap3_free, hypercube_colouring, ruzsa_szemeredi_host, sharp_tripartite_colouring,
    truncated_hypercube_colouring, verify_gadget_properties, CliqueDecomposedHost,
};
use gallai::counting::{c_rb, nice_quadruples};
use gallai::format::{self, AnyColouring};
use gallai::hypercube::verify_hypercube_like;
use gallai::probabilistic::{retention_check_3colour, thinning_check, tpartite_retention_check, TrialSummary};
use gallai::search::{exact_gamma, exact_tau, local_search_tau, SearchLimits, SearchMethod, SearchResult};
use gallai::{crossing_rainbow_count, enumerate_rainbow_cliques, is_almost_gallai, CompleteColouring, EdgeColouring};

use crate::args::*;
use crate::output::{CliError, CliResult, Report};

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("reading {}: {e}", path.display())))
}

fn read_colouring(path: &Path) -> CliResult<CompleteColouring> {
    Ok(format::parse_colouring(&read(path)?)?)
}

fn read_any(path: &Path) -> CliResult<AnyColouring> {
    Ok(format::parse_any_colouring(&read(path)?)?)
}

fn read_host(path: &Path) -> CliResult<CliqueDecomposedHost> {
    Ok(format::parse_clique_host(&read(path)?)?)
}

/// Parse `0-7,9,12` into a vertex list.
pub fn vertex_list(text: &str) -> CliResult<Vec<usize>> {
    let mut out = Vec::new();
    if text.is_empty() {
        return Ok(out);
    }
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| CliError::invalid(format!("bad vertex {s:?} in list {text:?}")))
    };
    for part in text.split(',') {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(CliError::invalid(format!("empty range {part}")));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(out)
}

/// Parse `a,b,c` or `start:stop:count` (inclusive, evenly spaced).
pub fn s_grid(text: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::invalid(format!("bad s grid {text:?}"));
    let f = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [a, b, c] => {
            let (a, b) = (f(a)?, f(b)?);
            let count: usize = c.trim().parse().map_err(|_| bad())?;
            match count {
                0 => Err(bad()),
                1 => Ok(vec![a]),
                _ => Ok((0..count).map(|i| a + (b - a) * i as f64 / (count - 1) as f64).collect()),
            }
        }
        [list] => list.split(',').map(f).collect(),
        _ => Err(bad()),
    }
}

fn rainbow_count_report<C: EdgeColouring + ?Sized>(c: &C, what: &str) -> CliResult<String> {
    let set = enumerate_rainbow_cliques(c, 3)?;
    Ok(format!("{what}: n = {}, k = {}, {} rainbow triangles", c.n(), c.k(), set.len()))
}

pub fn construct(cmd: &Construct) -> CliResult<Report> {
    match cmd {
        Construct::Hypercube { m } => {
            let c = hypercube_colouring(*m)?;
            let human = rainbow_count_report(&c, &format!("hypercube colouring, m = {m}"))?;
            Ok(Report::new(human, json!({"n": c.n(), "k": c.k()}))?.construction(format::write_colouring(&c)))
        }
        Construct::Truncate { n } => {
            let c = truncated_hypercube_colouring(*n)?;
            let human = rainbow_count_report(&c, "truncated hypercube colouring")?;
            Ok(Report::new(human, json!({"n": c.n(), "k": c.k()}))?.construction(format::write_colouring(&c)))
        }
        Construct::Gadget { n, host, t } => {
            let host = match host {
                Some(p) => read_host(p)?,
                None => CliqueDecomposedHost::disjoint_cliques(*n, *t)?,
            };
            let c = gadget_colouring(&host, *n)?;
            let human = format!(
                "gadget colouring: n = {}, k = {}, {} host cliques of size {}",
                c.n(),
                c.k(),
                host.cliques().len(),
                host.t()
            );
            Ok(Report::new(human, json!({"n": c.n(), "k": c.k(), "cliques": host.cliques().len()}))?
                .construction(format::write_colouring(&c)))
        }
        Construct::Tripartite { n } => {
            let c = sharp_tripartite_colouring(*n)?;
            let mono = c.monochromatic_count();
            let human = format!(
                "tripartite colouring, parts {:?}: {} red and {} blue triangles",
                c.sizes(),
                mono.red,
                mono.blue
            );
            Ok(Report::new(human, json!({"sizes": c.sizes(), "red": mono.red, "blue": mono.blue}))?
                .construction(format::write_tripartite(&c)))
        }
        Construct::Rsz { big_n, set } => {
            let s = match set {
                Some(p) => format::parse_ap_free_set(&read(p)?, Some(*big_n))?,
                None => greedy_ap3_free(*big_n),
            };
            let h = ruzsa_szemeredi_host(*big_n, s.elements())?;
            let human = format!(
                "Ruzsa-Szemeredi host: N = {big_n}, |S| = {}, {} vertices, {} edges, {} rainbow triangles",
                s.len(),
                h.colouring.n(),
                h.colouring.edge_count(),
                h.triangles.len()
            );
            let j = json!({
                "N": big_n,
                "set": s.elements(),
                "vertices": h.colouring.n(),
                "edges": h.colouring.edge_count(),
                "triangles": h.triangles.len(),
            });
            Ok(Report::new(human, j)?.construction(format::write_host_colouring(&h.colouring)))
        }
    }
}

pub fn verify(cmd: &Verify) -> CliResult<Report> {
    match cmd {
        Verify::Gallai { input, t } => {
            let check = match read_any(input)? {
                AnyColouring::Complete(c) => is_almost_gallai(&c, *t)?,
                AnyColouring::Host(h) => is_almost_gallai(&h, *t)?,
            };
            let human = match &check.witness {
                None => format!("almost {t}-Gallai: yes ({} rainbow {t}-cliques)", check.rainbow_cliques),
                Some(w) => format!(
                    "almost {t}-Gallai: no; rainbow cliques {:?} and {:?} share edge {:?}",
                    w.first, w.second, w.edge
                ),
            };
            let failed = !check.almost_gallai;
            Ok(Report::new(human.clone(), &check)?.fail_if(failed, human))
        }
        Verify::Gadget { host } => {
            let r = verify_gadget_properties(&read_host(host)?);
            let mut human = format!(
                "{} cliques; every edge in exactly one clique: {}; every triangle inside a clique: {}",
                r.clique_count, r.property2, r.property3
            );
            if let Some((e, a, b)) = r.shared_edge {
                let _ = write!(human, "\nedge {e:?} lies in cliques {a} and {b}");
            }
            if let Some(tri) = r.stray_triangle {
                let _ = write!(human, "\ntriangle {tri:?} lies in no clique");
            }
            let failed = !(r.property2 && r.property3);
            Ok(Report::new(human.clone(), &r)?.fail_if(failed, human))
        }
        Verify::Hclike { input } => {
            let g = format::parse_labelled_graph(&read(input)?)?;
            let check = verify_hypercube_like(&g);
            let human = match &check.violation {
                None => "hypercube-like: yes".to_string(),
                Some(v) => format!("hypercube-like: no; {v:?}"),
            };
            Ok(Report::new(human.clone(), &check)?.fail_if(!check.hypercube_like, human))
        }
        Verify::Good { input } => {
            let c = format::parse_tripartite(&read(input)?)?;
            let check = c.check_good();
            let mono = c.monochromatic_count();
            let human = match check.witness {
                None => format!("good: yes ({} red, {} blue triangles)", mono.red, mono.blue),
                Some((a, b)) => format!("good: no; monochromatic triangles {a:?} and {b:?} share an edge"),
            };
            let j = json!({"good": check.good, "witness": check.witness, "red": mono.red, "blue": mono.blue});
            Ok(Report::new(human.clone(), j)?.fail_if(!check.good, human))
        }
    }
}

pub fn count(cmd: &Count) -> CliResult<Report> {
    match cmd {
        Count::Rainbow { input, t } => {
            let set = match read_any(input)? {
                AnyColouring::Complete(c) => enumerate_rainbow_cliques(&c, *t)?,
                AnyColouring::Host(h) => enumerate_rainbow_cliques(&h, *t)?,
            };
            let j = json!({"t": t, "count": set.len(), "edge_disjoint": set.edge_disjoint, "cliques": set.cliques});
            Ok(Report::new(set.len().to_string(), j)?)
        }
        Count::Crossing { input, x, y, colour } => {
            let (x, y) = (vertex_list(x)?, vertex_list(y)?);
            let n = match read_any(input)? {
                AnyColouring::Complete(c) => crossing_rainbow_count(&c, &x, &y, *colour)?,
                AnyColouring::Host(h) => crossing_rainbow_count(&h, &x, &y, *colour)?,
            };
            Ok(Report::new(n.to_string(), json!({"count": n, "colour": colour}))?)
        }
        Count::Nice { input } => {
            let r = nice_quadruples(&read_colouring(input)?)?;
            let human = format!(
                "nice quadruples: {} (sum of d_G(v) c_RB(v): {}); patterns {:?}, other {}",
                r.total, r.per_vertex_sum, r.type_counts, r.other
            );
            let failed = !r.identity_holds();
            Ok(Report::new(human, &r)?.fail_if(failed, "direct count differs from the per-vertex sum"))
        }
        Count::Crb { input, vertex } => {
            let c = read_colouring(input)?;
            let vertices: Vec<usize> = match vertex {
                Some(v) => vec![*v],
                None => (0..c.n()).collect(),
            };
            let values = vertices.iter().map(|&v| c_rb(&c, v)).collect::<Result<Vec<_>, _>>()?;
            let human = match vertex {
                Some(_) => values[0].to_string(),
                None => values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
            };
            Ok(Report::new(human, json!({"vertices": vertices, "c_rb": values}))?)
        }
    }
}

fn search_report(r: SearchResult, what: String) -> CliResult<Report> {
    let mut human = format!(
        "{what} = {}{} ({} nodes, {:.3}s, {:?})",
        r.value,
        if r.method == SearchMethod::Heuristic { " (lower bound)" } else { "" },
        r.nodes_explored,
        r.elapsed.as_secs_f64(),
        r.method
    );
    if let Some(m) = r.max_single_colour {
        let _ = write!(human, "; most triangles in one colour: {m}");
    }
    let artifact = match (r.complete_witness(), r.tripartite_witness()) {
        (Some(c), _) => format::write_colouring(c),
        (_, Some(c)) => format::write_tripartite(c),
        _ => unreachable!("every result has a witness"),
    };
    Ok(Report::new(human, &r)?.artifact(artifact))
}

fn tau(a: &TauArgs, mode: Mode) -> CliResult<Report> {
    let what = format!("tau_{}({}) with {} colours", a.t, a.n, a.colours);
    let r = match mode {
        Mode::Local => local_search_tau(a.n, a.t, a.colours, a.budget, a.seed)?,
        Mode::Exhaustive | Mode::Bnb => {
            let method = if mode == Mode::Bnb {
                SearchMethod::BranchAndBound
            } else {
                SearchMethod::Exhaustive
            };
            let limits = SearchLimits {
                max_vertices: a.max_n,
                max_nodes: a.cap_nodes,
            };
            exact_tau(a.n, a.t, a.colours, method, limits)?
        }
    };
    let report = search_report(r, what)?;
    Ok(if mode == Mode::Local { report.seed(a.seed) } else { report })
}

pub fn search(cmd: &Search) -> CliResult<Report> {
    match cmd {
        Search::Tau(a) => tau(a, a.mode),
        Search::Local(a) => tau(a, Mode::Local),
        Search::Gamma { sizes, cap_nodes, max_n } => {
            let sizes: [usize; 3] = sizes
                .as_slice()
                .try_into()
                .map_err(|_| CliError::invalid("--sizes needs three part sizes"))?;
            let limits = SearchLimits {
                max_vertices: *max_n,
                max_nodes: *cap_nodes,
            };
            let r = exact_gamma(sizes, limits)?;
            search_report(r, format!("gamma{sizes:?}"))
        }
    }
}

fn trial_report(s: TrialSummary, sigma: f64, what: &str) -> CliResult<Report> {
    let z = s.z_score.map_or("n/a".to_string(), |z| format!("{z:.3}"));
    let human = format!(
        "{what}: mean {:.6} +- {:.6} over {} trials, target {:.6} ({}), z = {z}",
        s.mean, s.stderr, s.trials, s.target, s.target_kind
    );
    let ok = s.within(sigma);
    let seed = s.seed;
    Ok(Report::new(human, &s)?
        .fail_if(!ok, format!("mean is more than {sigma} standard errors from the target"))
        .seed(seed))
}

pub fn random(cmd: &Random) -> CliResult<Report> {
    match cmd {
        Random::Retention3 { input, trials } => {
            let c = read_colouring(input)?;
            let s = retention_check_3colour(&c, trials.trials, trials.seed)?;
            trial_report(s, trials.target_tolerance_sigma, "rainbow triangles after projection")
        }
        Random::Tpartite { input, t, trials } => {
            let c = read_colouring(input)?;
            let s = tpartite_retention_check(&c, *t, trials.trials, trials.seed)?;
            trial_report(s, trials.target_tolerance_sigma, "cliques in the random t-partite subgraph")
        }
        Random::Thinning { input, x, y, d, trials } => {
            let c = read_colouring(input)?;
            let (x, y) = (vertex_list(x)?, vertex_list(y)?);
            let s = thinning_check(&c, &x, &y, *d, trials.trials, trials.seed)?;
            let sigma = trials.target_tolerance_sigma;
            let below = !s.meets_lower_bound(sigma);
            let mut report = trial_report(s.summary.clone(), sigma, "thinned crossing triangles")?;
            report.human.push_str(&format!(
                "\nfull count {}, lower bound on the mean {:.6}",
                s.tau, s.lower_bound
            ));
            report.json = crate::output::to_value(&s)?;
            Ok(report.fail_if(below, "mean falls below the lower bound"))
        }
    }
}

fn rainbow_count_for(g: &GraphArgs) -> CliResult<u64> {
    let host = g.host.as_deref().map(read_host).transpose()?;
    Ok(best_known_rainbow_count(g.n, g.t, host.as_ref())?)
}

fn bound_at(g: &GraphArgs, k_rb: u64, s: f64) -> CliResult<Option<f64>> {
    if s.abs() > PI {
        return Ok(None);
    }
    let b = rainbow_final_bound(&RainbowBoundInput {
        k_rb,
        p: g.p,
        t: g.t,
        s,
    })?;
    Ok(Some(b.bound_on_phi))
}

fn csv_cell(x: Option<f64>) -> String {
    x.map_or(String::new(), |v| format!("{v:.9}"))
}

pub fn charfunc(cmd: &Charfunc) -> CliResult<Report> {
    let (g, estimates) = match cmd {
        Charfunc::Estimate { graph, trials, seed } => {
            let grid = s_grid(&graph.s_grid)?;
            let est = estimate_charfunc_grid(graph.n, graph.p, graph.t, &grid, *trials, *seed)?;
            (graph, Some((est, *seed)))
        }
        Charfunc::Bound { graph } => (graph, None),
    };
    let grid = s_grid(&g.s_grid)?;
    let k_rb = rainbow_count_for(g)?;
    let mut csv = String::from("s,modulus,stderr,bound\n");
    let mut rows = Vec::new();
    for (i, &s) in grid.iter().enumerate() {
        let bound = bound_at(g, k_rb, s)?;
        let (modulus, stderr) = match &estimates {
            Some((est, _)) => (Some(est[i].modulus), Some(est[i].stderr)),
            None => (None, None),
        };
        let _ = writeln!(csv, "{s},{},{},{}", csv_cell(modulus), csv_cell(stderr), csv_cell(bound));
        rows.push(json!({"s": s, "modulus": modulus, "stderr": stderr, "bound": bound}));
    }
    let j = json!({
        "n": g.n, "p": g.p, "t": g.t, "rainbow_count": k_rb,
        "bound_normalisation": "2^k-th root", "rows": rows,
    });
    let report = Report::new(csv.trim_end().to_string(), j)?.artifact(csv);
    Ok(match estimates {
        Some((_, seed)) => report.seed(seed),
        None => report,
    })
}

pub fn table(a: &TableArgs) -> CliResult<Report> {
    let mut csv = String::from("quantity,n,t,colours,sizes,value,max_single_colour\n");
    let mut rows = Vec::new();
    for &k in &a.colours {
        for n in 3..=a.tau_max_n {
            let limits = SearchLimits {
                max_vertices: a.tau_max_n,
                max_nodes: None,
            };
            let r = exact_tau(n, 3, k, SearchMethod::BranchAndBound, limits)?;
            let _ = writeln!(csv, "tau,{n},3,{k},,{},", r.value);
            rows.push(json!({"quantity": "tau", "n": n, "t": 3, "colours": k, "value": r.value}));
        }
    }
    for n in 3..=a.gamma_max_n {
        for n1 in 1..=n / 3 {
            for n2 in n1..=(n - n1) / 2 {
                let sizes = [n1, n2, n - n1 - n2];
                let limits = SearchLimits {
                    max_vertices: a.gamma_max_n,
                    max_nodes: None,
                };
                let r = exact_gamma(sizes, limits)?;
                let single = r.max_single_colour.unwrap_or(0);
                let _ = writeln!(
                    csv,
                    "gamma,{n},3,2,{}-{}-{},{},{single}",
                    sizes[0], sizes[1], sizes[2], r.value
                );
                rows.push(json!({"quantity": "gamma", "n": n, "sizes": sizes, "value": r.value, "max_single_colour": single}));
            }
        }
    }
    Ok(Report::new(csv.trim_end().to_string(), json!({"rows": rows}))?.artifact(csv))
}
