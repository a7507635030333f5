use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "gallai", version, about = "Almost Gallai colourings: construct, verify, count, search, sample")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "GALLAI_THREADS")]
    pub threads: Option<usize>,

    /// Print the structured report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the artifact (colouring, report or CSV) here, plus a manifest
    /// next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one of the explicit colourings.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a structural property of a file; exit 3 with a witness if it fails.
    #[command(subcommand)]
    Verify(Verify),
    /// Count rainbow structures in a colouring.
    #[command(subcommand)]
    Count(Count),
    /// Exact and heuristic extremal searches.
    #[command(subcommand)]
    Search(Search),
    /// Monte-Carlo checks of the random reductions.
    #[command(subcommand)]
    Random(Random),
    /// Clique-count characteristic functions in G(n, p).
    #[command(subcommand)]
    Charfunc(Charfunc),
    /// Regenerate the small-n tables of tau and gamma.
    Table(TableArgs),
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Hypercube colouring of K_n, n = 2^m + m.
    Hypercube {
        #[arg(long)]
        m: u32,
    },
    /// Hypercube colouring truncated to n vertices.
    Truncate {
        #[arg(long)]
        n: usize,
    },
    /// Rainbow-coloured cliques of a host, every other edge colour 0.
    Gadget {
        #[arg(long)]
        n: usize,
        /// Clique list file; without it, floor(n/t) disjoint cliques.
        #[arg(long)]
        host: Option<PathBuf>,
        /// Clique size for the disjoint-clique host.
        #[arg(long, default_value_t = 4)]
        t: usize,
    },
    /// Good tripartite colouring with floor((n-1)/2) red triangles.
    Tripartite {
        #[arg(long)]
        n: usize,
    },
    /// Tripartite host where every edge lies in exactly one rainbow triangle.
    Rsz {
        #[arg(long = "N", visible_alias = "big-n")]
        big_n: usize,
        /// 3-AP-free set file (one element per line); greedy set if absent.
        #[arg(long)]
        set: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// No two rainbow t-cliques share an edge.
    Gallai {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        t: usize,
    },
    /// Every edge in exactly one listed clique, every triangle inside one.
    Gadget {
        #[arg(long)]
        host: PathBuf,
    },
    /// Labelled graph is hypercube-like.
    Hclike {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Tripartite colouring has no two monochromatic triangles sharing an edge.
    Good {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum Count {
    /// Rainbow t-cliques.
    Rainbow {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        t: usize,
    },
    /// Rainbow triangles y x1 x2 with y in Y, x1 x2 in X of colour q.
    Crossing {
        #[arg(long = "in")]
        input: PathBuf,
        /// Vertex list such as 0-7,9.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 2)]
        colour: u32,
    },
    /// Nice quadruples, both directly and as sum_v d_G(v) c_RB(v).
    Nice {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// c_RB(v) for one vertex or all of them.
    Crb {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        vertex: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Bnb,
    Local,
}

#[derive(Args, Debug)]
pub struct TauArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub t: usize,
    #[arg(long, default_value_t = 3)]
    pub colours: usize,
    #[arg(long, value_enum, default_value_t = Mode::Bnb)]
    pub mode: Mode,
    /// Proposed moves for local search.
    #[arg(long, default_value_t = 100_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Give up with exit code 4 after this many search nodes.
    #[arg(long)]
    pub cap_nodes: Option<u64>,
    /// Largest n allowed for exact search.
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
}

#[derive(Subcommand, Debug)]
pub enum Search {
    /// Maximum rainbow t-cliques over almost t-Gallai colourings of K_n.
    Tau(TauArgs),
    /// Maximum monochromatic triangles over good tripartite 2-colourings.
    Gamma {
        /// Part sizes n1,n2,n3.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        cap_nodes: Option<u64>,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
    },
    /// Local search; same flags as `tau` with the mode fixed.
    Local(TauArgs),
}

#[derive(Args, Debug)]
pub struct TrialArgs {
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Allowed distance from the target in standard errors.
    #[arg(long, default_value_t = 4.0)]
    pub target_tolerance_sigma: f64,
}

#[derive(Subcommand, Debug)]
pub enum Random {
    /// Rainbow triangles kept by a random projection to three colours.
    Retention3 {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Rainbow t-cliques kept by the random t-partite subgraph.
    Tpartite {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Random thinning of X and Y for the crossing bound.
    Thinning {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[command(flatten)]
        trials: TrialArgs,
    },
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 3)]
    pub t: usize,
    /// Comma list (0,0.5,1) or start:stop:count.
    #[arg(long, default_value = "0:3.141592653589793:16")]
    pub s_grid: String,
    /// Clique list file raising the rainbow count used for the bound (t >= 4).
    #[arg(long)]
    pub host: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Charfunc {
    /// Monte-Carlo |E exp(i s X_t)| with the bound alongside.
    Estimate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The closed-form bound only.
    Bound {
        #[command(flatten)]
        graph: GraphArgs,
    },
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Largest n for the tau(n, 3, k) rows.
    #[arg(long, default_value_t = 8)]
    pub tau_max_n: usize,
    /// Colour counts for tau rows.
    #[arg(long, value_delimiter = ',', default_value = "3,4")]
    pub colours: Vec<usize>,
    /// Largest total part size for gamma rows.
    #[arg(long, default_value_t = 7)]
    pub gamma_max_n: usize,
}

impl Command {
    /// Two-word name such as `construct hypercube`, as recorded in manifests.
    pub fn name(&self) -> String {
        let (group, leaf) = match self {
            Command::Construct(c) => (
                "construct",
                match c {
                    Construct::Hypercube { .. } => "hypercube",
                    Construct::Truncate { .. } => "truncate",
                    Construct::Gadget { .. } => "gadget",
                    Construct::Tripartite { .. } => "tripartite",
                    Construct::Rsz { .. } => "rsz",
                },
            ),
            Command::Verify(c) => (
                "verify",
                match c {
                    Verify::Gallai { .. } => "gallai",
                    Verify::Gadget { .. } => "gadget",
                    Verify::Hclike { .. } => "hclike",
                    Verify::Good { .. } => "good",
                },
            ),
            Command::Count(c) => (
                "count",
                match c {
                    Count::Rainbow { .. } => "rainbow",
                    Count::Crossing { .. } => "crossing",
                    Count::Nice { .. } => "nice",
                    Count::Crb { .. } => "crb",
                },
            ),
            Command::Search(c) => (
                "search",
                match c {
                    Search::Tau(_) => "tau",
                    Search::Gamma { .. } => "gamma",
                    Search::Local(_) => "local",
                },
            ),
            Command::Random(c) => (
                "random",
                match c {
                    Random::Retention3 { .. } => "retention3",
                    Random::Tpartite { .. } => "tpartite",
                    Random::Thinning { .. } => "thinning",
                },
            ),
            Command::Charfunc(c) => (
                "charfunc",
                match c {
                    Charfunc::Estimate { .. } => "estimate",
                    Charfunc::Bound { .. } => "bound",
                },
            ),
            Command::Table(_) => return "table".to_string(),
        };
        format!("{group} {leaf}")
    }
}
