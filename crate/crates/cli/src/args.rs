use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "chainkit", version, about = "Chain metrics, nets, Dirichlet forms and heat kernels on finite spaces")]
pub struct Cli {
    /// Worker threads; defaults to CHAINKIT_THREADS, then all cores.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,

    /// Print the JSON report instead of human-readable text.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub json_only: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Chain metric, minimal chain counts and the main inequality scan.
    Chain(ChainArgs),
    /// Greedy ε-net, certificate and partition of unity.
    Net(NetArgs),
    /// Replays the test-function construction on a graph.
    Replay(ReplayArgs),
    /// Dirichlet form utilities.
    #[command(subcommand)]
    Dirichlet(DirichletCommand),
    /// Heat kernel tables and invariant checks.
    Heat(HeatArgs),
    /// Sierpiński gasket graphs and walk-exponent estimates.
    Gasket(GasketArgs),
    /// Scale function Ψ and its transform Φ.
    #[command(subcommand)]
    Scale(ScaleCommand),
    /// Runs named verification suites.
    VerifyAll(VerifyArgs),
}

/// Space source: a JSON space file or a graph whose geodesic metric is used.
#[derive(Debug, Args, Serialize)]
pub struct SpaceSource {
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    pub space: Option<PathBuf>,
    /// Edge list `u,v,conductance[,length]`.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Vertex file `id,measure`.
    #[arg(long, requires = "graph")]
    pub vertices: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct GraphSource {
    /// Edge list `u,v,conductance[,length]`.
    #[arg(long)]
    pub graph: PathBuf,
    /// Vertex file `id,measure`.
    #[arg(long)]
    pub vertices: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ChainArgs {
    #[command(flatten)]
    pub source: SpaceSource,
    /// Comma-separated ε values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub eps: Vec<f64>,
    /// `all` or `x,y` pairs separated by `;`.
    #[arg(long, default_value = "all")]
    pub pairs: PairSelector,
    /// Ψ spec for the main inequality scan: `power:B`, `piecewise:r,b;...`, `table:PATH`.
    #[arg(long)]
    pub psi: Option<String>,
    /// Pairs with `d < min_separation · ε` are skipped in the scan.
    #[arg(long, default_value_t = 1.0)]
    pub min_separation: f64,
    /// Include optimal chains for every pair even with `--pairs all`.
    #[arg(long)]
    pub witnesses: bool,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct NetArgs {
    #[command(flatten)]
    pub source: SpaceSource,
    #[arg(long)]
    pub eps: f64,
    /// Points forced into the net.
    #[arg(long, value_delimiter = ',')]
    pub include: Vec<usize>,
    /// Check separation and covering.
    #[arg(long)]
    pub certify: bool,
    /// Ψ spec; with `--graph`, also builds the partition of unity.
    #[arg(long)]
    pub psi: Option<String>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ReplayArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long)]
    pub psi: String,
    #[arg(long)]
    pub x: usize,
    #[arg(long)]
    pub y: usize,
    #[arg(long)]
    pub eps: f64,
    /// Maximal-function radius; defaults to `2 d(x, y)`.
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DirichletCommand {
    /// Capacity between two disjoint vertex sets.
    Cap(CapArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct CapArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long = "A", value_delimiter = ',', required = true)]
    pub a: Vec<usize>,
    #[arg(long = "B", value_delimiter = ',', required = true)]
    pub b: Vec<usize>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct HeatArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_delimiter = ',', required = true)]
    pub times: Vec<f64>,
    /// Kernel table as CSV rows `t,x,y,p`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct GasketArgs {
    #[arg(long)]
    pub level: u32,
    /// Edge list output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Vertex measure output.
    #[arg(long)]
    pub vertices_out: Option<PathBuf>,
    /// Fit the sub-Gaussian exponent and the exit-time exponent.
    #[arg(long)]
    pub fit: bool,
    /// Fit times; defaults to nine log-spaced values in [5, 600].
    #[arg(long, value_delimiter = ',')]
    pub times: Vec<f64>,
    /// Reference vertices; defaults to interior lattice points.
    #[arg(long, value_delimiter = ',')]
    pub centers: Vec<usize>,
    /// Exit-time radii; defaults to `2^level / 32 · {1, 2, 4, 8}`.
    #[arg(long, value_delimiter = ',')]
    pub radii: Vec<f64>,
    /// Fit residual curve as CSV.
    #[arg(long)]
    pub curve: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaleCommand {
    /// Φ(s) = sup_r (s/r − 1/Ψ(r)).
    Phi {
        #[arg(long)]
        psi: String,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<f64>,
        /// Use the numeric supremum even when a closed form exists.
        #[arg(long)]
        numeric: bool,
    },
    /// Ψ(r).
    Psi {
        #[arg(long)]
        psi: String,
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<f64>,
    },
    /// Ψ⁻¹(v).
    Inverse {
        #[arg(long)]
        psi: String,
        #[arg(long, value_delimiter = ',', required = true)]
        v: Vec<f64>,
    },
    /// Grid certificate for the regularity of Φ.
    Regularity {
        #[arg(long)]
        psi: String,
        #[arg(long, default_value = "1e-3,1e3")]
        window: Window,
        #[arg(long, default_value_t = 32)]
        ppd: usize,
        #[arg(long, default_value_t = 1.01)]
        c2: f64,
    },
    /// Walk-dimension lower bound `Ψ(r)/Ψ(s) ≳ (r/s)²`.
    Walkdim {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        diam: f64,
        #[arg(long)]
        window: Window,
        #[arg(long, default_value_t = 64)]
        ppd: usize,
        #[arg(long, default_value_t = 1e6)]
        cap: f64,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Suite names; all suites when omitted.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<String>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairSelector {
    All,
    List(Vec<(usize, usize)>),
}

impl FromStr for PairSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "all" {
            return Ok(Self::All);
        }
        let mut pairs = Vec::new();
        for part in s.split(';').filter(|p| !p.trim().is_empty()) {
            let ids: Vec<&str> = part.split(',').map(str::trim).collect();
            match ids.as_slice() {
                [x, y] => pairs.push((
                    x.parse().map_err(|_| format!("bad point id `{x}`"))?,
                    y.parse().map_err(|_| format!("bad point id `{y}`"))?,
                )),
                _ => return Err(format!("expected `x,y`, got `{part}`")),
            }
        }
        if pairs.is_empty() {
            return Err("no pairs given".into());
        }
        Ok(Self::List(pairs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window(pub f64, pub f64);

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [a, b] => {
                let lo: f64 = a.parse().map_err(|_| format!("bad number `{a}`"))?;
                let hi: f64 = b.parse().map_err(|_| format!("bad number `{b}`"))?;
                if !(0.0 < lo && lo < hi) {
                    return Err(format!("window needs 0 < lo < hi, got {lo},{hi}"));
                }
                Ok(Self(lo, hi))
            }
            _ => Err(format!("expected `lo,hi`, got `{s}`")),
        }
    }
}
