use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Capacity-distortion bounds, state estimators and simulations for
/// state-dependent broadcast channels with generalized feedback.
#[derive(Debug, Parser)]
#[command(name = "sdmbc", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a channel as a spec document (json) or its transition table (csv).
    Channel {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dump the distortion-optimal symbolwise estimator.
    Estimate {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Simulate i.i.d. channel uses and score the optimal estimator.
    Simulate {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        input: InputArgs,
        /// Number of simulated channel uses.
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute a region bound and print its Pareto frontier.
    Region {
        #[arg(value_enum)]
        kind: RegionKind,
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        params: RegionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the data series of a figure.
    Figure {
        #[arg(value_enum)]
        name: FigureName,
        #[command(flatten)]
        channel: ChannelArgs,
        /// Steps per unit interval of the fig2 (p, r) and (r, lambda) sweeps.
        #[arg(long, default_value_t = 20)]
        grid_res: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a structural property; exit 0 if it holds, 1 if violated.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        #[command(flatten)]
        channel: ChannelArgs,
        /// Named witness: erasure-indicator, identity or constant.
        #[arg(long)]
        witness: Option<String>,
        /// Explicit psi_1 as the image of every feedback symbol.
        #[arg(long, value_delimiter = ',')]
        psi1: Option<Vec<usize>>,
        /// Explicit psi_2 as the image of every feedback symbol.
        #[arg(long, value_delimiter = ',')]
        psi2: Option<Vec<usize>>,
        /// Random interior input laws checked besides the point masses.
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuiltinChannel {
    Multiplicative,
    Flipping,
    Erasure,
    Dueck,
}

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    /// Built-in channel.
    #[arg(long, value_enum, default_value = "multiplicative")]
    pub channel: BuiltinChannel,
    /// Channel spec document; overrides --channel.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// P(S1 = 1) of the binary examples.
    #[arg(long, default_value_t = 0.6)]
    pub q: f64,
    /// P(S2 = 1 | S1 = 1) of the binary examples.
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    /// P_S(1) of Dueck's BC.
    #[arg(long, default_value_t = 0.75)]
    pub ps1: f64,
    /// Erasure BC: P(S1=1), P(S2=1), P(E1=1), P(E2=1), all independent.
    #[arg(long, value_delimiter = ',', num_args = 4, default_values_t = [0.3, 0.3, 0.2, 0.2])]
    pub erasure: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Input law over X as comma-separated probabilities (default uniform).
    #[arg(long, value_delimiter = ',')]
    pub input: Option<Vec<f64>>,
    /// Dueck's BC: P(X1 != X2) of the coupled input law (default 0).
    #[arg(long)]
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegionKind {
    Degraded,
    Corollary1,
    Corollary2,
    DueckOuter,
    DueckInner,
    Thm1,
    Prop3,
}

#[derive(Debug, Clone, Args)]
pub struct RegionArgs {
    /// P(X = 1) for the multiplicative and flipping examples, or the outer
    /// bound's first split parameter on Dueck's BC (swept when omitted).
    #[arg(long)]
    pub p: Option<f64>,
    /// Rate split between the two receivers (swept when omitted).
    #[arg(long)]
    pub r: Option<f64>,
    /// Coupling P(X1 != X2) for the Dueck bounds and presets.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Time-sharing fraction of the Dueck inner bound.
    #[arg(long)]
    pub gamma_ts: Option<f64>,
    /// The outer bound's second split parameter.
    #[arg(long)]
    pub q_aux: Option<f64>,
    /// Grid resolution of sweeps over unspecified parameters or auxiliaries.
    #[arg(long, default_value_t = 20)]
    pub grid_res: usize,
    /// Auxiliary alphabet size (default |X| + 1 for degraded, 2 for thm1).
    #[arg(long)]
    pub u_card: Option<usize>,
    /// Cap on evaluated grid points.
    #[arg(long, default_value_t = sdmbc_core::regions::DEFAULT_GRID_CAP)]
    pub cap: u64,
    /// Built-in auxiliaries of the inner bound on Dueck's BC.
    #[arg(long, value_parser = ["feedback1", "feedback2", "no-feedback"])]
    pub preset: Option<String>,
    /// JSON file with explicit auxiliaries for thm1 or prop3.
    #[arg(long)]
    pub aux: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    Fig2,
    Fig4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Degraded,
    NoTradeoff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}
