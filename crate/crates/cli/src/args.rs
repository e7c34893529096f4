//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gquant_core::{Field, RepChoice};

#[derive(Debug, Parser)]
#[command(name = "gquant", version, about = "Exact representation theory of finite groupoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: gquant_core::Error| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Coefficient field: `q` or `fp:P`.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    pub field: Field,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for random representations and spans.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Auto,
    Group,
    Groupoid,
    Map,
    Rep,
    Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChoiceArg {
    Minimal,
    Maximal,
}

impl From<ChoiceArg> for RepChoice {
    fn from(c: ChoiceArg) -> Self {
        match c {
            ChoiceArg::Minimal => RepChoice::Minimal,
            ChoiceArg::Maximal => RepChoice::Maximal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Gamma,
    Nu,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctorArg {
    Sum,
    Prod,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a group, groupoid, map, representation or span file.
    Validate {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        kind: Kind,
        #[command(flatten)]
        common: Common,
    },
    /// Check a representation file over the chosen field.
    ValidateRep {
        #[arg(long)]
        rep: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Components of the homotopy fiber of a map over one object.
    Fiber {
        #[arg(long)]
        map: PathBuf,
        /// Target object name; defaults to the first object.
        #[arg(long)]
        object: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Homotopy pullback of `g: M -> Y` and `h: N -> Y`.
    Pullback {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long, value_enum, default_value = "minimal")]
        choice: ChoiceArg,
        #[command(flatten)]
        common: Common,
    },
    /// Groupoid cardinality as an exact rational.
    Cardinality {
        #[arg(long)]
        groupoid: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Left or right Kan extension of a representation along a map.
    Kan {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "minimal")]
        choice: ChoiceArg,
        #[command(flatten)]
        common: Common,
    },
    /// The comparison `f_* -> f_!` (γ or ν) or the weight table δ.
    Nakayama {
        #[arg(long)]
        map: PathBuf,
        /// Representation on the source; required for γ and ν.
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "nu")]
        variant: VariantArg,
        #[command(flatten)]
        common: Common,
    },
    /// Quantize a span with ∑ or ∏.
    Quantize {
        #[arg(long)]
        span: PathBuf,
        #[arg(long, value_enum, default_value = "sum")]
        functor: FunctorArg,
        #[command(flatten)]
        common: Common,
    },
    /// Compose span `a` followed by span `b`.
    Compose {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value = "minimal")]
        choice: ChoiceArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run the law checks over a corpus.
    Laws {
        /// Corpus directory written by `corpus`; generated on the fly if absent.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        /// Only these laws (repeatable); see `laws::LAWS`.
        #[arg(long = "law")]
        laws: Vec<String>,
        /// Number of random spans and span pairs.
        #[arg(long, default_value_t = 100)]
        spans: usize,
        /// Record per-check runtimes (makes reports nondeterministic).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The factor between the two γ composites for `* -> BC_n -> *`, or
    /// per component for `{x, y} -> BC_m ⊔ BC_n -> *` when `--m` is given.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Write a deterministic corpus directory.
    Corpus {
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Validate { common, .. }
            | Command::ValidateRep { common, .. }
            | Command::Fiber { common, .. }
            | Command::Pullback { common, .. }
            | Command::Cardinality { common, .. }
            | Command::Kan { common, .. }
            | Command::Nakayama { common, .. }
            | Command::Quantize { common, .. }
            | Command::Compose { common, .. }
            | Command::Laws { common, .. }
            | Command::Counterexample { common, .. }
            | Command::Corpus { common, .. } => common,
        }
    }

    /// Where the JSON report goes; `corpus` uses `--out` as its directory
    /// and reports on stdout.
    pub fn report_path(&self) -> Option<&std::path::Path> {
        match self {
            Command::Corpus { .. } => None,
            other => other.common().out.as_deref(),
        }
    }
}
