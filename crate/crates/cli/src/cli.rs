use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fincosmos::cosmos::DEFAULT_TOWER_BOUND;
use fincosmos::nerve::DEFAULT_WORD_BOUND;
use fincosmos::twolimits::DEFAULT_BUDGET;

/// Finite-category computations of 2-categorical limits, isofibrations and
/// nerves. Every command prints a JSON report on standard output.
///
/// Exit status: 0 when every asserted claim holds, 1 when a claim fails,
/// 2 on usage, format or budget errors.
#[derive(Debug, Parser)]
#[command(name = "fincosmos", version)]
pub struct Cli {
    /// Maximum number of functors (and transformations) enumerated per
    /// functor category.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_name = "N")]
    pub budget: usize,

    /// Longest tower considered by limit tower and cosmos-check.
    #[arg(long, global = true, default_value_t = DEFAULT_TOWER_BOUND, value_name = "N")]
    pub tower_bound: usize,

    /// Word-length bound for the congruence closure of classifying categories.
    #[arg(long, global = true, default_value_t = DEFAULT_WORD_BOUND, value_name = "N")]
    pub word_bound: usize,

    /// Compact single-line JSON (the default).
    #[arg(long, global = true)]
    pub json: bool,

    /// Indented JSON.
    #[arg(long, global = true, overrides_with = "json")]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a category, functor or transformation file.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Auto)]
        kind: Kind,
    },
    /// Isofibration flags and equivalence kind of a functor.
    Classify(FunctorArg),
    /// Factor a functor as an injective equivalence followed by a normal isofibration.
    Factorize(FunctorArg),
    /// Solve a lifting problem `top: A → E`, `bottom: B → D` against `i: A → B`, `p: E → D`.
    Lift {
        #[arg(long)]
        i: PathBuf,
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        top: PathBuf,
        #[arg(long)]
        bottom: PathBuf,
    },
    /// Two-dimensional limit constructions.
    #[command(subcommand)]
    Limit(LimitCommand),
    /// The Leibniz power of `p` by `j`.
    Leibniz {
        #[arg(long)]
        j: PathBuf,
        #[arg(long)]
        p: PathBuf,
    },
    /// The map `w_f` and its agreement with `f`.
    Wf(FunctorArg),
    /// Check the cosmos axioms on the full fragment spanned by some categories.
    CosmosCheck {
        /// Category files or `builtin:<name>`.
        #[arg(required = true)]
        categories: Vec<String>,
        #[arg(long, default_value = "normal")]
        class: String,
    },
    /// Search for a square violating the lifting property in a topos of finite sets.
    Nip {
        #[arg(long, default_value = "finset")]
        topos: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// The nerve of a category, truncated at dimension 3.
    Nerve {
        /// Category file or `builtin:<name>`.
        #[arg(long)]
        category: String,
    },
    /// The classifying category of a truncated simplicial set.
    ClassifySset {
        #[arg(long)]
        sset: PathBuf,
    },
    /// Compare `[X, NY]` with `N[ΠX, Y]` in low dimensions.
    PowersCheck {
        #[arg(long)]
        sset: PathBuf,
        /// Category file or `builtin:<name>`.
        #[arg(long)]
        category: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Replay a named counterexample.
    Counterexample { name: String },
    /// Run a test battery.
    Suite {
        #[arg(value_enum)]
        suite: SuiteName,
    },
}

#[derive(Debug, Args)]
pub struct FunctorArg {
    #[arg(long)]
    pub functor: PathBuf,
}

#[derive(Debug, Args)]
pub struct Cospan {
    #[arg(long)]
    pub f: PathBuf,
    #[arg(long)]
    pub g: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum LimitCommand {
    Pullback(Cospan),
    Isocomma(Cospan),
    Pseudolimit {
        #[arg(long)]
        f: PathBuf,
    },
    /// Inserter of a parallel pair `f, g: A → B`.
    Inserter(Cospan),
    Equifier {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
    },
    /// Splitting of an idempotent endofunctor.
    Split(FunctorArg),
    /// Pullback along a normal isofibration `f`, by splitting an idempotent.
    PullbackNif(Cospan),
    /// Limit of a tower, maps listed from the base upwards.
    Tower {
        #[arg(long = "map", required = true)]
        maps: Vec<PathBuf>,
    },
}

impl LimitCommand {
    pub fn name(&self) -> &'static str {
        match self {
            LimitCommand::Pullback(_) => "pullback",
            LimitCommand::Isocomma(_) => "isocomma",
            LimitCommand::Pseudolimit { .. } => "pseudolimit",
            LimitCommand::Inserter(_) => "inserter",
            LimitCommand::Equifier { .. } => "equifier",
            LimitCommand::Split(_) => "split",
            LimitCommand::PullbackNif(_) => "pullback-nif",
            LimitCommand::Tower { .. } => "tower",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Auto,
    Category,
    Functor,
    Transformation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Acceptance,
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::Validate { .. } => "validate".into(),
            Command::Classify(_) => "classify".into(),
            Command::Factorize(_) => "factorize".into(),
            Command::Lift { .. } => "lift".into(),
            Command::Limit(l) => format!("limit {}", l.name()),
            Command::Leibniz { .. } => "leibniz".into(),
            Command::Wf(_) => "wf".into(),
            Command::CosmosCheck { .. } => "cosmos-check".into(),
            Command::Nip { .. } => "nip".into(),
            Command::Nerve { .. } => "nerve".into(),
            Command::ClassifySset { .. } => "classify-sset".into(),
            Command::PowersCheck { .. } => "powers-check".into(),
            Command::Counterexample { .. } => "counterexample".into(),
            Command::Suite { .. } => "suite acceptance".into(),
        }
    }
}
