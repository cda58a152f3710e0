use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "qfold", version, about = "Folding quivers by diagram automorphisms")]
pub struct Cli {
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for all randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// Where the quiver comes from. Exactly one of the two is needed.
#[derive(Debug, Args)]
pub struct Source {
    /// Name of a corpus entry, e.g. `D4-swap`.
    #[arg(long)]
    pub corpus: Option<String>,
    /// Path to a JSON file, `-` for standard input.
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The split-quotient quiver with its induced automorphism.
    Split(Source),
    /// The orbit quotient of the quiver.
    Quotient(Source),
    /// Cartan types of the quiver, its split quiver, and their foldings.
    Fold(Source),
    /// Decompose an irreducible module under the folded subalgebra.
    Branch(BranchArgs),
    /// Components of the fixed locus and their dimensions.
    Dims(DimsArgs),
    /// Operations on framed modules read from a JSON document.
    #[command(subcommand)]
    Module(ModuleCommand),
    /// Run the property suite over the corpus.
    VerifyAll(VerifyArgs),
    /// List the corpus entries.
    Corpus,
}

#[derive(Debug, Args)]
pub struct BranchArgs {
    #[command(flatten)]
    pub source: Source,
    /// Framing on the split quiver, as `1,0,1` in vertex order or
    /// `id=k,...`; it is read as the highest weight.
    #[arg(long)]
    pub w: String,
    /// Read `--w` on the quiver itself and fold it directly.
    #[arg(long)]
    pub base: bool,
    /// Largest module dimension expanded into a character.
    #[arg(long, default_value_t = 100_000)]
    pub cap: u128,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[command(flatten)]
    pub source: Source,
    /// Orbit-constant dimension vector on the quiver.
    #[arg(long)]
    pub v: String,
    /// Orbit-constant framing on the quiver; split with trivial twists.
    #[arg(long)]
    pub w: String,
    /// Framing on the split quiver, overriding the one derived from `--w`.
    #[arg(long)]
    pub w_split: Option<String>,
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    #[command(flatten)]
    pub source: Source,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: Source,
    /// Also test the embedding for a Hecke step at the orbit of this vertex.
    #[arg(long)]
    pub hecke: Option<String>,
    /// With `--hecke`: codimension at most one on the orbit.
    #[arg(long, requires = "hecke")]
    pub at_most: bool,
}

#[derive(Debug, Subcommand)]
pub enum ModuleCommand {
    /// Relations, stability, and the embedding when `sub`/`xi` are given.
    Check(CheckArgs),
    /// Apply the twisted transport to `module`.
    Theta(ModuleArgs),
    /// Solve for the transition of a stable `module`.
    Transition(ModuleArgs),
    /// Build `m1 (+) g.theta(m1)` and report the spectrum of its transition.
    Witness(ModuleArgs),
    /// Check that `xi` respects the eigenspaces of the two transitions.
    Eigenspaces(ModuleArgs),
    /// Generate a document with a random stable embedded pair.
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub w: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict to these entries (repeatable).
    #[arg(long = "entry")]
    pub entries: Vec<String>,
    /// Random trials per check.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
}
