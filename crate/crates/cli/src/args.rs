use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "cobcat", version, about = "Cobordism categories, nerves and invertible field theories")]
pub struct Cli {
    /// Add wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite categories: nerve homology and fundamental group.
    #[command(subcommand)]
    Cat(CatCommand),
    /// Localizations of finite categories and of the surface category.
    #[command(subcommand)]
    Localize(LocalizeCommand),
    /// Planar and abstract 1-dimensional cobordisms.
    #[command(subcommand)]
    Cob1(Cob1Command),
    /// Surface cobordisms.
    #[command(subcommand)]
    Cob2(Cob2Command),
    /// Picard groupoid data.
    #[command(subcommand)]
    Picard(PicardCommand),
    /// Field theories from a symmetric pairing.
    #[command(subcommand)]
    Frob(FrobCommand),
    /// Relation words of the localization.
    #[command(subcommand)]
    Relations(RelationsCommand),
}

#[derive(Args, Debug)]
pub struct CeilingArgs {
    /// Maximum number of nerve cells; defaults to $COBCAT_MAX_CELLS or 1000000.
    #[arg(long)]
    pub max_cells: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum CatCommand {
    /// Integral homology of the classifying space in degrees below `cap`.
    Homology {
        #[arg(long, default_value_t = 3)]
        cap: usize,
        #[command(flatten)]
        ceiling: CeilingArgs,
        file: PathBuf,
    },
    /// Edge-path presentation of the fundamental group.
    Pi1 {
        /// Base object; defaults to the first object.
        #[arg(long)]
        base: Option<String>,
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum LocalizeCommand {
    /// Automorphism group of an object in the localization.
    Aut {
        #[arg(long)]
        object: Option<String>,
        file: PathBuf,
    },
    /// Abelian group generated by closed surfaces, with the class of each.
    Surfaces {
        /// Generators are closed surfaces with Euler characteristic at least `-max-chi`.
        #[arg(long, default_value_t = 4)]
        max_chi: usize,
    },
    /// Truncated planar model of the localized 1-dimensional category.
    Planar {
        #[arg(long, default_value_t = 4)]
        max_strands: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Cob1Command {
    /// Region-colouring invariant of a planar diagram.
    F { file: PathBuf },
    /// `b ∘ a` for two planar diagrams or two matchings.
    Compose { a: PathBuf, b: PathBuf },
    /// Class of a closed planar diagram in the localization.
    Reduce { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum Cob2Command {
    /// `b ∘ a`.
    Compose { a: PathBuf, b: PathBuf },
    /// `χ(W) - χ(M₀)`.
    Euler { file: PathBuf },
    /// Classification of a closed surface.
    Class { file: PathBuf },
    /// Whether every component meets the outgoing boundary.
    Kcheck {
        #[arg(long, default_value_t = 0)]
        k: usize,
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum PicardCommand {
    /// k-invariant of an element of π₀.
    K {
        #[arg(long)]
        input: PathBuf,
        /// Generator name or comma-separated coordinates.
        #[arg(long)]
        element: String,
    },
    /// Whether two sets of Picard data are equivalent.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        search_bound: u128,
    },
    /// Picard data of the localized 1-dimensional category with its derivation.
    Cob1 {
        #[arg(long, default_value_t = 4)]
        max_strands: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum FrobCommand {
    /// Matrix of a morphism: restricted (`tgt`, `injection`, `matching`) or a full matching.
    Eval { theory: PathBuf, morphism: PathBuf },
    /// Whether the theory extends to all 1-dimensional cobordisms.
    Extend { theory: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum RelationsCommand {
    /// Checks relation words: every instance at an object of a finite category, or
    /// one surface instance `{"w1", "w2", "w3", "w4"}`.
    Check {
        #[arg(long)]
        object: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_chi: usize,
        file: PathBuf,
    },
}
