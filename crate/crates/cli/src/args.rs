use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use tql_core::fuchsian::Signature;
use tql_core::zoo::GroupSpec;

#[derive(Debug, Parser)]
#[command(name = "tql", version, about = "Generating-tuple searches for triangle and quadrangle group quotients")]
pub struct Cli {
    /// Worker threads for the searches.
    #[arg(long, global = true, env = "TQL_THREADS")]
    pub threads: Option<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Directory holding the append-only run log.
    #[arg(long, global = true, env = "TQL_CACHE")]
    pub cache: Option<PathBuf>,

    /// Random attempts per subgroup order in subgroup searches.
    #[arg(long, global = true, default_value_t = 64)]
    pub attempts: u64,

    /// Directory with the generator files used by `repro`.
    #[arg(long, global = true, env = "TQL_DATA")]
    pub data: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Signature arithmetic.
    Sig {
        #[command(subcommand)]
        op: SigOp,
    },
    /// Generating triples of given orders, by default (2,3,7).
    Hurwitz {
        spec: GroupSpec,
        #[arg(long, value_delimiter = ',', num_args = 3, default_value = "2,3,7")]
        orders: Vec<u64>,
    },
    /// Generating (2,2,2,3) quadruples, classified by n = |x1x2|.
    Quad {
        spec: GroupSpec,
        /// Count only the values n <= K.
        #[arg(long, value_name = "K", conflicts_with = "nset")]
        nmax: Option<u64>,
        /// Only decide which n occur.
        #[arg(long)]
        nset: bool,
        /// Also count orbits under braid moves (small groups only).
        #[arg(long)]
        orbits: bool,
    },
    /// Hurwitz, reducible, handlebody, bounded-surface and G7 flags.
    Classify { spec: GroupSpec },
    /// Hurwitz verdicts over a family.
    Survey {
        family: SurveyFamily,
        #[arg(long)]
        qmax: u64,
    },
    /// An involution inverting an element of order k.
    D7 {
        spec: GroupSpec,
        #[arg(long, default_value_t = 7)]
        k: u64,
    },
    /// Extension of Hurwitz triples to the extended triangle group.
    Ext237 { spec: GroupSpec },
    /// Coset action on an index-7 subgroup of a Hurwitz group.
    Theorem1 {
        spec: GroupSpec,
        #[arg(long)]
        subgroup_order: u64,
    },
    /// Subgroups whose preimage in the triangle group is a triangle group.
    Irreducible {
        spec: GroupSpec,
        /// Also report the smallest index up to D at which a subgroup is found.
        #[arg(long, value_name = "D")]
        smallest_index_up_to: Option<u64>,
    },
    /// Quadruples of the preimage of an index-7 subgroup, as words in a Hurwitz triple.
    Induced {
        spec: GroupSpec,
        #[arg(long)]
        subgroup_order: u64,
    },
    /// Genus bookkeeping for a handlebody with handles.
    Handles {
        #[arg(long)]
        order: u64,
        #[arg(long)]
        triangle_image: u64,
    },
    /// Runs a reproduction suite.
    Repro { suite: Suite },
}

#[derive(Debug, Clone, Subcommand)]
pub enum SigOp {
    /// Euler characteristic.
    Chi { sig: Signature },
    /// Genus of the surface acted on by a group of the given order.
    Genus {
        #[arg(long)]
        order: u64,
        #[arg(long)]
        sig: Signature,
    },
    /// Abelianization.
    Ab { sig: Signature },
    /// Subgroup signatures of a given index allowed by Riemann–Hurwitz.
    Subcands {
        #[arg(long)]
        index: u64,
        #[arg(long, default_value = "(0;2,3,7)")]
        parent: Signature,
    },
    /// Triangle subgroups of a triangle group.
    Triangles {
        #[arg(long, default_value = "(0;2,3,7)")]
        parent: Signature,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurveyFamily {
    Psl2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Fast,
    Full,
    Data,
}
