//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

mod commands;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::run;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "k3tk", version, about = "Tame symplectic K3 group toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    /// Aligned, human-readable output.
    #[default]
    Text,
    /// One record per line.
    Records,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate singularity configurations satisfying the constraints.
    Enumerate {
        /// Range of the number k of singular points, as MIN:MAX.
        #[arg(long = "k", value_parser = parse_k_range, default_value = "4:5")]
        k_range: (usize, usize),
        /// Keep configurations whose discriminant product is a square.
        #[arg(long)]
        no_square_filter: bool,
        /// Do not require the ranks to sum to 20.
        #[arg(long)]
        no_rank_filter: bool,
        /// Diff against the bundled table and exit 1 on mismatch.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate the constraints for one configuration, e.g. "A2,A4,A4,A6,D4".
    CheckConfig {
        config: String,
        /// Check against this group order instead of the candidate order.
        #[arg(long)]
        order: Option<u64>,
    },
    /// Analyse a permutation group file.
    Group {
        /// Path to a group file, or the name of a bundled one (e.g. a6.grp).
        path: PathBuf,
        #[arg(long)]
        order: bool,
        #[arg(long)]
        orbits: bool,
        #[arg(long)]
        histogram: bool,
        #[arg(long)]
        mu: bool,
        /// Orbit sizes of successive stabilizers of these 1-based points, e.g. 1,2,3.
        #[arg(long, value_delimiter = ',')]
        chain: Option<Vec<usize>>,
        /// Largest group order to enumerate element by element.
        #[arg(long, default_value_t = k3tk::perm::DEFAULT_CAP)]
        cap: u64,
        /// Compute mu even if some element has order above 8.
        #[arg(long)]
        allow_wild: bool,
        /// Expected value of the single requested quantity; exit 1 if different.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Print the stabilizer table and cross-check it against computed discriminant groups.
    Table1 {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check the explicit O48 and O48:2 constructions and the S4 orbit shapes.
    VerifyConstructions {
        /// Print the full census of S4 orbit shapes.
        #[arg(long)]
        s4_census: bool,
    },
}

fn parse_k_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected MIN:MAX, got {s:?}"))?;
    let lo: usize = a.trim().parse().map_err(|_| format!("bad lower bound {a:?}"))?;
    let hi: usize = b.trim().parse().map_err(|_| format!("bad upper bound {b:?}"))?;
    if lo < 1 || hi > 20 || lo > hi {
        return Err(format!("k range must satisfy 1 <= MIN <= MAX <= 20, got {lo}:{hi}"));
    }
    Ok((lo, hi))
}

pub(crate) fn line(out: &mut dyn Write, s: impl AsRef<str>) {
    // Broken pipes are not worth failing the command over.
    let _ = writeln!(out, "{}", s.as_ref());
}
