use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::exactnum::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "cartankit", version, about = "Exact computations with Cartan data and left-invariant metrics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; text is rendered from the JSON report.
    #[arg(long = "out", value_enum, default_value_t = OutputMode::Text, global = true)]
    pub out: OutputMode,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate Cartan data from a JSON file, or every *.json file of a directory.
    Validate {
        #[arg(required_unless_present = "batch", conflicts_with = "batch")]
        input: Option<PathBuf>,
        /// Validate each file of DIR concurrently, writing NAME.report.json next to it.
        #[arg(long, value_name = "DIR")]
        batch: Option<PathBuf>,
    },
    /// Build, validate and classify a space form.
    Spaceform {
        #[arg(long)]
        n: usize,
        /// Curvature as an integer or p/q.
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        kappa: Rational,
        /// Signature p,q of the invariant form (default n,0).
        #[arg(long, value_parser = parse_signature)]
        signature: Option<(usize, usize)>,
    },
    /// Curvature of a left-invariant metric given by an orthonormal frame.
    Leftinvariant {
        input: PathBuf,
        /// JSON {"group": [matrix…], "algebra": [matrix…]} of isotropy data.
        #[arg(long, value_name = "FILE")]
        isotropy: Option<PathBuf>,
    },
    /// Isomorphism fingerprint of a Lie algebra (structure constants, matrix
    /// basis, or the total algebra of point-based Cartan data).
    Fingerprint {
        input: PathBuf,
        /// A second algebra to compare against.
        #[arg(long, value_name = "FILE")]
        compare: Option<PathBuf>,
    },
    /// Homogeneity and local-symmetry criteria for Cartan data.
    SymmetricCheck { input: PathBuf },
    /// Both Bianchi identities for Cartan data that validates.
    Bianchi { input: PathBuf },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_signature(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("expected p,q, got {s:?}"))?;
    let p = p.trim().parse().map_err(|_| format!("bad p in {s:?}"))?;
    let q = q.trim().parse().map_err(|_| format!("bad q in {s:?}"))?;
    Ok((p, q))
}
