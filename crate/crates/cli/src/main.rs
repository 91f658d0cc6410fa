//! `ultrazero`: command-line access to the ultrazero toolkit.
//!
//! Exit status: 0 on success or a passing check, 1 when a checked property
//! fails, 2 on malformed input or a rejected precondition.

mod commands;
mod human;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ultrazero", version, about = "Exact computation with finite ultrametric and dimension-zero spaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Human,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmbedMode {
    /// Isometric when every distance is a power of three, otherwise bi-Lipschitz.
    Auto,
    Isometric,
    Bilipschitz,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the metric axioms of a distance file.
    Validate { file: PathBuf },
    /// Decide ultrametricity; a failing triangle is printed as witness.
    UltraCheck { file: PathBuf },
    /// Partition into S-components.
    Components {
        file: PathBuf,
        #[arg(long)]
        scale: String,
    },
    /// Subdominant ultrametric and its spanning tree.
    Subdominant { file: PathBuf },
    /// Dimension-zero certificate: constant m and the control table.
    Dim0Cert { file: PathBuf },
    /// Check d/(2m) <= rho <= d and D^-1(d)/2 <= rho <= d on every pair.
    VerifyBounds {
        file: PathBuf,
        /// Certificate file to check against; computed when absent.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Round an ultrametric up to powers of three.
    Quantize { file: PathBuf },
    /// Embed an ultrametric space in L_omega.
    EmbedLomega {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = EmbedMode::Auto)]
        mode: EmbedMode,
    },
    /// Embed any finite metric space in L_omega through its subdominant ultrametric.
    EmbedUniversal { file: PathBuf },
    /// Lipschitz retraction of an ultrametric space onto a subset.
    Retract {
        file: PathBuf,
        /// Comma-separated labels.
        #[arg(long)]
        subset: String,
        #[arg(long)]
        lambda: String,
        /// Needs delta > 1 and delta^2 < lambda; chosen automatically when absent.
        #[arg(long)]
        delta: Option<String>,
        /// Base point label; defaults to the file's base, then the first point.
        #[arg(long)]
        base: Option<String>,
    },
    /// Filtration distance between two elements, given as comma-separated digits.
    GroupDist {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// The subgroup spanned by the first summands, as a metric file.
    GroupBall {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Isometric embedding of one direct sum's ball into another's.
    GroupEmbed {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        depth: usize,
        /// Digit injections per position, e.g. "0,2;0,1".
        #[arg(long)]
        maps: Option<String>,
    },
    /// Sylow number at a prime.
    Sylow {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Compare Sylow numbers of two direct sums prime by prime.
    Protasov { left: PathBuf, right: PathBuf },
    /// Image of a binary digit string under the ternary Cantor map.
    M0Encode {
        #[arg(long)]
        digits: String,
        /// Group spec; must have order-2 summands. Defaults to Z2^inf.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Exhaustive distortion check of the ternary Cantor map.
    M0Check {
        #[arg(long)]
        max_len: usize,
    },
    /// Build an archipelago from a plan file.
    ArchipelagoBuild { plan: PathBuf },
    /// Island profile of a pointed space.
    ArchipelagoProfile {
        file: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Compare island-size fingerprints; inputs are profiles or metric files.
    ArchipelagoCompare { left: PathBuf, right: PathBuf },
    /// Classify closed balls of an archipelago.
    BallAudit {
        file: PathBuf,
        /// Radii to test; every distance of the space when absent.
        #[arg(long = "radius")]
        radii: Vec<String>,
        /// Centers to test; every point when absent.
        #[arg(long = "center")]
        centers: Vec<String>,
    },
}

/// A finished command: both renderings and the exit status.
pub struct Report {
    pub json: String,
    pub human: String,
    pub failed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.json,
                Format::Human => report.human,
            };
            if let Err(e) = emit(cli.output.as_deref(), &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(u8::from(report.failed))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(path: Option<&std::path::Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n")),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")
        }
    }
}
