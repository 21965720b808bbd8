mod commands;
mod output;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Parser)]
#[command(name = "negcurve", version, about = "Klein and Wiman line configurations: invariants, negative curves, symbolic powers")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Suppress progress lines on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    /// Worker threads. Results do not depend on this value.
    #[arg(long, global = true, env = "NEGCURVE_WORKERS", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetName {
    Klein,
    Wiman,
    KleinChar7,
}

impl PresetName {
    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::Klein => "klein",
            PresetName::Wiman => "wiman",
            PresetName::KleinChar7 => "klein-char7",
        }
    }
}

/// `exact` or `modp:<p>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Exact,
    ModP(u64),
}

impl FromStr for FieldChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "exact" {
            return Ok(FieldChoice::Exact);
        }
        s.strip_prefix("modp:")
            .and_then(|p| p.parse().ok())
            .map(FieldChoice::ModP)
            .ok_or_else(|| format!("expected `exact` or `modp:<p>`, got {s:?}"))
    }
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    #[arg(long, value_enum, default_value_t = PresetName::Klein)]
    pub preset: PresetName,
    /// Coefficient field: `exact` or `modp:<p>`. Defaults depend on the task.
    #[arg(long)]
    pub field: Option<FieldChoice>,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Line configurations.
    Config {
        #[command(subcommand)]
        action: ConfigAction,
    },
    /// Invariant forms and their relations.
    Invariants {
        #[command(flatten)]
        target: Target,
        /// Include canonical polynomial text.
        #[arg(long)]
        polys: bool,
        /// Check invariance under the group.
        #[arg(long)]
        invariance: bool,
        /// Run the Wiman degree-90 relation over an exact field too.
        #[arg(long)]
        relation: bool,
    },
    /// Dimension of a linear series of invariant forms with fat points.
    Series {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m5: Option<u32>,
        #[arg(long)]
        m4: Option<u32>,
        #[arg(long)]
        m3: Option<u32>,
        /// Wiman only: multiplicity at the first triple orbit.
        #[arg(long)]
        m3a: Option<u32>,
        /// Wiman only: multiplicity at the second triple orbit.
        #[arg(long)]
        m3b: Option<u32>,
        /// Compute and verify a basis.
        #[arg(long)]
        basis: bool,
    },
    /// Search for invariant negative curves.
    Negsearch {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 60)]
        d_max: u32,
        /// Wiman only: independent multiplicities at the two triple orbits.
        #[arg(long)]
        split: bool,
        /// Include every candidate examined.
        #[arg(long)]
        candidates: bool,
    },
    /// Waldschmidt-constant bounds with certificates.
    Waldschmidt {
        #[command(flatten)]
        target: Target,
        /// Degree bound of the Klein negative-curve search behind the lower bound.
        #[arg(long, default_value_t = 200)]
        d_max: u32,
    },
    /// Ideals of the configuration points and their powers.
    Fatideal {
        #[command(subcommand)]
        action: FatAction,
    },
    /// Reference checks.
    Golden {
        #[arg(long, default_value = "klein-core")]
        suite: String,
    },
}

#[derive(Subcommand)]
pub enum ConfigAction {
    Show {
        #[command(flatten)]
        target: Target,
    },
}

#[derive(Subcommand)]
pub enum FatAction {
    /// Minimal generators of I.
    Generators {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        up_to: Option<u32>,
        #[arg(long)]
        polys: bool,
    },
    /// Least degree of I^(m).
    Alpha {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        hint: u32,
        #[arg(long, default_value_t = 200)]
        cap: u32,
    },
    /// I^(m) ⊆ I^r, degree by degree.
    Contain {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        from: u32,
        #[arg(long)]
        to: u32,
    },
    /// Resurgence bounds and certificate.
    Resurgence {
        #[command(flatten)]
        target: Target,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet = cli.quiet;
    if cli.workers > 1 && !quiet {
        eprintln!("workers = {}: tasks run sequentially; reports do not depend on this setting", cli.workers);
    }
    let progress = move |s: &str| {
        if !quiet {
            eprintln!("{s}");
        }
    };
    match commands::dispatch(&cli.cmd, &progress) {
        Ok(report) => {
            print!("{}", output::render(&report, cli.format));
            if report.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(e.as_ref()))
        }
    }
}
