use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use frontpair::cli_io::{self, OutputFormat, Probe, RunConfig};
use frontpair::Error;

#[derive(Parser)]
#[command(name = "frontpair", version, about = "Photon pairs from superluminal optical boundaries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Angular emission spectrum over the configured grid.
    Spectrum(Common),
    /// Resonance regime and refined resonance angles.
    Resonances(Common),
    /// Entanglement measures for one squeezing ratio or incidence angle.
    Entangle {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Seeded draws of the emitted pair number.
    Sample {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        probe: ProbeArgs,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// Spectra for an array of configurations, tagged with a config_id column.
    Sweep(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ProbeArgs {
    /// Squeezing ratio.
    #[arg(long, conflicts_with = "theta", allow_hyphen_values = true)]
    z: Option<f64>,
    /// Incidence angle in radians.
    #[arg(long)]
    theta: Option<f64>,
}

impl ProbeArgs {
    fn probe(&self) -> Option<Probe> {
        self.z.map(Probe::Z).or(self.theta.map(Probe::ThetaI))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

impl Common {
    fn load(&self) -> Result<RunConfig, Error> {
        let text = fs::read_to_string(&self.config)?;
        let mut cfg = cli_io::parse_config(&text)?;
        self.apply(&mut cfg);
        Ok(cfg)
    }

    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(f) = self.format {
            cfg.format = f.into();
        }
        if let Some(out) = &self.out {
            cfg.out = Some(out.clone());
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let (text, dest) = match cli.command {
        Command::Spectrum(c) => {
            let cfg = c.load()?;
            (cli_io::run_spectrum(&cfg)?, cfg.out)
        }
        Command::Resonances(c) => {
            let cfg = c.load()?;
            (cli_io::run_resonances(&cfg)?, cfg.out)
        }
        Command::Entangle { common, probe } => {
            let cfg = common.load()?;
            (cli_io::run_entangle(&cfg, probe.probe())?, cfg.out)
        }
        Command::Sample { common, probe, count } => {
            let cfg = common.load()?;
            (cli_io::run_sample(&cfg, probe.probe(), count)?, cfg.out)
        }
        Command::Sweep(c) => {
            let text = fs::read_to_string(&c.config)?;
            let mut cfgs = cli_io::parse_sweep(&text)?;
            for cfg in &mut cfgs {
                c.apply(cfg);
            }
            let first = &cfgs[0];
            (cli_io::run_sweep(&cfgs, first.format)?, first.out.clone())
        }
    };
    cli_io::write_output(&text, dest.as_deref())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", cli_io::error_object(&e));
            ExitCode::FAILURE
        }
    }
}
