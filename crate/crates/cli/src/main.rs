//! Command-line front end: `lplde sweep-amplitude|sweep-mu|sweep-error|show`.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lplde_cli::{parse_methods, render_csv, run_sweep, show_report, SweepConfig, SweepMode};

#[derive(Parser)]
#[command(
    name = "lplde",
    version,
    about = "Duffing oscillator frequency methods compared against exact-period oracles, as CSV sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Squared frequency versus amplitude at fixed omega and mu.
    SweepAmplitude(SweepArgs),
    /// Period versus coupling mu at fixed omega and amplitude.
    SweepMu(SweepArgs),
    /// Relative period error versus coupling over a positive mu range.
    SweepError(SweepArgs),
    /// Single-point report comparing all methods.
    Show(ShowArgs),
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    /// Linear frequency omega.
    #[arg(long)]
    omega: Option<f64>,

    /// Fixed cubic coupling (amplitude sweeps only).
    #[arg(long)]
    mu: Option<f64>,

    /// Fixed amplitude (mu/error sweeps only).
    #[arg(long)]
    amplitude: Option<f64>,

    /// Lower end of the swept range.
    #[arg(long)]
    min: Option<f64>,

    /// Upper end of the swept range.
    #[arg(long)]
    max: Option<f64>,

    /// Number of rows, endpoints included.
    #[arg(long)]
    steps: Option<usize>,

    /// Expansion order used by the engine_n method.
    #[arg(long)]
    order: Option<usize>,

    /// Comma-separated methods: lp3, lplde_pms, lplde_printed, engine_n
    /// (exact is always present as the baseline column).
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,

    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Evaluate the lplde_pms column with the printed closed form instead
    /// of the derived one.
    #[arg(long)]
    use_printed_pms: bool,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ShowArgs {
    #[arg(long, default_value_t = 1.0)]
    omega: f64,

    #[arg(long, default_value_t = 1.0)]
    mu: f64,

    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,

    /// Expansion order used by the engine_n row.
    #[arg(long, default_value_t = 3)]
    order: usize,

    /// Evaluate the lplde_pms row with the printed closed form.
    #[arg(long)]
    use_printed_pms: bool,
}

impl SweepArgs {
    fn into_config(self, mode: SweepMode) -> Result<SweepConfig, lplde_cli::ConfigError> {
        let mut config = SweepConfig::defaults(mode);
        if let Some(v) = self.omega {
            config.omega = v;
        }
        if let Some(v) = self.mu {
            config.mu = v;
        }
        if let Some(v) = self.amplitude {
            config.amplitude = v;
        }
        if let Some(v) = self.min {
            config.min = v;
        }
        if let Some(v) = self.max {
            config.max = v;
        }
        if let Some(v) = self.steps {
            config.steps = v;
        }
        if let Some(v) = self.order {
            config.engine_order = v;
        }
        if let Some(tokens) = &self.methods {
            config.methods = parse_methods(tokens)?;
        }
        config.use_printed_pms = self.use_printed_pms;
        config.validate()?;
        Ok(config)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not failures; bad flags are config errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let result = match cli.command {
        Command::SweepAmplitude(args) => sweep(args, SweepMode::Amplitude),
        Command::SweepMu(args) => sweep(args, SweepMode::Mu),
        Command::SweepError(args) => sweep(args, SweepMode::Error),
        Command::Show(args) => {
            match show_report(
                args.omega,
                args.mu,
                args.amplitude,
                args.order,
                args.use_printed_pms,
            ) {
                Ok(report) => {
                    print!("{report}");
                    Ok(0)
                }
                Err(e) => Err(e.to_string()),
            }
        }
    };

    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn sweep(args: SweepArgs, mode: SweepMode) -> Result<u8, String> {
    let out_path = args.out.clone();
    let config = args.into_config(mode).map_err(|e| e.to_string())?;
    let rows = run_sweep(&config).map_err(|e| e.to_string())?;
    let all_failed = rows.iter().all(lplde_cli::SweepRow::failed);
    let csv = render_csv(&config, &rows);

    match out_path {
        Some(path) => std::fs::write(&path, csv)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(csv.as_bytes())
                .map_err(|e| format!("cannot write to stdout: {e}"))?;
        }
    }

    Ok(if all_failed { 2 } else { 0 })
}
