use bvosc::Interpolation;
use bvosc_cli::commands::{
    cmd_analyze, cmd_segment, cmd_verify, emit, render_analyze, render_segment, render_verify,
    WindowSpec,
};
use bvosc_cli::{descriptor, ingest, CliError, CliResult, Format};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bvosc",
    version,
    about = "Multiscale oscillation/variation analysis of 1D signals"
)]
struct Cli {
    /// Seed for any randomized probing (verification suites)
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CsvMode {
    /// piecewise-linear interpolation of the samples
    Pl,
    /// piecewise-constant cells, right-continuous at breakpoints
    Pc,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// CSV file with two columns x,y (header optional)
    #[arg(long, value_name = "PATH")]
    input: Option<String>,
    /// JSON signal descriptor: a path, or inline JSON starting with '{'
    #[arg(long, value_name = "PATH|JSON")]
    signal_json: Option<String>,
    /// Interpretation of CSV samples
    #[arg(long, value_enum, default_value_t = CsvMode::Pl)]
    mode: CsvMode,
}

impl InputArgs {
    fn load(&self) -> CliResult<bvosc::Signal> {
        match (&self.input, &self.signal_json) {
            (Some(path), None) => {
                let mode = match self.mode {
                    CsvMode::Pl => Interpolation::PiecewiseLinear,
                    CsvMode::Pc => Interpolation::PiecewiseConstant,
                };
                ingest::read_csv(path, mode)
            }
            (None, Some(arg)) => descriptor::load(arg),
            _ => Err(CliError::Input(
                "exactly one of --input or --signal-json is required".into(),
            )),
        }
    }
}

#[derive(Debug, Args)]
struct WindowArgs {
    /// Comma-separated window lengths (default: L/4,L/8,L/16)
    #[arg(long, value_delimiter = ',', value_name = "LEN,...")]
    scales: Option<Vec<f64>>,
    /// Spacing of window centers (default: L/64)
    #[arg(long, value_name = "LEN")]
    stride: Option<f64>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-window mean, oscillation, variation, level balance and quotient
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        windows: WindowArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Classify the domain into affine / jump / constant / other segments
    Segment {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        windows: WindowArgs,
        /// Quotient tolerance for the affine class
        #[arg(long, value_name = "TOL")]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a verification suite and report residuals
    Verify {
        /// One of: affine, power, exponent, lemma, taylor, ode, measure, all
        #[arg(long, value_name = "NAME")]
        suite: String,
        /// Exponent probed by the power suite
        #[arg(long, default_value_t = 2.5, value_name = "S")]
        s: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn run(cli: Cli) -> CliResult<i32> {
    let seed = cli.seed;
    match cli.command {
        Command::Analyze { input, windows, out } => {
            let signal = input.load()?;
            let spec = WindowSpec::resolve(windows.scales, windows.stride, &signal);
            let report = cmd_analyze(&signal, &spec)?;
            emit(&render_analyze(&report, out.format), out.output.as_deref())?;
            Ok(0)
        }
        Command::Segment { input, windows, tol, out } => {
            let signal = input.load()?;
            let spec = WindowSpec::resolve(windows.scales, windows.stride, &signal);
            let report = cmd_segment(&signal, &spec, tol)?;
            emit(&render_segment(&report, out.format), out.output.as_deref())?;
            Ok(0)
        }
        Command::Verify { suite, s, out } => {
            let report = cmd_verify(&suite, seed, s)?;
            emit(&render_verify(&report, out.format), out.output.as_deref())?;
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("bvosc: {err}");
            std::process::exit(err.exit_code() as i32);
        }
    }
}
