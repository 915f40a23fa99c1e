use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bug_spectra_cli::{execute, run_batch, solve_config_from_env, CliError, CommandKind, Format, JobConfig, Method};
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "bug-spectra", version, about = "A_alpha spectra of bug graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full spectrum of one bug at one alpha
    Spectrum {
        #[command(flatten)]
        bug: BugArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Method::Structured)]
        method: Method,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Spectral radius over a list of alphas
    Sweep {
        #[command(flatten)]
        bug: BugArgs,
        /// Comma-separated, e.g. 0,0.25,0.5
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        alphas: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Method::Structured)]
        method: Method,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Spectral radius of every canonical bug with the given n and d
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Structured path against the dense oracle over a grid of bugs
    Verify {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Comma-separated; defaults to 0,0.25,0.5,0.75,0.99
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// JSON array of jobs from a file or stdin, one JSON result per line
    Batch {
        /// Job file; stdin when absent or "-"
        input: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct BugArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write here instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Include wall-clock timings (output is then not reproducible)
    #[arg(long)]
    timings: bool,
}

impl BugArgs {
    fn apply(self, job: &mut JobConfig) {
        (job.n, job.d, job.i, job.p, job.q, job.r) = (self.n, self.d, self.i, self.p, self.q, self.r);
    }
}

impl OutputArgs {
    fn apply(self, job: &mut JobConfig, default: Format) {
        job.format = Some(self.format.unwrap_or(default));
        job.output = self.output;
        job.timings = self.timings;
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { context: format!("writing {}", p.display()), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_jobs(input: Option<&Path>) -> Result<Vec<JobConfig>, CliError> {
    let text = match input {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|source| CliError::Io { context: format!("reading {}", p.display()), source })?,
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io { context: "reading stdin".into(), source })?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn job_from(command: Command) -> JobConfig {
    match command {
        Command::Spectrum { bug, alpha, method, out } => {
            let mut job = JobConfig::new(CommandKind::Spectrum);
            bug.apply(&mut job);
            job.alpha = Some(alpha);
            job.method = Some(method);
            out.apply(&mut job, Format::Json);
            job
        }
        Command::Sweep { bug, alphas, method, out } => {
            let mut job = JobConfig::new(CommandKind::Sweep);
            bug.apply(&mut job);
            job.alphas = Some(alphas);
            job.method = Some(method);
            out.apply(&mut job, Format::Csv);
            job
        }
        Command::Scan { n, d, alpha, out } => {
            let mut job = JobConfig::new(CommandKind::Scan);
            (job.n, job.d, job.alpha) = (Some(n), Some(d), Some(alpha));
            out.apply(&mut job, Format::Json);
            job
        }
        Command::Verify { max_n, alphas, out } => {
            let mut job = JobConfig::new(CommandKind::Verify);
            job.max_n = Some(max_n);
            job.alphas = alphas;
            out.apply(&mut job, Format::Json);
            job
        }
        Command::Batch { .. } => unreachable!("batch is handled before conversion"),
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cfg = solve_config_from_env()?;
    if let Command::Batch { input, output } = cli.command {
        let jobs = read_jobs(input.as_deref())?;
        let (text, code) = run_batch(&jobs, &cfg);
        write_output(output.as_deref(), &text)?;
        return Ok(code);
    }
    let config = job_from(cli.command);
    let job = config.validate()?;
    let report = execute(&job, &cfg)?;
    let text = match job.format {
        Format::Json => report.to_json_pretty(),
        Format::Csv => report.to_csv(),
    };
    write_output(config.output.as_deref(), &text)?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
