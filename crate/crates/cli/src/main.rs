use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use grm_cli::gen::{generate, parse_codes, parse_monomial, GenKind};
use grm_cli::verify::{run_battery, VerifyReport};
use grm_cli::{
    covering_report, dump_system, emit, format, profile_report, read_function, CliError, Method,
};
use grm_core::FieldSpec;

#[derive(Parser)]
#[command(
    name = "grm",
    version,
    about = "Exact distances to first-order generalized Reed-Muller codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Zero,
    Random,
    Affine,
    Monomial,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Transform,
    Fast,
    Brute,
    Linsys,
    Arrangement,
    All,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Transform => Method::Transform,
            MethodArg::Fast => Method::Fast,
            MethodArg::Brute => Method::Brute,
            MethodArg::Linsys => Method::Linsys,
            MethodArg::Arrangement => Method::Arrangement,
            MethodArg::All => Method::All,
        }
    }
}

#[derive(clap::Args)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long)]
    m: usize,
    /// Modulus coefficients, low to high, comma separated.
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn field(&self) -> Result<FieldSpec, CliError> {
        let modulus = self.modulus.as_deref().map(parse_codes).transpose()?;
        Ok(FieldSpec::new(self.p, self.n, modulus.as_deref())?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a function file.
    Gen {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "zero")]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Linear part of an affine function, comma separated codes.
        #[arg(long)]
        v: Option<String>,
        /// Constant term of an affine function.
        #[arg(long, default_value_t = 0)]
        t: u32,
        /// Monomial `c:e1,...,em`.
        #[arg(long)]
        monomial: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distances from a function to every codeword.
    Profile {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant battery; exits nonzero on any failure.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the linear system for a function.
    DumpSystem {
        file: PathBuf,
        /// Replace redundant rows by normalization rows.
        #[arg(long)]
        cramer: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive covering radius for tiny parameters.
    CoveringRadius {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        json: bool,
    },
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Gen {
            field,
            kind,
            seed,
            v,
            t,
            monomial,
            out,
        } => {
            let spec = field.field()?;
            let kind =
                match kind {
                    Kind::Zero => GenKind::Zero,
                    Kind::Random => GenKind::Random { seed },
                    Kind::Affine => GenKind::Affine {
                        v: parse_codes(
                            v.as_deref()
                                .ok_or_else(|| CliError::Usage("--kind affine needs --v".into()))?,
                        )?,
                        t,
                    },
                    Kind::Monomial => parse_monomial(monomial.as_deref().ok_or_else(|| {
                        CliError::Usage("--kind monomial needs --monomial".into())
                    })?)?,
                };
            let f = generate(&kind, &spec, field.m)?;
            emit(out.as_deref(), &format::write(&f))?;
        }
        Command::Profile {
            file,
            method,
            json: as_json,
            out,
        } => {
            let f = read_function(&file)?;
            let report = profile_report(&f, Method::from(method))?;
            let text = if as_json {
                json(&report)
            } else {
                report.to_text(f.field())
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Verify {
            file,
            json: as_json,
            seed,
        } => {
            let f = read_function(&file)?;
            let report = VerifyReport::new(&f, run_battery(&f, seed));
            emit(
                None,
                &if as_json {
                    json(&report)
                } else {
                    report.to_text()
                },
            )?;
            return Ok(report.passed);
        }
        Command::DumpSystem { file, cramer, out } => {
            let f = read_function(&file)?;
            emit(out.as_deref(), &dump_system(&f, cramer)?)?;
        }
        Command::CoveringRadius {
            field,
            json: as_json,
        } => {
            let report = covering_report(&field.field()?, field.m)?;
            emit(
                None,
                &if as_json {
                    json(&report)
                } else {
                    report.to_text()
                },
            )?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("GRM_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
