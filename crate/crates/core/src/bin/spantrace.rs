use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spantrace::cli::generate::GenParams;
use spantrace::cli::report::Report;
use spantrace::cli::resolve::Instance;
use spantrace::cli::suites::{check_instance, check_lv, run_suite};
use spantrace::corrcat::CCObject;
use spantrace::dualtrace::{characteristic_class, make_dual, trace};
use spantrace::error::{Error, Result};
use spantrace::sheafops::OmegaClass;

#[derive(Parser)]
#[command(name = "spantrace", version, about = "Traces and Lefschetz-Verdier checks for finite correspondences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable check on an instance file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print traces of endomorphisms and characteristic classes of sheaves.
    Trace { file: PathBuf },
    /// Check the Lefschetz-Verdier square of an instance file.
    Lv {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a suite on seeded random instances.
    Fuzz {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 4)]
        max_set: usize,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        deg_min: i32,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        deg_max: i32,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Render a saved JSON report.
    Report {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Report file; stdin when absent.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<Instance> {
    Instance::parse(&std::fs::read_to_string(path)?)
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn show(c: &OmegaClass) -> String {
    let body: Vec<String> = c.entries().iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{{{}}} total {}", body.join(", "), c.total())
}

fn run(cli: Cli) -> Result<ExitCode> {
    Ok(match cli.command {
        Command::Check { file, format } => {
            let inst = load(&file)?;
            emit(&Report::new("check", None, 1, None, check_instance(&inst, 0)), format)
        }
        Command::Trace { file } => {
            let inst = load(&file)?;
            for (name, l) in &inst.sheaves {
                let cc = characteristic_class(&make_dual(&CCObject::new(l.clone()))?)?;
                println!("cc {name}: {}", show(&cc.class));
            }
            for (name, e) in inst.endomorphisms() {
                let t = trace(e, &make_dual(e.source())?)?;
                println!("trace {name}: {}", show(&t.class));
            }
            ExitCode::SUCCESS
        }
        Command::Lv { file, format } => {
            let inst = load(&file)?;
            let lv = inst
                .lv
                .as_ref()
                .ok_or_else(|| Error::Parse {
                    pointer: "/lv".into(),
                    message: "instance has no lv section".into(),
                })?;
            emit(&Report::new("lv", None, 1, None, check_lv(0, lv)), format)
        }
        Command::Fuzz {
            suite,
            seed,
            count,
            max_set,
            max_rank,
            deg_min,
            deg_max,
            modulus,
            format,
        } => {
            let params = GenParams {
                max_set,
                max_rank,
                deg_min,
                deg_max,
                modulus,
            };
            emit(&run_suite(&suite, seed, count, &params)?, format)
        }
        Command::Report { format, input } => {
            let text = match input {
                Some(p) => std::fs::read_to_string(p)?,
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            emit(&Report::from_json(&text)?, format)
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
