use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use coxlift::checks::{run_all, suite_info, SuiteReport, SUITES};
use coxlift::degree_box::DegreeBox;
use coxlift::derived::roos_limits;
use coxlift::fan::{class_group, global_reflexive_lift};
use coxlift::io;
use coxlift::lifting::LiftTable;

#[derive(Parser)]
#[command(name = "coxlift", version, about = "Lift toric multigraded modules to the Cox ring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of the lift over a box of Cox degrees.
    LiftTable {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        module: PathBuf,
        /// "lo..hi" for every coordinate, or one range per coordinate separated by commas.
        #[arg(long = "box", allow_hyphen_values = true)]
        degree_box: String,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
        /// Include the covering action matrices (json only).
        #[arg(long)]
        actions: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run a named check suite, or "all".
    Check {
        suite: String,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// List the check suites.
    Suites,
    /// Derived limits of a finite poset diagram.
    Roos {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long, default_value_t = 1)]
        imax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Class group of a fan and the degree map of its Cox ring.
    ClassGroup {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimensions of the global reflexive lift of a filtration module.
    GlobalLift {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long = "box", allow_hyphen_values = true)]
        degree_box: String,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure classes, mapped to exit codes 1 and 2.
enum Failure {
    Assertions,
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parsed<T>(path: &Path, r: coxlift::error::Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("building the worker pool")?;
    Ok(pool.install(f))
}

fn lift_table(
    cone: &Path,
    module: &Path,
    degree_box: &str,
    format: Format,
    actions: bool,
    out: Option<&Path>,
    jobs: usize,
) -> Result<()> {
    let c = parsed(cone, io::parse_cone(&read(cone)?))?;
    c.require_full()
        .map_err(|e| anyhow!("{}: {e}; quotient by the lineality first", cone.display()))?;
    let m = parsed(module, io::parse_module(&read(module)?, &c))?;
    let b = DegreeBox::parse(degree_box, c.ray_count()).map_err(|e| anyhow!("--box: {e}"))?;
    let table = with_pool(jobs, || LiftTable::build(&c, &m, &b, actions && format == Format::Json))??;
    let text = match format {
        Format::Tsv => io::table_tsv(&table),
        Format::Json => pretty(&io::table_json(&table)),
    };
    emit(out, &text)
}

fn print_reports(reports: &[SuiteReport]) -> std::result::Result<(), Failure> {
    for r in reports {
        print!("{r}");
    }
    if reports.iter().all(SuiteReport::passed) {
        Ok(())
    } else {
        Err(Failure::Assertions)
    }
}

fn check(suite: &str, jobs: usize) -> std::result::Result<(), Failure> {
    let reports = if suite == "all" {
        with_pool(jobs, run_all)?
    } else {
        suite_info(suite).map_err(|e| anyhow!("{e}; known suites: all, {}", names()))?;
        vec![with_pool(jobs, || coxlift::checks::run_suite(suite))?.map_err(anyhow::Error::from)?]
    };
    print_reports(&reports)
}

fn names() -> String {
    SUITES.iter().map(|s| s.name).collect::<Vec<_>>().join(", ")
}

fn roos(diagram: &Path, imax: usize, out: Option<&Path>) -> Result<()> {
    let d = parsed(diagram, io::parse_diagram(&read(diagram)?))?;
    emit(out, &pretty(&io::roos_json(&roos_limits(&d, imax))))
}

fn class_group_cmd(fan: &Path, out: Option<&Path>) -> Result<()> {
    let f = parsed(fan, io::parse_fan(&read(fan)?))?;
    let cg = parsed(fan, class_group(&f))?;
    emit(out, &pretty(&io::class_group_json(&cg)))
}

fn global_lift(fan: &Path, module: &Path, degree_box: &str, format: Format, out: Option<&Path>) -> Result<()> {
    let f = parsed(fan, io::parse_fan(&read(fan)?))?;
    let desc = parsed(module, io::parse_fan_filtration(&read(module)?, &f))?;
    let b = DegreeBox::parse(degree_box, f.ray_count()).map_err(|e| anyhow!("--box: {e}"))?;
    let mut rows = Vec::new();
    for c in b.points() {
        let space = global_reflexive_lift(&f, &desc, &c).map_err(|e| anyhow!("{e}"))?;
        rows.push((c, space));
    }
    let text = match format {
        Format::Tsv => {
            let mut s: String = (1..=f.ray_count()).map(|i| format!("c{i}\t")).collect();
            s.push_str("dim\n");
            for (c, space) in &rows {
                for x in c {
                    s.push_str(&format!("{x}\t"));
                }
                s.push_str(&format!("{}\n", space.dim()));
            }
            s
        }
        Format::Json => pretty(&serde_json::Value::Array(
            rows.iter()
                .map(|(c, space)| {
                    serde_json::json!({
                        "degree": io::int_vector_json(c),
                        "dim": space.dim(),
                        "basis": io::matrix_json(space.basis()),
                    })
                })
                .collect(),
        )),
    };
    emit(out, &text)
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    match cli.command {
        Command::LiftTable {
            cone,
            module,
            degree_box,
            format,
            actions,
            out,
            jobs,
        } => lift_table(&cone, &module, &degree_box, format, actions, out.as_deref(), jobs)?,
        Command::Check { suite, jobs } => check(&suite, jobs)?,
        Command::Suites => {
            for s in SUITES {
                println!("{:<12} criterion {:>2}  {}", s.name, s.criterion, s.title);
            }
        }
        Command::Roos { diagram, imax, out } => roos(&diagram, imax, out.as_deref())?,
        Command::ClassGroup { fan, out } => class_group_cmd(&fan, out.as_deref())?,
        Command::GlobalLift {
            fan,
            module,
            degree_box,
            format,
            out,
        } => global_lift(&fan, &module, &degree_box, format, out.as_deref())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertions) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
