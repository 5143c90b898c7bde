use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quartic_lines::error::Error;
use quartic_lines::field::{FieldSpec, Rationals};
use quartic_lines::poly::parse::Bindings;
use quartic_lines::poly::MultiPoly;
use quartic_lines::report::{self, AnyCensus, Format, JobConfig, Report};
use quartic_lines::surface::io::{parse_quartic, parse_surface_file};
use quartic_lines::verify;

/// Lines on smooth quartic surfaces in P^3, computed exactly.
#[derive(Parser, Debug)]
#[command(name = "quartic-lines", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Base field: `Q`, `F p` or `F p k`; overrides a `field` line in the surface file.
    #[arg(long, global = true, value_parser = FieldSpec::parse)]
    field: Option<FieldSpec>,
    /// Largest extension degree scanned by the census tower.
    #[arg(long, global = true, default_value_t = 4)]
    tower: u32,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Seed for randomized steps and sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Source {
    /// Surface file; `-` reads standard input.
    file: Option<PathBuf>,
    /// Inline quartic instead of a file.
    #[arg(short = 'e', long = "expr", conflicts_with = "file")]
    expr: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lines over the field and its extension tower.
    Census {
        #[command(flatten)]
        src: Source,
    },
    /// Singular fibres of the pencil of planes through a line.
    Fibration {
        #[command(flatten)]
        src: Source,
        /// Line as `L1 = L2 = 0`.
        #[arg(long)]
        line: String,
    },
    /// First or second kind, ramification type and normal form of a line.
    ClassifyLine {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        line: String,
    },
    /// Flecnodal membership of a point or of samples on a line; without either, the line budget
    /// audit of the census.
    Flecnodal {
        #[command(flatten)]
        src: Source,
        /// Point as `a,b,c,d`.
        #[arg(long, conflicts_with = "line")]
        point: Option<String>,
        #[arg(long)]
        line: Option<String>,
    },
    /// Incidence graph of the lines.
    Graph {
        #[command(flatten)]
        src: Source,
        /// Skip the comparison of each line's degree with N from its pencil.
        #[arg(long)]
        no_fibrations: bool,
    },
    /// Replay the built-in checks and print a pass/fail ledger.
    Verify {
        /// Directory with replacement example files (same names as the bundled ones).
        #[arg(long)]
        data: Option<PathBuf>,
        /// Run only these claims: criterion numbers or claim ids, comma separated.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

/// `--field F 3 2` spans several words; join them into one value before clap sees them.
fn join_field_args(args: Vec<String>) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut it = args.into_iter().peekable();
    while let Some(a) = it.next() {
        if a != "--field" {
            out.push(a);
            continue;
        }
        let Some(head) = it.next() else {
            out.push(a);
            break;
        };
        let mut value = head.clone();
        if head == "F" || head == "f" {
            for _ in 0..2 {
                match it.peek() {
                    Some(n) if n.parse::<u64>().is_ok() => {
                        value.push(' ');
                        value.push_str(&it.next().unwrap());
                    }
                    _ => break,
                }
            }
        }
        out.push(format!("--field={value}"));
    }
    out
}

enum Failure {
    Usage(String),
    Finding(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetViolated(_)
            | Error::RamificationContradiction(_)
            | Error::Pathological(_)
            | Error::Inconsistent(_) => Failure::Finding(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn load(src: &Source, global: &Global) -> Result<(MultiPoly<Rationals>, FieldSpec), Failure> {
    let (poly, file_field) = match (&src.file, &src.expr) {
        (_, Some(e)) => (parse_quartic(e, &Bindings::new())?, None),
        (Some(p), None) => {
            let text = if p.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(Error::from)?
            } else {
                std::fs::read_to_string(p)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?
            };
            let f = parse_surface_file(&text, &Bindings::new())?;
            (f.poly, f.field)
        }
        (None, None) => return Err(Failure::Usage("no surface given (file or --expr)".into())),
    };
    let field = global.field.clone().or(file_field).unwrap_or(FieldSpec::Rationals);
    Ok((poly, field))
}

fn emit<R: Report>(r: &R, format: Format) -> Result<(), Failure> {
    print!("{}", r.render(format));
    if r.finding() {
        Err(Failure::Finding(String::new()))
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let format = match g.format {
        OutFormat::Json => Format::Json,
        OutFormat::Text => Format::Text,
    };
    let config = |field: FieldSpec| JobConfig {
        field,
        tower: g.tower.max(1),
        threads: g.threads,
        format,
        seed: g.seed,
    };
    match &cli.command {
        Command::Census { src } => {
            let (poly, field) = load(src, g)?;
            match report::census(&poly, &config(field))? {
                AnyCensus::Finite(r) => emit(&r, format),
                AnyCensus::Rational(r) => emit(&r, format),
            }
        }
        Command::Fibration { src, line } => {
            let (poly, field) = load(src, g)?;
            emit(&report::fibration(&poly, line, &config(field))?, format)
        }
        Command::ClassifyLine { src, line } => {
            let (poly, field) = load(src, g)?;
            emit(&report::classify_line(&poly, line, &config(field))?, format)
        }
        Command::Flecnodal { src, point, line } => {
            let (poly, field) = load(src, g)?;
            let r = report::flecnodal(&poly, point.as_deref(), line.as_deref(), &config(field))?;
            emit(&r, format)
        }
        Command::Graph { src, no_fibrations } => {
            let (poly, field) = load(src, g)?;
            emit(&report::graph(&poly, &config(field), !no_fibrations)?, format)
        }
        Command::Verify { data, only } => {
            let bundle = match data {
                Some(dir) => verify::Bundle::from_dir(dir)?,
                None => verify::Bundle::builtin()?,
            };
            let wanted: Vec<String> = only
                .iter()
                .map(|s| match s.trim().parse::<u32>() {
                    Ok(n) => format!("criterion-{n}"),
                    Err(_) => s.trim().to_string(),
                })
                .collect();
            let known = verify::claim_ids();
            if let Some(bad) = wanted.iter().find(|w| !known.contains(w)) {
                return Err(Failure::Usage(format!("unknown claim {bad:?}; known: {}", known.join(", "))));
            }
            let ledger = verify::run_selected(&bundle, &config(FieldSpec::Rationals), |id| {
                wanted.is_empty() || wanted.iter().any(|w| w == id)
            });
            emit(&ledger, format)
        }
    }
}

fn main() -> ExitCode {
    let args = join_field_args(std::env::args().collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Finding(m)) => {
            if !m.is_empty() {
                eprintln!("finding: {m}");
            }
            ExitCode::from(2)
        }
    }
}
