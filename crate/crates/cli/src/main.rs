use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use filtra::examples::{example, EXAMPLES};
use filtra::report::{render_human, run_example_file, run_task_file, RouteChoice, RunFlags, RunOutput};
use filtra::task::{parse_task_with, FiltrationExpr, TaskDecl, TaskFile, TaskKind, TaskTarget};
use filtra::{CoeffField, TheoremId, VerifyOptions};

#[derive(Parser)]
#[command(name = "filtra", version, about = "Hilbert coefficients of good filtrations and bounds on e_2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Gröbner bases of the declared ideals
    Gb,
    /// Hilbert series and coefficients of the declared filtrations
    Hilbert,
    /// Certified superficial sequences
    Superficial,
    /// Check one bound on e_2
    Verify {
        /// upper-bound, difference-bound, difference-quotient, lower-bound, parameter-ideal,
        /// cohen-macaulay, maximal-ideal or non-negativity
        theorem: String,
    },
    /// Run a bundled example and compare with its known values
    Example {
        /// 3.2, 3.3, 3.6 or 4.2; `list` prints them
        id: String,
    },
    /// Every task of the input file
    Run,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

#[derive(Args)]
struct Flags {
    /// Task file, `-` for standard input
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the JSON report here, `-` for standard output
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// QQ or GF:p
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, value_enum)]
    order: Option<Order>,
    #[arg(long, global = true)]
    max_n: Option<usize>,
    #[arg(long, global = true)]
    window: Option<usize>,
    #[arg(long, global = true)]
    max_k: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// A, B or both
    #[arg(long, global = true)]
    route: Option<String>,
}

fn parse_field(s: &str) -> Result<CoeffField, String> {
    if s == "QQ" {
        return Ok(CoeffField::Rationals);
    }
    let p = s
        .strip_prefix("GF:")
        .or_else(|| s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
        .ok_or_else(|| format!("unknown field {s:?}, expected QQ or GF:p"))?;
    let p: u64 = p.parse().map_err(|_| format!("bad characteristic {p:?}"))?;
    CoeffField::prime(p).map_err(|e| e.to_string())
}

fn run_flags(f: &Flags) -> Result<RunFlags, String> {
    let mut verify = VerifyOptions::default();
    if let Some(s) = f.seed {
        verify.seed = s;
    }
    if let Some(n) = f.max_n {
        verify.max_n = n;
    }
    if let Some(k) = f.max_k {
        verify.max_k = k;
    }
    if let Some(w) = f.window {
        verify.window = w;
    }
    let route = match &f.route {
        Some(r) => RouteChoice::parse(r).ok_or_else(|| format!("unknown route {r:?}, expected A, B or both"))?,
        None => RouteChoice::A,
    };
    Ok(RunFlags { route, sample_window: f.window, verify })
}

fn read_input(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Tasks of the requested kind from the file, or one per declared target when there are none.
fn select(tf: &TaskFile, kind: TaskKind) -> Result<Vec<TaskDecl>, String> {
    let same = |k: &TaskKind| std::mem::discriminant(k) == std::mem::discriminant(&kind) && (*k == kind || !matches!(kind, TaskKind::Verify(_)));
    let found: Vec<TaskDecl> = tf.tasks.iter().filter(|t| same(&t.kind)).cloned().collect();
    if !found.is_empty() {
        return Ok(found);
    }
    let targets: Vec<TaskTarget> = if kind == TaskKind::Gb {
        tf.ideals.iter().map(|(n, _)| TaskTarget::Ideal(n.clone())).collect()
    } else {
        tf.filtrations.iter().map(|(n, _)| TaskTarget::Filtration(FiltrationExpr::Named(n.clone()))).collect()
    };
    if targets.is_empty() {
        return Err(format!("nothing to run: the input declares no {}", if kind == TaskKind::Gb { "ideal" } else { "filtration" }));
    }
    Ok(targets.into_iter().map(|target| TaskDecl { kind, target, options: Default::default() }).collect())
}

fn write_json(path: &Path, out: &RunOutput) -> Result<(), String> {
    let text = out.to_json();
    if path == Path::new("-") {
        println!("{text}");
        return Ok(());
    }
    let tmp = path.with_extension("json.partial");
    std::fs::write(&tmp, text + "\n").map_err(|e| format!("{}: {e}", tmp.display()))?;
    std::fs::rename(&tmp, path).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: &Cli) -> Result<RunOutput, String> {
    let flags = run_flags(&cli.flags)?;
    let field = cli.flags.field.as_deref().map(parse_field).transpose()?;
    let lex = cli.flags.order.map(|o| matches!(o, Order::Lex));
    if let Command::Example { id } = &cli.command {
        let entry = example(id).ok_or_else(|| {
            let ids: Vec<&str> = EXAMPLES.iter().map(|e| e.id).collect();
            format!("unknown example {id:?}, available: {}", ids.join(", "))
        })?;
        let tf = parse_task_with(entry.task, field, lex).map_err(|e| e.to_string())?;
        return run_example_file(entry, &tf, &flags).map_err(|e| e.to_string());
    }
    let path = cli.flags.input.as_deref().ok_or("--input is required")?;
    let text = read_input(path)?;
    let mut tf = parse_task_with(&text, field, lex).map_err(|e| format!("{}: {e}", path.display()))?;
    let kind = match &cli.command {
        Command::Gb => Some(TaskKind::Gb),
        Command::Hilbert => Some(TaskKind::Hilbert),
        Command::Superficial => Some(TaskKind::Superficial),
        Command::Verify { theorem } => {
            let id = TheoremId::parse(theorem).ok_or_else(|| {
                let names: Vec<&str> = TheoremId::ALL.iter().map(|t| t.name()).collect();
                format!("unknown theorem {theorem:?}, expected one of {}", names.join(", "))
            })?;
            Some(TaskKind::Verify(id))
        }
        Command::Run | Command::Example { .. } => None,
    };
    if let Some(kind) = kind {
        tf.tasks = select(&tf, kind)?;
    }
    run_task_file(&tf, &flags).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if matches!(&cli.command, Command::Example { id } if id == "list") {
        for e in &EXAMPLES {
            println!("{}  {}", e.id, e.description);
        }
        return ExitCode::SUCCESS;
    }
    match run(&cli) {
        Ok(out) => {
            if !matches!(cli.flags.json.as_deref(), Some(p) if p == Path::new("-")) {
                print!("{}", render_human(&out));
            }
            if let Some(p) = &cli.flags.json {
                if let Err(e) = write_json(p, &out) {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
