//! `pasting`: command-line front end to the pasting-scheme engine.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation failure, 3 a check
//! failed, 4 a check stayed undecided after the budget retry.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use pasting_core::glue::{build_glued, GlueError};
use pasting_core::orders::{connect_orders, enumerate_orders, face_relations};
use pasting_core::terms::{eval_order, gamma_word, DEFAULT_BUDGET};
use pasting_core::verify::{run_checks, VerifyError, CHECK_NAMES};
use pasting_core::{CompOrder, FaceId, Labelling, PastingScheme, RawScheme};

#[derive(Parser)]
#[command(name = "pasting", version, about = "Pasting schemes, composition orders and Gray-category coherence checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scheme file and list every violation.
    Validate { file: PathBuf },
    /// Print every composition order, one per line.
    Orders { file: PathBuf },
    /// Print the composite 2-cell of a labelling along an order.
    Compose {
        file: PathBuf,
        #[arg(long)]
        order: String,
    },
    /// Print the interchanger word between two orders.
    Gamma {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Glue two faces and print the resulting scheme.
    Glue {
        file: PathBuf,
        #[arg(long)]
        faces: String,
    },
    /// Run the coherence checks on a labelling.
    Verify {
        file: PathBuf,
        #[arg(long)]
        check: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the scheme as a DOT digraph with face annotations.
    EmitDot { file: PathBuf },
}

/// A failed invocation: exit code and message for standard error.
struct Failure(u8, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure(1, msg.into())
    }

    fn invalid(msg: impl Into<String>) -> Self {
        Failure(2, msg.into())
    }
}

impl From<GlueError> for Failure {
    fn from(e: GlueError) -> Self {
        Failure::invalid(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read `{}`: {e}", path.display())))
}

/// Whether a JSON document is a labelling (it names its scheme).
fn is_labelling(text: &str) -> bool {
    matches!(serde_json::from_str::<serde_json::Value>(text), Ok(serde_json::Value::Object(m)) if m.contains_key("scheme"))
}

fn load_labelling(path: &Path) -> Result<Labelling, Failure> {
    let text = read(path)?;
    Labelling::from_json(&text, path.parent()).map_err(|e| Failure::invalid(e.to_string()))
}

/// A scheme file, or the scheme underlying a labelling file.
fn load_scheme(path: &Path) -> Result<PastingScheme, Failure> {
    let text = read(path)?;
    if is_labelling(&text) {
        return Ok(load_labelling(path)?.scheme);
    }
    PastingScheme::from_json(&text).map_err(|e| Failure::invalid(e.to_string()))
}

fn parse_order(lab: &Labelling, text: &str) -> Result<CompOrder, Failure> {
    let o = CompOrder::parse(text);
    o.check(&lab.scheme, &face_relations(&lab.scheme))
        .map_err(|e| Failure::invalid(e.to_string()))?;
    Ok(o)
}

fn validate(file: &Path) -> Result<String, Failure> {
    let text = read(file)?;
    let raw = RawScheme::from_json(&text).map_err(|e| Failure::invalid(format!("Parse: {e}")))?;
    match PastingScheme::validate(&raw) {
        Ok(s) => Ok(format!(
            "valid: {} vertices, {} edges, {} faces\n",
            s.vertices().len(),
            s.edges().len(),
            s.faces().len()
        )),
        Err(errs) => {
            let mut out = String::new();
            for e in errs {
                writeln!(out, "{e}").unwrap();
            }
            Err(Failure(2, out))
        }
    }
}

fn dot(s: &PastingScheme) -> String {
    let q = |x: &str| format!("\"{}\"", x.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::from("digraph scheme {\n  rankdir=LR;\n  node [shape=circle];\n");
    for v in s.vertices() {
        writeln!(out, "  {};", q(v.as_str())).unwrap();
    }
    for e in s.edges().values() {
        writeln!(out, "  {} -> {} [label={}];", q(e.src.as_str()), q(e.tgt.as_str()), q(e.id.as_str())).unwrap();
    }
    for (k, f) in s.faces().values().enumerate() {
        let node = q(&format!("face:{}", f.id));
        let note = format!(
            "{}: {} => {}",
            f.id,
            pasting_core::ids::join_ids(&f.top),
            pasting_core::ids::join_ids(&f.bottom)
        );
        writeln!(out, "  subgraph cluster_{k} {{").unwrap();
        writeln!(out, "    label={};", q(f.id.as_str())).unwrap();
        writeln!(out, "    style=dashed;").unwrap();
        writeln!(out, "    {node} [shape=plaintext, label={}];", q(&note)).unwrap();
        writeln!(out, "  }}").unwrap();
        writeln!(out, "  {} -> {node} [style=invis];", q(f.src.as_str())).unwrap();
        writeln!(out, "  {node} -> {} [style=invis];", q(f.tgt.as_str())).unwrap();
    }
    out.push_str("}\n");
    out
}

fn verify(file: &Path, check: Option<&str>, budget: usize, seed: u64) -> Result<String, Failure> {
    if let Some(name) = check {
        if !CHECK_NAMES.contains(&name) {
            return Err(Failure::usage(format!(
                "unknown check `{name}`; expected one of {}",
                CHECK_NAMES.join(", ")
            )));
        }
    }
    let lab = load_labelling(file)?;
    let t0 = Instant::now();
    let reports = run_checks(&lab, check, budget, seed).map_err(|e| match e {
        VerifyError::Glue(g) => Failure::from(g),
        other => Failure::invalid(other.to_string()),
    })?;
    let mut out = String::new();
    for r in &reports {
        out.push_str(&r.json_lines());
    }
    for r in &reports {
        writeln!(out, "{}", r.summary()).unwrap();
        eprintln!("{}: {:.3}s", r.check, r.elapsed.as_secs_f64());
    }
    eprintln!("total: {:.3}s", t0.elapsed().as_secs_f64());
    let failed: usize = reports.iter().map(|r| r.failed()).sum();
    let unknown: usize = reports.iter().map(|r| r.unknown()).sum();
    if failed > 0 {
        return Err(Failure(3, out));
    }
    if unknown > 0 {
        return Err(Failure(4, out));
    }
    Ok(out)
}

fn run(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Validate { file } => validate(&file),
        Command::Orders { file } => {
            let s = load_scheme(&file)?;
            Ok(enumerate_orders(&s).iter().map(|o| format!("{o}\n")).collect())
        }
        Command::Compose { file, order } => {
            let lab = load_labelling(&file)?;
            let o = parse_order(&lab, &order)?;
            let w = eval_order(&lab, &o).map_err(|e| Failure::invalid(e.to_string()))?;
            Ok(format!("{w}\n"))
        }
        Command::Gamma { file, from, to } => {
            let lab = load_labelling(&file)?;
            let a = parse_order(&lab, &from)?;
            let b = parse_order(&lab, &to)?;
            let path = connect_orders(&lab.scheme, &a, &b).map_err(|e| Failure::invalid(e.to_string()))?;
            let mw = gamma_word(&lab, &a, &path).map_err(|e| Failure::invalid(e.to_string()))?;
            Ok(mw.moves.iter().map(|m| format!("{m}\n")).collect())
        }
        Command::Glue { file, faces } => {
            let s = load_scheme(&file)?;
            let ids: Vec<&str> = faces.split(',').map(str::trim).collect();
            let [f, g] = ids.as_slice() else {
                return Err(Failure::usage("--faces takes exactly two face ids, `F,G`"));
            };
            let glued = build_glued(&s, &FaceId::new(*f), &FaceId::new(*g))?;
            Ok(format!("{}\n", glued.glued.to_raw().to_json_pretty()))
        }
        Command::Verify {
            file,
            check,
            budget,
            seed,
        } => verify(&file, check.as_deref(), budget, seed),
        Command::EmitDot { file } => Ok(dot(&load_scheme(&file)?)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure(code, msg)) => {
            // usage problems go to stderr; validation errors and check
            // reports are results and go to stdout
            let msg = if msg.ends_with('\n') { msg } else { format!("{msg}\n") };
            if code == 1 {
                eprint!("{msg}");
            } else {
                print!("{msg}");
            }
            ExitCode::from(code)
        }
    }
}
