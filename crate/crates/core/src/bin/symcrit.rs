use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use symcrit::harness::{
    analyze_text, has_sides, parse, parse_plain, random_symmetric_graph, render_text, run_oracle, serialize,
    RandomParams, ReportDocument, TOOL_VERSION,
};
use symcrit::registry::{CheckRegistry, MethodRegistry};

const EXIT_FAIL: u8 = 2;
const EXIT_INPUT: u8 = 1;

#[derive(Parser)]
#[command(
    name = "symcrit",
    about = "Critical groups of graphs with a reflective symmetry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Compute K(G), K(G+), K(G-), the map between them and every applicable check.
    Analyze {
        #[arg(required_unless_present = "list_checks")]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Critical-group method used for the reported groups.
        #[arg(long, default_value = "quotient")]
        method: String,
        /// Run only the named checks (repeatable).
        #[arg(long = "check")]
        checks: Vec<String>,
        /// List the available checks and exit.
        #[arg(long)]
        list_checks: bool,
    },
    /// Compare computed invariants with exhaustive enumeration.
    Oracle {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value = "quotient")]
        method: String,
        /// Largest edge count to enumerate subsets of.
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(0..=40))]
        max_enum: u32,
    },
    /// Print a random symmetric graph.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        left_vertices: usize,
        #[arg(long, default_value_t = 2)]
        fixed_vertices: usize,
        #[arg(long, default_value_t = 5)]
        left_edges: usize,
        #[arg(long, default_value_t = 1)]
        fixed_edges: usize,
        #[arg(long)]
        no_loops: bool,
    },
    Version,
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn analyze(paths: &[PathBuf], format: Format, method: &str, checks: &[String]) -> Result<u8, String> {
    let methods = MethodRegistry::standard();
    let method = methods.get(method).map_err(|e| e.to_string())?;
    let registry = || -> Result<CheckRegistry, String> {
        let reg = CheckRegistry::standard();
        if checks.is_empty() {
            Ok(reg)
        } else {
            reg.select(checks).map_err(|e| e.to_string())
        }
    };
    registry()?;

    let results: Vec<Result<ReportDocument, String>> = std::thread::scope(|s| {
        let handles: Vec<_> = paths
            .iter()
            .map(|path| {
                s.spawn(move || {
                    let text = read(path)?;
                    let reg = registry()?;
                    analyze_text(&path.display().to_string(), &text, &reg, method)
                        .map_err(|e| format!("{}: {e}", path.display()))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("analysis thread"))
            .collect()
    });

    let mut code = 0;
    let mut docs = Vec::new();
    for r in results {
        match r {
            Ok(doc) => {
                if !doc.passed && code == 0 {
                    code = EXIT_FAIL;
                }
                docs.push(doc);
            }
            Err(e) => {
                eprintln!("error: {e}");
                code = EXIT_INPUT;
            }
        }
    }
    match format {
        Format::Text => {
            let blocks: Vec<String> = docs.iter().map(render_text).collect();
            print!("{}", blocks.join("\n"));
        }
        Format::Structured if paths.len() == 1 => {
            if let Some(doc) = docs.first() {
                println!("{}", doc.to_json());
            }
        }
        Format::Structured => {
            println!(
                "{}",
                serde_json::to_string_pretty(&docs).expect("documents serialize")
            );
        }
    }
    Ok(code)
}

fn oracle(path: &PathBuf, format: Format, method: &str, max_enum: u32) -> Result<u8, String> {
    let methods = MethodRegistry::standard();
    let method = methods.get(method).map_err(|e| e.to_string())?;
    let text = read(path)?;
    let at = |e: &dyn std::fmt::Display| format!("{}: {e}", path.display());
    let symmetric = if has_sides(&text).map_err(|e| at(&e))? {
        Some(parse(&text).map_err(|e| at(&e))?)
    } else {
        None
    };
    let plain = parse_plain(&text).map_err(|e| at(&e))?;
    let graph = symmetric.as_ref().map_or(&plain, |g| g.graph());
    let report = run_oracle(graph, symmetric.as_ref(), method, 1u64 << max_enum).map_err(|e| at(&e))?;
    match format {
        Format::Text => {
            for c in &report.checks {
                let status = match (c.applies, c.agrees) {
                    (_, true) => "agree",
                    (true, false) => "DIFFER",
                    (false, false) => "differ (not expected to hold)",
                };
                println!("{:<14} {} | {} : {status}", c.name, c.computed, c.enumerated);
            }
            println!("result: {}", if report.passed() { "pass" } else { "fail" });
        }
        Format::Structured => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("oracle reports serialize")
            );
        }
    }
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    // Usage errors share the input-error code; 2 is reserved for failed checks.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Analyze {
            list_checks: true, ..
        } => {
            let reg = CheckRegistry::standard();
            for name in reg.names() {
                let c = reg.get(name).expect("listed");
                println!("{name:<24} {}", c.description());
            }
            Ok(0)
        }
        Command::Analyze {
            paths,
            format,
            method,
            checks,
            ..
        } => analyze(&paths, format, &method, &checks),
        Command::Oracle {
            path,
            format,
            method,
            max_enum,
        } => oracle(&path, format, &method, max_enum),
        Command::Random {
            seed,
            left_vertices,
            fixed_vertices,
            left_edges,
            fixed_edges,
            no_loops,
        } => {
            let p = RandomParams {
                left_vertices,
                fixed_vertices,
                left_edges,
                fixed_edges,
                allow_loops: !no_loops,
            };
            random_symmetric_graph(seed, &p)
                .map(|g| {
                    print!("{}", serialize(&g));
                    0
                })
                .map_err(|e| e.to_string())
        }
        Command::Version => {
            println!("symcrit {TOOL_VERSION}");
            Ok(0)
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
