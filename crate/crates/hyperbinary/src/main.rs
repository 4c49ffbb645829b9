use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hyperbinary::dot::to_dot;
use hyperbinary::expansion::{count_expansions, enumerate_expansions, stern, CountTable, LengthClass};
use hyperbinary::graph::{build_graph, classify};
use hyperbinary::verify::{default_range, proposition_ids, verify, VerifyConfig};

#[derive(Parser)]
#[command(name = "hyperbinary", version, about = "Hyperbinary expansion graphs A(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum SequenceKind {
    B,
    Stern,
}

#[derive(Subcommand)]
enum Command {
    /// List H(n) in shortlex order with weight, length class, indices and block count
    Expand { n: u64 },
    /// Emit A(n), by default as Graphviz DOT
    Graph {
        n: u64,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Classify one integer or a range: b(n), cyclomatic number, tree form, π₁
    Classify {
        n: Option<u64>,
        #[arg(long, value_parser = parse_range)]
        range: Option<(u64, u64)>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run proposition checks; exits 0 iff every report passes
    Verify {
        /// Proposition ids, or "all"
        #[arg(required = true)]
        ids: Vec<String>,
        #[arg(long, value_parser = parse_range)]
        range: Option<(u64, u64)>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5000)]
        oracle_bound: u64,
    },
    /// Print n, value pairs of b(n) or Stern's s(n) up to an upper bound
    Sequence {
        #[arg(value_enum)]
        kind: SequenceKind,
        upper: u64,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s}"))?;
    let lo: u64 = a.parse().map_err(|_| format!("bad lower bound {a}"))?;
    let hi: u64 = b.parse().map_err(|_| format!("bad upper bound {b}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Expand { n } => cmd_expand(n),
        Command::Graph { n, format } => cmd_graph(n, format),
        Command::Classify { n, range, format } => cmd_classify(n, range, format),
        Command::Verify {
            ids,
            range,
            seed,
            oracle_bound,
        } => cmd_verify(&ids, range, seed, oracle_bound),
        Command::Sequence { kind, upper } => cmd_sequence(kind, upper),
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn cmd_expand(n: u64) -> ExitCode {
    if n == 0 {
        return usage_error("n must be positive");
    }
    let expansions = match enumerate_expansions(n) {
        Ok(h) => h,
        Err(e) => return usage_error(&e.to_string()),
    };
    for e in expansions {
        let (i, j) = e.distance_indices();
        let class = match e.length_class() {
            Ok(LengthClass::Long) => "long",
            Ok(LengthClass::Short) => "short",
            Err(err) => {
                eprintln!("error: {err}");
                return ExitCode::from(EXIT_VERIFY_FAILED);
            }
        };
        println!(
            "{e} weight={} class={class} i={i} j={j} blocks={}",
            e.weight(),
            e.blocks_of_twos()
        );
    }
    ExitCode::SUCCESS
}

fn cmd_graph(n: u64, format: Format) -> ExitCode {
    if n == 0 {
        return usage_error("n must be positive");
    }
    let g = match build_graph(n) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VERIFY_FAILED);
        }
    };
    match format {
        Format::Dot => print!("{}", to_dot(&g)),
        Format::Text => {
            println!("A({n}): {} nodes, {} arcs", g.nodes.len(), g.arcs.len());
            println!("root {}  sink {}", g.nodes[g.root], g.nodes[g.sink]);
            for a in &g.arcs {
                println!("{} {} {}", g.nodes[a.source], a.color.arrow(), g.nodes[a.target]);
            }
        }
        Format::Machine => {
            println!("n={n} nodes={} arcs={}", g.nodes.len(), g.arcs.len());
            for a in &g.arcs {
                println!(
                    "arc source={} target={} color={}",
                    g.nodes[a.source],
                    g.nodes[a.target],
                    a.color.token()
                );
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_classify(n: Option<u64>, range: Option<(u64, u64)>, format: Format) -> ExitCode {
    let (lo, hi) = match (n, range) {
        (Some(n), None) => (n, n),
        (None, Some(r)) => r,
        _ => return usage_error("pass either a single n or --range A..B"),
    };
    if lo == 0 {
        return usage_error("n must be positive");
    }
    for m in lo..=hi {
        let c = match classify(m) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_VERIFY_FAILED);
            }
        };
        let cyclo = c
            .cyclomatic
            .map(|v| v.to_string())
            .unwrap_or_else(|| "?".into());
        let pi1 = c
            .pi1
            .map(|p| p.to_string())
            .unwrap_or_else(|| "?".into());
        let params = c
            .tree_params
            .map(|p| p.to_string())
            .unwrap_or_else(|| "-".into());
        match format {
            Format::Machine => println!(
                "n={} b={} cyclomatic={} tree={} params={} in_t={} pi1={} structural={}",
                c.n,
                c.b,
                cyclo,
                c.is_tree,
                params.replace(' ', ""),
                c.in_t,
                pi1.replace(' ', ""),
                c.structural
            ),
            _ => {
                let mut line = format!("n={}: b={}, cyclomatic={}", c.n, c.b, cyclo);
                if c.is_tree {
                    line.push_str(&format!(", tree {params}"));
                }
                if c.in_t {
                    line.push_str(", in T");
                }
                line.push_str(&format!(", π₁ = {pi1}"));
                if !c.structural {
                    line.push_str(" (unverified structurally)");
                }
                println!("{line}");
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(
    ids: &[String],
    range: Option<(u64, u64)>,
    seed: u64,
    oracle_bound: u64,
) -> ExitCode {
    let cfg = VerifyConfig {
        oracle_bound,
        seed,
        ..VerifyConfig::default()
    };
    let selected: Vec<String> = if ids.len() == 1 && ids[0] == "all" {
        proposition_ids().iter().map(|s| s.to_string()).collect()
    } else {
        let known = proposition_ids();
        for id in ids {
            if !known.contains(&id.as_str()) {
                return usage_error(&format!("unknown proposition id: {id}"));
            }
        }
        ids.to_vec()
    };

    let mut all_pass = true;
    for id in &selected {
        let r = range.map(Ok).unwrap_or_else(|| default_range(id))
            .expect("id validated above");
        let report = match verify(id, r, cfg) {
            Ok(rep) => rep,
            Err(e) => return usage_error(&e.to_string()),
        };
        println!("{report}");
        eprintln!("# {} elapsed_ms={}", report.id, report.elapsed.as_millis());
        all_pass &= report.pass;
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    }
}

fn cmd_sequence(kind: SequenceKind, upper: u64) -> ExitCode {
    let mut table = CountTable::new();
    for n in 0..=upper {
        let v = match kind {
            SequenceKind::B => count_expansions(n, &mut table),
            SequenceKind::Stern => stern(n),
        };
        println!("{n} {v}");
    }
    ExitCode::SUCCESS
}
