//! Command-line front end for the gspmixdom solver.
//!
//! Exit codes: 0 success, 1 bad input (parse, validation, IO), 2 instance
//! too large for the brute-force oracle, 3 graph not reducible to an
//! expression for the given terminals.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use gspmixdom::oracle;
use gspmixdom::{
    decompose, format_expr, generate, parse_expr, realize, solve, solve_value, DecomposeError,
    Element, GenWeights, Multigraph, ParseTree, Solution, VertexId,
};

#[derive(Parser)]
#[command(name = "gspmixdom", version, about = "Mixed domination on generalized series-parallel graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the minimum mixed dominating set of an expression file.
    Solve {
        /// Expression file (.gsp).
        path: PathBuf,
        /// Print the full result as one JSON object.
        #[arg(long)]
        json: bool,
        /// Also print the number of minimum sets.
        #[arg(long)]
        count: bool,
        /// Also print one minimum set.
        #[arg(long)]
        witness: bool,
    },
    /// Solve a small instance by brute force (.gsp or edge-list file).
    Oracle {
        path: PathBuf,
        /// Accept instances beyond the default size guard.
        #[arg(long)]
        force: bool,
        /// Also print the minimum set found.
        #[arg(long)]
        witness: bool,
    },
    /// Test whether a set is mixed dominating (.gsp or edge-list file).
    Check {
        path: PathBuf,
        /// The set: comma-separated v:NAME and e:INDEX items, e.g. "v:a,e:0".
        #[arg(long)]
        set: String,
    },
    /// Print a pseudorandom expression.
    Gen {
        /// Number of leaf edges.
        #[arg(long)]
        leaves: usize,
        /// Defaults to $GSPMIXDOM_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Relative odds of series,parallel,gseries nodes [default: 1,1,1].
        #[arg(long)]
        weights: Option<String>,
    },
    /// Recover an expression from an edge-list file, if one exists.
    Decompose {
        path: PathBuf,
        /// Terminal pair, e.g. "a,c".
        #[arg(long)]
        terminals: String,
    },
    /// Time the solver across instance sizes.
    Bench {
        /// Comma-separated leaf counts.
        #[arg(long)]
        sizes: String,
        /// Defaults to $GSPMIXDOM_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Failure {
        Failure::new(1, message)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: &Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Solve { path, json, count, witness } => cmd_solve(path, *json, *count, *witness),
        Cmd::Oracle { path, force, witness } => cmd_oracle(path, *force, *witness),
        Cmd::Check { path, set } => cmd_check(path, set),
        Cmd::Gen { leaves, seed, weights } => cmd_gen(*leaves, *seed, weights.as_deref()),
        Cmd::Decompose { path, terminals } => cmd_decompose(path, terminals),
        Cmd::Bench { sizes, seed } => cmd_bench(sizes, *seed),
    }
}

fn cmd_solve(path: &Path, json: bool, count: bool, witness: bool) -> Result<(), Failure> {
    let tree = read_tree(path)?;
    let sol = solve(&tree);
    if json {
        println!("{}", solution_json(&sol));
        return Ok(());
    }
    println!("gamma_m {}", sol.gamma_m);
    if count {
        println!("count {}", sol.count);
    }
    if witness {
        println!("witness {}", set_items(&sol.witness));
    }
    Ok(())
}

fn cmd_oracle(path: &Path, force: bool, witness: bool) -> Result<(), Failure> {
    let g = read_graph(path)?;
    let sol = oracle::brute_force(&g, force).map_err(|e| {
        let code = match e {
            oracle::OracleError::SizeLimitExceeded { .. } => 2,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    })?;
    println!("gamma_m {}", sol.gamma_m);
    println!("count {}", sol.count);
    if witness {
        println!("witness {}", set_items(&sol.witness));
    }
    Ok(())
}

fn cmd_check(path: &Path, spec: &str) -> Result<(), Failure> {
    let g = read_graph(path)?;
    let set = parse_set(&g, spec)?;
    let miss = oracle::first_undominated(&g, &set).map_err(|e| Failure::input(e.to_string()))?;
    match miss {
        None => println!("true"),
        Some(Element::Vertex(v)) => println!("false v:{v}"),
        Some(Element::Edge(e)) => println!("false e:{}", e.index),
    }
    Ok(())
}

fn cmd_gen(leaves: usize, seed: Option<u64>, weights: Option<&str>) -> Result<(), Failure> {
    let seed = resolve_seed(seed)?;
    let weights = weights.map(parse_weights).transpose()?.unwrap_or_default();
    let tree = generate(seed, leaves, &weights).map_err(|e| Failure::input(e.to_string()))?;
    println!("{}", format_expr(&tree));
    Ok(())
}

fn cmd_decompose(path: &Path, terminals: &str) -> Result<(), Failure> {
    let g = read_graph(path)?;
    let Some((s, t)) = terminals.split_once(',') else {
        return Err(Failure::input(format!("--terminals wants two names like \"a,c\", got {terminals:?}")));
    };
    let tree = decompose(&g, s.trim(), t.trim()).map_err(|e| {
        let code = if matches!(e, DecomposeError::NotReducible) { 3 } else { 1 };
        Failure::new(code, e.to_string())
    })?;
    println!("{}", format_expr(&tree));
    Ok(())
}

fn cmd_bench(sizes: &str, seed: Option<u64>) -> Result<(), Failure> {
    let seed = resolve_seed(seed)?;
    let sizes = parse_sizes(sizes)?;
    let weights = GenWeights::default();
    let mut prev = None;
    for &leaves in &sizes {
        let tree = generate(seed, leaves, &weights).map_err(|e| Failure::input(e.to_string()))?;
        let start = Instant::now();
        let (gamma_m, _) = solve_value(&tree);
        let wall = start.elapsed().as_secs_f64();
        let per_leaf_us = wall * 1e6 / leaves as f64;
        let mut line =
            format!("leaves={leaves} wall_s={wall:.3} per_leaf_us={per_leaf_us:.3} gamma_m={gamma_m}");
        if let Some(p) = prev {
            line.push_str(&format!(" ratio={:.2}", wall / p));
        }
        println!("{line}");
        prev = Some(wall);
    }
    Ok(())
}

fn read_to_string(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_tree(path: &Path) -> Result<ParseTree, Failure> {
    let text = read_to_string(path)?;
    parse_expr(&text).map_err(|d| {
        Failure::input(format!("{}:{}:{}: {}", path.display(), d.line, d.column, d.message))
    })
}

/// `.gsp` files hold expressions; anything else is an edge list.
fn read_graph(path: &Path) -> Result<Multigraph, Failure> {
    if path.extension().is_some_and(|e| e == "gsp") {
        Ok(realize(&read_tree(path)?))
    } else {
        let text = read_to_string(path)?;
        Multigraph::parse_edge_list(&text)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("GSPMIXDOM_SEED") {
        Ok(text) => text.trim().parse().map_err(|_| {
            Failure::input(format!("GSPMIXDOM_SEED is not an unsigned integer: {text:?}"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(Failure::input("GSPMIXDOM_SEED is not valid UTF-8"))
        }
    }
}

fn parse_weights(text: &str) -> Result<GenWeights, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    let [s, p, g] = parts[..] else {
        return Err(Failure::input(format!(
            "--weights wants three comma-separated numbers, got {text:?}"
        )));
    };
    let num = |t: &str| {
        t.trim().parse::<f64>().map_err(|_| Failure::input(format!("bad weight {t:?}")))
    };
    Ok(GenWeights { series: num(s)?, parallel: num(p)?, gseries: num(g)? })
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure::input(format!("bad size {t:?}"))))
        .collect()
}

fn parse_set(g: &Multigraph, spec: &str) -> Result<Vec<Element>, Failure> {
    let mut set = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let element = if let Some(name) = item.strip_prefix("v:") {
            match VertexId::new(name) {
                Some(v) if g.has_vertex(name) => Element::Vertex(v),
                _ => return Err(Failure::input(format!("unknown vertex {name:?}"))),
            }
        } else if let Some(digits) = item.strip_prefix("e:") {
            let index: usize =
                digits.parse().map_err(|_| Failure::input(format!("bad edge index {digits:?}")))?;
            let id = g
                .edge_id(index)
                .ok_or_else(|| Failure::input(format!("no edge with index {index}")))?;
            Element::Edge(id)
        } else {
            return Err(Failure::input(format!(
                "set items look like v:NAME or e:INDEX, got {item:?}"
            )));
        };
        set.push(element);
    }
    Ok(set)
}

/// The `--set` notation, reused for printing witnesses.
fn set_items(elements: &[Element]) -> String {
    let items: Vec<String> = elements
        .iter()
        .map(|el| match el {
            Element::Vertex(v) => format!("v:{v}"),
            Element::Edge(e) => format!("e:{}", e.index),
        })
        .collect();
    items.join(",")
}

fn solution_json(sol: &Solution) -> serde_json::Value {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for el in &sol.witness {
        match el {
            Element::Vertex(v) => vertices.push(serde_json::Value::from(v.as_str())),
            Element::Edge(e) => edges.push(serde_json::json!({
                "index": e.index,
                "u": e.u.as_str(),
                "v": e.v.as_str(),
            })),
        }
    }
    serde_json::json!({
        "gamma_m": sol.gamma_m,
        "count": sol.count.to_string(),
        "witness": { "vertices": vertices, "edges": edges },
    })
}
