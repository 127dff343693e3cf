use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use mwis_core::dimacs::{emit_dimacs, parse_dimacs};
use mwis_core::generator::{even_classes, generate, Family, GenSpec};
use mwis_core::oracle::{oracle_mwis, verify_cover, OracleBudget};
use mwis_core::recognition::{check_class, ForbiddenWitness};
use mwis_core::{
    solve_with, GenerateError, SolveError, SolveOptions, SolveResult, VertexSet, Weight,
    WeightedGraph,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_CLASS: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "mwis",
    version,
    about = "Exact MWIS for (S1,2,4, triangle)-free graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file (`-` reads stdin) and print JSON.
    Solve {
        file: PathBuf,
        /// Run the full recognizer before solving.
        #[arg(long)]
        check_class: bool,
    },
    /// Report whether the graph avoids triangles and induced S1,2,4.
    CheckClass { file: PathBuf },
    /// Write a generated instance.
    Gen(GenArgs),
    /// Differential test against the exponential oracle.
    Fuzz(FuzzArgs),
    /// Time the solver on C5 blow-ups.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [20, 40, 60])]
        sizes: Vec<usize>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Inclusive weight range `LO:HI`.
    #[arg(long, value_parser = parse_range, default_value = "1:1")]
    weights: (Weight, Weight),
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Class sizes for c5-blowup, e.g. `2,1,1,1,1`.
    #[arg(long, value_parser = parse_classes)]
    classes: Option<[usize; 5]>,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 14)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also check that the recorded leaves cover every maximal independent set.
    #[arg(long)]
    cover: bool,
    /// Where failing instances are written.
    #[arg(long, default_value = ".")]
    dump_dir: PathBuf,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| {
        let names: Vec<_> = Family::ALL.iter().map(|f| f.as_str()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_classes(s: &str) -> Result<[usize; 5], String> {
    let sizes: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|e| format!("{e}")))
        .collect::<Result<_, _>>()?;
    sizes
        .try_into()
        .map_err(|_| "expected five sizes".to_string())
}

fn parse_range(s: &str) -> Result<(Weight, Weight), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo = lo.parse().map_err(|e| format!("{e}"))?;
    let hi = hi.parse().map_err(|e| format!("{e}"))?;
    Ok((lo, hi))
}

#[derive(Serialize)]
struct WitnessJson {
    kind: &'static str,
    vertices: Vec<usize>,
}

impl From<&ForbiddenWitness> for WitnessJson {
    fn from(w: &ForbiddenWitness) -> Self {
        WitnessJson {
            kind: match w.kind {
                mwis_core::recognition::PatternKind::Triangle => "triangle",
                mwis_core::recognition::PatternKind::C5 => "c5",
                mwis_core::recognition::PatternKind::S124 => "s124",
            },
            vertices: w.vertices.iter().map(|v| v + 1).collect(),
        }
    }
}

#[derive(Serialize)]
struct MetricsJson {
    subproblems: u64,
    max_depth: usize,
    case_hits: BTreeMap<&'static str, u64>,
}

#[derive(Serialize)]
struct SolveJson {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<Weight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    leaves_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    metrics: Option<MetricsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

impl SolveJson {
    fn solved(r: &SolveResult) -> Self {
        SolveJson {
            status: "ok",
            weight: Some(r.weight),
            solution: Some(one_indexed(&r.solution)),
            leaves_count: Some(r.leaves.len()),
            metrics: Some(MetricsJson {
                subproblems: r.metrics.subproblems,
                max_depth: r.metrics.max_depth,
                case_hits: r
                    .metrics
                    .case_hits
                    .iter()
                    .map(|(k, &v)| (k.as_str(), v))
                    .collect(),
            }),
            fact: None,
            witness: None,
        }
    }

    fn violation(fact: &str, w: &ForbiddenWitness) -> Self {
        SolveJson {
            status: "class-violation",
            weight: None,
            solution: None,
            leaves_count: None,
            metrics: None,
            fact: Some(fact.to_string()),
            witness: Some(w.into()),
        }
    }
}

fn one_indexed(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("plain data serializes")
    );
}

/// Error already reported on stderr, carrying the exit code.
struct Fail(u8);

fn io_fail(what: impl std::fmt::Display) -> Fail {
    eprintln!("error: {what}");
    Fail(EXIT_IO)
}

fn read_graph(path: &Path) -> Result<WeightedGraph, Fail> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_fail)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| io_fail(format!("{}: {e}", path.display())))?
    };
    parse_dimacs(&text).map_err(|e| io_fail(format!("{}: {e}", path.display())))
}

fn cmd_solve(file: &Path, check: bool) -> Result<(), Fail> {
    let g = read_graph(file)?;
    if check {
        if let Err(w) = check_class(&g) {
            print_json(&SolveJson::violation("recognizer", &w));
            return Err(Fail(EXIT_CLASS));
        }
    }
    let opts = SolveOptions {
        record_leaves: true,
        depth_limit: None,
    };
    match solve_with(&g, opts) {
        Ok(r) => {
            print_json(&SolveJson::solved(&r));
            Ok(())
        }
        Err(SolveError::ClassViolation { fact, witness }) => {
            print_json(&SolveJson::violation(fact, &witness));
            Err(Fail(EXIT_CLASS))
        }
        Err(e @ SolveError::ContextViolation { .. }) => {
            eprintln!("error: {e}");
            Err(Fail(EXIT_INTERNAL))
        }
    }
}

#[derive(Serialize)]
struct ClassJson {
    in_class: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

fn cmd_check_class(file: &Path) -> Result<(), Fail> {
    let g = read_graph(file)?;
    match check_class(&g) {
        Ok(()) => {
            print_json(&ClassJson {
                in_class: true,
                witness: None,
            });
            Ok(())
        }
        Err(w) => {
            print_json(&ClassJson {
                in_class: false,
                witness: Some((&w).into()),
            });
            Err(Fail(EXIT_CLASS))
        }
    }
}

fn cmd_gen(a: &GenArgs) -> Result<(), Fail> {
    let mut spec = GenSpec::new(a.family, a.n, a.seed)
        .density(a.density)
        .weights(a.weights.0, a.weights.1);
    if let Some(sizes) = a.classes {
        spec = spec.classes(sizes);
    }
    let generated = generate(&spec).map_err(io_fail)?;
    let mut text = format!(
        "c {} n={} seed={} in_class={}\n",
        a.family.as_str(),
        generated.graph.n(),
        a.seed,
        generated.in_class()
    );
    text.push_str(&emit_dimacs(&generated.graph));
    match &a.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| io_fail(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct FuzzJson {
    instances: usize,
    mismatches: usize,
    case_hits: BTreeMap<&'static str, u64>,
}

fn cmd_fuzz(a: &FuzzArgs) -> Result<(), Fail> {
    let limit = OracleBudget::default().max_vertices;
    if a.max_n < 4 || a.max_n > limit {
        return Err(io_fail(format!("--max-n must lie in 4..={limit}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut hits: BTreeMap<&'static str, u64> = BTreeMap::new();
    for i in 0..a.count {
        let n = rng.gen_range(4..=a.max_n);
        let density = rng.gen_range(0.15..0.5);
        let mut spec = GenSpec::new(Family::RandomTriangleFree, n, rng.gen())
            .density(density)
            .weights(0, 100);
        let g = loop {
            match generate(&spec) {
                Ok(generated) => break generated.graph,
                // dense samples rarely avoid S1,2,4; back off
                Err(GenerateError::RetryCapExhausted(_)) => spec.edge_density *= 0.8,
                Err(e) => return Err(io_fail(e)),
            }
        };
        let expected = oracle_mwis(&g, &g.vertices(), OracleBudget::default())
            .map_err(io_fail)?
            .0;
        let opts = SolveOptions {
            record_leaves: a.cover,
            depth_limit: None,
        };
        let problem = match solve_with(&g, opts) {
            Ok(r) if r.weight != expected => Some(format!("solver {} oracle {expected}", r.weight)),
            Ok(r) => {
                for (k, v) in &r.metrics.case_hits {
                    *hits.entry(k.as_str()).or_default() += v;
                }
                if a.cover {
                    verify_cover(&g, &r.leaves).err().map(|c| format!("{c:?}"))
                } else {
                    None
                }
            }
            Err(e) => Some(e.to_string()),
        };
        if let Some(problem) = problem {
            let path = a.dump_dir.join(format!("fuzz-{}-{i}.dimacs", a.seed));
            fs::write(&path, emit_dimacs(&g))
                .map_err(|e| io_fail(format!("{}: {e}", path.display())))?;
            eprintln!("instance {i}: {problem}; written to {}", path.display());
            print_json(&FuzzJson {
                instances: i + 1,
                mismatches: 1,
                case_hits: hits,
            });
            return Err(Fail(EXIT_MISMATCH));
        }
    }
    print_json(&FuzzJson {
        instances: a.count,
        mismatches: 0,
        case_hits: hits,
    });
    Ok(())
}

fn cmd_bench(sizes: &[usize]) -> Result<(), Fail> {
    println!(
        "{:>5} {:>6} {:>6} {:>8} {:>12} {:>6} {:>10}",
        "n", "m", "alpha", "expected", "subproblems", "depth", "ms"
    );
    for &n in sizes {
        let spec = GenSpec::new(Family::C5Blowup, n, 0);
        let g = generate(&spec).map_err(io_fail)?.graph;
        let sizes = even_classes(n);
        let expected = (0..5)
            .map(|i| sizes[i] + sizes[(i + 2) % 5])
            .max()
            .unwrap_or(0);
        let start = Instant::now();
        let r = solve_with(&g, SolveOptions::default()).map_err(|e| {
            eprintln!("error: {e}");
            Fail(EXIT_INTERNAL)
        })?;
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        println!(
            "{:>5} {:>6} {:>6} {:>8} {:>12} {:>6} {:>10.2}",
            n,
            g.m(),
            r.weight,
            expected,
            r.metrics.subproblems,
            r.metrics.max_depth,
            ms
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve { file, check_class } => cmd_solve(file, *check_class),
        Command::CheckClass { file } => cmd_check_class(file),
        Command::Gen(a) => cmd_gen(a),
        Command::Fuzz(a) => cmd_fuzz(a),
        Command::Bench { sizes } => cmd_bench(sizes),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code)) => ExitCode::from(code),
    }
}
