//! `fga`: flow-graph arithmetic from the command line.
//!
//! Exit status: 0 for success or a true predicate, 1 for a false
//! predicate (or a law report that differs from expectation), 2 for errors.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fga_core::explorer::report::reports_to_json;
use fga_core::order::{StPart, StrongWitness, WeakWitness};
use fga_core::par::with_jobs;
use fga_core::{
    are_isomorphic, canonical_decomposition, catalog, check_law_with, enumerate_flow_graphs,
    factorization_experiment, find_law, is_left_prime, is_prime, is_st_flow_graph, is_s_standard, is_t_standard,
    left_divide, nat, parse_fg, plus, right_divide, run_catalog, scalar_multiple, scalar_power, split_at,
    splitting_edges, splitting_vertices, st_core, strong_leq, times, to_dot, weak_leq, write_fg, Class, Exec,
    FlowGraph, LawReport, Limits, RunOptions, UniverseSpec, VertexMap,
};

#[derive(Parser, Debug)]
#[command(name = "fga", version, about = "Arithmetic on flow graphs")]
struct Cli {
    /// Worker threads for `laws` and `enumerate` (output does not depend on it).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Node budget for embedding and path searches (overrides FGA_BUDGET_NODES).
    #[arg(long, global = true, value_name = "NODES", value_parser = clap::value_parser!(u64).range(1..))]
    node_budget: Option<u64>,

    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Out {
    /// Write the result here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// The path F_N with N edges.
    Nat {
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// A ⊕ B.
    Add {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// A ⊗ B.
    Mul {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// K·A = A ⊕ … ⊕ A.
    Smul {
        k: usize,
        a: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// A^K = A ⊗ … ⊗ A.
    Pow {
        a: PathBuf,
        k: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Exit 0 if A ≅ B, 1 otherwise.
    Iso { a: PathBuf, b: PathBuf },
    /// Class, st-property, standardness and splitting structure.
    Classify { a: PathBuf },
    /// The st-core of A.
    Core {
        a: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Canonical ⊕-decomposition; with --out-dir writes A_000.fg, A_001.fg, …
    Decompose {
        a: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Split A at a splitting vertex into its s-part and t-part.
    Split {
        a: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Exit 0 if A ≤ B in the chosen order, 1 otherwise.
    Order {
        #[arg(long, conflicts_with = "strong", required_unless_present = "strong")]
        weak: bool,
        #[arg(long)]
        strong: bool,
        /// Print the embeddings that witness the relation.
        #[arg(long)]
        witness: bool,
        a: PathBuf,
        b: PathBuf,
    },
    /// A quotient of A by B: C with C ⊗ B ≅ A (or B ⊗ C ≅ A with --left).
    Div {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        left: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Exit 0 if A is ⊗-prime, 1 otherwise.
    Prime {
        a: PathBuf,
        #[arg(long)]
        left: bool,
    },
    /// Every prime factorization of A found by repeated division.
    Factor { a: PathBuf },
    /// All flow graphs up to isomorphism with at most E edges.
    Enumerate {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        st_only: bool,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Check laws of the catalog.
    Laws {
        /// A single law; default is the whole catalog.
        #[arg(long)]
        law: Option<String>,
        /// Edge bound of the universe (caps each law's default).
        #[arg(long)]
        max_edges: Option<usize>,
        /// List the catalog instead of running it.
        #[arg(long)]
        list: bool,
        /// Append elapsed times (output then varies between runs).
        #[arg(long)]
        timings: bool,
        /// Also write the reports as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Graphviz DOT for A.
    ExportDot {
        a: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut limits = Limits::from_env();
    if let Some(n) = cli.node_budget {
        limits.node_budget = n;
    }
    Limits::install(limits);
    let jobs = cli.jobs.unwrap_or(0);
    let result = if jobs == 0 { run(&cli) } else { with_jobs(jobs, || run(&cli)) };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fga: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<FlowGraph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_fg(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Out, text: &str) -> anyhow::Result<bool> {
    match &out.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(true)
}

fn print(text: &str) -> anyhow::Result<()> {
    io::stdout().write_all(text.as_bytes())?;
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let exec = if cli.jobs == Some(1) { Exec::Sequential } else { Exec::default() };
    match &cli.cmd {
        Cmd::Nat { n, out } => emit(out, &write_fg(&nat(*n))),
        Cmd::Add { a, b, out } => emit(out, &write_fg(&plus(&read(a)?, &read(b)?))),
        Cmd::Mul { a, b, out } => emit(out, &write_fg(&times(&read(a)?, &read(b)?))),
        Cmd::Smul { k, a, out } => emit(out, &write_fg(&scalar_multiple(*k, &read(a)?)?)),
        Cmd::Pow { a, k, out } => emit(out, &write_fg(&scalar_power(&read(a)?, *k)?)),
        Cmd::Iso { a, b } => {
            let iso = are_isomorphic(&read(a)?, &read(b)?);
            print(if iso.is_some() { "isomorphic\n" } else { "not isomorphic\n" })?;
            Ok(iso.is_some())
        }
        Cmd::Classify { a } => {
            print(&classify(&read(a)?)?)?;
            Ok(true)
        }
        Cmd::Core { a, out } => emit(out, &write_fg(&st_core(&read(a)?)?)),
        Cmd::Decompose { a, out_dir } => {
            let d = canonical_decomposition(&read(a)?);
            match out_dir {
                Some(dir) => {
                    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                    for (i, term) in d.components.iter().enumerate() {
                        let p = dir.join(format!("A_{i:03}.fg"));
                        fs::write(&p, write_fg(term)).with_context(|| format!("writing {}", p.display()))?;
                    }
                    print(&format!("{} terms\n", d.len()))?;
                }
                None => print(&join_graphs(&d.components))?,
            }
            Ok(true)
        }
        Cmd::Split { a, vertex, out_dir } => {
            let (s, t) = split_at(&read(a)?, *vertex)?;
            match out_dir {
                Some(dir) => {
                    fs::create_dir_all(dir)?;
                    fs::write(dir.join("s_part.fg"), write_fg(&s))?;
                    fs::write(dir.join("t_part.fg"), write_fg(&t))?;
                }
                None => print(&join_graphs(&[s, t]))?,
            }
            Ok(true)
        }
        Cmd::Order { weak, witness, a, b, .. } => {
            let (a, b) = (read(a)?, read(b)?);
            let (holds, text) = if *weak {
                let w = weak_leq(&a, &b)?;
                (w.is_some(), w.filter(|_| *witness).map(|w| weak_text(&w)))
            } else {
                let w = strong_leq(&a, &b)?;
                (w.is_some(), w.filter(|_| *witness).map(|w| strong_text(&w)))
            };
            let rel = if *weak { "weak" } else { "strong" };
            print(&format!("{rel}: {}\n", if holds { "A ≤ B" } else { "A ≰ B" }))?;
            if let Some(t) = text {
                print(&t)?;
            }
            Ok(holds)
        }
        Cmd::Div { a, b, left, out } => {
            let (a, b) = (read(a)?, read(b)?);
            let q = if *left { left_divide(&a, &b)? } else { right_divide(&a, &b)? };
            match q {
                Some(q) => emit(out, &write_fg(&q)),
                None => {
                    print("no quotient\n")?;
                    Ok(false)
                }
            }
        }
        Cmd::Prime { a, left } => {
            let a = read(a)?;
            let p = if *left { is_left_prime(&a)? } else { is_prime(&a)? };
            print(if p { "prime\n" } else { "not prime\n" })?;
            Ok(p)
        }
        Cmd::Factor { a } => {
            let a = read(a)?;
            let mut s = String::new();
            for (i, seq) in factorization_experiment(&a)?.iter().enumerate() {
                let _ = writeln!(s, "# factorization {i} ({} primes)", seq.len());
                s.push_str(&join_graphs(seq));
            }
            print(&s)?;
            Ok(true)
        }
        Cmd::Enumerate { edges, st_only, count } => {
            let spec = if *st_only { UniverseSpec::st(*edges) } else { UniverseSpec::new(*edges) };
            let all = enumerate_flow_graphs(&spec)?;
            if *count {
                print(&format!("{}\n", all.len()))?;
            } else {
                print(&join_graphs(&all))?;
            }
            Ok(true)
        }
        Cmd::Laws { law, max_edges, list, timings, json } => {
            if *list {
                let mut s = String::new();
                for l in catalog() {
                    let _ = writeln!(s, "{:<32} {:?}  {}", l.id, l.expectation, l.statement);
                }
                print(&s)?;
                return Ok(true);
            }
            let opts = RunOptions {
                exec,
                limits: *Limits::global(),
                ..RunOptions::default()
            };
            let reports: Vec<LawReport> = match law {
                Some(id) => {
                    let l = find_law(id).ok_or_else(|| anyhow!("unknown law `{id}` (see `fga laws --list`)"))?;
                    vec![check_law_with(id, &l.universe(*max_edges), &opts)?]
                }
                None => run_catalog(*max_edges, &opts)?,
            };
            let text = if cli.format == Format::Json {
                let mut j = reports_to_json(&reports, *timings);
                j.push('\n');
                j
            } else {
                reports.iter().map(|r| r.line(*timings) + "\n").collect()
            };
            print(&text)?;
            if let Some(p) = json {
                fs::write(p, reports_to_json(&reports, *timings) + "\n")
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(reports.iter().all(|r| r.verdict.as_expected()))
        }
        Cmd::ExportDot { a, out } => emit(out, &to_dot(&read(a)?)),
    }
}

fn join_graphs(gs: &[FlowGraph]) -> String {
    gs.iter().map(write_fg).collect::<Vec<_>>().join("\n")
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn classify(a: &FlowGraph) -> anyhow::Result<String> {
    let class = match a.classify() {
        Class::Trivial => "trivial",
        Class::Infinitesimal => "infinitesimal",
        Class::GeneralNonInfinitesimal => "general",
    };
    let mut chi = splitting_vertices(a).vertices();
    chi.sort_unstable();
    let mut s = String::new();
    let _ = writeln!(s, "vertices {}", a.vertex_count());
    let _ = writeln!(s, "edges {}", a.edge_count());
    let _ = writeln!(s, "class {class}");
    let _ = writeln!(s, "st {}", yes(is_st_flow_graph(a)?));
    let _ = writeln!(s, "s-standard {}", yes(is_s_standard(a)));
    let _ = writeln!(s, "t-standard {}", yes(is_t_standard(a)));
    let _ = writeln!(s, "splitting-vertices [{}]", list(&chi));
    let _ = writeln!(s, "splitting-edges [{}]", list(&splitting_edges(a)));
    let _ = writeln!(s, "terms {}", canonical_decomposition(a).len());
    Ok(s)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn map_text(name: &str, m: &VertexMap) -> String {
    let pairs = |xs: &[usize]| xs.iter().enumerate().map(|(i, x)| format!("{i}>{x}")).collect::<Vec<_>>().join(" ");
    format!("{name} vertices {}\n{name} edges {}\n", pairs(&m.vertices), pairs(&m.edges))
}

fn strong_text(w: &StrongWitness) -> String {
    map_text("phi_s", &w.phi_s) + &map_text("phi_t", &w.phi_t)
}

fn part_text(name: &str, part: &StPart, m: &VertexMap) -> String {
    let v = part.vertices.iter().zip(&m.vertices).map(|(a, b)| format!("{a}>{b}"));
    let e = part.edges.iter().zip(&m.edges).map(|(a, b)| format!("{a}>{b}"));
    format!(
        "{name} vertices {}\n{name} edges {}\n",
        v.collect::<Vec<_>>().join(" "),
        e.collect::<Vec<_>>().join(" ")
    )
}

fn weak_text(w: &WeakWitness) -> String {
    part_text("h1", &w.splitting.h1, &w.phi1) + &part_text("h2", &w.splitting.h2, &w.phi2)
}
