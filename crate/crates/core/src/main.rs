use std::fmt::Display;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use paramenum::backdoor::{generate_sbds, CnfFormula};
use paramenum::csp::{classify_relation, ClassFlags, Tristate};
use paramenum::enumcore::{DelayProfile, ParamInstance};
use paramenum::generate::{backdoor_cnf, implication_chain, sparse_vc_graph};
use paramenum::io::{parse_constraint_language, parse_dimacs_cnf, parse_gamma_formula, parse_graph};
use paramenum::maxones::{enumerate_maxones, OracleKind, WeightOracle};
use paramenum::report::{profile_repeated, DelayGrowthReport};
use paramenum::vertex_cover::{enumerate_all_vcs, Graph};
use paramenum::EnumError;

#[derive(Parser)]
#[command(name = "paramenum", version, about = "Enumerate solutions of parameterized problems with bounded delay")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex covers of size at most K.
    Vc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        /// Print only the number of covers.
        #[arg(long)]
        count: bool,
        /// Decision mode: print nothing, exit 1 if there is no cover.
        #[arg(long)]
        exists: bool,
    },
    /// Models of weight at least K.
    Maxones {
        #[arg(long)]
        formula: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value_t = OracleArg::Auto)]
        oracle: OracleArg,
        #[arg(long)]
        exists: bool,
    },
    /// Strong Horn-backdoor sets of size exactly K, as 1-based variables.
    Backdoor {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        exists: bool,
    },
    /// Closure properties of every relation in a formula file.
    Classify {
        #[arg(long)]
        language: PathBuf,
    },
    /// Delay profiles over a generated family at several sizes.
    Profile {
        #[arg(value_enum)]
        family: Family,
        #[arg(short)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: PathBuf,
        /// Also write one `index,delay_ns` CSV per size into this directory.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Runs per size; delays are the index-wise minimum over runs.
        #[arg(long, default_value_t = 5)]
        repeats: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Auto,
    Brute,
    Dualhorn,
    Affine,
    Bb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Vc,
    Maxones,
    Backdoor,
}

impl Family {
    fn tag(self) -> &'static str {
        match self {
            Family::Vc => "vc-sparse-hub",
            Family::Maxones => "maxones-implication-chain",
            Family::Backdoor => "backdoor-pairs-horn",
        }
    }
}

enum Failure {
    /// No solution in decision mode.
    NoSolution,
    Input(String),
}

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::NoSolution) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file<T, E: Display>(path: &Path, r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_solution(out: &mut impl Write, set: &[usize], offset: usize) -> io::Result<()> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let line: Vec<String> = sorted.iter().map(|v| (v + offset).to_string()).collect();
    writeln!(out, "{}", line.join(" "))
}

/// Prints each solution, or only checks for one when `exists` is set.
fn emit<I>(solutions: I, count: bool, exists: bool, offset: usize) -> Result<(), Failure>
where
    I: Iterator<Item = paramenum::Result<Vec<usize>>>,
{
    let mut solutions = solutions.peekable();
    if exists {
        return match solutions.next().transpose()? {
            Some(_) => Ok(()),
            None => Err(Failure::NoSolution),
        };
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if count {
        let mut n = 0usize;
        for s in solutions {
            s?;
            n += 1;
        }
        writeln!(out, "{n}")?;
    } else {
        for s in solutions {
            write_solution(&mut out, &s?, offset)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn oracle_for(arg: OracleArg, phi: &paramenum::csp::GammaFormula) -> WeightOracle {
    let kind = match arg {
        OracleArg::Auto => return WeightOracle::auto(phi),
        OracleArg::Brute => OracleKind::BruteForce,
        OracleArg::Dualhorn => OracleKind::DualHornPropagation,
        OracleArg::Affine => OracleKind::AffineGauss,
        OracleArg::Bb => OracleKind::BranchAndBound,
    };
    WeightOracle::new(kind)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Vc { graph, k, count, exists } => {
            let g = in_file(&graph, parse_graph(&read(&graph)?))?;
            emit(enumerate_all_vcs(&g, k), count, exists, 0)
        }
        Command::Maxones { formula, k, oracle, exists } => {
            let phi = in_file(&formula, parse_gamma_formula(&read(&formula)?))?;
            let stream = enumerate_maxones(oracle_for(oracle, &phi), &phi, k)?;
            emit(stream, false, exists, 0)
        }
        Command::Backdoor { cnf, k, exists } => {
            let phi = in_file(&cnf, parse_dimacs_cnf(&read(&cnf)?))?;
            emit(generate_sbds(&phi, k).map(Ok), false, exists, 1)
        }
        Command::Classify { language } => {
            let lang = in_file(&language, parse_constraint_language(&read(&language)?))?;
            let mut out = io::stdout().lock();
            for (name, r) in lang.iter() {
                writeln!(out, "{name}: {}", describe(classify_relation(r)))?;
            }
            writeln!(out, "language: {}", describe(lang.classify()))?;
            Ok(())
        }
        Command::Profile { family, k, sizes, seed, json, csv, repeats } => {
            profile(family, k, &sizes, seed, &json, csv.as_deref(), repeats)
        }
    }
}

fn describe(f: ClassFlags) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let sb = match f.strongly_bijunctive {
        Tristate::Yes => "yes",
        Tristate::No => "no",
        Tristate::Unknown => "unknown",
    };
    format!(
        "zero_valid={} one_valid={} horn={} dual_horn={} bijunctive={} affine={} complementive={} strongly_bijunctive={sb}",
        yn(f.zero_valid),
        yn(f.one_valid),
        yn(f.horn),
        yn(f.dual_horn),
        yn(f.bijunctive),
        yn(f.affine),
        yn(f.complementive),
    )
}

fn profile_one(family: Family, n: usize, k: usize, seed: u64, repeats: usize) -> paramenum::Result<DelayProfile> {
    match family {
        Family::Vc => {
            if n < 4 {
                return Err(EnumError::Precondition("vc family needs n >= 4".into()));
            }
            let g = sparse_vc_graph(n, k, seed);
            let inst = ParamInstance::new(&g, k, n);
            profile_repeated(|i: &ParamInstance<&Graph>| Ok(enumerate_all_vcs(*i.payload(), i.parameter())), &inst, repeats)
        }
        Family::Maxones => {
            let phi = implication_chain(n);
            let inst = ParamInstance::new(phi, k, n);
            profile_repeated(
                |i| enumerate_maxones(WeightOracle::auto(i.payload()), i.payload(), i.parameter()),
                &inst,
                repeats,
            )
        }
        Family::Backdoor => {
            if n < 2 * k.saturating_sub(1) + 2 {
                return Err(EnumError::Precondition("backdoor family needs n >= 2k".into()));
            }
            let phi = backdoor_cnf(n, k, seed);
            let inst = ParamInstance::new(&phi, k, n);
            profile_repeated(
                |i: &ParamInstance<&CnfFormula>| Ok(generate_sbds(*i.payload(), i.parameter()).map(Ok)),
                &inst,
                repeats,
            )
        }
    }
}

fn profile(
    family: Family,
    k: usize,
    sizes: &[usize],
    seed: u64,
    json_path: &Path,
    csv_dir: Option<&Path>,
    repeats: usize,
) -> Result<(), Failure> {
    let mut report = DelayGrowthReport::new();
    let mut runs = Vec::new();
    for &n in sizes {
        let p = profile_one(family, n, k, seed, repeats)?;
        if let Some(dir) = csv_dir {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(format!("{}_n{n}_k{k}.csv", family.tag())), p.to_csv())?;
        }
        report.push(family.tag(), n, k, &p);
        eprintln!(
            "{} n={n} k={k}: {} solutions, max gap {} ns",
            family.tag(),
            p.count,
            p.max_gap_ns().map_or("-".to_string(), |g| g.to_string())
        );
        runs.push(json!({ "family": family.tag(), "n": n, "k": k, "seed": seed, "profile": p }));
    }
    let doc = json!({ "runs": runs, "report": report });
    fs::write(json_path, serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}
