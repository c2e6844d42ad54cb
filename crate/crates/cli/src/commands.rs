use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use kqbf::format::{emit_dnf, emit_qdimacs, parse_dnf, parse_qdimacs};
use kqbf::generate::{random_dnf, random_forall_exists, rng_from_seed, DnfSpec, ForallExistsSpec};
use kqbf::oracle::{check_equivalence, eval_qbf, EquivalenceMode, OracleConfig};
use kqbf::reductions::{reduce_dnf_to_4qbf, reduce_dnf_to_fe_dqbf};
use kqbf::solver::{
    leaf_bound_log2, solve as run_solver, stats_csv_header, SolverConfig, StatsRow,
};
use kqbf::{Assignment, DnfFormula, QbfInstance};

use crate::{
    BenchArgs, Construction, GenArgs, GenKind, OracleArgs, ReduceArgs, SolveArgs, VerifyArgs,
    EXIT_FALSE, EXIT_TRUE,
};

const EXIT_PASSED: u8 = 0;
const EXIT_MISMATCH: u8 = 2;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_qbf(path: &Path) -> anyhow::Result<QbfInstance> {
    parse_qdimacs(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn verdict(value: bool) -> u8 {
    println!("{}", if value { "TRUE" } else { "FALSE" });
    if value {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

fn instance_id(path: &Path) -> String {
    path.file_name().map_or_else(
        || path.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    )
}

pub fn solve(args: &SolveArgs) -> anyhow::Result<u8> {
    let instance = read_qbf(&args.path)?;
    let config = SolverConfig {
        threshold_override: args.threshold_override,
        small_k_cutoff: args.small_k_cutoff,
        parallel_branching: args.parallel,
        arity: None,
    };
    let start = Instant::now();
    let solution = run_solver(&instance, &config)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    if let Some(csv) = &args.stats_csv {
        let fresh = !csv.exists();
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(csv)
            .with_context(|| format!("opening {}", csv.display()))?;
        if fresh {
            writeln!(file, "{}", stats_csv_header())?;
        }
        let row = StatsRow {
            instance_id: &instance_id(&args.path),
            k: solution.k,
            d: solution.d,
            result: solution.value,
            stats: &solution.stats,
            wall_time_ms,
        };
        writeln!(file, "{}", row.to_csv())?;
    }
    Ok(verdict(solution.value))
}

pub fn oracle(args: &OracleArgs) -> anyhow::Result<u8> {
    let instance = read_qbf(&args.path)?;
    let config = OracleConfig {
        max_vars: args.max_vars,
    };
    Ok(verdict(eval_qbf(&instance, &Assignment::new(), &config)?))
}

fn read_dnf(path: &Path) -> anyhow::Result<DnfFormula> {
    let parsed = parse_dnf(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if parsed.dropped_contradictory > 0 {
        eprintln!(
            "dropped {} contradictory terms",
            parsed.dropped_contradictory
        );
    }
    Ok(parsed.formula)
}

pub fn reduce(args: &ReduceArgs) -> anyhow::Result<u8> {
    let psi = if args.negate_cnf {
        DnfFormula::negation_of(read_qbf(&args.path)?.matrix())
    } else {
        read_dnf(&args.path)?
    };
    let out = match args.theorem {
        Construction::FourBlock => reduce_dnf_to_4qbf(&psi, args.base_threshold)?,
        Construction::TwoBlock => reduce_dnf_to_fe_dqbf(&psi, args.d)?,
    };
    let summary = format!(
        "existential_count {}\nalternations {}",
        out.existential_count, out.alternations
    );
    let text = emit_qdimacs(&out.instance);
    match &args.out {
        Some(path) => {
            write(path, &text)?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    if let Some(path) = &args.provenance {
        write(path, &out.provenance_text())?;
    }
    Ok(0)
}

pub fn verify(args: &VerifyArgs) -> anyhow::Result<u8> {
    let psi = read_dnf(&args.dnf)?;
    let phi = read_qbf(&args.qbf)?;
    let config = OracleConfig {
        max_vars: args.max_vars,
    };
    let report = check_equivalence(&psi, &phi, EquivalenceMode::General, &config)?;
    print!("{}", report.summary());
    if let Some(path) = &args.csv {
        write(path, &report.to_csv())?;
    }
    Ok(if report.passed {
        EXIT_PASSED
    } else {
        EXIT_MISMATCH
    })
}

pub fn gen(args: &GenArgs) -> anyhow::Result<u8> {
    let mut rng = rng_from_seed(args.seed);
    let text = match args.kind {
        GenKind::Dnf => {
            let spec = DnfSpec {
                vars: args.n,
                terms: args.m,
                width: args.width,
                distinct: args.distinct,
            };
            emit_dnf(&random_dnf(&spec, &mut rng)?)
        }
        GenKind::Feqbf => {
            let spec = ForallExistsSpec {
                universal: args.n,
                existential: args.k,
                clauses: args.m,
                arity: args.d,
                distinct: args.distinct,
                require_existential: args.require_existential,
            };
            emit_qdimacs(&random_forall_exists(&spec, &mut rng)?)
        }
    };
    match &args.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn corpus_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("reading corpus {}", dir.display()))? {
        let entry = entry?;
        if entry.file_type()?.is_file() {
            files.push(entry.path());
        }
    }
    files.sort();
    Ok(files)
}

pub fn bench(args: &BenchArgs) -> anyhow::Result<u8> {
    if !args.corpus.is_dir() {
        bail!("corpus {} is not a directory", args.corpus.display());
    }
    let oracle_config = OracleConfig {
        max_vars: args.oracle_max_vars,
    };
    let solver_config = SolverConfig {
        parallel_branching: args.parallel,
        ..SolverConfig::default()
    };
    let mut csv = format!(
        "{},oracle_result,agreement,leaf_bound_log2\n",
        stats_csv_header()
    );
    let (mut rows, mut disagreements) = (0, 0);
    for path in corpus_files(&args.corpus)? {
        let instance = read_qbf(&path)?;
        let start = Instant::now();
        let solution = run_solver(&instance, &solver_config)
            .with_context(|| format!("solving {}", path.display()))?;
        let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        let row = StatsRow {
            instance_id: &instance_id(&path),
            k: solution.k,
            d: solution.d,
            result: solution.value,
            stats: &solution.stats,
            wall_time_ms,
        };
        let (oracle_result, agreement) = if instance.bound_vars() <= oracle_config.max_vars {
            let expected = eval_qbf(&instance, &Assignment::new(), &oracle_config)?;
            disagreements += usize::from(expected != solution.value);
            (
                if expected { "TRUE" } else { "FALSE" },
                if expected == solution.value { "1" } else { "0" },
            )
        } else {
            ("NA", "NA")
        };
        let leaf_bound = solution.threshold.map_or_else(
            || "NA".to_string(),
            |x| format!("{:.3}", leaf_bound_log2(solution.k, solution.d, x)),
        );
        csv.push_str(&format!(
            "{},{oracle_result},{agreement},{leaf_bound}\n",
            row.to_csv()
        ));
        rows += 1;
    }
    write(&args.out, &csv)?;
    println!("{rows} instances, {disagreements} disagreements");
    Ok(0)
}
