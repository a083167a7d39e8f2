//! `colocal`: decide colocal type for monomial quiver algebras and compute
//! their lattices of subobject-closed subcategories.
//!
//! Exit codes: 0 success (or colocal), 1 not colocal, 2 bad input,
//! 3 verification mismatch or internal error.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use colocal_core::analysis::{
    analyze, brute_force_lattice, check_string_invariants, check_union_property,
    structural_lattice, verify_main_theorem, verify_partition_m, verify_tau_equivalences,
    AnalysisError, MainTheoremResult, PartitionReport, StringInvariantReport, TauReport,
    UnionReport,
};
use colocal_core::corpus::{generate_corpus, write_manifest, CorpusConfig};
use colocal_core::lattice::{to_dot, DEFAULT_MAX_SIZE};
use colocal_core::quiver::{parse_quiver_spec, QuiverAlgebra, VertexId};
use colocal_core::strings::{enumerate_strings, enumerate_strings_up_to, StringError};
use colocal_core::young::{box_count, young_box_lattice};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "colocal", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the colocal-type conditions and report the lattice shape.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the factors and size of the lattice; optionally write its Hasse diagram.
    Lattice {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
    },
    /// Compare the brute-force and structural lattices and run the cross-checks.
    ///
    /// With --corpus, runs over the generated corpus instead of one file.
    Verify {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
        /// Seed for the random part of the corpus and for sampled checks.
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Write the corpus manifest here.
        #[arg(long, value_name = "PATH", requires = "corpus")]
        manifest: Option<PathBuf>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        #[arg(long)]
        json: bool,
    },
    /// List the strings with dimension vectors, socle and top.
    Strings {
        file: PathBuf,
        /// Stop at this length instead of requiring the list to be finite.
        #[arg(long, value_name = "L")]
        max_len: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// The lattice of partitions in an M × N box.
    Young {
        m: usize,
        n: usize,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
    },
}

/// An exit code with its diagnostic.
struct Exit {
    code: u8,
    error: anyhow::Error,
}

fn input(error: impl Into<anyhow::Error>) -> Exit {
    Exit {
        code: 2,
        error: error.into(),
    }
}

fn internal(error: impl Into<anyhow::Error>) -> Exit {
    Exit {
        code: 3,
        error: error.into(),
    }
}

fn analysis(error: AnalysisError) -> Exit {
    match error {
        AnalysisError::Precondition { .. } => Exit {
            code: 1,
            error: error.into(),
        },
        e => internal(e),
    }
}

type Outcome = Result<u8, Exit>;

fn load(path: &Path) -> Result<QuiverAlgebra, Exit> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(input)?;
    parse_quiver_spec(&text)
        .with_context(|| format!("{}", path.display()))
        .map_err(input)
}

fn write(path: &Path, contents: &str) -> Result<(), Exit> {
    fs::write(path, contents)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(input)
}

fn print_json(value: &impl Serialize) -> Result<(), Exit> {
    let text = serde_json::to_string_pretty(value).map_err(internal)?;
    println!("{text}");
    Ok(())
}

fn cmd_analyze(file: &Path, as_json: bool) -> Outcome {
    let qa = load(file)?;
    let report = analyze(&qa).map_err(internal)?;
    if as_json {
        print_json(&report)?;
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.colocal { 0 } else { 1 })
}

fn cmd_lattice(file: &Path, dot: Option<&Path>, max_size: usize) -> Outcome {
    let qa = load(file)?;
    if !analyze(&qa).map_err(internal)?.colocal {
        println!("colocal: no");
        return Ok(1);
    }
    let lattice = structural_lattice(&qa).map_err(analysis)?;
    let labels: Vec<&str> = lattice.factors().iter().map(|f| f.label()).collect();
    println!("factors: {}", labels.join(" × "));
    let size = lattice.size();
    println!("size {size}");
    if let Some(path) = dot {
        if size > max_size.into() {
            println!("not materialized: size exceeds --max-size {max_size}");
        } else {
            let l = lattice.materialize(max_size).map_err(internal)?;
            write(path, &to_dot(&l, "S(mod A)"))?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct Verification {
    passed: bool,
    main_theorem: Option<MainTheoremResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    main_theorem_error: Option<String>,
    partition: PartitionReport,
    tau: TauReport,
    string_invariants: StringInvariantReport,
    union: Option<UnionReport>,
}

fn verify_one(qa: &QuiverAlgebra, max_size: usize, seed: u64) -> Result<Verification, Exit> {
    let (main_theorem, main_theorem_error) = match verify_main_theorem(qa, max_size) {
        Ok(r) => (Some(r), None),
        Err(e @ AnalysisError::Precondition { .. }) => return Err(analysis(e)),
        Err(e) => (None, Some(e.to_string())),
    };
    let partition = verify_partition_m(qa).map_err(analysis)?;
    let tau = verify_tau_equivalences(qa).map_err(analysis)?;
    let string_invariants = check_string_invariants(qa).map_err(analysis)?;
    let union = match &main_theorem {
        Some(_) => {
            let l = brute_force_lattice(qa, max_size).map_err(analysis)?;
            Some(check_union_property(&l, 1000, 20_000, seed).map_err(analysis)?)
        }
        None => None,
    };
    let passed = main_theorem.is_some()
        && partition.passed()
        && tau.passed()
        && string_invariants.passed()
        && union.as_ref().is_some_and(UnionReport::passed);
    Ok(Verification {
        passed,
        main_theorem,
        main_theorem_error,
        partition,
        tau,
        string_invariants,
        union,
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn set(ids: &BTreeSet<VertexId>) -> String {
    let ids: Vec<&str> = ids.iter().map(VertexId::as_str).collect();
    format!("{{{}}}", ids.join(","))
}

fn print_verification(v: &Verification) {
    match (&v.main_theorem, &v.main_theorem_error) {
        (Some(r), _) => println!(
            "main theorem: pass ({} = {}, via {})",
            r.brute_size, r.structural_size, r.witness.via
        ),
        (None, e) => println!(
            "main theorem: FAIL ({})",
            e.as_deref().unwrap_or("no witness")
        ),
    }
    println!("socle classes: {}", verdict(v.partition.passed()));
    println!(
        "string invariants: {}",
        verdict(v.string_invariants.passed())
    );
    println!("tau sets: {}", verdict(v.tau.passed()));
    for c in v.tau.violations() {
        let s = &c.sets;
        println!(
            "  at {} (successor {}): tau {} tau' {} tau'' {}",
            s.simple,
            s.successor,
            set(&s.tau),
            set(&s.tau_prime),
            set(&s.tau_double_prime)
        );
    }
    match &v.union {
        Some(u) => println!(
            "union property: {} ({} pairs{})",
            verdict(u.passed()),
            u.pairs,
            if u.exhaustive { "" } else { ", sampled" }
        ),
        None => println!("union property: not checked"),
    }
}

fn cmd_verify_file(file: &Path, max_size: usize, seed: u64, as_json: bool) -> Outcome {
    let qa = load(file)?;
    if !analyze(&qa).map_err(internal)?.colocal {
        println!("colocal: no");
        return Ok(1);
    }
    let v = verify_one(&qa, max_size, seed)?;
    if as_json {
        print_json(&v)?;
    } else {
        print_verification(&v);
    }
    Ok(if v.passed { 0 } else { 3 })
}

fn cmd_verify_corpus(
    seed: u64,
    manifest: Option<&Path>,
    max_size: usize,
    as_json: bool,
) -> Outcome {
    let cfg = CorpusConfig {
        seed,
        ..CorpusConfig::default()
    };
    let corpus = generate_corpus(&cfg);
    if let Some(path) = manifest {
        write(path, &write_manifest(&corpus))?;
    }
    let mut disagreements = Vec::new();
    let mut failures = Vec::new();
    let mut colocal = 0;
    for m in &corpus {
        match analyze(&m.algebra) {
            Err(AnalysisError::RouteDisagreement { .. }) => disagreements.push(m.id.clone()),
            Err(e) => return Err(internal(anyhow!("{}: {e}", m.id))),
            Ok(r) if r.colocal => {
                colocal += 1;
                let v = verify_one(&m.algebra, max_size, seed)?;
                if !v.passed {
                    failures.push(json!({ "id": m.id, "spec": m.algebra.to_spec(), "report": v }));
                }
            }
            Ok(_) => {}
        }
    }
    let passed = disagreements.is_empty() && failures.is_empty();
    if as_json {
        print_json(&json!({
            "algebras": corpus.len(),
            "colocal": colocal,
            "route_disagreements": disagreements,
            "failures": failures,
            "passed": passed,
        }))?;
    } else {
        println!("algebras: {}", corpus.len());
        println!("colocal: {colocal}");
        println!("route disagreements: {}", disagreements.len());
        println!("verification failures: {}", failures.len());
        for f in &failures {
            println!("  {}", f["id"].as_str().unwrap_or_default());
        }
    }
    Ok(if passed { 0 } else { 3 })
}

fn cmd_strings(file: &Path, max_len: Option<usize>, as_json: bool) -> Outcome {
    let qa = load(file)?;
    let (strings, truncated) = match max_len {
        Some(len) => {
            let e = enumerate_strings_up_to(&qa, len).map_err(input)?;
            (e.strings, e.truncated)
        }
        None => match enumerate_strings(&qa) {
            Ok(s) => (s, false),
            Err(e @ StringError::Unbounded { .. }) => {
                return Err(input(anyhow!(e).context("use --max-len to list a prefix")))
            }
            Err(e) => return Err(input(e)),
        },
    };
    let summaries: Vec<_> = strings
        .iter()
        .map(|w| qa.string_module(w).summary(&qa, w))
        .collect();
    if as_json {
        print_json(&json!({ "strings": summaries, "truncated": truncated }))?;
        return Ok(0);
    }
    let join = |ids: &[VertexId]| {
        ids.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    for s in &summaries {
        let dims: Vec<String> = s
            .dimension_vector
            .iter()
            .map(|(v, d)| format!("{v}:{d}"))
            .collect();
        println!(
            "{}\tdim {}\tsocle {}\ttop {}",
            s.string,
            dims.join(" "),
            join(&s.socle),
            join(&s.top)
        );
    }
    println!(
        "{} strings{}",
        summaries.len(),
        if truncated { " (truncated)" } else { "" }
    );
    Ok(0)
}

fn cmd_young(m: usize, n: usize, dot: Option<&Path>, max_size: usize) -> Outcome {
    if m == 0 || n == 0 {
        return Err(input(anyhow!("box sides must be positive, got {m} × {n}")));
    }
    let size = box_count(m, n);
    println!("size {size}");
    if let Some(path) = dot {
        if size > max_size.into() {
            println!("not materialized: size exceeds --max-size {max_size}");
        } else {
            let l = young_box_lattice(m, n, max_size).map_err(internal)?;
            write(path, &to_dot(&l, &format!("Y^{{{m},{n}}}")))?;
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze { file, json } => cmd_analyze(&file, json),
        Command::Lattice {
            file,
            dot,
            max_size,
        } => cmd_lattice(&file, dot.as_deref(), max_size),
        Command::Verify {
            file,
            corpus,
            seed,
            manifest,
            max_size,
            json,
        } => match file {
            Some(file) if !corpus => cmd_verify_file(&file, max_size, seed, json),
            _ => cmd_verify_corpus(seed, manifest.as_deref(), max_size, json),
        },
        Command::Strings {
            file,
            max_len,
            json,
        } => cmd_strings(&file, max_len, json),
        Command::Young {
            m,
            n,
            dot,
            max_size,
        } => cmd_young(m, n, dot.as_deref(), max_size),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Exit { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
