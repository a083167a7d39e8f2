//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use colocal_core::analysis::{
    brute_force_lattice, check_string_invariants, check_union_property, colocal_by_conditions,
    verify_main_theorem, verify_partition_m, verify_tau_equivalences,
};
use colocal_core::corpus::{generate_corpus, CorpusConfig, CorpusMember};
use colocal_core::lattice::{
    diamond_m3, downset_lattice, hasse_lines, is_distributive, is_frame, join_irreducibles,
    pentagon_n5, poset_isomorphism, MaterializedLattice, DEFAULT_MAX_SIZE,
};
use colocal_core::quiver::{parse_quiver_spec, QuiverAlgebra};
use colocal_core::young::{partitions_in_box, young_box_lattice};
use rayon::prelude::*;

const Y33_BUDGET: Duration = Duration::from_secs(1);
const CORPUS_BUDGET: Duration = Duration::from_secs(60);
const MAX_LATTICE: usize = DEFAULT_MAX_SIZE;
const YOUNG_RANGE: usize = 6;
const BIRKHOFF_MIN_LATTICES: usize = 50;
// Largest lattice rebuilt from its bare order for the round trip.
const BIRKHOFF_MAX_SIZE: usize = 128;
const UNION_EXHAUSTIVE: usize = 1000;
const UNION_SAMPLES: usize = 20_000;
const UNION_SEED: u64 = 7;

const Y33_GOLDEN: &str = include_str!("golden/y33_hasse.txt");

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: String) -> Outcome {
    Outcome {
        name,
        passed,
        detail,
    }
}

fn quiver(spec: &str) -> QuiverAlgebra {
    parse_quiver_spec(spec).expect("fixture parses")
}

fn colocal(corpus: &[CorpusMember]) -> Vec<&CorpusMember> {
    corpus
        .iter()
        .filter(|m| m.algebra.is_colocal_type_structural().passed)
        .collect()
}

fn young_hasse() -> Outcome {
    let start = Instant::now();
    let y = young_box_lattice(3, 3, MAX_LATTICE).expect("Y^{3,3}");
    let lines = hasse_lines(&y);
    let elapsed = start.elapsed();
    let golden: Vec<&str> = Y33_GOLDEN.lines().collect();
    let same = lines.iter().map(String::as_str).eq(golden.iter().copied());
    outcome(
        "Y^{3,3} Hasse diagram",
        y.len() == 20 && same && elapsed < Y33_BUDGET,
        format!(
            "{} elements, {} of {} golden edges matched, {:?}",
            y.len(),
            lines
                .iter()
                .filter(|l| golden.contains(&l.as_str()))
                .count(),
            golden.len(),
            elapsed
        ),
    )
}

fn route_agreement(corpus: &[CorpusMember], generated: Duration) -> Outcome {
    let start = Instant::now();
    let disagreements: Vec<&str> = corpus
        .par_iter()
        .filter(|m| {
            colocal_by_conditions(&m.algebra).0 != m.algebra.is_colocal_type_structural().passed
        })
        .map(|m| m.id.as_str())
        .collect();
    let elapsed = generated + start.elapsed();
    outcome(
        "conditions agree with structural test",
        disagreements.is_empty() && elapsed < CORPUS_BUDGET,
        format!(
            "{} algebras, {} colocal, {} disagreements {:?}, {:?}",
            corpus.len(),
            colocal(corpus).len(),
            disagreements.len(),
            disagreements.iter().take(5).collect::<Vec<_>>(),
            elapsed
        ),
    )
}

fn main_theorem(corpus: &[CorpusMember]) -> Outcome {
    let members = colocal(corpus);
    let failures: Vec<String> = members
        .par_iter()
        .filter_map(|m| match verify_main_theorem(&m.algebra, MAX_LATTICE) {
            Ok(_) => None,
            Err(e) => Some(format!("{}: {e}", m.id)),
        })
        .collect();
    let named = [
        ("vertices: 1 2\narrow a: 1 -> 2", 6u32),
        ("vertices: 1 2 3\narrow a: 1 -> 3\narrow b: 2 -> 3", 24),
        (
            "vertices: 1 2\narrow b: 1 -> 2\narrow a: 2 -> 2\nrelation a a",
            20,
        ),
    ];
    let sizes: Vec<(usize, String)> = named
        .iter()
        .map(
            |(spec, _)| match verify_main_theorem(&quiver(spec), MAX_LATTICE) {
                Ok(r) => (r.brute_size, r.structural_size.to_string()),
                Err(e) => (0, e.to_string()),
            },
        )
        .collect();
    let sizes_ok = sizes
        .iter()
        .zip(named)
        .all(|((b, s), (_, want))| *b == want as usize && *s == want.to_string());
    outcome(
        "main theorem isomorphisms",
        failures.is_empty() && sizes_ok,
        format!(
            "{} colocal algebras, {} failures {:?}; named sizes {:?}",
            members.len(),
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>(),
            sizes.iter().map(|(b, _)| *b).collect::<Vec<_>>()
        ),
    )
}

fn cardinality() -> Outcome {
    // Pascal's triangle, kept apart from the library's binomial
    let mut pascal = vec![vec![1u64; 2 * YOUNG_RANGE + 1]; 2 * YOUNG_RANGE + 1];
    for n in 1..pascal.len() {
        for k in 1..n {
            pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
        }
    }
    let mut bad = Vec::new();
    for m in 1..=YOUNG_RANGE {
        for n in 1..=YOUNG_RANGE {
            let want = pascal[m + n][m] as usize;
            let listed = partitions_in_box(m, n).expect("nonzero box").len();
            let lattice = young_box_lattice(m, n, MAX_LATTICE).expect("small").len();
            if listed != want || lattice != want {
                bad.push((m, n, listed, lattice, want));
            }
        }
    }
    outcome(
        "|Y^{m,n}| = C(m+n, m)",
        bad.is_empty(),
        format!(
            "{} boxes checked, mismatches {:?}",
            YOUNG_RANGE * YOUNG_RANGE,
            bad
        ),
    )
}

/// The lattice rebuilt from its order alone, so the round trip cannot lean
/// on the down-set representation it was built with.
fn bare(l: &MaterializedLattice) -> MaterializedLattice {
    MaterializedLattice::from_order(l.labels().to_vec(), |a, b| l.leq(a, b)).expect("lattice")
}

fn birkhoff(corpus: &[CorpusMember]) -> Outcome {
    let mut lattices: Vec<MaterializedLattice> = colocal(corpus)
        .par_iter()
        .filter_map(|m| brute_force_lattice(&m.algebra, BIRKHOFF_MAX_SIZE).ok())
        .map(|l| bare(&l))
        .collect();
    for (m, n) in [(2, 2), (2, 3), (3, 3), (2, 4)] {
        lattices.push(bare(&young_box_lattice(m, n, MAX_LATTICE).expect("small")));
    }
    let mut round_trip_failures = 0;
    let mut disagreements = 0;
    for l in &lattices {
        let distributive = is_distributive(l).expect("within guard").is_none();
        if distributive != is_frame(l).expect("within guard") {
            disagreements += 1;
        }
        let ok = join_irreducibles(l)
            .and_then(|p| downset_lattice(&p, MAX_LATTICE))
            .map(|d| poset_isomorphism(&d.as_poset(), &l.as_poset()).is_some())
            .unwrap_or(false);
        if !(distributive && ok) {
            round_trip_failures += 1;
        }
    }
    let mut rejected = 0;
    for l in [diamond_m3(), pentagon_n5()] {
        let d = is_distributive(&l).expect("small").is_none();
        let f = is_frame(&l).expect("small");
        if d != f {
            disagreements += 1;
        }
        rejected += usize::from(!d && !f && join_irreducibles(&l).is_err());
    }
    outcome(
        "Birkhoff round trip; distributive iff frame",
        lattices.len() >= BIRKHOFF_MIN_LATTICES
            && round_trip_failures == 0
            && disagreements == 0
            && rejected == 2,
        format!(
            "{} lattices, {} round-trip failures, {} disagreements, M3/N5 rejected {}/2",
            lattices.len(),
            round_trip_failures,
            disagreements,
            rejected
        ),
    )
}

fn string_invariants(corpus: &[CorpusMember]) -> Outcome {
    let members = colocal(corpus);
    let failures: Vec<&str> = members
        .par_iter()
        .filter(|m| {
            let inv = check_string_invariants(&m.algebra).map(|r| r.passed());
            let part = verify_partition_m(&m.algebra).map(|r| r.passed());
            !matches!((inv, part), (Ok(true), Ok(true)))
        })
        .map(|m| m.id.as_str())
        .collect();
    outcome(
        "colocal string invariants and socle classes",
        failures.is_empty(),
        format!(
            "{} colocal algebras, {} failures {:?}",
            members.len(),
            failures.len(),
            failures.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn tau(corpus: &[CorpusMember]) -> (Outcome, Outcome) {
    let reports: Vec<_> = colocal(corpus)
        .par_iter()
        .map(|m| (m.id.as_str(), verify_tau_equivalences(&m.algebra)))
        .collect();
    let errors = reports.iter().filter(|(_, r)| r.is_err()).count();
    let checks: Vec<_> = reports
        .iter()
        .filter_map(|(id, r)| r.as_ref().ok().map(|r| (*id, r)))
        .flat_map(|(id, r)| r.checks.iter().map(move |c| (id, c)))
        .collect();
    let prime_bad: Vec<&str> = checks
        .iter()
        .filter(|(_, c)| !(c.tau_equals_prime && c.nested))
        .map(|(id, _)| *id)
        .collect();
    let double: Vec<_> = checks
        .iter()
        .filter(|(_, c)| c.tau_equals_double_prime.is_some())
        .collect();
    let double_bad: Vec<String> = double
        .iter()
        .filter(|(_, c)| c.tau_equals_double_prime == Some(false))
        .map(|(id, c)| format!("{id}@{}", c.sets.simple))
        .collect();
    (
        outcome(
            "tau = tau'",
            errors == 0 && prime_bad.is_empty(),
            format!(
                "{} vertex checks, {} failures, {} errors",
                checks.len(),
                prime_bad.len(),
                errors
            ),
        ),
        outcome(
            "tau = tau'' when S differs from S'",
            errors == 0 && double_bad.is_empty(),
            format!(
                "{} vertex checks, {} failures {:?}",
                double.len(),
                double_bad.len(),
                double_bad.iter().take(5).collect::<Vec<_>>()
            ),
        ),
    )
}

fn union_property(corpus: &[CorpusMember]) -> Outcome {
    let reports: Vec<_> = colocal(corpus)
        .par_iter()
        .filter_map(|m| brute_force_lattice(&m.algebra, MAX_LATTICE).ok())
        .map(|l| check_union_property(&l, UNION_EXHAUSTIVE, UNION_SAMPLES, UNION_SEED))
        .collect();
    let failed = reports
        .iter()
        .filter(|r| !matches!(r, Ok(r) if r.passed()))
        .count();
    let exhaustive = reports
        .iter()
        .filter(|r| matches!(r, Ok(r) if r.exhaustive))
        .count();
    let pairs: usize = reports.iter().flatten().map(|r| r.pairs).sum();
    outcome(
        "joins are unions of indecomposables",
        failed == 0,
        format!(
            "{} lattices ({} exhaustive), {} pairs, {} failing lattices",
            reports.len(),
            exhaustive,
            pairs,
            failed
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = generate_corpus(&CorpusConfig::default());
    let generated = start.elapsed();

    let (tau_prime, tau_double_prime) = tau(&corpus);
    let outcomes = [
        ("1", young_hasse()),
        ("2", route_agreement(&corpus, generated)),
        ("3", main_theorem(&corpus)),
        ("4", cardinality()),
        ("5", birkhoff(&corpus)),
        ("6", string_invariants(&corpus)),
        ("7a", tau_prime),
        ("7b", tau_double_prime),
        ("8", union_property(&corpus)),
    ];
    for (id, o) in &outcomes {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {id:<3} {verdict}  {}: {}", o.name, o.detail);
    }
    let failed = outcomes.iter().filter(|(_, o)| !o.passed).count();
    println!(
        "acceptance: {} passed, {} failed, {:?}",
        outcomes.len() - failed,
        failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
