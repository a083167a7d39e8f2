use colocal_core::analysis::{
    analyze, brute_force_lattice, check_union_property, structural_lattice, tau_sets,
    verify_main_theorem, verify_partition_m,
};
use colocal_core::corpus::{generate_corpus, CorpusConfig};
use colocal_core::lattice::{
    are_isomorphic, downset_lattice, hasse_lines, is_distributive, product, Factor, FiniteLattice,
    FinitePoset, DEFAULT_MAX_SIZE,
};
use colocal_core::quiver::{parse_quiver_spec, QuiverAlgebra, VertexId};
use colocal_core::strings::{
    detect_bands, enumerate_strings, maximal_colocal_module, submodule_poset, StringError,
    StringWord,
};
use colocal_core::young::young_box_lattice;

const A2: &str = "vertices: 1 2\narrow a: 1 -> 2";
const SOURCE_SINK: &str = "vertices: 1 2 3\narrow a: 1 -> 3\narrow b: 2 -> 3";
const LOOP_TAIL: &str = "vertices: 1 2\narrow b: 1 -> 2\narrow a: 2 -> 2\nrelation a a";
const KRONECKER: &str = "vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2";
const TWO_ARMS: &str = "vertices: 1 2 3 4 5
arrow a1: 1 -> 2
arrow a2: 2 -> 5
arrow b1: 3 -> 4
arrow b2: 4 -> 5";

fn q(spec: &str) -> QuiverAlgebra {
    parse_quiver_spec(spec).unwrap()
}

fn texts(qa: &QuiverAlgebra, words: &[StringWord]) -> Vec<String> {
    words.iter().map(|w| w.to_text(qa)).collect()
}

#[test]
fn string_counts() {
    for (spec, n) in [(A2, 3), (SOURCE_SINK, 6), (LOOP_TAIL, 7)] {
        assert_eq!(enumerate_strings(&q(spec)).unwrap().len(), n, "{spec}");
    }
}

#[test]
fn kronecker_is_string_algebra_but_not_colocal() {
    let kr = q(KRONECKER);
    assert!(kr.is_string_algebra().passed);
    let r = analyze(&kr).unwrap();
    assert!(!r.colocal && !r.c1.passed && r.kronecker);
    assert_eq!(texts(&kr, &detect_bands(&kr, 4).unwrap()), ["a b~"]);
    assert!(matches!(
        enumerate_strings(&kr),
        Err(StringError::Unbounded { .. })
    ));
}

#[test]
fn oriented_two_cycle_without_relations_is_one_band() {
    let qa = q("vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1");
    assert!(!qa.is_admissible());
    assert_eq!(detect_bands(&qa, 6).unwrap().len(), 1);
}

#[test]
fn colocal_corpus_has_no_bands_and_thin_actions() {
    let cfg = CorpusConfig {
        max_relations: 3,
        random: 0,
        ..CorpusConfig::default()
    };
    for m in generate_corpus(&cfg) {
        if m.algebra.is_colocal_type_structural().passed {
            assert!(detect_bands(&m.algebra, 8).unwrap().is_empty(), "{}", m.id);
            for w in enumerate_strings(&m.algebra).unwrap() {
                let module = m.algebra.string_module(&w);
                for p in 0..module.length() {
                    let moved = module.actions.iter().filter(|a| a.from == p).count();
                    assert!(moved <= 1, "{} {}", m.id, w.to_text(&m.algebra));
                }
            }
        }
    }
}

#[test]
fn loop_tail_profile_and_maximal_word() {
    let lt = q(LOOP_TAIL);
    let p = lt.vertex_path_profile(1).unwrap();
    assert_eq!((p.k, p.l), (2, 1));
    assert_eq!(p.path_k_names, ["b", "a"]);
    let w = maximal_colocal_module(&lt, 1).unwrap();
    let m = lt.string_module(&w);
    assert_eq!(m.length(), 4);
    assert!(m.has_simple_socle());
    assert_eq!(m.socle_vertices(), [1]);
}

#[test]
fn submodule_examples_over_a2() {
    let a2 = q(A2);
    let e1 = StringWord::parse(&a2, "e1").unwrap();
    let e2 = StringWord::parse(&a2, "e2").unwrap();
    let a = StringWord::parse(&a2, "a").unwrap();
    assert!(a2.is_submodule(&e2, &a));
    assert!(!a2.is_submodule(&e1, &a));
    let poset = submodule_poset(&a2, &enumerate_strings(&a2).unwrap()).unwrap();
    assert_eq!(poset.covers().len(), 1);
}

#[test]
fn loop_tail_submodule_poset_is_point_plus_grid() {
    let lt = q(LOOP_TAIL);
    let poset = submodule_poset(&lt, &enumerate_strings(&lt).unwrap()).unwrap();
    let sizes: Vec<usize> = poset.components().iter().map(Vec::len).collect();
    assert_eq!(sizes.iter().copied().max(), Some(6));
    assert_eq!(sizes.len(), 2);
    let grid = downset_lattice(&FinitePoset::grid(3, 2), DEFAULT_MAX_SIZE).unwrap();
    assert_eq!(grid.len(), 10);
}

#[test]
fn lattice_sizes_both_routes() {
    for (spec, size) in [(A2, 6u32), (SOURCE_SINK, 24), (LOOP_TAIL, 20)] {
        let qa = q(spec);
        let r = verify_main_theorem(&qa, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(r.brute_size, size as usize);
        assert_eq!(r.structural_size, size.into());
        assert_eq!(r.witness.via, "join-irreducibles");
    }
    let single_loop = q("vertices: 1\narrow a: 1 -> 1\nrelation a a");
    assert_eq!(
        verify_main_theorem(&single_loop, DEFAULT_MAX_SIZE)
            .unwrap()
            .brute_size,
        3
    );
}

#[test]
fn two_arms_meeting_contribute_y33() {
    let qa = q(TWO_ARMS);
    let r = analyze(&qa).unwrap();
    let last = r.factors.last().unwrap();
    assert_eq!((last.m, last.n), (3, 3));
    assert_eq!(r.lattice_size, Some(720u32.into()));
    assert_eq!(
        verify_main_theorem(&qa, DEFAULT_MAX_SIZE)
            .unwrap()
            .brute_size,
        720
    );
}

#[test]
fn factored_product_against_down_sets() {
    let s = product(vec![
        Factor::young("Y22", 2, 2),
        Factor::young("c1", 1, 1),
        Factor::young("c2", 1, 1),
    ]);
    assert_eq!(s.size(), 24u32.into());
    let grid_plus_point =
        FinitePoset::disjoint_union(&[&FinitePoset::grid(3, 2), &FinitePoset::chain(1)]);
    let d = downset_lattice(&grid_plus_point, DEFAULT_MAX_SIZE).unwrap();
    let y32 =
        Factor::from_lattice("Y32", young_box_lattice(3, 2, DEFAULT_MAX_SIZE).unwrap()).unwrap();
    let p = product(vec![y32, Factor::young("c", 1, 1)]);
    assert!(are_isomorphic(&d.into(), &p.into(), DEFAULT_MAX_SIZE)
        .unwrap()
        .is_some());
}

#[test]
fn young_small_cases() {
    let y22 = young_box_lattice(2, 2, DEFAULT_MAX_SIZE).unwrap();
    let mut labels = y22.labels().to_vec();
    labels.sort();
    assert_eq!(labels, ["(0)", "(1)", "(1,1)", "(2)", "(2,1)", "(2,2)"]);
    let y21 = young_box_lattice(2, 1, DEFAULT_MAX_SIZE).unwrap();
    assert_eq!(hasse_lines(&y21), ["(0) -> (1)", "(1) -> (1,1)"]);
    let y33 = young_box_lattice(3, 3, DEFAULT_MAX_SIZE).unwrap();
    let lines = hasse_lines(&y33);
    assert_eq!(
        lines.iter().filter(|l| l.ends_with("-> (3,3,3)")).count(),
        1
    );
    let above_21: Vec<&str> = lines
        .iter()
        .filter_map(|l| l.strip_prefix("(2,1) -> "))
        .collect();
    assert_eq!(above_21, ["(2,1,1)", "(2,2)", "(3,1)"]);
}

#[test]
fn both_routes_refuse_kronecker() {
    let kr = q(KRONECKER);
    assert!(structural_lattice(&kr).is_err());
    assert!(brute_force_lattice(&kr, DEFAULT_MAX_SIZE).is_err());
}

#[test]
fn young_lattices_are_distributive() {
    for (m, n) in [(2, 2), (3, 3), (1, 4)] {
        let l = young_box_lattice(m, n, DEFAULT_MAX_SIZE).unwrap();
        assert!(is_distributive(&l).unwrap().is_none());
    }
}

#[test]
fn socle_classes() {
    for (spec, sizes) in [
        (A2, vec![1, 2]),
        (SOURCE_SINK, vec![1, 1, 4]),
        (LOOP_TAIL, vec![1, 6]),
    ] {
        let r = verify_partition_m(&q(spec)).unwrap();
        assert!(r.passed());
        let got: Vec<usize> = r.classes.iter().map(|c| c.strings.len()).collect();
        assert_eq!(got, sizes, "{spec}");
    }
}

#[test]
fn tau_examples() {
    let t = tau_sets(&q(LOOP_TAIL), 1).unwrap();
    assert_eq!(t.tau.into_iter().collect::<Vec<_>>(), [VertexId::new("1")]);
    let killed = q("vertices: 1 2\narrow b: 1 -> 2\narrow a: 2 -> 2\nrelation a a\nrelation b a");
    assert!(tau_sets(&killed, 1).unwrap().tau.is_empty());
}

#[test]
fn union_property_small() {
    for (spec, pairs) in [(A2, 36), (LOOP_TAIL, 400)] {
        let l = brute_force_lattice(&q(spec), DEFAULT_MAX_SIZE).unwrap();
        let r = check_union_property(&l, 1000, 0, 0).unwrap();
        assert!(r.passed() && r.exhaustive);
        assert_eq!(r.pairs, pairs);
    }
}

#[test]
fn finite_lattice_sizes_agree() {
    let l: FiniteLattice = structural_lattice(&q(LOOP_TAIL)).unwrap().into();
    assert_eq!(l.size(), 20u32.into());
    assert_eq!(l.materialize(DEFAULT_MAX_SIZE).unwrap().len(), 20);
}
