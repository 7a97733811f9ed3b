use domcheck_core::corpus::{all_graphs_up_to, random_batch};
use domcheck_core::domination::{
    gamma_exact, gamma_roman_exact, is_rdf, RomanFunction, SolverBudget,
};
use domcheck_core::families::{random_graph, Family};
use domcheck_core::lemmas::{check_lemma1, check_lemma2};
use domcheck_core::oracle::{
    brute_force_gamma, brute_force_gamma_roman, brute_force_min_weight_with_twos,
};
use domcheck_core::{Graph, VertexSet};

fn budget() -> SolverBudget {
    SolverBudget::default()
}

#[test]
fn derived_values_from_oracles() {
    // Frozen from the exhaustive oracles, then checked against the solvers.
    let p4 = Family::Path(4).build().unwrap();
    assert_eq!(brute_force_gamma(&p4).unwrap(), 2);
    assert_eq!(gamma_exact(&p4, budget()).unwrap().value, 2);

    let petersen = Family::Petersen.build().unwrap();
    assert_eq!(brute_force_gamma(&petersen).unwrap(), 3);
    assert_eq!(gamma_exact(&petersen, budget()).unwrap().value, 3);
    assert_eq!(brute_force_gamma_roman(&petersen).unwrap(), 6);
    assert_eq!(gamma_roman_exact(&petersen, budget()).unwrap().value, 6);

    let p7 = Family::Path(7).build().unwrap();
    assert_eq!(brute_force_gamma_roman(&p7).unwrap(), 5);
    assert_eq!(gamma_roman_exact(&p7, budget()).unwrap().value, 5);

    let c5 = Family::Cycle(5).build().unwrap();
    assert_eq!(gamma_exact(&c5, budget()).unwrap().value, 2);
    assert_eq!(gamma_roman_exact(&c5, budget()).unwrap().value, 4);

    let c4 = Family::Cycle(4).build().unwrap();
    assert_eq!(brute_force_gamma(&c4).unwrap(), 2);
    assert_eq!(brute_force_gamma_roman(&c4).unwrap(), 3);
}

#[test]
fn oracle_equivalence_on_small_corpus() {
    for g in all_graphs_up_to(5, false).unwrap() {
        assert_eq!(
            gamma_exact(&g, budget()).unwrap().value,
            brute_force_gamma(&g).unwrap(),
            "{g:?}"
        );
        assert_eq!(
            gamma_roman_exact(&g, budget()).unwrap().value,
            brute_force_gamma_roman(&g).unwrap(),
            "{g:?}"
        );
    }
    for (fam, g) in random_batch(30, 6, 10, 1000) {
        assert_eq!(
            gamma_exact(&g, budget()).unwrap().value,
            brute_force_gamma(&g).unwrap(),
            "{fam}"
        );
        assert_eq!(
            gamma_roman_exact(&g, budget()).unwrap().value,
            brute_force_gamma_roman(&g).unwrap(),
            "{fam}"
        );
    }
}

#[test]
fn witnesses_certify() {
    for (fam, g) in random_batch(40, 3, 12, 77) {
        let r = gamma_exact(&g, budget()).unwrap();
        assert_eq!(r.witness.len(), r.value, "{fam}");
        assert!(g.is_dominating(&r.witness).unwrap(), "{fam}");
        let r = gamma_roman_exact(&g, budget()).unwrap();
        assert_eq!(r.witness.weight(), r.value, "{fam}");
        assert!(is_rdf(&g, &r.witness).unwrap(), "{fam}");
    }
}

#[test]
fn completion_is_optimal_for_fixed_twos() {
    // For every S on small graphs, the best RDF with V_2 = S weighs
    // 2|S| + (n - |N[S]|); checked against the 3^n scan.
    for (fam, g) in random_batch(12, 3, 7, 5) {
        let n = g.order();
        for mask in 0u32..(1 << n) {
            let s = VertexSet::from_iter_in(n, (0..n).filter(|v| mask >> v & 1 == 1));
            let closed = g.closed_neighborhood_of_set(&s).unwrap();
            let formula = 2 * s.len() + n - closed.len();
            assert_eq!(
                brute_force_min_weight_with_twos(&g, &s).unwrap(),
                formula,
                "{fam} S={s}"
            );
            let f = RomanFunction::completing(&g, &s).unwrap();
            assert!(is_rdf(&g, &f).unwrap());
            assert_eq!(f.weight(), formula);
        }
    }
    // one n = 8 instance
    let g = random_graph(8, 0.35, 11);
    for mask in [0u32, 1, 0b1010_0101, 0xff, 0b0001_1000] {
        let s = VertexSet::from_iter_in(8, (0..8).filter(|v| mask >> v & 1 == 1));
        let formula = 2 * s.len() + 8 - g.closed_neighborhood_of_set(&s).unwrap().len();
        assert_eq!(brute_force_min_weight_with_twos(&g, &s).unwrap(), formula);
    }
}

#[test]
fn adding_edges_never_increases_either_number() {
    for seed in 0..6u64 {
        let n = 9;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut prev = (usize::MAX, usize::MAX);
        // a fixed pseudo-random edge order from a G(n, 1) shuffle
        let order: Vec<(usize, usize)> = {
            let mut all: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .collect();
            let mut x = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            for i in (1..all.len()).rev() {
                x = x
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                all.swap(i, (x >> 33) as usize % (i + 1));
            }
            all
        };
        for e in order.into_iter().take(20) {
            edges.push(e);
            let g = Graph::new(n, edges.clone()).unwrap();
            let now = (
                gamma_exact(&g, budget()).unwrap().value,
                gamma_roman_exact(&g, budget()).unwrap().value,
            );
            assert!(
                now.0 <= prev.0 && now.1 <= prev.1,
                "seed {seed}: {prev:?} -> {now:?}"
            );
            prev = now;
        }
    }
}

#[test]
fn isolated_vertices_are_forced() {
    for (fam, g) in random_batch(60, 4, 10, 300) {
        let isolated = g.isolated_vertices();
        if isolated.is_empty() {
            continue;
        }
        let r = gamma_exact(&g, budget()).unwrap();
        assert!(isolated.is_subset(&r.witness), "{fam}");
        let r = gamma_roman_exact(&g, budget()).unwrap();
        assert!(isolated.iter().all(|v| r.witness.label(v) >= 1), "{fam}");
    }
}

#[test]
fn lemma_checks_on_families() {
    for fam in [
        Family::Path(6),
        Family::Cycle(7),
        Family::Star(5),
        Family::CompleteBipartite(2, 3),
        Family::Petersen,
    ] {
        let g = fam.build().unwrap();
        assert!(check_lemma1(&g, budget()).unwrap().holds, "{fam}");
        let f = gamma_roman_exact(&g, budget()).unwrap().witness;
        assert!(check_lemma2(&g, &f, budget()).unwrap().holds(), "{fam}");
    }
}
