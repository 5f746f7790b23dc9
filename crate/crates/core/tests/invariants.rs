//! Cross-module invariants beyond the acceptance criteria: route agreement
//! on whole groups, graph lengths against BFS depth, commutation descents,
//! and join algebra on sampled triples.

use coxchar::verify::{check_commutation_descents, check_fourway};
use coxchar::{GenSet, Model, WeakOrderPoset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn four_routes_agree_on_whole_groups() {
    // poset oracle, subset sum, interval decomposition at (e, w0), and
    // series extraction; A up to rank 6 is S_7 with 5040 elements
    let groups = [
        Model::A(2),
        Model::A(3),
        Model::A(4),
        Model::A(5),
        Model::A(6),
        Model::B(2),
        Model::B(3),
        Model::B(4),
        Model::D(2),
        Model::D(3),
        Model::D(4),
    ];
    let report = check_fourway(&groups, None).unwrap();
    assert!(report.passed, "{}", report.failures.join("\n"));
}

#[test]
fn graph_parabolic_lengths_match_bfs_depth() {
    // the combinatorial l(w0(J)) from the graph equals the BFS rank of the
    // greedily built longest element in the enumerated weak order
    let groups = [
        Model::A(4),
        Model::A(5),
        Model::A(6),
        Model::B(3),
        Model::B(4),
        Model::D(3),
        Model::D(4),
    ];
    for model in groups {
        let graph = model.graph();
        let poset = WeakOrderPoset::build(model, None).unwrap();
        let gens: Vec<usize> = model.generators().iter().collect();
        for mask in 0..(1u32 << gens.len()) {
            let j_set: GenSet = gens
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, &g)| g)
                .collect();
            let idx = poset.longest_parabolic(j_set).unwrap();
            assert_eq!(
                poset.rank_of(idx) as u64,
                graph.parabolic_w0_length(j_set).unwrap(),
                "{model}, J = {j_set}"
            );
        }
    }
}

#[test]
fn commutation_descent_property_exhaustive() {
    let report = check_commutation_descents(&[Model::A(4), Model::B(3)], None).unwrap();
    assert!(report.passed, "{}", report.failures.join("\n"));
    // A_4 and B_3 together have a few hundred disjoint-support pairs
    assert!(
        report.cases > 300,
        "expected many disjoint-support pairs, got {}",
        report.cases
    );
}

#[test]
fn join_is_a_semilattice_operation_on_sampled_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for model in [Model::A(4), Model::B(3)] {
        let poset = WeakOrderPoset::build(model, None).unwrap();
        let join = |x: usize, y: usize| poset.structure.join(x, y).unwrap();
        for _ in 0..200 {
            let x = rng.gen_range(0..poset.len());
            let y = rng.gen_range(0..poset.len());
            let z = rng.gen_range(0..poset.len());
            assert_eq!(join(x, y), join(y, x));
            assert_eq!(join(x, x), x);
            assert_eq!(join(join(x, y), z), join(x, join(y, z)));
            let meet = poset.structure.meet(x, y).unwrap();
            assert_eq!(poset.structure.join(meet, x).unwrap(), x);
        }
    }
}

#[test]
fn lower_interval_isomorphism_on_sampled_a4_pairs() {
    let poset = WeakOrderPoset::build(Model::A(4), None).unwrap();
    let up = poset.structure.up_closure();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (u, upset) in up.iter().enumerate() {
        pairs.extend(upset.iter_ones().map(|w| (u, w)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let (u, w) = pairs[rng.gen_range(0..pairs.len())];
        assert!(
            poset.lower_interval_isomorphism_check(u, w).unwrap(),
            "u={u} w={w}"
        );
    }
}

#[test]
fn finished_posets_are_safe_to_query_from_many_threads() {
    // construction never overlaps queries; afterwards concurrent readers
    // must observe consistent results through the shared closure caches
    let poset = WeakOrderPoset::build(Model::A(4), None).unwrap();
    let expected = poset.char_poly();
    std::thread::scope(|scope| {
        for worker in 0..8usize {
            let poset = &poset;
            let expected = &expected;
            scope.spawn(move || {
                assert_eq!(&poset.structure.char_poly(), expected);
                let x = (worker * 17) % poset.len();
                let y = (worker * 41 + 3) % poset.len();
                let join = poset.structure.join(x, y).unwrap();
                assert_eq!(poset.structure.join(y, x).unwrap(), join);
                assert!(poset.structure.is_leq(x, join));
            });
        }
    });
}

#[test]
fn interval_ranks_rebased_from_bottom() {
    let poset = WeakOrderPoset::build(Model::B(3), None).unwrap();
    let up = poset.structure.up_closure();
    let mut count = 0;
    for (u, upset) in up.iter().enumerate() {
        for w in upset.iter_ones() {
            let interval = poset.interval(u, w).unwrap();
            assert_eq!(interval.rank_of(interval.bottom()), 0);
            let expected = poset.rank_of(w) - poset.rank_of(u);
            assert_eq!(interval.structure.poset_rank(), expected);
            count += 1;
        }
    }
    assert!(count > 100);
}
