mod common;

use common::{program, FIXTURE_PAIRS, ROUND_CAP};
use eolab_core::oracle::{brute_force_prefixes, brute_force_witness};
use eolab_core::search::{
    compare_native, search_eo_witness, search_prefixes, search_uniform_witness, verify_witness,
    Relation, SearchBudget, SearchStatus,
};
use eolab_core::vm::native_prefix;
use eolab_core::ListingPrefix;

const BIG_BUDGET: u64 = 10_000_000;

#[test]
fn pruned_search_agrees_with_brute_force() {
    for &(a, b) in FIXTURE_PAIRS {
        let (pa, pb) = (program(a), program(b));
        for k in 1..=6 {
            for w in 1..=3 {
                let budget = SearchBudget::new(k, w, BIG_BUDGET, ROUND_CAP).unwrap();
                for relation in [Relation::EoLeq, Relation::Uniform] {
                    let fast = match relation {
                        Relation::EoLeq => search_eo_witness(&pa, &pb, &budget).unwrap(),
                        Relation::Uniform => search_uniform_witness(&pa, &pb, &budget).unwrap(),
                    };
                    let slow = brute_force_witness(&pa, &pb, k, w, relation, ROUND_CAP).unwrap();
                    let ctx = format!("{a} vs {b}, k={k}, w={w}, {relation:?}");
                    assert_eq!(fast.status, slow.status, "{ctx}");
                    assert_eq!(fast.witness, slow.witness, "{ctx}");
                    assert_eq!(fast.prefixes, slow.prefixes, "{ctx}");
                    if let Some(witness) = &fast.witness {
                        let na = native_prefix(&pa, k, ROUND_CAP).unwrap();
                        let nb = native_prefix(&pb, k, ROUND_CAP).unwrap();
                        assert!(
                            verify_witness(&na, &nb, k, relation, witness).unwrap(),
                            "{ctx}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn wide_windows_always_find_witnesses() {
    for &(a, b) in FIXTURE_PAIRS {
        for k in 1..=6 {
            for w in k..=k + 1 {
                let budget = SearchBudget::new(k, w, BIG_BUDGET, ROUND_CAP).unwrap();
                let (pa, pb) = (program(a), program(b));
                assert_eq!(
                    search_eo_witness(&pa, &pb, &budget).unwrap().status,
                    SearchStatus::WitnessFound
                );
                assert_eq!(
                    search_uniform_witness(&pa, &pb, &budget).unwrap().status,
                    SearchStatus::WitnessFound
                );
            }
        }
    }
}

#[test]
fn monotone_in_window_and_uniform_implies_eo() {
    for &(a, b) in FIXTURE_PAIRS {
        let (pa, pb) = (program(a), program(b));
        for k in 1..=7 {
            let mut found_at = [None, None];
            for w in 1..=4 {
                let budget = SearchBudget::new(k, w, BIG_BUDGET, ROUND_CAP).unwrap();
                let eo = search_eo_witness(&pa, &pb, &budget).unwrap();
                let un = search_uniform_witness(&pa, &pb, &budget).unwrap();
                assert_ne!(eo.status, SearchStatus::BudgetExceeded);
                if un.status == SearchStatus::WitnessFound {
                    assert_eq!(eo.status, SearchStatus::WitnessFound);
                }
                for (slot, report) in found_at.iter_mut().zip([&eo, &un]) {
                    if report.status == SearchStatus::WitnessFound {
                        slot.get_or_insert(w);
                    } else {
                        assert!(slot.is_none(), "{a} vs {b}: lost witness at k={k}, w={w}");
                    }
                }
            }
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let (pa, pb) = (program("countdown"), program("staggered"));
    let budget = SearchBudget::new(7, 3, BIG_BUDGET, ROUND_CAP).unwrap();
    let first = search_eo_witness(&pa, &pb, &budget).unwrap();
    let second = search_eo_witness(&pa, &pb, &budget).unwrap();
    assert_eq!(first, second);
    assert_eq!(first.to_json(), second.to_json());
}

#[test]
fn pruning_explores_fewer_nodes_than_brute_force() {
    let a = ListingPrefix::new(vec![0, 1, 2, 3, 4, 5]).unwrap();
    let b = ListingPrefix::new(vec![5, 4, 3, 2, 1, 0]).unwrap();
    let fast = search_prefixes(&a, &b, 6, 3, BIG_BUDGET, Relation::Uniform).unwrap();
    let slow = brute_force_prefixes(&a, &b, 6, 3, Relation::Uniform).unwrap();
    assert_eq!(fast.status, SearchStatus::SpaceExhausted);
    assert_eq!(slow.status, SearchStatus::SpaceExhausted);
    assert_eq!(slow.nodes_explored, 3u64.pow(12));
    assert!(fast.nodes_explored < slow.nodes_explored / 10);
}

#[test]
fn self_comparison_is_uniform() {
    for name in ["evens", "countdown", "zigzag"] {
        let p = program(name);
        for k in [1, 4, 8] {
            let cmp = compare_native(&p, &p, k, ROUND_CAP).unwrap();
            assert!(cmp.uniform && cmp.a_leq_b && cmp.b_leq_a);
        }
        let budget = SearchBudget::new(5, 2, 1000, ROUND_CAP).unwrap();
        let r = search_eo_witness(&p, &p, &budget).unwrap();
        assert_eq!(r.status, SearchStatus::WitnessFound);
        assert_eq!(r.witness.unwrap().0.choices, vec![0; 5]);
    }
}

#[test]
fn native_comparison_of_evens_and_countdown() {
    let cmp = compare_native(&program("evens"), &program("countdown"), 4, ROUND_CAP).unwrap();
    // countdown natively emits 10, 11, 9, 12
    assert_eq!(cmp.pattern_b.ranks(), &[1, 2, 0, 3]);
    assert!(!cmp.a_leq_b);
    assert_eq!(cmp.a_leq_b_violation, Some((0, 2)));
    assert!(cmp.b_leq_a);
}

#[test]
fn fixtures_cover_both_outcomes() {
    let mut found = 0;
    let mut exhausted = 0;
    for &(a, b) in FIXTURE_PAIRS {
        let (pa, pb) = (program(a), program(b));
        for k in 1..=6 {
            for w in 1..=3 {
                for relation in [Relation::EoLeq, Relation::Uniform] {
                    match brute_force_witness(&pa, &pb, k, w, relation, ROUND_CAP)
                        .unwrap()
                        .status
                    {
                        SearchStatus::WitnessFound => found += 1,
                        SearchStatus::SpaceExhausted => exhausted += 1,
                        SearchStatus::BudgetExceeded => unreachable!(),
                    }
                }
            }
        }
    }
    assert_eq!(found + exhausted, FIXTURE_PAIRS.len() * 36);
    assert!(exhausted >= 20, "only {exhausted} refutations");
    assert!(found >= 20);
}
