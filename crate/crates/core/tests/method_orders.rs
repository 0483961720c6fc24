//! Order-level behaviour: scenarios, candidate orders, solving and prime graphs.

mod common;

use torsion_units::chartab::{load_table, CharacterTable};
use torsion_units::method::{
    candidate_orders, prime_graph_compare, CharSelector, processing_order, scenario_count, scenarios, solve_order, MethodError,
    PAVector, SolutionStore, SolveOptions, Verdict,
};

fn table(name: &str) -> CharacterTable {
    load_table(common::fixture(&format!("tables/{name}.json"))).unwrap()
}

/// `n` distinct vectors over `classes`, each summing to 1.
fn dummies(order: u64, classes: Vec<String>, n: usize) -> Vec<PAVector> {
    let w = classes.len();
    (0..n as i64)
        .map(|i| {
            let mut v = vec![0; w];
            if w == 1 {
                v[0] = 1;
            } else {
                v[0] = i;
                v[w - 1] = 1 - i;
            }
            PAVector::new(order, classes.clone(), v)
        })
        .collect()
}

fn solve_all(t: &CharacterTable, orders: &[u64]) -> SolutionStore {
    let mut store = SolutionStore::new();
    for k in processing_order(orders) {
        let out = solve_order(t, k, &store, &SolveOptions::default()).unwrap();
        store.insert(k, out.solutions);
    }
    store
}

#[test]
fn order_30_scenario_product() {
    let t = table("j1_skeleton");
    let mut store = SolutionStore::new();
    for (m, n) in [(2, 1), (3, 1), (5, 4), (6, 6), (10, 12), (15, 4)] {
        store.insert(m, dummies(m, t.classes_of_order_dividing(m), n));
    }
    assert_eq!(scenario_count(&store, 30).unwrap(), 1152);
    let set = scenarios(&store, 30, None).unwrap();
    assert_eq!(set.scenarios.len(), 1152);
    assert!(!set.is_killed_by_power());
}

#[test]
fn candidate_orders_of_skeletons() {
    let j1 = candidate_orders(&table("j1_skeleton"));
    assert_eq!(j1, vec![2, 3, 5, 6, 7, 10, 11, 15, 19, 14, 21, 22, 30, 33, 35, 38, 55, 57, 77, 95, 133, 209]);
    let j2 = candidate_orders(&table("j2_skeleton"));
    assert_eq!(j2, vec![2, 3, 4, 5, 6, 7, 8, 10, 12, 15, 14, 20, 21, 24, 30, 35]);
    assert_eq!(candidate_orders(&table("c5")), vec![5]);
    assert_eq!(processing_order(&j1)[..4], [2, 3, 5, 6]);
}

#[test]
fn order_5_fragment() {
    let t = table("j1_mod11_order5");
    let out = solve_order(&t, 5, &SolutionStore::new(), &SolveOptions::default()).unwrap();
    let got: Vec<Vec<i64>> = out.solutions.iter().map(|p| p.values.clone()).collect();
    assert_eq!(got, vec![vec![-1, 2], vec![0, 1], vec![1, 0], vec![2, -1]]);
    assert_eq!((out.trivial, out.nontrivial), (2, 2));
    assert_eq!(out.classes, vec!["5a", "5b"]);
}

#[test]
fn order_19_fragment() {
    let t = table("j1_mod11_order19");
    let out = solve_order(&t, 19, &SolutionStore::new(), &SolveOptions::default()).unwrap();
    assert_eq!(out.solutions.len(), 3);
    assert_eq!(out.trivial, 3);
}

#[test]
fn order_33_fragment_is_killed() {
    let t = table("j1_order33");
    let store = solve_all(&t, &[3, 11]);
    assert_eq!(store.get(3).unwrap().len(), 1);
    let out = solve_order(&t, 33, &store, &SolveOptions::default()).unwrap();
    assert!(out.solutions.is_empty());
    assert_eq!(out.killed_by.len(), 1);
    assert!(!out.killed_by[0].is_empty());
    assert!(out.killed_by[0].iter().all(|l| l.character == "chi6" || l.character == "chi7"));
}

#[test]
fn cyclic_groups_have_only_trivial_units() {
    let c5 = table("c5");
    let out = solve_order(&c5, 5, &SolutionStore::new(), &SolveOptions::default()).unwrap();
    assert_eq!(out.solutions.len(), 4);
    assert_eq!(out.trivial, 4);

    let c6 = table("c6");
    let store = solve_all(&c6, &candidate_orders(&c6));
    for (k, n) in [(2, 1), (3, 2), (6, 2)] {
        let set = store.get(k).unwrap();
        assert_eq!(set.len(), n, "order {k}");
        assert!(set.iter().all(|p| p.is_trivial()));
    }
}

#[test]
fn restricted_selection_is_weaker() {
    let t = table("j1_mod11_order5");
    let full = solve_order(&t, 5, &SolutionStore::new(), &SolveOptions::default()).unwrap();
    let opts = SolveOptions { selection: CharSelector::parse("chi2@11").unwrap(), max_abs: Some(6), ..SolveOptions::default() };
    let part = solve_order(&t, 5, &SolutionStore::new(), &opts).unwrap();
    assert!(full.solutions.iter().all(|s| part.solutions.contains(s)));
}

#[test]
fn c6_prime_graph() {
    let t = table("c6");
    let store = solve_all(&t, &candidate_orders(&t));
    let r = prime_graph_compare(&t, &store).unwrap();
    assert_eq!(r.verdict, Verdict::Equal);
    assert_eq!(r.group_edges, vec![(2, 3)]);
    assert_eq!(r.unit_edges, vec![(2, 3)]);
}

fn killed(orders: &[u64]) -> SolutionStore {
    let mut s = SolutionStore::new();
    for &o in orders {
        s.insert(o, Vec::new());
    }
    s
}

#[test]
fn skeleton_prime_graphs() {
    let j1 = table("j1_skeleton");
    let r = prime_graph_compare(&j1, &killed(&[14, 21, 22, 33, 35, 38, 55, 57, 77, 95, 133, 209])).unwrap();
    assert_eq!(r.verdict, Verdict::Equal);
    assert_eq!(r.group_edges, vec![(2, 3), (2, 5), (3, 5)]);

    let j2 = table("j2_skeleton");
    assert_eq!(prime_graph_compare(&j2, &killed(&[14, 21, 35])).unwrap().verdict, Verdict::Equal);
    let err = prime_graph_compare(&j2, &killed(&[14, 21])).unwrap_err();
    assert!(matches!(err, MethodError::IncompleteResults { p: 5, q: 7 }));

    let mut fake = killed(&[14, 35]);
    fake.insert(21, dummies(21, j2.classes_of_order_dividing(21), 1));
    let r = prime_graph_compare(&j2, &fake).unwrap();
    assert_eq!(r.verdict, Verdict::Extra);
    assert_eq!(r.extra_edges, vec![(3, 7)]);
}
