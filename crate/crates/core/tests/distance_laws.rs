use buctest_core::exact::{
    buc_membership_bruteforce, check_distance_composition, distance_to_buc, distance_to_ld,
    is_blowup_collection, ld_excess_bounds, CompositionChecker,
};
use buctest_core::graph::Graph;
use proptest::prelude::*;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn bases() -> [Graph; 4] {
    [Graph::complete(2), Graph::complete(3), Graph::path(3), Graph::cycle(4)]
}

/// Pair masks of all members on `n` vertices, found through the brute-force
/// definition.
fn members(hi: usize, n: usize) -> Vec<u64> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Vec<u64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(hi, n)) {
        return v.clone();
    }
    let h = &bases()[hi];
    let pairs = n * n.saturating_sub(1) / 2;
    let v: Vec<u64> = (0..1u64 << pairs)
        .filter(|&m| buc_membership_bruteforce(&Graph::from_pair_mask(n, m), h).unwrap().is_some())
        .collect();
    cache.lock().unwrap().insert((hi, n), v.clone());
    v
}

fn buc_oracle(g: &Graph, hi: usize) -> usize {
    let m = g.pair_mask();
    members(hi, g.n()).iter().map(|x| (x ^ m).count_ones() as usize).min().unwrap()
}

fn ld_oracle(g: &Graph, bound: usize) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best = edges.len();
    for keep in 0..1u32 << edges.len() {
        let mut deg = vec![0; g.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if keep >> i & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        if deg.iter().all(|&d| d <= bound) {
            best = best.min(edges.len() - keep.count_ones() as usize);
        }
    }
    best
}

fn graph_upto(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (0..1u64 << pairs).prop_map(move |m| Graph::from_pair_mask(n, m))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn buc_distance_matches_oracle(g in graph_upto(6), hi in 0..4usize) {
        let d = distance_to_buc(&g, &bases()[hi]).unwrap();
        prop_assert_eq!(d, buc_oracle(&g, hi));
        prop_assert_eq!(d == 0, is_blowup_collection(&g, &bases()[hi]).is_some());
        // the empty graph is always a member
        prop_assert!(d <= g.edge_count());
    }

    #[test]
    fn buc_distance_is_one_lipschitz(g in graph_upto(7), hi in 0..4usize, u in 0..7usize, v in 0..7usize) {
        let (u, v) = (u % g.n(), v % g.n());
        prop_assume!(u != v);
        let h = &bases()[hi];
        let a = distance_to_buc(&g, h).unwrap();
        let b = distance_to_buc(&g.with_pair_toggled(u, v).unwrap(), h).unwrap();
        prop_assert!(a.abs_diff(b) <= 1);
    }

    #[test]
    fn ld_distance_matches_oracle(g in graph_upto(6), bound in 0..5usize) {
        let d = distance_to_ld(&g, bound).unwrap();
        prop_assert_eq!(d, ld_oracle(&g, bound));
        let (lo, hi) = ld_excess_bounds(&g, bound);
        prop_assert!(lo <= d && d <= hi);
        prop_assert_eq!(d == 0, g.max_degree() <= bound);
    }

    #[test]
    fn ld_distance_shrinks_with_the_bound(g in graph_upto(8), bound in 0..6usize) {
        prop_assert!(distance_to_ld(&g, bound + 1).unwrap() <= distance_to_ld(&g, bound).unwrap());
    }

    #[test]
    fn intersection_distance_dominates_both(g in graph_upto(6), bound in 0..5usize) {
        let k3 = Graph::complete(3);
        let checker = CompositionChecker::new(&k3, g.n()).unwrap();
        let d = checker.distance_to_intersection(&g, bound);
        prop_assert!(d >= distance_to_buc(&g, &k3).unwrap());
        prop_assert!(d >= distance_to_ld(&g, bound).unwrap());
    }

    #[test]
    fn composition_implication_holds(g in graph_upto(6), ei in 0..3usize) {
        let eps = [0.2, 0.4, 0.8][ei];
        prop_assert!(check_distance_composition(&g, &Graph::complete(3), eps, 2.0).unwrap());
    }
}
