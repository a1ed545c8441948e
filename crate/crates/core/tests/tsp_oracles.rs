//! Tour construction and local search checked against exhaustive search.

use onion_core::construct::best_splice;
use onion_core::tsp::canonicalize;
use onion_core::{
    brute_force, convex_layers_fast, distance, gen_circle, gen_random, has_crossings, held_karp,
    layer_merge, nearest_neighbor, splice, three_opt, tour_length, two_opt, validate_tour,
    ImproveConfig, Instance, MergeOrder, Metric, Point, Tour,
};
use proptest::prelude::*;

fn cycle_len(order: &[usize], inst: &Instance) -> f64 {
    let n = order.len();
    (0..n)
        .map(|i| inst.dist(order[i], order[(i + 1) % n]))
        .sum()
}

/// Every way of cutting one edge of each cycle and rejoining them.
fn all_merges(host: &[usize], guest: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let g = guest.len();
    for i in 0..host.len() {
        for k in 0..g {
            let rotated: Vec<usize> = (0..g).map(|t| guest[(k + t) % g]).collect();
            for rev in [false, true] {
                let mut seq = rotated.clone();
                if rev {
                    seq.reverse();
                }
                let mut m = host[..=i].to_vec();
                m.extend(&seq);
                m.extend(&host[i + 1..]);
                out.push(m);
            }
        }
    }
    out
}

fn instance(coords: &[(i32, i32)]) -> Instance {
    let pts: Vec<(f64, f64)> = coords.iter().map(|&(x, y)| (x as f64, y as f64)).collect();
    Instance::new("t", &pts, Metric::Euc2d).unwrap()
}

fn distinct_coords(max: usize) -> impl Strategy<Value = Vec<(i32, i32)>> {
    prop::collection::btree_set((0i32..60, 0i32..60), 4..max).prop_map(|s| s.into_iter().collect())
}

fn shuffled_tour(n: usize, seed: u64, inst: &Instance) -> Tour {
    let mut rng = onion_core::Rng::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.below(i + 1));
    }
    Tour::new(order, inst).unwrap()
}

#[test]
fn held_karp_agrees_with_brute_force() {
    for n in 3..=9 {
        for seed in 0..8 {
            let inst = gen_random(n, 1000 + seed).unwrap();
            let bf = brute_force(&inst).unwrap();
            let hk = held_karp(&inst).unwrap();
            assert!((bf.length - hk.length).abs() <= 1e-9 * bf.length);
            assert!((cycle_len(&bf.order, &inst) - bf.length).abs() < 1e-9);
        }
    }
}

#[test]
fn brute_force_beats_every_permutation_at_six() {
    let inst = gen_random(6, 77).unwrap();
    let bf = brute_force(&inst).unwrap();
    let mut best = f64::INFINITY;
    let mut perm = vec![0usize, 1, 2, 3, 4, 5];
    // Heap's algorithm over all 720 orders
    fn heap(k: usize, perm: &mut Vec<usize>, inst: &Instance, best: &mut f64) {
        if k == 1 {
            *best = best.min(cycle_len(perm, inst));
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, inst, best);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            perm.swap(j, k - 1);
        }
    }
    heap(6, &mut perm, &inst, &mut best);
    assert!((bf.length - best).abs() < 1e-9);
}

#[test]
fn nested_squares_merge_is_the_best_single_splice() {
    let inst = instance(&[
        (0, 0),
        (4, 0),
        (4, 4),
        (0, 4),
        (1, 1),
        (3, 1),
        (3, 3),
        (1, 3),
    ]);
    let layers = convex_layers_fast(&inst.points).unwrap();
    assert_eq!(layers.sizes(), vec![4, 4]);
    let merged = layer_merge(&inst, &layers, MergeOrder::OutermostFirst).unwrap();
    let best = all_merges(&layers.layers[0].vertex_ids, &layers.layers[1].vertex_ids)
        .iter()
        .map(|m| cycle_len(m, &inst))
        .fold(f64::INFINITY, f64::min);
    assert!((merged.length - best).abs() < 1e-9);
    assert!((merged.length - (18.0 + 2.0 * 2f64.sqrt())).abs() < 1e-9);
    // one splice cannot reach the zigzag optimum 12 + 4 sqrt 2; 3-opt can
    let opt = held_karp(&inst).unwrap();
    assert!((opt.length - (12.0 + 4.0 * 2f64.sqrt())).abs() < 1e-9);
    assert!(merged.length > opt.length + 1.0);
    let improved = three_opt(&merged, &inst, &ImproveConfig::default()).unwrap();
    assert!((improved.length - opt.length).abs() < 1e-9);
}

#[test]
fn three_opt_solves_four_cities() {
    let cfg = ImproveConfig::default();
    for seed in 0..30 {
        let inst = gen_random(4, seed).unwrap();
        let start = shuffled_tour(4, seed, &inst);
        let t = three_opt(&start, &inst, &cfg).unwrap();
        let bf = brute_force(&inst).unwrap();
        assert!((t.length - bf.length).abs() <= 1e-9 * bf.length);
    }
}

#[test]
fn two_opt_gap_is_nonnegative() {
    let inst = gen_random(10, 5).unwrap();
    let nn = nearest_neighbor(&inst, 0).unwrap();
    let t = two_opt(&nn, &inst, &ImproveConfig::default()).unwrap();
    let opt = held_karp(&inst).unwrap();
    assert!(t.length >= opt.length - 1e-9);
    assert!(t.length <= nn.length);
}

#[test]
fn nearest_neighbor_golden() {
    let inst = gen_random(50, 11).unwrap();
    let t = nearest_neighbor(&inst, 0).unwrap();
    validate_tour(&t, &inst).unwrap();
    assert_eq!(format!("{:.6}", t.length), NN_50_11);
}

// from an independent nearest-neighbour run over the same generator stream
const NN_50_11: &str = "5889.250925";

#[test]
fn convex_position_merges_to_the_hull() {
    for n in 5..=12 {
        let inst = gen_circle(n, n as u64).unwrap();
        let layers = convex_layers_fast(&inst.points).unwrap();
        assert_eq!(layers.len(), 1);
        let t = layer_merge(&inst, &layers, MergeOrder::OutermostFirst).unwrap();
        let opt = brute_force(&inst).or_else(|_| held_karp(&inst)).unwrap();
        assert!((t.length - opt.length).abs() <= 1e-9 * opt.length);
    }
}

#[test]
fn att_distance_rounds_up() {
    let a = Point::new(0, 0.0, 0.0);
    let b = Point::new(1, 10.0, 0.0);
    // sqrt(10) = 3.162..., rounds to 3 which is below, so 4
    assert_eq!(distance(&a, &b, Metric::Att), 4.0);
    let c = Point::new(2, 0.0, 30.0);
    // sqrt(90) = 9.486..., rounds to 9 which is below, so 10
    assert_eq!(distance(&a, &c, Metric::Att), 10.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn splice_is_the_cheapest_merge(
        coords in prop::collection::btree_set((0i32..40, 0i32..40), 4..14),
        cut in 1usize..100,
    ) {
        let coords: Vec<_> = coords.into_iter().collect();
        let inst = instance(&coords);
        let cut = 1 + cut % (coords.len() - 2);
        let host: Vec<usize> = (0..cut).collect();
        let guest: Vec<usize> = (cut..coords.len()).collect();
        let best = all_merges(&host, &guest)
            .iter()
            .map(|m| cycle_len(m, &inst))
            .fold(f64::INFINITY, f64::min);
        let merged = splice(&host, &guest, &inst).unwrap();
        prop_assert!((cycle_len(&merged, &inst) - best).abs() <= 1e-9 * best.max(1.0));
        let mv = best_splice(&host, &guest, &inst).unwrap();
        let predicted = cycle_len(&host, &inst) + cycle_len(&guest, &inst) + mv.cost;
        prop_assert!((predicted - best).abs() <= 1e-9 * best.max(1.0));
        let mut sorted = merged.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..coords.len()).collect::<Vec<_>>());
    }

    #[test]
    fn canonical_form_is_unique(coords in distinct_coords(12), seed in any::<u64>(), rot in 0usize..12) {
        let inst = instance(&coords);
        let n = inst.len();
        let t = shuffled_tour(n, seed, &inst);
        prop_assert_eq!(t.order[0], 0);
        prop_assert!(n < 3 || t.order[1] < t.order[n - 1]);
        let mut rotated: Vec<usize> = (0..n).map(|i| t.order[(i + rot) % n]).collect();
        let rot_len = cycle_len(&rotated, &inst);
        prop_assert!((rot_len - t.length).abs() <= 1e-9 * t.length);
        rotated.reverse();
        prop_assert!((cycle_len(&rotated, &inst) - t.length).abs() <= 1e-9 * t.length);
        canonicalize(&mut rotated);
        prop_assert_eq!(&rotated, &t.order);
        prop_assert!((tour_length(&t, &inst).unwrap() - t.length).abs() <= 1e-9 * t.length);
    }

    #[test]
    fn distances_form_a_metric(a in (0i32..1000, 0i32..1000), b in (0i32..1000, 0i32..1000), c in (0i32..1000, 0i32..1000)) {
        let mk = |id, (x, y): (i32, i32)| Point::new(id, x as f64, y as f64);
        let (p, q, r) = (mk(0, a), mk(1, b), mk(2, c));
        for m in [Metric::Euc2d, Metric::Att] {
            prop_assert_eq!(distance(&p, &q, m), distance(&q, &p, m));
            prop_assert_eq!(distance(&p, &p, m), 0.0);
        }
        let d = |u, v| distance(u, v, Metric::Euc2d);
        prop_assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r) + 1e-9);
    }

    #[test]
    fn local_search_is_monotone_and_idempotent(coords in distinct_coords(25), seed in any::<u64>()) {
        let inst = instance(&coords);
        let cfg = ImproveConfig::default();
        let start = shuffled_tour(inst.len(), seed, &inst);
        let two = two_opt(&start, &inst, &cfg).unwrap();
        let three = three_opt(&start, &inst, &cfg).unwrap();
        for t in [&two, &three] {
            validate_tour(t, &inst).unwrap();
            prop_assert!(t.length <= start.length * (1.0 + 1e-9));
        }
        prop_assert_eq!(two_opt(&two, &inst, &cfg).unwrap(), two.clone());
        prop_assert_eq!(three_opt(&three, &inst, &cfg).unwrap(), three.clone());
        // a 3-opt local optimum admits no improving 2-opt move
        let after = two_opt(&three, &inst, &cfg).unwrap();
        prop_assert_eq!(after, three.clone());
        prop_assert!(!has_crossings(&two, &inst));
        prop_assert!(!has_crossings(&three, &inst));
    }

    #[test]
    fn three_opt_after_two_opt_never_worse(coords in distinct_coords(25)) {
        let inst = instance(&coords);
        let cfg = ImproveConfig::default();
        let nn = nearest_neighbor(&inst, 0).unwrap();
        let two = two_opt(&nn, &inst, &cfg).unwrap();
        let three = three_opt(&two, &inst, &cfg).unwrap();
        prop_assert!(three.length <= two.length * (1.0 + 1e-9));
    }

    #[test]
    fn layer_merge_visits_everything(coords in distinct_coords(40), inner in any::<bool>()) {
        let inst = instance(&coords);
        let layers = convex_layers_fast(&inst.points).unwrap();
        let order = if inner { MergeOrder::InnermostFirst } else { MergeOrder::OutermostFirst };
        let t = layer_merge(&inst, &layers, order).unwrap();
        validate_tour(&t, &inst).unwrap();
        prop_assert_eq!(t.len(), inst.len());
    }
}
