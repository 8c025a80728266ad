use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use redistrict::connectivity::{incontractible_map, switch_graph_connected, Reason};
use redistrict::corpus::random_connected;
use redistrict::district::{
    apply_switch, check_contract_target, contract_district, is_contractible_district,
    is_contractible_map, valid_switches, verify_plan, DistrictMap,
};
use redistrict::graph::{block_tree, Graph};
use redistrict::planner::{plan_path, PlanOutcome, LENGTH_CONSTANT};

/// Random connected graph and a random k-district map on it, built by
/// merging singletons along shuffled edges.
fn instance(seed: u64, n: usize, p: f64, k_frac: f64) -> (Graph, DistrictMap) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_connected(&mut rng, n, p);
    let k = 1 + ((n - 1) as f64 * k_frac) as usize;
    (g.clone(), random_map(&g, k, &mut rng))
}

fn random_map(g: &Graph, k: usize, rng: &mut ChaCha8Rng) -> DistrictMap {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            p[x] = find(p, p[x]);
        }
        p[x]
    }
    let mut edges = g.edges().to_vec();
    edges.shuffle(rng);
    let mut parts = n;
    for (a, b) in edges {
        if parts == k {
            break;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            parts -= 1;
        }
    }
    let mut roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut labels = roots.clone();
    labels.sort();
    labels.dedup();
    for r in roots.iter_mut() {
        *r = labels.binary_search(r).unwrap();
    }
    DistrictMap::from_assignment(roots).unwrap()
}

fn params() -> impl Strategy<Value = (u64, usize, f64, f64)> {
    (any::<u64>(), 2usize..10, 0.0f64..0.5, 0.0f64..1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn switches_reverse_and_preserve((seed, n, p, kf) in params()) {
        let (g, m) = instance(seed, n, p, kf);
        let t = block_tree(&g).unwrap();
        for s in valid_switches(&g, &m) {
            let q = apply_switch(&g, &m, s).unwrap();
            prop_assert_eq!(q.k(), m.k());
            prop_assert!(g.degree(s.v) != 1);
            prop_assert_eq!(apply_switch(&g, &q, s.reversed()).unwrap().signature(), m.signature());
            prop_assert_eq!(is_contractible_map(&t, &q), is_contractible_map(&t, &m));
        }
    }

    #[test]
    fn contraction_uses_size_minus_one((seed, n, p, kf) in params()) {
        let (g, m) = instance(seed, n, p, kf);
        prop_assume!(m.k() >= 2);
        let t = block_tree(&g).unwrap();
        for i in 0..m.k() {
            if !is_contractible_district(&t, &m, i) {
                continue;
            }
            for &target in m.district(i) {
                if check_contract_target(&t, &m, i, target).is_err() {
                    continue;
                }
                let plan = contract_district(&g, &m, i, target).unwrap();
                prop_assert_eq!(plan.len(), m.district(i).len() - 1);
                let end = verify_plan(&g, &m, &plan).unwrap();
                prop_assert_eq!(end.district(i), &[target][..]);
            }
        }
    }

    #[test]
    fn plans_verify_within_bound((seed, n, p, kf) in params(), other in any::<u64>()) {
        let (g, a) = instance(seed, n, p, kf);
        let b = random_map(&g, a.k(), &mut ChaCha8Rng::seed_from_u64(other));
        let t = block_tree(&g).unwrap();
        let ca = a.k() == 1 || is_contractible_map(&t, &a);
        let cb = b.k() == 1 || is_contractible_map(&t, &b);
        match plan_path(&g, &a, &b).unwrap() {
            PlanOutcome::Plan(pp) => {
                prop_assert!(ca && cb);
                let end = verify_plan(&g, &a, &pp.plan).unwrap();
                prop_assert_eq!(end.signature(), b.signature());
                prop_assert!(pp.plan.len() <= LENGTH_CONSTANT * a.k() * g.n());
            }
            PlanOutcome::Unreachable => prop_assert!(ca != cb),
            PlanOutcome::UnsupportedPair => prop_assert!(!ca && !cb),
        }
    }

    #[test]
    fn text_formats_round_trip((seed, n, p, kf) in params()) {
        let (g, m) = instance(seed, n, p, kf);
        prop_assert_eq!(&Graph::parse(&g.to_text()).unwrap(), &g);
        let back = DistrictMap::parse(n, &m.to_text()).unwrap();
        prop_assert_eq!(back.signature(), m.signature());
        prop_assert_eq!(back.to_text(), m.to_text());
    }

    #[test]
    fn threshold_has_witness((seed, n, p, kf) in params()) {
        let (g, m) = instance(seed, n, p, kf);
        let k = m.k();
        let v = switch_graph_connected(&g, k).unwrap();
        if let Reason::Threshold { .. } = v.reason {
            let w = incontractible_map(&g, k).unwrap();
            prop_assert_eq!(w.is_some(), !v.connected);
            if let Some(w) = w {
                prop_assert!(!is_contractible_map(&block_tree(&g).unwrap(), &w));
            }
        }
    }
}
