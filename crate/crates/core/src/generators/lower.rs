use std::collections::BTreeMap;

use serde_json::json;

use super::instance::{map_of, Instance};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn check(n: usize, k: usize, min_n: usize) -> Result<()> {
    if n < min_n || k == 0 || k > n {
        return Err(Error::BadParams(format!(
            "need {min_n} <= n and 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// `k - 1` singletons at the start of `0..n`, then one district for the rest.
fn front_singletons(n: usize, k: usize, shift: usize) -> Vec<Vec<usize>> {
    let mut d: Vec<Vec<usize>> = (0..k - 1).map(|i| vec![(i + shift) % n]).collect();
    d.push((k - 1..n).map(|i| (i + shift) % n).collect());
    d
}

fn params(n: usize, k: usize) -> BTreeMap<String, serde_json::Value> {
    BTreeMap::from([("n".into(), json!(n)), ("k".into(), json!(k))])
}

/// Path `0 - 1 - ... - n-1`. Map A has singletons `0..k-1` and one district
/// for the rest; map B one district `0..=n-k` and singletons after it.
/// Every right end but the last travels `n - k`, so any plan needs
/// `(k - 1)(n - k)` switches.
pub fn gen_path_lb(n: usize, k: usize) -> Result<Instance> {
    check(n, k, 1)?;
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let g = Graph::new(n, &edges)?;
    let a = map_of(n, front_singletons(n, k, 0));
    let mut b = vec![(0..=n - k).collect::<Vec<_>>()];
    b.extend((n - k + 1..n).map(|v| vec![v]));
    let roles = BTreeMap::from([("path".into(), (0..n).collect())]);
    let mut inst = Instance::new("path-lb", g, a, map_of(n, b), params(n, k), roles)?;
    inst.meta.lower_bound = Some((k - 1) * (n - k));
    inst.meta.notes.push(
        "map B starts with the district 0..=n-k, so that the k districts cover the path".into(),
    );
    Ok(inst)
}

/// Cycle `C_n` with map A as on the path and map B its rotation by `n / 2`.
/// The cyclic order of districts is fixed, so every plan maps district `i`
/// to `i + r` for some `r`; the bound is the least, over `r`, total cyclic
/// distance of singletons that stay singletons.
pub fn gen_cycle_lb(n: usize, k: usize) -> Result<Instance> {
    check(n, k, 3)?;
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    let g = Graph::new(n, &edges)?;
    let s = n / 2;
    let a = map_of(n, front_singletons(n, k, 0));
    let b = map_of(n, front_singletons(n, k, s));
    let roles = BTreeMap::from([("cycle".into(), (0..n).collect())]);
    let mut params = params(n, k);
    params.insert("rotation".into(), json!(s));
    let mut inst = Instance::new("cycle-lb", g, a, b, params, roles)?;
    inst.meta.lower_bound = Some(cycle_bound(n, k));
    Ok(inst)
}

pub(crate) fn cycle_bound(n: usize, k: usize) -> usize {
    let s = n / 2;
    let cd = |x: usize, y: usize| {
        let d = x.abs_diff(y);
        d.min(n - d)
    };
    (0..k)
        .map(|r| {
            (0..k - 1)
                .filter(|&i| (i + r) % k < k - 1)
                .map(|i| cd(i, ((i + r) % k + s) % n))
                .sum::<usize>()
        })
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{build_switch_graph, oracle_distance, OracleConfig};

    fn distance(inst: &Instance) -> usize {
        let sg = build_switch_graph(&inst.graph, inst.meta.k, &OracleConfig::default()).unwrap();
        oracle_distance(&sg, &inst.map_a.signature(), &inst.map_b.signature())
            .unwrap()
            .unwrap()
    }

    #[test]
    fn path_examples() {
        let inst = gen_path_lb(6, 3).unwrap();
        assert_eq!(inst.meta.lower_bound, Some(6));
        assert_eq!(inst.map_a.signature().to_string(), "{0|1|2,3,4,5}");
        assert_eq!(inst.map_b.signature().to_string(), "{0,1,2,3|4|5}");
        let one = gen_path_lb(5, 1).unwrap();
        assert_eq!(one.map_a, one.map_b);
        assert_eq!(one.meta.lower_bound, Some(0));
        let all = gen_path_lb(5, 5).unwrap();
        assert_eq!(all.map_a, all.map_b);
        assert_eq!(all.meta.lower_bound, Some(0));
        assert!(matches!(gen_path_lb(3, 4), Err(Error::BadParams(_))));
    }

    #[test]
    fn path_bound_holds() {
        for n in 3..=7 {
            for k in 1..=n {
                let inst = gen_path_lb(n, k).unwrap();
                assert!(
                    distance(&inst) >= inst.meta.lower_bound.unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn cycle_examples() {
        let inst = gen_cycle_lb(8, 3).unwrap();
        assert_eq!(inst.map_b.signature().to_string(), "{0,1,2,3,6,7|4|5}");
        assert_eq!(inst.meta.lower_bound, Some(3));
        let c6 = gen_cycle_lb(6, 2).unwrap();
        assert_eq!(c6.map_b.signature().to_string(), "{0,1,2,4,5|3}");
        assert_eq!(distance(&c6), 4);
        let c4 = gen_cycle_lb(4, 1).unwrap();
        assert_eq!(c4.map_a, c4.map_b);
        assert_eq!(c4.meta.lower_bound, Some(0));
        assert!(gen_cycle_lb(2, 1).is_err());
    }

    #[test]
    fn cycle_bound_holds() {
        for n in 3..=8 {
            for k in 1..=n.min(5) {
                let inst = gen_cycle_lb(n, k).unwrap();
                assert!(
                    distance(&inst) >= inst.meta.lower_bound.unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }
}
