use crate::district::{shrink_district, Candidate, DistrictMap, Recorder, SwitchPlan};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spqr::{spqr_tree, NodeKind};

/// Takes `p` to the canonical map of `(g, k)` on a biconnected graph.
///
/// Repeatedly picks the first leaf of the SPQR tree of the working graph,
/// contracts districts to single vertices of that leaf and deletes those
/// vertices, until one district remains on the working graph.
pub fn canonical_biconnected(g: &Graph, p: &DistrictMap) -> Result<(SwitchPlan, DistrictMap)> {
    if g.n() > 2 && !g.is_biconnected() {
        return Err(Error::NotBiconnected);
    }
    if g.n() <= 2 && !g.is_connected() {
        return Err(Error::NotBiconnected);
    }
    let mut rec = Recorder::new(p);
    let mut alive = vec![true; g.n()];
    let mut k = p.k();
    while k > 1 {
        let live: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
        if k >= live.len() {
            break;
        }
        let h = g.induced(&live);
        let t = spqr_tree(&h)?;
        let leaf = t.leaf_order[0];
        let node = &t.nodes[leaf];
        let (a, b) = t.leaf_virtual_edge(leaf);
        let picks: Vec<usize> = match node.kind {
            NodeKind::S => {
                let path = cycle_from(node.cycle(), a, b);
                path[1..path.len() - 1].to_vec()
            }
            NodeKind::R => {
                let v = *node
                    .vertices
                    .iter()
                    .find(|&&v| v != a && v != b)
                    .expect("R node has 4+ vertices");
                vec![v]
            }
            NodeKind::P => return Err(Error::Internal("P node as SPQR leaf".into())),
        };
        for hv in picks {
            if k <= 1 {
                break;
            }
            let v = live[hv];
            contract_alive(g, &mut rec, &alive, v)?;
            alive[v] = false;
            k -= 1;
        }
    }
    Ok(rec.into_parts())
}

/// Orders the skeleton cycle as `a = v1, v2, ..., vt = b`.
fn cycle_from(cyc: Vec<usize>, a: usize, b: usize) -> Vec<usize> {
    let t = cyc.len();
    let i = cyc.iter().position(|&x| x == a).expect("endpoint on cycle");
    let fwd = cyc[(i + 1) % t];
    let mut out = Vec::with_capacity(t);
    if fwd == b {
        for j in 0..t {
            out.push(cyc[(i + t - j) % t]);
        }
    } else {
        for j in 0..t {
            out.push(cyc[(i + j) % t]);
        }
    }
    debug_assert_eq!(*out.last().unwrap(), b);
    out
}

/// Contracts the district of `v` to `{v}`, expanding only districts of
/// live vertices.
fn contract_alive(g: &Graph, rec: &mut Recorder, alive: &[bool], v: usize) -> Result<()> {
    let i = rec.map.district_of(v);
    let rest: Vec<usize> = rec
        .map
        .district(i)
        .iter()
        .copied()
        .filter(|&x| x != v)
        .collect();
    shrink_district(g, rec, i, &rest, |_, c: &[Candidate]| {
        c.iter()
            .filter(|c| alive[c.u])
            .min_by_key(|c| (c.u, c.v))
            .copied()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::district::verify_plan;
    use crate::oracle::{enumerate_district_maps, OracleConfig};

    fn all_canonical(g: &Graph, k: usize) -> Vec<String> {
        let maps = enumerate_district_maps(g, k, &OracleConfig::default()).unwrap();
        let mut sigs = Vec::new();
        for p in maps {
            let (plan, out) = canonical_biconnected(g, &p).unwrap();
            assert_eq!(
                verify_plan(g, &p, &plan).unwrap().signature(),
                out.signature()
            );
            assert!(plan.len() <= 4 * k * g.n());
            sigs.push(out.signature().to_string());
        }
        sigs.sort();
        sigs.dedup();
        sigs
    }

    #[test]
    fn c4_two_districts() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let s = all_canonical(&g, 2);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn k4_three_districts() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let a = DistrictMap::from_districts(4, vec![vec![0], vec![1], vec![2, 3]]).unwrap();
        let b = DistrictMap::from_districts(4, vec![vec![0, 1], vec![2], vec![3]]).unwrap();
        let (_, x) = canonical_biconnected(&g, &a).unwrap();
        let (_, y) = canonical_biconnected(&g, &b).unwrap();
        assert_eq!(x.signature(), y.signature());
        assert_eq!(all_canonical(&g, 3).len(), 1);
    }

    #[test]
    fn k_one_is_empty() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let p = DistrictMap::from_districts(3, vec![vec![0, 1, 2]]).unwrap();
        let (plan, out) = canonical_biconnected(&g, &p).unwrap();
        assert!(plan.is_empty());
        assert_eq!(out.signature(), p.signature());
    }

    #[test]
    fn theta_and_wheel_every_k() {
        let theta = Graph::new(
            7,
            &[
                (0, 2),
                (2, 1),
                (0, 3),
                (3, 4),
                (4, 1),
                (0, 5),
                (5, 6),
                (6, 1),
            ],
        )
        .unwrap();
        let wheel = Graph::new(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (1, 5),
            ],
        )
        .unwrap();
        for g in [theta, wheel] {
            for k in 1..=g.n() {
                assert_eq!(all_canonical(&g, k).len(), 1, "k={k}");
            }
        }
    }

    #[test]
    fn rejects_path() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let p = DistrictMap::singletons(3);
        assert!(matches!(
            canonical_biconnected(&g, &p),
            Err(Error::NotBiconnected)
        ));
    }
}
