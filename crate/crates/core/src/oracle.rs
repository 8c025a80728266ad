//! Brute force over all k-district maps of small graphs.

use crate::district::{valid_switches, DistrictMap, Signature};
use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::{HashMap, HashSet, VecDeque};

/// Size guards for enumeration.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub max_n: usize,
    pub max_nodes: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_n: 10,
            max_nodes: 2_000_000,
        }
    }
}

/// Every valid k-district map of `g` exactly once, in signature order.
pub fn enumerate_district_maps(
    g: &Graph,
    k: usize,
    cfg: &OracleConfig,
) -> Result<Vec<DistrictMap>> {
    let n = g.n();
    if n > cfg.max_n || n > 63 {
        return Err(Error::TooLarge(format!(
            "n = {n} exceeds cap {}",
            cfg.max_n.min(63)
        )));
    }
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut cur: Vec<u64> = Vec::new();
    enum_rec(&nbr, full, k, &mut cur, &mut out, cfg.max_nodes)?;
    let mut maps: Vec<DistrictMap> = out
        .into_iter()
        .map(|ds| {
            let districts = ds.iter().map(|&m| bits(m)).collect();
            DistrictMap::from_districts(n, districts).unwrap()
        })
        .collect();
    maps.sort_by_key(|m| m.signature());
    debug_assert!({
        let s: HashSet<Signature> = maps.iter().map(|m| m.signature()).collect();
        s.len() == maps.len()
    });
    Ok(maps)
}

fn bits(m: u64) -> Vec<usize> {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}

fn components(nbr: &[u64], set: u64) -> usize {
    let mut left = set;
    let mut c = 0;
    while left != 0 {
        let s = left.trailing_zeros() as usize;
        let mut comp = 1u64 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let add = nbr[x] & set & !comp;
            comp |= add;
            frontier |= add;
        }
        left &= !comp;
        c += 1;
    }
    c
}

fn enum_rec(
    nbr: &[u64],
    rest: u64,
    r: usize,
    cur: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
    budget: usize,
) -> Result<()> {
    if r == 1 {
        if components(nbr, rest) == 1 {
            out.push({
                let mut d = cur.clone();
                d.push(rest);
                d
            });
            if out.len() > budget {
                return Err(Error::TooLarge(format!("more than {budget} maps")));
            }
        }
        return Ok(());
    }
    let v = rest.trailing_zeros() as usize;
    let mut subsets = Vec::new();
    connected_subsets(
        nbr,
        rest,
        1 << v,
        (nbr[v] & rest) & !(1 << v),
        0,
        &mut subsets,
    );
    subsets.sort_unstable_by_key(|&s| (s.count_ones(), s));
    for s in subsets {
        let remain = rest & !s;
        if (remain.count_ones() as usize) < r - 1 || components(nbr, remain) > r - 1 {
            continue;
        }
        cur.push(s);
        enum_rec(nbr, remain, r - 1, cur, out, budget)?;
        cur.pop();
    }
    Ok(())
}

/// Connected subsets of `allowed` extending `s`, each exactly once.
fn connected_subsets(
    nbr: &[u64],
    allowed: u64,
    s: u64,
    cand: u64,
    forbidden: u64,
    out: &mut Vec<u64>,
) {
    out.push(s);
    let mut cand = cand;
    let mut forbidden = forbidden;
    while cand != 0 {
        let x = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let ns = s | (1 << x);
        let next = (cand | nbr[x]) & allowed & !ns & !forbidden;
        connected_subsets(nbr, allowed, ns, next, forbidden, out);
        forbidden |= 1 << x;
    }
}

/// Explicit switch graph over all k-district maps.
#[derive(Debug, Clone)]
pub struct SwitchGraph {
    pub nodes: Vec<Signature>,
    pub index: HashMap<Signature, usize>,
    pub adjacency: Vec<Vec<usize>>,
    pub component: Vec<usize>,
    pub component_count: usize,
}

impl SwitchGraph {
    pub fn node(&self, s: &Signature) -> Result<usize> {
        self.index.get(s).copied().ok_or(Error::UnknownSignature)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    fn bfs(&self, a: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.nodes.len()];
        dist[a] = 0;
        let mut q = VecDeque::from([a]);
        while let Some(x) = q.pop_front() {
            for &y in &self.adjacency[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        dist
    }
}

pub fn build_switch_graph(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<SwitchGraph> {
    let maps = enumerate_district_maps(g, k, cfg)?;
    let nodes: Vec<Signature> = maps.iter().map(|m| m.signature()).collect();
    let index: HashMap<Signature, usize> = nodes
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for (i, m) in maps.iter().enumerate() {
        for s in valid_switches(g, m) {
            let mut q = m.clone();
            q.move_vertex(s.v, m.district_of(s.w));
            let j = index[&q.signature()];
            adjacency[i].push(j);
        }
    }
    for a in &mut adjacency {
        a.sort_unstable();
        a.dedup();
    }
    let mut component = vec![usize::MAX; nodes.len()];
    let mut c = 0;
    for s in 0..nodes.len() {
        if component[s] != usize::MAX {
            continue;
        }
        component[s] = c;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adjacency[x] {
                if component[y] == usize::MAX {
                    component[y] = c;
                    stack.push(y);
                }
            }
        }
        c += 1;
    }
    Ok(SwitchGraph {
        nodes,
        index,
        adjacency,
        component,
        component_count: c,
    })
}

/// Shortest switch distance, or `None` when the maps are in different components.
pub fn oracle_distance(sg: &SwitchGraph, a: &Signature, b: &Signature) -> Result<Option<usize>> {
    let (ia, ib) = (sg.node(a)?, sg.node(b)?);
    let d = sg.bfs(ia)[ib];
    Ok(if d == usize::MAX { None } else { Some(d) })
}

/// Diameter of the component containing `a`.
pub fn oracle_diameter(sg: &SwitchGraph, a: &Signature) -> Result<usize> {
    let ia = sg.node(a)?;
    let c = sg.component[ia];
    let members: Vec<usize> = (0..sg.nodes.len())
        .filter(|&x| sg.component[x] == c)
        .collect();
    Ok(members
        .iter()
        .map(|&x| {
            sg.bfs(x)
                .into_iter()
                .filter(|&d| d != usize::MAX)
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0))
}

/// Whether district `i` can be shrunk to a singleton by `|V_i| - 1`
/// switches, found by search over removal orders.
pub fn oracle_contractible(g: &Graph, p: &DistrictMap, i: usize) -> bool {
    let verts = p.district(i).to_vec();
    let mut memo: HashSet<Vec<bool>> = HashSet::new();
    let start: Vec<bool> = (0..g.n()).map(|v| p.district_of(v) == i).collect();
    search(g, &verts, start, &mut memo)
}

fn search(g: &Graph, verts: &[usize], cur: Vec<bool>, dead: &mut HashSet<Vec<bool>>) -> bool {
    let size = verts.iter().filter(|&&v| cur[v]).count();
    if size <= 1 {
        return true;
    }
    if dead.contains(&cur) {
        return false;
    }
    for &v in verts {
        if !cur[v] || !g.neighbors(v).iter().any(|&u| !cur[u]) {
            continue;
        }
        let mut next = cur.clone();
        next[v] = false;
        if g.induces_connected(&next) && search(g, verts, next, dead) {
            return true;
        }
    }
    dead.insert(cur);
    false
}
