//! Deciding connectedness of the switch graph via the quantity M.

use crate::district::{is_contractible_map, DistrictMap};
use crate::error::{Error, Result};
use crate::graph::{block_tree, Graph};
use std::collections::VecDeque;
use std::fmt;

/// Result of the multi-source BFS on the chain-transformed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MResult {
    pub m: usize,
    /// Leaf-block indices (into the block tree) realising `m`.
    pub witness_pair: (usize, usize),
    /// Edge of the transformed graph achieving the minimum.
    pub witness_edge: (usize, usize),
    pub levels: Vec<usize>,
    pub clusters: Vec<usize>,
}

/// Computes M for a connected graph that is not biconnected.
pub fn compute_m(g: &Graph) -> Result<MResult> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let t = block_tree(g)?;
    let leaves = t.leaf_blocks();
    if t.blocks.len() < 2 || leaves.len() < 2 {
        return Err(Error::Biconnected);
    }
    // G': drop the non-cut vertices of each leaf block, hang a chain of the
    // same size from its cut vertex. New chain vertices get ids from n on.
    let n = g.n();
    let mut removed = vec![false; n];
    for &b in &leaves {
        for &v in &t.blocks[b] {
            if !t.is_cut(v) {
                removed[v] = true;
            }
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        if !removed[u] && !removed[v] {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut sources = Vec::new();
    let mut source_block = Vec::new();
    for &b in &leaves {
        let c = t.cuts_of(b)[0];
        let mut prev = c;
        for _ in 1..t.blocks[b].len() {
            let x = adj.len();
            adj.push(vec![prev]);
            adj[prev].push(x);
            prev = x;
        }
        sources.push(prev);
        source_block.push(b);
    }
    let total = adj.len();
    let mut level = vec![usize::MAX; total];
    let mut cluster = vec![usize::MAX; total];
    let mut q = VecDeque::new();
    for (i, &s) in sources.iter().enumerate() {
        level[s] = 0;
        cluster[s] = i;
        q.push_back(s);
    }
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if level[y] == usize::MAX {
                level[y] = level[x] + 1;
                cluster[y] = cluster[x];
                q.push_back(y);
            }
        }
    }
    let mut best: Option<(usize, (usize, usize))> = None;
    for x in 0..total {
        if level[x] == usize::MAX {
            continue;
        }
        for &y in &adj[x] {
            if x < y && level[y] != usize::MAX && cluster[x] != cluster[y] {
                let val = level[x] + level[y] + 2;
                if best.is_none_or(|(b, _)| val < b) {
                    best = Some((val, (x, y)));
                }
            }
        }
    }
    let (m, (x, y)) = best.ok_or_else(|| Error::Internal("no cross-cluster edge".into()))?;
    let (a, b) = (source_block[cluster[x]], source_block[cluster[y]]);
    Ok(MResult {
        m,
        witness_pair: (a.min(b), a.max(b)),
        witness_edge: (x, y),
        levels: level,
        clusters: cluster
            .iter()
            .map(|&c| if c == usize::MAX { c } else { source_block[c] })
            .collect(),
    })
}

/// Brute-force M: over leaf-block pairs, the number of vertices in both
/// blocks and a shortest path joining them.
pub fn brute_force_m(g: &Graph) -> Result<usize> {
    let t = block_tree(g)?;
    let leaves = t.leaf_blocks();
    if t.blocks.len() < 2 {
        return Err(Error::Biconnected);
    }
    let all = vec![true; g.n()];
    let mut best = usize::MAX;
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i + 1..] {
            // distance between the blocks, through any of their vertices
            let mut d = usize::MAX;
            for &x in &t.blocks[a] {
                let dist = g.bfs_within(x, &all);
                for &y in &t.blocks[b] {
                    d = d.min(dist[y]);
                }
            }
            let shared = usize::from(d == 0);
            let inner = d.saturating_sub(1);
            best = best.min(t.blocks[a].len() + t.blocks[b].len() + inner - shared);
        }
    }
    Ok(best)
}

/// Which branch of the characterization decided connectedness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    KIsOne,
    KIsN,
    Biconnected,
    Threshold {
        k: usize,
        m: usize,
        n: usize,
        witness_pair: (usize, usize),
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub connected: bool,
    pub reason: Reason,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = if self.connected {
            "connected"
        } else {
            "disconnected"
        };
        match &self.reason {
            Reason::KIsOne => write!(f, "{word}: k = 1"),
            Reason::KIsN => write!(f, "{word}: k = n"),
            Reason::Biconnected => write!(f, "{word}: graph is biconnected"),
            Reason::Threshold { k, m, n, .. } => {
                let op = if self.connected { ">=" } else { "<" };
                write!(
                    f,
                    "{word}: k+M = {} {op} n+{} = {}",
                    k + m,
                    THRESHOLD_SLACK,
                    n + THRESHOLD_SLACK
                )
            }
        }
    }
}

/// Every k-district map is contractible exactly when no district can hold
/// two leaf blocks plus a joining path, i.e. when `n - k + 1 < M`.
pub const THRESHOLD_SLACK: usize = 2;

/// Decides whether the switch graph of `g` with `k` districts is connected.
pub fn switch_graph_connected(g: &Graph, k: usize) -> Result<Verdict> {
    let n = g.n();
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let v = |connected, reason| Ok(Verdict { connected, reason });
    if k == 1 {
        return v(true, Reason::KIsOne);
    }
    if k == n {
        return v(true, Reason::KIsN);
    }
    if g.is_biconnected() {
        return v(true, Reason::Biconnected);
    }
    let r = compute_m(g)?;
    v(
        k + r.m >= n + THRESHOLD_SLACK,
        Reason::Threshold {
            k,
            m: r.m,
            n,
            witness_pair: r.witness_pair,
        },
    )
}

/// A k-district map with a district holding two leaf blocks, when one
/// exists (`n - k + 1 >= M`). The district starts as the two nearest leaf
/// blocks plus a shortest path between them; every other vertex starts
/// as a singleton, and districts are merged with neighbours down to k.
pub fn incontractible_map(g: &Graph, k: usize) -> Result<Option<DistrictMap>> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let r = compute_m(g)?;
    if n - k + 1 < r.m {
        return Ok(None);
    }
    let t = block_tree(g)?;
    let (a, b) = r.witness_pair;
    let all = vec![true; n];
    let mut start = None;
    for &x in &t.blocks[a] {
        let p = g
            .shortest_path_within(x, &all, |y| t.blocks[b].contains(&y))
            .expect("graph is connected");
        if start
            .as_ref()
            .is_none_or(|q: &Vec<usize>| p.len() < q.len())
        {
            start = Some(p);
        }
    }
    let mut label: Vec<usize> = (0..n).collect();
    for &v in t.blocks[a]
        .iter()
        .chain(&t.blocks[b])
        .chain(start.iter().flatten())
    {
        label[v] = n;
    }
    let mut count = label.iter().filter(|&&l| l != n).count() + 1;
    while count > k {
        let (u, v) = *g
            .edges()
            .iter()
            .find(|&&(u, v)| label[u] != label[v] && (label[u] != n || label[v] != n))
            .expect("connected graph has an edge between districts");
        let (from, to) = if label[u] == n {
            (label[v], n)
        } else {
            (label[u], label[v])
        };
        for l in label.iter_mut() {
            if *l == from {
                *l = to;
            }
        }
        count -= 1;
    }
    let mut ids: Vec<usize> = label.clone();
    ids.sort_unstable();
    ids.dedup();
    let label = label
        .iter()
        .map(|l| ids.binary_search(l).unwrap())
        .collect();
    let p = DistrictMap::from_assignment(label)?;
    debug_assert!(!is_contractible_map(&t, &p));
    Ok(Some(p))
}
