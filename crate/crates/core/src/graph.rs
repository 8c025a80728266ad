//! Simple undirected graphs, connectivity queries and block trees.

use crate::error::{Error, Result};
use std::collections::VecDeque;
use std::fmt::Write as _;

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectivityClass {
    Disconnected,
    ConnectedNotBiconnected,
    Biconnected,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidEdge(a, b, "vertex id out of range"));
            }
            if a == b {
                return Err(Error::InvalidEdge(a, b, "self-loop"));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            list.push((u, v));
            adj[u].push(v);
            adj[v].push(u);
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidEdge(w[0].0, w[0].1, "duplicate"));
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
        })
    }

    /// Like [`Graph::new`] but silently drops duplicate edges.
    pub fn from_edges_dedup(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut e: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        e.sort_unstable();
        e.dedup();
        Graph::new(n, &e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Parses the text format: `n m` followed by `m` lines `u v`.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let h = parse_ints(ln, header)?;
        if h.len() != 2 {
            return Err(Error::Parse {
                line: ln,
                msg: "header must be `n m`".into(),
            });
        }
        let (n, m) = (h[0], h[1]);
        let mut edges = Vec::with_capacity(m);
        for (ln, l) in lines {
            let t = parse_ints(ln, l)?;
            if t.len() != 2 {
                return Err(Error::Parse {
                    line: ln,
                    msg: "edge line must be `u v`".into(),
                });
            }
            edges.push((t[0], t[1]));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header declares {} edges, found {}", m, edges.len()),
            });
        }
        Graph::new(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{} {}", u, v);
        }
        s
    }

    /// True if the subgraph induced by `set` (membership mask) is connected.
    /// An empty set counts as disconnected.
    pub fn induces_connected(&self, mask: &[bool]) -> bool {
        let Some(start) = mask.iter().position(|&b| b) else {
            return false;
        };
        let total = mask.iter().filter(|&&b| b).count();
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if mask[y] && !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == total
    }

    /// Connectivity of the vertex list `set`.
    pub fn set_connected(&self, set: &[usize]) -> bool {
        let mut mask = vec![false; self.n];
        for &v in set {
            mask[v] = true;
        }
        self.induces_connected(&mask)
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.induces_connected(&vec![true; self.n])
    }

    /// BFS distances from `src` restricted to `mask`; `usize::MAX` if unreachable.
    pub fn bfs_within(&self, src: usize, mask: &[bool]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut q = VecDeque::from([src]);
        while let Some(x) = q.pop_front() {
            for &y in &self.adj[x] {
                if mask[y] && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        dist
    }

    /// Shortest path from `src` to any vertex satisfying `goal`, staying in `mask`.
    /// Ties resolved by smallest ids via sorted adjacency.
    pub fn shortest_path_within(
        &self,
        src: usize,
        mask: &[bool],
        goal: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.n];
        let mut seen = vec![false; self.n];
        seen[src] = true;
        let mut q = VecDeque::from([src]);
        while let Some(x) = q.pop_front() {
            if goal(x) {
                let mut path = vec![x];
                let mut c = x;
                while c != src {
                    c = prev[c];
                    path.push(c);
                }
                path.reverse();
                return Some(path);
            }
            for &y in &self.adj[x] {
                if mask[y] && !seen[y] {
                    seen[y] = true;
                    prev[y] = x;
                    q.push_back(y);
                }
            }
        }
        None
    }

    /// Subgraph induced by `verts` (relabelled `0..len` in the given order).
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut idx = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            idx[v] = i;
        }
        let mut e = Vec::new();
        for &(u, v) in &self.edges {
            if idx[u] != usize::MAX && idx[v] != usize::MAX {
                e.push((idx[u], idx[v]));
            }
        }
        Graph::new(verts.len(), &e).expect("induced subgraph of a simple graph is simple")
    }

    pub fn connectivity_class(&self) -> ConnectivityClass {
        if !self.is_connected() {
            return ConnectivityClass::Disconnected;
        }
        if self.n == 1 {
            return ConnectivityClass::ConnectedNotBiconnected;
        }
        if self.n == 2 {
            return ConnectivityClass::Biconnected;
        }
        if articulation_points(self).is_empty() {
            ConnectivityClass::Biconnected
        } else {
            ConnectivityClass::ConnectedNotBiconnected
        }
    }

    pub fn is_biconnected(&self) -> bool {
        self.connectivity_class() == ConnectivityClass::Biconnected
    }
}

fn parse_ints(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("not a non-negative integer: {t:?}"),
            })
        })
        .collect()
}

/// Block tree: blocks, cut vertices and their incidences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTree {
    /// Each block as a sorted vertex list; blocks sorted lexicographically.
    pub blocks: Vec<Vec<usize>>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<usize>,
    /// `(block index, cut vertex)` incidences, sorted.
    pub tree_edges: Vec<(usize, usize)>,
    /// Blocks containing each vertex.
    pub blocks_of: Vec<Vec<usize>>,
    is_cut: Vec<bool>,
}

impl BlockTree {
    pub fn is_cut(&self, v: usize) -> bool {
        self.is_cut[v]
    }

    /// Cut vertices lying in block `b`.
    pub fn cuts_of(&self, b: usize) -> Vec<usize> {
        self.blocks[b]
            .iter()
            .copied()
            .filter(|&v| self.is_cut[v])
            .collect()
    }

    /// A block is a leaf of the tree when it holds at most one cut vertex.
    pub fn is_leaf(&self, b: usize) -> bool {
        self.blocks[b].iter().filter(|&&v| self.is_cut[v]).count() <= 1
    }

    pub fn leaf_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.is_leaf(b))
            .collect()
    }
}

/// Computes the block tree of a connected graph.
pub fn block_tree(g: &Graph) -> Result<BlockTree> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.n();
    let mut blocks: Vec<Vec<usize>> = if n == 1 {
        vec![vec![0]]
    } else {
        biconnected_components(g)
    };
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    let mut blocks_of = vec![Vec::new(); n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            blocks_of[v].push(i);
        }
    }
    let is_cut: Vec<bool> = blocks_of.iter().map(|bs| bs.len() >= 2).collect();
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| is_cut[v]).collect();
    let mut tree_edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            if is_cut[v] {
                tree_edges.push((i, v));
            }
        }
    }
    Ok(BlockTree {
        blocks,
        cut_vertices,
        tree_edges,
        blocks_of,
        is_cut,
    })
}

/// Iterative Hopcroft-Tarjan; returns vertex sets of the biconnected components.
fn biconnected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut estack: Vec<(usize, usize)> = Vec::new();
    let mut comps = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&(v, p, i)) = stack.last() {
            if i < g.adj[v].len() {
                let w = g.adj[v][i];
                stack.last_mut().unwrap().2 += 1;
                if w == p {
                    continue;
                }
                if disc[w] == usize::MAX {
                    estack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if p != usize::MAX {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(e) = estack.pop() {
                            comp.push(e.0);
                            comp.push(e.1);
                            if e == (p, v) {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comp.dedup();
                        comps.push(comp);
                    }
                }
            }
        }
    }
    comps
}

/// Articulation points of `g` (any connectivity).
pub fn articulation_points(g: &Graph) -> Vec<usize> {
    let mut count = vec![0usize; g.n()];
    for c in biconnected_components(g) {
        for v in c {
            count[v] += 1;
        }
    }
    (0..g.n()).filter(|&v| count[v] >= 2).collect()
}
