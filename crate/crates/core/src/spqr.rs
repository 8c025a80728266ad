//! SPQR trees by recursive splitting at separation pairs, followed by
//! merging of adjacent S-S and P-P nodes.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    S,
    P,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Real,
    /// Virtual edge shared with the given tree node.
    Virtual(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonEdge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpqrNode {
    pub kind: NodeKind,
    /// Sorted skeleton vertices (ids of the original graph).
    pub vertices: Vec<usize>,
    pub edges: Vec<SkeletonEdge>,
}

impl SpqrNode {
    pub fn virtual_edges(&self) -> impl Iterator<Item = &SkeletonEdge> {
        self.edges
            .iter()
            .filter(|e| matches!(e.kind, EdgeKind::Virtual(_)))
    }

    fn key(&self) -> (Vec<usize>, NodeKind, Vec<(usize, usize)>) {
        let mut e: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        e.sort_unstable();
        (self.vertices.clone(), self.kind, e)
    }

    /// Skeleton cycle of an S node as a vertex sequence.
    pub fn cycle(&self) -> Vec<usize> {
        assert_eq!(self.kind, NodeKind::S);
        let start = self.vertices[0];
        let mut seq = vec![start];
        let mut used = vec![false; self.edges.len()];
        let mut cur = start;
        loop {
            let Some(i) = (0..self.edges.len())
                .filter(|&i| !used[i] && (self.edges[i].u == cur || self.edges[i].v == cur))
                .min_by_key(|&i| other(&self.edges[i], cur))
            else {
                break;
            };
            used[i] = true;
            let nxt = other(&self.edges[i], cur);
            if nxt == start {
                break;
            }
            seq.push(nxt);
            cur = nxt;
        }
        seq
    }
}

fn other(e: &SkeletonEdge, x: usize) -> usize {
    if e.u == x {
        e.v
    } else {
        e.u
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpqrTree {
    pub nodes: Vec<SpqrNode>,
    /// Tree edges `(a, b)` with `a < b`, sorted.
    pub tree_adjacency: Vec<(usize, usize)>,
    pub root: usize,
    /// Nodes in DFS preorder from the root.
    pub dfs_order: Vec<usize>,
    /// Leaves (tree degree at most one) in DFS preorder.
    pub leaf_order: Vec<usize>,
}

impl SpqrTree {
    pub fn degree(&self, x: usize) -> usize {
        self.tree_adjacency
            .iter()
            .filter(|&&(a, b)| a == x || b == x)
            .count()
    }

    /// The unique virtual edge of a leaf; for a single-node tree the
    /// lexicographically smallest skeleton edge stands in for it.
    pub fn leaf_virtual_edge(&self, x: usize) -> (usize, usize) {
        let node = &self.nodes[x];
        let e = if self.nodes.len() == 1 {
            node.edges.iter().min_by_key(|e| (e.u, e.v)).unwrap()
        } else {
            node.virtual_edges()
                .next()
                .expect("leaf has a virtual edge")
        };
        (e.u.min(e.v), e.u.max(e.v))
    }

    /// Replaces every virtual edge by its partner's subgraph; returns the
    /// resulting real edge set, sorted.
    pub fn reassemble(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .nodes
            .iter()
            .flat_map(|n| n.edges.iter())
            .filter(|e| e.kind == EdgeKind::Real)
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect();
        e.sort_unstable();
        e
    }
}

#[derive(Clone, Debug)]
struct Comp {
    // (u, v, label) where label is None for real edges, Some(id) for virtual
    edges: Vec<(usize, usize, Option<usize>)>,
}

impl Comp {
    fn vertices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.edges.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        s.into_iter().collect()
    }

    fn is_bond(&self) -> bool {
        self.vertices().len() == 2
    }

    fn is_cycle(&self) -> bool {
        let vs = self.vertices();
        if vs.len() < 3 || self.edges.len() != vs.len() {
            return false;
        }
        vs.iter().all(|&x| {
            self.edges
                .iter()
                .filter(|&&(u, v, _)| u == x || v == x)
                .count()
                == 2
        })
    }

    /// Separation classes of the edges with respect to {a, b}.
    fn classes(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        let vs = self.vertices();
        let idx = |x: usize| vs.binary_search(&x).unwrap();
        let mut parent: Vec<usize> = (0..vs.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let nx = p[c];
                p[c] = r;
                c = nx;
            }
            r
        }
        for &(u, v, _) in &self.edges {
            if u != a && u != b && v != a && v != b {
                let (ru, rv) = (find(&mut parent, idx(u)), find(&mut parent, idx(v)));
                parent[ru] = rv;
            }
        }
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, &(u, v, _)) in self.edges.iter().enumerate() {
            let inner = if u != a && u != b {
                Some(u)
            } else if v != a && v != b {
                Some(v)
            } else {
                None
            };
            match inner {
                None => groups.push((usize::MAX - i, vec![i])),
                Some(x) => {
                    let r = find(&mut parent, idx(x));
                    match groups.iter_mut().find(|(k, _)| *k == r) {
                        Some(g) => g.1.push(i),
                        None => groups.push((r, vec![i])),
                    }
                }
            }
        }
        groups.into_iter().map(|(_, g)| g).collect()
    }

    fn find_split(&self) -> Option<(usize, usize, Vec<Vec<usize>>)> {
        let vs = self.vertices();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let cl = self.classes(vs[i], vs[j]);
                let k = cl.len();
                if k < 2 {
                    continue;
                }
                if k == 2 && cl.iter().any(|c| c.len() == 1) {
                    continue;
                }
                if cl.iter().all(|c| c.len() == 1) {
                    // a bond; never split further
                    continue;
                }
                return Some((vs[i], vs[j], cl));
            }
        }
        None
    }
}

/// SPQR tree of a biconnected graph with at least three vertices.
pub fn spqr_tree(g: &Graph) -> Result<SpqrTree> {
    if g.n() < 3 || !g.is_biconnected() {
        return Err(Error::NotBiconnected);
    }
    let mut next_label = 0usize;
    let mut done: Vec<Comp> = Vec::new();
    let mut work = vec![Comp {
        edges: g.edges().iter().map(|&(u, v)| (u, v, None)).collect(),
    }];
    while let Some(c) = work.pop() {
        if c.is_bond() || c.is_cycle() {
            done.push(c);
            continue;
        }
        let Some((a, b, classes)) = c.find_split() else {
            done.push(c);
            continue;
        };
        let mut bond: Vec<(usize, usize, Option<usize>)> = Vec::new();
        let mut pieces: Vec<Comp> = Vec::new();
        for cl in &classes {
            if cl.len() == 1 {
                bond.push(c.edges[cl[0]]);
            } else {
                let lab = next_label;
                next_label += 1;
                let mut e: Vec<_> = cl.iter().map(|&i| c.edges[i]).collect();
                e.push((a, b, Some(lab)));
                pieces.push(Comp { edges: e });
                bond.push((a, b, Some(lab)));
            }
        }
        if bond.len() == 2 && bond.iter().all(|e| e.2.is_some()) {
            // two pieces joined directly: fuse their labels
            let (l0, l1) = (bond[0].2.unwrap(), bond[1].2.unwrap());
            for p in &mut pieces {
                for e in &mut p.edges {
                    if e.2 == Some(l1) {
                        e.2 = Some(l0);
                    }
                }
            }
        } else {
            pieces.push(Comp { edges: bond });
        }
        work.extend(pieces);
    }
    merge_same_kind(&mut done);
    Ok(build_tree(done))
}

fn kind_of(c: &Comp) -> NodeKind {
    if c.is_bond() {
        NodeKind::P
    } else if c.is_cycle() {
        NodeKind::S
    } else {
        NodeKind::R
    }
}

fn merge_same_kind(comps: &mut Vec<Comp>) {
    loop {
        let mut merged = false;
        'outer: for i in 0..comps.len() {
            let ki = kind_of(&comps[i]);
            if ki == NodeKind::R {
                continue;
            }
            let labels: Vec<usize> = comps[i].edges.iter().filter_map(|e| e.2).collect();
            for lab in labels {
                let Some(j) = (0..comps.len())
                    .find(|&j| j != i && comps[j].edges.iter().any(|e| e.2 == Some(lab)))
                else {
                    continue;
                };
                if kind_of(&comps[j]) != ki {
                    continue;
                }
                let other = comps.remove(j);
                let i = if j < i { i - 1 } else { i };
                comps[i].edges.retain(|e| e.2 != Some(lab));
                comps[i]
                    .edges
                    .extend(other.edges.into_iter().filter(|e| e.2 != Some(lab)));
                merged = true;
                break 'outer;
            }
        }
        if !merged {
            break;
        }
    }
}

fn build_tree(comps: Vec<Comp>) -> SpqrTree {
    let mut nodes: Vec<(SpqrNode, Vec<Option<usize>>)> = comps
        .iter()
        .map(|c| {
            let mut edges: Vec<(usize, usize, Option<usize>)> = c
                .edges
                .iter()
                .map(|&(u, v, l)| (u.min(v), u.max(v), l))
                .collect();
            edges.sort_unstable_by_key(|e| (e.0, e.1, e.2.is_some()));
            let node = SpqrNode {
                kind: kind_of(c),
                vertices: c.vertices(),
                edges: edges
                    .iter()
                    .map(|&(u, v, _)| SkeletonEdge {
                        u,
                        v,
                        kind: EdgeKind::Real,
                    })
                    .collect(),
            };
            (node, edges.iter().map(|e| e.2).collect())
        })
        .collect();
    nodes.sort_by_key(|a| a.0.key());
    let mut adjacency = Vec::new();
    let labels: Vec<Vec<Option<usize>>> = nodes.iter().map(|n| n.1.clone()).collect();
    for (i, ls) in labels.iter().enumerate() {
        for (ei, l) in ls.iter().enumerate() {
            if let Some(l) = l {
                let j = (0..labels.len())
                    .find(|&j| j != i && labels[j].contains(&Some(*l)))
                    .expect("virtual edge has a partner");
                nodes[i].0.edges[ei].kind = EdgeKind::Virtual(j);
                if i < j {
                    adjacency.push((i, j));
                }
            }
        }
    }
    adjacency.sort_unstable();
    let nodes: Vec<SpqrNode> = nodes.into_iter().map(|n| n.0).collect();
    // nodes are sorted by key, so node 0 is the root and children sorted by index
    // follow smallest-vertex order
    let root = 0;
    let mut dfs_order = Vec::new();
    let mut seen = vec![false; nodes.len()];
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        dfs_order.push(x);
        let mut ch: Vec<usize> = adjacency
            .iter()
            .filter_map(|&(a, b)| {
                if a == x {
                    Some(b)
                } else if b == x {
                    Some(a)
                } else {
                    None
                }
            })
            .filter(|&y| !seen[y])
            .collect();
        ch.sort_unstable();
        stack.extend(ch.into_iter().rev());
    }
    let deg = |x: usize| adjacency.iter().filter(|&&(a, b)| a == x || b == x).count();
    let leaf_order = dfs_order.iter().copied().filter(|&x| deg(x) <= 1).collect();
    SpqrTree {
        nodes,
        tree_adjacency: adjacency,
        root,
        dfs_order,
        leaf_order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn k4_is_single_r() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let t = spqr_tree(&g).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.nodes[0].kind, NodeKind::R);
        assert!(t.nodes[0].edges.iter().all(|e| e.kind == EdgeKind::Real));
        assert_eq!(t.leaf_virtual_edge(0), (0, 1));
    }

    #[test]
    fn c5_is_single_s() {
        let t = spqr_tree(&cycle(5)).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.nodes[0].kind, NodeKind::S);
        assert_eq!(t.nodes[0].cycle(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn theta_graph() {
        // a = 0, b = 1, middles 2, 3, 4
        let g = Graph::new(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        let t = spqr_tree(&g).unwrap();
        assert_eq!(t.nodes.len(), 4);
        let p: Vec<_> = t.nodes.iter().filter(|n| n.kind == NodeKind::P).collect();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].vertices, vec![0, 1]);
        assert_eq!(p[0].virtual_edges().count(), 3);
        let s: Vec<_> = t.nodes.iter().filter(|n| n.kind == NodeKind::S).collect();
        assert_eq!(s.len(), 3);
        for n in s {
            assert_eq!(n.vertices.len(), 3);
            assert_eq!(n.virtual_edges().count(), 1);
        }
        assert_eq!(t.leaf_order.len(), 3);
        assert_eq!(t.reassemble(), g.edges().to_vec());
    }

    #[test]
    fn rejects_non_biconnected() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(spqr_tree(&p3), Err(Error::NotBiconnected)));
    }
}
