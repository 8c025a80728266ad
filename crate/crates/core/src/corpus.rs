//! Small graph families for exhaustive checks.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Canonical adjacency key under vertex relabeling. Brute force over
/// permutations that keep vertices sorted by degree; fine for n <= 8.
pub fn canonical_key(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let mut by_deg: Vec<usize> = (0..n).collect();
    by_deg.sort_by_key(|&v| (g.degree(v), v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &by_deg {
        match classes.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<Vec<u64>> = None;
    let mut order = Vec::with_capacity(n);
    permute_classes(g, &classes, 0, &mut order, &mut best);
    best.unwrap_or_default()
}

fn permute_classes(
    g: &Graph,
    classes: &[Vec<usize>],
    ci: usize,
    order: &mut Vec<usize>,
    best: &mut Option<Vec<u64>>,
) {
    if ci == classes.len() {
        let n = order.len();
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut rows = vec![0u64; n];
        for &(a, b) in g.edges() {
            rows[pos[a]] |= 1 << pos[b];
            rows[pos[b]] |= 1 << pos[a];
        }
        if best.as_ref().is_none_or(|b| rows < *b) {
            *best = Some(rows);
        }
        return;
    }
    let mut items = classes[ci].clone();
    heap_permutations(&mut items, classes[ci].len(), &mut |perm| {
        let base = order.len();
        order.extend_from_slice(perm);
        permute_classes(g, classes, ci + 1, order, best);
        order.truncate(base);
    });
}

fn heap_permutations(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, f);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        items.swap(j, k - 1);
    }
}

/// All connected graphs on `n` vertices up to isomorphism (n <= 7),
/// in a fixed order. Every connected graph has a vertex whose removal
/// leaves it connected, so extending the (n-1)-vertex list suffices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(
        (1..=7).contains(&n),
        "exhaustive corpus supports 1..=7 vertices"
    );
    if n == 1 {
        return vec![Graph::new(1, &[]).unwrap()];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for h in connected_graphs(n - 1) {
        for mask in 1u32..(1 << (n - 1)) {
            let mut edges = h.edges().to_vec();
            edges.extend(
                (0..n - 1)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| (i, n - 1)),
            );
            let g = Graph::new(n, &edges).unwrap();
            if seen.insert(canonical_key(&g)) {
                out.push(g);
            }
        }
    }
    out
}

/// Every connected graph with at most `max_n` vertices, up to isomorphism.
pub fn exhaustive(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// Random connected graph: a random tree plus each other edge with
/// probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges_dedup(n, &edges).unwrap()
}

/// `count` pairwise non-isomorphic connected graphs on `n` vertices drawn
/// with a fixed seed.
pub fn sampled_connected(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let p = rng.gen_range(0.05..0.6);
        let g = random_connected(&mut rng, n, p);
        if seen.insert(canonical_key(&g)) {
            out.push(g);
        }
    }
    out
}

/// The fixed 50-graph sample on 7 vertices.
pub fn sample_n7() -> Vec<Graph> {
    sampled_connected(7, 50, 7)
}

/// Connected graphs with n <= 6 plus the 7-vertex sample.
pub fn standard() -> Vec<Graph> {
    let mut v = exhaustive(6);
    v.extend(sample_n7());
    v
}

/// `count` distinct connected, non-biconnected graphs with 3..=`max_n`
/// vertices, drawn with a fixed seed.
pub fn sampled_separable(max_n: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=max_n);
        let p = rng.gen_range(0.0..0.45);
        let g = random_connected(&mut rng, n, p);
        if g.is_biconnected() {
            continue;
        }
        if seen.insert((n, g.edges().to_vec())) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn key_is_invariant() {
        let a = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::new(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn samples_are_connected() {
        let s = sample_n7();
        assert_eq!(s.len(), 50);
        assert!(s.iter().all(|g| g.is_connected() && g.n() == 7));
        let m = sampled_separable(10, 200, 3);
        assert!(m.iter().all(|g| g.is_connected() && !g.is_biconnected()));
    }
}
