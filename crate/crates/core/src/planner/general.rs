use crate::district::{
    is_contractible_map, removal_candidates, shrink_district, Candidate, DistrictMap, Recorder,
    Switch, SwitchPlan,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::blocks::{RootedBlocks, View};

/// Switch counts at the end of each phase of [`pseudo_canonical`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct PhaseMarks {
    pub elbow: usize,
    pub leaf: usize,
    pub consolidate: usize,
}

/// Removes `verts` from district `i`. Candidates are ranked by `rank`
/// (lower first, `None` rejects), then by `(u, v)`.
pub(crate) fn shed(
    g: &Graph,
    rec: &mut Recorder,
    i: usize,
    verts: &[usize],
    rank: impl Fn(&DistrictMap, &Candidate) -> Option<usize>,
) -> Result<()> {
    shrink_district(g, rec, i, verts, |m, cs| {
        cs.iter()
            .filter_map(|c| rank(m, c).map(|r| (r, c.u, c.v)))
            .min()
            .map(|(_, u, v)| Candidate { v, u })
    })
}

/// Runs the switches `(p[j-1], p[j], p[j+1])` along `chain`, then moves
/// the last vertex into the district of `sink`.
pub(crate) fn caterpillar(
    g: &Graph,
    rec: &mut Recorder,
    chain: &[usize],
    sink: usize,
) -> Result<()> {
    let m = chain.len() - 1;
    for j in 1..m {
        rec.apply(g, Switch::new(chain[j - 1], chain[j], chain[j + 1]))?;
    }
    rec.apply(g, Switch::new(chain[m - 1], chain[m], sink))
}

/// Builds the start of a pushing chain inside `region`: returns
/// `(p0, p1, ..., exit)` where `p0, p1` share a district that stays
/// connected without `p1`, and the remaining vertices are singletons.
/// Districts may shrink on the way; only vertices in `region` and the
/// exit expand.
pub(crate) fn feed(
    g: &Graph,
    rec: &mut Recorder,
    region: &[bool],
    exit: usize,
) -> Result<Vec<usize>> {
    for _ in 0..=g.n() {
        let q = singleton_path_to(g, &rec.map, region, exit).ok_or_else(|| {
            Error::PreconditionViolated("no district of size > 1 reaches the exit".into())
        })?;
        let q1 = q[0];
        let i = rec.map.district_of(q1);
        if let Some(p0) = anchor(g, &rec.map, q1) {
            let mut chain = vec![p0];
            chain.extend(q);
            return Ok(chain);
        }
        let others: Vec<usize> = rec
            .map
            .district(i)
            .iter()
            .copied()
            .filter(|&x| x != q1)
            .collect();
        let pos = |u: usize| q[1..].iter().position(|&x| x == u).map(|j| j + 1);
        let c = removal_candidates(g, &rec.map, i, &others)
            .into_iter()
            .filter(|c| region[c.u] || c.u == exit)
            .min_by_key(|c| (pos(c.u).is_none(), c.u, c.v))
            .ok_or_else(|| Error::Internal(format!("district {i} cannot shrink toward {q1}")))?;
        step_out(g, rec, c)?;
        if let Some(j) = pos(c.u) {
            let mut chain = vec![c.v];
            chain.extend_from_slice(&q[j..]);
            return Ok(chain);
        }
    }
    Err(Error::Internal("pushing chain did not converge".into()))
}

/// A district neighbour of `q` when the district of `q` stays connected
/// and nonempty without it.
fn anchor(g: &Graph, p: &DistrictMap, q: usize) -> Option<usize> {
    let i = p.district_of(q);
    let mut rest = p.mask(i);
    rest[q] = false;
    if p.district(i).len() < 2 || !g.induces_connected(&rest) {
        return None;
    }
    g.neighbors(q).iter().copied().find(|&x| rest[x])
}

/// Applies the switch moving `c.v` into the district of `c.u`.
pub(crate) fn step_out(g: &Graph, rec: &mut Recorder, c: Candidate) -> Result<()> {
    let i = rec.map.district_of(c.v);
    let x = *g
        .neighbors(c.v)
        .iter()
        .find(|&&x| rec.map.district_of(x) == i)
        .expect("district is connected");
    rec.apply(g, Switch::new(x, c.v, c.u))
}

/// Shortest path `(q1, ..., exit)` where `q1` lies in a district of size
/// > 1 and the other vertices are singletons, all inside `region` apart
/// > from the exit. Among the nearest choices of `q1`, one whose district
/// > stays connected without it wins, then the smallest id.
fn singleton_path_to(
    g: &Graph,
    p: &DistrictMap,
    region: &[bool],
    exit: usize,
) -> Option<Vec<usize>> {
    let big = |v: usize| p.district(p.district_of(v)).len() > 1;
    if big(exit) {
        return Some(vec![exit]);
    }
    let mut prev = vec![usize::MAX; g.n()];
    prev[exit] = exit;
    let mut layer = vec![exit];
    while !layer.is_empty() {
        let mut hits: Vec<(bool, usize, usize)> = Vec::new();
        let mut next = Vec::new();
        for &v in &layer {
            for &x in g.neighbors(v) {
                if !region[x] || prev[x] != usize::MAX {
                    continue;
                }
                if big(x) {
                    hits.push((anchor(g, p, x).is_none(), x, v));
                } else {
                    prev[x] = v;
                    next.push(x);
                }
            }
        }
        if let Some(&(_, x, v)) = hits.iter().min() {
            let mut path = vec![x, v];
            let mut y = v;
            while y != exit {
                y = prev[y];
                path.push(y);
            }
            return Some(path);
        }
        layer = next;
    }
    None
}

/// Moves one district from block `w1` to block `w2` along `path`, whose
/// vertices must all be singletons. Block ids index `block_tree(g)`.
pub fn push_district(
    g: &Graph,
    p: &DistrictMap,
    w1: usize,
    path: &[usize],
    w2: usize,
) -> Result<SwitchPlan> {
    let rb = RootedBlocks::new(g)?;
    let nb = rb.block_count();
    if w1 >= nb || w2 >= nb {
        return Err(Error::PreconditionViolated("unknown block".into()));
    }
    let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
        return Err(Error::PreconditionViolated("path is empty".into()));
    };
    if !rb.contains(w1, first) {
        return Err(Error::PreconditionViolated(
            "first path vertex not in w1".into(),
        ));
    }
    if !rb.contains(w2, last) {
        return Err(Error::PreconditionViolated(
            "last path vertex not in w2".into(),
        ));
    }
    if path.windows(2).any(|e| !g.has_edge(e[0], e[1])) {
        return Err(Error::PreconditionViolated(
            "path is not a path of the graph".into(),
        ));
    }
    if path
        .iter()
        .any(|&v| p.district(p.district_of(v)).len() != 1)
    {
        return Err(Error::PreconditionViolated(
            "path vertex not a singleton district".into(),
        ));
    }
    let big = (0..p.k())
        .any(|i| p.district(i).len() > 1 && p.district(i).iter().all(|&v| rb.contains(w1, v)));
    if !big {
        return Err(Error::PreconditionViolated(
            "w1 holds no district of size > 1".into(),
        ));
    }
    let mut rec = Recorder::new(p);
    let region: Vec<bool> = (0..g.n()).map(|v| rb.contains(w1, v)).collect();
    let mut chain = feed(g, &mut rec, &region, first)?;
    chain.extend_from_slice(&path[1..]);
    let m = chain.len() - 1;
    let sink = g
        .neighbors(chain[m])
        .iter()
        .copied()
        .filter(|&y| rb.contains(w2, y) && !chain.contains(&y))
        .min()
        .ok_or_else(|| {
            Error::PreconditionViolated("w2 has no vertex to absorb the path end".into())
        })?;
    caterpillar(g, &mut rec, &chain, sink)?;
    Ok(rec.plan())
}

/// Takes a contractible map to pseudo-canonical form.
pub fn pseudo_canonical(g: &Graph, p: &DistrictMap) -> Result<(SwitchPlan, DistrictMap)> {
    let (plan, out, _) = pseudo_canonical_marked(g, p)?;
    Ok((plan, out))
}

/// [`pseudo_canonical`] with the switch count at the end of each phase.
pub fn pseudo_canonical_marked(
    g: &Graph,
    p: &DistrictMap,
) -> Result<(SwitchPlan, DistrictMap, PhaseMarks)> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if p.k() == 1 {
        return Ok((SwitchPlan::empty(p), p.clone(), PhaseMarks::default()));
    }
    let rb = RootedBlocks::new(g)?;
    if !is_contractible_map(&rb.tree, p) {
        return Err(Error::IncontractibleInput);
    }
    let mut rec = Recorder::new(p);
    let mut marks = PhaseMarks::default();
    if rb.block_count() > 1 {
        drop_elbows(g, &rb, &mut rec)?;
        marks.elbow = rec.steps.len();
        confine_leaves(g, &rb, &mut rec)?;
        marks.leaf = rec.steps.len();
        consolidate(g, &rb, &mut rec)?;
    }
    marks.consolidate = rec.steps.len();
    if !View::new(&rb, &rec.map).is_pseudo_canonical() {
        return Err(Error::Internal("result is not pseudo-canonical".into()));
    }
    let (plan, out) = rec.into_parts();
    Ok((plan, out, marks))
}

fn guard(g: &Graph) -> usize {
    4 * g.n() * g.n() + 16
}

/// Phase 1: contracts each elbow onto its cut vertex, highest first.
fn drop_elbows(g: &Graph, rb: &RootedBlocks, rec: &mut Recorder) -> Result<()> {
    for _ in 0..guard(g) {
        let v = View::new(rb, &rec.map);
        let Some(w) = rb.dfs.iter().copied().find(|&w| v.is_elbow(w)) else {
            return Ok(());
        };
        let c = rb.parent_cut[w].expect("elbow below a cut");
        let i = rec.map.district_of(c);
        let verts: Vec<usize> = v.down(w).into_iter().filter(|&x| x != c).collect();
        shed(g, rec, i, &verts, |_, _| Some(0))?;
    }
    Err(Error::Internal("elbow removal did not converge".into()))
}

/// Phase 2: moves leaf districts out of every non-leaf block and the root.
fn confine_leaves(g: &Graph, rb: &RootedBlocks, rec: &mut Recorder) -> Result<()> {
    for &w in &rb.dfs {
        if w != rb.root && rb.is_leaf_block(w) {
            continue;
        }
        let mut done = false;
        for _ in 0..guard(g) {
            let v = View::new(rb, &rec.map);
            let hit = rb
                .vertices(w)
                .iter()
                .map(|&x| rec.map.district_of(x))
                .filter(|&i| v.is_leaf_district(i))
                .min();
            let Some(i) = hit else {
                done = true;
                break;
            };
            let verts = leaf_exit_set(g, rb, &v, i, w);
            shed(g, rec, i, &verts, |m, c| {
                let leaf = View::new(rb, m).is_leaf_district(m.district_of(c.u));
                Some(2 * usize::from(!rb.contains(w, c.u)) + usize::from(leaf))
            })?;
        }
        if !done {
            return Err(Error::Internal("leaf confinement did not converge".into()));
        }
    }
    Ok(())
}

/// Vertices to remove so that leaf district `i` leaves block `w`: all of
/// `V_i` outside the part hanging below the cut toward its leaf block.
fn leaf_exit_set(g: &Graph, rb: &RootedBlocks, v: &View, i: usize, w: usize) -> Vec<usize> {
    let l = v.leaf_of(i).expect("leaf district");
    let cl = rb.parent_cut[l];
    let inner = *rb
        .vertices(l)
        .iter()
        .find(|&&x| Some(x) != cl)
        .expect("block has two vertices");
    let x = rb
        .child_toward(w, inner)
        .and_then(|b| rb.parent_cut[b])
        .expect("leaf block below w");
    let mut mask = v.p.mask(i);
    mask[x] = false;
    let dist = g.bfs_within(inner, &mask);
    v.p.district(i)
        .iter()
        .copied()
        .filter(|&y| dist[y] == usize::MAX)
        .collect()
}

/// The leaf district covering block `b` apart from its parent cut.
pub(crate) fn leaf_cover(v: &View, b: usize) -> Option<usize> {
    let c = v.rb.parent_cut[b];
    let x = *v.rb.vertices(b).iter().find(|&&x| Some(x) != c)?;
    let i = v.p.district_of(x);
    let covers =
        v.rb.vertices(b)
            .iter()
            .all(|&y| Some(y) == c || v.p.district_of(y) == i);
    (covers && v.is_leaf_district(i)).then_some(i)
}

/// Leaf district `j` may take `y` when `y` lies in a block, other than as
/// its parent cut, whose leftmost child block `j` already covers.
fn may_extend(v: &View, j: usize, y: usize) -> bool {
    v.rb.tree.blocks_of[y].iter().any(|&b| {
        v.rb.parent_cut[b] != Some(y)
            && v.rb
                .leftmost_child(b)
                .is_some_and(|x| leaf_cover(v, x) == Some(j))
    })
}

/// Phase 3: per-block consolidation, pulling districts up from child
/// blocks until each block is all singletons or its children are all
/// covered by leaf districts.
fn consolidate(g: &Graph, rb: &RootedBlocks, rec: &mut Recorder) -> Result<()> {
    let n = g.n();
    for &w in &rb.dfs {
        let c = rb.parent_cut[w];
        let mut settled = false;
        for _ in 0..guard(g) {
            let v = View::new(rb, &rec.map);
            if v.is_singletons(w) || v.is_leaf_type(w) {
                settled = true;
                break;
            }
            let Some(w2) = rb.children[w].iter().copied().find(|&x| !v.is_leaf_type(x)) else {
                settled = true;
                break;
            };
            let c2 = rb.parent_cut[w2].expect("child block has a parent cut");
            let i = rec.map.district_of(c2);
            let verts: Vec<usize> = rec
                .map
                .district(i)
                .iter()
                .copied()
                .filter(|&x| x != c2 && rb.in_sub[w][x])
                .collect();
            let verts =
                if c.is_none() && rb.vertices(w).iter().all(|&x| rec.map.district_of(x) == i) {
                    verts.into_iter().filter(|&x| !rb.contains(w, x)).collect()
                } else {
                    verts
                };
            shed(g, rec, i, &verts, |m, cand| {
                if !rb.in_sub[w][cand.u] {
                    return None;
                }
                let v = View::new(rb, m);
                let j = m.district_of(cand.u);
                if c.is_some_and(|c| m.district_of(c) == j) {
                    return Some(2);
                }
                if !v.is_leaf_district(j) {
                    return Some(0);
                }
                may_extend(&v, j, cand.v).then_some(1)
            })?;
            let v = View::new(rb, &rec.map);
            if v.is_leaf_type(w2) || v.is_singletons(w) {
                continue;
            }
            let region: Vec<bool> = (0..n).map(|x| rb.contains(w, x) && Some(x) != c).collect();
            let chain = feed(g, rec, &region, c2)?;
            let v = View::new(rb, &rec.map);
            let sink = g
                .neighbors(c2)
                .iter()
                .copied()
                .filter(|&y| rb.contains(w2, y) && !chain.contains(&y))
                .min_by_key(|&y| (v.is_leaf_district(rec.map.district_of(y)), y))
                .ok_or_else(|| Error::Internal("no sink for the pushed district".into()))?;
            caterpillar(g, rec, &chain, sink)?;
        }
        if !settled {
            return Err(Error::Internal("consolidation did not converge".into()));
        }
        let v = View::new(rb, &rec.map);
        if let Some(c) = c {
            if !v.is_singletons(w) && !v.is_leaf_type(w) {
                let i = rec.map.district_of(c);
                let verts: Vec<usize> = rec
                    .map
                    .district(i)
                    .iter()
                    .copied()
                    .filter(|&x| x != c && rb.in_sub[w][x])
                    .collect();
                shed(g, rec, i, &verts, |m, cand| {
                    if !rb.in_sub[w][cand.u] || cand.u == c {
                        return None;
                    }
                    Some(usize::from(
                        View::new(rb, m).is_leaf_district(m.district_of(cand.u)),
                    ))
                })?;
            }
        }
    }
    Ok(())
}
