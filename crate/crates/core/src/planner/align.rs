use crate::district::{is_contractible_map, DistrictMap, Recorder, Switch, SwitchPlan};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::biconnected::canonical_biconnected;
use super::blocks::{RootedBlocks, TypeTag, View};
use super::general::{caterpillar, feed, leaf_cover, shed};

/// Takes pseudo-canonical `p1` to the signature of pseudo-canonical `p2`.
///
/// While the per-block district counts differ, one district is pushed
/// from the lowest block with a surplus to the highest block with a
/// deficit. Once the counts agree, only the interiors of consolidated
/// blocks differ; each is brought to its biconnected canonical form from
/// both sides and the two plans are spliced.
pub fn align_pseudo_canonical(g: &Graph, p1: &DistrictMap, p2: &DistrictMap) -> Result<SwitchPlan> {
    if p1.k() != p2.k() {
        return Err(Error::MismatchedK(p1.k(), p2.k()));
    }
    if p1.n() != g.n() || p2.n() != g.n() {
        return Err(Error::InvalidMap("map size differs from graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if p1.k() == 1 && p2.k() == 1 {
        return Ok(SwitchPlan::empty(p1));
    }
    let rb = RootedBlocks::new(g)?;
    if !is_contractible_map(&rb.tree, p1) || !is_contractible_map(&rb.tree, p2) {
        return Err(Error::IncontractibleInput);
    }
    if rb.block_count() == 1 {
        let (a, _) = canonical_biconnected(g, p1)?;
        let (b, _) = canonical_biconnected(g, p2)?;
        return Ok(a.concat(&b.reversed()));
    }
    if !View::new(&rb, p1).is_pseudo_canonical() || !View::new(&rb, p2).is_pseudo_canonical() {
        return Err(Error::NotPseudoCanonical);
    }
    let d2 = View::new(&rb, p2)
        .d_vector()
        .ok_or(Error::NotPseudoCanonical)?;
    let mut rec = Recorder::new(p1);
    loop {
        let d1 = View::new(&rb, &rec.map)
            .d_vector()
            .ok_or(Error::NotPseudoCanonical)?;
        if d1 == d2 {
            break;
        }
        let before = potential(&d1, &d2);
        push_round(g, &rb, &mut rec, &d1, &d2)?;
        let v = View::new(&rb, &rec.map);
        let after = v.d_vector().map(|d| potential(&d, &d2));
        if !v.is_pseudo_canonical() || after.is_none_or(|a| a >= before) {
            return Err(Error::Internal(
                "pushing round did not lower the potential".into(),
            ));
        }
    }
    splice_consolidated(g, &rb, &mut rec, p2)?;
    if rec.map.signature() != p2.signature() {
        return Err(Error::Internal(
            "aligned map differs from the target".into(),
        ));
    }
    Ok(rec.plan())
}

/// Sum over blocks of `|d1(w) - d2(w)|`.
pub fn potential(d1: &[usize], d2: &[usize]) -> usize {
    d1.iter().zip(d2).map(|(&a, &b)| a.abs_diff(b)).sum()
}

/// Moves one district from the lowest surplus block to the highest
/// deficit block.
fn push_round(
    g: &Graph,
    rb: &RootedBlocks,
    rec: &mut Recorder,
    d1: &[usize],
    d2: &[usize],
) -> Result<()> {
    let nb = rb.block_count();
    let w1 = (0..nb)
        .filter(|&w| d1[w] < d2[w])
        .min_by_key(|&w| (rb.depth[w], rb.dfs_index(w)))
        .expect("counts differ and sum to k");
    let w2 = (0..nb)
        .filter(|&w| d1[w] > d2[w])
        .min_by_key(|&w| (std::cmp::Reverse(rb.depth[w]), rb.dfs_index(w)))
        .expect("counts differ and sum to k");
    let (Some(c1), Some(c2)) = (rb.parent_cut[w1], rb.parent_cut[w2]) else {
        return Err(Error::Internal(
            "root block chosen for a pushing round".into(),
        ));
    };
    if rb.is_ancestor(w2, w1) || rb.is_ancestor(w1, w2) {
        return Err(Error::Internal("pushing between nested blocks".into()));
    }
    let single: Vec<bool> = (0..g.n())
        .map(|v| rec.map.district(rec.map.district_of(v)).len() == 1)
        .collect();
    let path = g
        .shortest_path_within(c1, &single, |v| v == c2)
        .ok_or_else(|| Error::Internal("no singleton path between the blocks".into()))?;
    if path
        .iter()
        .any(|&v| (v != c1 && rb.contains(w1, v)) || (v != c2 && rb.contains(w2, v)))
    {
        return Err(Error::Internal("singleton path enters an end block".into()));
    }

    let v = View::new(rb, &rec.map);
    let mut chain = if v.type_of(w1) == TypeTag::Leaf && !rb.is_leaf_block(w1) {
        // The leaf district covering w1 hands all of w1 - {c1} to {c1};
        // c1 then walks away and leaves a single district behind.
        let x = *rb
            .vertices(w1)
            .iter()
            .find(|&&x| x != c1)
            .expect("block has two vertices");
        let i = rec.map.district_of(x);
        let verts: Vec<usize> = rb
            .vertices(w1)
            .iter()
            .copied()
            .filter(|&x| x != c1)
            .collect();
        shed(g, rec, i, &verts, |m, cand| {
            (m.district_of(cand.u) == m.district_of(c1)).then_some(0)
        })?;
        let p0 = *g
            .neighbors(c1)
            .iter()
            .find(|&&x| rb.contains(w1, x))
            .expect("c1 has a neighbour in w1");
        vec![p0, c1]
    } else {
        let region: Vec<bool> = (0..g.n()).map(|x| rb.contains(w1, x) && x != c1).collect();
        feed(g, rec, &region, c1)?
    };
    chain.extend_from_slice(&path[1..]);

    let inner: Vec<usize> = rb
        .vertices(w2)
        .iter()
        .copied()
        .filter(|&x| x != c2)
        .collect();
    let mut ids: Vec<usize> = inner.iter().map(|&x| rec.map.district_of(x)).collect();
    ids.sort_unstable();
    ids.dedup();
    let y = *g
        .neighbors(c2)
        .iter()
        .find(|&&y| rb.contains(w2, y))
        .expect("c2 has a neighbour in w2");
    caterpillar(g, rec, &chain, y)?;
    let j = rec.map.district_of(c2);
    let verts: Vec<usize> = rec
        .map
        .district(j)
        .iter()
        .copied()
        .filter(|&x| x != c2)
        .collect();
    if ids.len() >= 2 {
        shed(g, rec, j, &verts, |_, cand| {
            (rb.contains(w2, cand.u) && cand.u != c2).then_some(0)
        })
    } else {
        let v = View::new(rb, &rec.map);
        let target = rb
            .leftmost_child(w2)
            .and_then(|b| leaf_cover(&v, b))
            .ok_or_else(|| Error::Internal("surplus block has no covered child".into()))?;
        shed(g, rec, j, &verts, |m, cand| {
            (m.district_of(cand.u) == target).then_some(0)
        })
    }
}

/// Runs the biconnected canonical algorithm inside every consolidated
/// block from both sides and splices the two plans.
fn splice_consolidated(
    g: &Graph,
    rb: &RootedBlocks,
    rec: &mut Recorder,
    p2: &DistrictMap,
) -> Result<()> {
    let blocks: Vec<usize> = {
        let v = View::new(rb, &rec.map);
        rb.dfs
            .iter()
            .copied()
            .filter(|&w| v.type_of(w) == TypeTag::Consolidated)
            .collect()
    };
    for w in blocks {
        let verts = rb.vertices(w).to_vec();
        let h = g.induced(&verts);
        let (a, _) = canonical_biconnected(&h, &restrict(&rec.map, &verts)?)?;
        let (b, _) = canonical_biconnected(&h, &restrict(p2, &verts)?)?;
        for s in a.steps.iter().chain(b.reversed().steps.iter()) {
            rec.apply(g, Switch::new(verts[s.u], verts[s.v], verts[s.w]))?;
        }
    }
    Ok(())
}

/// The map induced on `verts`, whose districts must not leave `verts`.
fn restrict(p: &DistrictMap, verts: &[usize]) -> Result<DistrictMap> {
    let mut local = vec![usize::MAX; p.n()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let mut ids: Vec<usize> = verts.iter().map(|&v| p.district_of(v)).collect();
    ids.sort_unstable();
    ids.dedup();
    let mut districts = Vec::with_capacity(ids.len());
    for i in ids {
        let d: Vec<usize> = p.district(i).iter().map(|&v| local[v]).collect();
        if d.contains(&usize::MAX) {
            return Err(Error::Internal(
                "district leaves a consolidated block".into(),
            ));
        }
        districts.push(d);
    }
    DistrictMap::from_districts(verts.len(), districts)
}
