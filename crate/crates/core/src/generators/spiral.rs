use std::collections::BTreeMap;

use serde_json::json;

use super::instance::{map_of, Instance};
use super::{expect_kind, Mover};
use crate::district::SwitchPlan;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A diamond chain: diamond `j` has cuts `cuts[j]` (each with a pendant
/// leaf) and interior vertices `inter[j]` (left) and `inter[j + 1]` (right).
struct Chain {
    cuts: Vec<(usize, usize)>,
    leaves: Vec<usize>,
    inter: Vec<usize>,
}

impl Chain {
    fn build(len: usize, next: &mut usize, edges: &mut Vec<(usize, usize)>) -> Chain {
        let mut take = || {
            *next += 1;
            *next - 1
        };
        let mut cuts = Vec::new();
        let mut leaves = Vec::new();
        for _ in 0..len {
            let (x, y, lx, ly) = (take(), take(), take(), take());
            cuts.push((x, y));
            leaves.extend([lx, ly]);
            edges.extend([(x, lx), (y, ly)]);
        }
        let inter: Vec<usize> = (0..=len).map(|_| take()).collect();
        for (j, &(x, y)) in cuts.iter().enumerate() {
            for c in [inter[j], inter[j + 1]] {
                edges.extend([(x, c), (y, c)]);
            }
        }
        Chain {
            cuts,
            leaves,
            inter,
        }
    }

    /// Diamond districts; diamond `j` takes `inter[side(j)]`.
    fn districts(&self, side: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
        (0..self.cuts.len())
            .map(|j| {
                let (x, y) = self.cuts[j];
                let mut d = vec![x, y, self.leaves[2 * j], self.leaves[2 * j + 1]];
                d.extend(side(j).into_iter().map(|i| self.inter[i]));
                d
            })
            .collect()
    }

    /// Index of the diamond whose district holds both of its interiors.
    fn doubled(&self, mv: &Mover) -> Option<usize> {
        let p = mv.map();
        (0..self.cuts.len()).find(|&j| {
            let dx = p.district_of(self.cuts[j].0);
            p.district_of(self.inter[j]) == dx && p.district_of(self.inter[j + 1]) == dx
        })
    }

    /// Shifts the doubled diamond until it holds `inter[i]`.
    fn bring(&self, mv: &mut Mover, i: usize) -> Result<()> {
        loop {
            let j = self
                .doubled(mv)
                .ok_or_else(|| Error::Internal("chain has no spare interior".into()))?;
            if i == j || i == j + 1 {
                return Ok(());
            }
            if i > j + 1 {
                mv.mv(self.inter[j + 1], self.cuts[j + 1].0)?;
            } else {
                mv.mv(self.inter[j], self.cuts[j - 1].0)?;
            }
        }
    }

    /// Hands the free interior `inter[i]` to a neighbouring diamond, the
    /// one on the side of `toward`.
    fn release(&self, mv: &mut Mover, i: usize, toward: usize) -> Result<()> {
        let last = self.cuts.len() - 1;
        let j = if i == 0 {
            0
        } else if i > last || toward < i {
            i - 1
        } else {
            i
        };
        mv.mv(self.inter[i], self.cuts[j].0)
    }
}

/// Spiral order of the chain interiors: A-indices inward from both ends,
/// B-indices outward from the middle, interleaved.
fn spiral_order(r: usize) -> Vec<(bool, usize)> {
    let a = |t: usize| {
        if t.is_multiple_of(2) {
            t / 2
        } else {
            r - (t - 1) / 2
        }
    };
    let b = |t: usize| {
        if t % 2 == 1 {
            r / 2 + t.div_ceil(2) - 1
        } else {
            r / 2 - t / 2 - 1
        }
    };
    let mut s = Vec::with_capacity(2 * r + 1);
    for t in 0..r {
        s.push((true, a(t)));
        s.push((false, b(t)));
    }
    s.push((true, a(r)));
    s
}

/// Two diamond chains of lengths `r` and `r - 1` joined by a spiral path
/// through their interiors, with a hanging path at each end of the spiral.
///
/// Each hanging path has `q - 1 + ℓ` vertices below its attachment. Map A
/// has the diamonds of chain A switched right, the first hanging path
/// split into one district on its first `q` vertices (attachment included)
/// and `ℓ` singletons, and the second hanging path in one district. Map B
/// mirrors this on the other end. Chain B keeps its last diamond doubled.
pub fn gen_spiral_lb(r: usize, q: usize, l: usize) -> Result<Instance> {
    if r < 2 || r % 2 == 1 || q == 0 || l == 0 {
        return Err(Error::BadParams(format!(
            "need even r >= 2, q >= 1, l >= 1; got r={r}, q={q}, l={l}"
        )));
    }
    let mut edges = Vec::new();
    let mut next = 0;
    let ca = Chain::build(r, &mut next, &mut edges);
    let cb = Chain::build(r - 1, &mut next, &mut edges);
    let order = spiral_order(r);
    let at = |&(is_a, i): &(bool, usize)| if is_a { ca.inter[i] } else { cb.inter[i] };
    let spiral: Vec<usize> = order.iter().map(at).collect();
    for w in spiral.windows(2) {
        edges.push((w[0], w[1]));
    }
    let hang = q - 1 + l;
    let (root1, root2) = (ca.inter[0], ca.inter[r / 2]);
    let mut path = |root: usize| {
        let vs: Vec<usize> = (0..hang).map(|i| next + i).collect();
        next += hang;
        let mut prev = root;
        for &v in &vs {
            edges.push((prev, v));
            prev = v;
        }
        vs
    };
    let d1 = path(root1);
    let d2 = path(root2);
    let n = next;
    let g = Graph::new(n, &edges)?;
    debug_assert!(spiral.windows(2).all(|w| g.has_edge(w[0], w[1])));
    debug_assert_eq!(spiral.len(), 2 * r + 1);

    let b_side = |j: usize| if j == r - 2 { vec![j, j + 1] } else { vec![j] };
    let mut a = ca.districts(|j| vec![j + 1]);
    a.extend(cb.districts(b_side));
    let mut first = vec![root1];
    first.extend(&d1[..q - 1]);
    a.push(first);
    a.extend(d1[q - 1..].iter().map(|&v| vec![v]));
    a.push(d2.clone());

    let mut b = ca.districts(|j| if j < r / 2 { vec![j] } else { vec![j + 1] });
    b.extend(cb.districts(b_side));
    b.push(d1.clone());
    let mut last = vec![root2];
    last.extend(&d2[..q - 1]);
    b.push(last);
    b.extend(d2[q - 1..].iter().map(|&v| vec![v]));

    let cuts = |c: &Chain| c.cuts.iter().flat_map(|&(x, y)| [x, y]).collect::<Vec<_>>();
    let roles = BTreeMap::from([
        ("chain_a_interior".into(), ca.inter.clone()),
        ("chain_b_interior".into(), cb.inter.clone()),
        ("chain_a_cuts".into(), cuts(&ca)),
        ("chain_b_cuts".into(), cuts(&cb)),
        ("chain_a_leaves".into(), ca.leaves.clone()),
        ("chain_b_leaves".into(), cb.leaves.clone()),
        ("spiral".into(), spiral),
        ("tree_1".into(), d1),
        ("tree_2".into(), d2),
        ("tree_roots".into(), vec![root1, root2]),
    ]);
    let params = BTreeMap::from([
        ("r".into(), json!(r)),
        ("q".into(), json!(q)),
        ("l".into(), json!(l)),
    ]);
    let mut inst = Instance::new("spiral-lb", g, map_of(n, a), map_of(n, b), params, roles)?;
    inst.meta.lower_bound = Some(spiral_bound(r, q, l));
    inst.meta.notes.extend([
        "hanging trees are paths: pendant leaves could never leave their districts".to_string(),
        "the district on the first q vertices of a hanging path includes its attachment vertex"
            .to_string(),
    ]);
    Ok(inst)
}

/// `ℓ (C(r+1, 2) + C(r, 2)) + (ℓ - 1) 2q`.
pub(crate) fn spiral_bound(r: usize, q: usize, l: usize) -> usize {
    l * ((r + 1) * r / 2 + r * (r - 1) / 2) + (l - 1) * 2 * q
}

/// Moves the mobile districts from the first hanging path to the second
/// one at a time along the spiral. While a mobile district sits in one
/// chain, the other chain shifts its doubled diamond to free the next
/// spiral vertex.
pub fn witness_spiral(inst: &Instance) -> Result<SwitchPlan> {
    expect_kind(inst, "spiral-lb")?;
    let (r, q, l) = (
        inst.param_usize("r").unwrap_or(0),
        inst.param_usize("q").unwrap_or(0),
        inst.param_usize("l").unwrap_or(0),
    );
    let g = &inst.graph;
    let chain = |c: &str, len: usize| {
        let cuts = inst.role(&format!("chain_{c}_cuts"));
        Chain {
            cuts: (0..len).map(|j| (cuts[2 * j], cuts[2 * j + 1])).collect(),
            leaves: inst.role(&format!("chain_{c}_leaves")).to_vec(),
            inter: inst.role(&format!("chain_{c}_interior")).to_vec(),
        }
    };
    let (ca, cb) = (chain("a", r), chain("b", r - 1));
    let (d1, d2) = (inst.role("tree_1"), inst.role("tree_2"));
    let d = |i: usize| if i == 0 { ca.inter[0] } else { d1[i - 1] };
    let e = |i: usize| if i == 0 { ca.inter[r / 2] } else { d2[i - 1] };
    let order = spiral_order(r);
    let mut mv = Mover::new(g, &inst.map_a);
    for t in 0..l {
        if t == 0 {
            for j in (1..q).rev() {
                mv.mv(d(j), d(j + 1))?;
            }
        } else {
            ca.bring(&mut mv, 0)?;
            mv.mv(d(0), d(1))?;
            for j in (1..q + t).rev() {
                mv.mv(d(j), d(j + 1))?;
            }
        }
        for s in 0..2 * r {
            let (cur, nxt) = (order[s], order[s + 1]);
            let (here, there) = match cur.0 {
                true => (&ca, &cb),
                false => (&cb, &ca),
            };
            there.bring(&mut mv, nxt.1)?;
            let (cv, nv) = (here.inter[cur.1], there.inter[nxt.1]);
            mv.mv(nv, cv)?;
            let toward = match order.get(s + 2) {
                Some(x) => x.1,
                None if t + 1 < l => order[1].1,
                None => r - 1,
            };
            here.release(&mut mv, cur.1, toward)?;
        }
        if t + 1 < l {
            for j in (1..=t + 1).rev() {
                mv.mv(e(j), e(j - 1))?;
            }
            ca.release(&mut mv, r / 2, 0)?;
        } else {
            for s in 0..q - 1 {
                for j in (s + 1..=l + s).rev() {
                    mv.mv(e(j), e(j - 1))?;
                }
            }
        }
    }
    cb.bring(&mut mv, r - 1)?;
    let plan = mv.finish();
    if plan.end != inst.map_b.signature() {
        return Err(Error::Internal("spiral witness missed map B".into()));
    }
    Ok(plan)
}
