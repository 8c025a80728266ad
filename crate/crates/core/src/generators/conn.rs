use std::collections::BTreeMap;

use serde_json::json;

use super::cnf::{literal_true, Cnf};
use super::instance::{map_of, Instance};
use super::shortest::formula_of;
use super::{expect_kind, Mover};
use crate::district::SwitchPlan;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex ids of the connectedness instance.
struct Layout {
    m: usize,
    n: usize,
}

impl Layout {
    /// `u_{j,t}`, `t` in `1..=6`.
    fn u(&self, j: usize, t: usize) -> usize {
        6 * j + t - 1
    }

    /// `v_{i,t}`, `t` in `1..=18`; `v_{i,8}` is `v_{i,5}`.
    fn v(&self, i: usize, t: usize) -> usize {
        let t = match t {
            8 => 5,
            t if t > 8 => t - 1,
            t => t,
        };
        6 * self.m + 17 * i + t - 1
    }

    fn base(&self) -> usize {
        6 * self.m + 17 * self.n
    }

    fn n1(&self) -> usize {
        self.base()
    }

    fn n2(&self) -> usize {
        self.base() + 1
    }

    /// Frame: `f1, g1, f2, g2` (`g` are the leaves).
    fn frame(&self) -> [usize; 4] {
        let b = self.base() + 2;
        [b, b + 1, b + 2, b + 3]
    }

    /// Reservoir: `b1, b3, h1, h3`, then `b4 ..= b_{m+n+3}`.
    fn reservoir(&self) -> ([usize; 4], Vec<usize>) {
        let b = self.base() + 6;
        let rest = (b + 4..b + 4 + self.m + self.n).collect();
        ([b, b + 1, b + 2, b + 3], rest)
    }

    /// Garbage diamond `a1, x, y, gx, gy`, then the path `p_1 ..= p_{n+1}`.
    fn garbage(&self) -> ([usize; 5], Vec<usize>) {
        let b = self.base() + 10 + self.m + self.n;
        let path = (b + 5..b + 6 + self.n).collect();
        ([b, b + 1, b + 2, b + 3, b + 4], path)
    }

    fn size(&self) -> usize {
        self.base() + 10 + self.m + self.n + 5 + self.n + 1
    }
}

/// Connectedness reduction from 3SAT.
///
/// Clause gadgets are 4-cycles `u1 u2 u3 u4` with leaves `u5`, `u6` on `u2`,
/// `u4`. Variable gadgets are two 5-cycles sharing `v5 = v8`, leaves on
/// `v1, v4, v7, v9`, and hubs `v15, v16` on `v3, v5, v10` with leaves.
/// `u_{j,1}` meets `v_{i,2}` (positive) or `v_{i,6}` (negative). Super nodes
/// `N1, N2` meet `v1, v4, v7, v9, v15, v16` of every gadget. The frame is a
/// cycle through `N1` and every `u_{j,3}` with two leafed subdivisions
/// next to `N1`. The reservoir is a cycle of `m + n + 3` vertices
/// `b1 b2=N2 b3 b4 ...` with leaves on `b1`, `b3`, and `b4` joined to every
/// `v_{i,2}`, `v_{i,6}`. The garbage gadget is a 4-cycle `a1 x N2 y` with
/// leaves on `x`, `y`, `a1` joined to every `v_{i,2}`, `v_{i,6}`, and a path
/// of `n + 1` vertices hanging from `a1`.
pub fn gen_conn_hardness(f: &Cnf) -> Result<Instance> {
    Cnf::new(
        f.vars,
        &f.clauses.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
    )?;
    let (m, n) = (f.m(), f.vars);
    let lay = Layout { m, n };
    let mut e = Vec::new();
    for j in 0..m {
        let u = |t| lay.u(j, t);
        e.extend([(u(1), u(2)), (u(2), u(3)), (u(3), u(4)), (u(4), u(1))]);
        e.extend([(u(2), u(5)), (u(4), u(6))]);
    }
    let (n1, n2) = (lay.n1(), lay.n2());
    for i in 0..n {
        let v = |t| lay.v(i, t);
        for (a, b) in [
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 1),
            (6, 7),
            (7, 8),
            (8, 9),
            (9, 10),
        ] {
            e.push((v(a), v(b)));
        }
        e.extend([(v(10), v(6)), (v(11), v(1)), (v(12), v(4)), (v(13), v(7))]);
        e.extend([(v(14), v(9)), (v(17), v(15)), (v(18), v(16))]);
        for h in [15, 16] {
            e.extend([(v(h), v(3)), (v(h), v(5)), (v(h), v(10))]);
        }
        for s in [n1, n2] {
            for t in [1, 4, 7, 9, 15, 16] {
                e.push((s, v(t)));
            }
        }
    }
    for (j, c) in f.clauses.iter().enumerate() {
        for &lit in c {
            let i = lit.unsigned_abs() as usize - 1;
            e.push((lay.u(j, 1), lay.v(i, if lit > 0 { 2 } else { 6 })));
        }
    }
    let [f1, g1, f2, g2] = lay.frame();
    e.extend([(n1, f1), (f1, g1), (f2, n1), (f2, g2)]);
    let mut prev = f1;
    for j in 0..m {
        e.push((prev, lay.u(j, 3)));
        prev = lay.u(j, 3);
    }
    e.push((prev, f2));
    let ([b1, b3, h1, h3], mobile) = lay.reservoir();
    e.extend([(b1, n2), (n2, b3), (b1, h1), (b3, h3), (b3, mobile[0])]);
    for w in mobile.windows(2) {
        e.push((w[0], w[1]));
    }
    e.push((*mobile.last().unwrap(), b1));
    let ([a1, x, y, gx, gy], path) = lay.garbage();
    e.extend([
        (a1, x),
        (x, n2),
        (n2, y),
        (y, a1),
        (x, gx),
        (y, gy),
        (a1, path[0]),
    ]);
    for w in path.windows(2) {
        e.push((w[0], w[1]));
    }
    for i in 0..n {
        for t in [2, 6] {
            e.extend([(mobile[0], lay.v(i, t)), (a1, lay.v(i, t))]);
        }
    }
    let nv = lay.size();
    let g = Graph::from_edges_dedup(nv, &e)?;

    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..n {
        let v = |ts: &[usize]| ts.iter().map(|&t| lay.v(i, t)).collect::<Vec<_>>();
        for d in [
            v(&[1, 2, 3, 4, 11, 12]),
            v(&[6, 7, 9, 10, 13, 14]),
            v(&[5, 15, 16, 17, 18]),
        ] {
            a.push(d.clone());
            b.push(d);
        }
    }
    let u3: Vec<usize> = (0..m).map(|j| lay.u(j, 3)).collect();
    for j in 0..m {
        let u = |ts: &[usize]| ts.iter().map(|&t| lay.u(j, t)).collect::<Vec<_>>();
        a.push(u(&[1, 2, 4, 5, 6]));
        b.extend([u(&[2, 3, 4, 5, 6]), u(&[1])]);
    }
    let frame_core = vec![n1, f1, f2, g1, g2];
    let mut frame = frame_core.clone();
    frame.extend(&u3);
    a.push(frame);
    b.push(frame_core);
    let blue_core = vec![n2, b1, b3, h1, h3];
    a.push(blue_core.clone());
    a.extend(mobile.iter().map(|&v| vec![v]));
    let mut blue = blue_core;
    blue.extend(&mobile);
    b.push(blue);
    let garbage = vec![a1, x, y, gx, gy];
    a.push(garbage.clone());
    b.push(garbage.clone());
    a.push(path.clone());
    b.extend(path.iter().map(|&v| vec![v]));

    let leaves: Vec<usize> = (0..nv).filter(|&v| g.degree(v) == 1).collect();
    let mut reservoir = vec![b1, b3, h1, h3];
    reservoir.extend(&mobile);
    let roles = BTreeMap::from([
        ("clause".into(), (0..6 * m).collect()),
        ("clause_u1".into(), (0..m).map(|j| lay.u(j, 1)).collect()),
        ("clause_u3".into(), u3),
        ("variable".into(), (6 * m..lay.base()).collect()),
        ("gate_true".into(), (0..n).map(|i| lay.v(i, 2)).collect()),
        ("gate_false".into(), (0..n).map(|i| lay.v(i, 6)).collect()),
        ("super".into(), vec![n1, n2]),
        ("frame".into(), vec![f1, g1, f2, g2]),
        ("reservoir".into(), reservoir),
        ("reservoir_mobile".into(), mobile),
        ("garbage".into(), garbage),
        ("garbage_path".into(), path),
        ("leaves".into(), leaves),
    ]);
    let params = BTreeMap::from([
        ("vars".into(), json!(n)),
        ("clauses".into(), json!(f.clauses)),
    ]);
    let mut inst = Instance::new(
        "conn-hardness",
        g,
        map_of(nv, a),
        map_of(nv, b),
        params,
        roles,
    )?;
    inst.meta.notes.extend([
        "the reservoir vertex after b3 (b4) is the one joined to the gates".to_string(),
        "a gate is open when its vertex is not a cut vertex of its district".to_string(),
        format!("frame order: u3 of clauses 1..{m}"),
    ]);
    Ok(inst)
}

/// Switches from map A to map B for a satisfying assignment: open one gate
/// per variable through `N1`, route one reservoir district per clause
/// through a true gate to `u_{j,1}`, park the rest on the open gates,
/// open the garbage gadget through `N2`, flush the parked districts down
/// its path, and close the gates through `N2`.
pub fn witness_conn(inst: &Instance, tau: &[bool]) -> Result<SwitchPlan> {
    expect_kind(inst, "conn-hardness")?;
    let f = formula_of(inst)?;
    if !f.satisfies(tau) {
        return Err(Error::NotSatisfying);
    }
    let (m, n) = (f.m(), f.vars);
    let lay = Layout { m, n };
    let (n1, n2) = (lay.n1(), lay.n2());
    let [f1, ..] = lay.frame();
    let ([b1, ..], mobile) = lay.reservoir();
    let ([a1, x, ..], path) = lay.garbage();
    let mut mv = Mover::new(&inst.graph, &inst.map_a);
    let v = |i: usize, t: usize| lay.v(i, t);
    // a gate vertex and the anchor of the district that owns it when closed
    let gate = |i: usize| {
        if tau[i] {
            (v(i, 2), v(i, 1))
        } else {
            (v(i, 6), v(i, 7))
        }
    };
    for i in 0..n {
        mv.mv(n1, v(i, 15))?;
        if tau[i] {
            mv.mv(v(i, 5), v(i, 1))?;
            mv.mv(v(i, 3), v(i, 15))?;
        } else {
            mv.mv(v(i, 5), v(i, 7))?;
            mv.mv(v(i, 10), v(i, 15))?;
        }
        mv.mv(n1, f1)?;
    }
    // the front reservoir district holds mobile[..=left]
    let mut left = 0;
    for (j, c) in f.clauses.iter().enumerate() {
        let lit = *c
            .iter()
            .find(|&&l| literal_true(l, tau))
            .expect("clause satisfied");
        let (gv, home) = gate(lit.unsigned_abs() as usize - 1);
        mv.mv(lay.u(j, 3), lay.u(j, 2))?;
        mv.mv(gv, mobile[0])?;
        mv.mv(lay.u(j, 1), gv)?;
        release(&mut mv, &mobile, b1, &mut left)?;
        mv.mv(gv, home)?;
    }
    for i in 0..n {
        mv.mv(gate(i).0, mobile[0])?;
        release(&mut mv, &mobile, b1, &mut left)?;
    }
    mv.mv(n2, x)?;
    for i in 0..n {
        let (gv, home) = gate(i);
        mv.mv(a1, gv)?;
        mv.mv(gv, home)?;
        for j in (0..=i).rev() {
            mv.mv(path[j], if j == 0 { a1 } else { path[j - 1] })?;
        }
        mv.mv(a1, x)?;
    }
    mv.mv(n2, b1)?;
    for i in 0..n {
        mv.mv(n2, v(i, 15))?;
        if tau[i] {
            mv.mv(v(i, 3), v(i, 2))?;
        } else {
            mv.mv(v(i, 10), v(i, 6))?;
        }
        mv.mv(v(i, 5), v(i, 15))?;
        mv.mv(n2, b1)?;
    }
    let plan = mv.finish();
    if plan.end != inst.map_b.signature() {
        return Err(Error::Internal("connectedness witness missed map B".into()));
    }
    Ok(plan)
}

/// The front reservoir district hands `mobile[..=left]` to the next one,
/// or to the blue district when it is the last.
fn release(mv: &mut Mover, mobile: &[usize], b1: usize, left: &mut usize) -> Result<()> {
    let to = mobile.get(*left + 1).copied().unwrap_or(b1);
    for &bv in mobile[..=*left].iter().rev() {
        mv.mv(bv, to)?;
    }
    *left += 1;
    Ok(())
}
