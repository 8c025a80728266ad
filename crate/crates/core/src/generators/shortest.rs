use std::collections::BTreeMap;

use serde_json::json;

use super::cnf::{literal_true, Cnf};
use super::instance::{map_of, Instance};
use super::{expect_kind, Mover};
use crate::district::SwitchPlan;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex ids of variable gadget `i`.
pub(crate) struct VarGadget {
    pub l: [usize; 5],
    pub r: [usize; 5],
    pub d: [usize; 2],
    pub u: [usize; 2],
}

pub(crate) fn var_gadget(i: usize) -> VarGadget {
    let b = 14 * i;
    VarGadget {
        l: [b, b + 1, b + 2, b + 3, b + 4],
        r: [b + 5, b + 6, b + 7, b + 8, b + 9],
        d: [b + 10, b + 11],
        u: [b + 12, b + 13],
    }
}

/// The budget `n + (2n + 2(n - 1)) + 4m + 1 + 2n = 4m + 7n - 1`.
pub fn budget(f: &Cnf) -> usize {
    4 * f.m() + 7 * f.vars - 1
}

/// Shortest-path reduction from 3SAT.
///
/// Variable gadget `i`: cycles `l1 l2 l3 d1 l4` and `r1 r2 r3 d1 r4` sharing
/// `d1`, leaves `l5` on `l3`, `r5` on `r3`, `d2` on `d1`, `u2` on `u1`, and
/// `u1` adjacent to `l1` and `r1`. Clause `j` is an edge `c1 c2`; `c2` is
/// joined to `l1` of a positive literal and `r1` of a negative one. The
/// pipe is `K(2, m+n-1)` on `{O, I}`, with `O` joined to every `l1`, `r1`.
///
/// With `contractible`, the edges `l2 l3` and `r2 r3` become paths with
/// `budget` inner vertices, which join the districts of `l2` and `r2`.
pub fn gen_sp_hardness(f: &Cnf, contractible: bool) -> Result<Instance> {
    Cnf::new(
        f.vars,
        &f.clauses.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
    )?;
    let (n, m) = (f.vars, f.m());
    let budget = budget(f);
    let clause = |j: usize| [14 * n + 2 * j, 14 * n + 2 * j + 1];
    let o = 14 * n + 2 * m;
    let i_ = o + 1;
    let mids: Vec<usize> = (0..m + n - 1).map(|t| o + 2 + t).collect();
    let mut next = o + 2 + mids.len();
    let mut edges = Vec::new();
    let mut chains = Vec::new();
    for i in 0..n {
        let vg = var_gadget(i);
        for side in [vg.l, vg.r] {
            edges.extend([(side[0], side[1]), (side[2], vg.d[0]), (vg.d[0], side[3])]);
            edges.extend([(side[3], side[0]), (side[2], side[4]), (o, side[0])]);
            edges.push((vg.u[0], side[0]));
            if contractible {
                let c: Vec<usize> = (next..next + budget).collect();
                next += budget;
                let mut prev = side[1];
                for &v in &c {
                    edges.push((prev, v));
                    prev = v;
                }
                edges.push((prev, side[2]));
                chains.push(c);
            } else {
                edges.push((side[1], side[2]));
            }
        }
        edges.extend([(vg.d[0], vg.d[1]), (vg.u[0], vg.u[1])]);
    }
    for (j, c) in f.clauses.iter().enumerate() {
        let [c1, c2] = clause(j);
        edges.push((c1, c2));
        for &lit in c {
            let vg = var_gadget(lit.unsigned_abs() as usize - 1);
            edges.push((c2, if lit > 0 { vg.l[0] } else { vg.r[0] }));
        }
    }
    for &x in &mids {
        edges.extend([(o, x), (i_, x)]);
    }
    let nv = next;
    let g = Graph::from_edges_dedup(nv, &edges)?;

    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..n {
        let vg = var_gadget(i);
        let mut sides = [vg.l.to_vec(), vg.r.to_vec()];
        if contractible {
            sides[0].extend(&chains[2 * i]);
            sides[1].extend(&chains[2 * i + 1]);
        }
        for s in &sides {
            a.push(s.clone());
            b.push(s.clone());
        }
        a.extend([vg.d.to_vec(), vg.u.to_vec()]);
        b.extend([vg.d.to_vec(), vec![vg.u[0]], vec![vg.u[1]]]);
    }
    for j in 0..m {
        let [c1, c2] = clause(j);
        a.push(vec![c1, c2]);
        b.extend([vec![c1], vec![c2]]);
    }
    let mut pipe = vec![o, i_];
    pipe.extend(&mids);
    a.extend(pipe.iter().map(|&v| vec![v]));
    b.push(pipe);

    let per = |pick: fn(&VarGadget) -> usize| (0..n).map(|i| pick(&var_gadget(i))).collect();
    let mut roles: BTreeMap<String, Vec<usize>> = BTreeMap::from([
        ("gate_true".into(), per(|v| v.l[0])),
        ("gate_false".into(), per(|v| v.r[0])),
        ("d1".into(), per(|v| v.d[0])),
        ("d2".into(), per(|v| v.d[1])),
        ("u1".into(), per(|v| v.u[0])),
        ("u2".into(), per(|v| v.u[1])),
        ("l_leaf".into(), per(|v| v.l[4])),
        ("r_leaf".into(), per(|v| v.r[4])),
        ("c1".into(), (0..m).map(|j| clause(j)[0]).collect()),
        ("c2".into(), (0..m).map(|j| clause(j)[1]).collect()),
        ("pipe_o".into(), vec![o]),
        ("pipe_i".into(), vec![i_]),
        ("pipe_middle".into(), mids),
    ]);
    if contractible {
        roles.insert("chains".into(), chains.concat());
    }
    let params = BTreeMap::from([
        ("vars".into(), json!(n)),
        ("clauses".into(), json!(f.clauses)),
        ("contractible".into(), json!(contractible)),
    ]);
    let mut inst = Instance::new(
        "sp-hardness",
        g,
        map_of(nv, a),
        map_of(nv, b),
        params,
        roles,
    )?;
    inst.meta.budget = Some(budget);
    inst.meta.lower_bound = Some(budget);
    inst.meta.notes.extend([
        "map B keeps {d1, d2} as one district and splits {u1} from {u2}".to_string(),
        "a positive literal joins c2 to l1, the gate opened when the variable is true".to_string(),
        "clause travellers rest on c2".to_string(),
        "budget counts n gate openings, 2n + 2(n-1) variable moves, 4m clause moves, 1 pipe move, 2n closings".to_string(),
    ]);
    Ok(inst)
}

pub(crate) fn formula_of(inst: &Instance) -> Result<Cnf> {
    let vars = inst.param_usize("vars").unwrap_or(0);
    let clauses: Vec<Vec<i32>> = inst
        .meta
        .params
        .get("clauses")
        .and_then(|c| serde_json::from_value(c.clone()).ok())
        .ok_or_else(|| Error::BadFormula("instance has no clauses".into()))?;
    Cnf::new(vars, &clauses)
}

/// The gate of variable `i` opened by `tau`.
fn gate(i: usize, value: bool) -> usize {
    let vg = var_gadget(i);
    if value {
        vg.l[0]
    } else {
        vg.r[0]
    }
}

/// The `4m + 7n - 1` switches of a satisfying assignment: open one gate
/// per variable, send a pipe district through it to `u1`, send one pipe
/// district per clause through the gate of a true literal to `c2`, close
/// the pipe around `O`, and close the gates.
pub fn witness_sp(inst: &Instance, tau: &[bool]) -> Result<SwitchPlan> {
    expect_kind(inst, "sp-hardness")?;
    let f = formula_of(inst)?;
    if !f.satisfies(tau) {
        return Err(Error::NotSatisfying);
    }
    let o = inst.role("pipe_o")[0];
    let i_ = inst.role("pipe_i")[0];
    let mids = inst.role("pipe_middle");
    let c2 = inst.role("c2");
    let mut mv = Mover::new(&inst.graph, &inst.map_a);
    for i in 0..f.vars {
        let vg = var_gadget(i);
        mv.mv(vg.d[0], if tau[i] { vg.l[2] } else { vg.r[2] })?;
    }
    let mut spare = mids.iter();
    let mut enter = |mv: &mut Mover, first: bool| -> Result<()> {
        if !first {
            let x = *spare.next().expect("one middle per traveller");
            mv.mv(o, x)?;
            mv.mv(x, i_)?;
        }
        Ok(())
    };
    for i in 0..f.vars {
        enter(&mut mv, i == 0)?;
        let gi = gate(i, tau[i]);
        mv.mv(gi, o)?;
        mv.mv(var_gadget(i).u[0], gi)?;
    }
    for (j, c) in f.clauses.iter().enumerate() {
        let lit = *c
            .iter()
            .find(|&&l| literal_true(l, tau))
            .expect("clause satisfied");
        let i = lit.unsigned_abs() as usize - 1;
        enter(&mut mv, false)?;
        let gi = gate(i, tau[i]);
        mv.mv(gi, o)?;
        mv.mv(c2[j], gi)?;
    }
    mv.mv(o, i_)?;
    for i in 0..f.vars {
        let vg = var_gadget(i);
        let side = if tau[i] { vg.l } else { vg.r };
        mv.mv(side[0], side[3])?;
        mv.mv(vg.d[0], vg.d[1])?;
    }
    let plan = mv.finish();
    if plan.end != inst.map_b.signature() {
        return Err(Error::Internal("reduction witness missed map B".into()));
    }
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::district::{is_contractible_map, valid_switches, verify_plan, DistrictMap, Switch};
    use crate::graph::block_tree;

    fn figure() -> Cnf {
        Cnf::new(4, &[vec![1, 3, -4], vec![-2, 3, 4]]).unwrap()
    }

    #[test]
    fn figure_formula_counts() {
        let inst = gen_sp_hardness(&figure(), false).unwrap();
        assert_eq!(inst.meta.budget, Some(35));
        assert_eq!(inst.graph.n(), 67);
        assert_eq!(inst.meta.k, 25);
    }

    #[test]
    fn figure_witness() {
        let inst = gen_sp_hardness(&figure(), false).unwrap();
        let plan = witness_sp(&inst, &[true, false, true, true]).unwrap();
        assert_eq!(plan.len(), 35);
        verify_plan(&inst.graph, &inst.map_a, &plan).unwrap();
        assert_eq!(
            witness_sp(&inst, &[false, true, false, false]).unwrap_err(),
            Error::NotSatisfying
        );
    }

    #[test]
    fn single_clause() {
        let f = Cnf::new(1, &[vec![1, 1, 1]]).unwrap();
        let inst = gen_sp_hardness(&f, false).unwrap();
        assert_eq!(witness_sp(&inst, &[true]).unwrap().len(), 10);
        assert_eq!(
            witness_sp(&inst, &[false]).unwrap_err(),
            Error::NotSatisfying
        );
    }

    #[test]
    fn gate_semantics() {
        let inst = gen_sp_hardness(&figure(), false).unwrap();
        let g = &inst.graph;
        for i in 0..4 {
            let vg = var_gadget(i);
            for (side, leaf) in [(vg.l, vg.l[4]), (vg.r, vg.r[4])] {
                let gate_moves = |p: &DistrictMap| {
                    valid_switches(g, p)
                        .iter()
                        .any(|s| s.v == side[0] && p.district_of(s.u) == p.district_of(leaf))
                };
                let mut p = inst.map_a.clone();
                // closed: moving l1 to the pipe would cut its district
                p.apply(g, Switch::new(side[3], side[0], inst.role("pipe_o")[0]))
                    .unwrap_err();
                assert!(!gate_moves(&p));
                p.apply(g, Switch::new(vg.d[1], vg.d[0], side[2])).unwrap();
                assert!(p.district(p.district_of(leaf)).contains(&vg.d[0]));
                assert!(gate_moves(&p));
            }
        }
    }

    #[test]
    fn contractible_variant() {
        let f = figure();
        let inst = gen_sp_hardness(&f, true).unwrap();
        assert_eq!(inst.graph.n(), 67 + 8 * 35);
        assert_eq!(inst.meta.k, 25);
        let t = block_tree(&inst.graph).unwrap();
        assert!(is_contractible_map(&t, &inst.map_a));
        assert!(is_contractible_map(&t, &inst.map_b));
        let plan = witness_sp(&inst, &[true, true, true, false]).unwrap();
        assert_eq!(plan.len(), 35);
    }

    #[test]
    fn rejects_bad_formula() {
        let f = Cnf {
            vars: 2,
            clauses: vec![[1, 2, 3]],
        };
        assert!(matches!(
            gen_sp_hardness(&f, false),
            Err(Error::BadFormula(_))
        ));
    }
}
