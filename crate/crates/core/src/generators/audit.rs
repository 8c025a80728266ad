use std::collections::BTreeSet;

use serde::Serialize;

use super::instance::Instance;
use super::spiral::spiral_bound;
use crate::district::Switch;
use crate::error::{Error, Result};

/// One labelled share of a plan's length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub name: String,
    pub count: usize,
    /// Count the construction predicts (exact or a lower bound, see `exact`).
    pub bound: Option<usize>,
    pub exact: bool,
}

impl Component {
    pub fn holds(&self) -> bool {
        match self.bound {
            Some(b) if self.exact => self.count == b,
            Some(b) => self.count >= b,
            None => true,
        }
    }
}

/// Cost decomposition of a plan on a generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub kind: String,
    pub length: usize,
    pub reaches_target: bool,
    pub components: Vec<Component>,
    /// Switches that moved a degree-1 vertex.
    pub leaf_moves: usize,
    pub lower_bound: Option<usize>,
    pub budget: Option<usize>,
    /// `length - lower_bound`.
    pub slack: Option<i64>,
}

impl AuditReport {
    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    /// Every component within its bound and no leaf moved.
    pub fn holds(&self) -> bool {
        self.leaf_moves == 0 && self.components.iter().all(Component::holds)
    }
}

fn comp(name: &str, count: usize, bound: Option<usize>, exact: bool) -> Component {
    Component {
        name: name.into(),
        count,
        bound,
        exact,
    }
}

/// Replays `steps` from map A and splits the plan into the components the
/// instance family predicts. District labels are those of map A; they
/// are stable under switches.
pub fn audit_plan(inst: &Instance, steps: &[Switch]) -> Result<AuditReport> {
    let g = &inst.graph;
    let mut p = inst.map_a.clone();
    // (vertex, source label, target label) per step
    let mut moves = Vec::with_capacity(steps.len());
    let mut leaf_moves = 0;
    for (i, &s) in steps.iter().enumerate() {
        let from = p.district_of(s.v);
        let to = p.district_of(s.w);
        p.apply(g, s)
            .map_err(|e| Error::InvalidPlan(format!("step {}: {e}", i + 1)))?;
        if g.degree(s.v) == 1 {
            leaf_moves += 1;
        }
        moves.push((s.v, from, to));
    }
    let labels = |role: &str| -> BTreeSet<usize> {
        inst.role(role)
            .iter()
            .map(|&v| inst.map_a.district_of(v))
            .collect()
    };
    let in_role = |role: &str| -> BTreeSet<usize> { inst.role(role).iter().copied().collect() };
    let count = |f: &dyn Fn(&(usize, usize, usize)) -> bool| moves.iter().filter(|m| f(m)).count();
    let len = steps.len();
    let components = match inst.meta.kind.as_str() {
        "path-lb" | "cycle-lb" => vec![comp("moves", len, inst.meta.lower_bound, false)],
        "spiral-lb" => {
            let (r, q, l) = (
                inst.param_usize("r").unwrap_or(0),
                inst.param_usize("q").unwrap_or(0),
                inst.param_usize("l").unwrap_or(0),
            );
            let mut diamond = labels("chain_a_leaves");
            diamond.extend(labels("chain_b_leaves"));
            let mut tree = in_role("tree_1");
            tree.extend(in_role("tree_2"));
            let d = count(&|&(_, _, to)| diamond.contains(&to));
            let t = count(&|&(v, _, to)| tree.contains(&v) && !diamond.contains(&to));
            let tree_term = l.saturating_sub(1) * 2 * q;
            vec![
                comp("diamond", d, Some(spiral_bound(r, q, l) - tree_term), false),
                comp("tree", t, Some(tree_term), false),
                comp("other", len - d - t, None, false),
            ]
        }
        "sp-hardness" => sp_components(inst, &p, &moves)?,
        "conn-hardness" => {
            let mut out = Vec::new();
            let mut seen = 0;
            for role in [
                "variable",
                "clause",
                "super",
                "frame",
                "reservoir",
                "garbage",
                "garbage_path",
            ] {
                let vs = in_role(role);
                let c = count(&|&(v, _, _)| vs.contains(&v));
                seen += c;
                out.push(comp(role, c, None, false));
            }
            out.push(comp("other", len - seen, None, false));
            out
        }
        other => {
            return Err(Error::WrongKind {
                expected: "a generated instance".into(),
                found: other.into(),
            })
        }
    };
    let lower_bound = inst.meta.lower_bound;
    Ok(AuditReport {
        kind: inst.meta.kind.clone(),
        length: len,
        reaches_target: p.signature() == inst.map_b.signature(),
        components,
        leaf_moves,
        lower_bound,
        budget: inst.meta.budget,
        slack: lower_bound.map(|b| len as i64 - b as i64),
    })
}

/// Gate openings (A), variable travellers (B), clause travellers (C),
/// the pipe's final move (D) and gate closings (E).
fn sp_components(
    inst: &Instance,
    end: &crate::district::DistrictMap,
    moves: &[(usize, usize, usize)],
) -> Result<Vec<Component>> {
    let label = |v: usize| inst.map_a.district_of(v);
    let d1: BTreeSet<usize> = inst.role("d1").iter().copied().collect();
    let d_labels: BTreeSet<usize> = inst.role("d1").iter().map(|&v| label(v)).collect();
    let mut gates: BTreeSet<usize> = inst.role("gate_true").iter().copied().collect();
    gates.extend(inst.role("gate_false"));
    let sides: BTreeSet<usize> = gates.iter().map(|&v| label(v)).collect();
    let o = inst.role("pipe_o")[0];
    let i_label = label(inst.role("pipe_i")[0]);
    let mut pipe: BTreeSet<usize> = [o, inst.role("pipe_i")[0]].into_iter().map(label).collect();
    pipe.extend(inst.role("pipe_middle").iter().map(|&v| label(v)));
    let u1: BTreeSet<usize> = inst.role("u1").iter().copied().collect();
    let c2: BTreeSet<usize> = inst.role("c2").iter().copied().collect();
    let travels_to =
        |t: usize, set: &BTreeSet<usize>| end.district(t).iter().any(|v| set.contains(v));
    let (mut a, mut b, mut c, mut d, mut e, mut other) = (0, 0, 0, 0, 0, 0);
    for &(v, from, to) in moves {
        if d1.contains(&v) && sides.contains(&to) {
            a += 1;
        } else if (d1.contains(&v) && d_labels.contains(&to))
            || (gates.contains(&v) && sides.contains(&to))
        {
            e += 1;
        } else if v == o && to == i_label {
            d += 1;
        } else {
            let t = if pipe.contains(&to) && to != i_label {
                to
            } else {
                from
            };
            if !pipe.contains(&t) {
                other += 1;
            } else if travels_to(t, &u1) {
                b += 1;
            } else if travels_to(t, &c2) {
                c += 1;
            } else {
                other += 1;
            }
        }
    }
    let f = super::shortest::formula_of(inst)?;
    let (n, m) = (f.vars, f.m());
    Ok(vec![
        comp("A gate openings", a, Some(n), true),
        comp("B variable travellers", b, Some(4 * n - 2), true),
        comp("C clause travellers", c, Some(4 * m), true),
        comp("D pipe closing", d, Some(1), true),
        comp("E gate closings", e, Some(2 * n), true),
        comp("other", other, Some(0), true),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        gen_conn_hardness, gen_path_lb, gen_sp_hardness, gen_spiral_lb, witness_conn, witness_sp,
        witness_spiral, Cnf,
    };

    #[test]
    fn sp_components_exact() {
        for clauses in [
            vec![vec![1, 1, 1]],
            vec![vec![1, 2, 3], vec![-1, -2, -3], vec![-1, 2, -3]],
        ] {
            let vars = clauses
                .iter()
                .flatten()
                .map(|l: &i32| l.unsigned_abs())
                .max()
                .unwrap();
            let f = Cnf::new(vars as usize, &clauses).unwrap();
            let inst = gen_sp_hardness(&f, false).unwrap();
            let plan = witness_sp(&inst, &f.satisfying_assignment().unwrap()).unwrap();
            let rep = audit_plan(&inst, &plan.steps).unwrap();
            assert!(rep.holds(), "{rep:?}");
            assert!(rep.reaches_target);
            assert_eq!(rep.slack, Some(0));
        }
    }

    #[test]
    fn spiral_terms() {
        for (r, q, l) in [(2, 1, 1), (4, 3, 2)] {
            let inst = gen_spiral_lb(r, q, l).unwrap();
            let plan = witness_spiral(&inst).unwrap();
            let rep = audit_plan(&inst, &plan.steps).unwrap();
            assert!(rep.holds(), "{rep:?}");
            let d = rep.component("diamond").unwrap();
            assert!(d.count >= l * ((r + 1) * r / 2 + r * (r - 1) / 2));
        }
    }

    #[test]
    fn conn_leaves_fixed() {
        let f = Cnf::new(3, &[vec![1, 2, 3]]).unwrap();
        let inst = gen_conn_hardness(&f).unwrap();
        let plan = witness_conn(&inst, &[true, false, true]).unwrap();
        let rep = audit_plan(&inst, &plan.steps).unwrap();
        assert_eq!(rep.leaf_moves, 0);
        assert_eq!(rep.component("other").unwrap().count, 0);
        assert!(rep.reaches_target);
    }

    #[test]
    fn empty_and_invalid() {
        let inst = gen_path_lb(6, 3).unwrap();
        let rep = audit_plan(&inst, &[]).unwrap();
        assert!(rep.components.iter().all(|c| c.count == 0));
        assert!(!rep.reaches_target);
        assert!(matches!(
            audit_plan(&inst, &[Switch::new(0, 1, 2)]),
            Err(Error::InvalidPlan(_))
        ));
    }
}
