use serde::Serialize;

use crate::district::{is_contractible_map, DistrictMap, SwitchPlan};
use crate::error::{Error, Result};
use crate::graph::{block_tree, Graph};

use super::align::align_pseudo_canonical;
use super::general::pseudo_canonical_marked;

/// Constant `C` in the plan length bound `C * k * n`.
pub const LENGTH_CONSTANT: usize = 4;

/// Result of [`plan_path`].
#[derive(Debug, Clone)]
pub enum PlanOutcome {
    Plan(PathPlan),
    /// Exactly one map is contractible; no switch sequence connects them.
    Unreachable,
    /// Both maps are incontractible; reachability is not decided here.
    UnsupportedPair,
}

#[derive(Debug, Clone)]
pub struct PathPlan {
    pub plan: SwitchPlan,
    pub meta: PlanMeta,
}

/// Sidecar record for a plan. Phase fields hold the step index at which
/// each forward phase ends; the steps after `align` undo the canonical
/// form of the target map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanMeta {
    pub length: usize,
    pub elbow: usize,
    pub leaf: usize,
    pub consolidate: usize,
    pub align: usize,
    pub bound: usize,
}

/// Plans a switch sequence from `p1` to `p2`.
pub fn plan_path(g: &Graph, p1: &DistrictMap, p2: &DistrictMap) -> Result<PlanOutcome> {
    if p1.k() != p2.k() {
        return Err(Error::MismatchedK(p1.k(), p2.k()));
    }
    if p1.n() != g.n() || p2.n() != g.n() {
        return Err(Error::InvalidMap("map size differs from graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let bound = LENGTH_CONSTANT * p1.k() * g.n();
    if p1.k() == 1 {
        let plan = SwitchPlan::empty(p1);
        let meta = PlanMeta {
            length: 0,
            elbow: 0,
            leaf: 0,
            consolidate: 0,
            align: 0,
            bound,
        };
        return Ok(PlanOutcome::Plan(PathPlan { plan, meta }));
    }
    let t = block_tree(g)?;
    match (is_contractible_map(&t, p1), is_contractible_map(&t, p2)) {
        (true, true) => {}
        (false, false) => return Ok(PlanOutcome::UnsupportedPair),
        _ => return Ok(PlanOutcome::Unreachable),
    }
    let (a, m1, marks) = pseudo_canonical_marked(g, p1)?;
    let (b, m2, _) = pseudo_canonical_marked(g, p2)?;
    let mid = align_pseudo_canonical(g, &m1, &m2)?;
    let align = a.len() + mid.len();
    let plan = a.concat(&mid).concat(&b.reversed());
    let meta = PlanMeta {
        length: plan.len(),
        elbow: marks.elbow,
        leaf: marks.leaf,
        consolidate: marks.consolidate,
        align,
        bound,
    };
    Ok(PlanOutcome::Plan(PathPlan { plan, meta }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::district::verify_plan;
    use crate::graph::tests::triangle_star;

    #[test]
    fn c4_plan() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let a = DistrictMap::from_districts(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        let b = DistrictMap::from_districts(4, vec![vec![2], vec![3, 0, 1]]).unwrap();
        let PlanOutcome::Plan(pp) = plan_path(&g, &a, &b).unwrap() else {
            panic!("expected a plan")
        };
        assert_eq!(
            verify_plan(&g, &a, &pp.plan).unwrap().signature(),
            b.signature()
        );
        assert_eq!(pp.meta.length, pp.plan.len());
        assert!(pp.meta.length <= pp.meta.bound);
        assert_eq!(pp.meta.bound, 32);
    }

    #[test]
    fn triangle_star_outcomes() {
        let g = triangle_star();
        let ok =
            DistrictMap::from_districts(10, vec![vec![1, 2, 3], vec![4, 5, 6], vec![0, 7, 8, 9]])
                .unwrap();
        let bad =
            DistrictMap::from_districts(10, vec![vec![0, 1, 2, 3, 4, 5, 6], vec![7, 8], vec![9]])
                .unwrap();
        let bad2 =
            DistrictMap::from_districts(10, vec![vec![0, 4, 5, 6, 7, 8, 9], vec![1, 2], vec![3]])
                .unwrap();
        assert!(matches!(
            plan_path(&g, &ok, &bad).unwrap(),
            PlanOutcome::Unreachable
        ));
        assert!(matches!(
            plan_path(&g, &bad, &ok).unwrap(),
            PlanOutcome::Unreachable
        ));
        assert!(matches!(
            plan_path(&g, &bad, &bad2).unwrap(),
            PlanOutcome::UnsupportedPair
        ));
    }

    #[test]
    fn separable_plan_has_phase_marks() {
        let g = triangle_star();
        let a =
            DistrictMap::from_districts(10, vec![vec![0, 1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]])
                .unwrap();
        let b =
            DistrictMap::from_districts(10, vec![vec![2, 3], vec![0, 1, 4, 5, 6], vec![7, 8, 9]])
                .unwrap();
        let PlanOutcome::Plan(pp) = plan_path(&g, &a, &b).unwrap() else {
            panic!("expected a plan")
        };
        assert_eq!(
            verify_plan(&g, &a, &pp.plan).unwrap().signature(),
            b.signature()
        );
        let m = &pp.meta;
        assert!(
            m.elbow <= m.leaf
                && m.leaf <= m.consolidate
                && m.consolidate <= m.align
                && m.align <= m.length
        );
        assert!(m.length <= m.bound);
    }

    #[test]
    fn mismatched_k() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let a = DistrictMap::singletons(3);
        let b = DistrictMap::from_districts(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(plan_path(&g, &a, &b).unwrap_err(), Error::MismatchedK(3, 2));
    }
}
