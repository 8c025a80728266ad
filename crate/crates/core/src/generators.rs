//! Instance families with known answers: diameter lower bounds on paths,
//! cycles and diamond spirals, and the two 3SAT reductions, each with a
//! constructive witness plan.

mod audit;
mod cnf;
mod conn;
mod instance;
mod lower;
mod shortest;
mod spiral;

pub use audit::{audit_plan, AuditReport, Component};
pub use cnf::{Cnf, Literal};
pub use conn::{gen_conn_hardness, witness_conn};
pub use instance::{read_bundle, write_bundle, Instance, Meta};
pub use lower::{gen_cycle_lb, gen_path_lb};
pub use shortest::{gen_sp_hardness, witness_sp};
pub use spiral::{gen_spiral_lb, witness_spiral};

use crate::district::{DistrictMap, Recorder, Switch, SwitchPlan};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Records hand-built plans one vertex move at a time.
pub(crate) struct Mover<'a> {
    g: &'a Graph,
    rec: Recorder,
}

impl<'a> Mover<'a> {
    pub(crate) fn new(g: &'a Graph, p: &DistrictMap) -> Mover<'a> {
        Mover {
            g,
            rec: Recorder::new(p),
        }
    }

    pub(crate) fn map(&self) -> &DistrictMap {
        &self.rec.map
    }

    /// Moves `v` into the district currently holding `to`.
    pub(crate) fn mv(&mut self, v: usize, to: usize) -> Result<()> {
        let p = &self.rec.map;
        let (dv, dt) = (p.district_of(v), p.district_of(to));
        let nb = self.g.neighbors(v);
        let u = nb.iter().copied().find(|&x| p.district_of(x) == dv);
        let w = nb.iter().copied().find(|&x| p.district_of(x) == dt);
        match (u, w) {
            (Some(u), Some(w)) if dv != dt => self.rec.apply(self.g, Switch::new(u, v, w)),
            _ => Err(Error::Internal(format!("cannot move {v} next to {to}"))),
        }
    }

    pub(crate) fn finish(self) -> SwitchPlan {
        self.rec.plan()
    }
}

/// Checks that `inst` was built by the generator of `kind`.
pub(crate) fn expect_kind(inst: &Instance, kind: &str) -> Result<()> {
    if inst.meta.kind == kind {
        Ok(())
    } else {
        Err(Error::WrongKind {
            expected: kind.into(),
            found: inst.meta.kind.clone(),
        })
    }
}
