use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::district::{validate_map, DistrictMap, Switch, SwitchPlan};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Metadata of a generated instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub kind: String,
    pub k: usize,
    /// Vertex count.
    pub n: usize,
    /// Edge count.
    pub m: usize,
    /// Switch budget of a decision instance.
    pub budget: Option<usize>,
    pub lower_bound: Option<usize>,
    pub params: BTreeMap<String, Value>,
    /// Role name to vertex ids.
    pub roles: BTreeMap<String, Vec<usize>>,
    pub notes: Vec<String>,
}

/// A graph with a source and a target map.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: Graph,
    pub map_a: DistrictMap,
    pub map_b: DistrictMap,
    pub meta: Meta,
}

impl Instance {
    pub(crate) fn new(
        kind: &str,
        graph: Graph,
        map_a: DistrictMap,
        map_b: DistrictMap,
        params: BTreeMap<String, Value>,
        roles: BTreeMap<String, Vec<usize>>,
    ) -> Result<Instance> {
        let inst = Instance {
            meta: Meta {
                kind: kind.into(),
                k: map_a.k(),
                n: graph.n(),
                m: graph.m(),
                budget: None,
                lower_bound: None,
                params,
                roles,
                notes: Vec::new(),
            },
            graph,
            map_a,
            map_b,
        };
        inst.check()?;
        Ok(inst)
    }

    /// Both maps valid with equal k, roles in range.
    pub fn check(&self) -> Result<()> {
        for (name, p) in [("mapA", &self.map_a), ("mapB", &self.map_b)] {
            if p.n() != self.graph.n() {
                return Err(Error::InvalidMap(format!(
                    "{name} has the wrong vertex count"
                )));
            }
            if let Err(v) = validate_map(&self.graph, p) {
                return Err(Error::InvalidMap(format!("{name}: {}", v[0])));
            }
        }
        if self.map_a.k() != self.map_b.k() || self.meta.k != self.map_a.k() {
            return Err(Error::MismatchedK(self.map_a.k(), self.map_b.k()));
        }
        for (role, vs) in &self.meta.roles {
            if vs.iter().any(|&v| v >= self.graph.n()) {
                return Err(Error::InvalidMap(format!(
                    "role {role} names a missing vertex"
                )));
            }
        }
        Ok(())
    }

    pub fn role(&self, name: &str) -> &[usize] {
        self.meta.roles.get(name).map_or(&[], |v| v.as_slice())
    }

    pub fn param_usize(&self, name: &str) -> Option<usize> {
        self.meta.params.get(name)?.as_u64().map(|x| x as usize)
    }
}

/// Writes `graph.txt`, `mapA.txt`, `mapB.txt`, `meta.json` and, when
/// given, `witness.plan` into `dir`.
pub fn write_bundle(dir: &Path, inst: &Instance, witness: Option<&SwitchPlan>) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join("graph.txt"), inst.graph.to_text()).map_err(io)?;
    fs::write(dir.join("mapA.txt"), inst.map_a.to_text()).map_err(io)?;
    fs::write(dir.join("mapB.txt"), inst.map_b.to_text()).map_err(io)?;
    let meta = serde_json::to_string_pretty(&inst.meta).expect("meta serializes");
    fs::write(dir.join("meta.json"), meta + "\n").map_err(io)?;
    if let Some(w) = witness {
        fs::write(dir.join("witness.plan"), w.to_text()).map_err(io)?;
    }
    Ok(())
}

/// Reads a bundle written by [`write_bundle`], with its witness steps if
/// present.
pub fn read_bundle(dir: &Path) -> Result<(Instance, Option<Vec<Switch>>)> {
    let read = |f: &str| {
        fs::read_to_string(dir.join(f))
            .map_err(|e| Error::Io(format!("{}: {e}", dir.join(f).display())))
    };
    let graph = Graph::parse(&read("graph.txt")?)?;
    let map_a = DistrictMap::parse(graph.n(), &read("mapA.txt")?)?;
    let map_b = DistrictMap::parse(graph.n(), &read("mapB.txt")?)?;
    let meta: Meta = serde_json::from_str(&read("meta.json")?).map_err(|e| Error::Parse {
        line: e.line(),
        msg: format!("meta.json: {e}"),
    })?;
    let witness = match dir.join("witness.plan").exists() {
        true => Some(SwitchPlan::parse_steps(&read("witness.plan")?)?),
        false => None,
    };
    let inst = Instance {
        graph,
        map_a,
        map_b,
        meta,
    };
    inst.check()?;
    Ok((inst, witness))
}

/// Builds a map from district lists, labelled in file order. Panics on a
/// construction bug.
pub(crate) fn map_of(n: usize, districts: Vec<Vec<usize>>) -> DistrictMap {
    DistrictMap::from_districts(n, districts)
        .expect("generator builds a partition")
        .normalized()
}
