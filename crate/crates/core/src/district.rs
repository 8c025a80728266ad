//! District maps, switches, plans and contractibility.

use crate::error::{Error, Result, SwitchError};
use crate::graph::{block_tree, BlockTree, Graph};
use std::fmt;
use std::fmt::Write as _;

/// Canonical form of an unlabeled partition: each district sorted, districts
/// ordered by smallest element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(pub Vec<Vec<usize>>);

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|d| {
                d.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{{{}}}", parts.join("|"))
    }
}

/// Partition of `0..n` into labelled districts. Labels are stable under
/// switches; use [`DistrictMap::signature`] for label-free comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistrictMap {
    assignment: Vec<usize>,
    districts: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyDistrict(usize),
    DisconnectedDistrict(usize),
    NotAPartition(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyDistrict(i) => write!(f, "EmptyDistrict({i})"),
            Violation::DisconnectedDistrict(i) => write!(f, "DisconnectedDistrict({i})"),
            Violation::NotAPartition(s) => write!(f, "NotAPartition({s})"),
        }
    }
}

impl DistrictMap {
    /// Builds a map from district vertex lists; checks only that they
    /// partition `0..n`.
    pub fn from_districts(n: usize, districts: Vec<Vec<usize>>) -> Result<DistrictMap> {
        let mut assignment = vec![usize::MAX; n];
        for (i, d) in districts.iter().enumerate() {
            if d.is_empty() {
                return Err(Error::InvalidMap(format!("district {i} is empty")));
            }
            for &v in d {
                if v >= n {
                    return Err(Error::InvalidMap(format!("vertex {v} out of range")));
                }
                if assignment[v] != usize::MAX {
                    return Err(Error::InvalidMap(format!("vertex {v} in two districts")));
                }
                assignment[v] = i;
            }
        }
        if let Some(v) = assignment.iter().position(|&a| a == usize::MAX) {
            return Err(Error::InvalidMap(format!("vertex {v} not covered")));
        }
        let mut districts = districts;
        for d in &mut districts {
            d.sort_unstable();
        }
        Ok(DistrictMap {
            assignment,
            districts,
        })
    }

    /// Builds a map from a per-vertex label vector with labels `0..k`.
    pub fn from_assignment(assignment: Vec<usize>) -> Result<DistrictMap> {
        let k = assignment.iter().map(|&a| a + 1).max().unwrap_or(0);
        let mut districts = vec![Vec::new(); k];
        for (v, &a) in assignment.iter().enumerate() {
            districts[a].push(v);
        }
        DistrictMap::from_districts(assignment.len(), districts)
    }

    /// All-singletons map.
    pub fn singletons(n: usize) -> DistrictMap {
        DistrictMap::from_assignment((0..n).collect()).unwrap()
    }

    pub fn from_signature(n: usize, s: &Signature) -> Result<DistrictMap> {
        DistrictMap::from_districts(n, s.0.clone())
    }

    pub fn k(&self) -> usize {
        self.districts.len()
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn district_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn district(&self, i: usize) -> &[usize] {
        &self.districts[i]
    }

    pub fn districts(&self) -> &[Vec<usize>] {
        &self.districts
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn mask(&self, i: usize) -> Vec<bool> {
        self.assignment.iter().map(|&a| a == i).collect()
    }

    pub fn signature(&self) -> Signature {
        let mut s = self.districts.clone();
        s.sort();
        Signature(s)
    }

    /// Same partition with districts relabelled in signature order.
    pub fn normalized(&self) -> DistrictMap {
        DistrictMap::from_signature(self.n(), &self.signature()).unwrap()
    }

    /// Moves `v` into district `to` without any validity check.
    pub(crate) fn move_vertex(&mut self, v: usize, to: usize) {
        let from = self.assignment[v];
        let pos = self.districts[from].binary_search(&v).unwrap();
        self.districts[from].remove(pos);
        let pos = self.districts[to].binary_search(&v).unwrap_err();
        self.districts[to].insert(pos, v);
        self.assignment[v] = to;
    }

    /// Checks the switch and applies it in place.
    pub fn apply(&mut self, g: &Graph, s: Switch) -> Result<()> {
        check_switch(g, self, s)?;
        let to = self.assignment[s.w];
        self.move_vertex(s.v, to);
        Ok(())
    }

    /// Map file text: `k`, then one ascending district per line.
    pub fn to_text(&self) -> String {
        let sig = self.signature();
        let mut s = format!("{}\n", sig.0.len());
        for d in &sig.0 {
            let line: Vec<String> = d.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    /// Parses the map file format; `n` is the vertex count of the graph.
    pub fn parse(n: usize, text: &str) -> Result<DistrictMap> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (ln, head) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing k".into(),
        })?;
        let k: usize = head.trim().parse().map_err(|_| Error::Parse {
            line: ln + 1,
            msg: "k must be an integer".into(),
        })?;
        let mut districts = Vec::new();
        for (ln, l) in lines {
            let d: std::result::Result<Vec<usize>, _> =
                l.split_whitespace().map(|t| t.parse::<usize>()).collect();
            districts.push(d.map_err(|_| Error::Parse {
                line: ln + 1,
                msg: "district line must hold integers".into(),
            })?);
        }
        if districts.len() != k {
            return Err(Error::Parse {
                line: 1,
                msg: format!("declared {k} districts, found {}", districts.len()),
            });
        }
        DistrictMap::from_districts(n, districts)
    }
}

/// Checks the partition invariants of `p` against `g`.
pub fn validate_map(g: &Graph, p: &DistrictMap) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if p.n() != g.n() {
        out.push(Violation::NotAPartition(format!(
            "map covers {} vertices, graph has {}",
            p.n(),
            g.n()
        )));
        return Err(out);
    }
    for i in 0..p.k() {
        if p.district(i).is_empty() {
            out.push(Violation::EmptyDistrict(i));
        } else if !g.set_connected(p.district(i)) {
            out.push(Violation::DisconnectedDistrict(i));
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Validates a list of districts that need not form a partition.
pub fn validate_districts(
    g: &Graph,
    districts: &[Vec<usize>],
) -> std::result::Result<DistrictMap, Vec<Violation>> {
    let mut count = vec![0usize; g.n()];
    let mut out = Vec::new();
    for (i, d) in districts.iter().enumerate() {
        if d.is_empty() {
            out.push(Violation::EmptyDistrict(i));
        }
        for &v in d {
            if v >= g.n() {
                out.push(Violation::NotAPartition(format!("vertex {v} out of range")));
            } else {
                count[v] += 1;
            }
        }
    }
    for (v, &c) in count.iter().enumerate() {
        if c != 1 {
            out.push(Violation::NotAPartition(format!(
                "vertex {v} covered {c} times"
            )));
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    let p = DistrictMap::from_districts(g.n(), districts.to_vec()).unwrap();
    validate_map(g, &p).map(|_| p)
}

/// The switch `(u, v, w)`: move `v` from `Π(u)` to `Π(w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Switch {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

impl Switch {
    pub fn new(u: usize, v: usize, w: usize) -> Switch {
        Switch { u, v, w }
    }

    pub fn reversed(self) -> Switch {
        Switch {
            u: self.w,
            v: self.v,
            w: self.u,
        }
    }
}

impl fmt::Display for Switch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.u, self.v, self.w)
    }
}

fn check_switch(g: &Graph, p: &DistrictMap, s: Switch) -> Result<()> {
    let err = |reason| Error::InvalidSwitch {
        u: s.u,
        v: s.v,
        w: s.w,
        reason,
    };
    let n = g.n();
    if s.u >= n || s.v >= n || s.w >= n || !g.has_edge(s.u, s.v) || !g.has_edge(s.v, s.w) {
        return Err(err(SwitchError::NotAPath));
    }
    let dv = p.district_of(s.v);
    if p.district_of(s.u) != dv {
        return Err(err(SwitchError::SourceNotShared));
    }
    if p.district_of(s.w) == dv {
        return Err(err(SwitchError::SameDistrict));
    }
    let mut mask = p.mask(dv);
    mask[s.v] = false;
    if !g.induces_connected(&mask) {
        return Err(err(SwitchError::DisconnectsSource));
    }
    Ok(())
}

/// Applies one switch, returning the new map.
pub fn apply_switch(g: &Graph, p: &DistrictMap, s: Switch) -> Result<DistrictMap> {
    let mut q = p.clone();
    q.apply(g, s)?;
    Ok(q)
}

/// All valid switches, sorted by `(v, w, u)`.
pub fn valid_switches(g: &Graph, p: &DistrictMap) -> Vec<Switch> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        let dv = p.district_of(v);
        if p.district(dv).len() < 2 {
            continue;
        }
        let outside: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| p.district_of(w) != dv)
            .collect();
        if outside.is_empty() {
            continue;
        }
        let mut mask = p.mask(dv);
        mask[v] = false;
        if !g.induces_connected(&mask) {
            continue;
        }
        let inside: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| p.district_of(u) == dv)
            .collect();
        for &w in &outside {
            for &u in &inside {
                out.push(Switch { u, v, w });
            }
        }
    }
    out
}

/// A sequence of switches with the signatures of its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchPlan {
    pub steps: Vec<Switch>,
    pub start: Signature,
    pub end: Signature,
}

impl SwitchPlan {
    pub fn empty(p: &DistrictMap) -> SwitchPlan {
        let s = p.signature();
        SwitchPlan {
            steps: Vec::new(),
            start: s.clone(),
            end: s,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Reverse order with each `(u, v, w)` turned into `(w, v, u)`.
    pub fn reversed(&self) -> SwitchPlan {
        SwitchPlan {
            steps: self.steps.iter().rev().map(|s| s.reversed()).collect(),
            start: self.end.clone(),
            end: self.start.clone(),
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(mut self, other: &SwitchPlan) -> SwitchPlan {
        debug_assert_eq!(self.end, other.start);
        self.steps.extend_from_slice(&other.steps);
        self.end = other.end.clone();
        self
    }

    /// Plan file text: step count, then `u v w` per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.steps.len());
        for st in &self.steps {
            let _ = writeln!(s, "{st}");
        }
        s
    }

    /// Parses the step list; endpoint signatures are filled in by replaying.
    pub fn parse_steps(text: &str) -> Result<Vec<Switch>> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (ln, head) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing step count".into(),
        })?;
        let cnt: usize = head.trim().parse().map_err(|_| Error::Parse {
            line: ln + 1,
            msg: "step count must be an integer".into(),
        })?;
        let mut steps = Vec::with_capacity(cnt);
        for (ln, l) in lines {
            let t: std::result::Result<Vec<usize>, _> =
                l.split_whitespace().map(|x| x.parse()).collect();
            match t {
                Ok(t) if t.len() == 3 => steps.push(Switch::new(t[0], t[1], t[2])),
                _ => {
                    return Err(Error::Parse {
                        line: ln + 1,
                        msg: "step must be `u v w`".into(),
                    });
                }
            }
        }
        if steps.len() != cnt {
            return Err(Error::Parse {
                line: 1,
                msg: format!("declared {cnt} steps, found {}", steps.len()),
            });
        }
        Ok(steps)
    }
}

/// Replays `steps` from `p`, checking every switch.
pub fn replay(g: &Graph, p: &DistrictMap, steps: &[Switch]) -> Result<DistrictMap> {
    let mut q = p.clone();
    for (i, &s) in steps.iter().enumerate() {
        q.apply(g, s)
            .map_err(|e| Error::InvalidPlan(format!("step {}: {e}", i + 1)))?;
    }
    Ok(q)
}

/// Replays a plan and checks both endpoint signatures.
pub fn verify_plan(g: &Graph, p: &DistrictMap, plan: &SwitchPlan) -> Result<DistrictMap> {
    if p.signature() != plan.start {
        return Err(Error::InvalidPlan("start signature mismatch".into()));
    }
    let q = replay(g, p, &plan.steps)?;
    if q.signature() != plan.end {
        return Err(Error::InvalidPlan("end signature mismatch".into()));
    }
    Ok(q)
}

/// Records switches applied to a working map.
#[derive(Debug, Clone)]
pub struct Recorder {
    pub map: DistrictMap,
    start: Signature,
    pub steps: Vec<Switch>,
}

impl Recorder {
    pub fn new(p: &DistrictMap) -> Recorder {
        Recorder {
            map: p.clone(),
            start: p.signature(),
            steps: Vec::new(),
        }
    }

    pub fn apply(&mut self, g: &Graph, s: Switch) -> Result<()> {
        self.map.apply(g, s)?;
        self.steps.push(s);
        Ok(())
    }

    pub fn apply_all(&mut self, g: &Graph, steps: &[Switch]) -> Result<()> {
        for &s in steps {
            self.apply(g, s)?;
        }
        Ok(())
    }

    pub fn plan(&self) -> SwitchPlan {
        SwitchPlan {
            steps: self.steps.clone(),
            start: self.start.clone(),
            end: self.map.signature(),
        }
    }

    pub fn into_parts(self) -> (SwitchPlan, DistrictMap) {
        let plan = self.plan();
        (plan, self.map)
    }
}

/// Leaf blocks of `t` entirely inside district `i`.
pub fn leaf_blocks_in(t: &BlockTree, p: &DistrictMap, i: usize) -> Vec<usize> {
    t.leaf_blocks()
        .into_iter()
        .filter(|&b| t.blocks[b].iter().all(|&v| p.district_of(v) == i))
        .collect()
}

/// A district is contractible iff it holds at most one leaf block. With a
/// single district there is no switch at all, so only a singleton counts.
pub fn is_contractible_district(t: &BlockTree, p: &DistrictMap, i: usize) -> bool {
    if p.k() == 1 {
        return p.district(i).len() == 1;
    }
    leaf_blocks_in(t, p, i).len() <= 1
}

pub fn is_contractible_map(t: &BlockTree, p: &DistrictMap) -> bool {
    (0..p.k()).all(|i| is_contractible_district(t, p, i))
}

/// Candidate removal of `v` from its district into the district of `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub v: usize,
    pub u: usize,
}

/// Removes the vertices `remove` from district `i` one at a time. Each step
/// chooses, among removable vertices that have a neighbour outside the
/// district, the candidate picked by `choose` (default: smallest outside
/// neighbour, then smallest vertex). `choose` may return `None` to reject
/// every candidate. Fails if no acceptable candidate exists.
pub fn shrink_district(
    g: &Graph,
    rec: &mut Recorder,
    i: usize,
    remove: &[usize],
    mut choose: impl FnMut(&DistrictMap, &[Candidate]) -> Option<Candidate>,
) -> Result<()> {
    let mut pending: Vec<usize> = remove.to_vec();
    pending.sort_unstable();
    pending.dedup();
    while !pending.is_empty() {
        let cands = removal_candidates(g, &rec.map, i, &pending);
        let Some(c) = choose(&rec.map, &cands) else {
            return Err(Error::Internal(format!(
                "district {i} cannot shed any of {pending:?}"
            )));
        };
        let x = *g
            .neighbors(c.v)
            .iter()
            .find(|&&x| rec.map.district_of(x) == i)
            .expect("district of size >= 2 is connected");
        rec.apply(g, Switch::new(x, c.v, c.u))?;
        pending.retain(|&y| y != c.v);
    }
    Ok(())
}

/// Default tie-break: smallest outside neighbour `u`, then smallest `v`.
pub fn smallest_candidate(_: &DistrictMap, c: &[Candidate]) -> Option<Candidate> {
    c.iter().min_by_key(|c| (c.u, c.v)).copied()
}

/// All `(v, u)` with `v` in `pending`, `Π(v) \ {v}` connected and nonempty,
/// and `u` a neighbour of `v` outside the district.
pub fn removal_candidates(
    g: &Graph,
    p: &DistrictMap,
    i: usize,
    pending: &[usize],
) -> Vec<Candidate> {
    let mut out = Vec::new();
    if p.district(i).len() < 2 {
        return out;
    }
    let base = p.mask(i);
    for &v in pending {
        if p.district_of(v) != i {
            continue;
        }
        let outs: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| !base[u])
            .collect();
        if outs.is_empty() {
            continue;
        }
        let mut mask = base.clone();
        mask[v] = false;
        if !g.induces_connected(&mask) {
            continue;
        }
        for u in outs {
            out.push(Candidate { v, u });
        }
    }
    out
}

/// Contracts district `i` to `{target}` with exactly `|V_i| - 1` switches.
pub fn contract_district(
    g: &Graph,
    p: &DistrictMap,
    i: usize,
    target: usize,
) -> Result<SwitchPlan> {
    let t = block_tree(g)?;
    check_contract_target(&t, p, i, target)?;
    let mut rec = Recorder::new(p);
    let rest: Vec<usize> = p
        .district(i)
        .iter()
        .copied()
        .filter(|&v| v != target)
        .collect();
    if !rest.is_empty() && p.k() < 2 {
        return Err(Error::PreconditionViolated(
            "k >= 2 required to contract".into(),
        ));
    }
    shrink_district(g, &mut rec, i, &rest, smallest_candidate)?;
    Ok(rec.plan())
}

/// Checks the target condition for contracting district `i` to `target`.
pub fn check_contract_target(
    t: &BlockTree,
    p: &DistrictMap,
    i: usize,
    target: usize,
) -> Result<()> {
    if i >= p.k() {
        return Err(Error::PreconditionViolated(format!("no district {i}")));
    }
    if target >= p.n() || p.district_of(target) != i {
        return Err(Error::InvalidTarget(target));
    }
    let leaves = leaf_blocks_in(t, p, i);
    match leaves.len() {
        0 => Ok(()),
        1 => {
            let b = &t.blocks[leaves[0]];
            if b.contains(&target) && (!t.is_cut(target) || p.district(i).len() == 1) {
                Ok(())
            } else {
                Err(Error::InvalidTarget(target))
            }
        }
        _ => Err(Error::IncontractibleDistrict(i)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn map(n: usize, d: &[&[usize]]) -> DistrictMap {
        DistrictMap::from_districts(n, d.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    fn triangle_star() -> Graph {
        Graph::new(
            10,
            &[
                (0, 1),
                (0, 4),
                (0, 7),
                (1, 2),
                (2, 3),
                (1, 3),
                (4, 5),
                (5, 6),
                (4, 6),
                (7, 8),
                (8, 9),
                (7, 9),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_map(&p3(), &map(3, &[&[0, 1], &[2]])).is_ok());
        assert_eq!(
            validate_map(&p3(), &map(3, &[&[0, 2], &[1]])),
            Err(vec![Violation::DisconnectedDistrict(0)])
        );
        let r = validate_districts(&p3(), &[vec![0, 1], vec![1, 2]]);
        assert!(matches!(r, Err(v) if matches!(v[0], Violation::NotAPartition(_))));
    }

    #[test]
    fn switches_examples() {
        let s = valid_switches(&p3(), &map(3, &[&[0, 1], &[2]]));
        assert!(s.contains(&Switch::new(0, 1, 2)));
        assert!(s.iter().all(|s| s.v != 0));
        assert!(valid_switches(&p3(), &DistrictMap::singletons(3)).is_empty());
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = valid_switches(&star, &map(4, &[&[0, 1], &[2], &[3]]));
        assert_eq!(s, vec![Switch::new(1, 0, 2), Switch::new(1, 0, 3)]);
    }

    #[test]
    fn apply_examples() {
        let p = map(3, &[&[0, 1], &[2]]);
        let q = apply_switch(&p3(), &p, Switch::new(0, 1, 2)).unwrap();
        assert_eq!(q.signature(), map(3, &[&[0], &[1, 2]]).signature());
        let back = apply_switch(&p3(), &q, Switch::new(2, 1, 0)).unwrap();
        assert_eq!(back.signature(), p.signature());

        let tree = Graph::new(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let r = apply_switch(&tree, &map(4, &[&[0, 1, 2], &[3]]), Switch::new(0, 1, 3));
        assert!(matches!(
            r,
            Err(Error::InvalidSwitch {
                reason: SwitchError::DisconnectsSource,
                ..
            })
        ));
        let r = apply_switch(&p3(), &p, Switch::new(0, 2, 1));
        assert!(matches!(
            r,
            Err(Error::InvalidSwitch {
                reason: SwitchError::NotAPath,
                ..
            })
        ));
    }

    #[test]
    fn signatures() {
        assert_eq!(
            map(3, &[&[2], &[0, 1]]).signature(),
            map(3, &[&[1, 0], &[2]]).signature()
        );
        assert_ne!(
            map(3, &[&[0, 1], &[2]]).signature(),
            map(3, &[&[0], &[1, 2]]).signature()
        );
        assert_eq!(
            map(3, &[&[0, 1, 2]]).signature(),
            Signature(vec![vec![0, 1, 2]])
        );
    }

    #[test]
    fn contractibility_examples() {
        let g = triangle_star();
        let t = block_tree(&g).unwrap();
        let p = map(10, &[&[0, 1, 2, 3, 4, 5, 6], &[7, 8, 9]]);
        assert!(!is_contractible_district(&t, &p, 0));
        assert!(!is_contractible_map(&t, &p));
        let p = map(10, &[&[1, 2, 3], &[0, 4, 5, 6, 7, 8, 9]]);
        assert!(is_contractible_district(&t, &p, 0));
        let p = map(10, &[&[0, 1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert!(is_contractible_map(&t, &p));
        assert!(matches!(
            contract_district(&g, &p, 1, 4),
            Err(Error::InvalidTarget(4))
        ));
        let q = map(10, &[&[1, 2, 3], &[0, 4, 5, 6, 7, 8, 9]]);
        assert!(matches!(
            contract_district(&g, &q, 0, 1),
            Err(Error::InvalidTarget(1))
        ));
    }

    #[test]
    fn contract_c4_and_p4() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let p = map(4, &[&[0, 1, 2], &[3]]);
        let plan = contract_district(&c4, &p, 0, 1).unwrap();
        assert_eq!(plan.steps, vec![Switch::new(1, 0, 3), Switch::new(1, 2, 3)]);
        let q = verify_plan(&c4, &p, &plan).unwrap();
        assert_eq!(q.district(0), &[1]);

        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = map(4, &[&[1, 2, 3], &[0]]);
        let plan = contract_district(&p4, &p, 0, 3).unwrap();
        assert_eq!(plan.len(), 2);
        assert_eq!(verify_plan(&p4, &p, &plan).unwrap().district(0), &[3]);
    }

    #[test]
    fn text_round_trip() {
        let p = map(4, &[&[3, 1], &[0, 2]]);
        let q = DistrictMap::parse(4, &p.to_text()).unwrap();
        assert_eq!(q.signature(), p.signature());
        let plan = SwitchPlan {
            steps: vec![Switch::new(0, 1, 2)],
            start: p.signature(),
            end: p.signature(),
        };
        assert_eq!(
            SwitchPlan::parse_steps(&plan.to_text()).unwrap(),
            plan.steps
        );
    }
}
