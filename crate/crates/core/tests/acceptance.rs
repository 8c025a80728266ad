//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! `cargo test --test acceptance` runs all ten; pass criterion numbers
//! (`-- 3 7`) to run a subset. Criteria listed in `KNOWN` are expected to
//! fail; their lines are tagged `[known]` and do not change the exit code.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use redistrict::connectivity::{brute_force_m, compute_m, switch_graph_connected};
use redistrict::corpus::{connected_graphs, sampled_separable, standard};
use redistrict::district::{
    apply_switch, is_contractible_district, is_contractible_map, valid_switches, validate_map,
    verify_plan, DistrictMap,
};
use redistrict::generators::{
    audit_plan, gen_conn_hardness, gen_path_lb, gen_sp_hardness, gen_spiral_lb, witness_conn,
    witness_sp, witness_spiral, Cnf, Instance,
};
use redistrict::graph::{block_tree, Graph};
use redistrict::oracle::{
    build_switch_graph, enumerate_district_maps, oracle_contractible, oracle_distance, OracleConfig,
};
use redistrict::planner::{canonical_biconnected, plan_path, PlanOutcome, LENGTH_CONSTANT};

/// Criterion 7 asks for witness length 4m+6n-1, below the exact switch
/// distance of the instances; see the README.
const KNOWN: &[usize] = &[7];

type Outcome = Result<String, String>;

fn maps(g: &Graph, k: usize) -> Vec<DistrictMap> {
    enumerate_district_maps(g, k, &OracleConfig::default()).expect("corpus graphs are small")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_connectedness() -> Outcome {
    let mut cases = 0;
    for g in standard() {
        for k in 1..=g.n() {
            let fast = switch_graph_connected(&g, k).map_err(|e| e.to_string())?;
            let sg =
                build_switch_graph(&g, k, &OracleConfig::default()).map_err(|e| e.to_string())?;
            ensure(fast.connected == sg.is_connected(), || {
                format!(
                    "edges {:?} k={k}: {fast} but oracle has {} components",
                    g.edges(),
                    sg.component_count
                )
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (graph, k) cases"))
}

fn c2_contractibility() -> Outcome {
    let mut cases = 0;
    for g in standard() {
        let t = block_tree(&g).map_err(|e| e.to_string())?;
        for k in 1..=g.n() {
            for p in maps(&g, k) {
                for i in 0..k {
                    let fast = is_contractible_district(&t, &p, i);
                    ensure(fast == oracle_contractible(&g, &p, i), || {
                        format!(
                            "edges {:?} map {} district {i}: {fast}",
                            g.edges(),
                            p.signature()
                        )
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} districts"))
}

fn c3_m() -> Outcome {
    let corpus = sampled_separable(10, 200, 3);
    for g in &corpus {
        let fast = compute_m(g).map_err(|e| e.to_string())?.m;
        let slow = brute_force_m(g).map_err(|e| e.to_string())?;
        ensure(fast == slow, || {
            format!("edges {:?}: {fast} vs {slow}", g.edges())
        })?;
    }
    Ok(format!("{} graphs", corpus.len()))
}

fn c4_canonical() -> Outcome {
    let (mut runs, mut worst) = (0, 0.0f64);
    for n in 1..=7 {
        for g in connected_graphs(n)
            .into_iter()
            .filter(|g| g.n() <= 2 || g.is_biconnected())
        {
            for k in 1..=n {
                let mut sigs = BTreeSet::new();
                for p in maps(&g, k) {
                    let (plan, out) = canonical_biconnected(&g, &p).map_err(|e| e.to_string())?;
                    let end = verify_plan(&g, &p, &plan).map_err(|e| e.to_string())?;
                    ensure(end.signature() == out.signature(), || {
                        "plan end differs".into()
                    })?;
                    ensure(plan.len() <= LENGTH_CONSTANT * k * n, || {
                        format!(
                            "edges {:?}: length {} > {}",
                            g.edges(),
                            plan.len(),
                            LENGTH_CONSTANT * k * n
                        )
                    })?;
                    worst = worst.max(plan.len() as f64 / (k * n) as f64);
                    sigs.insert(out.signature());
                    runs += 1;
                }
                ensure(sigs.len() == 1, || {
                    format!("edges {:?} k={k}: {} canonical maps", g.edges(), sigs.len())
                })?;
            }
        }
    }
    Ok(format!("{runs} starting maps, max length/kn {worst:.2}"))
}

fn c5_planner() -> Outcome {
    let (mut planned, mut separated, mut unsupported) = (0usize, 0usize, 0usize);
    for g in standard() {
        let t = block_tree(&g).map_err(|e| e.to_string())?;
        for k in 1..=g.n() {
            let sg =
                build_switch_graph(&g, k, &OracleConfig::default()).map_err(|e| e.to_string())?;
            let all = maps(&g, k);
            let comp: Vec<usize> = all
                .iter()
                .map(|p| sg.component[sg.node(&p.signature()).unwrap()])
                .collect();
            let con: Vec<bool> = all
                .iter()
                .map(|p| k == 1 || is_contractible_map(&t, p))
                .collect();
            for (i, a) in all.iter().enumerate() {
                for (j, b) in all.iter().enumerate() {
                    let ctx = || {
                        format!(
                            "edges {:?} {} -> {}",
                            g.edges(),
                            a.signature(),
                            b.signature()
                        )
                    };
                    match plan_path(&g, a, b).map_err(|e| format!("{}: {e}", ctx()))? {
                        PlanOutcome::Plan(pp) => {
                            ensure(con[i] && con[j], || {
                                format!("{}: planned an incontractible pair", ctx())
                            })?;
                            let end = verify_plan(&g, a, &pp.plan)
                                .map_err(|e| format!("{}: {e}", ctx()))?;
                            ensure(end.signature() == b.signature(), || {
                                format!("{}: wrong end", ctx())
                            })?;
                            ensure(comp[i] == comp[j], || {
                                format!("{}: oracle separates", ctx())
                            })?;
                            planned += 1;
                        }
                        PlanOutcome::Unreachable => {
                            ensure(con[i] != con[j], || {
                                format!("{}: unreachable verdict", ctx())
                            })?;
                            ensure(comp[i] != comp[j], || format!("{}: oracle joins", ctx()))?;
                            separated += 1;
                        }
                        PlanOutcome::UnsupportedPair => {
                            ensure(!con[i] && !con[j], || {
                                format!("{}: unsupported verdict", ctx())
                            })?;
                            unsupported += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{planned} planned, {separated} separated, {unsupported} incontractible pairs skipped"
    ))
}

fn c6_path_lb() -> Outcome {
    let mut out = Vec::new();
    for n in [5, 6, 7] {
        for k in [2, 3] {
            let inst = gen_path_lb(n, k).map_err(|e| e.to_string())?;
            let sg = build_switch_graph(&inst.graph, k, &OracleConfig::default())
                .map_err(|e| e.to_string())?;
            let d = oracle_distance(&sg, &inst.map_a.signature(), &inst.map_b.signature())
                .map_err(|e| e.to_string())?
                .ok_or("pair not connected")?;
            ensure(d >= (k - 1) * (n - k), || {
                format!("P{n} k={k}: distance {d}")
            })?;
            let len = match plan_path(&inst.graph, &inst.map_a, &inst.map_b)
                .map_err(|e| e.to_string())?
            {
                PlanOutcome::Plan(pp) => pp.plan.len(),
                _ => return Err(format!("P{n} k={k}: no plan")),
            };
            ensure(len <= LENGTH_CONSTANT * k * n, || {
                format!("P{n} k={k}: plan {len}")
            })?;
            out.push(format!("P{n}/{k}: {}<={d}<={len}", (k - 1) * (n - k)));
        }
    }
    Ok(out.join(", "))
}

fn satisfiable_family() -> Vec<(Cnf, Vec<bool>)> {
    Cnf::family(3, 3)
        .into_iter()
        .filter_map(|f| f.satisfying_assignment().map(|t| (f, t)))
        .collect()
}

/// Exact switch distance between the two maps of an instance.
fn bfs_distance(inst: &Instance) -> Option<usize> {
    let g = &inst.graph;
    let target = inst.map_b.signature();
    let mut seen = HashSet::from([inst.map_a.signature()]);
    let mut queue = VecDeque::from([(inst.map_a.clone(), 0)]);
    while let Some((p, d)) = queue.pop_front() {
        if p.signature() == target {
            return Some(d);
        }
        for s in valid_switches(g, &p) {
            let q = apply_switch(g, &p, s).unwrap();
            if seen.insert(q.signature()) {
                queue.push_back((q, d + 1));
            }
        }
    }
    None
}

fn c7_sp_reduction() -> Outcome {
    let fam = satisfiable_family();
    let (mut exact_required, mut exact_recorded) = (0, 0);
    for (f, tau) in &fam {
        let (n, m) = (f.vars, f.m());
        let inst = gen_sp_hardness(f, false).map_err(|e| e.to_string())?;
        let plan = witness_sp(&inst, tau).map_err(|e| e.to_string())?;
        verify_plan(&inst.graph, &inst.map_a, &plan).map_err(|e| e.to_string())?;
        let rep = audit_plan(&inst, &plan.steps).map_err(|e| e.to_string())?;
        let want = [n, 2 * n + 2 * (n - 1), 4 * m, 1, 2 * n, 0];
        let got: Vec<usize> = rep.components.iter().map(|c| c.count).collect();
        ensure(got == want, || {
            format!(
                "{}: components {got:?}, expected {want:?}",
                f.to_dimacs().trim()
            )
        })?;
        exact_required += usize::from(plan.len() == 4 * m + 6 * n - 1);
        exact_recorded += usize::from(plan.len() == 4 * m + 7 * n - 1);
    }
    let f = Cnf::new(1, &[vec![1, 1, 1]]).unwrap();
    let d = bfs_distance(&gen_sp_hardness(&f, false).unwrap()).ok_or("unreachable")?;
    let summary = format!(
        "{} formulas: components n/2n+2(n-1)/4m/1/2n exact on all; length 4m+6n-1 on {exact_required}, \
         4m+7n-1 on {exact_recorded}; exact distance for (x1 v x1 v x1) is {d} > 4m+6n-1 = 9",
        fam.len()
    );
    if exact_required == fam.len() {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn c8_conn_reduction() -> Outcome {
    let fam = satisfiable_family();
    let mut steps = 0;
    for (f, tau) in &fam {
        let inst = gen_conn_hardness(f).map_err(|e| e.to_string())?;
        let plan = witness_conn(&inst, tau).map_err(|e| e.to_string())?;
        let g = &inst.graph;
        let leaves: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
        let home: Vec<usize> = leaves.iter().map(|&l| inst.map_a.district_of(l)).collect();
        let mut p = inst.map_a.clone();
        for &s in &plan.steps {
            p.apply(g, s)
                .map_err(|e| format!("{}: {e}", f.to_dimacs().trim()))?;
            ensure(
                leaves
                    .iter()
                    .zip(&home)
                    .all(|(&l, &h)| p.district_of(l) == h),
                || format!("{}: a leaf left its district", f.to_dimacs().trim()),
            )?;
        }
        ensure(p.signature() == inst.map_b.signature(), || {
            "witness misses map B".into()
        })?;
        steps += plan.len();
    }
    Ok(format!("{} formulas, {steps} switches audited", fam.len()))
}

fn c9_spiral() -> Outcome {
    let mut out = Vec::new();
    for (r, q, l) in [(2usize, 1usize, 1usize), (4, 3, 2)] {
        let inst = gen_spiral_lb(r, q, l).map_err(|e| e.to_string())?;
        let (n, k) = (inst.graph.n(), inst.map_a.k());
        ensure(n == 10 * r + 2 * l + 2 * q - 5, || {
            format!("({r},{q},{l}): n = {n}")
        })?;
        ensure(k == 2 * r - 1 + l + 2, || format!("({r},{q},{l}): k = {k}"))?;
        let plan = witness_spiral(&inst).map_err(|e| e.to_string())?;
        verify_plan(&inst.graph, &inst.map_a, &plan).map_err(|e| e.to_string())?;
        let rep = audit_plan(&inst, &plan.steps).map_err(|e| e.to_string())?;
        let diamond = rep.component("diamond").unwrap().count;
        let tree = rep.component("tree").unwrap().count;
        let (dt, tt) = (l * ((r + 1) * r / 2 + r * (r - 1) / 2), (l - 1) * 2 * q);
        ensure(diamond >= dt && tree >= tt, || {
            format!("({r},{q},{l}): diamond {diamond} < {dt} or tree {tree} < {tt}")
        })?;
        out.push(format!(
            "({r},{q},{l}) n={n} k={k} diamond {diamond}>={dt} tree {tree}>={tt}"
        ));
    }
    Ok(out.join("; "))
}

fn c10_properties() -> Outcome {
    let corpus: Vec<Graph> = standard().into_iter().filter(|g| g.n() >= 3).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut done = 0;
    while done < 10_000 {
        let g = corpus.choose(&mut rng).unwrap();
        let t = block_tree(g).map_err(|e| e.to_string())?;
        let k = rng.gen_range(2..g.n());
        let all = maps(g, k);
        let mut p = all.choose(&mut rng).unwrap().clone();
        for _ in 0..25 {
            let sw = valid_switches(g, &p);
            let Some(&s) = sw.choose(&mut rng) else { break };
            let q = apply_switch(g, &p, s).map_err(|e| e.to_string())?;
            let ctx = || format!("edges {:?} {} via {s}", g.edges(), p.signature());
            ensure(validate_map(g, &q).is_ok() && q.k() == k, || {
                format!("{}: not a partition", ctx())
            })?;
            let back = apply_switch(g, &q, s.reversed()).map_err(|e| format!("{}: {e}", ctx()))?;
            ensure(back.signature() == p.signature(), || {
                format!("{}: not reversible", ctx())
            })?;
            ensure(g.degree(s.v) != 1, || format!("{}: moved a leaf", ctx()))?;
            ensure(
                (0..g.n())
                    .filter(|&v| g.degree(v) == 1)
                    .all(|l| p.district_of(l) == q.district_of(l)),
                || format!("{}: leaf changed district", ctx()),
            )?;
            ensure(
                is_contractible_map(&t, &p) == is_contractible_map(&t, &q),
                || format!("{}: contractibility changed", ctx()),
            )?;
            p = q;
            done += 1;
        }
    }
    Ok(format!("{done} switches"))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 10] = [
        (
            1,
            "connectedness characterization vs oracle",
            c1_connectedness,
        ),
        (
            2,
            "contractibility characterization vs oracle",
            c2_contractibility,
        ),
        (3, "M vs brute force", c3_m),
        (4, "canonical maps on biconnected graphs", c4_canonical),
        (5, "planner completeness and separation", c5_planner),
        (6, "path lower bound", c6_path_lb),
        (
            7,
            "shortest-path reduction witness and audit",
            c7_sp_reduction,
        ),
        (
            8,
            "connectedness reduction witness, leaves fixed",
            c8_conn_reduction,
        ),
        (9, "spiral instance sizes and audit", c9_spiral),
        (
            10,
            "switch properties on 10000 random switches",
            c10_properties,
        ),
    ];
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let res = f();
        let secs = t.elapsed().as_secs_f64();
        let known = KNOWN.contains(&id);
        match res {
            Ok(detail) => println!("PASS {id} {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                let tag = if known { " [known]" } else { "" };
                println!("FAIL {id} {name}: {detail} ({secs:.1}s){tag}");
                unexpected += usize::from(!known);
            }
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
