//! Command-line front end.
//!
//! Reports are `key=value` lines (strings with spaces are quoted), or one
//! JSON object per line with `--json`. Exit codes: 0 success, 1 domain
//! error, 2 usage error.
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::connectivity::{compute_m, incontractible_map, switch_graph_connected, Reason};
use crate::district::{
    contract_district, replay, valid_switches, validate_map, DistrictMap, Switch, SwitchPlan,
};
use crate::error::{Error, Result};
use crate::generators::{
    audit_plan, gen_conn_hardness, gen_cycle_lb, gen_path_lb, gen_sp_hardness, gen_spiral_lb,
    read_bundle, witness_conn, witness_sp, witness_spiral, write_bundle, Cnf, Instance,
};
use crate::graph::Graph;
use crate::oracle::{build_switch_graph, oracle_diameter, oracle_distance, OracleConfig};
use crate::planner::{plan_path, PlanOutcome};

#[derive(Parser, Debug)]
#[command(
    name = "redistrict",
    version,
    about = "Switch plans between connected graph partitions"
)]
struct Cli {
    /// One JSON object per report line.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check that a map is a valid partition into connected districts.
    Validate { graph: PathBuf, map: PathBuf },
    /// List every valid switch of a map.
    Switches { graph: PathBuf, map: PathBuf },
    /// Apply a plan, printing the signature after each step.
    Apply {
        graph: PathBuf,
        map: PathBuf,
        plan: PathBuf,
        /// Write the final map here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Contract a district to a single vertex.
    Contract {
        graph: PathBuf,
        map: PathBuf,
        district: usize,
        target: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decide whether all k-district maps are mutually reachable.
    Connected {
        graph: PathBuf,
        k: usize,
        /// Also print a map with an incontractible district, if one exists.
        #[arg(long)]
        witness_map: bool,
    },
    /// Plan a switch sequence between two maps.
    Plan {
        graph: PathBuf,
        map_a: PathBuf,
        map_b: PathBuf,
        /// Plan file; a sidecar `<out>.meta.json` is written next to it.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Replay a plan and check that it ends at the target map.
    Verify {
        graph: PathBuf,
        map_a: PathBuf,
        plan: PathBuf,
        map_b: PathBuf,
    },
    /// Brute-force the switch graph of a small graph.
    Oracle {
        graph: PathBuf,
        k: usize,
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        to: Option<PathBuf>,
        /// Diameter of the component of `--from`.
        #[arg(long)]
        diameter: bool,
        /// Maximum number of maps to enumerate.
        #[arg(long, default_value_t = OracleConfig::default().max_nodes)]
        cap: usize,
    },
    /// Generate an instance bundle.
    Gen(GenArgs),
    /// Decompose a plan on a generated instance into cost components.
    Audit {
        bundle: PathBuf,
        /// Plan file; defaults to the bundle's witness.plan.
        plan: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    /// path-lb, cycle-lb, spiral-lb, sp-hardness or conn-hardness.
    kind: String,
    #[arg(short, long)]
    out: PathBuf,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// DIMACS formula for the reductions.
    #[arg(long)]
    cnf: Option<PathBuf>,
    /// Variant of sp-hardness whose maps are contractible.
    #[arg(long)]
    contractible: bool,
    /// Also write witness.plan.
    #[arg(long)]
    witness: bool,
}

struct Report<'a> {
    json: bool,
    w: &'a mut dyn Write,
}

impl Report<'_> {
    fn line(&mut self, fields: &[(&str, Value)]) -> Result<()> {
        let text = if self.json {
            let obj: serde_json::Map<String, Value> = fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            Value::Object(obj).to_string()
        } else {
            let parts: Vec<String> = fields
                .iter()
                .map(|(k, v)| format!("{k}={}", plain(v)))
                .collect();
            parts.join(" ")
        };
        writeln!(self.w, "{text}").map_err(|e| Error::Io(e.to_string()))
    }

    fn raw(&mut self, text: &str) -> Result<()> {
        self.w
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string()))
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) if s.contains(char::is_whitespace) || s.is_empty() => {
            Value::from(s.as_str()).to_string()
        }
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(plain).collect::<Vec<_>>().join(","),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

/// Runs one command; `args[0]` is the program name.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let json = cli.json;
    let mut rep = Report { json, w: out };
    match dispatch(cli.cmd, &mut rep) {
        Ok(code) => code,
        Err(e) => {
            let fields = json!({"error": e.code(), "message": e.to_string()});
            let _ = if json {
                writeln!(err, "{fields}")
            } else {
                writeln!(
                    err,
                    "error={} message={}",
                    e.code(),
                    plain(&Value::from(e.to_string()))
                )
            };
            if is_usage(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::MismatchedK(..) | Error::KOutOfRange { .. } | Error::BadParams(_)
    )
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read(path)?)
}

fn load_map(g: &Graph, path: &Path) -> Result<DistrictMap> {
    DistrictMap::parse(g.n(), &read(path)?)
}

fn load_plan(path: &Path) -> Result<Vec<Switch>> {
    SwitchPlan::parse_steps(&read(path)?)
}

fn steps_json(steps: &[Switch]) -> Value {
    steps.iter().map(|s| json!([s.u, s.v, s.w])).collect()
}

/// Writes a plan to `out`, or prints it (plan format, or a JSON line).
fn emit_plan(
    rep: &mut Report,
    plan: &SwitchPlan,
    out: Option<&Path>,
    extra: &[(&str, Value)],
) -> Result<()> {
    let mut fields = vec![("length", json!(plan.len()))];
    fields.extend(extra.iter().cloned());
    match out {
        Some(p) => {
            write(p, &plan.to_text())?;
            fields.push(("out", json!(p.display().to_string())));
            rep.line(&fields)
        }
        None if rep.json => {
            fields.push(("steps", steps_json(&plan.steps)));
            rep.line(&fields)
        }
        None => rep.raw(&plan.to_text()),
    }
}

fn dispatch(cmd: Cmd, rep: &mut Report) -> Result<i32> {
    match cmd {
        Cmd::Validate { graph, map } => {
            let g = load_graph(&graph)?;
            let p = load_map(&g, &map)?;
            match validate_map(&g, &p) {
                Ok(()) => {
                    rep.line(&[
                        ("valid", json!(true)),
                        ("n", json!(g.n())),
                        ("k", json!(p.k())),
                    ])?;
                    Ok(0)
                }
                Err(vs) => {
                    rep.line(&[("valid", json!(false)), ("violations", json!(vs.len()))])?;
                    for v in vs {
                        rep.line(&[("violation", json!(v.to_string()))])?;
                    }
                    Ok(1)
                }
            }
        }
        Cmd::Switches { graph, map } => {
            let g = load_graph(&graph)?;
            let p = load_map(&g, &map)?;
            let sw = valid_switches(&g, &p);
            rep.line(&[("count", json!(sw.len()))])?;
            for s in sw {
                rep.line(&[("switch", json!([s.u, s.v, s.w]))])?;
            }
            Ok(0)
        }
        Cmd::Apply {
            graph,
            map,
            plan,
            out,
        } => {
            let g = load_graph(&graph)?;
            let mut p = load_map(&g, &map)?;
            let steps = load_plan(&plan)?;
            rep.line(&[
                ("step", json!(0)),
                ("signature", json!(p.signature().to_string())),
            ])?;
            for (i, &s) in steps.iter().enumerate() {
                p.apply(&g, s)
                    .map_err(|e| Error::InvalidPlan(format!("step {}: {e}", i + 1)))?;
                rep.line(&[
                    ("step", json!(i + 1)),
                    ("switch", json!([s.u, s.v, s.w])),
                    ("signature", json!(p.signature().to_string())),
                ])?;
            }
            if let Some(o) = out {
                write(&o, &p.to_text())?;
            }
            Ok(0)
        }
        Cmd::Contract {
            graph,
            map,
            district,
            target,
            out,
        } => {
            let g = load_graph(&graph)?;
            let p = load_map(&g, &map)?;
            let plan = contract_district(&g, &p, district, target)?;
            emit_plan(rep, &plan, out.as_deref(), &[])?;
            Ok(0)
        }
        Cmd::Connected {
            graph,
            k,
            witness_map,
        } => {
            let g = load_graph(&graph)?;
            let v = switch_graph_connected(&g, k)?;
            let mut fields = vec![
                ("connected", json!(v.connected)),
                ("verdict", json!(v.to_string())),
                ("n", json!(g.n())),
                ("k", json!(k)),
            ];
            if let Reason::Threshold {
                m, witness_pair, ..
            } = v.reason
            {
                let r = compute_m(&g)?;
                fields.push(("m", json!(m)));
                fields.push(("witness_pair", json!([witness_pair.0, witness_pair.1])));
                fields.push(("witness_edge", json!([r.witness_edge.0, r.witness_edge.1])));
            }
            rep.line(&fields)?;
            if witness_map && !v.connected {
                if let Some(p) = incontractible_map(&g, k)? {
                    rep.line(&[("witness_map", json!(p.signature().to_string()))])?;
                }
            }
            Ok(0)
        }
        Cmd::Plan {
            graph,
            map_a,
            map_b,
            out,
        } => {
            let g = load_graph(&graph)?;
            let a = load_map(&g, &map_a)?;
            let b = load_map(&g, &map_b)?;
            match plan_path(&g, &a, &b)? {
                PlanOutcome::Plan(pp) => {
                    let meta = serde_json::to_value(&pp.meta).expect("meta serializes");
                    if let Some(o) = &out {
                        let side = sidecar(o);
                        write(
                            &side,
                            &(serde_json::to_string_pretty(&meta).expect("json") + "\n"),
                        )?;
                    }
                    let m = &pp.meta;
                    let extra = [
                        ("bound", json!(m.bound)),
                        ("elbow", json!(m.elbow)),
                        ("leaf", json!(m.leaf)),
                        ("consolidate", json!(m.consolidate)),
                        ("align", json!(m.align)),
                    ];
                    emit_plan(rep, &pp.plan, out.as_deref(), &extra)?;
                    Ok(0)
                }
                PlanOutcome::Unreachable => {
                    rep.line(&[("outcome", json!("unreachable"))])?;
                    Ok(1)
                }
                PlanOutcome::UnsupportedPair => {
                    rep.line(&[("outcome", json!("unsupported_pair"))])?;
                    Ok(1)
                }
            }
        }
        Cmd::Verify {
            graph,
            map_a,
            plan,
            map_b,
        } => {
            let g = load_graph(&graph)?;
            let a = load_map(&g, &map_a)?;
            let b = load_map(&g, &map_b)?;
            let steps = load_plan(&plan)?;
            let end = replay(&g, &a, &steps)?;
            if end.signature() != b.signature() {
                return Err(Error::InvalidPlan(format!(
                    "ends at {} instead of {}",
                    end.signature(),
                    b.signature()
                )));
            }
            if rep.json {
                rep.line(&[("verify", json!("ok")), ("steps", json!(steps.len()))])?;
            } else {
                rep.raw(&format!("verify ok: {} steps\n", steps.len()))?;
            }
            Ok(0)
        }
        Cmd::Oracle {
            graph,
            k,
            from,
            to,
            diameter,
            cap,
        } => {
            let g = load_graph(&graph)?;
            let cfg = OracleConfig {
                max_nodes: cap,
                ..OracleConfig::default()
            };
            let sg = build_switch_graph(&g, k, &cfg)?;
            rep.line(&[
                ("maps", json!(sg.nodes.len())),
                ("edges", json!(sg.edge_count())),
                ("components", json!(sg.component_count)),
                ("connected", json!(sg.is_connected())),
            ])?;
            let from = from.map(|p| load_map(&g, &p)).transpose()?;
            let to = to.map(|p| load_map(&g, &p)).transpose()?;
            if let (Some(a), Some(b)) = (&from, &to) {
                let d = oracle_distance(&sg, &a.signature(), &b.signature())?;
                rep.line(&[("distance", d.map_or(Value::Null, |d| json!(d)))])?;
            }
            if diameter {
                let a = from.ok_or_else(|| Error::BadParams("--diameter needs --from".into()))?;
                rep.line(&[("diameter", json!(oracle_diameter(&sg, &a.signature())?))])?;
            }
            Ok(0)
        }
        Cmd::Gen(args) => gen(args, rep),
        Cmd::Audit { bundle, plan } => {
            let (inst, witness) = read_bundle(&bundle)?;
            let steps = match plan {
                Some(p) => load_plan(&p)?,
                None => {
                    witness.ok_or_else(|| Error::BadParams("bundle has no witness.plan".into()))?
                }
            };
            let r = audit_plan(&inst, &steps)?;
            rep.line(&[
                ("kind", json!(r.kind)),
                ("length", json!(r.length)),
                ("reaches_target", json!(r.reaches_target)),
                ("leaf_moves", json!(r.leaf_moves)),
                ("lower_bound", json!(r.lower_bound)),
                ("budget", json!(r.budget)),
                ("slack", json!(r.slack)),
            ])?;
            for c in &r.components {
                rep.line(&[
                    ("component", json!(c.name)),
                    ("count", json!(c.count)),
                    ("bound", json!(c.bound)),
                    ("exact", json!(c.exact)),
                    ("holds", json!(c.holds())),
                ])?;
            }
            Ok(0)
        }
    }
}

/// `x.plan` -> `x.plan.meta.json`.
pub fn sidecar(plan: &Path) -> PathBuf {
    let mut s = plan.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn need(v: Option<usize>, name: &str, kind: &str) -> Result<usize> {
    v.ok_or_else(|| Error::BadParams(format!("{kind} needs --{name}")))
}

fn gen(a: GenArgs, rep: &mut Report) -> Result<i32> {
    let kind = a.kind.as_str();
    let formula = || -> Result<Cnf> {
        let p = a
            .cnf
            .as_deref()
            .ok_or_else(|| Error::BadParams(format!("{kind} needs --cnf")))?;
        Cnf::parse_dimacs(&read(p)?)
    };
    let (inst, witness): (Instance, Option<SwitchPlan>) = match kind {
        "path-lb" | "cycle-lb" => {
            let (n, k) = (need(a.n, "n", kind)?, need(a.k, "k", kind)?);
            let inst = if kind == "path-lb" {
                gen_path_lb(n, k)?
            } else {
                gen_cycle_lb(n, k)?
            };
            let w = match a.witness {
                true => match plan_path(&inst.graph, &inst.map_a, &inst.map_b)? {
                    PlanOutcome::Plan(pp) => Some(pp.plan),
                    _ => return Err(Error::Internal("lower-bound maps not connected".into())),
                },
                false => None,
            };
            (inst, w)
        }
        "spiral-lb" => {
            let inst = gen_spiral_lb(
                need(a.r, "r", kind)?,
                need(a.q, "q", kind)?,
                need(a.l, "l", kind)?,
            )?;
            let w = a.witness.then(|| witness_spiral(&inst)).transpose()?;
            (inst, w)
        }
        "sp-hardness" | "conn-hardness" => {
            let f = formula()?;
            let inst = if kind == "sp-hardness" {
                gen_sp_hardness(&f, a.contractible)?
            } else {
                gen_conn_hardness(&f)?
            };
            let w = match a.witness {
                true => {
                    let tau = f.satisfying_assignment().ok_or(Error::NotSatisfying)?;
                    Some(if kind == "sp-hardness" {
                        witness_sp(&inst, &tau)?
                    } else {
                        witness_conn(&inst, &tau)?
                    })
                }
                false => None,
            };
            (inst, w)
        }
        other => return Err(Error::BadParams(format!("unknown kind {other}"))),
    };
    write_bundle(&a.out, &inst, witness.as_ref())?;
    rep.line(&[
        ("kind", json!(inst.meta.kind)),
        ("n", json!(inst.meta.n)),
        ("m", json!(inst.meta.m)),
        ("k", json!(inst.meta.k)),
        ("budget", json!(inst.meta.budget)),
        ("lower_bound", json!(inst.meta.lower_bound)),
        ("witness", json!(witness.as_ref().map(SwitchPlan::len))),
        ("out", json!(a.out.display().to_string())),
    ])?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("redistrict")
            .chain(args.iter().copied())
            .map(String::from)
            .collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn plain_values() {
        assert_eq!(plain(&json!("a b")), "\"a b\"");
        assert_eq!(plain(&json!([1, 2])), "1,2");
        assert_eq!(plain(&Value::Null), "none");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["validate"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn missing_file_is_domain_error() {
        let (code, _, err) = call(&["validate", "/nonexistent/g.txt", "/nonexistent/m.txt"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error=io "), "{err}");
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(
            sidecar(Path::new("a/x.plan")),
            PathBuf::from("a/x.plan.meta.json")
        );
    }
}
