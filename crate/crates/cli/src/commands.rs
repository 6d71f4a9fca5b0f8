use clap::ValueEnum;
use serde_json::{json, Value};

use hyperreg::construct::{random_3graph, random_graph, random_triad, task_seed, InstanceRecipe};
use hyperreg::count::{codegree_profile, full_density, k222_count, k22_count, relative_density_trigraph, DensityValue, Side};
use hyperreg::deltareg::{delta_audit, delta_decompose, triangle_trigraph, tripartite, DeltaCheck, DeltaOptions, DeltaWitness};
use hyperreg::dims::{svc, vc2_dimension, vc_dimension, verify_vc, verify_vc2, DEFAULT_VC2_CAP, DEFAULT_VC_CAP};
use hyperreg::graphreg::{sampled_partition_audit, szemeredi_partition};
use hyperreg::hyperreg::{decomposition_audit, strong_decompose, DecomposeCaps, Decomposition, Eps2Schedule};
use hyperreg::io::{instance_labels, instance_to_json, parse_instance, parse_partition, partition_to_json, Instance};
use hyperreg::quasi::{counting_audit, dev2, dev23, disc23, measured_triad_epsilon, DiscMode};
use hyperreg::structures::{lift_graph, Graph, Triad, Trigraph, VertexPartition};
use hyperreg::verify::{run_all, run_suite};

use crate::run::{usage, CliError, CliResult, Inputs, Outcome};
use crate::{
    AuditArgs, Cmd, DecomposeArgs, DeltaArgs, Experiment, GenArgs, GenKind, PartitionArgs, QuasiArgs, QuasiMode, SideArg,
    StatsArgs, SweepArgs, VcKind, VcdimArgs, VerifyArgs,
};

/// Work limit for the exhaustive disc23 search.
const DISC_WORK: f64 = 2e8;

pub fn dispatch(cmd: &Cmd, digits: u64, inputs: &Inputs) -> CliResult<Outcome> {
    match cmd {
        Cmd::Gen(a) => gen(a, inputs),
        Cmd::Stats(a) => stats(a, inputs),
        Cmd::Quasi(a) => quasi(a, inputs),
        Cmd::Vcdim(a) => vcdim(a, inputs),
        Cmd::Partition(a) => partition(a, inputs),
        Cmd::Decompose(a) => decompose(a, inputs),
        Cmd::Audit(a) => audit(a, inputs),
        Cmd::DeltaReg(a) => delta_reg(a, digits, inputs),
        Cmd::Verify(a) => verify(a),
        Cmd::Sweep(a) => sweep(a, digits),
    }
}

fn load(inputs: &Inputs, path: &str) -> CliResult<Instance> {
    Ok(parse_instance(&inputs.read(path)?)?)
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("--kind {kind} needs --{flag}")))
}

fn graph_of(inst: Instance, what: &str) -> CliResult<Graph> {
    match inst {
        Instance::Graph(g) => Ok(g),
        other => usage(format!("{what} needs a graph instance, got a {}", other.kind())),
    }
}

fn read_parts(inputs: &Inputs, path: &str, labels: &[hyperreg::structures::Label]) -> CliResult<VertexPartition> {
    Ok(parse_partition(&inputs.read(path)?, labels)?)
}

/// The trigraph of a triad instance (its triangles when none is attached), or of a 3-graph
/// split by a three-part partition file.
fn tripartite_input(inst: &Instance, parts: Option<&str>, inputs: &Inputs) -> CliResult<(Trigraph, Option<Triad>)> {
    match inst {
        Instance::Triad { triad, trigraph } => {
            let h = trigraph.clone().unwrap_or_else(|| triangle_trigraph(triad));
            Ok((h, Some(triad.clone())))
        }
        Instance::Hypergraph(h) => {
            let path = parts.ok_or_else(|| CliError::Usage("3-graph instances need --parts with three parts".into()))?;
            let p = read_parts(inputs, path, h.labels())?;
            if p.len() != 3 {
                return usage(format!("--parts has {} parts, expected 3", p.len()));
            }
            let parts: [Vec<usize>; 3] = [p.part(0).to_vec(), p.part(1).to_vec(), p.part(2).to_vec()];
            Ok((tripartite(h, parts)?, None))
        }
        Instance::Graph(_) => usage("this command needs a triad or a 3-graph"),
    }
}

fn gen(a: &GenArgs, inputs: &Inputs) -> CliResult<Outcome> {
    use InstanceRecipe as R;
    let kind = a.kind.to_possible_value().expect("every kind has a name").get_name().to_string();
    let base = || -> CliResult<Box<InstanceRecipe>> {
        let path = a.base.clone().ok_or_else(|| CliError::Usage(format!("--kind {kind} needs --base")))?;
        Ok(Box::new(R::File { path }))
    };
    let recipe = match a.kind {
        GenKind::Powerset => R::Powerset { k: need(a.k, "k", &kind)? },
        GenKind::RandomGraph => R::RandomGraph { n: need(a.n, "n", &kind)?, p: need(a.p, "p", &kind)?, seed: a.seed },
        GenKind::Random3graph => R::Random3graph { n: need(a.n, "n", &kind)?, p: need(a.p, "p", &kind)?, seed: a.seed },
        GenKind::RandomTriad => {
            let sizes = match &a.sizes {
                Some(s) if s.len() == 3 => [s[0], s[1], s[2]],
                Some(_) => return usage("--sizes takes three values"),
                None => [need(a.n, "n", &kind)?; 3],
            };
            R::RandomTriad { sizes, p: need(a.p, "p", &kind)?, seed: a.seed, fill: a.fill }
        }
        GenKind::DummyExtend => R::DummyExtend { base: base()?, n: need(a.n, "n", &kind)? },
        GenKind::Bip => R::Bip { base: base()? },
        GenKind::Trip => R::Trip { base: base()? },
        GenKind::Blowup => R::Blowup { base: base()?, n: need(a.n, "n", &kind)? },
        GenKind::Hard => R::HardInstance { base: base()?, n: need(a.n, "n", &kind)? },
        GenKind::Duplication => R::Duplication {
            base: base()?,
            k: need(a.k, "k", &kind)?,
            alternate: a.alternate.clone().map(|path| Box::new(R::File { path })),
        },
    };
    let loaded = std::cell::RefCell::new(None::<CliError>);
    let loader = |path: &str| -> hyperreg::Result<Instance> {
        match inputs.read(path) {
            Ok(text) => parse_instance(&text),
            Err(e) => {
                let msg = e.to_string();
                *loaded.borrow_mut() = Some(e);
                Err(hyperreg::Error::Parse(msg))
            }
        }
    };
    let inst = match recipe.build_with(&loader) {
        Ok(i) => i,
        Err(e) => return Err(loaded.into_inner().unwrap_or(CliError::Lib(e))),
    };
    let mut out = Outcome::new();
    out.add("instance.json", instance_to_json(&inst));
    Ok(out)
}

fn density_json(d: &DensityValue) -> Value {
    json!({ "exact": format!("{}/{}", d.numerator, d.denominator.max(1)), "value": d.value })
}

fn stats(a: &StatsArgs, inputs: &Inputs) -> CliResult<Outcome> {
    let inst = load(inputs, &a.instance)?;
    let mut out = Outcome::new();
    let mut csv = None;
    let report = match &inst {
        Instance::Graph(g) => {
            let n = g.n() as u64;
            let pairs = n * n.saturating_sub(1) / 2;
            let triangles: u64 = g.edges().iter().map(|&(x, y)| g.neighbors(x).and_count(g.neighbors(y))).sum::<u64>() / 3;
            let mut degrees = std::collections::BTreeMap::new();
            for v in 0..g.n() {
                *degrees.entry(g.degree(v)).or_insert(0usize) += 1;
            }
            json!({
                "kind": "graph",
                "vertices": n,
                "edges": g.edge_count(),
                "density": density_json(&DensityValue::new(g.edge_count() as u64, pairs)),
                "triangles": triangles,
                "degree_histogram": degrees,
            })
        }
        Instance::Hypergraph(h) => {
            let n = h.n() as u64;
            let triples = if n < 3 { 0 } else { n * (n - 1) * (n - 2) / 6 };
            json!({
                "kind": "hypergraph",
                "vertices": n,
                "edges": h.edge_count(),
                "density": density_json(&DensityValue::new(h.edge_count() as u64, triples)),
            })
        }
        Instance::Triad { triad, trigraph } => {
            let comps: Vec<Value> = [("xy", triad.xy()), ("xz", triad.xz()), ("yz", triad.yz())]
                .iter()
                .map(|(name, b)| {
                    json!({ "component": name, "edges": b.edge_count(), "density": density_json(&full_density(b)), "k22": k22_count(b).to_string() })
                })
                .collect();
            let side = match a.side {
                SideArg::Xy => Side::Xy,
                SideArg::Xz => Side::Xz,
                SideArg::Yz => Side::Yz,
            };
            let prof = codegree_profile(triad, side, a.tau);
            let mut table = String::from("codegree,pairs\n");
            for (c, k) in &prof.histogram {
                table += &format!("{c},{k}\n");
            }
            csv = Some(table);
            let tri = match trigraph {
                Some(f) => json!({
                    "triples": f.triple_count(),
                    "relative_density": density_json(&relative_density_trigraph(f, triad)?),
                    "k222": k222_count(f).to_string(),
                }),
                None => Value::Null,
            };
            json!({
                "kind": "triad",
                "sizes": triad.sizes(),
                "components": comps,
                "k3": triad.k3_count(),
                "trigraph": tri,
                "codegrees": {
                    "side": prof.side, "center": prof.center, "tau": prof.tau,
                    "inside": prof.inside, "fraction_inside": prof.fraction_inside, "histogram": prof.histogram,
                },
            })
        }
    };
    out.add_json("stats.json", &report);
    if a.csv {
        if let Some(t) = csv {
            out.add("codegrees.csv", t);
        }
    }
    Ok(out)
}

fn quasi(a: &QuasiArgs, inputs: &Inputs) -> CliResult<Outcome> {
    let inst = load(inputs, &a.instance)?;
    let mut out = Outcome::new();
    let report = match &inst {
        Instance::Graph(g) => {
            if a.mode != QuasiMode::Dev {
                return usage("disc23 needs a triad or a 3-graph");
            }
            json!({ "kind": "dev2", "report": dev2(&lift_graph(g), None).with_thresholds(&[a.epsilon2]) })
        }
        Instance::Triad { triad, trigraph: None } => {
            if a.mode != QuasiMode::Dev {
                return usage("disc23 needs a trigraph; this triad has none");
            }
            let comps: Vec<Value> = [triad.xy(), triad.xz(), triad.yz()]
                .iter()
                .map(|b| serde_json::to_value(dev2(b, None).with_thresholds(&[a.epsilon2])).expect("report serializes"))
                .collect();
            json!({ "kind": "dev2-components", "components": comps })
        }
        _ => {
            let (h, g) = tripartite_input(&inst, a.parts.as_deref(), inputs)?;
            let g = g.unwrap_or_else(|| Triad::complete(h.parts().clone()));
            let dev = dev23(&h, &g)?.with_thresholds(&[(a.epsilon1, a.epsilon2)]);
            let disc = match a.mode {
                QuasiMode::Dev => Value::Null,
                QuasiMode::Exact => serde_json::to_value(disc23(&h, &g, DiscMode::Exact, DISC_WORK, 1, a.seed)?).expect("report serializes"),
                QuasiMode::Heuristic => {
                    serde_json::to_value(disc23(&h, &g, DiscMode::Heuristic, DISC_WORK, a.samples, a.seed)?).expect("report serializes")
                }
            };
            json!({ "kind": "dev23", "report": dev, "disc23": disc })
        }
    };
    out.add_json("quasi.json", &report);
    Ok(out)
}

fn vcdim(a: &VcdimArgs, inputs: &Inputs) -> CliResult<Outcome> {
    let inst = load(inputs, &a.instance)?;
    let (w, verified) = match (a.kind, &inst) {
        (VcKind::Vc, Instance::Graph(g)) => {
            let w = vc_dimension(g, a.cap.unwrap_or(DEFAULT_VC_CAP));
            let sets: Vec<_> = (0..g.n()).map(|v| g.neighbors(v).clone()).collect();
            let ok = w.dimension() == 0 || verify_vc(&sets, &w);
            (w, ok)
        }
        (VcKind::Vc2, Instance::Hypergraph(h)) => {
            let w = vc2_dimension(h, a.cap.unwrap_or(DEFAULT_VC2_CAP));
            let ok = w.dimension() == 0 || verify_vc2(h, &w);
            (w, ok)
        }
        (VcKind::Svc, Instance::Hypergraph(h)) => (svc(h, a.cap.unwrap_or(DEFAULT_VC_CAP)), true),
        (VcKind::Vc, other) => return usage(format!("vc needs a graph, got a {}", other.kind())),
        (_, other) => return usage(format!("vc2 and svc need a 3-graph, got a {}", other.kind())),
    };
    if !verified {
        return Err(CliError::Lib(hyperreg::Error::Structural("shattering witness failed re-verification".into())));
    }
    let mut out = Outcome::new();
    out.add_json("vcdim.json", &w);
    Ok(out)
}

fn partition(a: &PartitionArgs, inputs: &Inputs) -> CliResult<Outcome> {
    let inst = load(inputs, &a.instance)?;
    let labels = instance_labels(&inst);
    let g = graph_of(inst, "partition")?;
    let init = match &a.init {
        Some(path) => read_parts(inputs, path, &labels)?,
        None => VertexPartition::trivial(g.n()),
    };
    let colors = match &a.colors {
        Some(path) => {
            let d: Decomposition =
                serde_json::from_str(&inputs.read(path)?).map_err(|e| hyperreg::Error::Parse(e.to_string()))?;
            if d.n() != g.n() {
                return usage("--colors decomposition does not match the graph");
            }
            Some(d.colors())
        }
        None => None,
    };
    let (p, ledger) = szemeredi_partition(&g, a.epsilon, &init, colors.as_deref())?;
    let audit = sampled_partition_audit(&g, &p, a.epsilon, a.samples, a.seed);
    let mut out = Outcome::new();
    out.add("partition.json", partition_to_json(&p, &labels));
    out.add("ledger.csv", ledger.to_csv());
    out.add_json("report.json", &json!({ "parts": p.len(), "ledger": ledger, "audit": audit }));
    Ok(out)
}

fn hypergraph_of(inst: Instance, what: &str) -> CliResult<hyperreg::structures::Hypergraph3> {
    match inst {
        Instance::Hypergraph(h) => Ok(h),
        other => usage(format!("{what} needs a 3-graph instance, got a {}", other.kind())),
    }
}

fn decompose(a: &DecomposeArgs, inputs: &Inputs) -> CliResult<Outcome> {
    let h = hypergraph_of(load(inputs, &a.instance)?, "decompose")?;
    let sched = Eps2Schedule::parse(&a.eps2)?;
    let mut caps = DecomposeCaps::default();
    caps.max_t = a.max_t.unwrap_or(caps.max_t);
    caps.max_ell = a.max_ell.unwrap_or(caps.max_ell);
    caps.max_rounds = a.max_rounds.unwrap_or(caps.max_rounds);
    let (p, ledger) = strong_decompose(&h, a.epsilon1, &sched, &caps)?;
    let mut out = Outcome::new();
    out.add_json("decomposition.json", &p);
    out.add("ledger.csv", ledger.to_csv());
    out.add_json("ledger.json", &ledger);
    Ok(out)
}

fn audit(a: &AuditArgs, inputs: &Inputs) -> CliResult<Outcome> {
    let inst = load(inputs, &a.instance)?;
    let text = inputs.read(&a.decomposition)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| hyperreg::Error::Parse(e.to_string()))?;
    let parse = |v: &Value| -> CliResult<Decomposition> {
        Ok(serde_json::from_value(v.clone()).map_err(|e| hyperreg::Error::Parse(e.to_string()))?)
    };
    let (p, witnesses) = match value.get("decomposition") {
        Some(d) => {
            let w: Option<Vec<DeltaWitness>> = match value.get("witnesses") {
                Some(w) => Some(serde_json::from_value(w.clone()).map_err(|e| hyperreg::Error::Parse(e.to_string()))?),
                None => None,
            };
            (parse(d)?, w)
        }
        None => (parse(&value)?, None),
    };
    let mut out = Outcome::new();
    if let Some(delta) = a.delta {
        let (h, _) = tripartite_input(&inst, a.parts.as_deref(), inputs)?;
        let check = DeltaCheck { seed: a.seed, ..DeltaCheck::default() };
        let r = delta_audit(&h, &p, delta, witnesses.as_deref(), &check)?;
        out.audit_failed = !(r.good && r.regular != Some(false));
        out.add_json("audit.json", &r);
    } else {
        let h = hypergraph_of(inst, "audit without --delta")?;
        let eps2 = a.epsilon2.unwrap_or_else(|| p.eps2().eval(p.ell()));
        let mu = a.mu.unwrap_or(a.epsilon1 / 48.0);
        let r = decomposition_audit(&h, &p, a.epsilon1, eps2, mu)?;
        out.audit_failed = !r.passes();
        out.add_json("audit.json", &r);
    }
    Ok(out)
}

fn delta_reg(a: &DeltaArgs, digits: u64, inputs: &Inputs) -> CliResult<Outcome> {
    let inst = load(inputs, &a.instance)?;
    let labels = instance_labels(&inst);
    let (h, g0) = tripartite_input(&inst, a.parts.as_deref(), inputs)?;
    let v0 = match &a.v0 {
        Some(path) => Some(read_parts(inputs, path, &labels)?),
        None => None,
    };
    let opts = DeltaOptions {
        eps_override: a.eps_override,
        check: DeltaCheck { seed: a.seed, ..DeltaCheck::default() },
        digit_cap: digits,
        ..DeltaOptions::default()
    };
    let r = delta_decompose(&h, g0.as_ref(), a.delta, v0.as_ref(), &opts)?;
    let mut out = Outcome::new();
    out.audit_failed = !r.audit.passes();
    out.add_json("delta.json", &r);
    Ok(out)
}

fn verify(a: &VerifyArgs) -> CliResult<Outcome> {
    let reports = if a.suite == "all" { run_all(a.seed)? } else { vec![run_suite(&a.suite, a.seed)?] };
    for r in &reports {
        eprintln!(
            "suite {:>2} {:<18} {} ({} cases, {} failures, {:.2}s)",
            r.id,
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.cases,
            r.failures.len(),
            r.elapsed_secs
        );
    }
    let mut out = Outcome::new();
    out.audit_failed = reports.iter().any(|r| !r.passed);
    out.add_json("verify.json", &reports);
    Ok(out)
}

fn sweep(a: &SweepArgs, digits: u64) -> CliResult<Outcome> {
    if a.p.is_empty() || a.seeds == 0 {
        return usage("sweep needs at least one density and one seed");
    }
    let label = a.experiment.to_possible_value().expect("every experiment has a name").get_name().to_string();
    let mut rows: Vec<Value> = Vec::new();
    let header: &[&str] = match a.experiment {
        Experiment::Counting => &["p", "index", "seed", "eps", "triangles", "expected", "deviation", "bound", "slack"],
        Experiment::Partition => &["p", "index", "seed", "eps", "parts", "rounds", "status", "energy", "violations"],
        Experiment::Decompose => &["p", "index", "seed", "eps1", "t", "ell", "rounds", "complete", "msd"],
        Experiment::Delta => &["p", "index", "seed", "delta", "rho", "q_parts", "p1_parts", "deleted", "audit_passes"],
    };
    for (pi, &p) in a.p.iter().enumerate() {
        for i in 0..a.seeds {
            let s = task_seed(a.seed, &label, pi as u64 * a.seeds + i);
            let row = match a.experiment {
                Experiment::Counting => {
                    let g = random_triad([a.n; 3], p, s)?;
                    let eps = measured_triad_epsilon(&g);
                    let d = [g.xy(), g.xz(), g.yz()].map(|c| full_density(c).ratio());
                    let r = counting_audit(&g, [&d[0], &d[1], &d[2]], eps)?;
                    json!([p, i, s, eps, r.triangles, r.expected, r.deviation, r.bound, r.slack])
                }
                Experiment::Partition => {
                    let eps = a.epsilon.unwrap_or(0.25);
                    let g = random_graph(a.n, p, s)?;
                    let (part, ledger) = szemeredi_partition(&g, eps, &VertexPartition::trivial(a.n), None)?;
                    let audit = sampled_partition_audit(&g, &part, eps, 2000, s);
                    let energy = ledger.rounds.last().map_or(0.0, |r| r.energy);
                    json!([p, i, s, eps, part.len(), ledger.rounds.len(), ledger.status, energy, audit.violations])
                }
                Experiment::Decompose => {
                    let eps1 = a.epsilon.unwrap_or(0.3);
                    let h = random_3graph(a.n, p, s)?;
                    let (d, ledger) = strong_decompose(&h, eps1, &Eps2Schedule::default(), &DecomposeCaps::default())?;
                    let msd = ledger.rounds.last().map_or(0.0, |r| r.msd);
                    json!([p, i, s, eps1, d.t(), d.ell(), ledger.rounds.len(), ledger.is_complete(), msd])
                }
                Experiment::Delta => {
                    let delta = a.epsilon.unwrap_or(0.1);
                    let g = random_triad([a.n; 3], p, s)?;
                    let h = triangle_trigraph(&g);
                    let opts = DeltaOptions { eps_override: Some(0.05), digit_cap: digits, ..DeltaOptions::default() };
                    match delta_decompose(&h, Some(&g), delta, None, &opts) {
                        Ok(r) => json!([p, i, s, delta, r.report.rho, r.report.q_parts, r.report.p1_parts, r.report.deleted, r.audit.passes()]),
                        Err(e @ (hyperreg::Error::Precondition(_) | hyperreg::Error::Infeasible(_) | hyperreg::Error::Capacity(_))) => {
                            json!([p, i, s, delta, Value::Null, Value::Null, Value::Null, Value::Null, e.to_string()])
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
            };
            rows.push(row);
        }
    }
    let mut csv = header.join(",") + "\n";
    for r in &rows {
        let cells: Vec<String> = r
            .as_array()
            .expect("rows are arrays")
            .iter()
            .map(|v| match v {
                Value::String(s) => format!("\"{}\"", s.replace('"', "'")),
                Value::Null => String::new(),
                other => other.to_string(),
            })
            .collect();
        csv += &(cells.join(",") + "\n");
    }
    let objects: Vec<Value> = rows
        .iter()
        .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.as_array().expect("rows are arrays").iter().cloned()).collect()))
        .collect();
    let mut out = Outcome::new();
    out.add("sweep.csv", csv);
    out.add_json("sweep.json", &json!({ "experiment": label, "n": a.n, "rows": objects }));
    Ok(out)
}
