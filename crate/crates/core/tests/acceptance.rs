//! Acceptance run: one line per criterion, non-zero exit if any fails.
//! Runs without the libtest harness so every line is always printed.

mod common;

use std::time::Instant;

use chpot::applications::{
    blend, expand_turns, lower_bound_weights, scenario_avoid, scenario_scaled, AvoidFlags, LiveBlend, ScaleFactor,
    Scenario, ScenarioTables, TdWeights, TravelTimeFunction, PERIOD,
};
use chpot::ch::{ArcOrigin, ChQuery};
use chpot::harness::{
    generate_synthetic_instance, run_prepared, Algorithm, ExperimentPlan, GeneratorParams, InstanceKind, Optimizations,
    Prepared, QueryRecord,
};
use chpot::potentials::phast_all_to_one;
use chpot::{
    AStar, ChPotential, ContractionHierarchy, CoreDecomposition, EdgeId, Graph, InputEdge, MappedPotential, NodeId,
    Potential, QueryOptions, QueryWeights, Weight, INFINITY,
};
use common::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

const TOGGLES: [(bool, bool, bool); 6] =
    [(false, false, false), (false, true, false), (false, true, true), (true, false, false), (true, true, false), (true, true, true)];

#[derive(Clone, Copy, Debug)]
enum Case {
    Base,
    Alpha(u64, u64),
    Avoid,
    Turns,
    Td,
    TdLive,
    TdLiveTurns,
}

const CASES: [Case; 8] =
    [Case::Base, Case::Alpha(105, 100), Case::Alpha(150, 100), Case::Avoid, Case::Turns, Case::Td, Case::TdLive, Case::TdLiveTurns];

#[derive(Default)]
struct ExactnessReport {
    graphs: usize,
    queries: usize,
    mismatches: Vec<String>,
    relaxed_violations: usize,
    edge_checks: usize,
    edge_violations: usize,
}

/// Criteria 1 and 3 share one pass over the random instances.
fn exactness_suite(num_graphs: usize) -> ExactnessReport {
    let mut report = ExactnessReport::default();
    for g in 0..num_graphs {
        let mut rng = ChaCha8Rng::seed_from_u64(1_000 + g as u64);
        let n = rng.gen_range(1..=200);
        let inst = random_instance(&mut rng, n);
        let graph = &inst.graph;
        let m = graph.num_edges();
        let td = TdWeights::new(&inst.ttf);
        let tables = ScenarioTables { predicted: Some(&td), live: Some(&inst.live) };
        let lower_td = graph.with_weights(lower_bound_weights(graph, Scenario::TimeDependent, tables).unwrap());
        let ch_ff = ContractionHierarchy::build(graph);
        let ch_td = ContractionHierarchy::build(&lower_td);
        let core = CoreDecomposition::compute(graph);
        let expanded = expand_turns(graph, &inst.turns).unwrap();
        let mut astar = AStar::new(graph);
        let mut astar_x = AStar::new(expanded.graph());
        let mut pot_ff = ChPotential::new(&ch_ff);
        let mut pot_td = ChPotential::new(&ch_td);
        let mut pot_x = MappedPotential::new(ChPotential::new(&ch_ff), expanded.mapping());
        let plain = OracleGraph::plain(&inst.edges, n);
        let turned = OracleGraph::with_turns(&inst.edges, n, &inst.turn_table);
        let freeflow: Vec<u64> = inst.edges.iter().map(|e| e.2).collect();
        report.graphs += 1;

        // edge-wise feasibility of the exact potential for the static scenarios
        let ff_tails = graph.tails();
        for t in 0..n.min(5) {
            let h = phast_all_to_one(&ch_ff, t as NodeId);
            for case_weights in [
                scenario_scaled(graph, ScaleFactor::ONE),
                scenario_scaled(graph, ScaleFactor::new(105, 100).unwrap()),
                scenario_scaled(graph, ScaleFactor::new(150, 100).unwrap()),
                scenario_avoid(graph, AvoidFlags { tunnels: true, highways: true }),
            ] {
                for e in 0..m {
                    let (u, v) = (ff_tails[e] as usize, graph.head(e as EdgeId) as usize);
                    if case_weights[e] >= INFINITY || h[u] >= INFINITY {
                        continue;
                    }
                    report.edge_checks += 1;
                    if (case_weights[e] as i64) - (h[u] as i64) + (h[v] as i64) < 0 {
                        report.edge_violations += 1;
                    }
                }
            }
        }

        for _ in 0..4 {
            let s = rng.gen_range(0..n) as NodeId;
            let t = rng.gen_range(0..n) as NodeId;
            let (se, te) = if m > 0 { (rng.gen_range(0..m) as NodeId, rng.gen_range(0..m) as NodeId) } else { (0, 0) };
            let departure = rng.gen_range(0..PERIOD);
            let tau_soon = departure + rng.gen_range(0..7_200_000);
            for case in CASES {
                let turns = matches!(case, Case::Turns | Case::TdLiveTurns);
                if turns && m == 0 {
                    continue;
                }
                let oracle_weights = match case {
                    Case::Base | Case::Turns => OracleWeights::Static(freeflow.clone()),
                    Case::Alpha(num, den) => OracleWeights::Static(freeflow.iter().map(|&w| (w * num).div_ceil(den)).collect()),
                    Case::Avoid => OracleWeights::Static(
                        freeflow
                            .iter()
                            .zip(graph.tags())
                            .map(|(&w, tag)| if tag.tunnel || tag.highway { INFINITY as u64 } else { w })
                            .collect(),
                    ),
                    Case::Td => OracleWeights::Td(&inst.ttf_points),
                    Case::TdLive | Case::TdLiveTurns => {
                        OracleWeights::Blend { ttf: &inst.ttf_points, live: &inst.live_raw, tau_soon: tau_soon as u64 }
                    }
                };
                let (source, target) = if turns { (se, te) } else { (s, t) };
                let oracle = if turns { &turned } else { &plain };
                let expected = oracle.distance(&oracle_weights, source as usize, target as usize, departure as u64);

                let blend = LiveBlend::new(&td, &inst.live, tau_soon);
                let static_weights: Vec<Weight> = match case {
                    Case::Alpha(num, den) => scenario_scaled(graph, ScaleFactor::new(num, den).unwrap()),
                    Case::Avoid => scenario_avoid(graph, AvoidFlags { tunnels: true, highways: true }),
                    _ => graph.weights().to_vec(),
                };
                let turn_static = expanded.weights(static_weights.as_slice());
                let turn_blend = expanded.weights(blend);
                let weights: &dyn QueryWeights = match case {
                    Case::Base | Case::Alpha(..) | Case::Avoid => &static_weights,
                    Case::Turns => &turn_static,
                    Case::Td => &td,
                    Case::TdLive => &blend,
                    Case::TdLiveTurns => &turn_blend,
                };

                for (bcc, deg2, deg3) in TOGGLES {
                    let opts = QueryOptions { deg2, deg3, check_feasibility: true };
                    let result = if turns {
                        astar_x.query(weights, &mut pot_x, source, target, departure, opts)
                    } else {
                        let pot: &mut ChPotential = if matches!(case, Case::Td) { &mut pot_td } else { &mut pot_ff };
                        if bcc {
                            astar.query_with_core(&core, weights, pot, source, target, departure, opts)
                        } else {
                            astar.query(weights, pot, source, target, departure, opts)
                        }
                    };
                    report.queries += 1;
                    let label = format!("graph {g} {case:?} bcc={bcc} deg2={deg2} deg3={deg3} {source}->{target}@{departure}");
                    match result {
                        Err(e) => report.mismatches.push(format!("{label}: {e}")),
                        Ok(r) => {
                            report.relaxed_violations += r.stats.feasibility_violations;
                            let got = to_option(r.distance);
                            if got != expected {
                                report.mismatches.push(format!("{label}: got {got:?}, oracle {expected:?}"));
                                continue;
                            }
                            if !turns {
                                // the path itself must realize the distance
                                let mut at = departure as u64;
                                let mut node = source as usize;
                                let mut connected = true;
                                for &e in &r.path {
                                    connected &= inst.edges[e as usize].0 == node;
                                    at += oracle_weights.eval(e as usize, at).unwrap_or(INFINITY as u64);
                                    node = inst.edges[e as usize].1;
                                }
                                if got.is_some() && (!connected || node != target as usize || Some(at - departure as u64) != got) {
                                    report.mismatches.push(format!("{label}: path does not realize {got:?}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

fn criterion_2() -> Outcome {
    let mut mismatches = 0;
    let mut nodes = 0;
    for i in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(2_000 + i);
        let n = rng.gen_range(1..=200);
        let graph = random_graph(&mut rng, n);
        let ch = ContractionHierarchy::build(&graph);
        let t = rng.gen_range(0..n);
        let reference = bellman_ford(n, &reversed(&edge_list(&graph)), t);
        let phast = phast_all_to_one(&ch, t as NodeId);
        let mut pot = ChPotential::new(&ch);
        pot.init(t as NodeId);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for x in order {
            nodes += 1;
            let lazy = to_option(pot.potential(x as NodeId));
            if lazy != reference[x] || to_option(phast[x]) != reference[x] {
                mismatches += 1;
            }
        }
    }
    check(mismatches == 0, format!("{nodes} node potentials on 100 (graph, target) pairs, {mismatches} mismatches"))
}

/// Shared 50k-node grid batch for criteria 4 to 8.
struct GridBatch {
    by_config: Vec<(&'static str, Vec<QueryRecord>)>,
    alpha_sweep: Vec<(String, f64)>,
    unmodified: Vec<QueryRecord>,
}

fn mean_pushes(records: &[QueryRecord], algorithm: &str) -> f64 {
    let v: Vec<f64> = records.iter().filter(|r| r.algorithm == algorithm).map(|r| r.queue_pushes as f64).collect();
    v.iter().sum::<f64>() / v.len() as f64
}

fn grid_batch() -> GridBatch {
    let bundle = generate_synthetic_instance(GeneratorParams {
        kind: InstanceKind::Grid,
        num_nodes: 50_000,
        seed: 5,
        td: false,
        live: false,
    });
    let alpha = |s: &str| Scenario::Scaled(s.parse().unwrap());
    let prepared = Prepared::new(&bundle, alpha("1"), None).unwrap();
    let configs = [
        ("none", Optimizations::NONE),
        ("bcc", Optimizations { bcc: true, deg2: false, deg3: false }),
        ("bcc+deg2", Optimizations { bcc: true, deg2: true, deg3: false }),
        ("bcc+deg2+deg3", Optimizations::ALL),
    ];
    let by_config = configs
        .iter()
        .map(|&(name, optimizations)| {
            let mut plan = ExperimentPlan::new(
                alpha("1.05"),
                vec![Algorithm::Zero, Algorithm::Alt, Algorithm::ChPot, Algorithm::Oracle],
            );
            plan.optimizations = optimizations;
            plan.num_queries = 1_000;
            plan.seed = 11;
            (name, run_prepared(&prepared, &plan).unwrap())
        })
        .collect();
    let alpha_sweep = ["1.0", "1.05", "1.1", "1.25", "1.5", "2.0"]
        .iter()
        .map(|a| {
            let mut plan = ExperimentPlan::new(alpha(a), vec![Algorithm::ChPot]);
            plan.num_queries = 1_000;
            plan.seed = 12;
            (a.to_string(), mean_pushes(&run_prepared(&prepared, &plan).unwrap(), "chpot"))
        })
        .collect();
    let mut plan = ExperimentPlan::new(alpha("1"), vec![Algorithm::Dijkstra, Algorithm::ChPot]);
    plan.num_queries = 1_000;
    plan.seed = 13;
    let unmodified = run_prepared(&prepared, &plan).unwrap();
    GridBatch { by_config, alpha_sweep, unmodified }
}

fn criterion_4(batch: &GridBatch) -> Outcome {
    let mut queries = 0;
    let mut differing = 0;
    for (_, records) in &batch.by_config {
        let chpot = records.iter().filter(|r| r.algorithm == "chpot");
        let oracle = records.iter().filter(|r| r.algorithm == "oracle");
        for (a, b) in chpot.zip(oracle) {
            assert_eq!(a.query_id, b.query_id);
            queries += 1;
            if (a.queue_pushes, a.settled_nodes, a.distance) != (b.queue_pushes, b.settled_nodes, b.distance) {
                differing += 1;
            }
        }
    }
    check(
        queries == 4_000 && differing == 0,
        format!("{queries} queries (1000 per optimization setting), {differing} with differing pushes or settles"),
    )
}

fn criterion_5(batch: &GridBatch) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for algo in ["zero", "alt", "chpot"] {
        let means: Vec<f64> = batch.by_config.iter().map(|(_, r)| mean_pushes(r, algo)).collect();
        ok &= means.windows(2).all(|w| w[1] < w[0]);
        parts.push(format!("{algo} {}", means.iter().map(|m| format!("{m:.1}")).collect::<Vec<_>>().join(" > ")));
    }
    check(ok, format!("mean pushes none/bcc/+deg2/+deg3: {}", parts.join("; ")))
}

fn criterion_6(batch: &GridBatch) -> Outcome {
    let records = &batch.by_config.last().unwrap().1;
    let (zero, alt, ch) = (mean_pushes(records, "zero"), mean_pushes(records, "alt"), mean_pushes(records, "chpot"));
    let alt_pushes: Vec<usize> = records.iter().filter(|r| r.algorithm == "alt").map(|r| r.queue_pushes).collect();
    let ch_pushes: Vec<usize> = records.iter().filter(|r| r.algorithm == "chpot").map(|r| r.queue_pushes).collect();
    let within = alt_pushes.iter().zip(&ch_pushes).filter(|(a, c)| c <= a).count();
    let share = within as f64 / ch_pushes.len() as f64;
    check(
        zero >= alt && alt >= ch && share >= 0.99,
        format!("mean pushes zero {zero:.1} >= alt {alt:.1} >= chpot {ch:.1}; chpot <= alt on {:.1}% of queries", 100.0 * share),
    )
}

fn criterion_7(batch: &GridBatch) -> Outcome {
    let ok = batch.alpha_sweep.windows(2).all(|w| w[1].1 >= 0.95 * w[0].1);
    let line = batch.alpha_sweep.iter().map(|(a, m)| format!("{a}: {m:.1}")).collect::<Vec<_>>().join(", ");
    check(ok, format!("mean chpot pushes by alpha: {line}"))
}

fn criterion_8(batch: &GridBatch) -> Outcome {
    let dijkstra = mean_pushes(&batch.unmodified, "dijkstra");
    let ch = mean_pushes(&batch.unmodified, "chpot");
    let ratio = ch / dijkstra;
    check(ratio <= 0.01, format!("alpha 1: chpot {ch:.1} vs dijkstra {dijkstra:.1} mean pushes, ratio {:.3}%", 100.0 * ratio))
}

/// Edge-simple walks from `first` to `last`, minimum turn-aware weight.
fn enumerate_walks(edges: &[(usize, usize, u64)], table: &TurnTable, first: usize, last: usize) -> Option<u64> {
    fn go(
        edges: &[(usize, usize, u64)],
        table: &TurnTable,
        at: usize,
        last: usize,
        used: &mut Vec<bool>,
        acc: u64,
        best: &mut Option<u64>,
    ) {
        if at == last {
            *best = Some(best.map_or(acc, |b| b.min(acc)));
        }
        for next in 0..edges.len() {
            if used[next] || edges[next].0 != edges[at].1 {
                continue;
            }
            if let Some(c) = turn_cost(edges, table, at, next) {
                used[next] = true;
                go(edges, table, next, last, used, acc + c + edges[next].2, best);
                used[next] = false;
            }
        }
    }
    let mut used = vec![false; edges.len()];
    used[first] = true;
    let mut best = None;
    go(edges, table, first, last, &mut used, edges[first].2, &mut best);
    best
}

fn criterion_9() -> Outcome {
    let mut pairs = 0;
    let mut mismatches = 0;
    for i in 0..2_000 {
        let mut rng = ChaCha8Rng::seed_from_u64(9_000 + i);
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(0..=8);
        let input: Vec<InputEdge> = (0..m)
            .map(|_| InputEdge::new(rng.gen_range(0..n) as NodeId, rng.gen_range(0..n) as NodeId, rng.gen_range(0..50)))
            .collect();
        let inst = instance_for(&mut rng, Graph::build(n, &input).unwrap());
        let expanded = expand_turns(&inst.graph, &inst.turns).unwrap();
        let ch = ContractionHierarchy::build(&inst.graph);
        let mut astar = AStar::new(expanded.graph());
        let mut pot = MappedPotential::new(ChPotential::new(&ch), expanded.mapping());
        let weights = expanded.weights(inst.graph.weights());
        for first in 0..inst.edges.len() {
            for last in 0..inst.edges.len() {
                pairs += 1;
                let r = astar
                    .query(&weights, &mut pot, first as NodeId, last as NodeId, 0, QueryOptions::all())
                    .map_err(|e| e.to_string())?;
                let got = to_option(r.distance).map(|d| d + inst.edges[first].2);
                if got != enumerate_walks(&inst.edges, &inst.turn_table, first, last) {
                    mismatches += 1;
                }
            }
        }
    }
    check(mismatches == 0, format!("{pairs} edge pairs on 2000 graphs with at most 8 edges, {mismatches} mismatches"))
}

fn criterion_10() -> Outcome {
    let mut queries = 0;
    let mut mismatches = 0;
    let mut resim = 0;
    for i in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(10_000 + i);
        let n = rng.gen_range(2..=200);
        let inst = random_instance(&mut rng, n);
        let td = TdWeights::new(&inst.ttf);
        let lower = inst.graph.with_weights(td.lower_bounds());
        let ch = ContractionHierarchy::build(&lower);
        let core = CoreDecomposition::compute(&inst.graph);
        let oracle = OracleGraph::plain(&inst.edges, n);
        let oracle_weights = OracleWeights::Td(&inst.ttf_points);
        let mut astar = AStar::new(&inst.graph);
        let mut pot = ChPotential::new(&ch);
        for _ in 0..10 {
            let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let departure = rng.gen_range(0..PERIOD);
            queries += 1;
            let r = astar
                .query_with_core(&core, &td, &mut pot, s as NodeId, t as NodeId, departure, QueryOptions::all())
                .map_err(|e| e.to_string())?;
            let expected = oracle.distance(&oracle_weights, s, t, departure as u64);
            if to_option(r.distance) != expected {
                mismatches += 1;
                continue;
            }
            if expected.is_some() {
                // alpha_k = alpha_{k-1} + w(e_k, alpha_{k-1})
                let mut alpha = departure as u64;
                for &e in &r.path {
                    alpha += ttf_eval(&inst.ttf_points[e as usize], alpha);
                }
                if alpha - departure as u64 != r.distance as u64 {
                    resim += 1;
                }
            }
        }
    }
    check(
        mismatches == 0 && resim == 0,
        format!("{queries} queries on 100 instances: {mismatches} arrival mismatches, {resim} paths failing re-simulation"),
    )
}

fn criterion_11() -> Outcome {
    let worked = [
        (blend(100_000, |_| 60_000, 3_600_000, 3_600_000), 100_000),
        (blend(100_000, |_| 60_000, 3_600_000, 3_620_000), 80_000),
        (blend(100_000, |_| 60_000, 3_600_000, 3_700_000), 60_000),
        (blend(50_000, |_| 90_000, 3_600_000, 3_620_000), 70_000),
    ];
    let worked_ok = worked.iter().all(|(got, want)| got == want);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut samples = 0;
    let mut violations = 0;
    let mut disagreements = 0;
    for _ in 0..100 {
        let base = rng.gen_range(1_000..100_000);
        let points = random_ttf(&mut rng, base);
        let td = TdWeights::new(&[TravelTimeFunction::new(points.clone()).unwrap()]);
        let live_value = rng.gen_range(base..base + 200_000);
        let live = [Some(live_value)];
        let tau_soon = rng.gen_range(0..2 * PERIOD);
        let b = LiveBlend::new(&td, &live, tau_soon);
        for _ in 0..100 {
            let tau = rng.gen_range(0..3 * PERIOD);
            let delta = if rng.gen_bool(0.5) { rng.gen_range(0..1_000) } else { rng.gen_range(0..PERIOD) };
            samples += 1;
            let (f0, f1) = (b.eval(0, tau) as u64, b.eval(0, tau + delta) as u64);
            if tau as u64 + f0 > (tau + delta) as u64 + f1 {
                violations += 1;
            }
            let reference = blend_eval(live_value as u64, |t| ttf_eval(&points, t), tau_soon as u64, tau as u64);
            if reference != f0 {
                disagreements += 1;
            }
        }
    }
    check(
        worked_ok && violations == 0 && disagreements == 0,
        format!(
            "worked values {}; {samples} FIFO samples, {violations} violations, {disagreements} disagreements with the reference formula",
            if worked_ok { "match" } else { "differ" }
        ),
    )
}

fn criterion_12() -> Outcome {
    let mut pairs = 0;
    let mut wrong = 0;
    let mut shortcuts = 0;
    let mut bad_shortcuts = 0;
    for i in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(12_000 + i);
        let n = rng.gen_range(1..=150);
        let graph = random_graph(&mut rng, n);
        let edges = edge_list(&graph);
        let ch = ContractionHierarchy::build(&graph);
        let oracle = OracleGraph::plain(&edges, n);
        let weights = OracleWeights::Static(edges.iter().map(|e| e.2).collect());
        let mut q = ChQuery::new(n);
        for s in 0..n {
            let reference = oracle.all_from(&weights, s, 0);
            for t in 0..n {
                pairs += 1;
                if to_option(q.distance(&ch, s as NodeId, t as NodeId)) != reference[t] {
                    wrong += 1;
                }
            }
        }
        for (id, arc) in ch.arcs().iter().enumerate() {
            if !matches!(arc.origin, ArcOrigin::Shortcut(..)) {
                continue;
            }
            shortcuts += 1;
            let path = ch.unpack_arc(id as u32);
            let mut node = arc.tail as usize;
            let mut sum = 0;
            let mut connected = true;
            for &e in &path {
                connected &= edges[e as usize].0 == node;
                node = edges[e as usize].1;
                sum += edges[e as usize].2;
            }
            if !connected || node != arc.head as usize || sum != arc.weight as u64 {
                bad_shortcuts += 1;
            }
        }
    }
    check(
        wrong == 0 && bad_shortcuts == 0,
        format!("{pairs} pairs on 100 graphs, {wrong} wrong; {shortcuts} shortcuts, {bad_shortcuts} unpack to a different weight"),
    )
}

fn main() {
    // libtest flags such as --nocapture may be passed through; a `--list`
    // request from tooling gets an empty answer
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut failures = 0;
    let mut report = |id: u32, name: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {id:>2} {status} {name} ({secs:.1} s): {detail}");
    };

    let start = Instant::now();
    let exact = exactness_suite(500);
    let mut shown = exact.mismatches.iter().take(5).cloned().collect::<Vec<_>>().join("; ");
    if !shown.is_empty() {
        shown = format!(", first: {shown}");
    }
    report(
        1,
        "exactness suite",
        start,
        check(
            exact.mismatches.is_empty() && exact.graphs == 500,
            format!(
                "{} queries on {} graphs x 8 scenarios x 6 optimization settings, {} mismatches{shown}",
                exact.queries,
                exact.graphs,
                exact.mismatches.len()
            ),
        ),
    );
    let t = Instant::now();
    report(2, "heuristic exactness", t, criterion_2());
    report(
        3,
        "feasibility sweep",
        start,
        check(
            exact.relaxed_violations == 0 && exact.edge_violations == 0,
            format!(
                "{} violations on relaxed edges; {} of {} static edge checks violated",
                exact.relaxed_violations, exact.edge_violations, exact.edge_checks
            ),
        ),
    );
    let t = Instant::now();
    let batch = grid_batch();
    report(4, "oracle equality", t, criterion_4(&batch));
    report(5, "optimization ordering", t, criterion_5(&batch));
    report(6, "heuristic ordering", t, criterion_6(&batch));
    report(7, "alpha degradation trend", t, criterion_7(&batch));
    report(8, "convergence at alpha 1", t, criterion_8(&batch));
    let t = Instant::now();
    report(9, "turn expansion", t, criterion_9());
    let t = Instant::now();
    report(10, "time-dependent correctness", t, criterion_10());
    let t = Instant::now();
    report(11, "blend formula", t, criterion_11());
    let t = Instant::now();
    report(12, "hierarchy structure", t, criterion_12());

    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 12 acceptance criteria passed");
}
