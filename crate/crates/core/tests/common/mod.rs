//! Reference implementations and random instances shared by the
//! integration tests. Nothing here calls into the library's search code;
//! the oracles work on plain edge lists.

#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use chpot::applications::{TravelTimeFunction, TurnCost, TurnModel, PERIOD};
use chpot::{EdgeTags, Graph, InputEdge, NodeId, Weight, INFINITY};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Plain edge list in graph edge-id order.
pub fn edge_list(graph: &Graph) -> Vec<(usize, usize, u64)> {
    graph.edge_list().iter().map(|e| (e.tail as usize, e.head as usize, e.weight as u64)).collect()
}

/// Bellman-Ford from `source`; `None` for unreachable nodes. Edges at or
/// above INFINITY are closed.
pub fn bellman_ford(n: usize, edges: &[(usize, usize, u64)], source: usize) -> Vec<Option<u64>> {
    let mut dist = vec![None; n];
    dist[source] = Some(0);
    for _ in 0..n {
        let mut changed = false;
        for &(u, v, w) in edges {
            if w >= INFINITY as u64 {
                continue;
            }
            if let Some(du) = dist[u] {
                if dist[v].map_or(true, |dv| du + w < dv) {
                    dist[v] = Some(du + w);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

pub fn reversed(edges: &[(usize, usize, u64)]) -> Vec<(usize, usize, u64)> {
    edges.iter().map(|&(u, v, w)| (v, u, w)).collect()
}

/// Periodic piecewise-linear evaluation by a linear scan over the pieces,
/// rounding down.
pub fn ttf_eval(points: &[(u32, u32)], at: u64) -> u64 {
    if points.len() == 1 {
        return points[0].1 as u64;
    }
    let period = PERIOD as i128;
    let t = (at as i128) % period;
    let mut pieces: Vec<(i128, i128, i128, i128)> = Vec::new();
    let last = points[points.len() - 1];
    // wrap piece seen from before the first breakpoint
    pieces.push((last.0 as i128 - period, last.1 as i128, points[0].0 as i128, points[0].1 as i128));
    for w in points.windows(2) {
        pieces.push((w[0].0 as i128, w[0].1 as i128, w[1].0 as i128, w[1].1 as i128));
    }
    pieces.push((last.0 as i128, last.1 as i128, points[0].0 as i128 + period, points[0].1 as i128));
    for (t0, v0, t1, v1) in pieces {
        if t0 <= t && t < t1 {
            let num = (v1 - v0) * (t - t0);
            let den = t1 - t0;
            let q = if num >= 0 { num / den } else { -((-num + den - 1) / den) };
            return (v0 + q) as u64;
        }
    }
    unreachable!("pieces cover the period")
}

/// The live/predicted blend, written out case by case.
pub fn blend_eval(live: u64, predicted: impl Fn(u64) -> u64, tau_soon: u64, tau: u64) -> u64 {
    if tau <= tau_soon {
        live
    } else if predicted(tau_soon) < live {
        let faded = live.saturating_sub(tau - tau_soon);
        faded.max(predicted(tau))
    } else {
        let faded = live + (tau - tau_soon);
        faded.min(predicted(tau))
    }
}

/// Query weights as the oracles see them. `None` means closed.
pub enum OracleWeights<'a> {
    Static(Vec<u64>),
    Td(&'a [Vec<(u32, u32)>]),
    Blend { ttf: &'a [Vec<(u32, u32)>], live: &'a [Option<u64>], tau_soon: u64 },
}

impl OracleWeights<'_> {
    pub fn eval(&self, edge: usize, at: u64) -> Option<u64> {
        match self {
            OracleWeights::Static(w) => (w[edge] < INFINITY as u64).then_some(w[edge]),
            OracleWeights::Td(ttf) => Some(ttf_eval(&ttf[edge], at)),
            OracleWeights::Blend { ttf, live, tau_soon } => Some(match live[edge] {
                Some(l) => blend_eval(l, |t| ttf_eval(&ttf[edge], t), *tau_soon, at),
                None => ttf_eval(&ttf[edge], at),
            }),
        }
    }
}

/// Label-setting search over an explicit transition list, with lazy
/// deletion from a binary heap. `cost(i, at)` is the duration of
/// transition `i` entered at `at`; FIFO costs make the result exact.
pub fn td_dijkstra(
    num_states: usize,
    transitions: &[(usize, usize)],
    cost: impl Fn(usize, u64) -> Option<u64>,
    source: usize,
    departure: u64,
) -> Vec<Option<u64>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); num_states];
    for (i, &(from, _)) in transitions.iter().enumerate() {
        out[from].push(i);
    }
    let mut arrival: Vec<Option<u64>> = vec![None; num_states];
    let mut done = vec![false; num_states];
    let mut heap = BinaryHeap::new();
    arrival[source] = Some(departure);
    heap.push(Reverse((departure, source)));
    while let Some(Reverse((at, x))) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        for &i in &out[x] {
            let y = transitions[i].1;
            if let Some(c) = cost(i, at) {
                let next = at + c;
                if arrival[y].map_or(true, |a| next < a) {
                    arrival[y] = Some(next);
                    heap.push(Reverse((next, y)));
                }
            }
        }
    }
    arrival
}

/// Turn costs kept independently of the library's model: `None` forbids.
pub type TurnTable = HashMap<(usize, usize), Option<u64>>;

/// Cost of turning from `e1` into `e2`, or `None` if forbidden. Unlisted
/// U-turns are forbidden, other unlisted turns free.
pub fn turn_cost(edges: &[(usize, usize, u64)], table: &TurnTable, e1: usize, e2: usize) -> Option<u64> {
    match table.get(&(e1, e2)) {
        Some(&c) => c,
        None if edges[e2].1 == edges[e1].0 => None,
        None => Some(0),
    }
}

/// State graph the composed oracle searches: nodes, or edges when turn
/// costs apply. Each transition enters one input edge after a fixed delay.
pub struct OracleGraph {
    num_states: usize,
    transitions: Vec<(usize, usize)>,
    /// (entered input edge, turn delay)
    enters: Vec<(usize, u64)>,
}

impl OracleGraph {
    pub fn plain(edges: &[(usize, usize, u64)], n: usize) -> Self {
        OracleGraph {
            num_states: n,
            transitions: edges.iter().map(|&(u, v, _)| (u, v)).collect(),
            enters: (0..edges.len()).map(|e| (e, 0)).collect(),
        }
    }

    pub fn with_turns(edges: &[(usize, usize, u64)], n: usize, table: &TurnTable) -> Self {
        let mut leaving: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, &(u, _, _)) in edges.iter().enumerate() {
            leaving[u].push(e);
        }
        let mut transitions = Vec::new();
        let mut enters = Vec::new();
        for (e1, &(_, v, _)) in edges.iter().enumerate() {
            for &e2 in &leaving[v] {
                if let Some(c) = turn_cost(edges, table, e1, e2) {
                    transitions.push((e1, e2));
                    enters.push((e2, c));
                }
            }
        }
        OracleGraph { num_states: edges.len(), transitions, enters }
    }

    /// Arrival minus departure, `None` if unreachable.
    pub fn distance(&self, weights: &OracleWeights, source: usize, target: usize, departure: u64) -> Option<u64> {
        let cost = |i: usize, at: u64| {
            let (e, c) = self.enters[i];
            weights.eval(e, at + c).map(|w| c + w)
        };
        td_dijkstra(self.num_states, &self.transitions, cost, source, departure)[target].map(|a| a - departure)
    }

    pub fn all_from(&self, weights: &OracleWeights, source: usize, departure: u64) -> Vec<Option<u64>> {
        let cost = |i: usize, at: u64| {
            let (e, c) = self.enters[i];
            weights.eval(e, at + c).map(|w| c + w)
        };
        td_dijkstra(self.num_states, &self.transitions, cost, source, departure)
            .into_iter()
            .map(|a| a.map(|a| a - departure))
            .collect()
    }
}

/// Random graph with a mix of two-way and one-way roads, pendant chains,
/// parallel edges and the occasional loop or zero weight.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    let weight = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.03) { 0 } else { rng.gen_range(1..1000) };
    for v in 1..n {
        // tree edges, mostly towards recent nodes so long chains appear
        let u = if rng.gen_bool(0.5) { v - 1 } else { rng.gen_range(0..v) };
        let w = weight(rng);
        let tags = EdgeTags { tunnel: rng.gen_bool(0.1), highway: rng.gen_bool(0.15) };
        edges.push(InputEdge::tagged(u as NodeId, v as NodeId, w, tags));
        if rng.gen_bool(0.85) {
            let back = if rng.gen_bool(0.8) { w } else { weight(rng) };
            edges.push(InputEdge::tagged(v as NodeId, u as NodeId, back, tags));
        }
    }
    let extra = rng.gen_range(0..=n / 3 + 1);
    for _ in 0..extra {
        let u = rng.gen_range(0..n) as NodeId;
        let v = rng.gen_range(0..n) as NodeId;
        let w = weight(rng);
        let tags = EdgeTags { tunnel: rng.gen_bool(0.1), highway: rng.gen_bool(0.15) };
        edges.push(InputEdge::tagged(u, v, w, tags));
        if rng.gen_bool(0.6) {
            edges.push(InputEdge::tagged(v, u, w, tags));
        }
    }
    Graph::build(n, &edges).unwrap()
}

/// FIFO function anchored at `base`: breakpoints at least a minute apart
/// with values in `[base, base + 60s]`, so no piece falls faster than time.
pub fn random_ttf(rng: &mut ChaCha8Rng, base: u32) -> Vec<(u32, u32)> {
    if rng.gen_bool(0.4) {
        return vec![(0, base)];
    }
    let k = rng.gen_range(2..=6);
    let mut slots: Vec<u32> = (0..k).map(|_| rng.gen_range(0..PERIOD / 60_000)).collect();
    slots.sort_unstable();
    slots.dedup();
    slots.iter().map(|&s| (s * 60_000, base + rng.gen_range(0..=60_000))).collect()
}

/// A graph with travel time functions, live values and turn costs on
/// every edge pair that meets at a node, drawn at random.
pub struct Instance {
    pub graph: Graph,
    pub edges: Vec<(usize, usize, u64)>,
    pub ttf_points: Vec<Vec<(u32, u32)>>,
    pub ttf: Vec<TravelTimeFunction>,
    pub live_raw: Vec<Option<u64>>,
    pub live: Vec<Option<Weight>>,
    pub turn_table: TurnTable,
    pub turns: TurnModel,
}

pub fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let graph = random_graph(rng, n);
    instance_for(rng, graph)
}

pub fn instance_for(rng: &mut ChaCha8Rng, graph: Graph) -> Instance {
    let edges = edge_list(&graph);
    let ttf_points: Vec<Vec<(u32, u32)>> = edges.iter().map(|&(_, _, w)| random_ttf(rng, w as u32)).collect();
    let ttf = ttf_points.iter().map(|p| TravelTimeFunction::new(p.clone()).unwrap()).collect();
    let live_raw: Vec<Option<u64>> =
        edges.iter().map(|&(_, _, w)| rng.gen_bool(0.3).then(|| w + rng.gen_range(0..=5_000))).collect();
    let live = live_raw.iter().map(|l| l.map(|w| w as Weight)).collect();
    let mut turn_table = TurnTable::new();
    let mut turns = TurnModel::new();
    for e1 in 0..edges.len() {
        for e2 in 0..edges.len() {
            if edges[e1].1 != edges[e2].0 || !rng.gen_bool(0.3) {
                continue;
            }
            let cost = if rng.gen_bool(0.25) { None } else { Some(rng.gen_range(0..500u64)) };
            turn_table.insert((e1, e2), cost);
            let c = cost.map_or(TurnCost::Forbidden, |c| TurnCost::Cost(c as Weight));
            turns.insert(e1 as u32, e2 as u32, c);
        }
    }
    Instance { graph, edges, ttf_points, ttf, live_raw, live, turn_table, turns }
}

pub fn to_option(d: Weight) -> Option<u64> {
    (d < INFINITY).then_some(d as u64)
}
