//! Seeded synthetic road networks.
//!
//! `Grid` imitates a road network: junctions on a jittered lattice joined by
//! a random spanning tree plus most of the remaining lattice roads, roads
//! subdivided into chains of degree-two nodes, and small dead-end trees
//! hanging off. Every few rows and columns are highways, and a few roads are
//! tunnels. `RandomGeometric` links uniformly scattered points to their
//! nearest neighbors. Both produce bidirected, connected graphs with travel
//! times derived from segment length and speed.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::applications::{TravelTimeFunction, PERIOD};
use crate::graph::{EdgeTags, Graph, InputEdge, NodeId, Weight};
use crate::io::InstanceBundle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    Grid,
    RandomGeometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorParams {
    pub kind: InstanceKind,
    pub num_nodes: usize,
    pub seed: u64,
    /// Attach travel time functions to about 40% of the edges.
    pub td: bool,
    /// Attach live weights to about 10% of the edges.
    pub live: bool,
}

/// Moment the live snapshot is taken (17:00).
pub const LIVE_SNAPSHOT: u32 = 61_200_000;
const SAMPLE_INTERVAL: u32 = 1_800_000;
const JUNCTION_SPACING: f64 = 400.0;

struct Builder {
    pos: Vec<(f64, f64)>,
    edges: Vec<InputEdge>,
}

impl Builder {
    fn node(&mut self, p: (f64, f64)) -> NodeId {
        self.pos.push(p);
        (self.pos.len() - 1) as NodeId
    }

    /// Both directions of a segment driven at `speed` km/h.
    fn segment(&mut self, a: NodeId, b: NodeId, speed: f64, tags: EdgeTags) {
        let (pa, pb) = (self.pos[a as usize], self.pos[b as usize]);
        let length = ((pa.0 - pb.0).powi(2) + (pa.1 - pb.1).powi(2)).sqrt().max(1.0);
        let w = ((length * 3600.0 / speed).round() as Weight).max(1);
        self.edges.push(InputEdge::tagged(a, b, w, tags));
        self.edges.push(InputEdge::tagged(b, a, w, tags));
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

pub fn generate_synthetic_instance(params: GeneratorParams) -> InstanceBundle {
    assert!(params.num_nodes >= 1, "need at least one node");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut b = Builder { pos: Vec::with_capacity(params.num_nodes), edges: Vec::new() };
    match params.kind {
        InstanceKind::Grid => grid(&mut b, params.num_nodes, &mut rng),
        InstanceKind::RandomGeometric => random_geometric(&mut b, params.num_nodes, &mut rng),
    }
    debug_assert_eq!(b.pos.len(), params.num_nodes);
    let graph = Graph::build(b.pos.len(), &b.edges).expect("generated edges are valid");
    let coordinates = b.pos.iter().map(|&(x, y)| (49.0 + y / 111_000.0, 8.4 + x / 73_000.0)).collect();
    let mut bundle = InstanceBundle::new(graph);
    bundle.coordinates = Some(coordinates);
    if params.td || params.live {
        let ttf = travel_time_functions(&bundle.graph, &mut rng, params.td);
        if params.live {
            bundle.live = Some(live_weights(&bundle.graph, &ttf, &mut rng));
        }
        if params.td {
            bundle.ttf = Some(ttf);
        }
    }
    bundle
}

fn grid(b: &mut Builder, n: usize, rng: &mut ChaCha8Rng) {
    let junctions = (n / 4).max(1);
    let rows = ((junctions as f64).sqrt() as usize).max(1);
    let cols = (junctions / rows).max(1);
    for i in 0..rows {
        for j in 0..cols {
            let jitter = (rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0));
            b.node((j as f64 * JUNCTION_SPACING + jitter.0, i as f64 * JUNCTION_SPACING + jitter.1));
        }
    }
    let id = |i: usize, j: usize| (i * cols + j) as NodeId;
    // (a, b, highway)
    let mut lattice = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                lattice.push((id(i, j), id(i, j + 1), i % 6 == 0));
            }
            if i + 1 < rows {
                lattice.push((id(i, j), id(i + 1, j), j % 6 == 0));
            }
        }
    }
    lattice.shuffle(rng);
    let mut uf = UnionFind((0..rows * cols).collect());
    let roads: Vec<(NodeId, NodeId, bool)> =
        lattice.into_iter().filter(|&(a, c, _)| uf.union(a as usize, c as usize) || rng.gen_bool(0.8)).collect();

    let rest = n - rows * cols;
    let pendants = if roads.is_empty() { rest } else { rest / 5 };
    let mut subdivisions = vec![0usize; roads.len()];
    for _ in 0..rest - pendants {
        subdivisions[rng.gen_range(0..roads.len())] += 1;
    }
    for (&(from, to, highway), &k) in roads.iter().zip(&subdivisions) {
        let tags = EdgeTags { highway, tunnel: rng.gen_bool(0.05) };
        let speed = if highway { 100.0 } else { 50.0 };
        let (pa, pc) = (b.pos[from as usize], b.pos[to as usize]);
        let mut prev = from;
        for s in 1..=k {
            let f = s as f64 / (k + 1) as f64;
            let wiggle = rng.gen_range(-20.0..20.0);
            let x = b.node((pa.0 + f * (pc.0 - pa.0) + wiggle, pa.1 + f * (pc.1 - pa.1) - wiggle));
            b.segment(prev, x, speed, tags);
            prev = x;
        }
        b.segment(prev, to, speed, tags);
    }
    for _ in 0..pendants {
        let parent = rng.gen_range(0..b.pos.len()) as NodeId;
        let p = b.pos[parent as usize];
        let angle = rng.gen_range(0.0..2.0 * PI);
        let dist = rng.gen_range(50.0..250.0);
        let x = b.node((p.0 + dist * angle.cos(), p.1 + dist * angle.sin()));
        b.segment(parent, x, 30.0, EdgeTags::NONE);
    }
}

fn random_geometric(b: &mut Builder, n: usize, rng: &mut ChaCha8Rng) {
    const K: usize = 3;
    let side = (n as f64).sqrt() * 300.0;
    for _ in 0..n {
        b.node((rng.gen_range(0.0..side), rng.gen_range(0.0..side)));
    }
    let cells = ((n as f64 / 2.0).sqrt() as usize).max(1);
    let cell_of = |p: (f64, f64)| {
        let c = |v: f64| ((v / side * cells as f64) as usize).min(cells - 1);
        (c(p.0), c(p.1))
    };
    let mut buckets = vec![Vec::new(); cells * cells];
    for (x, &p) in b.pos.iter().enumerate() {
        let (cx, cy) = cell_of(p);
        buckets[cy * cells + cx].push(x as NodeId);
    }
    let dist2 = |a: (f64, f64), c: (f64, f64)| (a.0 - c.0).powi(2) + (a.1 - c.1).powi(2);
    let mut pairs = std::collections::BTreeSet::new();
    for x in 0..n {
        let p = b.pos[x];
        let (cx, cy) = cell_of(p);
        let mut radius = 1;
        loop {
            let mut found: Vec<(f64, NodeId)> = Vec::new();
            for gy in cy.saturating_sub(radius)..=(cy + radius).min(cells - 1) {
                for gx in cx.saturating_sub(radius)..=(cx + radius).min(cells - 1) {
                    for &y in &buckets[gy * cells + gx] {
                        if y as usize != x {
                            found.push((dist2(p, b.pos[y as usize]), y));
                        }
                    }
                }
            }
            if found.len() >= K || radius >= cells {
                found.sort_by(|a, c| a.0.total_cmp(&c.0).then(a.1.cmp(&c.1)));
                for &(_, y) in found.iter().take(K) {
                    pairs.insert(((x as NodeId).min(y), (x as NodeId).max(y)));
                }
                break;
            }
            radius += 1;
        }
    }
    let mut uf = UnionFind((0..n).collect());
    for &(a, c) in &pairs {
        uf.union(a as usize, c as usize);
    }
    // join leftover components to the nearest node of node 0's component
    for x in 1..n {
        if uf.find(x) == x {
            let p = b.pos[x];
            let nearest = (0..n)
                .filter(|&y| uf.find(y) == 0)
                .min_by(|&a, &c| dist2(p, b.pos[a]).total_cmp(&dist2(p, b.pos[c])))
                .unwrap();
            pairs.insert(((x as NodeId).min(nearest as NodeId), (x as NodeId).max(nearest as NodeId)));
            uf.union(x, nearest);
        }
    }
    for (a, c) in pairs {
        let tags = EdgeTags { highway: rng.gen_bool(0.1), tunnel: rng.gen_bool(0.03) };
        let speed = if tags.highway { 100.0 } else { 50.0 };
        b.segment(a, c, speed, tags);
    }
}

/// Rush-hour bumps sampled every half hour on about 40% of the edges, never
/// below the freeflow weight. Other edges get constant functions.
fn travel_time_functions(graph: &Graph, rng: &mut ChaCha8Rng, td: bool) -> Vec<TravelTimeFunction> {
    graph
        .weights()
        .iter()
        .map(|&ff| {
            if !td || !rng.gen_bool(0.4) {
                return TravelTimeFunction::constant(ff);
            }
            let amplitude = rng.gen_range(0.2..1.0f64).min(1_000_000.0 / ff as f64);
            let peak = rng.gen_range(0.0..1.0f64);
            let width = rng.gen_range(0.1..0.3f64);
            let points = (0..PERIOD / SAMPLE_INTERVAL)
                .map(|i| {
                    let t = i * SAMPLE_INTERVAL;
                    let phase = (t as f64 / PERIOD as f64 - peak + 1.5).rem_euclid(1.0) - 0.5;
                    let bump = if phase.abs() < width { (PI * phase / width / 2.0).cos().powi(2) } else { 0.0 };
                    (t, ff + (ff as f64 * amplitude * bump).round() as Weight)
                })
                .collect();
            TravelTimeFunction::new(points).unwrap_or_else(|_| TravelTimeFunction::constant(ff))
        })
        .collect()
}

/// Predicted value at [`LIVE_SNAPSHOT`] plus up to 30% noise on about 10%
/// of the edges.
fn live_weights(graph: &Graph, ttf: &[TravelTimeFunction], rng: &mut ChaCha8Rng) -> Vec<Option<Weight>> {
    (0..graph.num_edges())
        .map(|e| {
            if !rng.gen_bool(0.1) {
                return None;
            }
            let base = ttf[e].eval(LIVE_SNAPSHOT).max(graph.weights()[e]);
            Some((base as f64 * rng.gen_range(1.0..1.3)).round() as Weight)
        })
        .collect()
}
