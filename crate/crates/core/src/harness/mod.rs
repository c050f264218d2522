//! Benchmark runs: random query workloads over one scenario and a set of
//! algorithms, with per-query records, summaries and box-plot statistics.

mod generate;
mod stats;

use std::cell::OnceCell;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::applications::{
    expand_turns, lower_bound_weights, scenario_avoid, scenario_live, scenario_scaled, ApplicationError,
    LiveBlend, Scenario, ScenarioTables, TdWeights, TurnExpandedGraph, TurnModel, DEFAULT_SOON, PERIOD,
};
use crate::astar::{AStar, CoreDecomposition, QueryError, QueryOptions, QueryResult, QueryWeights};
use crate::baselines::{AltPotential, LandmarkSet, OraclePotential, DEFAULT_NUM_LANDMARKS};
use crate::ch::{ChQuery, ContractionHierarchy};
use crate::graph::{EdgeId, Graph, NodeId, Timestamp, Weight, INFINITY};
use crate::io::InstanceBundle;
use crate::potentials::{ChPotential, MappedPotential, Potential, ZeroPotential};

pub use crate::io::QueryRecord;
pub use generate::{generate_synthetic_instance, GeneratorParams, InstanceKind, LIVE_SNAPSHOT};
pub use stats::{box_stats, box_stats_by_group, summarize, write_box_csv, write_summary_csv, BoxStats, SummaryRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Zero potential without any of the low-degree optimizations: the
    /// reference every speedup is measured against.
    Dijkstra,
    Zero,
    Alt,
    ChPot,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::Dijkstra, Algorithm::Zero, Algorithm::Alt, Algorithm::ChPot, Algorithm::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Dijkstra => "dijkstra",
            Algorithm::Zero => "zero",
            Algorithm::Alt => "alt",
            Algorithm::ChPot => "chpot",
            Algorithm::Oracle => "oracle",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Optimizations {
    pub bcc: bool,
    pub deg2: bool,
    pub deg3: bool,
}

impl Optimizations {
    pub const NONE: Optimizations = Optimizations { bcc: false, deg2: false, deg3: false };
    pub const ALL: Optimizations = Optimizations { bcc: true, deg2: true, deg3: true };
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error(transparent)]
    Scenario(#[from] ApplicationError),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("query {query_id} ({algorithm}): distance {got:?}, reference says {expected:?}")]
    Verification { query_id: usize, algorithm: &'static str, expected: Option<Weight>, got: Option<Weight> },
}

impl HarnessError {
    /// True for errors caused by query weights below their lower bounds.
    pub fn is_contract_violation(&self) -> bool {
        matches!(self, HarnessError::Scenario(ApplicationError::ContractViolation { .. }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentPlan {
    pub scenario: Scenario,
    /// Route between edges of the turn-expanded graph.
    pub turns: bool,
    pub algorithms: Vec<Algorithm>,
    pub optimizations: Optimizations,
    pub num_queries: usize,
    pub seed: u64,
    /// Compare every distance against plain Dijkstra.
    pub verify: bool,
    /// `tau_soon` minus departure for the live-and-predicted scenario.
    pub soon: Timestamp,
    pub num_landmarks: usize,
}

impl ExperimentPlan {
    pub fn new(scenario: Scenario, algorithms: Vec<Algorithm>) -> Self {
        ExperimentPlan {
            scenario,
            turns: false,
            algorithms,
            optimizations: Optimizations::ALL,
            num_queries: 10_000,
            seed: 0,
            verify: false,
            soon: DEFAULT_SOON,
            num_landmarks: DEFAULT_NUM_LANDMARKS,
        }
    }

    /// Optimizations actually used: rejects `deg3` without `deg2` and drops
    /// `bcc` under turns, where the expanded graph's core is everything.
    pub fn effective_optimizations(&self) -> Result<Optimizations, HarnessError> {
        let o = self.optimizations;
        if o.deg3 && !o.deg2 {
            return Err(HarnessError::InvalidPlan("the degree-three optimization requires the degree-two one".into()));
        }
        if self.algorithms.is_empty() {
            return Err(HarnessError::InvalidPlan("no algorithm selected".into()));
        }
        Ok(Optimizations { bcc: o.bcc && !self.turns, ..o })
    }

    pub fn scenario_label(&self) -> String {
        if self.turns {
            format!("{}+turns", self.scenario)
        } else {
            self.scenario.to_string()
        }
    }
}

/// Preprocessing shared by every experiment with the same lower bounds.
pub struct Prepared<'b> {
    bundle: &'b InstanceBundle,
    lower: Graph,
    ch: ContractionHierarchy,
    td: Option<TdWeights>,
    core: CoreDecomposition,
    landmarks: OnceCell<(usize, u64, LandmarkSet)>,
}

impl<'b> Prepared<'b> {
    /// Builds the hierarchy for `scenario`'s lower bounds, or adopts `ch`.
    pub fn new(
        bundle: &'b InstanceBundle,
        scenario: Scenario,
        ch: Option<ContractionHierarchy>,
    ) -> Result<Self, HarnessError> {
        let td = bundle.ttf.as_deref().map(TdWeights::new);
        let tables = ScenarioTables { predicted: td.as_ref(), live: bundle.live.as_deref() };
        let lower = bundle.graph.with_weights(lower_bound_weights(&bundle.graph, scenario, tables)?);
        let ch = match ch {
            Some(ch) if ch.fits(&lower) => ch,
            Some(_) => return Err(HarnessError::InvalidPlan("hierarchy does not match the graph".into())),
            None => ContractionHierarchy::build(&lower),
        };
        let core = CoreDecomposition::compute(&bundle.graph);
        Ok(Prepared { bundle, lower, ch, td, core, landmarks: OnceCell::new() })
    }

    pub fn hierarchy(&self) -> &ContractionHierarchy {
        &self.ch
    }

    pub fn lower_bound_graph(&self) -> &Graph {
        &self.lower
    }

    /// Avoid landmarks on the lower-bound graph, computed on first use.
    /// Later calls must ask for the same count and seed.
    pub fn landmarks(&self, k: usize, seed: u64) -> Result<&LandmarkSet, HarnessError> {
        let (k0, seed0, set) = self.landmarks.get_or_init(|| (k, seed, LandmarkSet::avoid(&self.lower, k, seed)));
        if (*k0, *seed0) != (k, seed) {
            return Err(HarnessError::InvalidPlan(format!("landmarks were built with k={k0}, seed={seed0}")));
        }
        Ok(set)
    }
}

enum Weights<'a> {
    Static(Vec<Weight>),
    Td(&'a TdWeights),
    Blend(&'a TdWeights, &'a [Option<Weight>]),
}

/// Builds the preprocessing and runs the plan.
pub fn run_experiment(bundle: &InstanceBundle, plan: &ExperimentPlan) -> Result<Vec<QueryRecord>, HarnessError> {
    let prepared = Prepared::new(bundle, plan.scenario, None)?;
    run_prepared(&prepared, plan)
}

/// Runs the plan on existing preprocessing. The plan's scenario must have
/// the lower bounds the preprocessing was built for.
pub fn run_prepared(prepared: &Prepared, plan: &ExperimentPlan) -> Result<Vec<QueryRecord>, HarnessError> {
    let opts = plan.effective_optimizations()?;
    let bundle = prepared.bundle;
    let graph = &bundle.graph;
    let tables = ScenarioTables { predicted: prepared.td.as_ref(), live: bundle.live.as_deref() };
    if lower_bound_weights(graph, plan.scenario, tables)? != prepared.lower.weights() {
        return Err(HarnessError::InvalidPlan(format!("preprocessing was built for other lower bounds than {}", plan.scenario)));
    }
    let missing = |what| HarnessError::Scenario(ApplicationError::MissingTable("td", what));
    let weights = match plan.scenario {
        Scenario::Scaled(alpha) => Weights::Static(scenario_scaled(graph, alpha)),
        Scenario::Avoid(flags) => Weights::Static(scenario_avoid(graph, flags)),
        Scenario::Live => Weights::Static(scenario_live(graph, bundle.live.as_deref().ok_or(missing("live"))?)?),
        Scenario::TimeDependent => Weights::Td(prepared.td.as_ref().ok_or(missing("travel time function"))?),
        Scenario::LiveAndPredicted => Weights::Blend(
            prepared.td.as_ref().ok_or(missing("travel time function"))?,
            bundle.live.as_deref().ok_or(missing("live"))?,
        ),
    };

    let expanded = if plan.turns {
        let model = bundle.turns.clone().unwrap_or_else(TurnModel::new);
        Some(expand_turns(graph, &model)?)
    } else {
        None
    };
    let landmarks = match plan.algorithms.contains(&Algorithm::Alt) {
        true => Some(prepared.landmarks(plan.num_landmarks, plan.seed)?),
        false => None,
    };
    let mut runner = Runner::new(prepared, plan, opts, expanded.as_ref(), landmarks);

    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let endpoints = match &expanded {
        Some(_) => graph.num_edges(),
        None => graph.num_nodes(),
    };
    if endpoints == 0 {
        return Ok(Vec::new());
    }
    let mut records = Vec::with_capacity(plan.num_queries * plan.algorithms.len());
    for query_id in 0..plan.num_queries {
        let source = rng.gen_range(0..endpoints) as NodeId;
        let target = rng.gen_range(0..endpoints) as NodeId;
        let departure = if plan.scenario.is_time_dependent() { rng.gen_range(0..PERIOD) } else { 0 };
        let query = Query { id: query_id, source, target, departure };
        match &weights {
            Weights::Static(w) => runner.run(&query, w.as_slice(), &mut records)?,
            Weights::Td(td) => runner.run(&query, *td, &mut records)?,
            Weights::Blend(td, live) => {
                let blend = LiveBlend::new(td, live, departure.saturating_add(plan.soon));
                runner.run(&query, &blend, &mut records)?
            }
        }
    }
    Ok(records)
}

struct Query {
    id: usize,
    source: NodeId,
    target: NodeId,
    departure: Timestamp,
}

struct Runner<'a> {
    plan: &'a ExperimentPlan,
    opts: Optimizations,
    prepared: &'a Prepared<'a>,
    expanded: Option<&'a TurnExpandedGraph>,
    astar: AStar<'a>,
    reference: AStar<'a>,
    potentials: Vec<(Algorithm, Box<dyn Potential + 'a>)>,
    ch_query: ChQuery,
    label: String,
}

impl<'a> Runner<'a> {
    fn new(
        prepared: &'a Prepared<'a>,
        plan: &'a ExperimentPlan,
        opts: Optimizations,
        expanded: Option<&'a TurnExpandedGraph>,
        landmarks: Option<&'a LandmarkSet>,
    ) -> Self {
        let graph = expanded.map_or(&prepared.bundle.graph, |x| x.graph());
        let potentials = plan
            .algorithms
            .iter()
            .map(|&algo| {
                let base: Box<dyn Potential + 'a> = match algo {
                    Algorithm::Dijkstra | Algorithm::Zero => Box::new(ZeroPotential),
                    Algorithm::Alt => Box::new(AltPotential::new(landmarks.unwrap())),
                    Algorithm::ChPot => Box::new(ChPotential::new(&prepared.ch)),
                    Algorithm::Oracle => Box::new(OraclePotential::new(&prepared.lower)),
                };
                let pot: Box<dyn Potential + 'a> = match expanded {
                    Some(x) => Box::new(MappedPotential::new(base, x.mapping())),
                    None => base,
                };
                (algo, pot)
            })
            .collect();
        Runner {
            plan,
            opts,
            prepared,
            expanded,
            astar: AStar::new(graph),
            reference: AStar::new(graph),
            potentials,
            ch_query: ChQuery::new(prepared.ch.num_nodes()),
            label: plan.scenario_label(),
        }
    }

    fn run<W: QueryWeights + ?Sized>(&mut self, q: &Query, weights: &W, out: &mut Vec<QueryRecord>) -> Result<(), HarnessError> {
        match self.expanded {
            Some(x) => {
                let turn_weights = x.weights(weights);
                self.run_on(q, &turn_weights, out)
            }
            None => self.run_on(q, weights, out),
        }
    }

    fn run_on<W: QueryWeights + ?Sized>(&mut self, q: &Query, weights: &W, out: &mut Vec<QueryRecord>) -> Result<(), HarnessError> {
        let (lb_source, lb_target) = match self.expanded {
            Some(x) => (x.phi(q.source), x.phi(q.target)),
            None => (q.source, q.target),
        };
        let lower = if q.source == q.target { 0 } else { self.ch_query.distance(&self.prepared.ch, lb_source, lb_target) };
        let mut reference: Option<Weight> = None;
        for (algo, potential) in &mut self.potentials {
            let algo = *algo;
            let (options, bcc) = match algo {
                Algorithm::Dijkstra => (QueryOptions::plain(), false),
                _ => (
                    QueryOptions { deg2: self.opts.deg2, deg3: self.opts.deg3, check_feasibility: false },
                    self.opts.bcc,
                ),
            };
            if algo == Algorithm::Oracle {
                // the table fill is not part of the query
                potential.init(q.target);
            }
            let start = Instant::now();
            let result: QueryResult = if bcc {
                self.astar.query_with_core(&self.prepared.core, weights, potential.as_mut(), q.source, q.target, q.departure, options)?
            } else {
                self.astar.query(weights, potential.as_mut(), q.source, q.target, q.departure, options)?
            };
            let elapsed = start.elapsed().as_nanos() as u64;
            let distance = (result.distance < INFINITY).then_some(result.distance);
            if self.plan.verify {
                let expected = match reference {
                    Some(d) => Some(d),
                    None => {
                        let r = self.reference.query(weights, &mut ZeroPotential, q.source, q.target, q.departure, QueryOptions::plain())?;
                        reference = Some(r.distance);
                        Some(r.distance)
                    }
                }
                .filter(|&d| d < INFINITY);
                if expected != distance {
                    return Err(HarnessError::Verification { query_id: q.id, algorithm: algo.name(), expected, got: distance });
                }
            }
            out.push(QueryRecord {
                query_id: q.id,
                source: q.source,
                target: q.target,
                algorithm: algo.name().to_string(),
                scenario: self.label.clone(),
                distance,
                queue_pushes: result.stats.queue_pushes,
                settled_nodes: result.stats.settled,
                running_time_ns: elapsed,
                lower_bound_distance: (lower < INFINITY).then_some(lower),
            });
        }
        Ok(())
    }
}

/// Travel time along `path` when departing at `departure`.
pub fn path_weight<W: QueryWeights + ?Sized>(weights: &W, path: &[EdgeId], departure: Timestamp) -> Weight {
    let mut t = departure;
    for &e in path {
        t = t.saturating_add(weights.travel_time(e, t));
    }
    t - departure
}
