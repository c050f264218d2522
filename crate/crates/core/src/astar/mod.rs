//! A* with pluggable potentials and query weights.
//!
//! Besides textbook A*, the engine can keep low-degree nodes out of the
//! queue. With `deg2` enabled, reaching a node of undirected degree at most
//! two does not push it; instead the chain of degree-two nodes behind it is
//! walked immediately and only the node at the far end (degree three or more)
//! is pushed. With `deg3` additionally enabled, an unqueued degree-three
//! node at the end of such a chain is passed through as well, and the walk
//! forks into its two other chains.
//!
//! Because the target may sit inside a chain and never be queued, the search
//! stops as soon as the target's tentative distance plus its potential is no
//! larger than the smallest queue key.

mod core;

pub use self::core::{CoreDecomposition, CORE_COMPONENT};

use thiserror::Error;

use crate::datastr::{IndexedMinHeap, TimestampedVec};
use crate::graph::{link, EdgeId, Graph, NodeId, Timestamp, Weight, INFINITY, INVALID_NODE};
use crate::potentials::Potential;

/// Edge weights as seen by a query. `at` is the moment the edge is entered;
/// static weights ignore it. Returning [`INFINITY`] closes the edge.
pub trait QueryWeights {
    fn travel_time(&self, edge: EdgeId, at: Timestamp) -> Weight;
}

impl QueryWeights for [Weight] {
    #[inline(always)]
    fn travel_time(&self, edge: EdgeId, _at: Timestamp) -> Weight {
        self[edge as usize]
    }
}

impl QueryWeights for Vec<Weight> {
    #[inline(always)]
    fn travel_time(&self, edge: EdgeId, _at: Timestamp) -> Weight {
        self[edge as usize]
    }
}

impl<W: QueryWeights + ?Sized> QueryWeights for &W {
    #[inline(always)]
    fn travel_time(&self, edge: EdgeId, at: Timestamp) -> Weight {
        (**self).travel_time(edge, at)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryOptions {
    /// Walk degree-two chains instead of queueing their nodes.
    pub deg2: bool,
    /// Also pass through unqueued degree-three chain ends. Requires `deg2`.
    pub deg3: bool,
    /// Evaluate the potential at both ends of every relaxed edge and count
    /// negative reduced costs. Slow; meant for validation runs.
    pub check_feasibility: bool,
}

impl QueryOptions {
    pub fn plain() -> Self {
        QueryOptions::default()
    }

    pub fn all() -> Self {
        QueryOptions { deg2: true, deg3: true, check_feasibility: false }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub queue_pushes: usize,
    pub settled: usize,
    pub feasibility_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    /// Arrival time minus departure time; INFINITY if unreachable.
    pub distance: Weight,
    /// Edge ids from source to target; empty if `source == target` or unreachable.
    pub path: Vec<EdgeId>,
    pub stats: QueryStats,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("heuristic is not feasible: queue key decreased when settling node {node}")]
    InfeasibleHeuristic { node: NodeId },
    #[error("parent chain broken at node {node}")]
    BrokenParentChain { node: NodeId },
    #[error("node {node} out of range for a graph with {num_nodes} nodes")]
    NodeOutOfRange { node: NodeId, num_nodes: usize },
}

/// Which edges a search may use. Everything but `Full` comes from a
/// [`CoreDecomposition`].
#[derive(Clone, Copy)]
enum SearchSpace<'c> {
    Full,
    /// Core plus one non-core component; edges from the core into any other
    /// component are dropped.
    CoreAnd { core: &'c CoreDecomposition, component: u32 },
    /// Only edges leading into one non-core component.
    Into { core: &'c CoreDecomposition, component: u32 },
}

impl SearchSpace<'_> {
    #[inline(always)]
    fn allows(&self, tail: NodeId, head: NodeId) -> bool {
        match *self {
            SearchSpace::Full => true,
            SearchSpace::CoreAnd { core, component } => {
                !(core.is_core(tail) && !core.is_core(head) && core.component(head) != component)
            }
            SearchSpace::Into { core, component } => core.component(head) == component,
        }
    }
}

/// Per-query mutable state. Reset in O(1) between queries.
#[derive(Debug, Clone)]
pub struct QueryContext {
    distance: TimestampedVec<Weight>,
    parent: TimestampedVec<(NodeId, EdgeId)>,
    heuristic: TimestampedVec<Weight>,
    queue: IndexedMinHeap,
    stats: QueryStats,
    source: NodeId,
}

impl QueryContext {
    pub fn new(num_nodes: usize) -> Self {
        QueryContext {
            distance: TimestampedVec::new(num_nodes, INFINITY),
            parent: TimestampedVec::new(num_nodes, (INVALID_NODE, 0)),
            heuristic: TimestampedVec::new(num_nodes, INFINITY),
            queue: IndexedMinHeap::new(num_nodes),
            stats: QueryStats::default(),
            source: INVALID_NODE,
        }
    }

    fn reset(&mut self, source: NodeId) {
        self.distance.reset();
        self.parent.reset();
        self.heuristic.reset();
        self.queue.clear();
        self.stats = QueryStats::default();
        self.source = source;
        self.distance.set(source as usize, 0);
    }

    /// Tentative distance of `node` in the last query.
    pub fn distance(&self, node: NodeId) -> Weight {
        self.distance.get(node as usize)
    }

    pub fn stats(&self) -> QueryStats {
        self.stats
    }

    /// Edge sequence from the last source to `target`, following parent links.
    pub fn unpack_path(&self, target: NodeId) -> Result<Vec<EdgeId>, QueryError> {
        let mut path = Vec::new();
        let mut node = target;
        while node != self.source {
            if path.len() > self.distance.len() {
                return Err(QueryError::BrokenParentChain { node });
            }
            let (pred, edge) = self.parent.get(node as usize);
            if pred == INVALID_NODE {
                return Err(QueryError::BrokenParentChain { node });
            }
            path.push(edge);
            node = pred;
        }
        path.reverse();
        Ok(path)
    }
}

/// A* search engine bound to one graph.
#[derive(Debug, Clone)]
pub struct AStar<'g> {
    graph: &'g Graph,
    degree: Vec<u32>,
    ctx: QueryContext,
}

impl<'g> AStar<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self::with_degrees(graph, graph.undirected_degrees())
    }

    pub fn with_degrees(graph: &'g Graph, degree: Vec<u32>) -> Self {
        assert_eq!(degree.len(), graph.num_nodes());
        AStar { graph, degree, ctx: QueryContext::new(graph.num_nodes()) }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn context(&self) -> &QueryContext {
        &self.ctx
    }

    /// Shortest path from `source` to `target` departing at `departure`.
    /// Initializes `potential` for `target`.
    pub fn query<W, P>(
        &mut self,
        weights: &W,
        potential: &mut P,
        source: NodeId,
        target: NodeId,
        departure: Timestamp,
        opts: QueryOptions,
    ) -> Result<QueryResult, QueryError>
    where
        W: QueryWeights + ?Sized,
        P: Potential + ?Sized,
    {
        self.check_node(source)?;
        self.check_node(target)?;
        potential.init(target);
        self.ctx.reset(source);
        if source != target {
            let mut search = Search { graph: self.graph, degree: &self.degree, ctx: &mut self.ctx, weights, potential, departure, opts, space: SearchSpace::Full };
            search.push(source);
            search.run(target)?;
        }
        self.finish(target)
    }

    /// Like [`AStar::query`], but confines the search to the biconnected
    /// core plus the dead-end component of the source, then continues from
    /// the target's attachment node into the target's component if needed.
    #[allow(clippy::too_many_arguments)]
    pub fn query_with_core<W, P>(
        &mut self,
        core: &CoreDecomposition,
        weights: &W,
        potential: &mut P,
        source: NodeId,
        target: NodeId,
        departure: Timestamp,
        opts: QueryOptions,
    ) -> Result<QueryResult, QueryError>
    where
        W: QueryWeights + ?Sized,
        P: Potential + ?Sized,
    {
        assert_eq!(core.num_nodes(), self.graph.num_nodes());
        self.check_node(source)?;
        self.check_node(target)?;
        potential.init(target);
        self.ctx.reset(source);
        if source == target {
            return self.finish(target);
        }
        let source_component = core.component(source);
        let target_component = core.component(target);
        let direct = core.is_core(target) || target_component == source_component;
        let first_target = if direct { target } else { core.attachment(target) };
        if first_target == INVALID_NODE {
            // target's component never touches the core or the source's component
            return self.finish(target);
        }

        let mut search = Search {
            graph: self.graph,
            degree: &self.degree,
            ctx: &mut self.ctx,
            weights,
            potential,
            departure,
            opts,
            space: SearchSpace::CoreAnd { core, component: source_component },
        };
        search.push(source);
        search.run(first_target)?;

        if !direct && search.ctx.distance.get(first_target as usize) < INFINITY {
            search.ctx.queue.clear();
            search.space = SearchSpace::Into { core, component: target_component };
            search.push(first_target);
            search.run(target)?;
        }
        self.finish(target)
    }

    fn check_node(&self, node: NodeId) -> Result<(), QueryError> {
        if (node as usize) < self.graph.num_nodes() {
            Ok(())
        } else {
            Err(QueryError::NodeOutOfRange { node, num_nodes: self.graph.num_nodes() })
        }
    }

    fn finish(&self, target: NodeId) -> Result<QueryResult, QueryError> {
        let distance = self.ctx.distance(target);
        let path = if distance < INFINITY { self.ctx.unpack_path(target)? } else { Vec::new() };
        Ok(QueryResult { distance, path, stats: self.ctx.stats })
    }
}

struct Search<'a, 'c, W: ?Sized, P: ?Sized> {
    graph: &'a Graph,
    degree: &'a [u32],
    ctx: &'a mut QueryContext,
    weights: &'a W,
    potential: &'a mut P,
    departure: Timestamp,
    opts: QueryOptions,
    space: SearchSpace<'c>,
}

impl<W: QueryWeights + ?Sized, P: Potential + ?Sized> Search<'_, '_, W, P> {
    fn heuristic(&mut self, node: NodeId) -> Weight {
        if self.ctx.heuristic.is_set(node as usize) {
            return self.ctx.heuristic.get(node as usize);
        }
        let h = self.potential.potential(node);
        self.ctx.heuristic.set(node as usize, h);
        h
    }

    /// Queues `node` with key `D + h`, or lowers its key. Nodes the
    /// potential declares unable to reach the target are never queued.
    fn push(&mut self, node: NodeId) {
        let h = self.heuristic(node);
        if h >= INFINITY {
            return;
        }
        let key = link(self.ctx.distance.get(node as usize), h);
        if self.ctx.queue.push_or_decrease(node, key) {
            self.ctx.stats.queue_pushes += 1;
        }
    }

    fn run(&mut self, target: NodeId) -> Result<(), QueryError> {
        let target_h = self.heuristic(target);
        let mut last_key = 0;
        while let Some((min_key, _)) = self.ctx.queue.peek() {
            if link(self.ctx.distance.get(target as usize), target_h) <= min_key {
                break;
            }
            let (key, node) = self.ctx.queue.pop().unwrap();
            if cfg!(debug_assertions) && key < last_key {
                return Err(QueryError::InfeasibleHeuristic { node });
            }
            last_key = key;
            self.ctx.stats.settled += 1;
            self.relax_all(node);
        }
        Ok(())
    }

    fn relax_all(&mut self, node: NodeId) {
        let dist = self.ctx.distance.get(node as usize);
        let at = self.departure + dist;
        for edge in self.graph.edge_range(node) {
            let head = self.graph.heads()[edge];
            if head == node || !self.space.allows(node, head) {
                continue;
            }
            if let Some(improved) = self.relax(node, dist, at, edge as EdgeId, head) {
                self.reached(improved, node);
            }
        }
    }

    /// Relaxes one edge; returns the head if its distance improved.
    #[inline(always)]
    fn relax(&mut self, tail: NodeId, tail_dist: Weight, at: Timestamp, edge: EdgeId, head: NodeId) -> Option<NodeId> {
        let w = self.weights.travel_time(edge, at);
        if w >= INFINITY {
            return None;
        }
        if self.opts.check_feasibility {
            self.check_reduced_cost(tail, head, w);
        }
        let tentative = link(tail_dist, w);
        if tentative < self.ctx.distance.get(head as usize) {
            self.ctx.distance.set(head as usize, tentative);
            self.ctx.parent.set(head as usize, (tail, edge));
            Some(head)
        } else {
            None
        }
    }

    fn check_reduced_cost(&mut self, tail: NodeId, head: NodeId, w: Weight) {
        let h_tail = self.heuristic(tail);
        let h_head = self.heuristic(head);
        // an infinite tail potential only says the tail cannot reach the target
        if h_tail < INFINITY && link(w, h_head) < h_tail {
            self.ctx.stats.feasibility_violations += 1;
        }
    }

    /// Dispatches a node whose distance just improved via `prev`.
    fn reached(&mut self, node: NodeId, prev: NodeId) {
        if self.opts.deg2 && !self.ctx.queue.contains(node) {
            self.walk_chain(node, prev, self.opts.deg3);
        } else {
            self.push(node);
        }
    }

    /// Follows the degree-two chain starting at `node` (entered from `prev`)
    /// for as long as distances keep improving, then queues the chain end if
    /// its degree exceeds two. Degree-one ends are dead ends and stay
    /// unqueued.
    fn walk_chain(&mut self, mut node: NodeId, mut prev: NodeId, allow_deg3: bool) {
        let limit = self.graph.num_nodes();
        let mut steps = 0;
        loop {
            if self.ctx.queue.contains(node) {
                self.push(node);
                return;
            }
            let degree = self.degree[node as usize];
            if degree > 2 {
                if allow_deg3 && degree == 3 {
                    self.skip_degree3(node, prev);
                } else {
                    self.push(node);
                }
                return;
            }
            if degree < 2 {
                return;
            }
            steps += 1;
            if steps > limit {
                // pure degree-two cycle
                return;
            }
            let dist = self.ctx.distance.get(node as usize);
            let at = self.departure + dist;
            let mut next = None;
            for edge in self.graph.edge_range(node) {
                let head = self.graph.heads()[edge];
                if head == prev || head == node || !self.space.allows(node, head) {
                    continue;
                }
                if let Some(improved) = self.relax(node, dist, at, edge as EdgeId, head) {
                    next = Some(improved);
                }
            }
            match next {
                Some(head) => {
                    prev = node;
                    node = head;
                }
                None => return,
            }
        }
    }

    /// Passes through degree-three node `node` without queueing it: both
    /// chains leaving it (other than the one towards `prev`) are walked and
    /// only their ends get queued.
    fn skip_degree3(&mut self, node: NodeId, prev: NodeId) {
        let dist = self.ctx.distance.get(node as usize);
        let at = self.departure + dist;
        for edge in self.graph.edge_range(node) {
            let head = self.graph.heads()[edge];
            if head == prev || head == node || !self.space.allows(node, head) {
                continue;
            }
            if let Some(improved) = self.relax(node, dist, at, edge as EdgeId, head) {
                self.walk_chain(improved, node, false);
            }
        }
    }
}
