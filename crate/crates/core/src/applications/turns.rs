//! Turn costs and restrictions through a turn-expanded graph.
//!
//! Every edge of the input graph becomes a node of the expanded graph, and
//! every allowed turn `(x, y) -> (y, z)` becomes an expanded edge weighing
//! the turn cost plus the weight of `(y, z)`. Expanded node ids equal the
//! input edge ids. Mapping expanded node `(x, y)` to `y` turns any potential
//! on the input graph into one on the expanded graph, because turn costs are
//! never negative.

use std::collections::HashMap;

use crate::astar::QueryWeights;
use crate::graph::{link, EdgeId, Graph, InputEdge, NodeId, NodeMapping, Timestamp, Weight};

use super::ApplicationError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TurnCost {
    Cost(Weight),
    Forbidden,
}

/// Sparse turn table. Unlisted turns are free, except U-turns (going back
/// along the reverse of the edge just used), which are forbidden unless
/// listed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TurnModel {
    costs: HashMap<(EdgeId, EdgeId), TurnCost>,
}

impl TurnModel {
    pub fn new() -> Self {
        TurnModel::default()
    }

    pub fn insert(&mut self, in_edge: EdgeId, out_edge: EdgeId, cost: TurnCost) {
        self.costs.insert((in_edge, out_edge), cost);
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    /// Listed turns sorted by edge pair.
    pub fn entries(&self) -> Vec<(EdgeId, EdgeId, TurnCost)> {
        let mut v: Vec<_> = self.costs.iter().map(|(&(a, b), &c)| (a, b, c)).collect();
        v.sort_unstable_by_key(|&(a, b, _)| (a, b));
        v
    }

    /// Cost of turning from `in_edge` into `out_edge`, defaults applied.
    pub fn cost(&self, tails: &[NodeId], graph: &Graph, in_edge: EdgeId, out_edge: EdgeId) -> TurnCost {
        if let Some(&c) = self.costs.get(&(in_edge, out_edge)) {
            return c;
        }
        if graph.head(out_edge) == tails[in_edge as usize] {
            TurnCost::Forbidden
        } else {
            TurnCost::Cost(0)
        }
    }

    /// Every listed pair must meet at a node: head of the first is tail of the second.
    pub fn validate(&self, graph: &Graph) -> Result<(), ApplicationError> {
        let tails = graph.tails();
        let m = graph.num_edges() as EdgeId;
        for (in_edge, out_edge, _) in self.entries() {
            if in_edge >= m || out_edge >= m {
                return Err(ApplicationError::EdgeOutOfRange { edge: in_edge.max(out_edge), num_edges: m as usize });
            }
            if graph.head(in_edge) != tails[out_edge as usize] {
                return Err(ApplicationError::TurnNotIncident { in_edge, out_edge });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct TurnExpandedGraph {
    graph: Graph,
    turn_cost: Vec<Weight>,
    out_edge: Vec<EdgeId>,
    phi: Vec<NodeId>,
}

/// Builds the turn-expanded graph; expanded edge weights use the input
/// graph's weights.
pub fn expand_turns(graph: &Graph, model: &TurnModel) -> Result<TurnExpandedGraph, ApplicationError> {
    model.validate(graph)?;
    let tails = graph.tails();
    let mut edges = Vec::new();
    let mut cost_of = Vec::new();
    let mut out_of = Vec::new();
    for in_edge in 0..graph.num_edges() as EdgeId {
        let pivot = graph.head(in_edge);
        for (out_edge, _, weight) in graph.out_edges(pivot) {
            if let TurnCost::Cost(c) = model.cost(&tails, graph, in_edge, out_edge) {
                edges.push(InputEdge::new(in_edge, out_edge, link(c, weight)));
                cost_of.push(c);
                out_of.push(out_edge);
            }
        }
    }
    let (expanded, order) = Graph::build_with_order(graph.num_edges(), &edges).expect("expanded ids are edge ids");
    Ok(TurnExpandedGraph {
        graph: expanded,
        turn_cost: order.iter().map(|&i| cost_of[i]).collect(),
        out_edge: order.iter().map(|&i| out_of[i]).collect(),
        phi: graph.heads().to_vec(),
    })
}

impl TurnExpandedGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Expanded node `(x, y)` to input node `y`.
    pub fn phi(&self, node: NodeId) -> NodeId {
        self.phi[node as usize]
    }

    pub fn mapping(&self) -> NodeMapping {
        NodeMapping::Table(self.phi.clone())
    }

    /// Input edge represented by an expanded node (the ids coincide).
    pub fn original_edge(&self, node: NodeId) -> EdgeId {
        node
    }

    pub fn turn_cost(&self, expanded_edge: EdgeId) -> Weight {
        self.turn_cost[expanded_edge as usize]
    }

    /// Input edge entered by an expanded edge.
    pub fn entered_edge(&self, expanded_edge: EdgeId) -> EdgeId {
        self.out_edge[expanded_edge as usize]
    }

    /// Expanded query weights on top of input-graph query weights.
    pub fn weights<W: QueryWeights>(&self, inner: W) -> TurnWeights<'_, W> {
        TurnWeights { expanded: self, inner }
    }
}

/// Turn cost first, then the entered edge at the moment the turn is done.
#[derive(Debug, Clone)]
pub struct TurnWeights<'a, W> {
    expanded: &'a TurnExpandedGraph,
    inner: W,
}

impl<W: QueryWeights> QueryWeights for TurnWeights<'_, W> {
    #[inline]
    fn travel_time(&self, edge: EdgeId, at: Timestamp) -> Weight {
        let cost = self.expanded.turn_cost[edge as usize];
        let w = self.inner.travel_time(self.expanded.out_edge[edge as usize], at.saturating_add(cost));
        link(cost, w)
    }
}
