//! Directed graphs in adjacency array form.
//!
//! A [`Graph`] stores its edges grouped by tail: the outgoing edges of node
//! `x` are `first_out[x]..first_out[x + 1]`. Edge ids are positions in that
//! layout and stay stable for the lifetime of the graph, so per-edge tables
//! (tags, travel time functions, live speeds) can be plain vectors.

use std::ops::Range;

use thiserror::Error;

pub type NodeId = u32;
pub type EdgeId = u32;

/// Travel time in milliseconds.
pub type Weight = u32;

/// Point in time in milliseconds. Shares the unit (and the overflow budget)
/// of [`Weight`].
pub type Timestamp = u32;

/// Marks "no path" and "edge closed". Less than half the range of `u32`, so
/// the sum of two finite-or-infinite weights never wraps.
pub const INFINITY: Weight = u32::MAX / 2;

pub const INVALID_NODE: NodeId = NodeId::MAX;

/// Adds two weights, absorbing into [`INFINITY`].
#[inline(always)]
pub fn link(a: Weight, b: Weight) -> Weight {
    debug_assert!(a <= INFINITY && b <= INFINITY);
    std::cmp::min(a + b, INFINITY)
}

/// Road class flags carried per edge.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EdgeTags {
    pub tunnel: bool,
    pub highway: bool,
}

impl EdgeTags {
    pub const NONE: EdgeTags = EdgeTags { tunnel: false, highway: false };

    pub fn is_empty(self) -> bool {
        !self.tunnel && !self.highway
    }
}

/// One input edge for [`Graph::build`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InputEdge {
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: Weight,
    pub tags: EdgeTags,
}

impl InputEdge {
    pub fn new(tail: NodeId, head: NodeId, weight: Weight) -> Self {
        InputEdge { tail, head, weight, tags: EdgeTags::NONE }
    }

    pub fn tagged(tail: NodeId, head: NodeId, weight: Weight, tags: EdgeTags) -> Self {
        InputEdge { tail, head, weight, tags }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} references node {node}, but the graph has {num_nodes} nodes")]
    NodeOutOfRange { edge: usize, node: NodeId, num_nodes: usize },
    #[error("edge {edge} has weight {weight}, which exceeds the finite weight range")]
    WeightOutOfRange { edge: usize, weight: u64 },
    #[error("malformed adjacency array: {0}")]
    Malformed(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    first_out: Vec<EdgeId>,
    head: Vec<NodeId>,
    weight: Vec<Weight>,
    tags: Vec<EdgeTags>,
}

impl Graph {
    /// Groups `edges` by tail. Order within a tail group follows input
    /// order; parallel edges and self-loops are kept.
    pub fn build(num_nodes: usize, edges: &[InputEdge]) -> Result<Graph, GraphError> {
        Graph::build_with_order(num_nodes, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::build`], also returning for every stored edge the index
    /// of the input edge it came from.
    pub fn build_with_order(num_nodes: usize, edges: &[InputEdge]) -> Result<(Graph, Vec<usize>), GraphError> {
        for (i, e) in edges.iter().enumerate() {
            for node in [e.tail, e.head] {
                if node as usize >= num_nodes {
                    return Err(GraphError::NodeOutOfRange { edge: i, node, num_nodes });
                }
            }
            if e.weight > INFINITY {
                return Err(GraphError::WeightOutOfRange { edge: i, weight: e.weight as u64 });
            }
        }
        assert!(edges.len() < EdgeId::MAX as usize, "too many edges");

        let mut first_out = vec![0 as EdgeId; num_nodes + 1];
        for e in edges {
            first_out[e.tail as usize + 1] += 1;
        }
        for x in 0..num_nodes {
            first_out[x + 1] += first_out[x];
        }
        let mut next = first_out.clone();
        let mut order = vec![0usize; edges.len()];
        for (i, e) in edges.iter().enumerate() {
            let slot = &mut next[e.tail as usize];
            order[*slot as usize] = i;
            *slot += 1;
        }
        let head = order.iter().map(|&i| edges[i].head).collect();
        let weight = order.iter().map(|&i| edges[i].weight).collect();
        let tags = order.iter().map(|&i| edges[i].tags).collect();
        Ok((Graph { first_out, head, weight, tags }, order))
    }

    /// Assembles a graph from raw adjacency arrays, checking the layout.
    pub fn from_parts(first_out: Vec<EdgeId>, head: Vec<NodeId>, weight: Vec<Weight>) -> Result<Graph, GraphError> {
        if first_out.is_empty() || first_out[0] != 0 {
            return Err(GraphError::Malformed("first_out must start with 0"));
        }
        if first_out.windows(2).any(|w| w[0] > w[1]) {
            return Err(GraphError::Malformed("first_out must be non-decreasing"));
        }
        if *first_out.last().unwrap() as usize != head.len() || head.len() != weight.len() {
            return Err(GraphError::Malformed("first_out[n] must equal the number of edges"));
        }
        let n = first_out.len() - 1;
        if let Some((i, &node)) = head.iter().enumerate().find(|(_, &h)| h as usize >= n) {
            return Err(GraphError::NodeOutOfRange { edge: i, node, num_nodes: n });
        }
        let tags = vec![EdgeTags::NONE; head.len()];
        Ok(Graph { first_out, head, weight, tags })
    }

    pub fn num_nodes(&self) -> usize {
        self.first_out.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.head.len()
    }

    pub fn first_out(&self) -> &[EdgeId] {
        &self.first_out
    }

    pub fn heads(&self) -> &[NodeId] {
        &self.head
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weight
    }

    pub fn tags(&self) -> &[EdgeTags] {
        &self.tags
    }

    pub fn set_tags(&mut self, tags: Vec<EdgeTags>) {
        assert_eq!(tags.len(), self.num_edges());
        self.tags = tags;
    }

    /// Same topology, different weights.
    pub fn with_weights(&self, weight: Vec<Weight>) -> Graph {
        assert_eq!(weight.len(), self.num_edges());
        Graph { first_out: self.first_out.clone(), head: self.head.clone(), weight, tags: self.tags.clone() }
    }

    #[inline(always)]
    pub fn edge_range(&self, node: NodeId) -> Range<usize> {
        self.first_out[node as usize] as usize..self.first_out[node as usize + 1] as usize
    }

    #[inline(always)]
    pub fn head(&self, edge: EdgeId) -> NodeId {
        self.head[edge as usize]
    }

    #[inline(always)]
    pub fn weight(&self, edge: EdgeId) -> Weight {
        self.weight[edge as usize]
    }

    pub fn out_degree(&self, node: NodeId) -> usize {
        self.edge_range(node).len()
    }

    /// `(edge id, head, weight)` for every outgoing edge of `node`.
    pub fn out_edges(&self, node: NodeId) -> impl Iterator<Item = (EdgeId, NodeId, Weight)> + '_ {
        self.edge_range(node).map(move |e| (e as EdgeId, self.head[e], self.weight[e]))
    }

    /// Tail of every edge, in edge id order.
    pub fn tails(&self) -> Vec<NodeId> {
        let mut tails = Vec::with_capacity(self.num_edges());
        for x in 0..self.num_nodes() {
            tails.extend(std::iter::repeat(x as NodeId).take(self.out_degree(x as NodeId)));
        }
        tails
    }

    /// The edges in id order as builder input.
    pub fn edge_list(&self) -> Vec<InputEdge> {
        self.tails()
            .into_iter()
            .enumerate()
            .map(|(e, tail)| InputEdge::tagged(tail, self.head[e], self.weight[e], self.tags[e]))
            .collect()
    }

    /// Finds the first edge `tail -> head`.
    pub fn find_edge(&self, tail: NodeId, head: NodeId) -> Option<EdgeId> {
        self.edge_range(tail).find(|&e| self.head[e] == head).map(|e| e as EdgeId)
    }

    /// Every edge turned around. Edge `i` of the result is the reversal of
    /// `origin[i]` in `self`.
    pub fn reverse_with_origin(&self) -> (Graph, Vec<EdgeId>) {
        let reversed: Vec<InputEdge> = self
            .edge_list()
            .into_iter()
            .map(|e| InputEdge::tagged(e.head, e.tail, e.weight, e.tags))
            .collect();
        let (g, order) = Graph::build_with_order(self.num_nodes(), &reversed).expect("reversal keeps node ids valid");
        (g, order.into_iter().map(|i| i as EdgeId).collect())
    }

    pub fn reverse(&self) -> Graph {
        self.reverse_with_origin().0
    }

    /// Number of distinct neighbors over in- and out-edges, self-loops excluded.
    pub fn undirected_degrees(&self) -> Vec<u32> {
        let n = self.num_nodes();
        let mut neighbors: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (e, tail) in self.tails().into_iter().enumerate() {
            let head = self.head[e];
            if head != tail {
                neighbors[tail as usize].push(head);
                neighbors[head as usize].push(tail);
            }
        }
        neighbors
            .into_iter()
            .map(|mut adj| {
                adj.sort_unstable();
                adj.dedup();
                adj.len() as u32
            })
            .collect()
    }

    /// Single-node variant of [`Graph::undirected_degrees`]. Scans all edges
    /// for the incoming side.
    pub fn undirected_degree(&self, node: NodeId) -> u32 {
        let mut adj: Vec<NodeId> = self.out_edges(node).map(|(_, h, _)| h).collect();
        for (e, tail) in self.tails().into_iter().enumerate() {
            if self.head[e] == node {
                adj.push(tail);
            }
        }
        adj.retain(|&y| y != node);
        adj.sort_unstable();
        adj.dedup();
        adj.len() as u32
    }
}

/// Maps query graph nodes onto nodes of the graph the hierarchy was built on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeMapping {
    Identity,
    Table(Vec<NodeId>),
}

impl NodeMapping {
    #[inline(always)]
    pub fn map(&self, node: NodeId) -> NodeId {
        match self {
            NodeMapping::Identity => node,
            NodeMapping::Table(phi) => phi[node as usize],
        }
    }

    /// Checks that every image lies in `0..lower_bound_nodes`.
    pub fn is_valid_for(&self, lower_bound_nodes: usize) -> bool {
        match self {
            NodeMapping::Identity => true,
            NodeMapping::Table(phi) => phi.iter().all(|&y| (y as usize) < lower_bound_nodes),
        }
    }
}
