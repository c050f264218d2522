//! Plain one-to-all Dijkstra on static weights. Used for landmark tables,
//! oracle distance arrays and the CH backward search.

use crate::datastr::{IndexedMinHeap, TimestampedVec};
use crate::graph::{link, Graph, NodeId, Weight, INFINITY, INVALID_NODE};

/// Reusable Dijkstra scratch space for one graph size.
#[derive(Debug, Clone)]
pub struct Dijkstra {
    distance: TimestampedVec<Weight>,
    parent: TimestampedVec<NodeId>,
    queue: IndexedMinHeap,
    settled: usize,
}

impl Dijkstra {
    pub fn new(num_nodes: usize) -> Self {
        Dijkstra {
            distance: TimestampedVec::new(num_nodes, INFINITY),
            parent: TimestampedVec::new(num_nodes, INVALID_NODE),
            queue: IndexedMinHeap::new(num_nodes),
            settled: 0,
        }
    }

    /// Runs to exhaustion from `source` over the graph's own weights.
    pub fn run(&mut self, graph: &Graph, source: NodeId) {
        self.distance.reset();
        self.parent.reset();
        self.queue.clear();
        self.settled = 0;
        self.distance.set(source as usize, 0);
        self.queue.push(source, 0);
        while let Some((dist, node)) = self.queue.pop() {
            self.settled += 1;
            for (_, head, weight) in graph.out_edges(node) {
                let tentative = link(dist, weight);
                if tentative < self.distance.get(head as usize) {
                    self.distance.set(head as usize, tentative);
                    self.parent.set(head as usize, node);
                    self.queue.push_or_decrease(head, tentative);
                }
            }
        }
    }

    #[inline]
    pub fn distance(&self, node: NodeId) -> Weight {
        self.distance.get(node as usize)
    }

    /// Predecessor in the shortest-path tree; [`INVALID_NODE`] for the
    /// source and unreached nodes.
    #[inline]
    pub fn parent(&self, node: NodeId) -> NodeId {
        self.parent.get(node as usize)
    }

    pub fn num_settled(&self) -> usize {
        self.settled
    }

    pub fn distances(&self) -> Vec<Weight> {
        (0..self.distance.len()).map(|x| self.distance.get(x)).collect()
    }
}

/// Distances from `source` to every node.
pub fn one_to_all(graph: &Graph, source: NodeId) -> Vec<Weight> {
    let mut d = Dijkstra::new(graph.num_nodes());
    d.run(graph, source);
    d.distances()
}
