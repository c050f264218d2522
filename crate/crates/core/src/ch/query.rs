use crate::datastr::{IndexedMinHeap, TimestampedVec};
use crate::graph::{link, Graph, NodeId, Weight, INFINITY};

use super::ContractionHierarchy;

/// Scratch space for point-to-point CH queries. One per thread; the
/// hierarchy itself is shared.
#[derive(Debug, Clone)]
pub struct ChQuery {
    forward: TimestampedVec<Weight>,
    backward: TimestampedVec<Weight>,
    queue: IndexedMinHeap,
    forward_visited: Vec<NodeId>,
}

impl ChQuery {
    pub fn new(num_nodes: usize) -> Self {
        ChQuery {
            forward: TimestampedVec::new(num_nodes, INFINITY),
            backward: TimestampedVec::new(num_nodes, INFINITY),
            queue: IndexedMinHeap::new(num_nodes),
            forward_visited: Vec::new(),
        }
    }

    /// Shortest distance from `source` to `target`: the minimum over all
    /// meeting nodes of the upward search from `source` and the reversed
    /// downward search from `target`.
    pub fn distance(&mut self, ch: &ContractionHierarchy, source: NodeId, target: NodeId) -> Weight {
        if source == target {
            return 0;
        }
        self.forward_visited.clear();
        let visited = &mut self.forward_visited;
        upward_search(ch.up(), source, &mut self.forward, &mut self.queue, |x| visited.push(x));
        upward_search(ch.down_reversed(), target, &mut self.backward, &mut self.queue, |_| {});
        self.forward_visited
            .iter()
            .map(|&x| link(self.forward.get(x as usize), self.backward.get(x as usize)))
            .min()
            .unwrap_or(INFINITY)
    }
}

/// Exhaustive Dijkstra restricted to one direction of the hierarchy.
pub(crate) fn upward_search(
    graph: &Graph,
    start: NodeId,
    dist: &mut TimestampedVec<Weight>,
    queue: &mut IndexedMinHeap,
    mut on_settle: impl FnMut(NodeId),
) {
    dist.reset();
    queue.clear();
    dist.set(start as usize, 0);
    queue.push(start, 0);
    while let Some((d, node)) = queue.pop() {
        on_settle(node);
        for (_, head, weight) in graph.out_edges(node) {
            let tentative = link(d, weight);
            if tentative < dist.get(head as usize) {
                dist.set(head as usize, tentative);
                queue.push_or_decrease(head, tentative);
            }
        }
    }
}

impl ContractionHierarchy {
    pub fn query(&self, source: NodeId, target: NodeId) -> Weight {
        ChQuery::new(self.num_nodes()).distance(self, source, target)
    }
}
