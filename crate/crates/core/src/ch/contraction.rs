use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::datastr::{IndexedMinHeap, TimestampedVec};
use crate::graph::{link, Graph, NodeId, Weight, INFINITY};

use super::{Arc, ArcId, ArcOrigin};

/// Tuning knobs for node contraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContractionParams {
    /// Witness searches give up after settling this many nodes. A search that
    /// gives up inserts the shortcut.
    pub witness_settle_limit: usize,
}

impl Default for ContractionParams {
    fn default() -> Self {
        ContractionParams { witness_settle_limit: 500 }
    }
}

struct Shortcut {
    tail: NodeId,
    head: NodeId,
    weight: Weight,
    first: ArcId,
    second: ArcId,
}

/// Mutable contraction state: the remaining graph plus the arcs emitted so far.
pub(crate) struct Contractor {
    params: ContractionParams,
    pub(crate) arcs: Vec<Arc>,
    out_adj: Vec<Vec<(NodeId, ArcId)>>,
    in_adj: Vec<Vec<(NodeId, ArcId)>>,
    contracted: Vec<bool>,
    contracted_neighbors: Vec<u32>,
    pub(crate) rank: Vec<u32>,
    pub(crate) level: Vec<u32>,
    pub(crate) up_arcs: Vec<ArcId>,
    pub(crate) down_arcs: Vec<ArcId>,
    next_rank: u32,
    witness_dist: TimestampedVec<Weight>,
    witness_queue: IndexedMinHeap,
}

impl Contractor {
    pub(crate) fn new(graph: &Graph, params: ContractionParams) -> Self {
        let n = graph.num_nodes();
        let mut c = Contractor {
            params,
            arcs: Vec::with_capacity(graph.num_edges()),
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            contracted: vec![false; n],
            contracted_neighbors: vec![0; n],
            rank: vec![u32::MAX; n],
            level: vec![0; n],
            up_arcs: Vec::new(),
            down_arcs: Vec::new(),
            next_rank: 0,
            witness_dist: TimestampedVec::new(n, INFINITY),
            witness_queue: IndexedMinHeap::new(n),
        };
        for (edge, tail) in graph.tails().into_iter().enumerate() {
            let head = graph.heads()[edge];
            let weight = graph.weights()[edge];
            if tail == head || weight >= INFINITY {
                continue;
            }
            c.insert_arc(tail, head, weight, ArcOrigin::Original(edge as u32));
        }
        c
    }

    /// Adds `tail -> head` unless an arc at least as short exists; parallel
    /// arcs collapse to the shortest.
    fn insert_arc(&mut self, tail: NodeId, head: NodeId, weight: Weight, origin: ArcOrigin) {
        let existing = self.out_adj[tail as usize].iter().position(|&(h, _)| h == head);
        if let Some(pos) = existing {
            let old = self.out_adj[tail as usize][pos].1;
            if self.arcs[old as usize].weight <= weight {
                return;
            }
            let id = self.push_arc(tail, head, weight, origin);
            self.out_adj[tail as usize][pos].1 = id;
            let back = self.in_adj[head as usize].iter_mut().find(|(t, _)| *t == tail).expect("adjacency out of sync");
            back.1 = id;
        } else {
            let id = self.push_arc(tail, head, weight, origin);
            self.out_adj[tail as usize].push((head, id));
            self.in_adj[head as usize].push((tail, id));
        }
    }

    fn push_arc(&mut self, tail: NodeId, head: NodeId, weight: Weight, origin: ArcOrigin) -> ArcId {
        let id = self.arcs.len() as ArcId;
        self.arcs.push(Arc { tail, head, weight, origin });
        id
    }

    /// Shortcuts needed if `node` were contracted now.
    fn shortcuts_for(&mut self, node: NodeId) -> Vec<Shortcut> {
        let mut shortcuts = Vec::new();
        let ins = self.in_adj[node as usize].clone();
        let outs = self.out_adj[node as usize].clone();
        if outs.is_empty() {
            return shortcuts;
        }
        for &(tail, in_arc) in &ins {
            let in_weight = self.arcs[in_arc as usize].weight;
            let limit = outs
                .iter()
                .filter(|&&(head, _)| head != tail)
                .map(|&(_, out_arc)| link(in_weight, self.arcs[out_arc as usize].weight))
                .max();
            let Some(limit) = limit else { continue };
            self.witness_search(tail, node, limit);
            for &(head, out_arc) in &outs {
                if head == tail {
                    continue;
                }
                let via = link(in_weight, self.arcs[out_arc as usize].weight);
                if self.witness_dist.get(head as usize) > via {
                    shortcuts.push(Shortcut { tail, head, weight: via, first: in_arc, second: out_arc });
                }
            }
        }
        shortcuts
    }

    /// Bounded Dijkstra from `source` in the remaining graph without `skip`.
    /// Every tentative distance is the length of an actual path, so stopping
    /// early can only produce extra shortcuts.
    fn witness_search(&mut self, source: NodeId, skip: NodeId, limit: Weight) {
        self.witness_dist.reset();
        self.witness_queue.clear();
        self.witness_dist.set(source as usize, 0);
        self.witness_queue.push(source, 0);
        let mut settled = 0;
        while let Some((dist, node)) = self.witness_queue.pop() {
            if dist > limit {
                break;
            }
            settled += 1;
            if settled > self.params.witness_settle_limit {
                break;
            }
            for &(head, arc) in &self.out_adj[node as usize] {
                if head == skip {
                    continue;
                }
                let tentative = link(dist, self.arcs[arc as usize].weight);
                if tentative < self.witness_dist.get(head as usize) {
                    self.witness_dist.set(head as usize, tentative);
                    self.witness_queue.push_or_decrease(head, tentative);
                }
            }
        }
    }

    fn priority(&mut self, node: NodeId) -> i64 {
        let added = self.shortcuts_for(node).len() as i64;
        let removed = (self.in_adj[node as usize].len() + self.out_adj[node as usize].len()) as i64;
        added - removed + self.contracted_neighbors[node as usize] as i64
    }

    pub(crate) fn contract(&mut self, node: NodeId) {
        assert!(!self.contracted[node as usize]);
        let shortcuts = self.shortcuts_for(node);
        self.rank[node as usize] = self.next_rank;
        self.next_rank += 1;
        self.contracted[node as usize] = true;

        let ins = std::mem::take(&mut self.in_adj[node as usize]);
        let outs = std::mem::take(&mut self.out_adj[node as usize]);
        let mut neighbors: Vec<NodeId> = Vec::with_capacity(ins.len() + outs.len());
        for &(tail, arc) in &ins {
            self.down_arcs.push(arc);
            self.out_adj[tail as usize].retain(|&(h, _)| h != node);
            neighbors.push(tail);
        }
        for &(head, arc) in &outs {
            self.up_arcs.push(arc);
            self.in_adj[head as usize].retain(|&(t, _)| t != node);
            neighbors.push(head);
        }
        neighbors.sort_unstable();
        neighbors.dedup();
        let node_level = self.level[node as usize];
        for &nb in &neighbors {
            self.contracted_neighbors[nb as usize] += 1;
            self.level[nb as usize] = self.level[nb as usize].max(node_level + 1);
        }
        for s in shortcuts {
            self.insert_arc(s.tail, s.head, s.weight, ArcOrigin::Shortcut(s.first, s.second));
        }
    }

    /// Contracts in the given order.
    pub(crate) fn run_with_order(&mut self, order: &[NodeId]) {
        for &node in order {
            self.contract(node);
        }
    }

    /// Contracts greedily by edge difference plus contracted neighbors,
    /// re-evaluating a popped node's priority before contracting it.
    pub(crate) fn run_heuristic(&mut self) {
        let n = self.rank.len();
        let mut queue = BinaryHeap::with_capacity(n);
        for node in 0..n as NodeId {
            let p = self.priority(node);
            queue.push(Reverse((p, node)));
        }
        while let Some(Reverse((_, node))) = queue.pop() {
            let current = self.priority(node);
            if let Some(&Reverse(top)) = queue.peek() {
                if (current, node) > top {
                    queue.push(Reverse((current, node)));
                    continue;
                }
            }
            self.contract(node);
        }
    }

    /// Edges among nodes not yet contracted, for invariant checks.
    #[cfg(test)]
    pub(crate) fn remaining_edges(&self) -> Vec<(NodeId, NodeId, Weight)> {
        let mut out = Vec::new();
        for (tail, adj) in self.out_adj.iter().enumerate() {
            for &(head, arc) in adj {
                out.push((tail as NodeId, head, self.arcs[arc as usize].weight));
            }
        }
        out
    }

    #[cfg(test)]
    pub(crate) fn is_contracted(&self, node: NodeId) -> bool {
        self.contracted[node as usize]
    }
}
