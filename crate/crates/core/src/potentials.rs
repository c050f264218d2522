//! A* potentials backed by a contraction hierarchy.
//!
//! For a target `t`, a Dijkstra search from `t` over reversed down arcs gives
//! `B[x]`, the length of the shortest down path from `x` to `t`. The exact
//! distance from `x` to `t` is then the shortest up-down path, i.e.
//!
//! ```text
//! pot(x) = min(B[x], min over up arcs (x, y) of w(x, y) + pot(y))
//! ```
//!
//! [`ChPotential`] evaluates this recursion lazily and memoizes it, so a
//! query only pays for the nodes its search actually touches.
//! [`phast_all_to_one`] evaluates it for every node with one sweep over the
//! levels from top to bottom.

use crate::ch::ContractionHierarchy;
use crate::datastr::{IndexedMinHeap, TimestampedVec};
use crate::graph::{link, NodeId, NodeMapping, Weight, INFINITY};

/// Lower-bound distance estimate towards a fixed target.
///
/// An implementation is *feasible* for query weights `w` if
/// `w(u, v) - potential(u) + potential(v) >= 0` on every edge. Returning
/// [`INFINITY`] claims the target is unreachable from that node.
pub trait Potential {
    fn init(&mut self, target: NodeId);
    fn potential(&mut self, node: NodeId) -> Weight;
}

impl<P: Potential + ?Sized> Potential for &mut P {
    fn init(&mut self, target: NodeId) {
        (**self).init(target)
    }

    fn potential(&mut self, node: NodeId) -> Weight {
        (**self).potential(node)
    }
}

impl<P: Potential + ?Sized> Potential for Box<P> {
    fn init(&mut self, target: NodeId) {
        (**self).init(target)
    }

    fn potential(&mut self, node: NodeId) -> Weight {
        (**self).potential(node)
    }
}

/// `h = 0`, turning A* into Dijkstra's algorithm.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroPotential;

impl Potential for ZeroPotential {
    fn init(&mut self, _target: NodeId) {}

    fn potential(&mut self, _node: NodeId) -> Weight {
        0
    }
}

/// Evaluates an inner potential on mapped node ids.
#[derive(Debug, Clone)]
pub struct MappedPotential<P> {
    inner: P,
    mapping: NodeMapping,
}

impl<P> MappedPotential<P> {
    pub fn new(inner: P, mapping: NodeMapping) -> Self {
        MappedPotential { inner, mapping }
    }

    pub fn inner(&self) -> &P {
        &self.inner
    }
}

impl<P: Potential> Potential for MappedPotential<P> {
    fn init(&mut self, target: NodeId) {
        self.inner.init(self.mapping.map(target))
    }

    fn potential(&mut self, node: NodeId) -> Weight {
        self.inner.potential(self.mapping.map(node))
    }
}

const UNSET: Weight = Weight::MAX;

/// Exact distances to the target in the hierarchy's graph, computed on
/// demand. One instance per concurrent query.
#[derive(Debug, Clone)]
pub struct ChPotential<'a> {
    ch: &'a ContractionHierarchy,
    backward: TimestampedVec<Weight>,
    memo: TimestampedVec<Weight>,
    queue: IndexedMinHeap,
    stack: Vec<NodeId>,
    target: Option<NodeId>,
    num_memoized: usize,
}

impl<'a> ChPotential<'a> {
    pub fn new(ch: &'a ContractionHierarchy) -> Self {
        let n = ch.num_nodes();
        ChPotential {
            ch,
            backward: TimestampedVec::new(n, INFINITY),
            memo: TimestampedVec::new(n, UNSET),
            queue: IndexedMinHeap::new(n),
            stack: Vec::new(),
            target: None,
            num_memoized: 0,
        }
    }

    pub fn target(&self) -> Option<NodeId> {
        self.target
    }

    /// Shortest down-path distance from `node` to the target, INFINITY if
    /// no down path exists.
    pub fn backward_distance(&self, node: NodeId) -> Weight {
        self.backward.get(node as usize)
    }

    /// Number of nodes with a memoized potential since the last `init`.
    pub fn num_memoized(&self) -> usize {
        self.num_memoized
    }
}

impl Potential for ChPotential<'_> {
    fn init(&mut self, target: NodeId) {
        self.target = Some(target);
        crate::ch::upward_search(self.ch.down_reversed(), target, &mut self.backward, &mut self.queue, |_| {});
        self.memo.reset();
        self.num_memoized = 0;
    }

    fn potential(&mut self, node: NodeId) -> Weight {
        debug_assert!(self.target.is_some(), "potential evaluated before init");
        if self.memo.is_set(node as usize) {
            return self.memo.get(node as usize);
        }
        let up = self.ch.up();
        self.stack.push(node);
        while let Some(&x) = self.stack.last() {
            if self.memo.is_set(x as usize) {
                self.stack.pop();
                continue;
            }
            let mut ready = true;
            for (_, y, _) in up.out_edges(x) {
                if !self.memo.is_set(y as usize) {
                    self.stack.push(y);
                    ready = false;
                }
            }
            if ready {
                let mut best = self.backward.get(x as usize);
                for (_, y, w) in up.out_edges(x) {
                    best = best.min(link(w, self.memo.get(y as usize)));
                }
                self.memo.set(x as usize, best);
                self.num_memoized += 1;
                self.stack.pop();
            }
        }
        self.memo.get(node as usize)
    }
}

/// Distances from every node to `target`: the backward down search followed
/// by a sweep over the levels from highest to lowest, relaxing up arcs in
/// reverse.
pub fn phast_all_to_one(ch: &ContractionHierarchy, target: NodeId) -> Vec<Weight> {
    let n = ch.num_nodes();
    let mut backward = TimestampedVec::new(n, INFINITY);
    let mut queue = IndexedMinHeap::new(n);
    crate::ch::upward_search(ch.down_reversed(), target, &mut backward, &mut queue, |_| {});
    let mut dist: Vec<Weight> = (0..n).map(|x| backward.get(x)).collect();

    let mut by_level: Vec<NodeId> = (0..n as NodeId).collect();
    by_level.sort_by_key(|&x| std::cmp::Reverse(ch.level()[x as usize]));
    let up = ch.up();
    for x in by_level {
        for (_, y, w) in up.out_edges(x) {
            let via = link(w, dist[y as usize]);
            if via < dist[x as usize] {
                dist[x as usize] = via;
            }
        }
    }
    dist
}
