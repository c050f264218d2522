//! Contraction hierarchies.
//!
//! Nodes are contracted one at a time; contracting `v` inserts a shortcut
//! `u -> w` for every pair of remaining neighbors whose shortest connection
//! runs through `v`. Afterwards every arc points either up (to a node
//! contracted later) or down, and every shortest path has an equally long
//! up-down counterpart.
//!
//! Up arcs are stored forward, indexed by their tail. Down arcs are stored
//! reversed, indexed by their head, since both the point-to-point query and
//! the backward search of the potentials walk them from the target side.

mod contraction;
mod query;
mod serialize;

use crate::graph::{EdgeId, Graph, InputEdge, NodeId, Weight};

pub use contraction::ContractionParams;
pub use query::ChQuery;
pub(crate) use query::upward_search;
pub use serialize::{ChLoadError, CH_FILE_MAGIC, CH_FILE_VERSION};

pub type ArcId = u32;

/// Where an arc of the hierarchy comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcOrigin {
    /// An edge of the input graph (collapsed to the shortest among parallels).
    Original(EdgeId),
    /// A shortcut replacing `tail -> mid` followed by `mid -> head`.
    Shortcut(ArcId, ArcId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: Weight,
    pub origin: ArcOrigin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionHierarchy {
    rank: Vec<u32>,
    level: Vec<u32>,
    up: Graph,
    up_arc: Vec<ArcId>,
    down: Graph,
    down_arc: Vec<ArcId>,
    arcs: Vec<Arc>,
    num_original_edges: usize,
}

impl ContractionHierarchy {
    /// Contracts `graph` with the default node ordering.
    pub fn build(graph: &Graph) -> Self {
        Self::build_with_params(graph, ContractionParams::default())
    }

    pub fn build_with_params(graph: &Graph, params: ContractionParams) -> Self {
        let mut contractor = contraction::Contractor::new(graph, params);
        contractor.run_heuristic();
        Self::assemble(graph, contractor)
    }

    /// Contracts nodes in exactly the given order.
    ///
    /// # Panics
    ///
    /// If `order` is not a permutation of the node ids.
    pub fn build_with_order(graph: &Graph, order: &[NodeId]) -> Self {
        let n = graph.num_nodes();
        let mut seen = vec![false; n];
        assert_eq!(order.len(), n, "order must list every node once");
        for &x in order {
            assert!(!std::mem::replace(&mut seen[x as usize], true), "node {x} listed twice");
        }
        let mut contractor = contraction::Contractor::new(graph, ContractionParams::default());
        contractor.run_with_order(order);
        Self::assemble(graph, contractor)
    }

    fn assemble(graph: &Graph, c: contraction::Contractor) -> Self {
        Self::from_arcs(c.rank, c.level, c.arcs, &c.up_arcs, &c.down_arcs, graph.num_edges())
    }

    pub(crate) fn from_arcs(
        rank: Vec<u32>,
        level: Vec<u32>,
        arcs: Vec<Arc>,
        up_arcs: &[ArcId],
        down_arcs: &[ArcId],
        num_original_edges: usize,
    ) -> Self {
        let n = rank.len();
        let up_input: Vec<InputEdge> = up_arcs
            .iter()
            .map(|&a| {
                let arc = arcs[a as usize];
                InputEdge::new(arc.tail, arc.head, arc.weight)
            })
            .collect();
        let (up, order) = Graph::build_with_order(n, &up_input).expect("arc endpoints are valid nodes");
        let up_arc = order.into_iter().map(|i| up_arcs[i]).collect();

        let down_input: Vec<InputEdge> = down_arcs
            .iter()
            .map(|&a| {
                let arc = arcs[a as usize];
                InputEdge::new(arc.head, arc.tail, arc.weight)
            })
            .collect();
        let (down, order) = Graph::build_with_order(n, &down_input).expect("arc endpoints are valid nodes");
        let down_arc = order.into_iter().map(|i| down_arcs[i]).collect();

        ContractionHierarchy { rank, level, up, up_arc, down, down_arc, arcs, num_original_edges }
    }

    pub fn num_nodes(&self) -> usize {
        self.rank.len()
    }

    /// Position of each node in the contraction order.
    pub fn rank(&self) -> &[u32] {
        &self.rank
    }

    /// Level of each node; no arc connects two nodes of equal level, and up
    /// arcs always lead to a strictly higher level.
    pub fn level(&self) -> &[u32] {
        &self.level
    }

    /// Up arcs, indexed by tail.
    pub fn up(&self) -> &Graph {
        &self.up
    }

    /// Down arcs turned around: the edges at `y` lead to every `x` with a
    /// down arc `x -> y`.
    pub fn down_reversed(&self) -> &Graph {
        &self.down
    }

    /// Down arcs as `(tail, head, weight)`.
    pub fn down_edges(&self) -> Vec<(NodeId, NodeId, Weight)> {
        let tails = self.down.tails();
        tails.into_iter().zip(self.down.heads()).zip(self.down.weights()).map(|((y, &x), &w)| (x, y, w)).collect()
    }

    /// Up arcs as `(tail, head, weight)`.
    pub fn up_edges(&self) -> Vec<(NodeId, NodeId, Weight)> {
        let tails = self.up.tails();
        tails.into_iter().zip(self.up.heads()).zip(self.up.weights()).map(|((x, &y), &w)| (x, y, w)).collect()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn up_arc_id(&self, up_edge: EdgeId) -> ArcId {
        self.up_arc[up_edge as usize]
    }

    pub fn down_arc_id(&self, down_edge: EdgeId) -> ArcId {
        self.down_arc[down_edge as usize]
    }

    pub fn num_shortcuts(&self) -> usize {
        self.up_arc
            .iter()
            .chain(&self.down_arc)
            .filter(|&&a| matches!(self.arcs[a as usize].origin, ArcOrigin::Shortcut(..)))
            .count()
    }

    /// Expands an arc into the input graph edges it stands for.
    pub fn unpack_arc(&self, arc: ArcId) -> Vec<EdgeId> {
        let mut path = Vec::new();
        let mut stack = vec![arc];
        while let Some(a) = stack.pop() {
            match self.arcs[a as usize].origin {
                ArcOrigin::Original(edge) => path.push(edge),
                ArcOrigin::Shortcut(first, second) => {
                    stack.push(second);
                    stack.push(first);
                }
            }
        }
        path
    }

    pub fn num_original_edges(&self) -> usize {
        self.num_original_edges
    }

    /// Whether the hierarchy was plausibly built from `graph`: same size,
    /// every original arc matches its edge, and every edge without an arc
    /// is a loop, closed, or dominated by a parallel arc.
    pub fn fits(&self, graph: &Graph) -> bool {
        if self.num_nodes() != graph.num_nodes() || self.num_original_edges != graph.num_edges() {
            return false;
        }
        let tails = graph.tails();
        let mut covered = vec![false; graph.num_edges()];
        let mut shortest = std::collections::HashMap::new();
        for arc in &self.arcs {
            if let ArcOrigin::Original(e) = arc.origin {
                let e = e as usize;
                if e >= covered.len() || tails[e] != arc.tail || graph.heads()[e] != arc.head || graph.weights()[e] != arc.weight {
                    return false;
                }
                covered[e] = true;
                let best = shortest.entry((arc.tail, arc.head)).or_insert(arc.weight);
                *best = (*best).min(arc.weight);
            }
        }
        (0..graph.num_edges()).all(|e| {
            let (t, h, w) = (tails[e], graph.heads()[e], graph.weights()[e]);
            covered[e] || t == h || w >= crate::graph::INFINITY || shortest.get(&(t, h)).is_some_and(|&b| b <= w)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dijkstra::one_to_all;
    use crate::graph::INFINITY;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path_graph() -> Graph {
        Graph::build(3, &[InputEdge::new(0, 1, 1), InputEdge::new(1, 2, 2)]).unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
        let m = rng.gen_range(0..=3 * n);
        let edges: Vec<InputEdge> = (0..m)
            .map(|_| InputEdge::new(rng.gen_range(0..n) as NodeId, rng.gen_range(0..n) as NodeId, rng.gen_range(0..20)))
            .collect();
        Graph::build(n, &edges).unwrap()
    }

    #[test]
    fn fits_detects_other_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 12);
            let ch = ContractionHierarchy::build(&g);
            assert!(ch.fits(&g));
            if g.num_edges() > 0 {
                let mut w = g.weights().to_vec();
                let e = rng.gen_range(0..w.len());
                w[e] += 1;
                let other = g.with_weights(w);
                // bumping a loop or a dominated parallel goes unnoticed
                let has_arc = ch.arcs().iter().any(|a| a.origin == ArcOrigin::Original(e as EdgeId));
                assert_eq!(ch.fits(&other), !has_arc);
            }
        }
        assert!(!ContractionHierarchy::build(&path_graph()).fits(&Graph::build(3, &[]).unwrap()));
    }

    #[test]
    fn hand_contraction_of_middle_node() {
        let ch = ContractionHierarchy::build_with_order(&path_graph(), &[1, 0, 2]);
        assert_eq!(ch.rank(), &[1, 0, 2]);
        assert_eq!(ch.num_shortcuts(), 1);
        let mut up = ch.up_edges();
        up.sort_unstable();
        assert_eq!(up, vec![(0, 2, 3), (1, 2, 2)]);
        assert_eq!(ch.down_edges(), vec![(0, 1, 1)]);
        let shortcut = (0..ch.up().num_edges() as EdgeId)
            .map(|e| ch.up_arc_id(e))
            .find(|&a| matches!(ch.arcs()[a as usize].origin, ArcOrigin::Shortcut(..)))
            .unwrap();
        assert_eq!(ch.unpack_arc(shortcut), vec![0, 1]);
        for (x, y, _) in up.iter().copied().chain(ch.down_edges()) {
            assert_ne!(ch.level()[x as usize], ch.level()[y as usize]);
        }
    }

    #[test]
    fn single_node() {
        let g = Graph::build(1, &[]).unwrap();
        let ch = ContractionHierarchy::build(&g);
        assert_eq!(ch.up().num_edges(), 0);
        assert_eq!(ch.down_reversed().num_edges(), 0);
        assert_eq!(ch.rank(), &[0]);
    }

    #[test]
    fn rank_is_a_permutation_and_levels_separate_arcs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let n = rng.gen_range(1..40);
            let g = random_graph(&mut rng, n);
            let ch = ContractionHierarchy::build(&g);
            let mut ranks = ch.rank().to_vec();
            ranks.sort_unstable();
            assert_eq!(ranks, (0..n as u32).collect::<Vec<_>>());
            for (x, y, _) in ch.up_edges() {
                assert!(ch.rank()[x as usize] < ch.rank()[y as usize]);
                assert!(ch.level()[x as usize] < ch.level()[y as usize]);
            }
            for (x, y, _) in ch.down_edges() {
                assert!(ch.rank()[x as usize] > ch.rank()[y as usize]);
                assert!(ch.level()[x as usize] > ch.level()[y as usize]);
            }
        }
    }

    #[test]
    fn contraction_preserves_distances_among_remaining_nodes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(2..16);
            let g = random_graph(&mut rng, n);
            let full: Vec<Vec<Weight>> = (0..n as NodeId).map(|s| one_to_all(&g, s)).collect();
            let mut c = contraction::Contractor::new(&g, ContractionParams { witness_settle_limit: 3 });
            let mut order: Vec<NodeId> = (0..n as NodeId).collect();
            order.reverse();
            for &v in &order {
                c.contract(v);
                let edges: Vec<InputEdge> =
                    c.remaining_edges().into_iter().map(|(t, h, w)| InputEdge::new(t, h, w)).collect();
                let rest = Graph::build(n, &edges).unwrap();
                for s in (0..n as NodeId).filter(|&s| !c.is_contracted(s)) {
                    let d = one_to_all(&rest, s);
                    for t in (0..n as NodeId).filter(|&t| !c.is_contracted(t)) {
                        assert_eq!(d[t as usize], full[s as usize][t as usize]);
                    }
                }
            }
        }
    }

    #[test]
    fn arcs_unpack_to_paths_of_equal_weight() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(2..40);
            let g = random_graph(&mut rng, n);
            let tails = g.tails();
            let ch = ContractionHierarchy::build(&g);
            let all = (0..ch.up().num_edges() as EdgeId)
                .map(|e| ch.up_arc_id(e))
                .chain((0..ch.down_reversed().num_edges() as EdgeId).map(|e| ch.down_arc_id(e)));
            for a in all {
                let arc = ch.arcs()[a as usize];
                let edges = ch.unpack_arc(a);
                assert_eq!(tails[edges[0] as usize], arc.tail);
                assert_eq!(g.head(*edges.last().unwrap()), arc.head);
                for w in edges.windows(2) {
                    assert_eq!(g.head(w[0]), tails[w[1] as usize]);
                }
                let sum: Weight = edges.iter().map(|&e| g.weight(e)).sum();
                assert_eq!(sum, arc.weight);
                assert!(arc.weight < INFINITY);
            }
        }
    }
}
