//! Reference heuristics: ALT with landmarks chosen by the avoid strategy,
//! and an oracle holding exact distances to the target.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dijkstra::Dijkstra;
use crate::graph::{Graph, NodeId, Weight, INFINITY, INVALID_NODE};
use crate::potentials::Potential;

pub const DEFAULT_NUM_LANDMARKS: usize = 16;

/// Landmarks with exact distances from and to every node.
#[derive(Debug, Clone)]
pub struct LandmarkSet {
    landmarks: Vec<NodeId>,
    /// `from[x * k + i]` = dist(L_i, x)
    from: Vec<Weight>,
    /// `to[x * k + i]` = dist(x, L_i)
    to: Vec<Weight>,
}

impl LandmarkSet {
    /// Picks `k` landmarks with the avoid strategy, each grown from a random
    /// root drawn from a generator seeded with `seed`. `k` larger than the
    /// node count is clamped.
    pub fn avoid(graph: &Graph, k: usize, seed: u64) -> Self {
        let n = graph.num_nodes();
        let k = if k > n {
            log::warn!("{k} landmarks requested for {n} nodes, using {n}");
            n
        } else {
            k
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let roots: Vec<NodeId> = (0..k).map(|_| rng.gen_range(0..n) as NodeId).collect();
        Self::avoid_from_roots(graph, &roots)
    }

    /// One avoid step per root: grow a shortest-path tree from the root,
    /// weigh every node by how much the current landmarks underestimate its
    /// distance from the root, sum the weights per subtree (zero for subtrees
    /// that already contain a landmark) and walk from the root to a leaf
    /// always taking the heaviest child. The leaf becomes the next landmark.
    pub fn avoid_from_roots(graph: &Graph, roots: &[NodeId]) -> Self {
        let n = graph.num_nodes();
        let reverse = graph.reverse();
        let mut set = LandmarkSet { landmarks: Vec::new(), from: Vec::new(), to: Vec::new() };
        let mut dijkstra = Dijkstra::new(n);
        let mut is_landmark = vec![false; n];
        for &root in roots {
            dijkstra.run(graph, root);
            let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
            for x in 0..n as NodeId {
                let p = dijkstra.parent(x);
                if p != INVALID_NODE {
                    children[p as usize].push(x);
                }
            }
            // post-order over the tree
            let mut order = Vec::new();
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                order.push(x);
                stack.extend(children[x as usize].iter().copied());
            }
            let mut size = vec![0u64; n];
            let mut covered = vec![false; n];
            for &x in order.iter().rev() {
                let lb = set.lower_bound(root, x);
                let d = dijkstra.distance(x);
                let mut s = (d - lb.min(d)) as u64;
                let mut c = is_landmark[x as usize];
                for &y in &children[x as usize] {
                    s += size[y as usize];
                    c |= covered[y as usize];
                }
                covered[x as usize] = c;
                size[x as usize] = if c { 0 } else { s };
            }
            let mut leaf = root;
            while let Some(&best) = children[leaf as usize].iter().max_by_key(|&&y| (size[y as usize], std::cmp::Reverse(y))) {
                leaf = best;
            }
            if is_landmark[leaf as usize] {
                // every branch already covered; fall back to the farthest free node,
                // or any free node if the tree has none
                let in_tree =
                    order.iter().copied().filter(|&x| !is_landmark[x as usize]).max_by_key(|&x| (dijkstra.distance(x), std::cmp::Reverse(x)));
                match in_tree.or_else(|| (0..n as NodeId).find(|&x| !is_landmark[x as usize])) {
                    Some(x) => leaf = x,
                    None => continue,
                }
            }
            is_landmark[leaf as usize] = true;
            set.add(graph, &reverse, leaf, &mut dijkstra);
        }
        set
    }

    /// Tables for a given landmark list.
    pub fn from_landmarks(graph: &Graph, landmarks: &[NodeId]) -> Self {
        let reverse = graph.reverse();
        let mut dijkstra = Dijkstra::new(graph.num_nodes());
        let mut set = LandmarkSet { landmarks: Vec::new(), from: Vec::new(), to: Vec::new() };
        for &l in landmarks {
            set.add(graph, &reverse, l, &mut dijkstra);
        }
        set
    }

    fn add(&mut self, graph: &Graph, reverse: &Graph, landmark: NodeId, dijkstra: &mut Dijkstra) {
        let n = graph.num_nodes();
        let k = self.landmarks.len();
        let mut from = Vec::with_capacity(n * (k + 1));
        let mut to = Vec::with_capacity(n * (k + 1));
        dijkstra.run(graph, landmark);
        let d_from = dijkstra.distances();
        dijkstra.run(reverse, landmark);
        let d_to = dijkstra.distances();
        for x in 0..n {
            from.extend_from_slice(&self.from[x * k..(x + 1) * k]);
            from.push(d_from[x]);
            to.extend_from_slice(&self.to[x * k..(x + 1) * k]);
            to.push(d_to[x]);
        }
        self.landmarks.push(landmark);
        self.from = from;
        self.to = to;
    }

    pub fn landmarks(&self) -> &[NodeId] {
        &self.landmarks
    }

    pub fn len(&self) -> usize {
        self.landmarks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.landmarks.is_empty()
    }

    pub fn dist_from(&self, landmark: usize, node: NodeId) -> Weight {
        self.from[node as usize * self.len() + landmark]
    }

    pub fn dist_to(&self, landmark: usize, node: NodeId) -> Weight {
        self.to[node as usize * self.len() + landmark]
    }

    fn rows(&self, node: NodeId) -> (&[Weight], &[Weight]) {
        let k = self.len();
        let x = node as usize;
        (&self.from[x * k..(x + 1) * k], &self.to[x * k..(x + 1) * k])
    }

    /// Triangle-inequality lower bound on dist(x, t). INFINITY when some
    /// landmark proves that `t` is unreachable from `x`.
    pub fn lower_bound(&self, x: NodeId, t: NodeId) -> Weight {
        let (from_x, to_x) = self.rows(x);
        let (from_t, to_t) = self.rows(t);
        bound(from_x, to_x, from_t, to_t)
    }
}

#[inline]
fn bound(from_x: &[Weight], to_x: &[Weight], from_t: &[Weight], to_t: &[Weight]) -> Weight {
    let mut best = 0;
    for i in 0..from_x.len() {
        // dist(x, L) <= dist(x, t) + dist(t, L)
        if to_t[i] < INFINITY {
            if to_x[i] >= INFINITY {
                return INFINITY;
            }
            best = best.max(to_x[i].saturating_sub(to_t[i]));
        }
        // dist(L, t) <= dist(L, x) + dist(x, t)
        if from_x[i] < INFINITY {
            if from_t[i] >= INFINITY {
                return INFINITY;
            }
            best = best.max(from_t[i].saturating_sub(from_x[i]));
        }
    }
    best
}

/// ALT potential using all landmarks of a set.
#[derive(Debug, Clone)]
pub struct AltPotential<'a> {
    set: &'a LandmarkSet,
    target_from: Vec<Weight>,
    target_to: Vec<Weight>,
}

impl<'a> AltPotential<'a> {
    pub fn new(set: &'a LandmarkSet) -> Self {
        AltPotential { set, target_from: Vec::new(), target_to: Vec::new() }
    }
}

impl Potential for AltPotential<'_> {
    fn init(&mut self, target: NodeId) {
        let (from, to) = self.set.rows(target);
        self.target_from = from.to_vec();
        self.target_to = to.to_vec();
    }

    fn potential(&mut self, node: NodeId) -> Weight {
        let (from_x, to_x) = self.set.rows(node);
        bound(from_x, to_x, &self.target_from, &self.target_to)
    }
}

/// Exact distances to the target from a full backward Dijkstra.
///
/// [`OraclePotential::prepare`] does the backward search; a later `init` for
/// the same target is free, so the table fill can be kept out of query
/// timings.
#[derive(Debug, Clone)]
pub struct OraclePotential {
    reverse: Graph,
    dijkstra: Dijkstra,
    target: Option<NodeId>,
}

impl OraclePotential {
    /// `graph` carries the lower-bound weights.
    pub fn new(graph: &Graph) -> Self {
        OraclePotential { reverse: graph.reverse(), dijkstra: Dijkstra::new(graph.num_nodes()), target: None }
    }

    pub fn prepare(&mut self, target: NodeId) {
        if self.target != Some(target) {
            self.dijkstra.run(&self.reverse, target);
            self.target = Some(target);
        }
    }

    pub fn table(&self) -> Vec<Weight> {
        self.dijkstra.distances()
    }
}

impl Potential for OraclePotential {
    fn init(&mut self, target: NodeId) {
        self.prepare(target)
    }

    #[inline]
    fn potential(&mut self, node: NodeId) -> Weight {
        self.dijkstra.distance(node)
    }
}
