//! Largest biconnected component of the underlying undirected graph and the
//! dead-end components hanging off it.
//!
//! Every connected component of the graph minus the core touches the core in
//! at most one node, its attachment. A path that leaves the core into such a
//! component can only come back through the attachment, so a query never has
//! to enter components other than those containing its endpoints.

use crate::graph::{Graph, NodeId, INVALID_NODE};

/// Component id reported for core nodes.
pub const CORE_COMPONENT: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    core: Vec<bool>,
    component: Vec<u32>,
    /// Per non-core component: the core node it hangs off, if any.
    component_attachment: Vec<NodeId>,
}

impl CoreDecomposition {
    /// Finds the biconnected component with the most nodes; among equally
    /// large ones the one found first by a depth-first search started at
    /// node 0, then 1, ... is taken.
    pub fn compute(graph: &Graph) -> Self {
        let n = graph.num_nodes();
        let adj = undirected_adjacency(graph);
        let core = largest_biconnected_component(&adj, n);

        let mut component = vec![CORE_COMPONENT; n];
        let mut component_attachment = Vec::new();
        let mut stack = Vec::new();
        for root in 0..n {
            if core[root] || component[root] != CORE_COMPONENT {
                continue;
            }
            let id = component_attachment.len() as u32;
            let mut attachment = INVALID_NODE;
            component[root] = id;
            stack.push(root as NodeId);
            while let Some(x) = stack.pop() {
                for &y in &adj[x as usize] {
                    if core[y as usize] {
                        debug_assert!(attachment == INVALID_NODE || attachment == y);
                        attachment = y;
                    } else if component[y as usize] == CORE_COMPONENT {
                        component[y as usize] = id;
                        stack.push(y);
                    }
                }
            }
            component_attachment.push(attachment);
        }
        CoreDecomposition { core, component, component_attachment }
    }

    pub fn num_nodes(&self) -> usize {
        self.core.len()
    }

    pub fn is_core(&self, node: NodeId) -> bool {
        self.core[node as usize]
    }

    pub fn core_filter(&self) -> &[bool] {
        &self.core
    }

    pub fn core_size(&self) -> usize {
        self.core.iter().filter(|&&c| c).count()
    }

    /// Id of the non-core component containing `node`, or [`CORE_COMPONENT`].
    pub fn component(&self, node: NodeId) -> u32 {
        self.component[node as usize]
    }

    pub fn num_components(&self) -> usize {
        self.component_attachment.len()
    }

    /// Core node that `node`'s component hangs off. Core nodes are their own
    /// attachment; components not connected to the core have none
    /// ([`INVALID_NODE`]).
    pub fn attachment(&self, node: NodeId) -> NodeId {
        match self.component[node as usize] {
            CORE_COMPONENT => node,
            c => self.component_attachment[c as usize],
        }
    }
}

fn undirected_adjacency(graph: &Graph) -> Vec<Vec<NodeId>> {
    let mut adj = vec![Vec::new(); graph.num_nodes()];
    for (tail, head) in graph.tails().into_iter().zip(graph.heads().iter().copied()) {
        if tail != head {
            adj[tail as usize].push(head);
            adj[head as usize].push(tail);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Iterative Hopcroft-Tarjan with an edge stack.
fn largest_biconnected_component(adj: &[Vec<NodeId>], n: usize) -> Vec<bool> {
    const UNVISITED: u32 = u32::MAX;
    let mut disc = vec![UNVISITED; n];
    let mut low = vec![0u32; n];
    let mut time = 0u32;
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    // (node, parent, next neighbor index)
    let mut frames: Vec<(NodeId, NodeId, usize)> = Vec::new();

    let mut mark = vec![u32::MAX; n];
    let mut best: Vec<NodeId> = Vec::new();
    let mut current: Vec<NodeId> = Vec::new();
    let mut num_found = 0u32;

    for root in 0..n as NodeId {
        if disc[root as usize] != UNVISITED {
            continue;
        }
        disc[root as usize] = time;
        low[root as usize] = time;
        time += 1;
        frames.push((root, INVALID_NODE, 0));
        while let Some(frame) = frames.last_mut() {
            let (u, parent, idx) = *frame;
            if idx < adj[u as usize].len() {
                frame.2 += 1;
                let v = adj[u as usize][idx];
                if disc[v as usize] == UNVISITED {
                    edges.push((u, v));
                    disc[v as usize] = time;
                    low[v as usize] = time;
                    time += 1;
                    frames.push((v, u, 0));
                } else if v != parent && disc[v as usize] < disc[u as usize] {
                    edges.push((u, v));
                    low[u as usize] = low[u as usize].min(disc[v as usize]);
                }
                continue;
            }
            frames.pop();
            if parent == INVALID_NODE {
                continue;
            }
            let p = parent as usize;
            low[p] = low[p].min(low[u as usize]);
            if low[u as usize] >= disc[p] {
                // p separates the subtree of u: pop one component
                current.clear();
                while let Some((a, b)) = edges.pop() {
                    for x in [a, b] {
                        if mark[x as usize] != num_found {
                            mark[x as usize] = num_found;
                            current.push(x);
                        }
                    }
                    if (a, b) == (parent, u) {
                        break;
                    }
                }
                num_found += 1;
                if current.len() > best.len() {
                    std::mem::swap(&mut best, &mut current);
                }
            }
        }
    }

    let mut core = vec![false; n];
    for x in best {
        core[x as usize] = true;
    }
    core
}
