//! Query scratch containers: generation-stamped arrays and an addressable
//! min-heap.

use crate::graph::{NodeId, Weight};

/// Array with O(1) logical reset. An entry written before the last
/// [`TimestampedVec::reset`] reads as the default value.
#[derive(Debug, Clone)]
pub struct TimestampedVec<T> {
    data: Vec<T>,
    stamps: Vec<u32>,
    current: u32,
    default: T,
}

impl<T: Copy> TimestampedVec<T> {
    pub fn new(len: usize, default: T) -> Self {
        TimestampedVec { data: vec![default; len], stamps: vec![0; len], current: 1, default }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn reset(&mut self) {
        self.current = self.current.wrapping_add(1);
        if self.current == 0 {
            // stamp space exhausted, clear physically once
            self.stamps.iter_mut().for_each(|s| *s = 0);
            self.current = 1;
        }
    }

    #[inline(always)]
    pub fn get(&self, idx: usize) -> T {
        if self.stamps[idx] == self.current {
            self.data[idx]
        } else {
            self.default
        }
    }

    #[inline(always)]
    pub fn set(&mut self, idx: usize, value: T) {
        self.stamps[idx] = self.current;
        self.data[idx] = value;
    }

    #[inline(always)]
    pub fn is_set(&self, idx: usize) -> bool {
        self.stamps[idx] == self.current
    }
}

const NOT_IN_HEAP: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct HeapEntry {
    key: Weight,
    node: NodeId,
}

/// Binary min-heap over node ids with decrease-key. Equal keys pop in
/// ascending node id order, so search statistics are deterministic.
#[derive(Debug, Clone)]
pub struct IndexedMinHeap {
    heap: Vec<HeapEntry>,
    position: Vec<u32>,
}

impl IndexedMinHeap {
    pub fn new(num_nodes: usize) -> Self {
        IndexedMinHeap { heap: Vec::new(), position: vec![NOT_IN_HEAP; num_nodes] }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Empties the heap in O(len).
    pub fn clear(&mut self) {
        for entry in self.heap.drain(..) {
            self.position[entry.node as usize] = NOT_IN_HEAP;
        }
    }

    #[inline(always)]
    pub fn contains(&self, node: NodeId) -> bool {
        self.position[node as usize] != NOT_IN_HEAP
    }

    pub fn key(&self, node: NodeId) -> Option<Weight> {
        let pos = self.position[node as usize];
        (pos != NOT_IN_HEAP).then(|| self.heap[pos as usize].key)
    }

    pub fn peek(&self) -> Option<(Weight, NodeId)> {
        self.heap.first().map(|e| (e.key, e.node))
    }

    pub fn push(&mut self, node: NodeId, key: Weight) {
        debug_assert!(!self.contains(node));
        let pos = self.heap.len();
        self.heap.push(HeapEntry { key, node });
        self.position[node as usize] = pos as u32;
        self.sift_up(pos);
    }

    /// Lowers the key of a queued node. Keys that would increase are ignored.
    pub fn decrease_key(&mut self, node: NodeId, key: Weight) {
        let pos = self.position[node as usize];
        debug_assert!(pos != NOT_IN_HEAP);
        let pos = pos as usize;
        if key < self.heap[pos].key {
            self.heap[pos].key = key;
            self.sift_up(pos);
        }
    }

    /// Pushes or decreases. Returns true if the node was newly inserted.
    pub fn push_or_decrease(&mut self, node: NodeId, key: Weight) -> bool {
        if self.contains(node) {
            self.decrease_key(node, key);
            false
        } else {
            self.push(node, key);
            true
        }
    }

    pub fn pop(&mut self) -> Option<(Weight, NodeId)> {
        if self.heap.is_empty() {
            return None;
        }
        let last = self.heap.len() - 1;
        self.swap(0, last);
        let top = self.heap.pop().unwrap();
        self.position[top.node as usize] = NOT_IN_HEAP;
        if !self.heap.is_empty() {
            self.sift_down(0);
        }
        Some((top.key, top.node))
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.position[self.heap[a].node as usize] = a as u32;
        self.position[self.heap[b].node as usize] = b as u32;
    }

    fn sift_up(&mut self, mut pos: usize) {
        while pos > 0 {
            let parent = (pos - 1) / 2;
            if self.heap[pos] < self.heap[parent] {
                self.swap(pos, parent);
                pos = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut pos: usize) {
        loop {
            let left = 2 * pos + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let child = if right < self.heap.len() && self.heap[right] < self.heap[left] { right } else { left };
            if self.heap[child] < self.heap[pos] {
                self.swap(pos, child);
                pos = child;
            } else {
                break;
            }
        }
    }
}
