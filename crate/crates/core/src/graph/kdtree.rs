//! Exact kd-tree over a point cloud for k-nearest and range queries.
//!
//! Both query kinds are exact: pruning only discards a subtree when every
//! point in it is strictly farther than the current cutoff, so distance ties
//! are always surfaced and resolved by vertex index rather than by tree
//! layout.

use crate::cloud::PointCloud;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const LEAF_SIZE: usize = 16;

enum Node {
    Leaf {
        start: usize,
        end: usize,
    },
    Split {
        axis: usize,
        value: f64,
        left: usize,
        right: usize,
    },
}

pub(crate) struct KdTree<'a> {
    cloud: &'a PointCloud,
    order: Vec<usize>,
    nodes: Vec<Node>,
    root: usize,
}

#[derive(PartialEq)]
struct HeapItem {
    d2: f64,
    idx: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap ordered by (distance, index); the top is the current
        // worst candidate and the first to be evicted.
        self.d2
            .total_cmp(&other.d2)
            .then(self.idx.cmp(&other.idx))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

impl<'a> KdTree<'a> {
    pub fn build(cloud: &'a PointCloud) -> Self {
        let mut order: Vec<usize> = (0..cloud.len()).collect();
        let mut nodes = Vec::new();
        let n = order.len();
        let root = Self::build_rec(cloud, &mut order, &mut nodes, 0, n);
        Self {
            cloud,
            order,
            nodes,
            root,
        }
    }

    fn build_rec(
        cloud: &PointCloud,
        order: &mut [usize],
        nodes: &mut Vec<Node>,
        start: usize,
        end: usize,
    ) -> usize {
        let len = end - start;
        if len <= LEAF_SIZE {
            nodes.push(Node::Leaf { start, end });
            return nodes.len() - 1;
        }
        // Split on the axis with the widest extent over this subset.
        let dim = cloud.dim();
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for &i in &order[start..end] {
            for (k, &v) in cloud.point(i).iter().enumerate() {
                lo[k] = lo[k].min(v);
                hi[k] = hi[k].max(v);
            }
        }
        let axis = (0..dim)
            .max_by(|&a, &b| (hi[a] - lo[a]).total_cmp(&(hi[b] - lo[b])))
            .unwrap();
        let mid = start + len / 2;
        order[start..end].select_nth_unstable_by(len / 2, |&a, &b| {
            cloud.point(a)[axis]
                .total_cmp(&cloud.point(b)[axis])
                .then(a.cmp(&b))
        });
        let value = cloud.point(order[mid])[axis];
        let me = nodes.len();
        nodes.push(Node::Leaf { start: 0, end: 0 }); // placeholder
        let left = Self::build_rec(cloud, order, nodes, start, mid);
        let right = Self::build_rec(cloud, order, nodes, mid, end);
        nodes[me] = Node::Split {
            axis,
            value,
            left,
            right,
        };
        me
    }

    /// The `k` nearest points to vertex `query` excluding itself, sorted by
    /// (distance, index). Ties at the cutoff distance keep the lower index.
    pub fn k_nearest(&self, query: usize, k: usize) -> Vec<(usize, f64)> {
        let q = self.cloud.point(query);
        let mut heap: BinaryHeap<HeapItem> = BinaryHeap::with_capacity(k + 1);
        self.knn_rec(self.root, q, query, k, &mut heap);
        let mut out: Vec<(usize, f64)> = heap
            .into_iter()
            .map(|h| (h.idx, h.d2.sqrt()))
            .collect();
        out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        out
    }

    fn knn_rec(
        &self,
        node: usize,
        q: &[f64],
        skip: usize,
        k: usize,
        heap: &mut BinaryHeap<HeapItem>,
    ) {
        match &self.nodes[node] {
            Node::Leaf { start, end } => {
                for &i in &self.order[*start..*end] {
                    if i == skip {
                        continue;
                    }
                    let d2 = dist2(q, self.cloud.point(i));
                    let cand = HeapItem { d2, idx: i };
                    if heap.len() < k {
                        heap.push(cand);
                    } else if let Some(worst) = heap.peek() {
                        if cand.cmp(worst) == Ordering::Less {
                            heap.pop();
                            heap.push(cand);
                        }
                    }
                }
            }
            Node::Split {
                axis,
                value,
                left,
                right,
            } => {
                let diff = q[*axis] - value;
                let (near, far) = if diff < 0.0 {
                    (*left, *right)
                } else {
                    (*right, *left)
                };
                self.knn_rec(near, q, skip, k, heap);
                let prune = heap.len() == k
                    && heap
                        .peek()
                        .map(|w| diff * diff > w.d2)
                        .unwrap_or(false);
                if !prune {
                    self.knn_rec(far, q, skip, k, heap);
                }
            }
        }
    }

    /// All points within distance `radius` of vertex `query`, excluding the
    /// query itself, in index order.
    pub fn within(&self, query: usize, radius: f64) -> Vec<(usize, f64)> {
        let q = self.cloud.point(query);
        let r2 = radius * radius;
        let mut out = Vec::new();
        self.range_rec(self.root, q, query, radius, r2, &mut out);
        out.sort_by_key(|&(i, _)| i);
        out
    }

    fn range_rec(
        &self,
        node: usize,
        q: &[f64],
        skip: usize,
        radius: f64,
        r2: f64,
        out: &mut Vec<(usize, f64)>,
    ) {
        match &self.nodes[node] {
            Node::Leaf { start, end } => {
                for &i in &self.order[*start..*end] {
                    if i == skip {
                        continue;
                    }
                    let d2 = dist2(q, self.cloud.point(i));
                    if d2 <= r2 {
                        out.push((i, d2.sqrt()));
                    }
                }
            }
            Node::Split {
                axis,
                value,
                left,
                right,
            } => {
                let diff = q[*axis] - value;
                if diff <= radius {
                    self.range_rec(*left, q, skip, radius, r2, out);
                }
                if -diff <= radius {
                    self.range_rec(*right, q, skip, radius, r2, out);
                }
            }
        }
    }
}
