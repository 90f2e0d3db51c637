use super::{Adjacency, Graph};

/// Position of a vertex in a blow-up collection: its group `V^i` and the
/// base-graph vertex (part) it is a copy of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartLabel {
    pub group: usize,
    pub part: usize,
}

/// Certificate that a graph is a blow-up (one group) or a blow-up
/// collection of a base graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partitioning {
    labels: Vec<PartLabel>,
}

impl Partitioning {
    pub fn new(labels: Vec<PartLabel>) -> Self {
        Partitioning { labels }
    }

    /// Single blow-up: every vertex in group 0.
    pub fn single(parts: Vec<usize>) -> Self {
        Partitioning {
            labels: parts
                .into_iter()
                .map(|part| PartLabel { group: 0, part })
                .collect(),
        }
    }

    pub fn labels(&self) -> &[PartLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> PartLabel {
        self.labels[v]
    }

    pub fn group_count(&self) -> usize {
        self.labels.iter().map(|l| l.group + 1).max().unwrap_or(0)
    }

    /// Checks the certificate edge by edge against `g` as a collection of
    /// blow-ups of `h`.
    pub fn verify_collection(&self, g: &Graph, h: &Graph) -> bool {
        if self.labels.len() != g.n() || self.labels.iter().any(|l| l.part >= h.n()) {
            return false;
        }
        let view = CollectionView::new(h, self);
        (1..g.n()).all(|v| (0..v).all(|u| g.has_edge(u, v) == view.adjacent(u, v)))
    }

    /// As [`verify_collection`](Self::verify_collection), additionally
    /// requiring a single group.
    pub fn verify_blowup(&self, g: &Graph, h: &Graph) -> bool {
        self.labels.iter().all(|l| l.group == 0) && self.verify_collection(g, h)
    }

    /// The graph this labeling describes.
    pub fn realize(&self, h: &Graph) -> Graph {
        let view = CollectionView::new(h, self);
        Graph::from_fn(self.labels.len(), |u, v| view.adjacent(u, v))
    }
}

/// Implicit blow-up collection given by a base graph and vertex labels. Used
/// as a hidden oracle when the instance is too large to store as a matrix.
#[derive(Clone, Copy, Debug)]
pub struct CollectionView<'a> {
    base: &'a Graph,
    labels: &'a Partitioning,
}

impl<'a> CollectionView<'a> {
    pub fn new(base: &'a Graph, labels: &'a Partitioning) -> Self {
        CollectionView { base, labels }
    }
}

impl Adjacency for CollectionView<'_> {
    fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    fn adjacent(&self, u: usize, v: usize) -> bool {
        let (a, b) = (self.labels.labels[u], self.labels.labels[v]);
        a.group == b.group && self.base.has_edge(a.part, b.part)
    }
}
