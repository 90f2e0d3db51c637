//! Immutable simple undirected graphs over `0..n`, blow-up constructors and
//! the base-graph profile shared by the testers and the exact oracles.

mod io;
mod partition;
mod profile;

pub use io::{format_certificate, parse_certificate, read_graph, write_graph, GraphFile};
pub use partition::{CollectionView, PartLabel, Partitioning};
pub use profile::{BaseGraphProfile, WitnessBound};

use crate::error::{Error, Result};
use std::fmt;

/// Read access to the adjacency relation of a simple graph on `0..vertex_count()`.
///
/// Implemented by [`Graph`] and by implicit instances such as
/// [`CollectionView`], which describe huge blow-up collections by their labels.
pub trait Adjacency: Sync {
    fn vertex_count(&self) -> usize;

    /// Callers guarantee `u != v` and both endpoints in range.
    fn adjacent(&self, u: usize, v: usize) -> bool;
}

impl<A: Adjacency + ?Sized> Adjacency for &A {
    fn vertex_count(&self) -> usize {
        (**self).vertex_count()
    }
    fn adjacent(&self, u: usize, v: usize) -> bool {
        (**self).adjacent(u, v)
    }
}

/// Index of the unordered pair `{u, v}` (`u != v`) in the packed lower triangle.
#[inline]
pub fn pair_index(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

/// Number of unordered pairs on `n` vertices.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Simple undirected graph with a packed triangular adjacency bit array.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    bits: Vec<u64>,
    edges: usize,
}

impl Graph {
    pub(crate) fn with_vertices(n: usize) -> Self {
        Graph {
            n,
            bits: vec![0; pair_count(n).div_ceil(64)],
            edges: 0,
        }
    }

    /// Sets `{u, v}` and reports whether it was newly added.
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        debug_assert!(u != v && u < self.n && v < self.n);
        let i = pair_index(u, v);
        let mask = 1u64 << (i % 64);
        let word = &mut self.bits[i / 64];
        if *word & mask != 0 {
            return false;
        }
        *word |= mask;
        self.edges += 1;
        true
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let i = pair_index(u, v);
        let mask = 1u64 << (i % 64);
        let word = &mut self.bits[i / 64];
        if *word & mask == 0 {
            return false;
        }
        *word &= !mask;
        self.edges -= 1;
        true
    }

    pub fn empty(n: usize) -> Self {
        Self::with_vertices(n)
    }

    /// Builds a graph from an edge list, rejecting self-loops, out-of-range
    /// endpoints and repeated pairs.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(Error::format(k + 1, format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::format(
                    k + 1,
                    format!("edge ({u}, {v}) has an endpoint outside 0..{n}"),
                ));
            }
            if !g.insert_edge(u, v) {
                return Err(Error::format(k + 1, format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(g)
    }

    /// Graph whose pair `{i, j}` is present iff `f(i, j)`; `f` is called once
    /// per pair with `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::with_vertices(n);
        for j in 1..n {
            for i in 0..j {
                if f(i, j) {
                    g.insert_edge(i, j);
                }
            }
        }
        g
    }

    /// Induced copy of an adjacency oracle on `vertices` (in the given order).
    pub fn from_adjacency<A: Adjacency + ?Sized>(adj: &A, vertices: &[usize]) -> Self {
        Self::from_fn(vertices.len(), |i, j| adj.adjacent(vertices[i], vertices[j]))
    }

    /// Decodes a graph from a bit mask over pairs in [`pair_index`] order.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        assert!(pair_count(n) <= 64, "pair mask supports at most 11 vertices");
        let mut g = Self::with_vertices(n);
        for i in 0..pair_count(n) {
            if mask >> i & 1 == 1 {
                g.bits[i / 64] |= 1 << (i % 64);
                g.edges += 1;
            }
        }
        g
    }

    pub fn pair_mask(&self) -> u64 {
        assert!(pair_count(self.n) <= 64, "pair mask supports at most 11 vertices");
        self.bits.first().copied().unwrap_or(0)
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_fn(n, |i, j| j == i + 1 || (i == 0 && j == n - 1))
    }

    pub fn path(n: usize) -> Self {
        Self::from_fn(n, |i, j| j == i + 1)
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_fn(leaves + 1, |i, _| i == 0)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_fn(a + b, |i, j| i < a && j >= a)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// `false` for `u == v`.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let i = pair_index(u, v);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_edge(u, v)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(u, v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (u, v) in self.edges() {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |v| {
            (0..v)
                .filter(move |&u| self.has_edge(u, v))
                .map(move |u| (u, v))
        })
    }

    /// Open neighborhoods as bitset rows of `n.div_ceil(64)` words each.
    pub fn neighborhood_rows(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; self.n];
        for (u, v) in self.edges() {
            rows[u][v / 64] |= 1 << (v % 64);
            rows[v][u / 64] |= 1 << (u % 64);
        }
        rows
    }

    /// Copy of the graph with the pair `{u, v}` flipped.
    pub fn with_pair_toggled(&self, u: usize, v: usize) -> Result<Self> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        if !g.remove_edge(u, v) {
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::arg(format!(
                "({u}, {v}) is not a pair of distinct vertices in 0..{}",
                self.n
            )));
        }
        Ok(())
    }

    /// Replaces vertex `i` of `self` (the base graph) by an independent set of
    /// `sizes[i]` vertices, joining clusters along the base edges. Vertices are
    /// numbered cluster by cluster.
    pub fn blow_up(&self, sizes: &[usize]) -> Result<(Graph, Partitioning)> {
        if sizes.len() != self.n {
            return Err(Error::arg(format!(
                "blow-up needs {} cluster sizes, got {}",
                self.n,
                sizes.len()
            )));
        }
        let parts: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect();
        let g = Graph::from_fn(parts.len(), |a, b| self.has_edge(parts[a], parts[b]));
        Ok((g, Partitioning::single(parts)))
    }

    /// Disjoint union; part `k` occupies the index range following part `k-1`.
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let total = parts.iter().map(Graph::n).sum();
        let mut g = Graph::with_vertices(total);
        let mut offset = 0;
        for p in parts {
            for (u, v) in p.edges() {
                g.insert_edge(u + offset, v + offset);
            }
            offset += p.n;
        }
        g
    }

    /// Subgraph induced by `vertices`; the result keeps ascending original order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(Error::arg(format!("vertex {bad} outside 0..{}", self.n)));
        }
        Ok(Graph::from_fn(sorted.len(), |i, j| {
            self.has_edge(sorted[i], sorted[j])
        }))
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let rows = self.neighborhood_rows();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for (w, &word) in rows[x].iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let y = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        if !seen[y] {
                            seen[y] = true;
                            comp.push(y);
                            stack.push(y);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// `|Γ(u) △ Γ(w)|`.
    pub fn neighborhood_symdiff_size(&self, u: usize, w: usize) -> Result<usize> {
        if u >= self.n || w >= self.n {
            return Err(Error::arg(format!("vertex outside 0..{}", self.n)));
        }
        Ok((0..self.n)
            .filter(|&x| self.has_edge(u, x) != self.has_edge(w, x))
            .count())
    }

    pub fn to_text(&self) -> String {
        io::to_text(self)
    }

    pub fn parse(text: &str) -> Result<Graph> {
        Ok(io::parse(text)?.graph)
    }
}

impl Adjacency for Graph {
    #[inline]
    fn vertex_count(&self) -> usize {
        self.n
    }
    #[inline]
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
