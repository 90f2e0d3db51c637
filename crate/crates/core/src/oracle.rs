//! Query access to a hidden graph. Adaptive sessions answer probes one at a
//! time; non-adaptive plans only answer once every pair has been committed
//! and the plan sealed. Both account distinct unordered pairs.

use crate::error::{Error, Result};
use crate::graph::{pair_count, pair_index, Adjacency};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use std::cell::Cell;
use std::collections::HashSet;
use std::fmt;

/// Graphs with at most this many pairs get a bitmap ledger.
const DENSE_LEDGER_PAIRS: usize = 1 << 25;

#[derive(Clone)]
enum Store {
    Dense(Vec<u64>),
    Sparse(HashSet<u64>),
}

/// Set of distinct unordered pairs that have been queried.
#[derive(Clone)]
pub struct QueryLedger {
    n: usize,
    store: Store,
    count: usize,
}

impl QueryLedger {
    pub fn new(n: usize) -> Self {
        let pairs = pair_count(n);
        let store = if pairs <= DENSE_LEDGER_PAIRS {
            Store::Dense(vec![0; pairs.div_ceil(64)])
        } else {
            Store::Sparse(HashSet::new())
        };
        QueryLedger { n, store, count: 0 }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Records `{u, v}`; returns `true` if the pair is new.
    #[inline]
    fn record(&mut self, u: usize, v: usize) -> bool {
        let i = pair_index(u, v);
        let fresh = match &mut self.store {
            Store::Dense(bits) => {
                let mask = 1u64 << (i % 64);
                let fresh = bits[i / 64] & mask == 0;
                bits[i / 64] |= mask;
                fresh
            }
            Store::Sparse(set) => set.insert(i as u64),
        };
        self.count += fresh as usize;
        fresh
    }

    #[inline]
    pub fn contains(&self, u: usize, v: usize) -> bool {
        if u == v || u >= self.n || v >= self.n {
            return false;
        }
        let i = pair_index(u, v);
        match &self.store {
            Store::Dense(bits) => bits[i / 64] >> (i % 64) & 1 == 1,
            Store::Sparse(set) => set.contains(&(i as u64)),
        }
    }

    pub fn distinct_count(&self) -> usize {
        self.count
    }

    fn indices(&self) -> Vec<u64> {
        match &self.store {
            Store::Dense(bits) => {
                let mut out = Vec::with_capacity(self.count);
                for (w, &word) in bits.iter().enumerate() {
                    let mut b = word;
                    while b != 0 {
                        out.push((w * 64) as u64 + b.trailing_zeros() as u64);
                        b &= b - 1;
                    }
                }
                out
            }
            Store::Sparse(set) => {
                let mut out: Vec<u64> = set.iter().copied().collect();
                out.sort_unstable();
                out
            }
        }
    }

    /// Probed pairs as `(u, v)` with `u < v`, in canonical order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.indices()
            .into_iter()
            .map(|i| unpair(i as usize))
            .collect()
    }

    /// Adds every pair of `other` (same vertex count).
    pub fn merge(&mut self, other: &QueryLedger) {
        assert_eq!(self.n, other.n, "ledgers over different graphs");
        for (u, v) in other.pairs() {
            self.record(u, v);
        }
    }

    /// SHA-256 over the canonical pair list, hex encoded.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.n as u64).to_le_bytes());
        for i in self.indices() {
            hasher.update(i.to_le_bytes());
        }
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

fn unpair(i: usize) -> (usize, usize) {
    // largest v with v(v-1)/2 <= i
    let mut v = (((8 * i + 1) as f64).sqrt() as usize + 1) / 2;
    while v * (v - 1) / 2 > i {
        v -= 1;
    }
    while (v + 1) * v / 2 <= i {
        v += 1;
    }
    (i - v * (v - 1) / 2, v)
}

impl PartialEq for QueryLedger {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.count == other.count && self.indices() == other.indices()
    }
}

impl Eq for QueryLedger {}

impl fmt::Debug for QueryLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QueryLedger")
            .field("n", &self.n)
            .field("distinct", &self.count)
            .finish()
    }
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<()> {
    if u == v {
        return Err(Error::arg(format!("diagonal probe ({u}, {u})")));
    }
    if u >= n || v >= n {
        return Err(Error::arg(format!("probe ({u}, {v}) outside 0..{n}")));
    }
    Ok(())
}

fn check_vertices(n: usize, vs: &[usize]) -> Result<()> {
    match vs.iter().find(|&&v| v >= n) {
        Some(v) => Err(Error::arg(format!("vertex {v} outside 0..{n}"))),
        None => Ok(()),
    }
}

/// Draws `k` vertices uniformly with replacement and returns the distinct
/// ones, sorted. When `k >= n` the whole vertex set is returned.
pub fn sample_vertices<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    if k >= n {
        return (0..n).collect();
    }
    let mut seen = HashSet::with_capacity(k);
    for _ in 0..k {
        seen.insert(rng.random_range(0..n));
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adaptive access: each probe is answered immediately.
pub struct AdaptiveSession<'g, A: Adjacency + ?Sized> {
    graph: &'g A,
    ledger: QueryLedger,
    rng: ChaCha8Rng,
    seed: u64,
}

pub fn open_adaptive<A: Adjacency + ?Sized>(graph: &A, seed: u64) -> AdaptiveSession<'_, A> {
    AdaptiveSession {
        graph,
        ledger: QueryLedger::new(graph.vertex_count()),
        rng: rng_from_seed(seed),
        seed,
    }
}

impl<'g, A: Adjacency + ?Sized> AdaptiveSession<'g, A> {
    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn probe(&mut self, u: usize, v: usize) -> Result<bool> {
        check_pair(self.n(), u, v)?;
        self.ledger.record(u, v);
        Ok(self.graph.adjacent(u, v))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    pub fn into_ledger(self) -> QueryLedger {
        self.ledger
    }
}

/// Non-adaptive access. Pairs are committed first; answers become readable
/// only after [`seal`](Self::seal), and a sealed plan accepts no new pairs.
pub struct NonAdaptivePlan<'g, A: Adjacency + ?Sized> {
    graph: &'g A,
    committed: QueryLedger,
    sealed: bool,
    premature_reads: Cell<usize>,
}

pub fn open_plan<A: Adjacency + ?Sized>(graph: &A) -> NonAdaptivePlan<'_, A> {
    NonAdaptivePlan {
        graph,
        committed: QueryLedger::new(graph.vertex_count()),
        sealed: false,
        premature_reads: Cell::new(0),
    }
}

impl<'g, A: Adjacency + ?Sized> NonAdaptivePlan<'g, A> {
    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    fn ensure_open(&self) -> Result<()> {
        if self.sealed {
            Err(Error::PlanSealed)
        } else {
            Ok(())
        }
    }

    pub fn commit_pair(&mut self, u: usize, v: usize) -> Result<()> {
        self.ensure_open()?;
        check_pair(self.n(), u, v)?;
        self.committed.record(u, v);
        Ok(())
    }

    /// Commits every pair inside `set`.
    pub fn commit_clique(&mut self, set: &[usize]) -> Result<()> {
        self.ensure_open()?;
        check_vertices(self.n(), set)?;
        for (j, &v) in set.iter().enumerate() {
            for &u in &set[..j] {
                if u != v {
                    self.committed.record(u, v);
                }
            }
        }
        Ok(())
    }

    /// Commits every pair of `a × b` (diagonal pairs are skipped).
    pub fn commit_product(&mut self, a: &[usize], b: &[usize]) -> Result<()> {
        self.ensure_open()?;
        check_vertices(self.n(), a)?;
        check_vertices(self.n(), b)?;
        for &u in a {
            for &v in b {
                if u != v {
                    self.committed.record(u, v);
                }
            }
        }
        Ok(())
    }

    pub fn seal(&mut self) {
        self.sealed = true;
    }

    pub fn is_sealed(&self) -> bool {
        self.sealed
    }

    /// Answer for a committed pair of a sealed plan.
    pub fn answer(&self, u: usize, v: usize) -> Result<bool> {
        if !self.sealed {
            self.premature_reads.set(self.premature_reads.get() + 1);
            return Err(Error::PlanNotSealed);
        }
        check_pair(self.n(), u, v)?;
        if !self.committed.contains(u, v) {
            return Err(Error::Uncommitted(u, v));
        }
        Ok(self.graph.adjacent(u, v))
    }

    /// Number of answer requests made before sealing (all of which failed).
    pub fn premature_reads(&self) -> usize {
        self.premature_reads.get()
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.committed
    }

    pub fn into_ledger(self) -> QueryLedger {
        self.committed
    }
}

/// Commits `pairs` as one plan and returns the answers in input order.
/// Every pair is validated before any answer is released.
pub fn commit_plan<A: Adjacency + ?Sized>(
    graph: &A,
    pairs: &[(usize, usize)],
) -> Result<(Vec<bool>, QueryLedger)> {
    let mut plan = open_plan(graph);
    for &(u, v) in pairs {
        plan.commit_pair(u, v)?;
    }
    plan.seal();
    let answers = pairs
        .iter()
        .map(|&(u, v)| plan.answer(u, v))
        .collect::<Result<Vec<_>>>()?;
    Ok((answers, plan.into_ledger()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use proptest::prelude::*;

    #[test]
    fn adaptive_probes_and_dedup() {
        let g = Graph::cycle(4);
        let mut s = open_adaptive(&g, 7);
        assert_eq!(s.ledger().distinct_count(), 0);
        assert!(s.probe(0, 1).unwrap());
        assert_eq!(s.ledger().distinct_count(), 1);
        assert!(s.probe(1, 0).unwrap());
        assert_eq!(s.ledger().distinct_count(), 1);
        assert!(!s.probe(0, 2).unwrap());
        assert_eq!(s.ledger().distinct_count(), 2);
        assert!(s.probe(2, 2).is_err());
        assert!(s.probe(0, 4).is_err());
    }

    #[test]
    fn empty_graph_session() {
        let g = Graph::empty(0);
        let mut s = open_adaptive(&g, 0);
        assert!(s.probe(0, 1).is_err());
        assert_eq!(s.ledger().distinct_count(), 0);
    }

    #[test]
    fn same_seed_same_draws() {
        let g = Graph::cycle(50);
        let mut a = open_adaptive(&g, 11);
        let mut b = open_adaptive(&g, 11);
        assert_eq!(
            sample_vertices(a.rng(), 50, 10),
            sample_vertices(b.rng(), 50, 10)
        );
    }

    #[test]
    fn plan_answers() {
        let g = Graph::cycle(4);
        let (ans, ledger) = commit_plan(&g, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(ans, vec![true, false]);
        assert_eq!(ledger.distinct_count(), 2);

        let (ans, ledger) = commit_plan(&g, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(ans, vec![true, true]);
        assert_eq!(ledger.distinct_count(), 1);

        let (ans, ledger) = commit_plan(&g, &[]).unwrap();
        assert!(ans.is_empty());
        assert_eq!(ledger.distinct_count(), 0);

        assert!(commit_plan(&g, &[(0, 1), (3, 3)]).is_err());
    }

    #[test]
    fn sealed_plan_cannot_grow_and_open_plan_cannot_answer() {
        let g = Graph::cycle(5);
        let mut plan = open_plan(&g);
        plan.commit_pair(0, 1).unwrap();
        assert!(matches!(plan.answer(0, 1), Err(Error::PlanNotSealed)));
        assert_eq!(plan.premature_reads(), 1);
        plan.seal();
        assert!(plan.answer(0, 1).unwrap());
        assert!(matches!(plan.commit_pair(1, 2), Err(Error::PlanSealed)));
        assert!(matches!(plan.commit_clique(&[1, 2]), Err(Error::PlanSealed)));
        assert!(matches!(plan.commit_product(&[1], &[2]), Err(Error::PlanSealed)));
        assert!(matches!(plan.answer(1, 2), Err(Error::Uncommitted(1, 2))));
    }

    #[test]
    fn exact_mode_sampling() {
        let mut rng = rng_from_seed(3);
        assert_eq!(sample_vertices(&mut rng, 5, 5), vec![0, 1, 2, 3, 4]);
        assert_eq!(sample_vertices(&mut rng, 5, 100).len(), 5);
        assert!(sample_vertices(&mut rng, 0, 3).is_empty());
    }

    #[test]
    fn sparse_ledger_matches_dense() {
        let mut dense = QueryLedger::new(100);
        let mut sparse = QueryLedger {
            n: 100,
            store: Store::Sparse(HashSet::new()),
            count: 0,
        };
        for (u, v) in [(3, 9), (9, 3), (0, 99), (50, 51)] {
            dense.record(u, v);
            sparse.record(u, v);
        }
        assert_eq!(dense, sparse);
        assert_eq!(dense.pairs(), vec![(3, 9), (50, 51), (0, 99)]);
        assert_eq!(dense.digest(), sparse.digest());
    }

    proptest! {
        #[test]
        fn ledger_counts_distinct_pairs(
            probes in prop::collection::vec((0usize..12, 0usize..12), 0..80)
        ) {
            let g = Graph::complete(12);
            let mut s = open_adaptive(&g, 0);
            let mut expected = HashSet::new();
            let mut attempts = 0;
            for (u, v) in probes {
                if u == v { continue; }
                attempts += 1;
                s.probe(u, v).unwrap();
                expected.insert((u.min(v), u.max(v)));
                prop_assert!(s.ledger().contains(v, u));
            }
            let count = s.ledger().distinct_count();
            prop_assert_eq!(count, expected.len());
            prop_assert!(count <= attempts && count <= pair_count(12));
            let mut sorted: Vec<_> = expected.into_iter().collect();
            sorted.sort_by_key(|&(u, v)| pair_index(u, v));
            prop_assert_eq!(s.ledger().pairs(), sorted);
        }
    }
}
