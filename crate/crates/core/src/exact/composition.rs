//! The distance-composition inequality: a graph close to both the
//! low-degree class and `BUC(H)` is close to their intersection.

use super::{distance_to_buc, distance_to_ld, is_blowup_collection, COMPOSITION_CAP};
use crate::error::{Error, Result};
use crate::graph::{pair_count, Graph};

/// Distances and verdict for one `(G, eps, c)` instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompositionOutcome {
    pub d_ld: usize,
    pub d_buc: usize,
    pub d_intersection: usize,
    pub antecedent: bool,
    /// False only for a counterexample.
    pub holds: bool,
}

/// Precomputed members of `BUC(H)` on a fixed vertex count, as pair masks.
pub struct CompositionChecker {
    h: Graph,
    delta: usize,
    n: usize,
    members: Vec<(u64, Vec<u8>)>,
}

impl CompositionChecker {
    pub fn new(h: &Graph, n: usize) -> Result<Self> {
        if n > COMPOSITION_CAP {
            return Err(Error::Capacity {
                what: "vertex count for composition check",
                size: n,
                cap: COMPOSITION_CAP,
            });
        }
        let members = (0u64..1 << pair_count(n))
            .filter_map(|mask| {
                let g = Graph::from_pair_mask(n, mask);
                is_blowup_collection(&g, h).map(|_| {
                    let deg = g.degrees().into_iter().map(|d| d as u8).collect();
                    (mask, deg)
                })
            })
            .collect();
        Ok(CompositionChecker {
            h: h.clone(),
            delta: h.max_degree().max(1),
            n,
            members,
        })
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    /// Edits from `g` to the nearest graph that is in `BUC(H)` and has every
    /// degree at most `bound`.
    pub fn distance_to_intersection(&self, g: &Graph, bound: usize) -> usize {
        assert_eq!(g.n(), self.n);
        let mask = g.pair_mask();
        self.members
            .iter()
            .filter(|(_, deg)| deg.iter().all(|&d| d as usize <= bound))
            .map(|(m, _)| (m ^ mask).count_ones() as usize)
            .min()
            .expect("the empty graph is always in the intersection")
    }

    pub fn check(&self, g: &Graph, eps: f64, c: f64) -> Result<CompositionOutcome> {
        if g.n() != self.n {
            return Err(Error::arg(format!(
                "checker built for {} vertices, graph has {}",
                self.n,
                g.n()
            )));
        }
        if !(eps > 0.0 && c > 0.0) {
            return Err(Error::arg("eps and c must be positive"));
        }
        let n = self.n as f64;
        let bound = (c * eps * n).floor() as usize;
        let budget = eps * n * n;
        let d_ld = distance_to_ld(g, bound)?;
        let d_buc = distance_to_buc(g, &self.h)?;
        let antecedent = d_ld as f64 <= budget / (18.0 * c * (self.delta * self.delta) as f64)
            && d_buc as f64 <= budget / 3.0;
        let d_intersection = self.distance_to_intersection(g, bound);
        Ok(CompositionOutcome {
            d_ld,
            d_buc,
            d_intersection,
            antecedent,
            holds: !antecedent || d_intersection as f64 <= budget,
        })
    }
}

/// True iff the composition implication holds for `g`; vacuously true when
/// `g` is not close to both classes.
pub fn check_distance_composition(g: &Graph, h: &Graph, eps: f64, c: f64) -> Result<bool> {
    Ok(CompositionChecker::new(h, g.n())?.check(g, eps, c)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn members_of_both_have_zero_distances() {
        let k3 = Graph::complete(3);
        let checker = CompositionChecker::new(&k3, 6).unwrap();
        let g = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(2), Graph::empty(1)]);
        let out = checker.check(&g, 0.4, 2.0).unwrap();
        assert_eq!((out.d_ld, out.d_buc, out.d_intersection), (0, 0, 0));
        assert!(out.antecedent && out.holds);
    }

    #[test]
    fn far_graph_is_vacuous() {
        // K5 minus nothing: far from K3 collections at a small eps
        let out = CompositionChecker::new(&Graph::complete(3), 5)
            .unwrap()
            .check(&Graph::complete(5), 0.05, 2.0)
            .unwrap();
        assert!(!out.antecedent);
        assert!(out.holds);
    }

    #[test]
    fn intersection_distance_dominates_both() {
        let k3 = Graph::complete(3);
        let checker = CompositionChecker::new(&k3, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let g = Graph::from_fn(5, |_, _| rng.random_bool(0.5));
            for eps in [0.2, 0.4, 0.8] {
                let out = checker.check(&g, eps, 2.0).unwrap();
                assert!(out.d_intersection >= out.d_ld.max(out.d_buc));
                assert!(out.holds);
            }
        }
    }

    #[test]
    fn capacity_and_arguments() {
        let k3 = Graph::complete(3);
        assert!(matches!(
            check_distance_composition(&Graph::empty(7), &k3, 0.2, 2.0),
            Err(Error::Capacity { .. })
        ));
        let checker = CompositionChecker::new(&k3, 4).unwrap();
        assert!(checker.check(&Graph::empty(5), 0.2, 2.0).is_err());
        assert!(checker.check(&Graph::empty(4), 0.0, 2.0).is_err());
    }
}
