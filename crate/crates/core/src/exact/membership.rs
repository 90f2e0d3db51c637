use crate::graph::{Graph, PartLabel, Partitioning};
use std::collections::HashMap;

/// Vertices grouped by identical open neighborhood, with the induced
/// adjacency between groups.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    adjacency: Graph,
}

impl QuotientGraph {
    pub fn new(g: &Graph) -> Self {
        let rows = g.neighborhood_rows();
        let mut index: HashMap<&[u64], usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(g.n());
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (v, row) in rows.iter().enumerate() {
            let next = members.len();
            let c = *index.entry(row.as_slice()).or_insert(next);
            if c == next {
                members.push(Vec::new());
            }
            members[c].push(v);
            class_of.push(c);
        }
        let reps: Vec<usize> = members.iter().map(|m| m[0]).collect();
        let adjacency = Graph::from_fn(reps.len(), |a, b| g.has_edge(reps[a], reps[b]));
        debug_assert!((0..g.n()).all(|u| {
            reps.iter()
                .enumerate()
                .all(|(b, &r)| u == r || g.has_edge(u, r) == adjacency.has_edge(class_of[u], b))
        }));
        debug_assert!(members
            .iter()
            .all(|m| m.iter().all(|&x| m.iter().all(|&y| !g.has_edge(x, y)))));
        QuotientGraph {
            class_of,
            members,
            adjacency,
        }
    }

    pub fn class_count(&self) -> usize {
        self.members.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    pub fn adjacency(&self) -> &Graph {
        &self.adjacency
    }
}

/// Injective map `q → h` preserving adjacency and non-adjacency.
pub(crate) fn induced_embedding(q: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if q.n() > h.n() {
        return None;
    }
    let deg = q.degrees();
    let mut order: Vec<usize> = (0..q.n()).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(deg[c]));
    let h_deg = h.degrees();
    let mut image = vec![usize::MAX; q.n()];
    let mut used = vec![false; h.n()];
    fn extend(
        k: usize,
        order: &[usize],
        q: &Graph,
        h: &Graph,
        deg: &[usize],
        h_deg: &[usize],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let c = order[k];
        for x in 0..h.n() {
            if used[x] || h_deg[x] < deg[c] {
                continue;
            }
            let consistent = order[..k]
                .iter()
                .all(|&d| q.has_edge(c, d) == h.has_edge(x, image[d]));
            if !consistent {
                continue;
            }
            used[x] = true;
            image[c] = x;
            if extend(k + 1, order, q, h, deg, h_deg, image, used) {
                return true;
            }
            used[x] = false;
        }
        false
    }
    extend(0, &order, q, h, &deg, &h_deg, &mut image, &mut used).then_some(image)
}

/// Moves surplus class members onto unused base vertices where that keeps
/// the labeling valid, so that e.g. `H` itself gets singleton parts.
fn spread_twins(g: &Graph, h: &Graph, q: &QuotientGraph, parts: &mut [usize]) {
    let mut used = vec![false; h.n()];
    for &p in parts.iter() {
        used[p] = true;
    }
    for class in 0..q.class_count() {
        for &u in &q.members(class)[1..] {
            let target = (0..h.n()).find(|&x| {
                !used[x] && (0..g.n()).all(|w| w == u || g.has_edge(u, w) == h.has_edge(x, parts[w]))
            });
            if let Some(x) = target {
                parts[u] = x;
                used[x] = true;
            }
        }
    }
}

/// Certificate that `g` is a blow-up of `h`, if one exists.
pub fn is_blowup(g: &Graph, h: &Graph) -> Option<Partitioning> {
    let q = QuotientGraph::new(g);
    let image = induced_embedding(q.adjacency(), h)?;
    let mut parts: Vec<usize> = (0..g.n()).map(|v| image[q.class_of(v)]).collect();
    spread_twins(g, h, &q, &mut parts);
    let cert = Partitioning::single(parts);
    assert!(cert.verify_blowup(g, h), "blow-up certificate failed re-verification");
    Some(cert)
}

/// Certificate that `g` is a blow-up collection of `h`: every connected
/// component must be a blow-up, and each component becomes its own group.
pub fn is_blowup_collection(g: &Graph, h: &Graph) -> Option<Partitioning> {
    let mut labels = vec![PartLabel { group: 0, part: 0 }; g.n()];
    for (group, comp) in g.connected_components().into_iter().enumerate() {
        let sub = g.induced_subgraph(&comp).expect("component vertices are in range");
        let cert = is_blowup(&sub, h)?;
        for (i, &v) in comp.iter().enumerate() {
            labels[v] = PartLabel {
                group,
                part: cert.label(i).part,
            };
        }
    }
    let cert = Partitioning::new(labels);
    assert!(
        cert.verify_collection(g, h),
        "collection certificate failed re-verification"
    );
    Some(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part_sizes(p: &Partitioning) -> Vec<usize> {
        let mut sizes: HashMap<usize, usize> = HashMap::new();
        for l in p.labels() {
            *sizes.entry(l.part).or_default() += 1;
        }
        let mut v: Vec<usize> = sizes.into_values().collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn c4_is_its_own_blowup() {
        let c4 = Graph::cycle(4);
        let cert = is_blowup(&c4, &c4).unwrap();
        assert_eq!(part_sizes(&cert), vec![1, 1, 1, 1]);
    }

    #[test]
    fn complete_bipartite_over_an_edge() {
        let cert = is_blowup(&Graph::complete_bipartite(2, 3), &Graph::complete(2)).unwrap();
        assert_eq!(part_sizes(&cert), vec![2, 3]);
    }

    #[test]
    fn c5_is_not_a_c4_blowup() {
        assert!(is_blowup(&Graph::cycle(5), &Graph::cycle(4)).is_none());
    }

    #[test]
    fn collections() {
        let c4 = Graph::cycle(4);
        let two = Graph::disjoint_union(&[c4.clone(), c4.clone()]);
        assert_eq!(is_blowup_collection(&two, &c4).unwrap().group_count(), 2);

        let cert = is_blowup_collection(&Graph::empty(5), &c4).unwrap();
        assert_eq!(cert.group_count(), 5);
        assert!(cert.labels().iter().all(|l| l.part == 0));

        assert!(is_blowup_collection(&Graph::complete(3), &c4).is_none());
        assert!(is_blowup_collection(&Graph::empty(0), &c4).is_some());
    }

    #[test]
    fn quotient_classes() {
        let (g, _) = Graph::path(4).blow_up(&[3, 2, 3, 2]).unwrap();
        let q = QuotientGraph::new(&g);
        assert_eq!(q.class_count(), 4);
        assert_eq!(q.adjacency(), &Graph::path(4));
        for u in 0..g.n() {
            for w in 0..g.n() {
                let same = q.class_of(u) == q.class_of(w);
                assert_eq!(same, g.neighborhood_symdiff_size(u, w).unwrap() == 0);
            }
        }
        // antipodal vertices of C4 are twins
        let c4_q = QuotientGraph::new(&Graph::cycle(4));
        assert_eq!(c4_q.class_count(), 2);
    }
}
