//! Membership straight from the definitions: try every way of splitting the
//! vertices into groups and every part labeling of each group. Used only to
//! cross-check the quotient-based checker.

use super::BRUTEFORCE_CAP;
use crate::error::{Error, Result};
use crate::graph::{Graph, PartLabel, Partitioning};

pub fn buc_membership_bruteforce(g: &Graph, h: &Graph) -> Result<Option<Partitioning>> {
    buc_membership_bruteforce_capped(g, h, BRUTEFORCE_CAP)
}

pub fn buc_membership_bruteforce_capped(
    g: &Graph,
    h: &Graph,
    cap: usize,
) -> Result<Option<Partitioning>> {
    if g.n() > cap {
        return Err(Error::Capacity {
            what: "vertex count for brute-force membership",
            size: g.n(),
            cap,
        });
    }
    let mut search = Search {
        g,
        h,
        group: vec![0; g.n()],
        found: None,
    };
    search.partitions(0, 0);
    Ok(search.found)
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    group: Vec<usize>,
    found: Option<Partitioning>,
}

impl Search<'_> {
    /// Restricted-growth enumeration of set partitions; a vertex may not join
    /// a group if it has an edge into a different group.
    fn partitions(&mut self, v: usize, groups: usize) {
        if self.found.is_some() {
            return;
        }
        if v == self.g.n() {
            self.label_groups(groups);
            return;
        }
        for gid in 0..=groups {
            let crosses = (0..v).any(|u| self.group[u] != gid && self.g.has_edge(u, v));
            if crosses {
                continue;
            }
            self.group[v] = gid;
            self.partitions(v + 1, groups.max(gid + 1));
            if self.found.is_some() {
                return;
            }
        }
    }

    fn label_groups(&mut self, groups: usize) {
        let mut parts = vec![0usize; self.g.n()];
        for gid in 0..groups {
            let members: Vec<usize> = (0..self.g.n()).filter(|&v| self.group[v] == gid).collect();
            if !label(self.g, self.h, &members, 0, &mut parts) {
                return;
            }
        }
        self.found = Some(Partitioning::new(
            (0..self.g.n())
                .map(|v| PartLabel {
                    group: self.group[v],
                    part: parts[v],
                })
                .collect(),
        ));
    }
}

/// Assigns parts to `members[k..]` so that every pair inside the group
/// matches the base adjacency.
fn label(g: &Graph, h: &Graph, members: &[usize], k: usize, parts: &mut [usize]) -> bool {
    if k == members.len() {
        return true;
    }
    let v = members[k];
    for p in 0..h.n() {
        let ok = members[..k]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(parts[u], p));
        if ok {
            parts[v] = p;
            if label(g, h, members, k + 1, parts) {
                return true;
            }
        }
    }
    false
}
