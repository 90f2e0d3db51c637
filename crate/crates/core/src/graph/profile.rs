use super::Graph;

/// Largest minimal-witness size `W(H)` and whether the search that produced
/// it covered the advisory bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessBound {
    pub value: usize,
    pub exact: bool,
}

/// Base graph `H` together with the parameters the testers derive from it.
#[derive(Clone, Debug)]
pub struct BaseGraphProfile {
    graph: Graph,
    delta: usize,
    w_bound: usize,
    w: Option<WitnessBound>,
}

impl BaseGraphProfile {
    pub fn new(graph: Graph) -> Self {
        let delta = graph.max_degree();
        let h = graph.n();
        let w_bound = (h * h).div_ceil(2).saturating_sub(1);
        BaseGraphProfile {
            graph,
            delta,
            w_bound,
            w: None,
        }
    }

    pub fn with_w(mut self, w: WitnessBound) -> Self {
        self.w = Some(w);
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn h(&self) -> usize {
        self.graph.n()
    }

    /// Maximum degree of `H`.
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// `⌈h²/2⌉ − 1`, the advisory cap on witness size searches.
    pub fn w_bound(&self) -> usize {
        self.w_bound
    }

    pub fn w(&self) -> Option<WitnessBound> {
        self.w
    }

    /// `W` usable by a tester: an explicit override wins, otherwise only an
    /// exact computed value.
    pub fn resolve_w(&self, override_w: Option<usize>) -> Option<usize> {
        override_w.or(self.w.filter(|w| w.exact).map(|w| w.value))
    }
}
