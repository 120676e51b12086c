/// Size caps for the exhaustive searches.
///
/// Every search in this crate is exponential in the worst case; the caps turn a
/// hopeless computation into a `SizeLimit` error instead of a hang.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Vertex cap for cycle enumeration in [`crate::graph::classify_shape`].
    pub shape_max_n: usize,
    pub pmd_max_n: usize,
    pub pmd_max_edges: usize,
    pub tpmd_max_n: usize,
    pub tpmd_max_edges: usize,
    /// Vertex cap for the induced-subgraph searches behind the regularity invariants.
    pub induced_max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            shape_max_n: 24,
            pmd_max_n: 10,
            pmd_max_edges: 20,
            tpmd_max_n: 8,
            tpmd_max_edges: 16,
            induced_max_n: 16,
        }
    }
}

impl Limits {
    /// Raises (or lowers) every vertex cap to `n`, keeping the edge caps.
    pub fn with_max_n(mut self, n: usize) -> Self {
        self.shape_max_n = n;
        self.pmd_max_n = n;
        self.tpmd_max_n = n;
        self.induced_max_n = n;
        self
    }

    pub fn with_max_edges(mut self, m: usize) -> Self {
        self.pmd_max_edges = m;
        self.tpmd_max_edges = m;
        self
    }
}
