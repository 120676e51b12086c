//! Canonical simple graphs on the vertex set `1..=n`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Vertices are 1-based throughout the crate.
pub type Vertex = usize;

/// An undirected edge stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    /// Builds the edge `{a, b}` in canonical orientation.
    ///
    /// Panics if `a == b`; use [`Graph::new`] for checked construction.
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        assert!(a != b, "loop at vertex {a}");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint different from `x`, if `x` is an endpoint.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.contains(other.u) || self.contains(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid edge {{{u},{v}}}{}: {reason}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    InvalidEdge {
        line: Option<usize>,
        u: usize,
        v: usize,
        reason: &'static str,
    },
    #[error("vertex {vertex} is outside 1..={n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("graph with {actual} {what} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// A simple undirected graph on `1..=n` with a strictly sorted edge list.
///
/// Two graphs are equal iff they have the same vertex count and edge list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph, normalizing orientation and sorting; rejects loops,
    /// duplicates and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            list.push(check_edge(n, a, b, None)?);
        }
        Graph::from_checked(n, list, None)
    }

    fn from_checked(
        n: usize,
        mut list: Vec<Edge>,
        lines: Option<&[usize]>,
    ) -> Result<Graph, GraphError> {
        let order: Vec<usize> = {
            let mut idx: Vec<usize> = (0..list.len()).collect();
            idx.sort_by_key(|&i| (list[i], i));
            idx
        };
        for w in order.windows(2) {
            if list[w[0]] == list[w[1]] {
                let e = list[w[1]];
                return Err(GraphError::InvalidEdge {
                    line: lines.map(|l| l[w[0].max(w[1])]),
                    u: e.u,
                    v: e.v,
                    reason: "duplicate edge",
                });
            }
        }
        list.sort_unstable();
        Ok(Graph { n, edges: list })
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> core::ops::RangeInclusive<Vertex> {
        1..=self.n
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a != b && self.edge_index(Edge::new(a, b)).is_some()
    }

    /// Position of `e` in the canonical edge list.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    /// Degrees indexed by vertex; slot 0 is unused.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n + 1];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(x)).count()
    }

    /// Δ(G); 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Adjacency lists indexed by vertex (slot 0 unused), neighbours ascending.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Component label per vertex (slot 0 unused) and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n + 1];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 1..=self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// |E| − |V| + #components.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + self.components().1 - self.n
    }

    pub fn is_forest(&self) -> bool {
        self.cyclomatic_number() == 0
    }

    /// The spanning subgraph with the given edges removed.
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        Graph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| !removed.contains(e))
                .collect(),
        }
    }

    /// The spanning subgraph on the edges selected by `keep`.
    pub fn spanning_subgraph(&self, mut keep: impl FnMut(usize, &Edge) -> bool) -> Graph {
        Graph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(i, e)| keep(*i, e))
                .map(|(_, e)| *e)
                .collect(),
        }
    }

    /// G[U], relabelled to `1..=|U|` in increasing vertex order.
    ///
    /// The second component maps new labels back to old ones (`map[new - 1] = old`).
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        let mut keep: Vec<Vertex> = vertices.to_vec();
        for &x in &keep {
            if x == 0 || x > self.n {
                return Err(GraphError::OutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        keep.sort_unstable();
        keep.dedup();
        let mut new_label = vec![0; self.n + 1];
        for (i, &x) in keep.iter().enumerate() {
            new_label[x] = i + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| new_label[e.u] != 0 && new_label[e.v] != 0)
            .map(|e| Edge::new(new_label[e.u], new_label[e.v]))
            .collect::<Vec<_>>();
        // relabelling is monotone, so the list stays sorted
        Ok((
            Graph {
                n: keep.len(),
                edges,
            },
            keep,
        ))
    }

    /// G ∖ T: the induced subgraph on the complement of `removed`, keeping the
    /// original labels (removed vertices become isolated).
    pub fn delete_vertices(&self, removed: &[Vertex]) -> Graph {
        self.spanning_subgraph(|_, e| !removed.contains(&e.u) && !removed.contains(&e.v))
    }

    /// The edge-list text format: `n` on the first line, then one `i j` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = self.n.to_string();
        out.push('\n');
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
        out
    }

    /// Vertices with at least one incident edge, ascending.
    pub fn non_isolated(&self) -> Vec<Vertex> {
        let deg = self.degrees();
        (1..=self.n).filter(|&x| deg[x] > 0).collect()
    }

    /// True iff every pair of distinct vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Part sizes `(a, b)` with `a <= b` if the graph is a complete bipartite
    /// graph K_{a,b} with both parts nonempty and no isolated vertices.
    pub fn complete_bipartite_parts(&self) -> Option<(usize, usize)> {
        if self.n < 2 || !self.is_connected() {
            return None;
        }
        let adj = self.adjacency();
        let mut side = vec![u8::MAX; self.n + 1];
        side[1] = 0;
        let mut stack = vec![1];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if side[y] == u8::MAX {
                    side[y] = 1 - side[x];
                    stack.push(y);
                } else if side[y] == side[x] {
                    return None;
                }
            }
        }
        let a = (1..=self.n).filter(|&x| side[x] == 0).count();
        let b = self.n - a;
        if self.edges.len() == a * b {
            Some((a.min(b), a.max(b)))
        } else {
            None
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(n={}; ", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

fn check_edge(n: usize, a: usize, b: usize, line: Option<usize>) -> Result<Edge, GraphError> {
    if a == b {
        return Err(GraphError::InvalidEdge {
            line,
            u: a,
            v: b,
            reason: "loops are not allowed",
        });
    }
    if a == 0 || b == 0 || a > n || b > n {
        return Err(GraphError::InvalidEdge {
            line,
            u: a,
            v: b,
            reason: "endpoint outside 1..=n",
        });
    }
    Ok(Edge::new(a, b))
}

/// Parses the edge-list text format.
///
/// The first non-empty line holds `n`; every further non-empty line holds one
/// edge `i j`. `#` starts a comment that runs to the end of the line.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse_num = |s: &str| {
            s.parse::<usize>().map_err(|_| GraphError::Parse {
                line: line_no,
                message: format!("expected a nonnegative integer, found `{s}`"),
            })
        };
        match n {
            None => {
                if fields.len() != 1 {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: "first line must contain only the vertex count".into(),
                    });
                }
                n = Some(parse_num(fields[0])?);
            }
            Some(n) => {
                if fields.len() != 2 {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: format!("expected `i j`, found {} fields", fields.len()),
                    });
                }
                let a = parse_num(fields[0])?;
                let b = parse_num(fields[1])?;
                edges.push(check_edge(n, a, b, Some(line_no))?);
                lines.push(line_no);
            }
        }
    }
    let n = n.ok_or(GraphError::Parse {
        line: 1,
        message: "missing vertex count".into(),
    })?;
    Graph::from_checked(n, edges, Some(&lines))
}

/// Generates a named family: `Kn`, `Km,n`, `Cn`, `Pn` (case-insensitive).
///
/// Labelling conventions: `Km,n` has parts `1..=m` and `m+1..=m+n`, so the star
/// `K1,m` has centre 1; `Cn` and `Pn` run through `1, 2, ..., n` in order.
pub fn named_graph(spec: &str) -> Result<Graph, GraphError> {
    let s = spec.trim();
    let mut chars = s.chars();
    let family = chars
        .next()
        .ok_or_else(|| GraphError::UnknownFamily(spec.to_string()))?
        .to_ascii_uppercase();
    let rest: &str = chars.as_str();
    let num = |t: &str| -> Result<usize, GraphError> {
        t.trim()
            .parse::<usize>()
            .map_err(|_| GraphError::BadParameter(format!("`{t}` in `{spec}` is not a size")))
    };
    match family {
        'K' => {
            if let Some((a, b)) = rest.split_once(',') {
                let (a, b) = (num(a)?, num(b)?);
                if a == 0 || b == 0 {
                    return Err(GraphError::BadParameter(format!(
                        "K{a},{b} needs both parts nonempty"
                    )));
                }
                let edges = (1..=a).flat_map(|i| (a + 1..=a + b).map(move |j| (i, j)));
                Graph::new(a + b, edges)
            } else {
                let n = num(rest)?;
                if n == 0 {
                    return Err(GraphError::BadParameter("K0 has no vertices".into()));
                }
                let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
                Graph::new(n, edges)
            }
        }
        'C' => {
            let n = num(rest)?;
            if n < 3 {
                return Err(GraphError::BadParameter(format!(
                    "C{n}: cycles need at least 3 vertices"
                )));
            }
            Graph::new(n, (1..n).map(|i| (i, i + 1)).chain(core::iter::once((1, n))))
        }
        'P' => {
            let n = num(rest)?;
            if n == 0 {
                return Err(GraphError::BadParameter("P0 has no vertices".into()));
            }
            Graph::new(n, (1..n).map(|i| (i, i + 1)))
        }
        _ => Err(GraphError::UnknownFamily(spec.to_string())),
    }
}

/// Δ(G).
pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    /// Acyclic and disconnected (or edgeless on several vertices).
    Forest,
    Tree,
    Unicyclic,
    Bicyclic,
    Other,
}

impl ShapeKind {
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Forest => "forest",
            ShapeKind::Tree => "tree",
            ShapeKind::Unicyclic => "unicyclic",
            ShapeKind::Bicyclic => "bicyclic",
            ShapeKind::Other => "other",
        }
    }

    /// Tree or forest.
    pub fn is_acyclic(self) -> bool {
        matches!(self, ShapeKind::Forest | ShapeKind::Tree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphShape {
    pub kind: ShapeKind,
    pub connected: bool,
    /// Number of distinct cycle subgraphs.
    pub cycle_count: usize,
    pub c3_free: bool,
}

/// Classifies a graph by its number of cycle subgraphs.
///
/// Cycles are counted exhaustively as distinct edge sets, so a theta graph
/// (three cycles) is `Other`, not `Bicyclic`.
pub fn classify_shape(g: &Graph, max_n: usize) -> Result<GraphShape, GraphError> {
    if g.n() > max_n {
        return Err(GraphError::SizeLimit {
            what: "vertices",
            actual: g.n(),
            limit: max_n,
        });
    }
    let cycle_count = count_cycles(g);
    let connected = g.is_connected();
    let kind = match cycle_count {
        0 if connected => ShapeKind::Tree,
        0 => ShapeKind::Forest,
        1 => ShapeKind::Unicyclic,
        2 => ShapeKind::Bicyclic,
        _ => ShapeKind::Other,
    };
    Ok(GraphShape {
        kind,
        connected,
        cycle_count,
        c3_free: !has_triangle(g),
    })
}

pub fn has_triangle(g: &Graph) -> bool {
    let adj = g.adjacency();
    g.edges()
        .iter()
        .any(|e| adj[e.u].iter().any(|&w| w > e.v && g.has_edge(e.v, w)))
}

/// Counts simple cycles: each cycle is rooted at its smallest vertex and
/// found once per direction.
fn count_cycles(g: &Graph) -> usize {
    let adj = g.adjacency();
    let n = g.n();
    let mut on_path = vec![false; n + 1];
    let mut total = 0usize;
    for s in 1..=n {
        // iterative DFS over paths starting at s through vertices > s
        let mut stack: Vec<(Vertex, usize)> = vec![(s, 0)];
        on_path[s] = true;
        let mut depth = 1usize;
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            if *next < adj[x].len() {
                let y = adj[x][*next];
                *next += 1;
                if y == s && depth >= 3 {
                    total += 1;
                } else if y > s && !on_path[y] {
                    on_path[y] = true;
                    depth += 1;
                    stack.push((y, 0));
                }
            } else {
                on_path[x] = false;
                depth -= 1;
                stack.pop();
            }
        }
    }
    total / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Graph {
        parse_graph("4\n1 2\n1 3\n1 4\n2 3\n2 4").unwrap()
    }

    #[test]
    fn parses_the_four_vertex_example() {
        let g = example();
        assert_eq!(g.n(), 4);
        assert_eq!(g.num_edges(), 5);
        assert_eq!(g.max_degree(), 3);
    }

    #[test]
    fn parses_edgeless_and_comments() {
        let g = parse_graph("1").unwrap();
        assert_eq!((g.n(), g.num_edges()), (1, 0));
        let g = parse_graph("# a path\n3 # vertices\n\n2 1\n2 3 # tail\n").unwrap();
        assert_eq!(g.edges(), &[Edge::new(1, 2), Edge::new(2, 3)]);
    }

    #[test]
    fn rejects_duplicates_loops_and_range() {
        assert!(matches!(
            parse_graph("3\n2 1\n1 2"),
            Err(GraphError::InvalidEdge {
                line: Some(3),
                reason: "duplicate edge",
                ..
            })
        ));
        assert!(matches!(
            parse_graph("3\n2 2"),
            Err(GraphError::InvalidEdge { line: Some(2), .. })
        ));
        assert!(matches!(
            parse_graph("3\n1 4"),
            Err(GraphError::InvalidEdge { .. })
        ));
        assert!(matches!(
            parse_graph("3\n1 x"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_graph("3\n1 2 3"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_graph(""), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(named_graph("P2").unwrap().max_degree(), 1);
        assert_eq!(named_graph("K2,3").unwrap().max_degree(), 3);
        assert_eq!(Graph::empty(5).max_degree(), 0);
    }

    #[test]
    fn generators() {
        let star = named_graph("k1,3").unwrap();
        assert_eq!(star.degree(1), 3);
        assert_eq!(star.num_edges(), 3);
        let tri = named_graph("C3").unwrap();
        assert_eq!(tri, Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap());
        assert!(matches!(named_graph("C2"), Err(GraphError::BadParameter(_))));
        assert!(matches!(named_graph("Q4"), Err(GraphError::UnknownFamily(_))));
        assert_eq!(named_graph("K4").unwrap().num_edges(), 6);
        assert_eq!(named_graph("P4").unwrap().num_edges(), 3);
    }

    #[test]
    fn shapes() {
        let c4 = named_graph("C4").unwrap();
        let s = classify_shape(&c4, 24).unwrap();
        assert_eq!(s.kind, ShapeKind::Unicyclic);
        assert!(s.connected && s.c3_free);

        let s = classify_shape(&example(), 24).unwrap();
        assert_eq!(s.kind, ShapeKind::Other);
        assert_eq!(s.cycle_count, 3);

        let two_triangles =
            Graph::new(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        let s = classify_shape(&two_triangles, 24).unwrap();
        assert_eq!(s.kind, ShapeKind::Bicyclic);
        assert!(!s.connected && !s.c3_free);

        assert_eq!(classify_shape(&named_graph("K4").unwrap(), 24).unwrap().cycle_count, 7);
        assert_eq!(classify_shape(&named_graph("P5").unwrap(), 24).unwrap().kind, ShapeKind::Tree);
        assert_eq!(classify_shape(&Graph::empty(3), 24).unwrap().kind, ShapeKind::Forest);
        assert!(matches!(
            classify_shape(&Graph::empty(30), 24),
            Err(GraphError::SizeLimit { .. })
        ));
    }

    #[test]
    fn induced_subgraphs() {
        let c4 = named_graph("C4").unwrap();
        let (p3, map) = c4.induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(p3, named_graph("P3").unwrap());
        assert_eq!(map, vec![1, 2, 3]);
        let (empty, _) = c4.induced_subgraph(&[]).unwrap();
        assert_eq!(empty, Graph::empty(0));
        let (tri, _) = example().induced_subgraph(&[3, 1, 2]).unwrap();
        assert_eq!(tri, named_graph("C3").unwrap());
        assert!(matches!(
            c4.induced_subgraph(&[5]),
            Err(GraphError::OutOfRange { vertex: 5, n: 4 })
        ));
    }

    #[test]
    fn complete_bipartite_detection() {
        assert_eq!(named_graph("K2,3").unwrap().complete_bipartite_parts(), Some((2, 3)));
        assert_eq!(named_graph("C4").unwrap().complete_bipartite_parts(), Some((2, 2)));
        assert_eq!(named_graph("P4").unwrap().complete_bipartite_parts(), None);
        assert_eq!(named_graph("C5").unwrap().complete_bipartite_parts(), None);
    }
}
