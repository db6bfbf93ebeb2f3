//! Simple undirected graphs, the generators used by the product families,
//! and the cartesian product itself.
//!
//! Product vertices are flattened copy-major: vertex `(row, copy)` of
//! `g1 × g2` lives at index `copy * p1 + row`, so the `copy`-th copy of `g1`
//! occupies a contiguous block of indices.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    coords: Option<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph from an edge list. Endpoints may be given in either
    /// order; self-loops, duplicates and out-of-range endpoints are rejected.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    vertex_count,
                });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {}-{}",
                    u.min(v),
                    u.max(v)
                )));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges,
            adjacency,
            coords: None,
        })
    }

    /// Attaches `(row, copy)` coordinates. They must form a bijection onto
    /// `{0..p1-1} × {0..p2-1}` with `p1 * p2 == vertex_count`.
    pub fn with_coords(mut self, coords: Vec<(usize, usize)>) -> Result<Self> {
        if coords.len() != self.vertex_count {
            return Err(Error::InvalidGraph(format!(
                "{} coordinates for {} vertices",
                coords.len(),
                self.vertex_count
            )));
        }
        let rows = coords.iter().map(|c| c.0).max().unwrap_or(0) + 1;
        let copies = coords.iter().map(|c| c.1).max().unwrap_or(0) + 1;
        let distinct: BTreeSet<_> = coords.iter().collect();
        if rows * copies != self.vertex_count || distinct.len() != coords.len() {
            return Err(Error::InvalidGraph(
                "coordinates are not a bijection onto a grid".into(),
            ));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn coords(&self) -> Option<&[(usize, usize)]> {
        self.coords.as_deref()
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    /// Neighbourhood bitmasks, one word per vertex. `None` above 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.vertex_count > 64 {
            return None;
        }
        Some(
            self.adjacency
                .iter()
                .map(|ns| ns.iter().fold(0u64, |m, &v| m | (1u64 << v)))
                .collect(),
        )
    }

    /// The graph with vertex `v` removed; remaining vertices are renumbered
    /// in order and coordinates are dropped.
    pub fn without_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        if self.vertex_count == 1 {
            return Err(Error::InvalidGraph("cannot remove the only vertex".into()));
        }
        let shift = |x: usize| if x > v { x - 1 } else { x };
        Graph::new(
            self.vertex_count - 1,
            self.edges
                .iter()
                .filter(|&&(a, b)| a != v && b != v)
                .map(|&(a, b)| (shift(a), shift(b))),
        )
    }

    /// The spanning subgraph with edge `u-v` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let key = (u.min(v), u.max(v));
        if !self.has_edge(u, v) {
            return Err(Error::UnknownEdge(key.0, key.1));
        }
        let g = Graph::new(
            self.vertex_count,
            self.edges.iter().copied().filter(|&e| e != key),
        )?;
        match &self.coords {
            Some(c) => g.with_coords(c.clone()),
            None => Ok(g),
        }
    }

    /// Two-colours the graph by BFS, or returns an odd cycle.
    pub fn bipartiteness(&self) -> Bipartiteness {
        let n = self.vertex_count;
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.adjacency[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            parent[w] = u;
                            depth[w] = depth[u] + 1;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => {
                            return Bipartiteness::OddCycle(odd_cycle(u, w, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartiteness::Bipartite(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartiteness(), Bipartiteness::Bipartite(_))
    }

    /// True when the graph is a single cycle (connected and 2-regular).
    pub fn is_cycle(&self) -> bool {
        let n = self.vertex_count;
        if n < 3 || self.adjacency.iter().any(|ns| ns.len() != 2) {
            return false;
        }
        let (mut prev, mut cur, mut steps) = (0, self.adjacency[0][0], 1);
        while cur != 0 {
            let next = if self.adjacency[cur][0] == prev {
                self.adjacency[cur][1]
            } else {
                self.adjacency[cur][0]
            };
            prev = cur;
            cur = next;
            steps += 1;
        }
        steps == n
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }

    /// Graphviz rendering; vertices are labelled `r,c` when coordinates exist.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", self.vertex_caption(v));
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub(crate) fn vertex_caption(&self, v: usize) -> String {
        match &self.coords {
            Some(c) => format!("{},{}", c[v].0, c[v].1),
            None => v.to_string(),
        }
    }
}

fn odd_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    // u and w share a colour, hence a BFS depth; walk both up to the meeting point.
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Outcome of a bipartiteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    /// A proper two-colouring, one entry per vertex.
    Bipartite(Vec<bool>),
    /// Vertices of an odd cycle in traversal order; the last is adjacent to the first.
    OddCycle(Vec<usize>),
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<[usize; 2]>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.vertex_count,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
            coords: g
                .coords
                .as_ref()
                .map(|c| c.iter().map(|&(r, k)| [r, k]).collect()),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Graph> {
        let g = Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))?;
        match raw.coords {
            Some(c) => g.with_coords(c.into_iter().map(|[r, k]| (r, k)).collect()),
            None => Ok(g),
        }
    }
}

/// Path on `vertex_count` vertices.
pub fn path_graph(vertex_count: usize) -> Result<Graph> {
    if vertex_count < 2 {
        return Err(Error::InvalidParameter(format!(
            "path needs at least 2 vertices, got {vertex_count}"
        )));
    }
    Graph::new(vertex_count, (1..vertex_count).map(|i| (i - 1, i)))
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "complete graph needs at least 2 vertices, got {n}"
        )));
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{m1,m2}` with part `X = 0..m1` and part `Y = m1..m1+m2`.
pub fn complete_bipartite(m1: usize, m2: usize) -> Result<Graph> {
    if m1 == 0 || m2 == 0 {
        return Err(Error::InvalidParameter(
            "complete bipartite parts must be nonempty".into(),
        ));
    }
    Graph::new(
        m1 + m2,
        (0..m1).flat_map(|x| (m1..m1 + m2).map(move |y| (x, y))),
    )
}

/// The `(X, Y)` parts of [`complete_bipartite`]`(m1, m2)`.
pub fn complete_bipartite_parts(m1: usize, m2: usize) -> (Vec<usize>, Vec<usize>) {
    ((0..m1).collect(), (m1..m1 + m2).collect())
}

/// Cartesian product `g1 × g2`: `p2` copies of `g1`, corresponding vertices
/// of copies joined whenever the copies' vertices are adjacent in `g2`.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Graph {
    let p1 = g1.vertex_count;
    let p2 = g2.vertex_count;
    let index = |row: usize, copy: usize| copy * p1 + row;
    let within = (0..p2).flat_map(|copy| {
        g1.edges
            .iter()
            .map(move |&(a, b)| (index(a, copy), index(b, copy)))
    });
    let between = g2
        .edges
        .iter()
        .flat_map(|&(c, d)| (0..p1).map(move |row| (index(row, c), index(row, d))));
    let edges: Vec<_> = within.chain(between).collect();
    let coords = (0..p1 * p2).map(|v| (v % p1, v / p1)).collect();
    Graph::new(p1 * p2, edges)
        .and_then(|g| g.with_coords(coords))
        .expect("product of valid graphs is valid")
}
