//! Set-labels, sumsets, and the IASI / weak IASI predicates.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A finite nonempty set of non-negative integers, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SetLabel(Vec<u64>);

impl SetLabel {
    pub fn new(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut v: Vec<u64> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(SetLabel(v))
    }

    pub fn singleton(x: u64) -> Self {
        SetLabel(vec![x])
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; labels are nonempty.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_singleton(&self) -> bool {
        self.0.len() == 1
    }

    /// `{a + b : a ∈ self, b ∈ other}`.
    pub fn sumset(&self, other: &SetLabel) -> SetLabel {
        let mut sums = Vec::with_capacity(self.len() * other.len());
        for &a in &self.0 {
            sums.extend(other.0.iter().map(|&b| a + b));
        }
        sums.sort_unstable();
        sums.dedup();
        SetLabel(sums)
    }
}

impl<'de> Deserialize<'de> for SetLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<u64>::deserialize(d)?;
        SetLabel::new(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for SetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('{')?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{x}")?;
        }
        f.write_char('}')
    }
}

/// A graph element whose set-indexing number can be queried.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Element {
    Vertex(usize),
    Edge(usize, usize),
}

/// The first reason a labeling fails to be an IASI or a weak IASI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexCollision {
        first: usize,
        second: usize,
    },
    EdgeCollision {
        first: (usize, usize),
        second: (usize, usize),
    },
    NotWeak {
        edge: (usize, usize),
        sumset_size: usize,
        max_endpoint: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexCollision { first, second } => {
                write!(f, "vertices {first} and {second} share a set-label")
            }
            Violation::EdgeCollision { first, second } => write!(
                f,
                "edges {}-{} and {}-{} share a sumset",
                first.0, first.1, second.0, second.1
            ),
            Violation::NotWeak {
                edge,
                sumset_size,
                max_endpoint,
            } => write!(
                f,
                "edge {}-{} has sumset size {sumset_size} > {max_endpoint}",
                edge.0, edge.1
            ),
        }
    }
}

/// A total vertex labeling `f` of a graph; edge labels `f⁺(uv) = f(u) + f(v)`
/// are computed on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    graph: Arc<Graph>,
    labels: Vec<SetLabel>,
}

#[derive(Serialize, Deserialize)]
struct LabelingJson {
    labels: Vec<SetLabel>,
}

impl Labeling {
    pub fn new(graph: Arc<Graph>, labels: Vec<SetLabel>) -> Result<Self> {
        if labels.len() != graph.vertex_count() {
            return Err(Error::LabelCountMismatch {
                labels: labels.len(),
                vertices: graph.vertex_count(),
            });
        }
        Ok(Labeling { graph, labels })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn labels(&self) -> &[SetLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &SetLabel {
        &self.labels[v]
    }

    pub fn edge_label(&self, u: usize, v: usize) -> SetLabel {
        self.labels[u].sumset(&self.labels[v])
    }

    pub fn set_indexing_number(&self, element: Element) -> Result<usize> {
        match element {
            Element::Vertex(v) => {
                self.graph.check_vertex(v)?;
                Ok(self.labels[v].len())
            }
            Element::Edge(u, v) => {
                if !self.graph.has_edge(u, v) {
                    return Err(Error::UnknownEdge(u.min(v), u.max(v)));
                }
                Ok(self.edge_label(u, v).len())
            }
        }
    }

    /// Checks that `f` and `f⁺` are both injective, reporting the first
    /// collision in vertex order, then sorted edge order.
    pub fn check_iasi(&self) -> std::result::Result<(), Violation> {
        let mut seen: HashMap<&SetLabel, usize> = HashMap::new();
        for (v, label) in self.labels.iter().enumerate() {
            if let Some(&first) = seen.get(label) {
                return Err(Violation::VertexCollision { first, second: v });
            }
            seen.insert(label, v);
        }
        let mut sums: HashMap<SetLabel, (usize, usize)> = HashMap::new();
        for &(u, v) in self.graph.edges() {
            let s = self.edge_label(u, v);
            if let Some(&first) = sums.get(&s) {
                return Err(Violation::EdgeCollision {
                    first,
                    second: (u, v),
                });
            }
            sums.insert(s, (u, v));
        }
        Ok(())
    }

    /// IASI plus `|f⁺(uv)| = max(|f(u)|, |f(v)|)` on every edge.
    pub fn check_weak_iasi(&self) -> std::result::Result<(), Violation> {
        self.check_iasi()?;
        for &(u, v) in self.graph.edges() {
            let sumset_size = self.edge_label(u, v).len();
            let max_endpoint = self.labels[u].len().max(self.labels[v].len());
            if sumset_size != max_endpoint {
                return Err(Violation::NotWeak {
                    edge: (u, v),
                    sumset_size,
                    max_endpoint,
                });
            }
        }
        Ok(())
    }

    pub fn is_iasi(&self) -> bool {
        self.check_iasi().is_ok()
    }

    pub fn is_weak_iasi(&self) -> bool {
        self.check_weak_iasi().is_ok()
    }

    /// Weakness by the structural criterion: every edge has a singleton
    /// endpoint. Agrees with the cardinality check whenever the labeling is
    /// an IASI.
    pub fn every_edge_has_singleton_end(&self) -> bool {
        self.graph
            .edges()
            .iter()
            .all(|&(u, v)| self.labels[u].is_singleton() || self.labels[v].is_singleton())
    }

    /// Edges whose sumset is a singleton, in sorted edge order.
    pub fn mono_indexed_edges(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| self.labels[u].is_singleton() && self.labels[v].is_singleton())
            .collect()
    }

    /// The same labels on a subgraph with identical vertex numbering.
    pub fn restrict_to(&self, subgraph: Arc<Graph>) -> Result<Labeling> {
        Labeling::new(subgraph, self.labels.clone())
    }

    /// The labeling with vertex `v` (and its label) removed.
    pub fn without_vertex(&self, v: usize) -> Result<Labeling> {
        let g = Arc::new(self.graph.without_vertex(v)?);
        let mut labels = self.labels.clone();
        labels.remove(v);
        Labeling::new(g, labels)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&LabelingJson {
            labels: self.labels.clone(),
        })
        .expect("labels serialize")
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(LabelingJson {
            labels: self.labels.clone(),
        })
        .expect("labels serialize")
    }

    pub fn from_json(graph: Arc<Graph>, text: &str) -> Result<Labeling> {
        let raw: LabelingJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Labeling::new(graph, raw.labels)
    }

    /// Graphviz rendering with set-labels on vertices; mono-indexed edges are red.
    pub fn to_dot(&self) -> String {
        let g = &self.graph;
        let mut out = String::from("graph G {\n");
        for v in 0..g.vertex_count() {
            let _ = writeln!(
                out,
                "  {v} [label=\"{}\\n{}\"];",
                g.vertex_caption(v),
                self.labels[v]
            );
        }
        for &(u, v) in g.edges() {
            if self.labels[u].is_singleton() && self.labels[v].is_singleton() {
                let _ = writeln!(out, "  {u} -- {v} [color=red, penwidth=2];");
            } else {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Base values with pairwise-distinct pairwise sums (a Sidon set).
///
/// Up to 30 vertices these are `4^(i+1)`; two base-4 digits equal to 1
/// identify the pair. Beyond that the Erdős–Turán set `2pi + (i² mod p)` for a
/// prime `p ≥ count` keeps values polynomial in the vertex count.
fn sidon_bases(count: usize) -> Vec<u64> {
    if count <= 30 {
        return (0..count).map(|i| 4u64.pow(i as u32 + 1)).collect();
    }
    let p = (count as u64..).find(|&q| is_prime(q)).unwrap();
    (0..count as u64).map(|i| 2 * p * i + (i * i) % p).collect()
}

fn is_prime(q: u64) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Builds a weak IASI whose non-singleton vertices are exactly `nonsingleton`.
///
/// Vertex `i` gets `{b_i}` or `{b_i, b_i + 1}` for a Sidon sequence `b`.
/// Since every edge then has a singleton end, edge labels are `{b_i + b_j}` or
/// `{b_i + b_j, b_i + b_j + 1}` and are told apart by their minimum.
pub fn realize_labeling(graph: Arc<Graph>, nonsingleton: &[usize]) -> Result<Labeling> {
    let n = graph.vertex_count();
    let mut marked = vec![false; n];
    for &v in nonsingleton {
        graph.check_vertex(v)?;
        marked[v] = true;
    }
    if let Some(&(u, v)) = graph.edges().iter().find(|&&(u, v)| marked[u] && marked[v]) {
        return Err(Error::NotIndependent(u, v));
    }
    let labels = sidon_bases(n)
        .into_iter()
        .zip(&marked)
        .map(|(b, &wide)| {
            if wide {
                SetLabel(vec![b, b + 1])
            } else {
                SetLabel(vec![b])
            }
        })
        .collect();
    Labeling::new(graph, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, Graph};
    use proptest::prelude::*;

    fn set(xs: &[u64]) -> SetLabel {
        SetLabel::new(xs.iter().copied()).unwrap()
    }

    fn labeled(g: Graph, labels: &[&[u64]]) -> Labeling {
        Labeling::new(Arc::new(g), labels.iter().map(|l| set(l)).collect()).unwrap()
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(set(&[3]).sumset(&set(&[1, 5])), set(&[4, 8]));
        assert_eq!(set(&[0, 1]).sumset(&set(&[0, 1])), set(&[0, 1, 2]));
        let s = set(&[0, 1]).sumset(&set(&[0, 2]));
        assert_eq!(s, set(&[0, 1, 2, 3]));
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn labels_are_normalized() {
        assert_eq!(set(&[5, 1, 5]).elements(), &[1, 5]);
        assert_eq!(SetLabel::new([]), Err(Error::EmptyLabel));
        assert!(serde_json::from_str::<SetLabel>("[]").is_err());
    }

    #[test]
    fn set_indexing_numbers() {
        let l = labeled(path_graph(3).unwrap(), &[&[5], &[1, 2], &[0, 1]]);
        assert_eq!(l.set_indexing_number(Element::Vertex(0)), Ok(1));
        assert_eq!(l.set_indexing_number(Element::Edge(0, 1)), Ok(2));
        // {1,2} + {0,1} = {1,2,3}
        assert_eq!(l.set_indexing_number(Element::Edge(2, 1)), Ok(3));
        assert!(l.set_indexing_number(Element::Edge(0, 2)).is_err());
        assert!(l.set_indexing_number(Element::Vertex(3)).is_err());

        let wide = labeled(path_graph(2).unwrap(), &[&[0, 1], &[0, 2]]);
        assert_eq!(wide.set_indexing_number(Element::Edge(0, 1)), Ok(4));
    }

    #[test]
    fn iasi_checks() {
        assert!(labeled(path_graph(3).unwrap(), &[&[1], &[2], &[3]]).is_iasi());
        assert_eq!(
            labeled(path_graph(2).unwrap(), &[&[1], &[1]]).check_iasi(),
            Err(Violation::VertexCollision {
                first: 0,
                second: 1
            })
        );
        // Edge sums: 0-1 {1}, 0-3 {3}, 1-2 {3}, 2-3 {5}.
        let c4 = labeled(cycle_graph(4).unwrap(), &[&[0], &[1], &[2], &[3]]);
        assert_eq!(
            c4.check_iasi(),
            Err(Violation::EdgeCollision {
                first: (0, 3),
                second: (1, 2)
            })
        );
    }

    #[test]
    fn weak_checks() {
        let ok = labeled(path_graph(2).unwrap(), &[&[5], &[1, 2]]);
        assert!(ok.is_weak_iasi());
        assert_eq!(ok.edge_label(0, 1), set(&[6, 7]));
        let bad = labeled(path_graph(2).unwrap(), &[&[0, 1], &[0, 2]]);
        assert_eq!(
            bad.check_weak_iasi(),
            Err(Violation::NotWeak {
                edge: (0, 1),
                sumset_size: 4,
                max_endpoint: 2
            })
        );
        assert!(bad.is_iasi());
        assert!(!bad.every_edge_has_singleton_end());
    }

    #[test]
    fn mono_edge_examples() {
        let tri = labeled(cycle_graph(3).unwrap(), &[&[1], &[2], &[3, 4]]);
        assert_eq!(tri.mono_indexed_edges(), vec![(0, 1)]);
        let c4 = labeled(cycle_graph(4).unwrap(), &[&[1], &[2, 3], &[4], &[5, 6]]);
        assert!(c4.mono_indexed_edges().is_empty());
        let k4 = labeled(complete_graph(4).unwrap(), &[&[1, 2], &[4], &[8], &[16]]);
        assert_eq!(k4.mono_indexed_edges().len(), 3);
        assert!(k4.is_weak_iasi());
    }

    #[test]
    fn realize_examples() {
        let c4 = Arc::new(cycle_graph(4).unwrap());
        let l = realize_labeling(c4.clone(), &[0, 2]).unwrap();
        assert!(l.is_weak_iasi());
        assert!(l.mono_indexed_edges().is_empty());
        assert_eq!(
            realize_labeling(c4.clone(), &[0, 1]),
            Err(Error::NotIndependent(0, 1))
        );
        assert!(realize_labeling(c4.clone(), &[9]).is_err());

        let c3 = Arc::new(cycle_graph(3).unwrap());
        let l = realize_labeling(c3, &[0]).unwrap();
        assert!(l.is_weak_iasi());
        assert_eq!(l.mono_indexed_edges(), vec![(1, 2)]);

        let uniform = realize_labeling(c4, &[]).unwrap();
        assert!(uniform.is_weak_iasi());
        assert_eq!(uniform.mono_indexed_edges().len(), 4);
    }

    #[test]
    fn sidon_bases_have_distinct_pair_sums() {
        for count in [2, 30, 31, 64, 100] {
            let b = sidon_bases(count);
            let mut sums = std::collections::HashSet::new();
            for i in 0..count {
                for j in i + 1..count {
                    assert!(sums.insert(b[i] + b[j]), "count {count}: {i},{j}");
                }
            }
            assert!(b.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn large_graphs_realize_with_sidon_fallback() {
        let k = Arc::new(complete_graph(40).unwrap());
        let l = realize_labeling(k, &[7]).unwrap();
        assert!(l.is_weak_iasi());
        assert_eq!(l.mono_indexed_edges().len(), 39 * 38 / 2);
    }

    #[test]
    fn labeling_json() {
        let l = labeled(path_graph(2).unwrap(), &[&[5], &[1, 2]]);
        assert_eq!(l.to_json(), r#"{"labels":[[5],[1,2]]}"#);
        assert_eq!(
            Labeling::from_json(l.graph().clone(), &l.to_json()).unwrap(),
            l
        );
        assert!(Labeling::from_json(l.graph().clone(), r#"{"labels":[[5]]}"#).is_err());
    }

    #[test]
    fn dot_marks_mono_edges() {
        let l = labeled(cycle_graph(3).unwrap(), &[&[1], &[2], &[3, 4]]);
        let dot = l.to_dot();
        assert!(dot.contains("0 -- 1 [color=red"));
        assert!(dot.contains("1 -- 2;"));
        assert!(dot.contains("{3,4}"));
    }

    fn small_set() -> impl Strategy<Value = SetLabel> {
        prop::collection::btree_set(0u64..=20, 1..=6).prop_map(|s| SetLabel::new(s).unwrap())
    }

    fn graph_and_independent_set() -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (2usize..=20)
            .prop_flat_map(|n| {
                let pairs = n * (n - 1) / 2;
                (
                    Just(n),
                    prop::collection::vec(any::<bool>(), pairs),
                    any::<u64>(),
                )
            })
            .prop_map(|(n, bits, seed)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                let g = Graph::new(n, edges).unwrap();
                // Greedy independent set in a seed-dependent order.
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by_key(|&v| (v as u64).wrapping_mul(seed | 1).rotate_left(17));
                let mut chosen: Vec<usize> = Vec::new();
                for v in order {
                    if (seed >> (v % 64)) & 1 == 1 && chosen.iter().all(|&u| !g.has_edge(u, v)) {
                        chosen.push(v);
                    }
                }
                chosen.sort_unstable();
                (g, chosen)
            })
    }

    proptest! {
        #[test]
        fn sumset_bounds(a in small_set(), b in small_set()) {
            let s = a.sumset(&b).len();
            prop_assert!(a.len().max(b.len()) <= s);
            prop_assert!(s <= a.len() * b.len());
            if a.len().min(b.len()) == 1 {
                prop_assert_eq!(s, a.len().max(b.len()));
            } else {
                prop_assert!(s >= a.len() + b.len() - 1);
                prop_assert!(s > a.len().max(b.len()));
            }
        }

        #[test]
        fn realized_labelings_are_weak((g, set) in graph_and_independent_set()) {
            let g = Arc::new(g);
            let l = realize_labeling(g.clone(), &set).unwrap();
            prop_assert!(l.is_weak_iasi());
            prop_assert!(l.every_edge_has_singleton_end());
            let covered: usize = set.iter().map(|&v| g.degree(v).unwrap()).sum();
            prop_assert_eq!(l.mono_indexed_edges().len(), g.edge_count() - covered);
        }

        #[test]
        fn restriction_stays_weak((g, set) in graph_and_independent_set(), pick in any::<usize>()) {
            let g = Arc::new(g);
            let l = realize_labeling(g.clone(), &set).unwrap();
            let v = pick % g.vertex_count();
            prop_assert!(l.without_vertex(v).unwrap().is_weak_iasi());
            if !g.edges().is_empty() {
                let (a, b) = g.edges()[pick % g.edge_count()];
                let sub = Arc::new(g.without_edge(a, b).unwrap());
                prop_assert!(l.restrict_to(sub).unwrap().is_weak_iasi());
            }
        }

        #[test]
        fn weak_criteria_agree(labels in prop::collection::vec(small_set(), 4)) {
            let l = Labeling::new(Arc::new(cycle_graph(4).unwrap()), labels).unwrap();
            if l.is_iasi() {
                prop_assert_eq!(l.is_weak_iasi(), l.every_edge_has_singleton_end());
            }
        }
    }
}
