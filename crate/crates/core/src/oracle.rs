//! Exact sparing numbers.
//!
//! A labeling is a weak IASI exactly when its non-singleton vertices form an
//! independent set `I` (a sumset of two sets of size ≥ 2 is strictly larger
//! than either). An edge is mono-indexed iff neither end is in `I`, and every
//! other edge has exactly one end in `I`, so
//!
//! ```text
//! φ(G) = |E| − max { Σ_{v ∈ I} deg(v) : I independent }.
//! ```
//!
//! [`realize_labeling`] turns any independent set into an injective labeling,
//! so injectivity never costs extra mono-indexed edges. Two engines solve the
//! degree-weighted independent set problem on 64-bit vertex masks.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labels::{realize_labeling, Labeling};

pub const EXHAUSTIVE_LIMIT: usize = 25;
pub const BRANCH_AND_BOUND_LIMIT: usize = 64;
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;
/// Environment variable overriding [`DEFAULT_NODE_BUDGET`].
pub const NODE_BUDGET_ENV: &str = "SPARING_NODE_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Exhaustive,
    BranchAndBound,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Exhaustive => "exhaustive",
            Engine::BranchAndBound => "branch_and_bound",
        }
    }

    pub fn limit(self) -> usize {
        match self {
            Engine::Exhaustive => EXHAUSTIVE_LIMIT,
            Engine::BranchAndBound => BRANCH_AND_BOUND_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineChoice {
    /// Exhaustive up to [`EXHAUSTIVE_LIMIT`] vertices, branch-and-bound above.
    #[default]
    Auto,
    Force(Engine),
}

impl EngineChoice {
    pub fn resolve(self, vertex_count: usize) -> Engine {
        match self {
            EngineChoice::Force(e) => e,
            EngineChoice::Auto if vertex_count <= EXHAUSTIVE_LIMIT => Engine::Exhaustive,
            EngineChoice::Auto => Engine::BranchAndBound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub engine: EngineChoice,
    pub node_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            engine: EngineChoice::Auto,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SolveOptions {
    pub fn with_engine(engine: Engine) -> Self {
        SolveOptions {
            engine: EngineChoice::Force(engine),
            ..Default::default()
        }
    }

    /// Defaults, with the node budget taken from [`NODE_BUDGET_ENV`] if set.
    pub fn from_env() -> Result<Self> {
        let mut opts = SolveOptions::default();
        if let Ok(raw) = std::env::var(NODE_BUDGET_ENV) {
            opts.node_budget = raw.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("{NODE_BUDGET_ENV}={raw} is not a node count"))
            })?;
        }
        Ok(opts)
    }
}

/// An optimal degree-weighted independent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSet {
    pub weight: u64,
    /// Sorted; lexicographically smallest among optimal sets.
    pub vertices: Vec<usize>,
    pub engine: Engine,
    pub nodes: u64,
}

/// Maximizes `Σ deg(v)` over independent sets.
///
/// Isolated vertices weigh nothing and are never part of the answer. Ties are
/// broken towards the lexicographically smallest sorted vertex list.
pub fn max_degree_weight_independent_set(g: &Graph, opts: &SolveOptions) -> Result<WeightedSet> {
    let engine = opts.engine.resolve(g.vertex_count());
    if g.vertex_count() > engine.limit() {
        return Err(Error::InstanceTooLarge {
            vertices: g.vertex_count(),
            limit: engine.limit(),
            engine: engine.name(),
        });
    }
    let adj = g.adjacency_masks().expect("within 64 vertices");
    let deg: Vec<u64> = adj.iter().map(|m| m.count_ones() as u64).collect();
    let candidates = adj
        .iter()
        .enumerate()
        .filter(|(_, m)| **m != 0)
        .fold(0u64, |acc, (v, _)| acc | (1 << v));

    let mut search = Search::new(opts.node_budget);
    let (weight, mask) = match engine {
        Engine::Exhaustive => {
            search.enumerate(&adj, &deg, 0, 0, candidates)?;
            (search.best_weight, search.best_set)
        }
        Engine::BranchAndBound => {
            let weight = search.degree_ordered_optimum(&adj, &deg, candidates)?;
            let mask = search
                .lex_first(&adj, &deg, weight, 0, 0, candidates)?
                .expect("optimum is attainable");
            (weight, mask)
        }
    };
    Ok(WeightedSet {
        weight,
        vertices: mask_to_vec(mask),
        engine,
        nodes: search.nodes,
    })
}

fn mask_to_vec(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

fn mask_weight(deg: &[u64], mut mask: u64) -> u64 {
    let mut w = 0;
    while mask != 0 {
        w += deg[mask.trailing_zeros() as usize];
        mask &= mask - 1;
    }
    w
}

struct Search {
    nodes: u64,
    budget: u64,
    best_weight: u64,
    best_set: u64,
}

impl Search {
    fn new(budget: u64) -> Self {
        Search {
            nodes: 0,
            budget,
            best_weight: 0,
            best_set: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::NodeBudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Visits every independent set once, in lexicographic order of sorted
    /// vertex lists. The first set reaching the maximum is kept.
    fn enumerate(
        &mut self,
        adj: &[u64],
        deg: &[u64],
        set: u64,
        weight: u64,
        cand: u64,
    ) -> Result<()> {
        self.tick()?;
        if weight > self.best_weight {
            self.best_weight = weight;
            self.best_set = set;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.enumerate(adj, deg, set | (1 << v), weight + deg[v], rest & !adj[v])?;
        }
        Ok(())
    }

    /// Optimal weight by branch-and-bound over vertices in descending-degree
    /// order. Bound: current weight plus the degrees of all candidates.
    fn degree_ordered_optimum(&mut self, adj: &[u64], deg: &[u64], cand: u64) -> Result<u64> {
        let mut order: Vec<usize> = mask_to_vec(cand);
        order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
        let mut position = vec![usize::MAX; adj.len()];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let remap = |m: u64| {
            mask_to_vec(m)
                .into_iter()
                .filter(|&v| position[v] != usize::MAX)
                .fold(0u64, |acc, v| acc | (1 << position[v]))
        };
        let padj: Vec<u64> = order.iter().map(|&v| remap(adj[v])).collect();
        let pdeg: Vec<u64> = order.iter().map(|&v| deg[v]).collect();
        let all = if order.len() == 64 {
            !0
        } else {
            (1u64 << order.len()) - 1
        };
        self.best_weight = 0;
        self.branch(&padj, &pdeg, 0, all)?;
        Ok(self.best_weight)
    }

    fn branch(&mut self, adj: &[u64], deg: &[u64], weight: u64, cand: u64) -> Result<()> {
        self.tick()?;
        if weight > self.best_weight {
            self.best_weight = weight;
        }
        if cand == 0 || weight + mask_weight(deg, cand) <= self.best_weight {
            return Ok(());
        }
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        self.branch(adj, deg, weight + deg[v], cand & !bit & !adj[v])?;
        self.branch(adj, deg, weight, cand & !bit)
    }

    /// Lexicographically first independent set of weight `target`, searching
    /// include-first in index order and pruning subtrees that cannot reach it.
    fn lex_first(
        &mut self,
        adj: &[u64],
        deg: &[u64],
        target: u64,
        set: u64,
        weight: u64,
        cand: u64,
    ) -> Result<Option<u64>> {
        self.tick()?;
        if weight >= target {
            return Ok(Some(set));
        }
        if cand == 0 || weight + mask_weight(deg, cand) < target {
            return Ok(None);
        }
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        if let Some(found) = self.lex_first(
            adj,
            deg,
            target,
            set | bit,
            weight + deg[v],
            cand & !bit & !adj[v],
        )? {
            return Ok(Some(found));
        }
        self.lex_first(adj, deg, target, set, weight, cand & !bit)
    }
}

/// An exact sparing number together with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparingResult {
    pub phi: u64,
    pub witness: Vec<usize>,
    pub labeling: Labeling,
    pub engine: Engine,
    pub nodes_explored: u64,
}

#[derive(Serialize)]
struct SolveReport<'a> {
    phi: u64,
    witness: &'a [usize],
    engine: &'static str,
    nodes: u64,
}

impl SparingResult {
    /// `{"phi": .., "witness": [..], "engine": .., "nodes": ..}`
    pub fn report_json(&self) -> String {
        serde_json::to_string(&SolveReport {
            phi: self.phi,
            witness: &self.witness,
            engine: self.engine.name(),
            nodes: self.nodes_explored,
        })
        .expect("report serializes")
    }
}

/// Computes `φ(G)` and a weak IASI attaining it.
pub fn sparing_number_exact(g: Arc<Graph>, opts: &SolveOptions) -> Result<SparingResult> {
    let best = max_degree_weight_independent_set(&g, opts)?;
    let phi = g.edge_count() as u64 - best.weight;
    let labeling = realize_labeling(g, &best.vertices)?;
    if let Err(v) = labeling.check_weak_iasi() {
        return Err(Error::NotWeak(v.to_string()));
    }
    let mono = labeling.mono_indexed_edges().len() as u64;
    assert_eq!(mono, phi, "certificate mono-edge count disagrees with φ");
    Ok(SparingResult {
        phi,
        witness: best.vertices,
        labeling,
        engine: best.engine,
        nodes_explored: best.nodes,
    })
}

/// Mono-edge count of a weak IASI on a cycle against the cycle's parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityReport {
    pub cycle_length: usize,
    pub mono_edges: usize,
    /// True iff the mono-edge count and the cycle length have equal parity.
    pub consistent: bool,
}

pub fn parity_of_cycle_mono_edges(labeling: &Labeling) -> Result<ParityReport> {
    let g = labeling.graph();
    if !g.is_cycle() {
        return Err(Error::NotACycle);
    }
    if let Err(v) = labeling.check_weak_iasi() {
        return Err(Error::NotWeak(v.to_string()));
    }
    let mono_edges = labeling.mono_indexed_edges().len();
    let cycle_length = g.vertex_count();
    Ok(ParityReport {
        cycle_length,
        mono_edges,
        consistent: mono_edges % 2 == cycle_length % 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cartesian_product, complete_graph, cycle_graph, path_graph};
    use crate::labels::SetLabel;

    fn solve(g: Graph, engine: Engine) -> SparingResult {
        sparing_number_exact(Arc::new(g), &SolveOptions::with_engine(engine)).unwrap()
    }

    /// Independent oracle: every vertex subset, checked pairwise.
    fn brute_force(g: &Graph) -> (u64, Vec<usize>) {
        let n = g.vertex_count();
        let mut best = (0u64, Vec::new());
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let independent = set.iter().all(|&u| set.iter().all(|&v| !g.has_edge(u, v)));
            if !independent || set.iter().any(|&v| g.neighbors(v).is_empty()) {
                continue;
            }
            let w: u64 = set.iter().map(|&v| g.neighbors(v).len() as u64).sum();
            if w > best.0 || (w == best.0 && set < best.1) {
                best = (w, set);
            }
        }
        best
    }

    #[test]
    fn weighted_set_examples() {
        let opts = SolveOptions::default();
        let k4 = max_degree_weight_independent_set(&complete_graph(4).unwrap(), &opts).unwrap();
        assert_eq!((k4.weight, k4.vertices), (3, vec![0]));
        let c4 = max_degree_weight_independent_set(&cycle_graph(4).unwrap(), &opts).unwrap();
        assert_eq!((c4.weight, c4.vertices), (4, vec![0, 2]));
        let prism = cartesian_product(&complete_graph(3).unwrap(), &path_graph(2).unwrap());
        assert_eq!(brute_force(&prism), (6, vec![0, 4]));
        let w = max_degree_weight_independent_set(&prism, &opts).unwrap();
        assert_eq!((w.weight, w.vertices), (6, vec![0, 4]));
    }

    #[test]
    fn sparing_examples() {
        for engine in [Engine::Exhaustive, Engine::BranchAndBound] {
            assert_eq!(solve(complete_graph(5).unwrap(), engine).phi, 6);
            assert_eq!(solve(cycle_graph(4).unwrap(), engine).phi, 0);
            assert_eq!(solve(cycle_graph(3).unwrap(), engine).phi, 1);
            let prism = cartesian_product(&complete_graph(3).unwrap(), &path_graph(2).unwrap());
            let r = solve(prism, engine);
            assert_eq!(r.phi, 3);
            assert!(r.labeling.is_weak_iasi());
        }
    }

    #[test]
    fn complete_graph_sparing_numbers() {
        for n in 2..=9usize {
            let r = solve(complete_graph(n).unwrap(), Engine::Exhaustive);
            assert_eq!(r.phi as usize, (n - 1) * (n - 2) / 2, "K_{n}");
        }
    }

    #[test]
    fn engines_agree_with_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..150 {
            let n = rng.gen_range(2..=14);
            let p: f64 = rng.gen_range(0.1..0.9);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::new(n, edges).unwrap();
            let (weight, set) = brute_force(&g);
            for engine in [Engine::Exhaustive, Engine::BranchAndBound] {
                let w = max_degree_weight_independent_set(&g, &SolveOptions::with_engine(engine))
                    .unwrap();
                assert_eq!(
                    (w.weight, &w.vertices),
                    (weight, &set),
                    "{engine:?} on {:?}",
                    g.edges()
                );
            }
        }
    }

    #[test]
    fn limits_are_enforced() {
        let big = complete_graph(26).unwrap();
        let err =
            max_degree_weight_independent_set(&big, &SolveOptions::with_engine(Engine::Exhaustive))
                .unwrap_err();
        assert_eq!(
            err,
            Error::InstanceTooLarge {
                vertices: 26,
                limit: 25,
                engine: "exhaustive"
            }
        );
        assert!(err.is_resource_limit());
        let huge = complete_graph(65).unwrap();
        assert!(max_degree_weight_independent_set(&huge, &SolveOptions::default()).is_err());
        let tight = SolveOptions {
            node_budget: 3,
            ..Default::default()
        };
        assert_eq!(
            max_degree_weight_independent_set(&cycle_graph(8).unwrap(), &tight),
            Err(Error::NodeBudgetExceeded { budget: 3 })
        );
        assert_eq!(EngineChoice::Auto.resolve(25), Engine::Exhaustive);
        assert_eq!(EngineChoice::Auto.resolve(26), Engine::BranchAndBound);
    }

    #[test]
    fn sixty_four_vertices_fit_branch_and_bound() {
        let g = cartesian_product(&cycle_graph(8).unwrap(), &cycle_graph(8).unwrap());
        let r = solve(g, Engine::BranchAndBound);
        assert_eq!(r.phi, 0);
    }

    #[test]
    fn isolated_vertices_stay_out_of_witness() {
        let g = Graph::new(4, [(1, 2)]).unwrap();
        let r = solve(g, Engine::Exhaustive);
        assert_eq!((r.phi, r.witness.clone()), (0, vec![1]));
        assert_eq!(
            r.report_json(),
            format!(
                r#"{{"phi":0,"witness":[1],"engine":"exhaustive","nodes":{}}}"#,
                r.nodes_explored
            )
        );
    }

    #[test]
    fn parity_report() {
        let c5 = Arc::new(cycle_graph(5).unwrap());
        let r =
            parity_of_cycle_mono_edges(&realize_labeling(c5.clone(), &[1, 3]).unwrap()).unwrap();
        assert_eq!((r.mono_edges, r.consistent), (1, true));
        let c6 = Arc::new(cycle_graph(6).unwrap());
        let r = parity_of_cycle_mono_edges(&realize_labeling(c6, &[0, 2, 4]).unwrap()).unwrap();
        assert_eq!((r.mono_edges, r.consistent), (0, true));
        let c3 = Arc::new(cycle_graph(3).unwrap());
        let r = parity_of_cycle_mono_edges(&realize_labeling(c3.clone(), &[]).unwrap()).unwrap();
        assert_eq!((r.mono_edges, r.consistent), (3, true));

        let p = Arc::new(path_graph(3).unwrap());
        assert_eq!(
            parity_of_cycle_mono_edges(&realize_labeling(p, &[]).unwrap()),
            Err(Error::NotACycle)
        );
        let wide = Labeling::new(
            c3,
            vec![
                SetLabel::new([0, 1]).unwrap(),
                SetLabel::new([0, 2]).unwrap(),
                SetLabel::singleton(10),
            ],
        )
        .unwrap();
        assert!(matches!(
            parity_of_cycle_mono_edges(&wide),
            Err(Error::NotWeak(_))
        ));
    }
}
