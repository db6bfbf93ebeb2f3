//! Explicit labelings for each product family.
//!
//! Every construction picks the set of vertices that receive two-element
//! labels and hands it to [`realize_labeling`]. Product vertex `(row, copy)`
//! sits at index `copy * rows + row`.

use serde_json::json;

use crate::catalog::{phi_formula, Claim, FamilyInstance, Variant};
use crate::error::{Error, Result};
use crate::graph::Bipartiteness;
use crate::labels::{realize_labeling, Labeling};

/// A labeling built for one family instance, with the mono-edge count it
/// achieves next to the count the published proof claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionOutcome {
    pub family: FamilyInstance,
    pub labeling: Labeling,
    pub achieved_mono_edges: u64,
    pub claimed_mono_edges: Claim,
}

impl ConstructionOutcome {
    /// `{"family", "params", "achieved", "claimed", "labeling"}`
    pub fn to_json(&self) -> String {
        let params: serde_json::Map<String, serde_json::Value> = self
            .family
            .params()
            .into_iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        json!({
            "family": self.family.family().name(),
            "params": params,
            "achieved": self.achieved_mono_edges,
            "claimed": self.claimed_mono_edges,
            "labeling": self.labeling.to_value(),
        })
        .to_string()
    }
}

fn finish(family: FamilyInstance, nonsingleton: Vec<usize>) -> Result<ConstructionOutcome> {
    let graph = family.shared_graph()?;
    let labeling = realize_labeling(graph, &nonsingleton)?;
    if let Err(v) = labeling.check_weak_iasi() {
        return Err(Error::NotWeak(v.to_string()));
    }
    let achieved_mono_edges = labeling.mono_indexed_edges().len() as u64;
    let claimed_mono_edges = phi_formula(&family, Variant::ProofCount)?.claimed_phi;
    Ok(ConstructionOutcome {
        family,
        labeling,
        achieved_mono_edges,
        claimed_mono_edges,
    })
}

/// Largest independent set of an odd cycle `C_len` missing exactly the edge
/// `(offset - 2, offset - 1)`: positions `offset, offset + 2, …`.
/// Offsets differing by one give disjoint sets.
fn odd_cycle_run(len: usize, offset: usize) -> impl Iterator<Item = usize> {
    (0..(len - 1) / 2).map(move |t| (offset + 2 * t) % len)
}

/// Alternating pattern on an even cycle or a path.
fn alternating(len: usize, parity: usize) -> impl Iterator<Item = usize> {
    (0..len).filter(move |i| i % 2 == parity)
}

/// One run per copy of an odd cycle `C_len`, with consecutive copies'
/// offsets differing by exactly one.
fn odd_cycle_copies(len: usize, offsets: &[usize]) -> Vec<(usize, usize)> {
    offsets
        .iter()
        .enumerate()
        .flat_map(|(copy, &off)| odd_cycle_run(len, off).map(move |row| (row, copy)))
        .collect()
}

fn flatten(rows: usize, cells: impl IntoIterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut v: Vec<usize> = cells.into_iter().map(|(r, c)| c * rows + r).collect();
    v.sort_unstable();
    v
}

fn checkerboard(rows: usize, copies: usize) -> Vec<usize> {
    flatten(
        rows,
        (0..copies).flat_map(|c| alternating(rows, (c + 1) % 2).map(move |r| (r, c))),
    )
}

/// Offsets `s_0 … s_{copies-1}` around an odd cycle of copies, each step ±1
/// mod `len`, closing up. Needs `copies ≥ len`, both odd.
fn closing_offsets(len: usize, copies: usize) -> Vec<usize> {
    debug_assert!(copies >= len && len % 2 == 1 && copies % 2 == 1);
    let up = (copies + len) / 2;
    let mut s = 0usize;
    (0..copies)
        .map(|j| {
            let cur = s;
            s = if j < up {
                (s + 1) % len
            } else {
                (s + len - 1) % len
            };
            cur
        })
        .collect()
}

/// `P_rows × P_cols` (vertex counts): singletons and pairs alternate along
/// every copy, starting with a singleton on even copies.
pub fn label_grid(rows: usize, cols: usize) -> Result<ConstructionOutcome> {
    let family = FamilyInstance::Grid { rows, cols };
    family.validate()?;
    finish(family, checkerboard(rows, cols))
}

/// `C_m × P_{path_edges}`. For odd `m` each copy carries one mono edge,
/// shifted by one position between neighbouring copies so the rungs carry
/// only one mono edge each.
pub fn label_prism(m: usize, path_edges: usize) -> Result<ConstructionOutcome> {
    let family = FamilyInstance::Prism { m, path_edges };
    family.validate()?;
    let copies = path_edges + 1;
    let set = if m.is_multiple_of(2) {
        checkerboard(m, copies)
    } else {
        let offsets: Vec<usize> = (0..copies).map(|j| j % 2).collect();
        flatten(m, odd_cycle_copies(m, &offsets))
    };
    finish(family, set)
}

/// `C_m × C_n`, `n` copies of `C_m`.
pub fn label_torus(m: usize, n: usize) -> Result<ConstructionOutcome> {
    let family = FamilyInstance::Torus { m, n };
    family.validate()?;
    let set = match (m.is_multiple_of(2), n.is_multiple_of(2)) {
        (true, true) => checkerboard(m, n),
        (false, true) => {
            let offsets: Vec<usize> = (0..n).map(|j| j % 2).collect();
            flatten(m, odd_cycle_copies(m, &offsets))
        }
        (true, false) => {
            let offsets: Vec<usize> = (0..m).map(|i| i % 2).collect();
            flatten(
                m,
                odd_cycle_copies(n, &offsets)
                    .into_iter()
                    .map(|(c, r)| (r, c)),
            )
        }
        (false, false) if m <= n => flatten(m, odd_cycle_copies(m, &closing_offsets(m, n))),
        (false, false) => flatten(
            m,
            odd_cycle_copies(n, &closing_offsets(n, m))
                .into_iter()
                .map(|(c, r)| (r, c)),
        ),
    };
    finish(family, set)
}

/// `K_m × K_n`: copy `j` gets its pair-labeled vertex in row `j`, for the
/// first `min(m, n)` copies.
pub fn label_complete_product(m: usize, n: usize) -> Result<ConstructionOutcome> {
    let family = FamilyInstance::CompleteXComplete { m, n };
    family.validate()?;
    finish(family, flatten(m, (0..m.min(n)).map(|j| (j, j))))
}

/// `K_n × P_{path_edges}`: one pair-labeled vertex per copy, alternating
/// between the first two rows.
pub fn label_complete_path(n: usize, path_edges: usize) -> Result<ConstructionOutcome> {
    let family = FamilyInstance::CompleteXPath { n, path_edges };
    family.validate()?;
    finish(family, flatten(n, (0..=path_edges).map(|j| (j % 2, j))))
}

/// `K_n × C_m`: as for the path; with `m` odd the last copy is left 1-uniform.
pub fn label_complete_cycle(n: usize, m: usize) -> Result<ConstructionOutcome> {
    let family = FamilyInstance::CompleteXCycle { n, m };
    family.validate()?;
    let used = if m.is_multiple_of(2) { m } else { m - 1 };
    finish(family, flatten(n, (0..used).map(|j| (j % 2, j))))
}

/// `K_{m1,m2} × C_n`, `n` odd: copies alternate between pair-labeled `Y` and
/// pair-labeled `X`, and the last copy is 1-uniform.
pub fn label_bipartite_cycle(m1: usize, m2: usize, n_odd: usize) -> Result<ConstructionOutcome> {
    let family = FamilyInstance::BipartiteXCycle { m1, m2, n: n_odd };
    family.validate()?;
    let rows = m1 + m2;
    let cells = (0..n_odd - 1).flat_map(|copy| {
        let part = if copy % 2 == 0 { m1..rows } else { 0..m1 };
        part.map(move |r| (r, copy))
    });
    finish(family, flatten(rows, cells))
}

/// Checkerboard labeling of `K_{m1,m2} × C_n` for even `n`; the product is
/// bipartite and no edge is mono-indexed.
pub fn label_bipartite_even_cycle(m1: usize, m2: usize, n_even: usize) -> Result<Labeling> {
    use crate::graph::{cartesian_product, complete_bipartite, cycle_graph};
    if n_even % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "n must be even, got {n_even}"
        )));
    }
    let g = cartesian_product(&complete_bipartite(m1, m2)?, &cycle_graph(n_even)?);
    let rows = m1 + m2;
    let cells = (0..n_even).flat_map(|copy| {
        let part = if copy % 2 == 0 { m1..rows } else { 0..m1 };
        part.map(move |r| (r, copy))
    });
    realize_labeling(std::sync::Arc::new(g), &flatten(rows, cells))
}

/// `K_{m1,m2} × K_n`: only the `Y` part of the first copy is pair-labeled.
/// For `n = 2` the product is bipartite and gets the two-colouring instead.
pub fn label_bipartite_complete(m1: usize, m2: usize, n: usize) -> Result<ConstructionOutcome> {
    let family = FamilyInstance::BipartiteXComplete { m1, m2, n };
    family.validate()?;
    if n == 2 {
        return finish(family, colour_class(&family)?);
    }
    finish(family, (m1..m1 + m2).collect())
}

/// The colour class of a bipartite instance that avoids vertex 0.
fn colour_class(family: &FamilyInstance) -> Result<Vec<usize>> {
    match family.graph()?.bipartiteness() {
        Bipartiteness::Bipartite(colours) => Ok(colours
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(v, _)| v)
            .collect()),
        Bipartiteness::OddCycle(_) => Err(Error::InvalidParameter(format!(
            "{family} is not bipartite"
        ))),
    }
}

/// `K_n` with a single pair-labeled vertex.
pub fn label_complete(n: usize) -> Result<ConstructionOutcome> {
    let family = FamilyInstance::Complete { n };
    family.validate()?;
    finish(family, vec![0])
}

/// `C_n`: alternating, with one mono edge when `n` is odd.
pub fn label_cycle(n: usize) -> Result<ConstructionOutcome> {
    let family = FamilyInstance::Cycle { n };
    family.validate()?;
    let set = if n.is_multiple_of(2) {
        alternating(n, 0).collect()
    } else {
        let mut v: Vec<usize> = odd_cycle_run(n, 0).collect();
        v.sort_unstable();
        v
    };
    finish(family, set)
}

/// Dispatches to the family's construction.
pub fn construct(instance: &FamilyInstance) -> Result<ConstructionOutcome> {
    use FamilyInstance as F;
    match *instance {
        F::Grid { rows, cols } => label_grid(rows, cols),
        F::Prism { m, path_edges } => label_prism(m, path_edges),
        F::Torus { m, n } => label_torus(m, n),
        F::CompleteXComplete { m, n } => label_complete_product(m, n),
        F::CompleteXPath { n, path_edges } => label_complete_path(n, path_edges),
        F::CompleteXCycle { n, m } => label_complete_cycle(n, m),
        F::BipartiteXCycle { m1, m2, n } => label_bipartite_cycle(m1, m2, n),
        F::BipartiteXComplete { m1, m2, n } => label_bipartite_complete(m1, m2, n),
        F::Complete { n } => label_complete(n),
        F::Cycle { n } => label_cycle(n),
    }
}
