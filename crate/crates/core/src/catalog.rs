//! Product families and their published closed-form sparing numbers.
//!
//! Formulas are transcribed as printed, including where they contradict
//! small cases; [`crate::report::compare`] is where they get judged.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{
    cartesian_product, complete_bipartite, complete_graph, cycle_graph, path_graph, Graph,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Grid,
    Prism,
    Torus,
    CompleteXComplete,
    CompleteXPath,
    CompleteXCycle,
    BipartiteXCycle,
    BipartiteXComplete,
    Complete,
    Cycle,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Grid,
        Family::Prism,
        Family::Torus,
        Family::CompleteXComplete,
        Family::CompleteXPath,
        Family::CompleteXCycle,
        Family::BipartiteXCycle,
        Family::BipartiteXComplete,
        Family::Complete,
        Family::Cycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::Prism => "prism",
            Family::Torus => "torus",
            Family::CompleteXComplete => "complete_x_complete",
            Family::CompleteXPath => "complete_x_path",
            Family::CompleteXCycle => "complete_x_cycle",
            Family::BipartiteXCycle => "bipartite_x_cycle",
            Family::BipartiteXComplete => "bipartite_x_complete",
            Family::Complete => "complete",
            Family::Cycle => "cycle",
        }
    }

    /// Whether the proof's own count is transcribed separately from the
    /// stated closed form.
    pub fn has_proof_variant(self) -> bool {
        matches!(
            self,
            Family::Torus
                | Family::CompleteXPath
                | Family::CompleteXCycle
                | Family::BipartiteXComplete
        )
    }

    /// Default sweep instances, before any vertex cap.
    pub fn default_instances(self) -> Vec<FamilyInstance> {
        use FamilyInstance as F;
        let pairs = |a: std::ops::RangeInclusive<usize>, b: std::ops::RangeInclusive<usize>| {
            a.flat_map(move |x| b.clone().map(move |y| (x, y)))
        };
        let bip = || pairs(1..=4, 1..=4).filter(|&(a, b)| a <= b);
        match self {
            Family::Grid => pairs(2..=6, 2..=6)
                .map(|(rows, cols)| F::Grid { rows, cols })
                .collect(),
            Family::Prism => pairs(3..=6, 1..=5)
                .map(|(m, path_edges)| F::Prism { m, path_edges })
                .collect(),
            Family::Torus => pairs(3..=6, 3..=6)
                .map(|(m, n)| F::Torus { m, n })
                .collect(),
            Family::CompleteXComplete => pairs(2..=6, 2..=6)
                .map(|(m, n)| F::CompleteXComplete { m, n })
                .collect(),
            Family::CompleteXPath => pairs(2..=6, 1..=5)
                .map(|(n, path_edges)| F::CompleteXPath { n, path_edges })
                .collect(),
            Family::CompleteXCycle => pairs(2..=6, 3..=6)
                .map(|(n, m)| F::CompleteXCycle { n, m })
                .collect(),
            Family::BipartiteXCycle => bip()
                .flat_map(|(m1, m2)| [3, 5].map(|n| F::BipartiteXCycle { m1, m2, n }))
                .collect(),
            Family::BipartiteXComplete => bip()
                .flat_map(|(m1, m2)| (2..=6).map(move |n| F::BipartiteXComplete { m1, m2, n }))
                .collect(),
            Family::Complete => (2..=9).map(|n| F::Complete { n }).collect(),
            Family::Cycle => (3..=9).map(|n| F::Cycle { n }).collect(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// One member of a family. Path parameters count edges, as in the published
/// families (a path with `path_edges` edges has `path_edges + 1` vertices);
/// grid sides count vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyInstance {
    /// `P × P` with `rows` vertices per copy and `cols` copies.
    Grid {
        rows: usize,
        cols: usize,
    },
    /// `C_m × P_{path_edges}`.
    Prism {
        m: usize,
        path_edges: usize,
    },
    /// `C_m × C_n`.
    Torus {
        m: usize,
        n: usize,
    },
    /// `K_m × K_n`.
    CompleteXComplete {
        m: usize,
        n: usize,
    },
    /// `K_n × P_{path_edges}`.
    CompleteXPath {
        n: usize,
        path_edges: usize,
    },
    /// `K_n × C_m`.
    CompleteXCycle {
        n: usize,
        m: usize,
    },
    /// `K_{m1,m2} × C_n`, `n` odd.
    BipartiteXCycle {
        m1: usize,
        m2: usize,
        n: usize,
    },
    /// `K_{m1,m2} × K_n`.
    BipartiteXComplete {
        m1: usize,
        m2: usize,
        n: usize,
    },
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
}

/// Loose parameter bag, as collected from command-line flags.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Params {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub m1: Option<usize>,
    pub m2: Option<usize>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub path_edges: Option<usize>,
}

fn need(value: Option<usize>, flag: &str, family: Family) -> Result<usize> {
    value.ok_or_else(|| Error::InvalidParameter(format!("{family} requires --{flag}")))
}

fn at_least(value: usize, min: usize, what: &str) -> Result<()> {
    if value < min {
        Err(Error::InvalidParameter(format!(
            "{what} must be at least {min}, got {value}"
        )))
    } else {
        Ok(())
    }
}

impl FamilyInstance {
    pub fn from_params(family: Family, p: &Params) -> Result<Self> {
        use FamilyInstance as F;
        let inst = match family {
            Family::Grid => F::Grid {
                rows: need(p.rows, "rows", family)?,
                cols: need(p.cols, "cols", family)?,
            },
            Family::Prism => F::Prism {
                m: need(p.m, "m", family)?,
                path_edges: need(p.path_edges.or(p.n), "path-edges", family)?,
            },
            Family::Torus => F::Torus {
                m: need(p.m, "m", family)?,
                n: need(p.n, "n", family)?,
            },
            Family::CompleteXComplete => F::CompleteXComplete {
                m: need(p.m, "m", family)?,
                n: need(p.n, "n", family)?,
            },
            Family::CompleteXPath => F::CompleteXPath {
                n: need(p.n, "n", family)?,
                path_edges: need(p.path_edges.or(p.m), "path-edges", family)?,
            },
            Family::CompleteXCycle => F::CompleteXCycle {
                n: need(p.n, "n", family)?,
                m: need(p.m, "m", family)?,
            },
            Family::BipartiteXCycle => F::BipartiteXCycle {
                m1: need(p.m1, "m1", family)?,
                m2: need(p.m2, "m2", family)?,
                n: need(p.n, "n", family)?,
            },
            Family::BipartiteXComplete => F::BipartiteXComplete {
                m1: need(p.m1, "m1", family)?,
                m2: need(p.m2, "m2", family)?,
                n: need(p.n, "n", family)?,
            },
            Family::Complete => F::Complete {
                n: need(p.n, "n", family)?,
            },
            Family::Cycle => F::Cycle {
                n: need(p.n, "n", family)?,
            },
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        use FamilyInstance as F;
        match *self {
            F::Grid { rows, cols } => {
                at_least(rows, 2, "rows")?;
                at_least(cols, 2, "cols")
            }
            F::Prism { m, path_edges } => {
                at_least(m, 3, "m")?;
                at_least(path_edges, 1, "path_edges")
            }
            F::Torus { m, n } => {
                at_least(m, 3, "m")?;
                at_least(n, 3, "n")
            }
            F::CompleteXComplete { m, n } => {
                at_least(m, 2, "m")?;
                at_least(n, 2, "n")
            }
            F::CompleteXPath { n, path_edges } => {
                at_least(n, 2, "n")?;
                at_least(path_edges, 1, "path_edges")
            }
            F::CompleteXCycle { n, m } => {
                at_least(n, 2, "n")?;
                at_least(m, 3, "m")
            }
            F::BipartiteXCycle { m1, m2, n } => {
                at_least(m1, 1, "m1")?;
                if m1 > m2 {
                    return Err(Error::InvalidParameter(format!(
                        "need m1 <= m2, got {m1} > {m2}"
                    )));
                }
                at_least(n, 3, "n")?;
                if n % 2 == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "n must be odd, got {n}; the even case is bipartite"
                    )));
                }
                Ok(())
            }
            F::BipartiteXComplete { m1, m2, n } => {
                at_least(m1, 1, "m1")?;
                if m1 > m2 {
                    return Err(Error::InvalidParameter(format!(
                        "need m1 <= m2, got {m1} > {m2}"
                    )));
                }
                at_least(n, 2, "n")
            }
            F::Complete { n } => at_least(n, 2, "n"),
            F::Cycle { n } => at_least(n, 3, "n"),
        }
    }

    pub fn family(&self) -> Family {
        use FamilyInstance as F;
        match self {
            F::Grid { .. } => Family::Grid,
            F::Prism { .. } => Family::Prism,
            F::Torus { .. } => Family::Torus,
            F::CompleteXComplete { .. } => Family::CompleteXComplete,
            F::CompleteXPath { .. } => Family::CompleteXPath,
            F::CompleteXCycle { .. } => Family::CompleteXCycle,
            F::BipartiteXCycle { .. } => Family::BipartiteXCycle,
            F::BipartiteXComplete { .. } => Family::BipartiteXComplete,
            F::Complete { .. } => Family::Complete,
            F::Cycle { .. } => Family::Cycle,
        }
    }

    /// Named parameters in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, usize)> {
        use FamilyInstance as F;
        match *self {
            F::Grid { rows, cols } => vec![("rows", rows), ("cols", cols)],
            F::Prism { m, path_edges } => vec![("m", m), ("path_edges", path_edges)],
            F::Torus { m, n } | F::CompleteXComplete { m, n } => vec![("m", m), ("n", n)],
            F::CompleteXPath { n, path_edges } => vec![("n", n), ("path_edges", path_edges)],
            F::CompleteXCycle { n, m } => vec![("n", n), ("m", m)],
            F::BipartiteXCycle { m1, m2, n } | F::BipartiteXComplete { m1, m2, n } => {
                vec![("m1", m1), ("m2", m2), ("n", n)]
            }
            F::Complete { n } | F::Cycle { n } => vec![("n", n)],
        }
    }

    /// `m=3;n=2` style rendering used in reports.
    pub fn params_string(&self) -> String {
        self.params()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Row, then copy factor of the product (a single factor for `complete`/`cycle`).
    fn factors(&self) -> Result<(Graph, Option<Graph>)> {
        use FamilyInstance as F;
        self.validate()?;
        Ok(match *self {
            F::Grid { rows, cols } => (path_graph(rows)?, Some(path_graph(cols)?)),
            F::Prism { m, path_edges } => (cycle_graph(m)?, Some(path_graph(path_edges + 1)?)),
            F::Torus { m, n } => (cycle_graph(m)?, Some(cycle_graph(n)?)),
            F::CompleteXComplete { m, n } => (complete_graph(m)?, Some(complete_graph(n)?)),
            F::CompleteXPath { n, path_edges } => {
                (complete_graph(n)?, Some(path_graph(path_edges + 1)?))
            }
            F::CompleteXCycle { n, m } => (complete_graph(n)?, Some(cycle_graph(m)?)),
            F::BipartiteXCycle { m1, m2, n } => {
                (complete_bipartite(m1, m2)?, Some(cycle_graph(n)?))
            }
            F::BipartiteXComplete { m1, m2, n } => {
                (complete_bipartite(m1, m2)?, Some(complete_graph(n)?))
            }
            F::Complete { n } => (complete_graph(n)?, None),
            F::Cycle { n } => (cycle_graph(n)?, None),
        })
    }

    pub fn graph(&self) -> Result<Graph> {
        let (rows, copies) = self.factors()?;
        Ok(match copies {
            Some(c) => cartesian_product(&rows, &c),
            None => rows,
        })
    }

    pub fn shared_graph(&self) -> Result<Arc<Graph>> {
        self.graph().map(Arc::new)
    }

    pub fn vertex_count(&self) -> usize {
        use FamilyInstance as F;
        match *self {
            F::Grid { rows, cols } => rows * cols,
            F::Prism { m, path_edges } => m * (path_edges + 1),
            F::Torus { m, n } | F::CompleteXComplete { m, n } => m * n,
            F::CompleteXPath { n, path_edges } => n * (path_edges + 1),
            F::CompleteXCycle { n, m } => n * m,
            F::BipartiteXCycle { m1, m2, n } | F::BipartiteXComplete { m1, m2, n } => (m1 + m2) * n,
            F::Complete { n } | F::Cycle { n } => n,
        }
    }

    /// Both factors bipartite (for single-factor families: the graph itself).
    pub fn is_bipartite_product(&self) -> bool {
        self.factors()
            .map(|(a, b)| a.is_bipartite() && b.is_none_or(|b| b.is_bipartite()))
            .unwrap_or(false)
    }
}

impl fmt::Display for FamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family(), self.params_string())
    }
}

/// Which transcription of a published count to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// The closed form in the theorem statement.
    AsStated,
    /// The count the proof itself arrives at.
    ProofCount,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::AsStated => "as_stated",
            Variant::ProofCount => "proof_count",
        }
    }
}

/// A formula value. Formulas carrying a factor ½ are evaluated on the
/// doubled integer; an odd doubled value is not an integer count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    Value(i64),
    IllFormed { doubled: i64 },
}

impl Claim {
    fn half(doubled: i64) -> Claim {
        if doubled % 2 == 0 {
            Claim::Value(doubled / 2)
        } else {
            Claim::IllFormed { doubled }
        }
    }

    pub fn value(self) -> Option<i64> {
        match self {
            Claim::Value(v) => Some(v),
            Claim::IllFormed { .. } => None,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Value(v) => write!(f, "{v}"),
            Claim::IllFormed { doubled } => write!(f, "{doubled}/2"),
        }
    }
}

impl Serialize for Claim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Claim::Value(v) => s.serialize_i64(*v),
            Claim::IllFormed { .. } => s.serialize_str(&self.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaClaim {
    pub instance: FamilyInstance,
    pub claimed_phi: Claim,
    pub source: &'static str,
    pub variant: Variant,
}

fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// Evaluates a published sparing-number formula for `instance`.
///
/// Families without a separately transcribed proof count return the stated
/// closed form for both variants.
pub fn phi_formula(instance: &FamilyInstance, variant: Variant) -> Result<FormulaClaim> {
    use FamilyInstance as F;
    instance.validate()?;
    let proof = variant == Variant::ProofCount;
    let (claimed_phi, source) = match *instance {
        F::Grid { .. } => (Claim::Value(0), "grid_theorem"),
        F::Prism { m, path_edges } => {
            let n = path_edges as i64;
            (
                Claim::Value(if m % 2 == 0 { 0 } else { 2 * n + 1 }),
                "prism_proposition",
            )
        }
        F::Torus { m, n } => {
            let (mi, ni) = (m as i64, n as i64);
            match (m % 2 == 0, n % 2 == 0) {
                (true, true) => (Claim::Value(0), "torus_theorem_even_even"),
                (false, true) => (Claim::Value(2 * ni), "torus_theorem_odd_even"),
                // The proof handles this case by swapping the factors.
                (true, false) if proof => (Claim::Value(2 * mi), "torus_proof_even_odd"),
                (false, false) if proof => (Claim::Value(mi.max(ni)), "torus_proof_odd_odd"),
                _ => (Claim::Value(2 * mi.max(ni)), "torus_theorem_otherwise"),
            }
        }
        F::CompleteXComplete { m, n } => {
            let (m, n) = (m as i64, n as i64);
            let value = match n.cmp(&m) {
                std::cmp::Ordering::Less => Claim::Value(n * choose2(m - 1) + m * choose2(n - 1)),
                std::cmp::Ordering::Equal => Claim::Value(m * (m - 1) * (m - 2)),
                std::cmp::Ordering::Greater => Claim::half(m * (n - 2) * (m + n - 2)),
            };
            (value, "complete_x_complete_theorem")
        }
        F::CompleteXPath { n, path_edges } => {
            let (n, m) = (n as i64, path_edges as i64);
            if proof {
                (
                    Claim::half((m + 1) * (n - 1) * (n - 2) + 2 * m * (n - 2)),
                    "complete_x_path_proof",
                )
            } else {
                (
                    Claim::half((n - 1) * ((m + 1) * (n + 1) - 2)),
                    "complete_x_path_theorem",
                )
            }
        }
        F::CompleteXCycle { n, m } => {
            let (n, m) = (n as i64, m as i64);
            match (m % 2 == 0, proof) {
                (true, false) => (
                    Claim::half(m * (n + 1) * (n - 2)),
                    "complete_x_cycle_theorem_even",
                ),
                (true, true) => (
                    Claim::half(m * (n - 1) * (n - 2) + 2 * m * (n - 2)),
                    "complete_x_cycle_proof_even",
                ),
                (false, false) => (
                    Claim::half((n + 1) * (m * (n - 2) + 2)),
                    "complete_x_cycle_theorem_odd",
                ),
                (false, true) => (
                    Claim::half(
                        (m - 1) * (n - 1) * (n - 2)
                            + 2 * (m - 2) * (n - 2)
                            + 4 * (n - 1)
                            + n * (n - 1),
                    ),
                    "complete_x_cycle_proof_odd",
                ),
            }
        }
        F::BipartiteXCycle { m1, m2, .. } => (
            Claim::Value((m1 * (m2 + 1)) as i64),
            "bipartite_x_cycle_theorem",
        ),
        F::BipartiteXComplete { m1, m2, n } => {
            let (m1, m2, n) = (m1 as i64, m2 as i64, n as i64);
            if proof {
                // Half the claimed degree sum, less the degrees of the one
                // non-singleton part.
                (
                    Claim::half(n * m1 * (m2 + n) + n * m2 * (m1 + n) - 2 * m2 * (m1 + n)),
                    "bipartite_x_complete_proof",
                )
            } else {
                (
                    Claim::half(2 * (n - 1) * m1 * m2 + n * (n * m1 + (n - 2) * m2)),
                    "bipartite_x_complete_theorem",
                )
            }
        }
        F::Complete { n } => {
            let n = n as i64;
            (Claim::half((n - 1) * (n - 2)), "complete_graph_theorem")
        }
        F::Cycle { n } => (Claim::Value((n % 2) as i64), "cycle_parity_theorem"),
    };
    Ok(FormulaClaim {
        instance: *instance,
        claimed_phi,
        source,
        variant,
    })
}

/// Rows of the formula catalog: every instance with the stated variant,
/// plus the proof variant for families that have one.
pub fn catalog_rows(instances: &[FamilyInstance]) -> Result<Vec<FormulaClaim>> {
    let mut rows = Vec::new();
    for inst in instances {
        rows.push(phi_formula(inst, Variant::AsStated)?);
        if inst.family().has_proof_variant() {
            rows.push(phi_formula(inst, Variant::ProofCount)?);
        }
    }
    Ok(rows)
}

/// CSV with columns `family,params,variant,claimed_phi,citation`.
pub fn catalog_csv(rows: &[FormulaClaim]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(["family", "params", "variant", "claimed_phi", "citation"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.instance.family().name(),
            &r.instance.params_string(),
            r.variant.name(),
            &r.claimed_phi.to_string(),
            r.source,
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii csv"))
}
