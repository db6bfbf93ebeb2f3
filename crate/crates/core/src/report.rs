//! Formula vs construction vs exact oracle, per instance and per sweep.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::catalog::{phi_formula, Claim, Family, FamilyInstance, Variant};
use crate::constructions::construct;
use crate::error::{Error, Result};
use crate::oracle::{sparing_number_exact, Engine, SolveOptions, BRANCH_AND_BOUND_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Match,
    FormulaLow,
    FormulaHigh,
    ConstructionSuboptimal,
    IllFormed,
    Unverified,
}

impl Verdict {
    pub const ALL: [Verdict; 6] = [
        Verdict::Match,
        Verdict::FormulaLow,
        Verdict::FormulaHigh,
        Verdict::ConstructionSuboptimal,
        Verdict::IllFormed,
        Verdict::Unverified,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::FormulaLow => "FORMULA_LOW",
            Verdict::FormulaHigh => "FORMULA_HIGH",
            Verdict::ConstructionSuboptimal => "CONSTRUCTION_SUBOPTIMAL",
            Verdict::IllFormed => "ILL_FORMED",
            Verdict::Unverified => "UNVERIFIED",
        }
    }

    /// Judges a stated claim and a construction against the oracle.
    /// Formula disagreements take precedence over construction slack.
    pub fn judge(claimed: Claim, achieved: u64, oracle: Option<u64>) -> Verdict {
        let Some(phi) = oracle else {
            return Verdict::Unverified;
        };
        let Claim::Value(claimed) = claimed else {
            return Verdict::IllFormed;
        };
        match claimed.cmp(&(phi as i64)) {
            std::cmp::Ordering::Less => Verdict::FormulaLow,
            std::cmp::Ordering::Greater => Verdict::FormulaHigh,
            std::cmp::Ordering::Equal if achieved > phi => Verdict::ConstructionSuboptimal,
            std::cmp::Ordering::Equal => Verdict::Match,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub instance: FamilyInstance,
    pub vertices: usize,
    pub edges: usize,
    pub claimed: Claim,
    /// Present for families whose proof count is transcribed separately.
    pub proof_claimed: Option<Claim>,
    pub achieved: u64,
    pub oracle: Option<u64>,
    pub engine: Option<Engine>,
    pub verdict: Verdict,
    /// Why the oracle did not run, when it did not.
    pub note: Option<String>,
}

/// Evaluates the stated formula, the proof count, the construction and the
/// exact oracle for one instance. Oracle resource limits yield an
/// `UNVERIFIED` row rather than an error.
pub fn compare(instance: &FamilyInstance, opts: &SolveOptions) -> Result<ComparisonRow> {
    let claimed = phi_formula(instance, Variant::AsStated)?.claimed_phi;
    let proof_claimed = if instance.family().has_proof_variant() {
        Some(phi_formula(instance, Variant::ProofCount)?.claimed_phi)
    } else {
        None
    };
    let outcome = construct(instance)?;
    let graph = outcome.labeling.graph().clone();
    let (oracle, engine, note) = match sparing_number_exact(graph.clone(), opts) {
        Ok(r) => (Some(r.phi), Some(r.engine), None),
        Err(e) if e.is_resource_limit() => (None, None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(ComparisonRow {
        instance: *instance,
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        claimed,
        proof_claimed,
        achieved: outcome.achieved_mono_edges,
        oracle,
        engine,
        verdict: Verdict::judge(claimed, outcome.achieved_mono_edges, oracle),
        note,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::InvalidParameter(format!("unknown format `{other}`"))),
        }
    }
}

pub const DEFAULT_MAX_VERTICES: usize = 36;

/// Which instances to compare.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub families: Vec<Family>,
    /// Instances with more vertices are skipped. At most 64.
    pub max_vertices: usize,
}

impl SweepSpec {
    pub fn new(families: Vec<Family>, max_vertices: usize) -> Result<Self> {
        if max_vertices > BRANCH_AND_BOUND_LIMIT {
            return Err(Error::InvalidParameter(format!(
                "max_vertices {max_vertices} exceeds {BRANCH_AND_BOUND_LIMIT}"
            )));
        }
        Ok(SweepSpec {
            families,
            max_vertices,
        })
    }

    pub fn all(max_vertices: usize) -> Result<Self> {
        SweepSpec::new(Family::ALL.to_vec(), max_vertices)
    }

    /// Parses `grid,torus` or `all`.
    pub fn parse_families(list: &str) -> Result<Vec<Family>> {
        let mut out = Vec::new();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "all" {
                out.extend(Family::ALL);
            } else {
                out.push(item.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Instances in report order: family, then parameters.
    pub fn instances(&self) -> Vec<FamilyInstance> {
        let mut v: Vec<FamilyInstance> = self
            .families
            .iter()
            .flat_map(|f| f.default_instances())
            .filter(|i| i.vertex_count() <= self.max_vertices)
            .collect();
        v.sort_by_key(|i| {
            (
                i.family(),
                i.params().into_iter().map(|p| p.1).collect::<Vec<_>>(),
            )
        });
        v.dedup();
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub rows: Vec<ComparisonRow>,
}

/// Runs a sweep. Rows are solved in parallel and merged in instance order.
pub fn run_sweep(spec: &SweepSpec, opts: &SolveOptions) -> Result<Report> {
    let rows = spec
        .instances()
        .par_iter()
        .map(|i| compare(i, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report { rows })
}

fn opt_string<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl Report {
    pub fn summary(&self) -> BTreeMap<Verdict, usize> {
        let mut counts: BTreeMap<Verdict, usize> = Verdict::ALL.iter().map(|&v| (v, 0)).collect();
        for r in &self.rows {
            *counts.get_mut(&r.verdict).unwrap() += 1;
        }
        counts
    }

    fn summary_line(&self) -> String {
        self.summary()
            .iter()
            .map(|(v, c)| format!("{v}={c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
        }
    }

    const COLUMNS: [&'static str; 10] = [
        "family",
        "params",
        "vertices",
        "edges",
        "claimed",
        "proof_claimed",
        "achieved",
        "oracle",
        "engine",
        "verdict",
    ];

    fn cells(r: &ComparisonRow) -> [String; 10] {
        [
            r.instance.family().name().to_string(),
            r.instance.params_string(),
            r.vertices.to_string(),
            r.edges.to_string(),
            r.claimed.to_string(),
            opt_string(r.proof_claimed),
            r.achieved.to_string(),
            opt_string(r.oracle),
            opt_string(r.engine.map(Engine::name)),
            r.verdict.name().to_string(),
        ]
    }

    /// Header, one row per instance, then a `# summary:` footer line.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(Self::COLUMNS).expect("in-memory write");
        for r in &self.rows {
            w.write_record(Self::cells(r)).expect("in-memory write");
        }
        let mut out =
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii csv");
        let _ = writeln!(out, "# summary: {}", self.summary_line());
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<_> = self
            .rows
            .iter()
            .map(|r| {
                let params: serde_json::Map<_, _> = r
                    .instance
                    .params()
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), json!(v)))
                    .collect();
                json!({
                    "family": r.instance.family().name(),
                    "params": params,
                    "vertices": r.vertices,
                    "edges": r.edges,
                    "claimed": r.claimed,
                    "proof_claimed": r.proof_claimed,
                    "achieved": r.achieved,
                    "oracle": r.oracle,
                    "engine": r.engine.map(Engine::name),
                    "verdict": r.verdict,
                    "note": r.note,
                })
            })
            .collect();
        let summary: serde_json::Map<_, _> = self
            .summary()
            .into_iter()
            .map(|(v, c)| (v.name().to_string(), json!(c)))
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({ "rows": rows, "summary": summary }))
            .expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "| {} |", Self::COLUMNS.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(Self::COLUMNS.len()));
        for r in &self.rows {
            let _ = writeln!(out, "| {} |", Self::cells(r).join(" | "));
        }
        out.push('\n');
        for (v, c) in self.summary() {
            let _ = writeln!(out, "- {v}: {c}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use FamilyInstance as F;

    fn row(i: FamilyInstance) -> ComparisonRow {
        compare(&i, &SolveOptions::default()).unwrap()
    }

    #[test]
    fn compare_examples() {
        let r = row(F::Torus { m: 4, n: 4 });
        assert_eq!(
            (r.claimed, r.achieved, r.oracle, r.verdict),
            (Claim::Value(0), 0, Some(0), Verdict::Match)
        );

        let r = row(F::CompleteXComplete { m: 3, n: 2 });
        assert_eq!(
            (r.claimed, r.oracle, r.verdict),
            (Claim::Value(2), Some(3), Verdict::FormulaLow)
        );

        let r = row(F::Complete { n: 6 });
        assert_eq!(
            (r.claimed, r.oracle, r.verdict),
            (Claim::Value(10), Some(10), Verdict::Match)
        );

        let r = row(F::CompleteXCycle { n: 3, m: 3 });
        assert_eq!(
            (r.claimed, r.achieved, r.oracle, r.verdict),
            (Claim::Value(10), 10, Some(6), Verdict::FormulaHigh)
        );

        let r = row(F::BipartiteXComplete { m1: 1, m2: 2, n: 3 });
        assert_eq!(r.verdict, Verdict::IllFormed);
    }

    #[test]
    fn judge_ordering() {
        assert_eq!(Verdict::judge(Claim::Value(3), 3, Some(3)), Verdict::Match);
        assert_eq!(
            Verdict::judge(Claim::Value(3), 5, Some(3)),
            Verdict::ConstructionSuboptimal
        );
        assert_eq!(
            Verdict::judge(Claim::Value(2), 3, Some(3)),
            Verdict::FormulaLow
        );
        assert_eq!(
            Verdict::judge(Claim::Value(4), 3, Some(3)),
            Verdict::FormulaHigh
        );
        assert_eq!(
            Verdict::judge(Claim::IllFormed { doubled: 3 }, 3, Some(3)),
            Verdict::IllFormed
        );
        assert_eq!(
            Verdict::judge(Claim::Value(3), 3, None),
            Verdict::Unverified
        );
    }

    #[test]
    fn resource_limits_mark_rows_unverified() {
        let opts = SolveOptions {
            node_budget: 5,
            ..Default::default()
        };
        let r = compare(&F::Torus { m: 4, n: 4 }, &opts).unwrap();
        assert_eq!((r.oracle, r.verdict), (None, Verdict::Unverified));
        assert!(r.note.unwrap().contains("node budget"));
    }

    #[test]
    fn sweep_order_and_rendering() {
        let spec = SweepSpec::new(SweepSpec::parse_families("torus,grid").unwrap(), 9).unwrap();
        let inst = spec.instances();
        assert_eq!(
            inst,
            vec![
                F::Grid { rows: 2, cols: 2 },
                F::Grid { rows: 2, cols: 3 },
                F::Grid { rows: 2, cols: 4 },
                F::Grid { rows: 3, cols: 2 },
                F::Grid { rows: 3, cols: 3 },
                F::Grid { rows: 4, cols: 2 },
                F::Torus { m: 3, n: 3 },
            ]
        );
        let report = run_sweep(&spec, &SolveOptions::default()).unwrap();
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some(
                "family,params,vertices,edges,claimed,proof_claimed,achieved,oracle,engine,verdict"
            )
        );
        assert_eq!(
            lines.next(),
            Some("grid,rows=2;cols=2,4,4,0,,0,0,exhaustive,MATCH")
        );
        assert_eq!(
            csv.lines().nth(7),
            Some("torus,m=3;n=3,9,18,6,3,6,6,exhaustive,MATCH")
        );
        assert_eq!(
            csv.lines().last(),
            Some("# summary: MATCH=7 FORMULA_LOW=0 FORMULA_HIGH=0 CONSTRUCTION_SUBOPTIMAL=0 ILL_FORMED=0 UNVERIFIED=0")
        );
        assert!(!csv.contains('"'));

        let md = report.to_markdown();
        assert!(md.starts_with("| family | params |"));
        assert!(md.contains("- MATCH: 7"));
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 7);
        assert_eq!(v["summary"]["MATCH"], 7);
        assert_eq!(v["rows"][6]["proof_claimed"], 3);
    }

    #[test]
    fn sweep_spec_validation() {
        assert!(SweepSpec::all(65).is_err());
        assert!(SweepSpec::parse_families("grid,bogus").is_err());
        assert_eq!(
            SweepSpec::parse_families("all").unwrap(),
            Family::ALL.to_vec()
        );
        assert_eq!("md".parse::<Format>(), Ok(Format::Markdown));
        assert!("xml".parse::<Format>().is_err());
    }
}
