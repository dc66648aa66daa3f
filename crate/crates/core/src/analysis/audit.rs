use serde::Serialize;

use crate::analysis::lemmas::LemmaContext;
use crate::analysis::{LemmaReport, Witness};
use crate::complex::SimplicialComplex;
use crate::dualgraph::{covered_vertices, Graph};
use crate::error::{Error, Result};

/// Re-evaluation of the counting argument that bounds the vertex count of a
/// tight neighborly `d`-manifold through the dual graph of its filling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    /// Dimension of the boundary manifold.
    pub d: u64,
    pub n: Option<u64>,
    pub beta1: u64,
    /// Nodes of degree at least three.
    pub high_degree: Vec<usize>,
    pub checks: Vec<LemmaReport>,
    /// Vertex counts compatible with every derived constraint.
    pub admissible: Vec<u64>,
    pub contradiction: bool,
}

impl AuditReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, id: &str) -> Option<&LemmaReport> {
        self.checks.iter().find(|c| c.id == id)
    }
}

fn counts(id: &str, expected: i128, actual: i128, detail: &str) -> LemmaReport {
    if expected == actual {
        LemmaReport::pass(id)
    } else {
        LemmaReport::fail(id, Witness::Counts { expected, actual, detail: detail.into() })
    }
}

/// Graph-level audit. `graph` plays the dual graph of a neighborly
/// `(d+1)`-dimensional filling whose boundary has first Betti number
/// `beta1`. With `n` unset, every vertex count up to the bound implied by
/// the high-degree nodes is tried.
pub fn audit_graph(graph: &Graph, d: u64, beta1: u64, n: Option<u64>) -> Result<AuditReport> {
    if d < 2 {
        return Err(Error::Range(format!("audit needs d >= 2, got {d}")));
    }
    if beta1 < 1 {
        return Err(Error::Range("audit needs beta1 >= 1".into()));
    }
    let nu = graph.num_nodes() as i128;
    let eps = graph.num_edges() as i128;
    let high_degree: Vec<usize> = (0..graph.num_nodes()).filter(|&u| graph.degree(u) >= 3).collect();
    let t = high_degree.len() as i128;
    let excess: i128 = (0..graph.num_nodes()).map(|u| graph.degree(u) as i128 - 2).sum();
    let mut checks = Vec::new();

    checks.push(match (0..graph.num_nodes()).find(|&u| graph.degree(u) < 2) {
        None => LemmaReport::pass("min-degree-two"),
        Some(u) => LemmaReport::fail(
            "min-degree-two",
            Witness::Path { nodes: vec![u], detail: format!("node of degree {}", graph.degree(u)) },
        ),
    });
    checks.push(counts("degree-sum-identity", 2 * (eps - nu), excess, "sum of (deg - 2) vs 2(ε - ν)"));
    checks.push(if t <= 2 * (eps - nu) {
        LemmaReport::pass("high-degree-bound")
    } else {
        LemmaReport::fail(
            "high-degree-bound",
            Witness::Counts { expected: 2 * (eps - nu), actual: t, detail: "|T| exceeds 2(ε - ν)".into() },
        )
    });
    checks.push(counts("euler-beta1", beta1 as i128, eps - nu + 1, "β_1 vs ε - ν + 1"));

    let cycle_n = 2 * d + 3;
    let solves = |n: u64| {
        let (a, b) = ((n - d - 1) as u128, (n - d - 2) as u128);
        a * b == beta1 as u128 * (d as u128 + 1) * (d as u128 + 2)
    };
    let admissible_n = |n: u64| {
        n > d + 2
            && solves(n)
            && if high_degree.is_empty() {
                graph.is_cycle() && n == cycle_n
            } else {
                n > cycle_n && n as i128 <= t * (d as i128 + 2)
            }
    };

    if let Some(n) = n {
        let (ni, di) = (n as i128, d as i128);
        checks.push(if high_degree.is_empty() {
            counts("cycle-case", cycle_n as i128, ni, "f_0 when no node has degree three")
        } else if ni <= t * (di + 2) {
            LemmaReport::pass("vertex-bound")
        } else {
            LemmaReport::fail(
                "vertex-bound",
                Witness::Counts { expected: t * (di + 2), actual: ni, detail: "f_0 exceeds |T|(d + 2)".into() },
            )
        });
        checks.push(counts("dual-node-count", ni * (ni - di - 1), nu * (di + 2), "ν(d + 2) vs n(n - d - 1)"));
        checks.push(counts("dual-edge-count", ni * (ni - di - 2), eps * (di + 1), "ε(d + 1) vs n(n - d - 2)"));
        let lhs = (ni - di - 1) * (ni - di - 2);
        let rhs = beta1 as i128 * (di + 1) * (di + 2);
        checks.push(counts("tight-equation", rhs, lhs, "(n - d - 1)(n - d - 2) vs β_1(d + 1)(d + 2)"));
    }

    let admissible: Vec<u64> = match n {
        Some(n) => [n].into_iter().filter(|&n| admissible_n(n)).collect(),
        None => {
            let upper = if high_degree.is_empty() { cycle_n } else { (t as u64) * (d + 2) };
            (d + 3..=upper).filter(|&n| admissible_n(n)).collect()
        }
    };
    let contradiction = admissible.is_empty();
    Ok(AuditReport { d, n, beta1, high_degree, checks, admissible, contradiction })
}

/// Runs [`audit_graph`] on the dual graph of `mbar` with its actual vertex
/// count, adding the check that high-degree facets cover every vertex
/// whenever such facets exist.
pub fn theorem_argument_audit(mbar: &SimplicialComplex, beta1: u64) -> Result<AuditReport> {
    let ctx = LemmaContext::new(mbar)?;
    let dual = ctx.dual();
    let d = mbar.dim() as u64 - 1;
    let mut report = audit_graph(dual.graph(), d, beta1, Some(mbar.num_vertices() as u64))?;
    if !report.high_degree.is_empty() {
        let covered = covered_vertices(dual, &report.high_degree)?;
        report.checks.push(match mbar.vertices().iter().find(|v| !covered.contains(v)) {
            None => LemmaReport::pass("high-degree-cover"),
            Some(&v) => LemmaReport::fail(
                "high-degree-cover",
                Witness::Vertex { vertex: v, detail: "outside every high-degree facet".into() },
            ),
        });
    }
    Ok(report)
}
