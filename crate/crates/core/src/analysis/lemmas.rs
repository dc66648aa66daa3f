use std::fmt;
use std::str::FromStr;

use crate::analysis::{LemmaReport, Witness};
use crate::complex::{SimplicialComplex, Vertex};
use crate::dualgraph::{covered_vertices, dual_graph, vertex_facet_subgraph_of, DualGraph};
use crate::error::{Error, Result};
use crate::homology::beta1_z2;
use crate::walkup::class_membership;

/// Structural statements about neighborly members of the stacked-ball-link
/// class that can be checked on a concrete complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaId {
    /// The dual graph is 2-connected.
    TwoConnected,
    /// Each vertex lies in `f_0 - D` facets, which induce a tree.
    VertexFacetTrees,
    /// `ν = n(n-D)/(D+1)` and `ε = n(n-D-1)/D`.
    DualCounts,
    /// `f_0 >= 2D + 1`, with equality iff the dual graph is a cycle.
    CycleBound,
    /// `β_1(∂M) = ε - ν + 1`.
    Beta1Dual,
    /// Every critical facet set is a cover (exhaustive over subsets).
    CriticalCover,
    /// Along paths whose interior nodes have degree at most two, the
    /// dropped vertices are distinct, lie in the first facet, and the
    /// path length is at most `D + 1`.
    PathLemma,
    /// Facets of dual degree three or more cover all vertices.
    HighDegreeCover,
}

impl LemmaId {
    pub const ALL: [LemmaId; 8] = [
        LemmaId::TwoConnected,
        LemmaId::VertexFacetTrees,
        LemmaId::DualCounts,
        LemmaId::CycleBound,
        LemmaId::Beta1Dual,
        LemmaId::CriticalCover,
        LemmaId::PathLemma,
        LemmaId::HighDegreeCover,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaId::TwoConnected => "two-connected",
            LemmaId::VertexFacetTrees => "vertex-facet-trees",
            LemmaId::DualCounts => "dual-counts",
            LemmaId::CycleBound => "cycle-bound",
            LemmaId::Beta1Dual => "beta1-dual",
            LemmaId::CriticalCover => "critical-cover",
            LemmaId::PathLemma => "path-lemma",
            LemmaId::HighDegreeCover => "high-degree-cover",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

/// Largest dual graph on which the critical-implies-cover statement is
/// checked over every subset.
const CRITICAL_SUBSET_LIMIT: usize = 22;

/// A complex that passed the shared hypotheses (pure, not a single simplex,
/// 2-neighborly, all vertex links stacked balls) together with its dual graph.
pub struct LemmaContext<'a> {
    complex: &'a SimplicialComplex,
    dual: DualGraph,
    /// Vertex count.
    n: u64,
    /// Dimension of the complex.
    dim: u64,
}

impl<'a> LemmaContext<'a> {
    pub fn new(m: &'a SimplicialComplex) -> Result<Self> {
        if m.is_empty() || !m.is_pure() {
            return Err(Error::Hypothesis("complex must be non-empty and pure".into()));
        }
        if m.num_facets() == 1 {
            return Err(Error::Hypothesis("complex is a single simplex".into()));
        }
        if m.dim() == 0 {
            return Err(Error::Hypothesis("complex must have positive dimension".into()));
        }
        if !m.is_neighborly(2) {
            return Err(Error::Hypothesis("complex is not 2-neighborly".into()));
        }
        let class = class_membership(m, m.dim())?;
        if !class.in_class_kbar {
            return Err(Error::Hypothesis(format!(
                "link of vertex {} is not a stacked ball",
                class.failing_vertex.map_or_else(|| "?".into(), |v| v.to_string())
            )));
        }
        let dual = dual_graph(m)?;
        Ok(LemmaContext { complex: m, n: m.num_vertices() as u64, dim: m.dim() as u64, dual })
    }

    pub fn dual(&self) -> &DualGraph {
        &self.dual
    }

    pub fn verify(&self, id: LemmaId) -> Result<LemmaReport> {
        let result = match id {
            LemmaId::TwoConnected => self.two_connected(),
            LemmaId::VertexFacetTrees => self.vertex_facet_trees(),
            LemmaId::DualCounts => self.dual_counts(),
            LemmaId::CycleBound => self.cycle_bound(),
            LemmaId::Beta1Dual => self.beta1_dual()?,
            LemmaId::CriticalCover => self.critical_cover()?,
            LemmaId::PathLemma => self.path_lemma()?,
            LemmaId::HighDegreeCover => self.high_degree_cover()?,
        };
        Ok(LemmaReport::from_result(id.as_str(), result))
    }

    fn above_cycle_bound(&self) -> bool {
        self.n > 2 * self.dim + 1
    }

    fn two_connected(&self) -> Result<(), Witness> {
        let g = self.dual.graph();
        if g.is_two_connected() {
            return Ok(());
        }
        let cuts = g.articulation_points();
        Err(match cuts.first() {
            Some(&c) => Witness::Facets {
                facets: vec![self.dual.facet(c).vertices().to_vec()],
                detail: "removing this facet disconnects the dual graph".into(),
            },
            None => Witness::Message { detail: "dual graph is disconnected or too small".into() },
        })
    }

    fn vertex_facet_trees(&self) -> Result<(), Witness> {
        let expected = self.n - self.dim;
        for &v in self.complex.vertices() {
            let sub = vertex_facet_subgraph_of(&self.dual, v).expect("vertex of the complex");
            if sub.nodes.len() as u64 != expected || !sub.graph.is_tree() {
                return Err(Witness::Vertex {
                    vertex: v,
                    detail: format!(
                        "{} facets (expected {expected}), induced tree: {}",
                        sub.nodes.len(),
                        sub.graph.is_tree()
                    ),
                });
            }
        }
        Ok(())
    }

    fn dual_counts(&self) -> Result<(), Witness> {
        let (n, d) = (self.n as i128, self.dim as i128);
        let nu = self.dual.nu() as i128;
        let eps = self.dual.epsilon() as i128;
        if nu * (d + 1) != n * (n - d) {
            return Err(Witness::Counts {
                expected: n * (n - d),
                actual: nu * (d + 1),
                detail: "ν(D+1) vs n(n-D)".into(),
            });
        }
        if eps * d != n * (n - d - 1) {
            return Err(Witness::Counts {
                expected: n * (n - d - 1),
                actual: eps * d,
                detail: "εD vs n(n-D-1)".into(),
            });
        }
        Ok(())
    }

    fn cycle_bound(&self) -> Result<(), Witness> {
        let bound = 2 * self.dim + 1;
        if self.n < bound {
            return Err(Witness::Counts {
                expected: bound as i128,
                actual: self.n as i128,
                detail: "f_0 below 2D+1".into(),
            });
        }
        let is_cycle = self.dual.is_cycle();
        if (self.n == bound) != is_cycle {
            return Err(Witness::Message {
                detail: format!("f_0 = {}, 2D+1 = {bound}, dual graph is a cycle: {is_cycle}", self.n),
            });
        }
        Ok(())
    }

    fn beta1_dual(&self) -> Result<Result<(), Witness>> {
        if self.dim < 5 {
            return Err(Error::Hypothesis("the boundary must have dimension at least 4".into()));
        }
        let boundary = self.complex.boundary_complex()?;
        if boundary.is_empty() {
            return Err(Error::Hypothesis("complex has empty boundary".into()));
        }
        let formula = self.dual.epsilon() as i128 - self.dual.nu() as i128 + 1;
        let beta1 = beta1_z2(&boundary) as i128;
        Ok(if formula == beta1 {
            Ok(())
        } else {
            Err(Witness::Counts { expected: formula, actual: beta1, detail: "β_1 of the boundary vs ε-ν+1".into() })
        })
    }

    fn critical_cover(&self) -> Result<Result<(), Witness>> {
        let nu = self.dual.nu();
        if nu > CRITICAL_SUBSET_LIMIT {
            return Err(Error::Hypothesis(format!(
                "exhaustive subset scan limited to {CRITICAL_SUBSET_LIMIT} facets, got {nu}"
            )));
        }
        let limit = (self.n - self.dim) as usize;
        let masks = facet_masks(&self.dual, self.complex);
        let all_vertices = full_mask(self.complex.num_vertices());
        let adj: Vec<u64> =
            (0..nu).map(|u| self.dual.graph().neighbors(u).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
        for subset in 0u64..(1 << nu) {
            if largest_component_outside(&adj, subset, nu) >= limit {
                continue;
            }
            let covered = (0..nu).filter(|&i| subset >> i & 1 == 1).fold(0u128, |acc, i| acc | masks[i]);
            if covered != all_vertices {
                let nodes: Vec<usize> = (0..nu).filter(|&i| subset >> i & 1 == 1).collect();
                return Ok(Err(Witness::Path { nodes, detail: "critical facet set that is not a cover".into() }));
            }
        }
        Ok(Ok(()))
    }

    fn path_lemma(&self) -> Result<Result<(), Witness>> {
        if !self.above_cycle_bound() {
            return Err(Error::Hypothesis(format!("needs f_0 > 2D+1; f_0 = {}, D = {}", self.n, self.dim)));
        }
        for path in maximal_low_degree_paths(&self.dual) {
            for start in 0..path.len() {
                for end in start + 1..path.len() {
                    let sub = &path[start..=end];
                    let check = check_path(&self.dual, sub, self.dim as usize)?;
                    if !check.holds() {
                        return Ok(Err(Witness::Path { nodes: sub.to_vec(), detail: check.to_string() }));
                    }
                }
            }
        }
        Ok(Ok(()))
    }

    fn high_degree_cover(&self) -> Result<Result<(), Witness>> {
        if self.dim < 4 || !self.above_cycle_bound() {
            return Err(Error::Hypothesis(format!("needs D >= 4 and f_0 > 2D+1; f_0 = {}, D = {}", self.n, self.dim)));
        }
        let t = self.dual.high_degree_set();
        let covered = covered_vertices(&self.dual, &t)?;
        match self.complex.vertices().iter().find(|v| !covered.contains(v)) {
            None => Ok(Ok(())),
            Some(&v) => Ok(Err(Witness::Vertex { vertex: v, detail: "not contained in any high-degree facet".into() })),
        }
    }
}

fn facet_masks(dual: &DualGraph, m: &SimplicialComplex) -> Vec<u128> {
    dual.facets()
        .iter()
        .map(|f| f.vertices().iter().fold(0u128, |acc, &v| acc | 1 << m.vertex_index(v).unwrap()))
        .collect()
}

fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn largest_component_outside(adj: &[u64], removed: u64, nu: usize) -> usize {
    let mut unseen = !removed & ((1u64 << nu) - 1);
    let mut best = 0;
    while unseen != 0 {
        let start = unseen.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[u] & !removed & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        best = best.max(comp.count_ones() as usize);
        unseen &= !comp;
    }
    best
}

/// Checks one lemma on `m`, first establishing the shared hypotheses.
/// Hypothesis failures are errors, never vacuous passes.
pub fn verify_lemma(m: &SimplicialComplex, id: LemmaId) -> Result<LemmaReport> {
    LemmaContext::new(m)?.verify(id)
}

/// Every component of the dual graph minus `s` has fewer than `f_0 - D` nodes.
pub fn is_critical(m: &SimplicialComplex, s: &[usize]) -> Result<bool> {
    let dual = dual_graph(m)?;
    let limit = (m.num_vertices() as isize - m.dim() as isize).max(0) as usize;
    Ok(dual.components_minus(s)?.iter().all(|c| c.len() < limit))
}

/// The facets with ids in `s` together contain every vertex.
pub fn is_cover(m: &SimplicialComplex, s: &[usize]) -> Result<bool> {
    let dual = dual_graph(m)?;
    Ok(covered_vertices(&dual, s)?.len() == m.num_vertices())
}

/// Per-condition outcome of the path checks on one path `u_0 ... u_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCheck {
    /// `x_i`: the vertex of `u_{i-1}` missing from `u_i`.
    pub dropped: Vec<Vertex>,
    pub distinct: bool,
    pub in_first: bool,
    pub short: bool,
}

impl PathCheck {
    pub fn holds(&self) -> bool {
        self.distinct && self.in_first && self.short
    }
}

impl fmt::Display for PathCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dropped {:?}: distinct={}, in first facet={}, length bound={}",
            self.dropped, self.distinct, self.in_first, self.short
        )
    }
}

/// Evaluates the three path conditions for consecutive adjacent facets.
/// `dim` is the dimension of the complex, so the length bound is `dim + 1`.
pub fn check_path(dual: &DualGraph, path: &[usize], dim: usize) -> Result<PathCheck> {
    for &u in path {
        if u >= dual.nu() {
            return Err(Error::UnknownNode(u));
        }
    }
    let mut dropped = Vec::with_capacity(path.len().saturating_sub(1));
    for w in path.windows(2) {
        if !dual.graph().has_edge(w[0], w[1]) {
            return Err(Error::Precondition(format!("nodes {} and {} are not adjacent", w[0], w[1])));
        }
        let diff = dual.facet(w[0]).difference(dual.facet(w[1]));
        dropped.push(diff.vertices()[0]);
    }
    let mut sorted = dropped.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let distinct = sorted.len() == dropped.len();
    let first = dual.facet(path[0]);
    let in_first = dropped.iter().all(|&x| first.contains(x));
    let short = dropped.len() <= dim + 1;
    Ok(PathCheck { dropped, distinct, in_first, short })
}

/// Directed paths that start at a node of degree at least three and run
/// through degree-2 nodes until the next node of degree other than two.
/// A chain that returns to its start stops just before it.
pub fn maximal_low_degree_paths(dual: &DualGraph) -> Vec<Vec<usize>> {
    let g = dual.graph();
    let mut out = Vec::new();
    for t in g.high_degree_set() {
        for &first in g.neighbors(t) {
            let mut path = vec![t, first];
            let mut prev = t;
            let mut cur = first;
            while g.degree(cur) == 2 {
                let next = g.neighbors(cur).iter().copied().find(|&w| w != prev).unwrap();
                if path.contains(&next) {
                    break;
                }
                path.push(next);
                prev = cur;
                cur = next;
            }
            out.push(path);
        }
    }
    out
}
