//! Stacked balls and spheres, Walkup-class membership, the 3-closure filling
//! of a manifold, combinatorial handle addition, and the cyclic generators.

use std::collections::{BTreeMap, HashSet};

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::bits::BitRow;
use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::dualgraph::dual_graph;
use crate::error::{Error, Result};

/// Tree dual graph and `f_0 = f_d + d`.
///
/// Non-pure and empty complexes are not stacked balls.
pub fn is_stacked_ball(x: &SimplicialComplex) -> bool {
    if x.is_empty() || !x.is_pure() {
        return false;
    }
    let Ok(dual) = dual_graph(x) else {
        return false;
    };
    dual.is_tree() && x.num_vertices() == x.num_facets() + x.dim()
}

/// Recognizes stacked spheres by undoing stellar subdivisions of facets.
///
/// A vertex of degree `d + 1` whose link is the boundary of a `d`-simplex
/// `τ` is removed and `τ` is added back, as long as `τ` is not already a
/// facet. The input is a stacked sphere iff this reaches the boundary of a
/// `(d + 1)`-simplex. The first removable vertex is always tried first; if
/// that greedy sequence gets stuck, the remaining choices are searched
/// exhaustively with memoization before answering `false`.
pub fn is_stacked_sphere(s: &SimplicialComplex) -> Result<bool> {
    if s.is_empty() || !s.is_pure() {
        return Err(Error::Precondition("stacked-sphere test needs a non-empty pure complex".into()));
    }
    let incidence = s.ridge_incidence();
    if incidence.values().any(|ids| ids.len() != 2) {
        return Err(Error::Precondition("stacked-sphere test needs a closed weak pseudomanifold".into()));
    }
    let d = s.dim();
    let n = s.num_vertices();
    // Every stellar subdivision adds one vertex and d facets.
    if n < d + 2 || s.num_facets() != d * (n - d - 1) + 2 {
        return Ok(false);
    }
    let mut dead: HashSet<Vec<Face>> = HashSet::new();
    Ok(peel(s.facets().to_vec(), d, &mut dead))
}

fn peel(facets: Vec<Face>, d: usize, dead: &mut HashSet<Vec<Face>>) -> bool {
    let vertices: Vec<Vertex> = {
        let mut v: Vec<Vertex> = facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    if vertices.len() == d + 2 {
        return facets.len() == d + 2;
    }
    if dead.contains(&facets) {
        return false;
    }
    for &v in &vertices {
        let (around, rest): (Vec<&Face>, Vec<&Face>) = facets.iter().partition(|f| f.contains(v));
        if around.len() != d + 1 {
            continue;
        }
        let mut tau: Vec<Vertex> =
            around.iter().flat_map(|f| f.vertices().iter().copied()).filter(|&w| w != v).collect();
        tau.sort_unstable();
        tau.dedup();
        if tau.len() != d + 1 {
            continue;
        }
        let tau = Face::from_sorted(tau);
        if rest.iter().any(|f| **f == tau) {
            continue;
        }
        let mut next: Vec<Face> = rest.into_iter().cloned().collect();
        next.push(tau);
        next.sort_unstable();
        if peel(next, d, dead) {
            return true;
        }
    }
    dead.insert(facets);
    false
}

/// Result of checking every vertex link against the two Walkup classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    /// All vertex links are stacked `(d-1)`-spheres.
    pub in_class_k: bool,
    /// All vertex links are stacked `(d-1)`-balls.
    pub in_class_kbar: bool,
    /// First vertex violating the class that matches the complex: the
    /// sphere-link class when the complex is closed, the ball-link class
    /// otherwise.
    pub failing_vertex: Option<Vertex>,
    pub closed: bool,
    pub d: usize,
}

pub fn class_membership(m: &SimplicialComplex, d: usize) -> Result<ClassReport> {
    if m.is_empty() || !m.is_pure() || m.dim() != d {
        return Err(Error::Precondition(format!(
            "class membership expects a pure complex of dimension {d}, got dimension {}",
            m.dim()
        )));
    }
    if d == 0 {
        return Err(Error::Precondition("vertex links of a 0-dimensional complex are empty".into()));
    }
    let closed = m.is_closed();
    let mut in_k = true;
    let mut in_kbar = true;
    let mut failing_vertex = None;
    for &v in m.vertices() {
        let link = m.vertex_link(v)?;
        let sphere = is_stacked_sphere(&link).unwrap_or(false);
        let ball = is_stacked_ball(&link);
        in_k &= sphere;
        in_kbar &= ball;
        let relevant_ok = if closed { sphere } else { ball };
        if !relevant_ok && failing_vertex.is_none() {
            failing_vertex = Some(v);
        }
    }
    Ok(ClassReport { in_class_k: in_k, in_class_kbar: in_kbar, failing_vertex, closed, d })
}

/// All vertex sets whose subsets of size at most three are faces of `m`,
/// returned as a complex (by its maximal such sets).
///
/// Maximal sets are enumerated with Bron–Kerbosch style backtracking in
/// which a candidate stays eligible only if it forms an edge with the new
/// vertex and a triangle with the new vertex and every chosen vertex.
pub fn bar_construction(m: &SimplicialComplex) -> SimplicialComplex {
    let n = m.num_vertices();
    if n == 0 {
        return SimplicialComplex::empty();
    }
    let idx = |v: Vertex| m.vertex_index(v).unwrap();
    let mut edge = vec![BitRow::zeros(n); n];
    let mut tri = vec![vec![BitRow::zeros(n); n]; n];
    for facet in m.facets() {
        let ids: Vec<usize> = facet.vertices().iter().map(|&v| idx(v)).collect();
        for (i, &a) in ids.iter().enumerate() {
            for (j, &b) in ids.iter().enumerate() {
                if i == j {
                    continue;
                }
                edge[a].set(b);
                for (k, &c) in ids.iter().enumerate() {
                    if k != i && k != j {
                        tri[a][b].set(c);
                    }
                }
            }
        }
    }
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    let mut chosen = Vec::new();
    extend_admissible(&mut chosen, BitRow::ones(n), BitRow::zeros(n), &edge, &tri, &mut maximal);
    let labels = m.vertices();
    let faces = maximal
        .into_iter()
        .map(|set| {
            Face::from_sorted({
                let mut v: Vec<Vertex> = set.into_iter().map(|i| labels[i]).collect();
                v.sort_unstable();
                v
            })
        })
        .collect();
    SimplicialComplex::canonical(faces)
}

fn extend_admissible(
    chosen: &mut Vec<usize>,
    mut candidates: BitRow,
    mut excluded: BitRow,
    edge: &[BitRow],
    tri: &[Vec<BitRow>],
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_zero() {
        if excluded.is_zero() {
            out.push(chosen.clone());
        }
        return;
    }
    let order: Vec<usize> = candidates.iter_ones().collect();
    for v in order {
        let mut compatible = edge[v].clone();
        for &r in chosen.iter() {
            compatible.and_assign(&tri[r][v]);
        }
        chosen.push(v);
        extend_admissible(chosen, candidates.and(&compatible), excluded.and(&compatible), edge, tri, out);
        chosen.pop();
        candidates.clear(v);
        excluded.set(v);
    }
}

/// Bijection between two facets used for a combinatorial handle addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandleMap {
    sigma1: Face,
    sigma2: Face,
    /// `(x, psi(x))` for each `x` in `sigma1`, sorted by `x`.
    psi: Vec<(Vertex, Vertex)>,
}

impl HandleMap {
    /// Checks that `psi` is a bijection from `sigma1` onto `sigma2`.
    /// Admissibility against a particular complex is checked by
    /// [`handle_addition`].
    pub fn new(sigma1: Face, sigma2: Face, mut psi: Vec<(Vertex, Vertex)>) -> Result<Self> {
        psi.sort_unstable();
        let domain = Face::new(psi.iter().map(|p| p.0).collect())
            .map_err(|e| Error::Precondition(format!("psi is not a function: {e}")))?;
        let image = Face::new(psi.iter().map(|p| p.1).collect())
            .map_err(|e| Error::Precondition(format!("psi is not injective: {e}")))?;
        if domain != sigma1 || image != sigma2 {
            return Err(Error::Precondition(format!("psi must map {sigma1} onto {sigma2}, got {domain} -> {image}")));
        }
        Ok(HandleMap { sigma1, sigma2, psi })
    }

    pub fn sigma1(&self) -> &Face {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &Face {
        &self.sigma2
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.psi
    }

    pub fn image(&self, x: Vertex) -> Option<Vertex> {
        self.psi.binary_search_by_key(&x, |p| p.0).ok().map(|i| self.psi[i].1)
    }
}

/// Removes the two facets of `h` and identifies each `x` with `psi(x)`.
pub fn handle_addition(x: &SimplicialComplex, h: &HandleMap) -> Result<SimplicialComplex> {
    for sigma in [&h.sigma1, &h.sigma2] {
        if !x.is_facet(sigma) {
            return Err(Error::Precondition(format!("{sigma} is not a facet")));
        }
    }
    if let Some(&v) = h.sigma1.vertices().iter().find(|&&v| h.sigma2.contains(v)) {
        return Err(Error::InadmissibleHandle {
            x: v,
            image: h.image(v).unwrap_or(v),
            common_neighbor: None,
            reason: "the two facets intersect".into(),
        });
    }
    let adj = x.edge_graph();
    let labels = x.vertices();
    for &(a, b) in &h.psi {
        let (ia, ib) = (x.vertex_index(a).unwrap(), x.vertex_index(b).unwrap());
        if adj[ia].binary_search(&ib).is_ok() {
            return Err(Error::InadmissibleHandle {
                x: a,
                image: b,
                common_neighbor: None,
                reason: "the identified vertices are adjacent".into(),
            });
        }
        if let Some(w) = adj[ia].iter().find(|w| adj[ib].binary_search(w).is_ok()) {
            return Err(Error::InadmissibleHandle {
                x: a,
                image: b,
                common_neighbor: Some(labels[*w]),
                reason: "the identified vertices have a common neighbor".into(),
            });
        }
    }
    let faces: Vec<Face> = x
        .facets()
        .iter()
        .filter(|f| **f != h.sigma1 && **f != h.sigma2)
        .map(|f| f.map(|v| h.image(v).unwrap_or(v)))
        .collect();
    if faces.is_empty() {
        return Err(Error::Precondition("handle addition would remove every facet".into()));
    }
    Ok(SimplicialComplex::canonical(faces))
}

/// The cyclic `(d+1)`-dimensional solid on `0..=2d+2` with facets
/// `{i, i+1, ..., i+d+1}` taken modulo `2d+3`.
pub fn kuehnel_solid(d: usize) -> Result<SimplicialComplex> {
    if d < 2 {
        return Err(Error::Range(format!("cyclic solid needs d >= 2, got {d}")));
    }
    let n = 2 * d as Vertex + 3;
    let faces = (0..n).map(|i| {
        let mut f: Vec<Vertex> = (0..=d as Vertex + 1).map(|j| (i + j) % n).collect();
        f.sort_unstable();
        Face::from_sorted(f)
    });
    Ok(SimplicialComplex::canonical(faces.collect()))
}

/// Boundary of [`kuehnel_solid`]: the `(2d+3)`-vertex `d`-manifold.
pub fn kuehnel_torus(d: usize) -> Result<SimplicialComplex> {
    kuehnel_solid(d)?.boundary_complex()
}

/// Stacked `dim`-ball with facets `{i, ..., i+dim}` for `i` in `0..m`.
pub fn stacked_path_ball(dim: usize, m: usize) -> Result<SimplicialComplex> {
    if m == 0 {
        return Err(Error::Range("a ball needs at least one facet".into()));
    }
    let faces = (0..m as Vertex).map(|i| Face::range(i, i + dim as Vertex));
    SimplicialComplex::from_facets(faces)
}

/// Seeded random stacked `d`-ball with `m` facets.
///
/// Starts from the simplex `{0, ..., d}`. Step `i = 1..m` lists the ridges
/// lying in exactly one facet in lexicographic order, picks index
/// `r mod count` where `r` is the next output of SplitMix64 seeded with
/// `seed`, and glues the facet `ridge ∪ {d + i}`.
pub fn random_stacked_ball(d: usize, m: usize, seed: u64) -> Result<SimplicialComplex> {
    if d < 1 || m < 1 {
        return Err(Error::Range(format!("random stacked ball needs d >= 1 and m >= 1, got d={d}, m={m}")));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let first = Face::range(0, d as Vertex);
    let mut ridge_count: BTreeMap<Face, usize> = BTreeMap::new();
    for i in 0..first.len() {
        *ridge_count.entry(first.without_index(i)).or_default() += 1;
    }
    let mut facets = vec![first];
    for step in 1..m {
        let free: Vec<&Face> = ridge_count.iter().filter(|(_, &c)| c == 1).map(|(r, _)| r).collect();
        let pick = (rng.next_u64() % free.len() as u64) as usize;
        let facet = free[pick].with((d + step) as Vertex);
        for i in 0..facet.len() {
            *ridge_count.entry(facet.without_index(i)).or_default() += 1;
        }
        facets.push(facet);
    }
    Ok(SimplicialComplex::canonical(facets))
}
