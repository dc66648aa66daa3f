//! Finite abstract simplicial complexes stored by their facets.
//!
//! A [`SimplicialComplex`] keeps only its maximal faces, sorted
//! lexicographically. Lower faces are enumerated on demand. Two complexes
//! built from the same facet family compare equal regardless of input order.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Vertex label. Labels are arbitrary and need not be dense.
pub type Vertex = u32;

/// A face: a strictly increasing list of vertex labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<Vertex>);

impl Face {
    /// Builds a face from labels in any order. Repeated labels are rejected.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        Ok(Face(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    /// The formal (-1)-dimensional face.
    pub fn empty() -> Self {
        Face(Vec::new())
    }

    /// Face spanned by the consecutive labels `lo..=hi`.
    pub fn range(lo: Vertex, hi: Vertex) -> Self {
        Face((lo..=hi).collect())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Sorted-merge subset test.
    pub fn is_subset_of(&self, other: &Face) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                match w.cmp(v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut out: Vec<Vertex> = self.0.iter().chain(other.0.iter()).copied().collect();
        out.sort_unstable();
        out.dedup();
        Face(out)
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    /// The face with the vertex at position `i` removed.
    pub fn without_index(&self, i: usize) -> Face {
        let mut out = self.0.clone();
        out.remove(i);
        Face(out)
    }

    pub fn without(&self, v: Vertex) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: Vertex) -> Face {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Face(out)
    }

    /// Image under a vertex map; panics if the map is not injective on the face.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Face {
        let mut out: Vec<Vertex> = self.0.iter().map(|&v| f(v)).collect();
        out.sort_unstable();
        let n = out.len();
        out.dedup();
        assert_eq!(n, out.len(), "vertex map collapses face {self}");
        Face(out)
    }

    /// All subfaces with exactly `size` vertices, in lexicographic order.
    pub fn subfaces(&self, size: usize) -> impl Iterator<Item = Face> + '_ {
        self.0.iter().copied().combinations(size).map(Face)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl From<Face> for Vec<Vertex> {
    fn from(face: Face) -> Self {
        face.0
    }
}

/// Face counts `(f_0, ..., f_d)` together with the Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    pub counts: Vec<u64>,
    pub euler: i64,
}

impl FVector {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        let euler = counts.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        FVector { counts, euler }
    }
}

/// A finite abstract simplicial complex, represented by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    facets: Vec<Face>,
    vertices: Vec<Vertex>,
}

impl SimplicialComplex {
    /// Canonicalizes a face family: duplicates and faces contained in other
    /// listed faces are dropped, and facets are sorted lexicographically.
    pub fn from_facets<I>(faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = Face>,
    {
        let faces: Vec<Face> = faces.into_iter().collect();
        if faces.is_empty() {
            return Err(Error::EmptyComplex);
        }
        if faces.iter().any(Face::is_empty) {
            return Err(Error::EmptyFace);
        }
        Ok(Self::canonical(faces))
    }

    /// Convenience constructor from raw label lists.
    pub fn from_vertex_lists<I, F>(lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = Vertex>,
    {
        let faces = lists.into_iter().map(|l| Face::new(l.into_iter().collect())).collect::<Result<Vec<_>>>()?;
        Self::from_facets(faces)
    }

    /// The complex with no faces at all. Only produced as the boundary of a
    /// closed complex or the link of a facet.
    pub fn empty() -> Self {
        SimplicialComplex { facets: Vec::new(), vertices: Vec::new() }
    }

    /// Standard simplex on the given face.
    pub fn simplex(face: Face) -> Self {
        let vertices = face.vertices().to_vec();
        SimplicialComplex { facets: vec![face], vertices }
    }

    /// Boundary of the simplex on `0..=d+1`, the `(d+2)`-vertex `d`-sphere.
    pub fn simplex_boundary(d: usize) -> Self {
        let top = Face::range(0, d as Vertex + 1);
        Self::canonical(top.subfaces(d + 1).collect())
    }

    pub(crate) fn canonical(mut faces: Vec<Face>) -> Self {
        faces.retain(|f| !f.is_empty());
        faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let largest = faces.first().map_or(0, Face::len);
        let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
        // Faces arrive by decreasing size, so a face can only be absorbed by
        // something already kept.
        for face in faces {
            let absorbed = face.len() < largest && kept.iter().any(|k| k.len() > face.len() && face.is_subset_of(k));
            if !absorbed {
                kept.push(face);
            }
        }
        kept.sort_unstable();
        let mut vertices: Vec<Vertex> = kept.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        SimplicialComplex { facets: kept, vertices }
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Largest facet dimension. The empty complex reports 0; use
    /// [`SimplicialComplex::is_empty`] to tell it apart from a point.
    pub fn dim(&self) -> usize {
        self.facets.iter().map(Face::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Dense index of a vertex label.
    pub fn vertex_index(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertex_index(v).is_some()
    }

    pub fn is_facet(&self, face: &Face) -> bool {
        self.facets.binary_search(face).is_ok()
    }

    /// Whether `face` lies in the complex (the empty face always does).
    pub fn contains_face(&self, face: &Face) -> bool {
        face.is_empty() && !self.is_empty() || self.facets.iter().any(|f| face.is_subset_of(f))
    }

    /// All faces of dimension `k`, for `-1 <= k <= dim`, sorted.
    pub fn faces_of_dim(&self, k: isize) -> Result<Vec<Face>> {
        let max = if self.is_empty() { -1 } else { self.dim() as isize };
        if k < -1 || k > max {
            return Err(Error::DimensionRange { k, min: -1, max });
        }
        if k == -1 {
            return Ok(vec![Face::empty()]);
        }
        let size = (k + 1) as usize;
        let mut seen: HashSet<Face> = HashSet::new();
        for facet in self.facets.iter().filter(|f| f.len() >= size) {
            if facet.len() == size {
                seen.insert(facet.clone());
            } else {
                seen.extend(facet.subfaces(size));
            }
        }
        let mut out: Vec<Face> = seen.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Every non-empty face, grouped by dimension.
    pub fn all_faces(&self) -> Vec<Vec<Face>> {
        if self.is_empty() {
            return Vec::new();
        }
        let d = self.dim();
        let mut layers: Vec<HashSet<Face>> = vec![HashSet::new(); d + 1];
        for facet in &self.facets {
            let n = facet.len();
            // Enumerate all non-empty subsets by bitmask.
            for mask in 1u64..(1u64 << n) {
                let verts: Vec<Vertex> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| facet.0[i]).collect();
                layers[verts.len() - 1].insert(Face(verts));
            }
        }
        layers
            .into_iter()
            .map(|s| {
                let mut v: Vec<Face> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector::from_counts(self.all_faces().iter().map(|l| l.len() as u64).collect())
    }

    /// Faces `beta` with `alpha ∩ beta = ∅` and `alpha ∪ beta` a face.
    pub fn link(&self, alpha: &Face) -> Result<SimplicialComplex> {
        if !self.contains_face(alpha) {
            return Err(Error::NotAFace(alpha.clone()));
        }
        let faces: Vec<Face> =
            self.facets.iter().filter(|f| alpha.is_subset_of(f)).map(|f| f.difference(alpha)).collect();
        Ok(Self::canonical(faces))
    }

    pub fn vertex_link(&self, v: Vertex) -> Result<SimplicialComplex> {
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        self.link(&Face(vec![v]))
    }

    /// Closed star of a vertex: the facets containing it.
    pub fn star(&self, v: Vertex) -> Result<SimplicialComplex> {
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(Self::canonical(self.facets.iter().filter(|f| f.contains(v)).cloned().collect()))
    }

    /// Join of complexes on disjoint vertex sets.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if let Some(v) = self.vertices.iter().find(|v| other.has_vertex(**v)) {
            return Err(Error::VertexClash(*v));
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let faces = self.facets.iter().cartesian_product(other.facets.iter()).map(|(a, b)| a.union(b)).collect();
        Ok(Self::canonical(faces))
    }

    /// Faces of dimension at most `k`.
    pub fn skeleton(&self, k: isize) -> Result<SimplicialComplex> {
        let max = self.dim() as isize;
        if self.is_empty() || k < 0 || k > max {
            return Err(Error::DimensionRange { k, min: 0, max });
        }
        let mut faces = self.faces_of_dim(k)?;
        faces.extend(self.facets.iter().filter(|f| f.dim() < k).cloned());
        Ok(Self::canonical(faces))
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Face::len).all_equal()
    }

    /// Ridge -> ids of the facets containing it. Meaningful for pure complexes.
    pub fn ridge_incidence(&self) -> BTreeMap<Face, Vec<usize>> {
        let mut map: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
        for (id, facet) in self.facets.iter().enumerate() {
            for i in 0..facet.len() {
                map.entry(facet.without_index(i)).or_default().push(id);
            }
        }
        map
    }

    pub fn is_weak_pseudomanifold(&self) -> bool {
        self.is_pure() && self.ridge_incidence().values().all(|ids| ids.len() <= 2)
    }

    pub fn is_pseudomanifold(&self) -> bool {
        !self.is_empty()
            && self.is_weak_pseudomanifold()
            && crate::dualgraph::dual_graph(self).map(|g| g.graph().is_connected()).unwrap_or(false)
    }

    /// Complex generated by the ridges lying in exactly one facet; empty for
    /// closed complexes.
    pub fn boundary_complex(&self) -> Result<SimplicialComplex> {
        if !self.is_pure() {
            return Err(Error::Precondition("boundary requires a pure complex".into()));
        }
        let incidence = self.ridge_incidence();
        if incidence.values().any(|ids| ids.len() > 2) {
            return Err(Error::Precondition("boundary requires a weak pseudomanifold".into()));
        }
        let ridges: Vec<Face> = incidence.into_iter().filter(|(_, ids)| ids.len() == 1).map(|(r, _)| r).collect();
        Ok(Self::canonical(ridges))
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_complex().map(|b| b.is_empty()).unwrap_or(false)
    }

    /// Every `l`-subset of the vertex set is a face.
    pub fn is_neighborly(&self, l: usize) -> bool {
        if l == 0 {
            return true;
        }
        let n = self.vertices.len() as u64;
        let needed = binomial(n, l as u64);
        if needed == 0 {
            return true;
        }
        match self.faces_of_dim(l as isize - 1) {
            Ok(faces) => faces.len() as u64 == needed,
            Err(_) => false,
        }
    }

    /// Edge graph as sorted adjacency lists over dense vertex indices.
    pub fn edge_graph(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for facet in &self.facets {
            let idx: Vec<usize> = facet.vertices().iter().map(|&v| self.vertex_index(v).unwrap()).collect();
            for (a, b) in idx.iter().tuple_combinations() {
                adj[*a].push(*b);
                adj[*b].push(*a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Connectivity of the underlying space (equivalently of the edge graph).
    pub fn is_connected(&self) -> bool {
        let adj = self.edge_graph();
        if adj.is_empty() {
            return false;
        }
        let mut seen = vec![false; adj.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Image under a vertex relabeling.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> SimplicialComplex {
        Self::canonical(self.facets.iter().map(|face| face.map(&f)).collect())
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.facets.iter().join(" "))
    }
}

/// `n choose k`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
