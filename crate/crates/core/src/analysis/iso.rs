use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// A bijection between two vertex sets, stored as `(from, to)` pairs sorted
/// by `from`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VertexBijection {
    pairs: Vec<(Vertex, Vertex)>,
}

impl VertexBijection {
    pub fn new(mut pairs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Precondition("bijection maps a vertex twice".into()));
        }
        let mut images: Vec<Vertex> = pairs.iter().map(|p| p.1).collect();
        images.sort_unstable();
        if images.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("bijection is not injective".into()));
        }
        Ok(VertexBijection { pairs })
    }

    pub fn identity(vertices: &[Vertex]) -> Self {
        VertexBijection { pairs: vertices.iter().map(|&v| (v, v)).collect() }
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Option<Vertex> {
        self.pairs.binary_search_by_key(&v, |p| p.0).ok().map(|i| self.pairs[i].1)
    }

    pub fn apply_face(&self, face: &Face) -> Result<Face> {
        let image =
            face.vertices().iter().map(|&v| self.get(v).ok_or(Error::UnknownVertex(v))).collect::<Result<Vec<_>>>()?;
        Face::new(image)
    }

    pub fn apply(&self, x: &SimplicialComplex) -> Result<SimplicialComplex> {
        let faces = x.facets().iter().map(|f| self.apply_face(f)).collect::<Result<Vec<_>>>()?;
        SimplicialComplex::from_facets(faces)
    }

    pub fn inverse(&self) -> Self {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(a, b)| (b, a)).collect();
        pairs.sort_unstable();
        VertexBijection { pairs }
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &VertexBijection) -> Result<Self> {
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| other.get(b).map(|c| (a, c)).ok_or(Error::UnknownVertex(b)))
            .collect::<Result<Vec<_>>>()?;
        VertexBijection::new(pairs)
    }

    /// Whether the bijection is defined on exactly the vertices of `x` and
    /// sends its facets onto the facets of `y`.
    pub fn maps_onto(&self, x: &SimplicialComplex, y: &SimplicialComplex) -> bool {
        if self.pairs.len() != x.num_vertices() || x.num_facets() != y.num_facets() {
            return false;
        }
        if !self.pairs.iter().map(|p| p.0).eq(x.vertices().iter().copied()) {
            return false;
        }
        x.facets().iter().all(|f| self.apply_face(f).is_ok_and(|g| y.is_facet(&g)))
    }
}

/// Per-complex data used by the search, with vertices replaced by indices.
struct Indexed<'a> {
    complex: &'a SimplicialComplex,
    adj: Vec<Vec<bool>>,
    triangles: HashSet<[usize; 3]>,
    facets: HashSet<Vec<usize>>,
    facet_lists: Vec<Vec<usize>>,
    invariant: Vec<Invariant>,
}

/// Facet count, sorted link f-vector entries and sorted neighbor degrees.
type Invariant = (usize, Vec<u64>, Vec<usize>);

impl<'a> Indexed<'a> {
    fn new(x: &'a SimplicialComplex) -> Self {
        let n = x.num_vertices();
        let idx = |v: Vertex| x.vertex_index(v).unwrap();
        let graph = x.edge_graph();
        let mut adj = vec![vec![false; n]; n];
        for (a, nbrs) in graph.iter().enumerate() {
            for &b in nbrs {
                adj[a][b] = true;
            }
        }
        let facet_lists: Vec<Vec<usize>> =
            x.facets().iter().map(|f| f.vertices().iter().map(|&v| idx(v)).collect()).collect();
        let mut triangles = HashSet::new();
        for f in &facet_lists {
            for i in 0..f.len() {
                for j in i + 1..f.len() {
                    for k in j + 1..f.len() {
                        triangles.insert([f[i], f[j], f[k]]);
                    }
                }
            }
        }
        let mut facet_count = vec![0usize; n];
        for f in &facet_lists {
            for &v in f {
                facet_count[v] += 1;
            }
        }
        let invariant = (0..n)
            .map(|v| {
                let link = x.vertex_link(x.vertices()[v]).map(|l| l.f_vector().counts).unwrap_or_default();
                let mut nbr_deg: Vec<usize> = graph[v].iter().map(|&w| graph[w].len()).collect();
                nbr_deg.sort_unstable();
                (facet_count[v], link, nbr_deg)
            })
            .collect();
        let facets = facet_lists.iter().cloned().collect();
        Indexed { complex: x, adj, triangles, facets, facet_lists, invariant }
    }

    fn has_triangle(&self, a: usize, b: usize, c: usize) -> bool {
        let mut t = [a, b, c];
        t.sort_unstable();
        self.triangles.contains(&t)
    }
}

/// Searches for a vertex bijection carrying the facets of `x` onto the
/// facets of `y`. The search order depends only on the inputs.
pub fn are_isomorphic(x: &SimplicialComplex, y: &SimplicialComplex) -> Option<VertexBijection> {
    if x.num_vertices() != y.num_vertices() || x.num_facets() != y.num_facets() || x.f_vector() != y.f_vector() {
        return None;
    }
    let mut sizes_x: Vec<usize> = x.facets().iter().map(Face::len).collect();
    let mut sizes_y: Vec<usize> = y.facets().iter().map(Face::len).collect();
    sizes_x.sort_unstable();
    sizes_y.sort_unstable();
    if sizes_x != sizes_y {
        return None;
    }
    if x.is_empty() {
        return Some(VertexBijection { pairs: Vec::new() });
    }
    let ix = Indexed::new(x);
    let iy = Indexed::new(y);
    let mut classes_x: BTreeMap<&Invariant, usize> = BTreeMap::new();
    let mut classes_y: BTreeMap<&Invariant, usize> = BTreeMap::new();
    for inv in &ix.invariant {
        *classes_x.entry(inv).or_default() += 1;
    }
    for inv in &iy.invariant {
        *classes_y.entry(inv).or_default() += 1;
    }
    if classes_x != classes_y {
        return None;
    }

    let order = search_order(&ix, &classes_x);
    let mut position = vec![0usize; order.len()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // Facets of `x` whose last vertex in search order is the key.
    let mut completes: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for (fi, f) in ix.facet_lists.iter().enumerate() {
        let last = *f.iter().max_by_key(|&&v| position[v]).unwrap();
        completes[last].push(fi);
    }
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| (0..iy.invariant.len()).filter(|&w| iy.invariant[w] == ix.invariant[v]).collect())
        .collect();

    let mut search = Search {
        x: &ix,
        y: &iy,
        order: &order,
        candidates: &candidates,
        completes: &completes,
        map: vec![usize::MAX; order.len()],
        used: vec![false; order.len()],
    };
    if !search.extend(0) {
        return None;
    }
    let pairs = (0..order.len()).map(|v| (x.vertices()[v], y.vertices()[search.map[v]])).collect();
    let bij = VertexBijection { pairs };
    debug_assert!(bij.maps_onto(ix.complex, iy.complex));
    Some(bij)
}

/// Starts from the rarest invariant class; afterwards prefers the vertex
/// with the most already-ordered neighbors.
fn search_order(ix: &Indexed, classes: &BTreeMap<&Invariant, usize>) -> Vec<usize> {
    let n = ix.invariant.len();
    let rarity: Vec<usize> = ix.invariant.iter().map(|inv| classes[inv]).collect();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n).filter(|&v| !placed[v]).min_by_key(|&v| (std::cmp::Reverse(links[v]), rarity[v], v)).unwrap();
        placed[next] = true;
        order.push(next);
        for (w, &adjacent) in ix.adj[next].iter().enumerate() {
            if adjacent {
                links[w] += 1;
            }
        }
    }
    order
}

struct Search<'s> {
    x: &'s Indexed<'s>,
    y: &'s Indexed<'s>,
    order: &'s [usize],
    candidates: &'s [Vec<usize>],
    completes: &'s [Vec<usize>],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for &w in &self.candidates[depth] {
            if self.used[w] || !self.consistent(depth, v, w) {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.facets_ok(v) && self.extend(depth + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[v] = usize::MAX;
        }
        false
    }

    fn consistent(&self, depth: usize, v: usize, w: usize) -> bool {
        let earlier = &self.order[..depth];
        for &a in earlier {
            if self.x.adj[v][a] != self.y.adj[w][self.map[a]] {
                return false;
            }
        }
        for (i, &a) in earlier.iter().enumerate() {
            if !self.x.adj[v][a] {
                continue;
            }
            for &b in &earlier[i + 1..] {
                if self.x.adj[v][b]
                    && self.x.adj[a][b]
                    && self.x.has_triangle(v, a, b) != self.y.has_triangle(w, self.map[a], self.map[b])
                {
                    return false;
                }
            }
        }
        true
    }

    fn facets_ok(&self, v: usize) -> bool {
        self.completes[v].iter().all(|&fi| {
            let mut image: Vec<usize> = self.x.facet_lists[fi].iter().map(|&u| self.map[u]).collect();
            image.sort_unstable();
            self.y.facets.contains(&image)
        })
    }
}
