use crate::analysis::VertexBijection;
use crate::complex::{SimplicialComplex, Vertex};
use crate::dualgraph::{dual_graph, vertex_facet_subgraph_of};
use crate::error::{Error, ReconstructionStep, Result};
use crate::walkup::kuehnel_solid;

fn fail(step: ReconstructionStep, detail: impl Into<String>) -> Error {
    Error::ReconstructionFailure { step, detail: detail.into() }
}

/// Rebuilds the isomorphism from the cyclic solid onto `mbar`.
///
/// The dual graph of `mbar` must be a cycle `c_0, ..., c_{n-1}` on
/// `n = 2d + 3` facets of dimension `d + 1`. Each vertex `l` must lie in
/// exactly `d + 2` consecutive facets `c_s, ..., c_{s+d+1}`, and the starts
/// `s` must be pairwise distinct. Solid vertex `s + d + 1 (mod n)` is then
/// sent to `l`. The returned bijection maps vertices of
/// [`kuehnel_solid`]`(d)` to vertices of `mbar`.
pub fn uniqueness_reconstruction(mbar: &SimplicialComplex) -> Result<VertexBijection> {
    use ReconstructionStep::*;

    if mbar.is_empty() || !mbar.is_pure() {
        return Err(fail(Dimension, "complex must be non-empty and pure"));
    }
    let dim = mbar.dim();
    let n = mbar.num_vertices();
    if dim < 3 || n != 2 * dim + 1 {
        return Err(fail(Dimension, format!("need f_0 = 2D + 1 with D >= 3, got f_0 = {n}, D = {dim}")));
    }
    let d = dim - 1;

    let dual = dual_graph(mbar).map_err(|e| fail(CycleCheck, e.to_string()))?;
    if !dual.is_cycle() || dual.nu() != n {
        return Err(fail(CycleCheck, format!("dual graph with {} nodes is not an {n}-cycle", dual.nu())));
    }

    // Walk the cycle from facet 0 towards its larger-id neighbor.
    let g = dual.graph();
    let mut cycle = vec![0usize];
    let mut prev = 0usize;
    let mut cur = *g.neighbors(0).iter().max().unwrap();
    while cur != 0 {
        cycle.push(cur);
        let next = g.neighbors(cur).iter().copied().find(|&w| w != prev).unwrap();
        prev = cur;
        cur = next;
    }
    let mut place = vec![0usize; n];
    for (i, &node) in cycle.iter().enumerate() {
        place[node] = i;
    }

    let mut start_of: Vec<(Vertex, usize)> = Vec::with_capacity(n);
    for &l in mbar.vertices() {
        let sub = vertex_facet_subgraph_of(&dual, l).map_err(|e| fail(VertexFacetPath, e.to_string()))?;
        let len = sub.nodes.len();
        if len != d + 2 || !sub.graph.is_tree() || (0..len).any(|i| sub.graph.degree(i) > 2) {
            return Err(fail(
                VertexFacetPath,
                format!("facets around vertex {l} do not form a path on {} nodes", d + 2),
            ));
        }
        // The unique position whose predecessor on the cycle is not in V_l.
        let positions: Vec<usize> = sub.nodes.iter().map(|&u| place[u]).collect();
        let start = positions
            .iter()
            .copied()
            .find(|&p| !positions.contains(&((p + n - 1) % n)))
            .ok_or_else(|| fail(VertexFacetPath, format!("vertex {l} lies in every facet")))?;
        start_of.push((l, start));
    }

    let mut starts: Vec<usize> = start_of.iter().map(|p| p.1).collect();
    starts.sort_unstable();
    if let Some(w) = starts.windows(2).find(|w| w[0] == w[1]) {
        return Err(fail(Distinctness, format!("two vertices share the facet interval starting at {}", w[0])));
    }

    let pairs = start_of.iter().map(|&(l, s)| (((s + d + 1) % n) as Vertex, l)).collect();
    let phi = VertexBijection::new(pairs).map_err(|e| fail(Isomorphism, e.to_string()))?;
    let solid = kuehnel_solid(d)?;
    if !phi.maps_onto(&solid, mbar) {
        return Err(fail(Isomorphism, "induced vertex map does not carry facets onto facets"));
    }
    Ok(phi)
}
