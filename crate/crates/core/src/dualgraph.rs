//! Dual graphs of pure complexes and the graph predicates used on them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use itertools::Itertools;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// A simple undirected graph on nodes `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    /// Builds a simple graph. Loops are rejected, repeated edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownNode(a.max(b)));
            }
            if a == b {
                return Err(Error::Precondition(format!("loop at node {a}")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut edges = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edges += list.len();
        }
        Ok(Graph { adj, edges: edges / 2 })
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub fn is_connected(&self) -> bool {
        !self.adj.is_empty() && self.reachable_from(0, &[]).iter().all(|&r| r)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges + 1 == self.adj.len()
    }

    /// Connected and 2-regular.
    pub fn is_cycle(&self) -> bool {
        self.adj.len() >= 3 && self.adj.iter().all(|l| l.len() == 2) && self.is_connected()
    }

    /// At least three nodes, connected, and no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        self.adj.len() >= 3 && self.is_connected() && self.articulation_points().is_empty()
    }

    /// Cut vertices, ascending. Iterative lowpoint DFS over every component.
    pub fn articulation_points(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (node, parent, next neighbor position)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(top) = stack.last_mut() {
                let (u, parent, pos) = *top;
                if pos < self.adj[u].len() {
                    top.2 += 1;
                    let w = self.adj[u][pos];
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, u, 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[u]);
                        if parent != root && low[u] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&u| is_cut[u]).collect()
    }

    fn reachable_from(&self, start: usize, removed: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        if removed.get(start).copied().unwrap_or(false) {
            return seen;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] && !removed.get(w).copied().unwrap_or(false) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Connected components of the graph with `removed` deleted. Each
    /// component is sorted and components are ordered by smallest member.
    pub fn components_minus(&self, removed: &[usize]) -> Result<Vec<Vec<usize>>> {
        let n = self.adj.len();
        let mut gone = vec![false; n];
        for &s in removed {
            if s >= n {
                return Err(Error::UnknownNode(s));
            }
            gone[s] = true;
        }
        let mut assigned = gone.clone();
        let mut out = Vec::new();
        for start in 0..n {
            if assigned[start] {
                continue;
            }
            let reach = self.reachable_from(start, &gone);
            let comp: Vec<usize> = (0..n).filter(|&u| reach[u]).collect();
            for &u in &comp {
                assigned[u] = true;
            }
            out.push(comp);
        }
        Ok(out)
    }

    /// Nodes of degree three or more.
    pub fn high_degree_set(&self) -> Vec<usize> {
        (0..self.adj.len()).filter(|&u| self.adj[u].len() >= 3).collect()
    }

    /// Subgraph induced on `nodes`, relabeled `0..nodes.len()` in the given order.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let pos = |u: usize| nodes.iter().position(|&x| x == u);
        let edges = nodes
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| self.adj[u].iter().filter_map(move |&w| pos(w).map(|j| (i, j))))
            .filter(|(i, j)| i < j)
            .collect_vec();
        Graph::from_edges(nodes.len(), edges).expect("induced subgraph of a simple graph")
    }

    pub fn to_dot(&self, labels: impl Fn(usize) -> String) -> String {
        let mut out = String::from("graph dual {\n");
        for u in 0..self.adj.len() {
            let _ = writeln!(out, "  {u} [label=\"{}\"];", labels(u));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }
}

/// The facet-adjacency graph of a pure complex. Node `i` is the `i`-th facet
/// in canonical order.
#[derive(Clone, Debug)]
pub struct DualGraph {
    facets: Vec<Face>,
    graph: Graph,
}

/// Builds the dual graph: facets are adjacent when they share a ridge.
pub fn dual_graph(x: &SimplicialComplex) -> Result<DualGraph> {
    if !x.is_pure() {
        return Err(Error::Precondition("dual graph requires a pure complex".into()));
    }
    let mut edges = Vec::new();
    for ids in x.ridge_incidence().values() {
        edges.extend(ids.iter().copied().tuple_combinations::<(usize, usize)>());
    }
    let graph = Graph::from_edges(x.num_facets(), edges)?;
    Ok(DualGraph { facets: x.facets().to_vec(), graph })
}

impl DualGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet(&self, id: usize) -> &Face {
        &self.facets[id]
    }

    pub fn facet_id(&self, facet: &Face) -> Option<usize> {
        self.facets.binary_search(facet).ok()
    }

    /// Number of nodes (facets).
    pub fn nu(&self) -> usize {
        self.graph.num_nodes()
    }

    /// Number of edges (adjacent facet pairs).
    pub fn epsilon(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn is_tree(&self) -> bool {
        self.graph.is_tree()
    }

    pub fn is_cycle(&self) -> bool {
        self.graph.is_cycle()
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    pub fn is_two_connected(&self) -> bool {
        self.graph.is_two_connected()
    }

    pub fn components_minus(&self, removed: &[usize]) -> Result<Vec<Vec<usize>>> {
        self.graph.components_minus(removed)
    }

    pub fn high_degree_set(&self) -> Vec<usize> {
        self.graph.high_degree_set()
    }

    /// Ids of the facets containing `v`.
    pub fn facets_containing(&self, v: Vertex) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| self.facets[i].contains(v)).collect()
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot(|u| self.facets[u].vertices().iter().join(" "))
    }
}

/// Induced subgraph of a dual graph, remembering the original node ids.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub nodes: Vec<usize>,
    pub graph: Graph,
}

/// Subgraph of the dual graph induced by the facets that contain `v`.
pub fn vertex_facet_subgraph(x: &SimplicialComplex, v: Vertex) -> Result<InducedSubgraph> {
    let dual = dual_graph(x)?;
    vertex_facet_subgraph_of(&dual, v)
}

pub fn vertex_facet_subgraph_of(dual: &DualGraph, v: Vertex) -> Result<InducedSubgraph> {
    let nodes = dual.facets_containing(v);
    if nodes.is_empty() {
        return Err(Error::UnknownVertex(v));
    }
    let graph = dual.graph.induced(&nodes);
    Ok(InducedSubgraph { nodes, graph })
}

/// Union of the facet vertex sets for the given node ids.
pub fn covered_vertices(dual: &DualGraph, ids: &[usize]) -> Result<BTreeSet<Vertex>> {
    let mut out = BTreeSet::new();
    for &id in ids {
        let facet = dual.facets.get(id).ok_or(Error::UnknownNode(id))?;
        out.extend(facet.vertices().iter().copied());
    }
    Ok(out)
}
