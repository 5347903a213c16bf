//! Canonical r-uniform hypergraphs and their structural operations.
//!
//! A [`Hypergraph`] stores its edges sorted (within each edge and
//! lexicographically across edges) with duplicates rejected, so derived
//! `==` is canonical equality. Vertices are `0..n_vertices` and may be
//! isolated: operations that produce subgraphs of a fixed ambient graph
//! (`star_of_set`, edge-subset subgraphs) keep the ambient vertex count so
//! subgraphs of the same graph compare by edge set alone, while
//! `induced` and `star_core` relabel to a compact vertex range and return
//! the relabeling map.
//!
//! "Independent" always means strongly independent: a vertex set `S` is
//! independent when every edge meets it in at most one vertex. This is the
//! notion under which value-1 indicator labelings are valid, and the
//! independence polynomial built from it drives the root `beta` of the
//! hub-type rate branch.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex sets above this size make independent-set enumeration (up to
/// `2^n` nodes in the edgeless worst case) unreasonable.
pub const INDEPENDENCE_VERTEX_CAP: usize = 24;

/// An `r`-uniform hypergraph on vertices `0..n_vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    r: usize,
    n_vertices: usize,
    edges: Vec<Vec<usize>>,
}

/// Wire form of [`Hypergraph`]; conversion re-validates on deserialize.
#[derive(Serialize, Deserialize, Clone)]
struct RawHypergraph {
    r: usize,
    n_vertices: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.r, raw.n_vertices, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph { r: h.r, n_vertices: h.n_vertices, edges: h.edges }
    }
}

/// One maximal loose path in a decomposition: edges listed in path order
/// (indices into the decomposed graph's edge list) and the connector
/// vertices shared by consecutive edges, in the same order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoosePath {
    pub edges: Vec<usize>,
    pub connectors: Vec<usize>,
}

impl Hypergraph {
    /// Builds a hypergraph, canonicalizing edge order.
    ///
    /// # Errors
    /// [`Error::Input`] when `r < 2`, an edge has the wrong size, repeats a
    /// vertex, mentions a vertex `>= n_vertices`, or appears twice.
    pub fn new(r: usize, n_vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::Input(format!("uniformity must be at least 2, got {r}")));
        }
        let mut canon = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.len() != r {
                return Err(Error::Input(format!(
                    "edge {e:?} has {} vertices in a {r}-uniform graph",
                    e.len()
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Input(format!("edge {e:?} repeats a vertex")));
            }
            if *e.last().expect("r >= 2") >= n_vertices {
                return Err(Error::Input(format!(
                    "edge {e:?} mentions a vertex outside 0..{n_vertices}"
                )));
            }
            canon.push(e);
        }
        canon.sort_unstable();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input("duplicate edge".into()));
        }
        Ok(Hypergraph { r, n_vertices, edges: canon })
    }

    /// The Fano plane: the unique 3-uniform, 3-regular linear hypergraph on
    /// 7 points and 7 lines.
    pub fn fano() -> Hypergraph {
        let lines = vec![
            vec![0, 1, 3],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![3, 4, 6],
            vec![4, 5, 0],
            vec![5, 6, 1],
            vec![6, 0, 2],
        ];
        Hypergraph::new(3, 7, lines).expect("fano plane is well formed")
    }

    /// The Fano plane with one line removed (all choices are isomorphic;
    /// this removes `{0,1,3}`).
    pub fn fano_minus_edge() -> Hypergraph {
        let h = Hypergraph::fano();
        let edges = h.edges.into_iter().filter(|e| e != &vec![0, 1, 3]).collect();
        Hypergraph::new(3, 7, edges).expect("fano minus a line is well formed")
    }

    /// The tight cycle `C_l^(r)`: vertices `0..l`, one edge per cyclic
    /// interval of `r` consecutive vertices.
    ///
    /// # Errors
    /// [`Error::Input`] unless `l > r`.
    pub fn tight_cycle(r: usize, l: usize) -> Result<Hypergraph> {
        if l <= r {
            return Err(Error::Input(format!(
                "tight cycle needs more vertices than the uniformity, got l={l}, r={r}"
            )));
        }
        let edges = (0..l).map(|i| (0..r).map(|j| (i + j) % l).collect()).collect();
        Hypergraph::new(r, l, edges)
    }

    /// The complete r-partite r-graph with the given part sizes: one part
    /// per coordinate, consecutive vertex ranges, and every transversal of
    /// the parts as an edge.
    ///
    /// # Errors
    /// [`Error::Input`] unless exactly `r` part sizes are given, all
    /// positive.
    pub fn complete_r_partite(r: usize, parts: &[usize]) -> Result<Hypergraph> {
        if parts.len() != r {
            return Err(Error::Input(format!(
                "complete r-partite graph needs {r} part sizes, got {}",
                parts.len()
            )));
        }
        if parts.iter().any(|&m| m == 0) {
            return Err(Error::Input("part sizes must be positive".into()));
        }
        let mut starts = Vec::with_capacity(r);
        let mut n = 0usize;
        for &m in parts {
            starts.push(n);
            n += m;
        }
        let mut edges = Vec::new();
        let mut pick = vec![0usize; r];
        loop {
            edges.push((0..r).map(|i| starts[i] + pick[i]).collect::<Vec<_>>());
            let mut i = r;
            loop {
                if i == 0 {
                    return Hypergraph::new(r, n, edges);
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < parts[i] {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    /// The complete r-graph (clique) on `k` vertices: every r-subset of
    /// `0..k` is an edge.
    ///
    /// # Errors
    /// [`Error::Input`] unless `k >= r`.
    pub fn clique(r: usize, k: usize) -> Result<Hypergraph> {
        if k < r {
            return Err(Error::Input(format!("clique on {k} vertices has no {r}-edges")));
        }
        let mut edges = Vec::new();
        let mut pick: Vec<usize> = (0..r).collect();
        loop {
            edges.push(pick.clone());
            // Advance to the next r-subset in lexicographic order.
            let mut i = r;
            loop {
                if i == 0 {
                    return Hypergraph::new(r, k, edges);
                }
                i -= 1;
                if pick[i] < k - (r - i) {
                    pick[i] += 1;
                    for j in i + 1..r {
                        pick[j] = pick[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    /// Index of a (sorted or unsorted) edge in the canonical list.
    pub fn edge_index(&self, edge: &[usize]) -> Option<usize> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).ok()
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        assert!(v < self.n_vertices, "vertex {v} out of range");
        self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n_vertices];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Maximum degree; 0 for an edgeless graph.
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Whether every vertex has the same degree.
    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    /// The vertices of maximum degree, ascending.
    pub fn max_degree_vertices(&self) -> Vec<usize> {
        let d = self.degrees();
        let delta = d.iter().copied().max().unwrap_or(0);
        (0..self.n_vertices).filter(|&v| d[v] == delta).collect()
    }

    /// Vertices of positive degree, ascending.
    pub fn support_vertices(&self) -> Vec<usize> {
        let d = self.degrees();
        (0..self.n_vertices).filter(|&v| d[v] > 0).collect()
    }

    /// Per-vertex lists of incident edge indices.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// The subgraph induced by `verts`, relabeled to `0..verts.len()`.
    /// Returns the graph together with the map from new vertex ids to the
    /// original ids (ascending).
    ///
    /// # Errors
    /// [`Error::Input`] when `verts` repeats a vertex or leaves the range.
    pub fn induced(&self, verts: &[usize]) -> Result<(Hypergraph, Vec<usize>)> {
        let keep = self.check_vertex_set(verts)?;
        let mut old_to_new = vec![usize::MAX; self.n_vertices];
        for (new, &old) in keep.iter().enumerate() {
            old_to_new[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| old_to_new[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| old_to_new[v]).collect())
            .collect();
        Ok((Hypergraph::new(self.r, keep.len(), edges)?, keep))
    }

    /// The star core `H* = H[V*]`: the subgraph induced by the max-degree
    /// vertices, relabeled, with the new-to-old vertex map.
    pub fn star_core(&self) -> (Hypergraph, Vec<usize>) {
        self.induced(&self.max_degree_vertices())
            .expect("max-degree vertices form a valid vertex set")
    }

    /// The neighborhood `N(S)`: vertices sharing an edge with `S`, with `S`
    /// itself removed. Ascending.
    ///
    /// # Errors
    /// [`Error::Input`] when `s` repeats a vertex or leaves the range.
    pub fn neighborhood(&self, s: &[usize]) -> Result<Vec<usize>> {
        let s = self.check_vertex_set(s)?;
        let mut seen = vec![false; self.n_vertices];
        for e in &self.edges {
            if e.iter().any(|v| s.binary_search(v).is_ok()) {
                for &v in e {
                    seen[v] = true;
                }
            }
        }
        for &v in &s {
            seen[v] = false;
        }
        Ok((0..self.n_vertices).filter(|&v| seen[v]).collect())
    }

    /// The star `F_S`: the subgraph consisting of every edge meeting `S`,
    /// on the same ambient vertex set.
    ///
    /// # Errors
    /// [`Error::Input`] when `s` repeats a vertex or leaves the range.
    pub fn star_of_set(&self, s: &[usize]) -> Result<Hypergraph> {
        let s = self.check_vertex_set(s)?;
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().any(|v| s.binary_search(v).is_ok()))
            .cloned()
            .collect();
        Hypergraph::new(self.r, self.n_vertices, edges)
    }

    /// The subgraph keeping exactly the edges at the given indices, on the
    /// same ambient vertex set.
    ///
    /// # Errors
    /// [`Error::Input`] on an out-of-range or repeated index.
    pub fn subgraph_with_edge_indices(&self, idxs: &[usize]) -> Result<Hypergraph> {
        let mut sorted = idxs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != idxs.len() {
            return Err(Error::Input("repeated edge index".into()));
        }
        if sorted.last().is_some_and(|&i| i >= self.edges.len()) {
            return Err(Error::Input("edge index out of range".into()));
        }
        let edges = sorted.iter().map(|&i| self.edges[i].clone()).collect();
        Hypergraph::new(self.r, self.n_vertices, edges)
    }

    /// Whether `self` is a subgraph of `other` on the same ambient vertex
    /// set: equal uniformity and vertex count, edge set contained.
    pub fn is_subgraph_of(&self, other: &Hypergraph) -> bool {
        self.r == other.r
            && self.n_vertices == other.n_vertices
            && self.edges.iter().all(|e| other.edges.binary_search(e).is_ok())
    }

    /// Whether `s` is (strongly) independent: every edge meets it in at
    /// most one vertex.
    ///
    /// # Errors
    /// [`Error::Input`] when `s` repeats a vertex or leaves the range.
    pub fn is_independent(&self, s: &[usize]) -> Result<bool> {
        let s = self.check_vertex_set(s)?;
        Ok(self
            .edges
            .iter()
            .all(|e| e.iter().filter(|v| s.binary_search(v).is_ok()).count() <= 1))
    }

    /// Streams every independent set (ascending vertex lists, in depth-first
    /// lexicographic order, starting with the empty set).
    pub fn independent_sets(&self) -> IndependentSets<'_> {
        self.independent_sets_within(&(0..self.n_vertices).collect::<Vec<_>>())
            .expect("the full vertex range is a valid vertex set")
    }

    /// Streams every subset of `verts` that is independent in the ambient
    /// graph: every edge of `self` (not merely edges inside `verts`) meets
    /// the subset in at most one vertex. This is the family the star-core
    /// machinery quantifies over; for a regular graph it coincides with
    /// [`Hypergraph::independent_sets`].
    ///
    /// # Errors
    /// [`Error::Input`] when `verts` repeats a vertex or leaves the range.
    pub fn independent_sets_within(&self, verts: &[usize]) -> Result<IndependentSets<'_>> {
        let candidates = self.check_vertex_set(verts)?;
        Ok(IndependentSets {
            h: self,
            incidence: self.incidence(),
            candidates,
            stack: vec![(Vec::new(), 0)],
        })
    }

    /// Coefficients of the ambient independence polynomial over subsets of
    /// `verts`: entry `k` counts the size-`k` subsets of `verts` meeting
    /// every edge of `self` at most once.
    ///
    /// # Errors
    /// [`Error::Input`] on a bad vertex set, [`Error::Capacity`] when
    /// `verts` exceeds [`INDEPENDENCE_VERTEX_CAP`].
    pub fn independence_polynomial_within(&self, verts: &[usize]) -> Result<Vec<u64>> {
        if verts.len() > INDEPENDENCE_VERTEX_CAP {
            return Err(Error::Capacity(format!(
                "independence enumeration over {} vertices exceeds the cap of {}",
                verts.len(),
                INDEPENDENCE_VERTEX_CAP
            )));
        }
        let mut counts = Vec::new();
        for s in self.independent_sets_within(verts)? {
            if s.len() >= counts.len() {
                counts.resize(s.len() + 1, 0u64);
            }
            counts[s.len()] += 1;
        }
        Ok(counts)
    }

    /// Coefficients of the independence polynomial: entry `k` counts the
    /// independent sets of size `k`. The constant term is always 1.
    ///
    /// # Errors
    /// [`Error::Capacity`] when the graph has more than
    /// [`INDEPENDENCE_VERTEX_CAP`] vertices.
    pub fn independence_polynomial(&self) -> Result<Vec<u64>> {
        self.independence_polynomial_within(&(0..self.n_vertices).collect::<Vec<_>>())
    }

    /// Decomposes the edge set into loose paths: returns one [`LoosePath`]
    /// per connected component when every component is a loose path (edges
    /// pairwise sharing at most one vertex, every vertex in at most two
    /// edges, every edge adjacent to at most two others, no cycles), and
    /// `None` otherwise. An edgeless graph decomposes into no paths.
    pub fn loose_path_decomposition(&self) -> Option<Vec<LoosePath>> {
        let m = self.edges.len();
        if self.degrees().into_iter().max().unwrap_or(0) > 2 {
            return None;
        }
        // adj[i] lists (j, shared vertex) for every edge j meeting edge i.
        let mut adj = vec![Vec::new(); m];
        for i in 0..m {
            for j in i + 1..m {
                let shared: Vec<usize> = self.edges[i]
                    .iter()
                    .copied()
                    .filter(|v| self.edges[j].binary_search(v).is_ok())
                    .collect();
                match shared.len() {
                    0 => {}
                    1 => {
                        adj[i].push((j, shared[0]));
                        adj[j].push((i, shared[0]));
                    }
                    _ => return None,
                }
            }
        }
        if adj.iter().any(|a| a.len() > 2) {
            return None;
        }
        let mut assigned = vec![false; m];
        let mut paths = Vec::new();
        for start in 0..m {
            if assigned[start] || adj[start].len() == 2 {
                continue;
            }
            // Walk from an endpoint (or isolated edge) to the other end.
            let mut edges = vec![start];
            let mut connectors = Vec::new();
            assigned[start] = true;
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                let next = adj[cur].iter().find(|&&(j, _)| j != prev);
                match next {
                    Some(&(j, shared)) => {
                        assigned[j] = true;
                        edges.push(j);
                        connectors.push(shared);
                        prev = cur;
                        cur = j;
                    }
                    None => break,
                }
            }
            paths.push(LoosePath { edges, connectors });
        }
        if assigned.iter().any(|&a| !a) {
            // Unreached edges sit on components without endpoints: cycles.
            return None;
        }
        Some(paths)
    }

    /// Validates a vertex set given in any order; returns it sorted.
    fn check_vertex_set(&self, s: &[usize]) -> Result<Vec<usize>> {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input(format!("vertex set {s:?} repeats a vertex")));
        }
        if sorted.last().is_some_and(|&v| v >= self.n_vertices) {
            return Err(Error::Input(format!(
                "vertex set {s:?} leaves the range 0..{}",
                self.n_vertices
            )));
        }
        Ok(sorted)
    }
}

/// Lazy depth-first stream over (ambient) independent subsets of a fixed
/// candidate vertex list.
pub struct IndependentSets<'a> {
    h: &'a Hypergraph,
    incidence: Vec<Vec<usize>>,
    candidates: Vec<usize>,
    // Each entry is a partial set plus the candidate index to extend from.
    stack: Vec<(Vec<usize>, usize)>,
}

impl Iterator for IndependentSets<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let (set, from) = self.stack.pop()?;
        for idx in (from..self.candidates.len()).rev() {
            let v = self.candidates[idx];
            let ok = self.incidence[v].iter().all(|&e| {
                self.h.edges[e]
                    .iter()
                    .filter(|u| set.binary_search(u).is_ok())
                    .count()
                    == 0
            });
            if ok {
                let mut child = set.clone();
                child.push(v);
                self.stack.push((child, idx + 1));
            }
        }
        Some(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_and_validates() {
        let h = Hypergraph::new(3, 5, vec![vec![4, 2, 0], vec![1, 2, 3]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 2, 4], vec![1, 2, 3]]);
        assert!(Hypergraph::new(1, 3, vec![]).is_err());
        assert!(Hypergraph::new(3, 5, vec![vec![0, 1]]).is_err());
        assert!(Hypergraph::new(3, 5, vec![vec![0, 1, 1]]).is_err());
        assert!(Hypergraph::new(3, 5, vec![vec![0, 1, 5]]).is_err());
        assert!(Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 1, 0]]).is_err());
    }

    #[test]
    fn fano_is_three_regular_and_linear() {
        let h = Hypergraph::fano();
        assert_eq!((h.r(), h.n_vertices(), h.edge_count()), (3, 7, 7));
        assert!(h.is_regular());
        assert_eq!(h.max_degree(), 3);
        assert_eq!(h.max_degree_vertices(), (0..7).collect::<Vec<_>>());
        // Any two lines meet in exactly one point.
        for i in 0..7 {
            for j in i + 1..7 {
                let shared = h
                    .edge(i)
                    .iter()
                    .filter(|v| h.edge(j).binary_search(v).is_ok())
                    .count();
                assert_eq!(shared, 1, "lines {i} and {j}");
            }
        }
    }

    #[test]
    fn fano_minus_edge_star_core_is_edgeless_k4_trace() {
        let h = Hypergraph::fano_minus_edge();
        assert_eq!(h.edge_count(), 6);
        assert_eq!(h.max_degree_vertices(), vec![2, 4, 5, 6]);
        let (core, map) = h.star_core();
        assert_eq!(map, vec![2, 4, 5, 6]);
        assert_eq!(core.n_vertices(), 4);
        assert_eq!(core.edge_count(), 0);
        // Every remaining line meets the max-degree set in exactly 2 points.
        for e in h.edges() {
            let inside = e.iter().filter(|v| [2, 4, 5, 6].contains(*v)).count();
            assert_eq!(inside, 2);
        }
        assert_eq!(core.independence_polynomial().unwrap(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn tight_cycle_shapes() {
        let h = Hypergraph::tight_cycle(3, 7).unwrap();
        assert_eq!(h.edge_count(), 7);
        assert!(h.is_regular());
        assert_eq!(h.neighborhood(&[0]).unwrap(), vec![1, 2, 5, 6]);
        assert!(Hypergraph::tight_cycle(3, 3).is_err());
        // l = r + 1 collapses to the clique.
        assert_eq!(
            Hypergraph::tight_cycle(3, 4).unwrap(),
            Hypergraph::clique(3, 4).unwrap()
        );
    }

    #[test]
    fn strong_independence_in_short_cycle() {
        // Every pair of vertices of the 5-cycle shares an edge, so only
        // singletons are independent.
        let h = Hypergraph::tight_cycle(3, 5).unwrap();
        assert_eq!(h.independence_polynomial().unwrap(), vec![1, 5]);
        assert!(h.is_independent(&[2]).unwrap());
        assert!(!h.is_independent(&[0, 1]).unwrap());
        assert!(!h.is_independent(&[0, 2]).unwrap());
        // On 6 vertices the antipodal pairs appear.
        let h6 = Hypergraph::tight_cycle(3, 6).unwrap();
        assert_eq!(h6.independence_polynomial().unwrap(), vec![1, 6, 3]);
        // On 7, pairs at circular distance 3.
        let h7 = Hypergraph::tight_cycle(3, 7).unwrap();
        assert_eq!(h7.independence_polynomial().unwrap(), vec![1, 7, 7]);
    }

    #[test]
    fn fano_independent_sets_are_singletons() {
        // Any two points lie on a common line.
        let h = Hypergraph::fano();
        assert_eq!(h.independence_polynomial().unwrap(), vec![1, 7]);
        let all: Vec<_> = h.independent_sets().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], Vec::<usize>::new());
    }

    #[test]
    fn independent_set_stream_matches_polynomial() {
        let h = Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap();
        let mut counts = vec![0u64; 7];
        for s in h.independent_sets() {
            assert!(h.is_independent(&s).unwrap());
            counts[s.len()] += 1;
        }
        while counts.len() > 1 && *counts.last().unwrap() == 0 {
            counts.pop();
        }
        assert_eq!(counts, h.independence_polynomial().unwrap());
        // Independent sets of the complete 3-partite graph live inside a
        // single part: 1 + 6x + 3x^2.
        assert_eq!(counts, vec![1, 6, 3]);
    }

    #[test]
    fn induced_and_star_operations() {
        let h = Hypergraph::fano();
        let (sub, map) = h.induced(&[0, 1, 2, 3]).unwrap();
        assert_eq!(map, vec![0, 1, 2, 3]);
        assert_eq!(sub.edges(), &[vec![0, 1, 3]]);

        let k = Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap();
        let star = k.star_of_set(&[0]).unwrap();
        assert_eq!(star.n_vertices(), 6);
        assert_eq!(star.edge_count(), 4);
        assert!(star.is_subgraph_of(&k));
        assert_eq!(star.support_vertices(), vec![0, 2, 3, 4, 5]);

        let deg = Hypergraph::complete_r_partite(3, &[1, 2, 2]).unwrap();
        assert_eq!(deg.max_degree(), 4);
        assert_eq!(deg.max_degree_vertices(), vec![0]);
    }

    #[test]
    fn loose_path_decomposition_cases() {
        // Two edges sharing one vertex: a single loose path.
        let p2 = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let d = p2.loose_path_decomposition().unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].edges, vec![0, 1]);
        assert_eq!(d[0].connectors, vec![2]);

        // A single edge is a loose path of length one.
        let single = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(single.loose_path_decomposition().unwrap().len(), 1);

        // Two disjoint edges: two paths.
        let two = Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(two.loose_path_decomposition().unwrap().len(), 2);

        // A 2-graph cycle has no endpoints.
        let c4 = Hypergraph::tight_cycle(2, 4).unwrap();
        assert!(c4.loose_path_decomposition().is_none());

        // Degree 3 at the center.
        let star = Hypergraph::new(2, 4, vec![vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        assert!(star.loose_path_decomposition().is_none());

        // Overlap of size 2 is not loose.
        let tight = Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert!(tight.loose_path_decomposition().is_none());
    }

    #[test]
    fn serde_roundtrip_revalidates() {
        let h = Hypergraph::fano_minus_edge();
        let json = serde_json::to_string(&h).unwrap();
        let back: Hypergraph = serde_json::from_str(&json).unwrap();
        assert_eq!(h, back);
        let bad = r#"{"r":3,"n_vertices":3,"edges":[[0,1,5]]}"#;
        assert!(serde_json::from_str::<Hypergraph>(bad).is_err());
    }

    #[test]
    fn complete_r_partite_validation() {
        assert!(Hypergraph::complete_r_partite(3, &[2, 2]).is_err());
        assert!(Hypergraph::complete_r_partite(3, &[2, 0, 2]).is_err());
        let h = Hypergraph::complete_r_partite(3, &[2, 2, 2]).unwrap();
        assert_eq!(h.edge_count(), 8);
        assert!(h.is_regular());
        assert_eq!(h.max_degree(), 4);
    }
}
