//! Simple graphs (directed or undirected) over dense vertex indices.
//!
//! Graphs are immutable once built: construction goes through [`Graph::new`]
//! plus [`Graph::add_edge`], after which solver code only reads. No
//! self-loops, no parallel edges; undirected edges are stored canonically as
//! `(min, max)`.

use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (vertex count {1})")]
    VertexOutOfRange(u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
}

/// Finite simple graph. Vertices are `0..vertex_count`; labels are cosmetic
/// and ignored by equality.
#[derive(Debug, Clone)]
pub struct Graph {
    directed: bool,
    vertex_count: usize,
    edges: BTreeSet<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    // in-neighbors; only maintained for directed graphs
    radj: Vec<Vec<u32>>,
    labels: Vec<Option<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.directed == other.directed
            && self.vertex_count == other.vertex_count
            && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(directed: bool, vertex_count: usize) -> Self {
        Graph {
            directed,
            vertex_count,
            edges: BTreeSet::new(),
            adj: vec![Vec::new(); vertex_count],
            radj: if directed {
                vec![Vec::new(); vertex_count]
            } else {
                Vec::new()
            },
            labels: vec![None; vertex_count],
        }
    }

    pub fn undirected(vertex_count: usize) -> Self {
        Self::new(false, vertex_count)
    }

    pub fn directed(vertex_count: usize) -> Self {
        Self::new(true, vertex_count)
    }

    /// Builds an undirected graph from an edge list, panicking on invalid
    /// input. Intended for literals in tests and examples.
    pub fn undirected_from(vertex_count: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Self::undirected(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v).expect("invalid edge literal");
        }
        g
    }

    /// Directed counterpart of [`Graph::undirected_from`].
    pub fn directed_from(vertex_count: usize, arcs: &[(u32, u32)]) -> Self {
        let mut g = Self::directed(vertex_count);
        for &(u, v) in arcs {
            g.add_edge(u, v).expect("invalid arc literal");
        }
        g
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn key(&self, u: u32, v: u32) -> (u32, u32) {
        if self.directed || u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<(), GraphError> {
        if u as usize >= self.vertex_count {
            return Err(GraphError::VertexOutOfRange(u, self.vertex_count));
        }
        if v as usize >= self.vertex_count {
            return Err(GraphError::VertexOutOfRange(v, self.vertex_count));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let key = self.key(u, v);
        if !self.edges.insert(key) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        match self.adj[u as usize].binary_search(&v) {
            Ok(_) => unreachable!("edge set already rejected duplicates"),
            Err(i) => self.adj[u as usize].insert(i, v),
        }
        if self.directed {
            match self.radj[v as usize].binary_search(&u) {
                Ok(_) => unreachable!(),
                Err(i) => self.radj[v as usize].insert(i, u),
            }
        } else {
            match self.adj[v as usize].binary_search(&u) {
                Ok(_) => unreachable!(),
                Err(i) => self.adj[v as usize].insert(i, u),
            }
        }
        Ok(())
    }

    /// Membership is orientation-insensitive on undirected graphs.
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        if u as usize >= self.vertex_count || v as usize >= self.vertex_count || u == v {
            return false;
        }
        self.edges.contains(&self.key(u, v))
    }

    /// Edges in canonical sorted order: `(min, max)` pairs for undirected
    /// graphs, arcs as stored for directed ones.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    /// Out-neighbors (all neighbors when undirected), ascending.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    /// In-neighbors of a directed graph; equals `neighbors` when undirected.
    pub fn in_neighbors(&self, v: u32) -> &[u32] {
        if self.directed {
            &self.radj[v as usize]
        } else {
            &self.adj[v as usize]
        }
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn set_label(&mut self, v: u32, label: impl Into<String>) {
        self.labels[v as usize] = Some(label.into());
    }

    pub fn label(&self, v: u32) -> Option<&str> {
        self.labels[v as usize].as_deref()
    }

    /// Copy of this graph with `extra` fresh isolated vertices appended at
    /// the top of the index range. Used by reductions that add gadget paths.
    pub fn with_extra_vertices(&self, extra: usize) -> Graph {
        let mut g = Graph::new(self.directed, self.vertex_count + extra);
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("copied edge is valid");
        }
        g
    }

    /// Copy without the given edge.
    pub fn without_edge(&self, u: u32, v: u32) -> Option<Graph> {
        if !self.has_edge(u, v) {
            return None;
        }
        let key = self.key(u, v);
        let mut g = Graph::new(self.directed, self.vertex_count);
        for e in self.edges() {
            if e != key {
                g.add_edge(e.0, e.1).expect("copied edge is valid");
            }
        }
        Some(g)
    }

    /// The underlying undirected graph of a directed one. Antiparallel arc
    /// pairs collapse to a single edge.
    pub fn underlying_undirected(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut g = Graph::undirected(self.vertex_count);
        for (u, v) in self.edges() {
            if !g.has_edge(u, v) {
                g.add_edge(u, v).expect("copied edge is valid");
            }
        }
        g
    }

    /// Vertices reachable from `s` (arc directions respected when directed).
    pub fn reachable_from(&self, s: u32) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        if (s as usize) < self.vertex_count {
            let mut stack = vec![s];
            seen[s as usize] = true;
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        debug_assert!(!self.directed, "connectivity check is for undirected graphs");
        if self.vertex_count == 0 {
            return true;
        }
        self.reachable_from(0).iter().all(|&r| r)
    }
}

/// Replaces every edge by a path of `factor` edges through fresh vertices.
/// Fresh vertices are appended above the original index range, following the
/// canonical edge order, so the layout is deterministic. Returns the new
/// graph together with the per-edge chains of fresh vertices.
pub fn subdivide(g: &Graph, factor: usize) -> (Graph, Vec<((u32, u32), Vec<u32>)>) {
    assert!(factor >= 1, "subdivision factor must be at least 1");
    let fresh_per_edge = factor - 1;
    let mut out = Graph::new(
        g.is_directed(),
        g.vertex_count() + fresh_per_edge * g.edge_count(),
    );
    let mut map = Vec::with_capacity(g.edge_count());
    let mut next = g.vertex_count() as u32;
    for (u, v) in g.edges() {
        let mut chain = Vec::with_capacity(fresh_per_edge);
        let mut prev = u;
        for _ in 0..fresh_per_edge {
            out.add_edge(prev, next).expect("fresh vertex edge is valid");
            chain.push(next);
            prev = next;
            next += 1;
        }
        out.add_edge(prev, v).expect("closing edge is valid");
        map.push(((u, v), chain));
    }
    (out, map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_undirected_storage() {
        let mut g = Graph::undirected(3);
        g.add_edge(2, 0).unwrap();
        assert!(g.has_edge(0, 2));
        assert!(g.has_edge(2, 0));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(g.add_edge(0, 2), Err(GraphError::DuplicateEdge(0, 2)));
    }

    #[test]
    fn directed_antiparallel_arcs_are_distinct() {
        let mut g = Graph::directed(2);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 0).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
    }

    #[test]
    fn rejects_self_loop_and_range() {
        let mut g = Graph::undirected(2);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert_eq!(g.add_edge(0, 2), Err(GraphError::VertexOutOfRange(2, 2)));
    }

    #[test]
    fn subdivision_counts() {
        let k3 = Graph::undirected_from(3, &[(0, 1), (0, 2), (1, 2)]);
        let (g, map) = subdivide(&k3, 2);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(map.len(), 3);
        for ((u, v), chain) in &map {
            assert_eq!(chain.len(), 1);
            assert!(g.has_edge(*u, chain[0]));
            assert!(g.has_edge(chain[0], *v));
            assert!(!g.has_edge(*u, *v));
        }
    }

    #[test]
    fn subdivision_factor_one_is_identity() {
        let c4 = Graph::undirected_from(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let (g, _) = subdivide(&c4, 1);
        assert_eq!(g, c4);
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let mut a = Graph::undirected_from(2, &[(0, 1)]);
        let b = Graph::undirected_from(2, &[(0, 1)]);
        a.set_label(0, "source");
        assert_eq!(a, b);
    }
}
