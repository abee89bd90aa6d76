//! Exhaustive ground-truth solvers.
//!
//! Everything here is intentionally exponential: depth-first enumeration of
//! simple paths and cycles with a visited set, capped by a node budget that
//! counts attempted extensions. These routines anchor every polynomial
//! solver and every reduction in the crate.

use crate::graph::Graph;
use crate::query::{Query, QueryKind, ResidueConstraint, Verdict, Witness};
use std::collections::BTreeSet;
use thiserror::Error;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Hard cap on the number of components in a disjoint-family query.
pub const DEFAULT_COMPONENT_CAP: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("endpoint {0} out of range (vertex count {1})")]
    EndpointOutOfRange(u32, usize),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("vertices {0} and {1} are not connected")]
    Disconnected(u32, u32),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

/// Extension counter shared across one (possibly nested) search.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    fn spend(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_NODE_BUDGET)
    }
}

struct PathSearch<'a> {
    g: &'a Graph,
    target: u32,
    constraint: &'a ResidueConstraint,
    budget: &'a mut Budget,
    visited: Vec<bool>,
    path: Vec<u32>,
    exhausted: bool,
}

impl PathSearch<'_> {
    /// Depth-first over simple paths, neighbors ascending, so the first hit
    /// is the lexicographically least witness. Search never extends past the
    /// target: no other simple path to it can share such a prefix.
    fn run(&mut self, u: u32, len: usize) -> Option<Vec<u32>> {
        if u == self.target {
            if self.constraint.accepts(len) {
                return Some(self.path.clone());
            }
            return None;
        }
        let g = self.g;
        for &w in g.neighbors(u) {
            if self.visited[w as usize] {
                continue;
            }
            if !self.budget.spend() {
                self.exhausted = true;
                return None;
            }
            self.visited[w as usize] = true;
            self.path.push(w);
            if let Some(found) = self.run(w, len + 1) {
                return Some(found);
            }
            self.path.pop();
            self.visited[w as usize] = false;
            if self.exhausted {
                return None;
            }
        }
        None
    }
}

struct CycleSearch<'a> {
    g: &'a Graph,
    root: u32,
    constraint: Option<&'a ResidueConstraint>,
    budget: &'a mut Budget,
    visited: Vec<bool>,
    path: Vec<u32>,
    exhausted: bool,
    /// Residues seen so far when running in spectrum mode.
    spectrum: u64,
    modulus: u32,
    /// Spectrum mode stops early once these residues are all achieved.
    stop_mask: u64,
    stop_hit: bool,
}

impl CycleSearch<'_> {
    /// Canonical enumeration: the root is the least vertex of the cycle and,
    /// on undirected graphs, the second vertex is smaller than the last, so
    /// each cycle is visited exactly once, in lexicographic order.
    fn run(&mut self, u: u32) -> Option<Vec<u32>> {
        let g = self.g;
        let min_len = if g.is_directed() { 2 } else { 3 };
        if self.path.len() >= min_len && g.has_edge(u, self.root) {
            let ok_orientation = g.is_directed() || self.path[1] < u;
            if ok_orientation {
                let len = self.path.len();
                match self.constraint {
                    Some(c) => {
                        if c.accepts(len) {
                            return Some(self.path.clone());
                        }
                    }
                    None => {
                        self.spectrum |= 1 << (len as u64 % self.modulus as u64);
                        if self.stop_mask != 0 && self.spectrum & self.stop_mask == self.stop_mask
                        {
                            // Nothing more to learn from this graph.
                            self.stop_hit = true;
                            return None;
                        }
                    }
                }
            }
        }
        for &w in g.neighbors(u) {
            if w <= self.root || self.visited[w as usize] {
                continue;
            }
            if !self.budget.spend() {
                self.exhausted = true;
                return None;
            }
            self.visited[w as usize] = true;
            self.path.push(w);
            if let Some(found) = self.run(w) {
                return Some(found);
            }
            self.path.pop();
            self.visited[w as usize] = false;
            if self.exhausted || self.stop_hit {
                return None;
            }
        }
        None
    }
}

fn check_endpoint(g: &Graph, v: u32) -> Result<(), OracleError> {
    if (v as usize) < g.vertex_count() {
        Ok(())
    } else {
        Err(OracleError::EndpointOutOfRange(v, g.vertex_count()))
    }
}

/// Decides any query exactly by exhaustive search. Returns the
/// lexicographically least witness on yes-instances, `No` when the search
/// space is exhausted, and `Unknown` when the budget runs out first.
pub fn oracle_decide(g: &Graph, query: &Query, budget: &mut Budget) -> Result<Verdict, OracleError> {
    query
        .validate_shape()
        .map_err(|e| OracleError::InvalidQuery(e.to_string()))?;
    match query.kind {
        QueryKind::Path => {
            let (s, t) = (query.source.unwrap(), query.target.unwrap());
            check_endpoint(g, s)?;
            check_endpoint(g, t)?;
            if s == t {
                return Ok(if query.constraint.accepts(0) {
                    Verdict::Yes(Witness::path(vec![s]))
                } else {
                    Verdict::No
                });
            }
            let mut search = PathSearch {
                g,
                target: t,
                constraint: &query.constraint,
                budget,
                visited: vec![false; g.vertex_count()],
                path: vec![s],
                exhausted: false,
            };
            search.visited[s as usize] = true;
            let found = search.run(s, 0);
            let exhausted = search.exhausted;
            match found {
                Some(p) => Ok(Verdict::Yes(Witness::path(p))),
                None if exhausted => Ok(Verdict::Unknown("budget".into())),
                None => Ok(Verdict::No),
            }
        }
        QueryKind::Cycle => {
            for root in 0..g.vertex_count() as u32 {
                let mut search = CycleSearch {
                    g,
                    root,
                    constraint: Some(&query.constraint),
                    budget,
                    visited: vec![false; g.vertex_count()],
                    path: vec![root],
                    exhausted: false,
                    spectrum: 0,
                    modulus: query.constraint.modulus(),
                    stop_mask: 0,
                    stop_hit: false,
                };
                search.visited[root as usize] = true;
                let found = search.run(root);
                let exhausted = search.exhausted;
                match found {
                    Some(p) => return Ok(Verdict::Yes(Witness::cycle(p))),
                    None if exhausted => return Ok(Verdict::Unknown("budget".into())),
                    None => {}
                }
            }
            Ok(Verdict::No)
        }
    }
}

/// The residue set achieved by simple paths between fixed endpoints or by
/// simple cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub modulus: u32,
    pub kind: QueryKind,
    pub achieved: BTreeSet<u32>,
}

impl Spectrum {
    fn from_mask(kind: QueryKind, q: u32, mask: u64) -> Self {
        Spectrum {
            modulus: q,
            kind,
            achieved: (0..q).filter(|r| mask >> r & 1 == 1).collect(),
        }
    }

    /// The CLI-facing one-line report, residues ascending.
    pub fn report_line(&self) -> String {
        let residues: Vec<String> = self.achieved.iter().map(|r| r.to_string()).collect();
        format!(
            "spectrum {} q={} achieved={{{}}}",
            self.kind,
            self.modulus,
            residues.join(",")
        )
    }
}

fn full_mask(q: u32) -> u64 {
    if q >= 64 {
        u64::MAX
    } else {
        (1u64 << q) - 1
    }
}

struct SpectrumSearch<'a> {
    g: &'a Graph,
    q: u32,
    budget: &'a mut Budget,
    visited: Vec<bool>,
    exhausted: bool,
    /// Per-vertex residue masks; the sweep records every simple path from
    /// the source to every endpoint it reaches.
    masks: Vec<u64>,
}

impl SpectrumSearch<'_> {
    fn run(&mut self, u: u32, len: usize) {
        self.masks[u as usize] |= 1 << (len as u64 % self.q as u64);
        let g = self.g;
        for &w in g.neighbors(u) {
            if self.visited[w as usize] {
                continue;
            }
            if !self.budget.spend() {
                self.exhausted = true;
                return;
            }
            self.visited[w as usize] = true;
            self.run(w, len + 1);
            self.visited[w as usize] = false;
            if self.exhausted {
                return;
            }
        }
    }
}

/// Residue masks of simple paths from `s` to every vertex, as bitmasks over
/// `0..q` (q <= 64). One sweep covers all endpoints; the all-pairs harnesses
/// rely on this.
pub fn path_spectra_from(
    g: &Graph,
    s: u32,
    q: u32,
    budget: &mut Budget,
) -> Result<Vec<u64>, OracleError> {
    check_endpoint(g, s)?;
    assert!(q >= 1 && q <= 64, "spectrum modulus must be in 1..=64");
    let mut search = SpectrumSearch {
        g,
        q,
        budget,
        visited: vec![false; g.vertex_count()],
        exhausted: false,
        masks: vec![0; g.vertex_count()],
    };
    search.visited[s as usize] = true;
    search.run(s, 0);
    if search.exhausted {
        return Err(OracleError::BudgetExhausted(search.budget.limit()));
    }
    Ok(search.masks)
}

/// Residue mask of all simple cycle lengths mod `q`. Stops early once every
/// residue in `enough` has been seen (pass `full_mask` semantics via
/// `stop_at_full = true` to early-exit on the complete set).
pub fn cycle_spectrum_mask(
    g: &Graph,
    q: u32,
    budget: &mut Budget,
    stop_mask: u64,
) -> Result<u64, OracleError> {
    assert!(q >= 1 && q <= 64, "spectrum modulus must be in 1..=64");
    let mut acc = 0u64;
    for root in 0..g.vertex_count() as u32 {
        if stop_mask != 0 && acc & stop_mask == stop_mask {
            break;
        }
        let mut search = CycleSearch {
            g,
            root,
            constraint: None,
            budget,
            visited: vec![false; g.vertex_count()],
            path: vec![root],
            exhausted: false,
            spectrum: acc,
            modulus: q,
            stop_mask,
            stop_hit: false,
        };
        search.visited[root as usize] = true;
        search.run(root);
        acc = search.spectrum;
        if search.exhausted {
            return Err(OracleError::BudgetExhausted(search.budget.limit()));
        }
    }
    Ok(acc)
}

/// Exact residue spectrum by exhaustive enumeration. Budget exhaustion is an
/// error, never a truncated spectrum.
pub fn oracle_spectrum(
    g: &Graph,
    kind: QueryKind,
    s: Option<u32>,
    t: Option<u32>,
    q: u32,
    budget: &mut Budget,
) -> Result<Spectrum, OracleError> {
    if q < 1 {
        return Err(OracleError::InvalidQuery("modulus must be at least 1".into()));
    }
    match kind {
        QueryKind::Path => {
            let (s, t) = match (s, t) {
                (Some(s), Some(t)) => (s, t),
                _ => {
                    return Err(OracleError::InvalidQuery(
                        "path spectrum requires endpoints".into(),
                    ))
                }
            };
            check_endpoint(g, t)?;
            let masks = path_spectra_from(g, s, q, budget)?;
            Ok(Spectrum::from_mask(kind, q, masks[t as usize]))
        }
        QueryKind::Cycle => {
            let mask = cycle_spectrum_mask(g, q, budget, full_mask(q))?;
            Ok(Spectrum::from_mask(kind, q, mask))
        }
    }
}

/// Do all simple s-t paths achieve one single residue, and if so which?
/// Errors when the endpoints are disconnected.
pub fn oracle_all_same(
    g: &Graph,
    s: u32,
    t: u32,
    q: u32,
    budget: &mut Budget,
) -> Result<(bool, Option<u32>), OracleError> {
    let spectrum = oracle_spectrum(g, QueryKind::Path, Some(s), Some(t), q, budget)?;
    if spectrum.achieved.is_empty() {
        return Err(OracleError::Disconnected(s, t));
    }
    if spectrum.achieved.len() == 1 {
        Ok((true, spectrum.achieved.iter().next().copied()))
    } else {
        Ok((false, None))
    }
}

/// Verdict for disjoint-family queries; a yes carries one witness per
/// component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiVerdict {
    Yes(Vec<Witness>),
    No,
    Unknown(String),
}

/// A constant-size family of path or cycle queries whose solutions must be
/// pairwise vertex-disjoint. Disjointness is part of the solution predicate,
/// not of the query.
#[derive(Debug, Clone)]
pub struct KDisjointQuery {
    pub components: Vec<Query>,
    pub cap: usize,
}

impl KDisjointQuery {
    pub fn new(components: Vec<Query>) -> Result<Self, OracleError> {
        Self::with_cap(components, DEFAULT_COMPONENT_CAP)
    }

    pub fn with_cap(components: Vec<Query>, cap: usize) -> Result<Self, OracleError> {
        if components.is_empty() {
            return Err(OracleError::InvalidQuery("no components".into()));
        }
        if components.len() > cap {
            return Err(OracleError::InvalidQuery(format!(
                "{} components exceed the cap of {cap}",
                components.len()
            )));
        }
        let kind = components[0].kind;
        for c in &components {
            c.validate_shape()
                .map_err(|e| OracleError::InvalidQuery(e.to_string()))?;
            if c.kind != kind {
                return Err(OracleError::InvalidQuery(
                    "components must all be paths or all cycles".into(),
                ));
            }
        }
        Ok(KDisjointQuery { components, cap })
    }
}

struct DisjointSearch<'a> {
    g: &'a Graph,
    components: &'a [Query],
    budget: &'a mut Budget,
    visited: Vec<bool>,
    witnesses: Vec<Witness>,
    exhausted: bool,
}

impl DisjointSearch<'_> {
    fn solve(&mut self, i: usize) -> bool {
        if i == self.components.len() {
            return true;
        }
        let query = &self.components[i];
        match query.kind {
            QueryKind::Path => {
                let (s, t) = (query.source.unwrap(), query.target.unwrap());
                if s == t {
                    if self.visited[s as usize] || !query.constraint.accepts(0) {
                        return false;
                    }
                    self.visited[s as usize] = true;
                    self.witnesses.push(Witness::path(vec![s]));
                    if self.solve(i + 1) {
                        return true;
                    }
                    self.witnesses.pop();
                    self.visited[s as usize] = false;
                    return false;
                }
                if self.visited[s as usize] || self.visited[t as usize] {
                    return false;
                }
                self.visited[s as usize] = true;
                let mut path = vec![s];
                let found = self.extend_path(i, s, t, 0, &mut path, &query.constraint.clone());
                self.visited[s as usize] = false;
                found
            }
            QueryKind::Cycle => {
                for root in 0..self.g.vertex_count() as u32 {
                    if self.visited[root as usize] {
                        continue;
                    }
                    self.visited[root as usize] = true;
                    let mut path = vec![root];
                    let found =
                        self.extend_cycle(i, root, root, &mut path, &query.constraint.clone());
                    self.visited[root as usize] = false;
                    if found {
                        return true;
                    }
                    if self.exhausted {
                        return false;
                    }
                }
                false
            }
        }
    }

    fn extend_path(
        &mut self,
        i: usize,
        u: u32,
        t: u32,
        len: usize,
        path: &mut Vec<u32>,
        constraint: &ResidueConstraint,
    ) -> bool {
        if u == t {
            if constraint.accepts(len) {
                self.witnesses.push(Witness::path(path.clone()));
                if self.solve(i + 1) {
                    return true;
                }
                self.witnesses.pop();
            }
            return false;
        }
        for w in 0..self.g.neighbors(u).len() {
            let w = self.g.neighbors(u)[w];
            if self.visited[w as usize] {
                continue;
            }
            if !self.budget.spend() {
                self.exhausted = true;
                return false;
            }
            self.visited[w as usize] = true;
            path.push(w);
            if self.extend_path(i, w, t, len + 1, path, constraint) {
                return true;
            }
            path.pop();
            self.visited[w as usize] = false;
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn extend_cycle(
        &mut self,
        i: usize,
        root: u32,
        u: u32,
        path: &mut Vec<u32>,
        constraint: &ResidueConstraint,
    ) -> bool {
        let min_len = if self.g.is_directed() { 2 } else { 3 };
        if path.len() >= min_len && self.g.has_edge(u, root) {
            let ok_orientation = self.g.is_directed() || path[1] < u;
            if ok_orientation && constraint.accepts(path.len()) {
                self.witnesses.push(Witness::cycle(path.clone()));
                if self.solve(i + 1) {
                    return true;
                }
                self.witnesses.pop();
            }
        }
        for w_idx in 0..self.g.neighbors(u).len() {
            let w = self.g.neighbors(u)[w_idx];
            if w <= root || self.visited[w as usize] {
                continue;
            }
            if !self.budget.spend() {
                self.exhausted = true;
                return false;
            }
            self.visited[w as usize] = true;
            path.push(w);
            if self.extend_cycle(i, root, w, path, constraint) {
                return true;
            }
            path.pop();
            self.visited[w as usize] = false;
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Exhaustive search for pairwise vertex-disjoint solutions, one per
/// component, nesting the component searches over a shared visited set.
pub fn oracle_k_disjoint(
    g: &Graph,
    kq: &KDisjointQuery,
    budget: &mut Budget,
) -> Result<MultiVerdict, OracleError> {
    if kq.components.len() > kq.cap {
        return Err(OracleError::InvalidQuery(format!(
            "{} components exceed the cap of {}",
            kq.components.len(),
            kq.cap
        )));
    }
    let mut endpoint_owner = vec![usize::MAX; g.vertex_count()];
    for (i, c) in kq.components.iter().enumerate() {
        for v in [c.source, c.target].into_iter().flatten() {
            check_endpoint(g, v)?;
            let owner = &mut endpoint_owner[v as usize];
            if *owner != usize::MAX && *owner != i {
                // Two components require the same vertex: no disjoint
                // solution can exist.
                return Ok(MultiVerdict::No);
            }
            *owner = i;
        }
    }
    let mut search = DisjointSearch {
        g,
        components: &kq.components,
        budget,
        visited: vec![false; g.vertex_count()],
        witnesses: Vec::new(),
        exhausted: false,
    };
    if search.solve(0) {
        return Ok(MultiVerdict::Yes(search.witnesses));
    }
    if search.exhausted {
        return Ok(MultiVerdict::Unknown("budget".into()));
    }
    Ok(MultiVerdict::No)
}

/// Number of labeled graphs on `n` vertices (see [`small_graph`]).
pub fn small_graph_count(n: usize, directed: bool) -> Result<u64, OracleError> {
    let (max_n, pairs) = if directed {
        (5usize, n * n.saturating_sub(1))
    } else {
        (7usize, n * n.saturating_sub(1) / 2)
    };
    if n > max_n {
        return Err(OracleError::SizeGuard(format!(
            "enumeration capped at {max_n} vertices ({}), got {n}",
            if directed { "directed" } else { "undirected" }
        )));
    }
    Ok(1u64 << pairs)
}

/// The `index`-th labeled graph on `n` vertices in a fixed edge-mask order.
pub fn small_graph(n: usize, directed: bool, index: u64) -> Graph {
    let mut g = Graph::new(directed, n);
    let mut bit = 0;
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u == v || (!directed && u > v) {
                continue;
            }
            if index >> bit & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

/// Streams every labeled graph on `n` vertices exactly once, in a
/// deterministic order. Guarded to n <= 7 undirected, n <= 5 directed.
pub fn enumerate_small_graphs(
    n: usize,
    directed: bool,
) -> Result<impl Iterator<Item = Graph>, OracleError> {
    let count = small_graph_count(n, directed)?;
    Ok((0..count).map(move |index| small_graph(n, directed, index)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle};
    use crate::query::validate_witness;

    fn decide(g: &Graph, query: &Query) -> Verdict {
        oracle_decide(g, query, &mut Budget::default()).unwrap()
    }

    #[test]
    fn c4_has_no_odd_path_between_opposite_corners() {
        let g = cycle(4).unwrap();
        let q = Query::path(0, 2, ResidueConstraint::new(2, [1]).unwrap());
        assert_eq!(decide(&g, &q), Verdict::No);
    }

    #[test]
    fn k3_even_path_witness_is_lex_least() {
        let g = complete(3);
        let q = Query::path(0, 1, ResidueConstraint::new(2, [0]).unwrap());
        assert_eq!(decide(&g, &q), Verdict::Yes(Witness::path(vec![0, 2, 1])));
    }

    #[test]
    fn c5_has_no_even_cycle() {
        let g = cycle(5).unwrap();
        let q = Query::cycle(ResidueConstraint::new(2, [0]).unwrap());
        assert_eq!(decide(&g, &q), Verdict::No);
        let q = Query::cycle(ResidueConstraint::new(2, [1]).unwrap());
        assert_eq!(
            decide(&g, &q),
            Verdict::Yes(Witness::cycle(vec![0, 1, 2, 3, 4]))
        );
    }

    #[test]
    fn spectra_match_hand_enumeration() {
        let mut budget = Budget::default();
        // C_6 has a unique cycle of length 6.
        let c6 = cycle(6).unwrap();
        let s = oracle_spectrum(&c6, QueryKind::Cycle, None, None, 3, &mut budget).unwrap();
        assert_eq!(s.achieved, BTreeSet::from([0]));
        // K_4 has cycle lengths {3, 4}.
        let k4 = complete(4);
        let s = oracle_spectrum(&k4, QueryKind::Cycle, None, None, 3, &mut budget).unwrap();
        assert_eq!(s.achieved, BTreeSet::from([0, 1]));
        // Both 0-2 paths in C_4 have length 2.
        let c4 = cycle(4).unwrap();
        let s = oracle_spectrum(&c4, QueryKind::Path, Some(0), Some(2), 2, &mut budget).unwrap();
        assert_eq!(s.achieved, BTreeSet::from([0]));
        assert_eq!(s.report_line(), "spectrum path q=2 achieved={0}");
    }

    #[test]
    fn all_same_detects_uniform_and_mixed() {
        let mut budget = Budget::default();
        let c4 = cycle(4).unwrap();
        assert_eq!(oracle_all_same(&c4, 0, 2, 2, &mut budget).unwrap(), (true, Some(0)));
        let k3 = complete(3);
        assert_eq!(oracle_all_same(&k3, 0, 1, 2, &mut budget).unwrap(), (false, None));
        let edge = Graph::undirected_from(2, &[(0, 1)]);
        assert_eq!(oracle_all_same(&edge, 0, 1, 5, &mut budget).unwrap(), (true, Some(1)));
        let split = Graph::undirected(2);
        assert_eq!(
            oracle_all_same(&split, 0, 1, 2, &mut budget),
            Err(OracleError::Disconnected(0, 1))
        );
    }

    #[test]
    fn two_disjoint_triangles_found_but_not_in_k4() {
        let any = ResidueConstraint::new(1, [0]).unwrap();
        let two_cycles = KDisjointQuery::new(vec![
            Query::cycle(any.clone()),
            Query::cycle(any.clone()),
        ])
        .unwrap();

        let mut g = Graph::undirected(6);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            g.add_edge(u, v).unwrap();
        }
        let verdict = oracle_k_disjoint(&g, &two_cycles, &mut Budget::default()).unwrap();
        match verdict {
            MultiVerdict::Yes(ws) => {
                assert_eq!(ws.len(), 2);
                let q = Query::cycle(any.clone());
                assert!(ws.iter().all(|w| validate_witness(&g, &q, w)));
            }
            other => panic!("expected yes, got {other:?}"),
        }

        let k4 = complete(4);
        assert_eq!(
            oracle_k_disjoint(&k4, &two_cycles, &mut Budget::default()).unwrap(),
            MultiVerdict::No
        );
    }

    #[test]
    fn shared_required_endpoint_is_immediate_no() {
        let g = complete(4);
        let c = ResidueConstraint::new(1, [0]).unwrap();
        let kq = KDisjointQuery::new(vec![
            Query::path(0, 1, c.clone()),
            Query::path(1, 2, c.clone()),
        ])
        .unwrap();
        assert_eq!(
            oracle_k_disjoint(&g, &kq, &mut Budget::default()).unwrap(),
            MultiVerdict::No
        );
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_small_graphs(2, false).unwrap().count(), 2);
        assert_eq!(enumerate_small_graphs(3, false).unwrap().count(), 8);
        assert_eq!(enumerate_small_graphs(3, true).unwrap().count(), 64);
        assert!(enumerate_small_graphs(8, false).is_err());
        assert!(enumerate_small_graphs(6, true).is_err());
    }

    /// Desk-scale completeness: the default budget settles every query on
    /// the densest 7-vertex graph for all moduli up to 6.
    #[test]
    fn default_budget_suffices_on_k7() {
        let g = complete(7);
        for q in 1..=6u32 {
            for r in 0..q {
                let c = ResidueConstraint::new(q, [r]).unwrap();
                for query in [Query::path(0, 6, c.clone()), Query::cycle(c)] {
                    let verdict = oracle_decide(&g, &query, &mut Budget::default()).unwrap();
                    assert!(!matches!(verdict, Verdict::Unknown(_)), "{query:?}");
                }
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let g = complete(7);
        let q = Query::path(0, 6, ResidueConstraint::new(5, [4]).unwrap());
        let mut budget = Budget::new(10);
        assert_eq!(
            oracle_decide(&g, &q, &mut budget).unwrap(),
            Verdict::Unknown("budget".into())
        );
    }
}
