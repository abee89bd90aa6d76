//! Dynamic program over a nice tree decomposition deciding ModPath and
//! ModCycle for arbitrary fixed moduli.
//!
//! A state describes how a partial solution (a family of vertex-disjoint
//! path segments) meets the current bag: which bag vertices are segment
//! interiors, a pairing of the open segment ends, and the total edge count
//! mod q. Path endpoints that have been forgotten are sealed as virtual
//! tokens; in cycle mode a flag records that the single cycle has closed.
//! Each graph edge is consumed at exactly one Introduce node (the first one,
//! in node order, whose bag contains both endpoints), so residues add with
//! no double counting, joins included.

use super::nice::{NiceDecomposition, NiceKind};
use super::TwError;
use crate::graph::Graph;
use crate::query::{Query, QueryKind, Verdict, Witness};
use std::collections::BTreeMap;

pub const DEFAULT_STATE_CAP: usize = 5_000_000;

/// One open segment end: a bag vertex, or the sealed source/target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Tok {
    V(u32),
    SealedS,
    SealedT,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct DpState {
    /// Bag vertices of solution degree 2, sorted.
    interior: Vec<u32>,
    /// Open segments as sorted (min, max) token pairs, lexicographic.
    pairs: Vec<(Tok, Tok)>,
    residue: u32,
    closed: bool,
}

impl DpState {
    fn empty() -> Self {
        DpState {
            interior: Vec::new(),
            pairs: Vec::new(),
            residue: 0,
            closed: false,
        }
    }

    fn canonicalize(&mut self) {
        self.interior.sort_unstable();
        for p in &mut self.pairs {
            if p.0 > p.1 {
                std::mem::swap(&mut p.0, &mut p.1);
            }
        }
        self.pairs.sort_unstable();
    }

    /// Solution degree of a bag vertex: 2 interior, 1 open end, 0 unused.
    fn degree(&self, v: u32) -> u8 {
        if self.interior.binary_search(&v).is_ok() {
            return 2;
        }
        let tok = Tok::V(v);
        if self.pairs.iter().any(|&(a, b)| a == tok || b == tok) {
            1
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Path { s: u32, t: u32 },
    Cycle,
}

/// How a state arose, for witness reconstruction.
#[derive(Debug, Clone)]
enum Prov {
    Leaf,
    /// Introduce or Forget: parent of `state` in the child table, with the
    /// edges consumed at this node.
    Child {
        state: DpState,
        edges: Vec<(u32, u32)>,
    },
    Join {
        left: DpState,
        right: DpState,
    },
}

type Table = BTreeMap<DpState, Prov>;

struct Dp<'a> {
    nd: &'a NiceDecomposition,
    mode: Mode,
    q: u32,
    state_cap: usize,
    total_states: usize,
    /// Edges consumed at each node.
    designated: Vec<Vec<(u32, u32)>>,
    tables: Vec<Table>,
}

/// Applies one edge to a state, or `None` when it would violate the
/// segment structure.
fn apply_edge(state: &DpState, u: u32, v: u32, mode: Mode, q: u32) -> Option<DpState> {
    if state.closed {
        return None;
    }
    let (du, dv) = (state.degree(u), state.degree(v));
    if du >= 2 || dv >= 2 {
        return None;
    }
    if let Mode::Path { s, t } = mode {
        // The endpoints of the final path keep degree 1.
        for x in [u, v] {
            if (x == s || x == t) && state.degree(x) >= 1 {
                return None;
            }
        }
    }
    let mut next = state.clone();
    next.residue = (next.residue + 1) % q;
    let (tu, tv) = (Tok::V(u), Tok::V(v));
    let find_pair = |pairs: &[(Tok, Tok)], tok: Tok| {
        pairs.iter().position(|&(a, b)| a == tok || b == tok)
    };
    match (du, dv) {
        (0, 0) => {
            next.pairs.push((tu, tv));
        }
        (1, 0) | (0, 1) => {
            let (grown, fresh) = if du == 1 { (tu, tv) } else { (tv, tu) };
            let i = find_pair(&next.pairs, grown).unwrap();
            let (a, b) = next.pairs[i];
            let other = if a == grown { b } else { a };
            next.pairs[i] = (other, fresh);
            // The grown end becomes interior.
            if let Tok::V(x) = grown {
                next.interior.push(x);
            }
        }
        (1, 1) => {
            let iu = find_pair(&next.pairs, tu).unwrap();
            let iv = find_pair(&next.pairs, tv).unwrap();
            if iu == iv {
                // Closing the segment into a cycle.
                if mode != Mode::Cycle || next.pairs.len() != 1 {
                    return None;
                }
                next.pairs.clear();
                next.closed = true;
            } else {
                let (a1, b1) = next.pairs[iu];
                let (a2, b2) = next.pairs[iv];
                let o1 = if a1 == tu { b1 } else { a1 };
                let o2 = if a2 == tv { b2 } else { a2 };
                let (lo, hi) = (iu.min(iv), iu.max(iv));
                next.pairs.remove(hi);
                next.pairs.remove(lo);
                next.pairs.push((o1, o2));
            }
            next.interior.push(u);
            next.interior.push(v);
        }
        _ => unreachable!(),
    }
    next.canonicalize();
    Some(next)
}

impl<'a> Dp<'a> {
    fn insert(table: &mut Table, mut state: DpState, prov: Prov) -> bool {
        state.canonicalize();
        match table.entry(state) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(prov);
                true
            }
            std::collections::btree_map::Entry::Occupied(_) => false,
        }
    }

    fn process(&mut self, node: usize) -> Result<(), TwError> {
        let table = match &self.nd.nodes[node].kind {
            NiceKind::Leaf => {
                let mut t = Table::new();
                Self::insert(&mut t, DpState::empty(), Prov::Leaf);
                t
            }
            NiceKind::Introduce(_) => {
                let child = self.nd.nodes[node].children[0];
                // Pass-through, then optionally consume each designated
                // edge in order.
                let mut acc: BTreeMap<DpState, (DpState, Vec<(u32, u32)>)> = self.tables[child]
                    .keys()
                    .map(|s| (s.clone(), (s.clone(), Vec::new())))
                    .collect();
                for &(u, v) in &self.designated[node] {
                    let mut next = acc.clone();
                    for (state, (origin, edges)) in &acc {
                        if let Some(applied) = apply_edge(state, u, v, self.mode, self.q) {
                            let mut used = edges.clone();
                            used.push((u, v));
                            next.entry(applied).or_insert((origin.clone(), used));
                        }
                    }
                    acc = next;
                }
                acc.into_iter()
                    .map(|(state, (origin, edges))| {
                        (state, Prov::Child { state: origin, edges })
                    })
                    .collect()
            }
            NiceKind::Forget(v) => {
                let v = *v;
                let child = self.nd.nodes[node].children[0];
                let mut t = Table::new();
                for state in self.tables[child].keys() {
                    let next = self.forget(state, v);
                    if let Some(next) = next {
                        Self::insert(
                            &mut t,
                            next,
                            Prov::Child {
                                state: state.clone(),
                                edges: Vec::new(),
                            },
                        );
                    }
                }
                t
            }
            NiceKind::Join => {
                let (lc, rc) = (
                    self.nd.nodes[node].children[0],
                    self.nd.nodes[node].children[1],
                );
                let mut t = Table::new();
                let bag = &self.nd.nodes[node].bag;
                let left_states: Vec<DpState> = self.tables[lc].keys().cloned().collect();
                let right_states: Vec<DpState> = self.tables[rc].keys().cloned().collect();
                for sl in &left_states {
                    for sr in &right_states {
                        if let Some(merged) = self.join(sl, sr, bag) {
                            Self::insert(
                                &mut t,
                                merged,
                                Prov::Join {
                                    left: sl.clone(),
                                    right: sr.clone(),
                                },
                            );
                        }
                    }
                }
                t
            }
        };
        self.total_states += table.len();
        if self.total_states > self.state_cap {
            return Err(TwError::StateBudget(self.state_cap));
        }
        self.tables[node] = table;
        Ok(())
    }

    fn forget(&self, state: &DpState, v: u32) -> Option<DpState> {
        let tok = Tok::V(v);
        match state.degree(v) {
            2 => {
                let mut next = state.clone();
                next.interior.retain(|&x| x != v);
                Some(next)
            }
            1 => {
                // An open end may only be forgotten when it seals at the
                // path's source or target.
                let Mode::Path { s, t } = self.mode else {
                    return None;
                };
                let seal = if v == s {
                    Tok::SealedS
                } else if v == t {
                    Tok::SealedT
                } else {
                    return None;
                };
                let mut next = state.clone();
                let i = next
                    .pairs
                    .iter()
                    .position(|&(a, b)| a == tok || b == tok)
                    .unwrap();
                debug_assert!(!next
                    .pairs
                    .iter()
                    .any(|&(a, b)| a == seal || b == seal));
                let (a, b) = next.pairs[i];
                next.pairs[i] = if a == tok { (seal, b) } else { (a, seal) };
                next.canonicalize();
                Some(next)
            }
            _ => {
                // Unused. The source and target must lie on the final path,
                // and this was their only forget point.
                if let Mode::Path { s, t } = self.mode {
                    if v == s || v == t {
                        return None;
                    }
                }
                Some(state.clone())
            }
        }
    }

    fn join(&self, sl: &DpState, sr: &DpState, bag: &[u32]) -> Option<DpState> {
        if sl.closed && sr.closed {
            return None;
        }
        if sl.closed || sr.closed {
            // A closed cycle is the entire solution; the other side must be
            // structurally empty.
            let (closed, open) = if sl.closed { (sl, sr) } else { (sr, sl) };
            if !open.pairs.is_empty() || !open.interior.is_empty() {
                return None;
            }
            let mut merged = closed.clone();
            merged.residue = (sl.residue + sr.residue) % self.q;
            return Some(merged);
        }
        // Degree compatibility per bag vertex.
        for &v in bag {
            let d = sl.degree(v) + sr.degree(v);
            if d > 2 {
                return None;
            }
            if let Mode::Path { s, t } = self.mode {
                if (v == s || v == t) && d > 1 {
                    return None;
                }
            }
        }
        // Overlay the two pairings and resolve the merged segments.
        let mut edges: Vec<(Tok, Tok)> = Vec::with_capacity(sl.pairs.len() + sr.pairs.len());
        edges.extend(sl.pairs.iter().copied());
        edges.extend(sr.pairs.iter().copied());
        let mut tokens: Vec<Tok> = Vec::new();
        for &(a, b) in &edges {
            tokens.push(a);
            tokens.push(b);
        }
        tokens.sort_unstable();
        tokens.dedup();
        let idx = |t: Tok| tokens.binary_search(&t).unwrap();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); tokens.len()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            incident[idx(a)].push(i);
            incident[idx(b)].push(i);
        }
        // Sealed ends arise at unique forget nodes, so they cannot appear
        // on both sides.
        for tok in [Tok::SealedS, Tok::SealedT] {
            if let Ok(i) = tokens.binary_search(&tok) {
                if incident[i].len() > 1 {
                    debug_assert!(false, "sealed token on both join sides");
                    return None;
                }
            }
        }
        let mut edge_seen = vec![false; edges.len()];
        let mut token_seen = vec![false; tokens.len()];
        let mut merged_pairs: Vec<(Tok, Tok)> = Vec::new();
        let mut closed_cycles = 0usize;
        // Walk maximal overlay paths starting from degree-1 tokens.
        for start in 0..tokens.len() {
            if token_seen[start] || incident[start].len() != 1 {
                continue;
            }
            let mut cur = start;
            token_seen[cur] = true;
            let mut last_edge = usize::MAX;
            loop {
                let next_edge = incident[cur]
                    .iter()
                    .copied()
                    .find(|&e| e != last_edge && !edge_seen[e]);
                match next_edge {
                    None => break,
                    Some(e) => {
                        edge_seen[e] = true;
                        let (a, b) = edges[e];
                        let other = if idx(a) == cur { idx(b) } else { idx(a) };
                        cur = other;
                        token_seen[cur] = true;
                        last_edge = e;
                    }
                }
            }
            merged_pairs.push((tokens[start], tokens[cur]));
        }
        // Remaining unseen edges form overlay cycles.
        for e in 0..edges.len() {
            if !edge_seen[e] {
                // Trace the cycle to mark it consumed.
                closed_cycles += 1;
                let mut cur = idx(edges[e].0);
                let mut last_edge = usize::MAX;
                loop {
                    let next_edge = incident[cur]
                        .iter()
                        .copied()
                        .find(|&x| x != last_edge && !edge_seen[x]);
                    match next_edge {
                        None => break,
                        Some(x) => {
                            edge_seen[x] = true;
                            let (a, b) = edges[x];
                            cur = if idx(a) == cur { idx(b) } else { idx(a) };
                            last_edge = x;
                        }
                    }
                }
            }
        }
        let closed = match (self.mode, closed_cycles) {
            (_, 0) => false,
            (Mode::Cycle, 1) if merged_pairs.is_empty() => true,
            _ => return None,
        };
        // Interior set: bag vertices with merged degree 2.
        let mut interior = Vec::new();
        for &v in bag {
            if sl.degree(v) + sr.degree(v) == 2 {
                interior.push(v);
            }
        }
        let mut merged = DpState {
            interior,
            pairs: merged_pairs,
            residue: (sl.residue + sr.residue) % self.q,
            closed,
        };
        merged.canonicalize();
        Some(merged)
    }

    /// Gathers the solution edges behind an accepted state.
    fn collect_edges(&self, node: usize, state: &DpState, out: &mut Vec<(u32, u32)>) {
        match &self.tables[node][state] {
            Prov::Leaf => {}
            Prov::Child { state: child_state, edges } => {
                out.extend(edges.iter().copied());
                self.collect_edges(self.nd.nodes[node].children[0], child_state, out);
            }
            Prov::Join { left, right } => {
                self.collect_edges(self.nd.nodes[node].children[0], left, out);
                self.collect_edges(self.nd.nodes[node].children[1], right, out);
            }
        }
    }
}

/// Orders the solution edge set into a witness vertex sequence.
fn assemble_witness(mode: Mode, edges: &[(u32, u32)]) -> Witness {
    // Each edge is consumed at exactly one designated node, so the
    // collected solution must not repeat any.
    debug_assert!(
        {
            let mut sorted: Vec<_> = edges.to_vec();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
        },
        "an edge was counted twice during the DP"
    );
    let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    match mode {
        Mode::Path { s, t } => {
            let mut vertices = vec![s];
            let mut prev = u32::MAX;
            let mut cur = s;
            while cur != t {
                let next = adj[&cur]
                    .iter()
                    .copied()
                    .find(|&x| x != prev)
                    .expect("path continues to the target");
                vertices.push(next);
                prev = cur;
                cur = next;
            }
            Witness::path(vertices)
        }
        Mode::Cycle => {
            let start = *adj.keys().next().expect("cycle is nonempty");
            let mut vertices = vec![start];
            let mut prev = u32::MAX;
            let mut cur = start;
            loop {
                let next = adj[&cur]
                    .iter()
                    .copied()
                    .find(|&x| x != prev)
                    .expect("cycle continues");
                if next == start {
                    break;
                }
                vertices.push(next);
                prev = cur;
                cur = next;
            }
            Witness::cycle(vertices)
        }
    }
}

struct DpRun<'a> {
    dp: Dp<'a>,
    /// Accepting root states keyed by residue (first in state order wins).
    accepts: BTreeMap<u32, DpState>,
}

fn run_dp<'a>(
    g: &'a Graph,
    nd: &'a NiceDecomposition,
    mode: Mode,
    q: u32,
    state_cap: usize,
) -> Result<DpRun<'a>, TwError> {
    if g.is_directed() {
        return Err(TwError::DirectedInput);
    }
    // The decomposition must actually cover this graph.
    let mut designated: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nd.nodes.len()];
    'edges: for (u, v) in g.edges() {
        for (i, node) in nd.nodes.iter().enumerate() {
            if let NiceKind::Introduce(w) = node.kind {
                if (w == u || w == v)
                    && node.bag.binary_search(&u).is_ok()
                    && node.bag.binary_search(&v).is_ok()
                {
                    designated[i].push((u, v));
                    continue 'edges;
                }
            }
        }
        return Err(TwError::Mismatch(format!(
            "edge ({u}, {v}) has no introduce node covering it"
        )));
    }
    for v in 0..g.vertex_count() as u32 {
        if !nd
            .nodes
            .iter()
            .any(|node| node.bag.binary_search(&v).is_ok())
        {
            return Err(TwError::Mismatch(format!("vertex {v} missing from all bags")));
        }
    }
    let mut dp = Dp {
        nd,
        mode,
        q,
        state_cap,
        total_states: 0,
        designated,
        tables: vec![Table::new(); nd.nodes.len()],
    };
    for node in nd.postorder() {
        dp.process(node)?;
    }
    let mut accepts = BTreeMap::new();
    for state in dp.tables[nd.root].keys() {
        let ok = match mode {
            Mode::Path { .. } => {
                state.pairs == vec![(Tok::SealedS, Tok::SealedT)] && !state.closed
            }
            Mode::Cycle => state.closed && state.pairs.is_empty(),
        };
        if ok {
            accepts.entry(state.residue).or_insert_with(|| state.clone());
        }
    }
    Ok(DpRun { dp, accepts })
}

/// Exact ModPath/ModCycle verdict on an undirected graph with the given
/// nice decomposition. Yes-verdicts carry a witness reconstructed from the
/// DP tables; a state-budget overflow comes back as `Unknown`.
pub fn tw_decide(
    g: &Graph,
    query: &Query,
    nd: &NiceDecomposition,
) -> Result<Verdict, TwError> {
    tw_decide_with_cap(g, query, nd, DEFAULT_STATE_CAP)
}

pub fn tw_decide_with_cap(
    g: &Graph,
    query: &Query,
    nd: &NiceDecomposition,
    state_cap: usize,
) -> Result<Verdict, TwError> {
    query
        .validate_shape()
        .map_err(|e| TwError::Mismatch(e.to_string()))?;
    let q = query.constraint.modulus();
    let mode = match query.kind {
        QueryKind::Path => {
            let (s, t) = (query.source.unwrap(), query.target.unwrap());
            for v in [s, t] {
                if v as usize >= g.vertex_count() {
                    return Err(TwError::Mismatch(format!("endpoint {v} out of range")));
                }
            }
            if s == t {
                return Ok(if query.constraint.accepts(0) {
                    Verdict::Yes(Witness::path(vec![s]))
                } else {
                    Verdict::No
                });
            }
            Mode::Path { s, t }
        }
        QueryKind::Cycle => Mode::Cycle,
    };
    let run = match run_dp(g, nd, mode, q, state_cap) {
        Ok(run) => run,
        Err(TwError::StateBudget(cap)) => {
            return Ok(Verdict::Unknown(format!("state budget of {cap} exhausted")))
        }
        Err(e) => return Err(e),
    };
    for (&residue, state) in &run.accepts {
        if query.constraint.allowed().contains(&residue) {
            let mut edges = Vec::new();
            run.dp.collect_edges(nd.root, state, &mut edges);
            let witness = assemble_witness(mode, &edges);
            debug_assert!(crate::query::validate_witness(g, query, &witness));
            return Ok(Verdict::Yes(witness));
        }
    }
    Ok(Verdict::No)
}

/// All residues achieved by simple paths (between the endpoints) or simple
/// cycles, computed from one DP run.
pub fn tw_residue_spectrum(
    g: &Graph,
    kind: QueryKind,
    s: Option<u32>,
    t: Option<u32>,
    q: u32,
    nd: &NiceDecomposition,
    state_cap: usize,
) -> Result<std::collections::BTreeSet<u32>, TwError> {
    let mode = match kind {
        QueryKind::Path => {
            let (s, t) = (
                s.ok_or_else(|| TwError::Mismatch("path spectrum needs endpoints".into()))?,
                t.ok_or_else(|| TwError::Mismatch("path spectrum needs endpoints".into()))?,
            );
            if s == t {
                return Ok(std::collections::BTreeSet::from([0]));
            }
            Mode::Path { s, t }
        }
        QueryKind::Cycle => Mode::Cycle,
    };
    let run = run_dp(g, nd, mode, q, state_cap)?;
    Ok(run.accepts.keys().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::cycle;
    use crate::query::{validate_witness, ResidueConstraint};
    use crate::treewidth::decomposition::{compute_decomposition, DecompositionOutcome};
    use crate::treewidth::nice::make_nice;

    fn nice_of(g: &Graph) -> NiceDecomposition {
        match compute_decomposition(g, 4, 1_000_000).unwrap() {
            DecompositionOutcome::Found(td) => make_nice(&td, g).unwrap(),
            other => panic!("no decomposition: {other:?}"),
        }
    }

    #[test]
    fn c6_path_residues_mod_three() {
        let g = cycle(6).unwrap();
        let nd = nice_of(&g);
        // Paths 0..2 have lengths 2 and 4: residues 2 and 1 mod 3.
        let yes = Query::path(0, 2, ResidueConstraint::new(3, [2]).unwrap());
        let verdict = tw_decide(&g, &yes, &nd).unwrap();
        assert_eq!(
            verdict,
            Verdict::Yes(Witness::path(vec![0, 1, 2])),
        );
        let no = Query::path(0, 2, ResidueConstraint::new(3, [0]).unwrap());
        assert_eq!(tw_decide(&g, &no, &nd).unwrap(), Verdict::No);
    }

    #[test]
    fn c6_unique_cycle_mod_three() {
        let g = cycle(6).unwrap();
        let nd = nice_of(&g);
        let yes = Query::cycle(ResidueConstraint::new(3, [0]).unwrap());
        let verdict = tw_decide(&g, &yes, &nd).unwrap();
        let Verdict::Yes(w) = &verdict else { panic!("expected yes") };
        assert_eq!(w.vertices.len(), 6);
        assert!(validate_witness(&g, &yes, w));
        for p in [1, 2] {
            let no = Query::cycle(ResidueConstraint::new(3, [p]).unwrap());
            assert_eq!(tw_decide(&g, &no, &nd).unwrap(), Verdict::No);
        }
    }

    #[test]
    fn connectivity_special_case_q1() {
        let g = Graph::undirected_from(5, &[(0, 1), (1, 2), (3, 4)]);
        let nd = nice_of(&g);
        let reach = Query::path(0, 2, ResidueConstraint::new(1, [0]).unwrap());
        assert!(matches!(tw_decide(&g, &reach, &nd).unwrap(), Verdict::Yes(_)));
        let unreach = Query::path(0, 4, ResidueConstraint::new(1, [0]).unwrap());
        assert_eq!(tw_decide(&g, &unreach, &nd).unwrap(), Verdict::No);
    }

    #[test]
    fn spectrum_collects_all_residues() {
        let g = crate::generate::complete(4);
        let nd = nice_of(&g);
        let spec =
            tw_residue_spectrum(&g, QueryKind::Cycle, None, None, 3, &nd, DEFAULT_STATE_CAP)
                .unwrap();
        assert_eq!(spec, std::collections::BTreeSet::from([0, 1]));
    }

    #[test]
    fn join_heavy_graph_against_bowtie() {
        let g = Graph::undirected_from(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]);
        let nd = nice_of(&g);
        for p in 0..2 {
            let q = Query::path(0, 4, ResidueConstraint::new(2, [p]).unwrap());
            let verdict = tw_decide(&g, &q, &nd).unwrap();
            let Verdict::Yes(w) = &verdict else { panic!("expected yes at p={p}") };
            assert!(validate_witness(&g, &q, w));
        }
    }

    #[test]
    fn state_budget_exhaustion_is_unknown() {
        let g = crate::generate::complete(5);
        let nd = nice_of(&g);
        let q = Query::cycle(ResidueConstraint::new(5, [0]).unwrap());
        let verdict = tw_decide_with_cap(&g, &q, &nd, 3).unwrap();
        assert!(matches!(verdict, Verdict::Unknown(_)));
    }

    /// Soundness of the state tables: every state the DP reaches at a node
    /// must correspond to an actual family of disjoint segments in the
    /// processed subgraph (vertices and designated edges of the subtree).
    /// Checked by enumerating all edge subsets on tiny graphs.
    #[test]
    fn dp_states_correspond_to_partial_solutions() {
        let graphs = [
            cycle(4).unwrap(),
            cycle(5).unwrap(),
            {
                let mut g = cycle(5).unwrap();
                g.add_edge(0, 2).unwrap();
                g
            },
            crate::generate::path_graph(5),
        ];
        for g in &graphs {
            let nd = nice_of(g);
            for (mode, q) in [
                (Mode::Path { s: 0, t: 2 }, 3u32),
                (Mode::Cycle, 3u32),
            ] {
                let run = run_dp(g, &nd, mode, q, DEFAULT_STATE_CAP).unwrap();
                check_soundness(g, &nd, &run.dp, mode, q);
            }
        }
    }

    fn check_soundness(g: &Graph, nd: &NiceDecomposition, dp: &Dp, mode: Mode, q: u32) {
        // Subtree vertex sets and designated edge sets per node.
        let n_nodes = nd.nodes.len();
        let mut sub_vertices: Vec<std::collections::BTreeSet<u32>> = vec![Default::default(); n_nodes];
        let mut sub_edges: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n_nodes];
        for x in nd.postorder() {
            let mut vs: std::collections::BTreeSet<u32> =
                nd.nodes[x].bag.iter().copied().collect();
            let mut es = dp.designated[x].clone();
            for &c in &nd.nodes[x].children {
                vs.extend(sub_vertices[c].iter().copied());
                es.extend(sub_edges[c].iter().copied());
            }
            sub_vertices[x] = vs;
            sub_edges[x] = es;
        }
        for x in 0..n_nodes {
            let bag = &nd.nodes[x].bag;
            let edges = &sub_edges[x];
            let mut reachable: std::collections::BTreeSet<DpState> = Default::default();
            for subset in 0u32..(1 << edges.len()) {
                let chosen: Vec<(u32, u32)> = (0..edges.len())
                    .filter(|&i| subset >> i & 1 == 1)
                    .map(|i| edges[i])
                    .collect();
                if let Some(state) = family_state(g, bag, &sub_vertices[x], &chosen, mode, q) {
                    reachable.insert(state);
                }
            }
            for state in dp.tables[x].keys() {
                assert!(
                    reachable.contains(state),
                    "unsound state {state:?} at node {x} ({:?} bag {bag:?})",
                    nd.nodes[x].kind
                );
            }
        }
    }

    /// Maps an edge subset to the DP state it represents, or `None` when it
    /// is not a valid partial solution for the mode.
    fn family_state(
        _g: &Graph,
        bag: &[u32],
        vertices: &std::collections::BTreeSet<u32>,
        chosen: &[(u32, u32)],
        mode: Mode,
        q: u32,
    ) -> Option<DpState> {
        let mut deg: std::collections::BTreeMap<u32, usize> = Default::default();
        let mut adj: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        for &(u, v) in chosen {
            *deg.entry(u).or_default() += 1;
            *deg.entry(v).or_default() += 1;
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        if deg.values().any(|&d| d > 2) {
            return None;
        }
        let in_bag = |v: u32| bag.binary_search(&v).is_ok();
        if let Mode::Path { s, t } = mode {
            if deg.get(&s).copied().unwrap_or(0) > 1 || deg.get(&t).copied().unwrap_or(0) > 1 {
                return None;
            }
            // A forgotten source or target must already lie on the path.
            for x in [s, t] {
                if vertices.contains(&x) && !in_bag(x) && deg.get(&x).copied().unwrap_or(0) == 0 {
                    return None;
                }
            }
        }
        // Decompose into components; each must be a path (or one cycle in
        // cycle mode).
        let mut seen: std::collections::BTreeSet<u32> = Default::default();
        let mut pairs: Vec<(Tok, Tok)> = Vec::new();
        let mut closed = false;
        for (&start, _) in &deg {
            if seen.contains(&start) {
                continue;
            }
            let mut component = vec![start];
            seen.insert(start);
            let mut frontier = vec![start];
            while let Some(v) = frontier.pop() {
                for &w in adj.get(&v).into_iter().flatten() {
                    if seen.insert(w) {
                        component.push(w);
                        frontier.push(w);
                    }
                }
            }
            let edge_count = chosen
                .iter()
                .filter(|&&(u, v)| component.contains(&u) && component.contains(&v))
                .count();
            if edge_count == component.len() {
                // A cycle component.
                if mode != Mode::Cycle || closed {
                    return None;
                }
                closed = true;
                continue;
            }
            // A path component: classify its two endpoints.
            let ends: Vec<u32> = component
                .iter()
                .copied()
                .filter(|&v| deg[&v] == 1)
                .collect();
            assert_eq!(ends.len(), 2);
            let mut toks = Vec::new();
            for &e in &ends {
                if in_bag(e) {
                    toks.push(Tok::V(e));
                } else {
                    match mode {
                        Mode::Path { s, .. } if e == s => toks.push(Tok::SealedS),
                        Mode::Path { t, .. } if e == t => toks.push(Tok::SealedT),
                        _ => return None,
                    }
                }
            }
            pairs.push((toks[0], toks[1]));
        }
        if closed && !pairs.is_empty() {
            // The DP only closes the cycle once it is the entire solution.
            return None;
        }
        let interior = bag
            .iter()
            .copied()
            .filter(|v| deg.get(v).copied().unwrap_or(0) == 2)
            .collect();
        let mut state = DpState {
            interior,
            pairs,
            residue: (chosen.len() as u32) % q,
            closed,
        };
        state.canonicalize();
        Some(state)
    }

    #[test]
    fn mismatched_decomposition_is_an_error() {
        let g = cycle(4).unwrap();
        let nd = nice_of(&g);
        let mut bigger = cycle(4).unwrap();
        bigger.add_edge(0, 2).unwrap();
        let q = Query::cycle(ResidueConstraint::new(2, [0]).unwrap());
        assert!(matches!(
            tw_decide(&bigger, &q, &nd),
            Err(TwError::Mismatch(_))
        ));
    }
}
