//! Tree decompositions: validation, heuristic construction (min-fill with a
//! min-degree fallback), an exact decision search for small widths, and the
//! text exchange format.

use super::TwError;
use crate::graph::Graph;
use std::collections::BTreeSet;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Sorted vertex lists, one per tree node.
    pub bags: Vec<Vec<u32>>,
    /// Undirected tree edges between node indices.
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Checks every tree-decomposition axiom against the graph and names the
    /// violated one.
    pub fn validate(&self, g: &Graph) -> Result<(), TwError> {
        let nodes = self.bags.len();
        if nodes == 0 {
            return Err(TwError::InvalidDecomposition("no tree nodes".into()));
        }
        for &(a, b) in &self.edges {
            if a >= nodes || b >= nodes || a == b {
                return Err(TwError::InvalidDecomposition(format!(
                    "tree edge ({a}, {b}) out of range"
                )));
            }
        }
        // The tree must be connected and acyclic.
        if self.edges.len() + 1 != nodes {
            return Err(TwError::InvalidDecomposition(format!(
                "{} edges cannot form a tree over {nodes} nodes",
                self.edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; nodes];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(TwError::InvalidDecomposition("tree is not connected".into()));
        }
        for bag in &self.bags {
            for &v in bag {
                if v as usize >= g.vertex_count() {
                    return Err(TwError::InvalidDecomposition(format!(
                        "bag vertex {v} out of range"
                    )));
                }
            }
        }
        // Vertex coverage.
        let mut covered = vec![false; g.vertex_count()];
        for bag in &self.bags {
            for &v in bag {
                covered[v as usize] = true;
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(TwError::InvalidDecomposition(format!(
                "vertex {v} appears in no bag"
            )));
        }
        // Edge coverage.
        for (u, v) in g.edges() {
            let ok = self
                .bags
                .iter()
                .any(|bag| bag.binary_search(&u).is_ok() && bag.binary_search(&v).is_ok());
            if !ok {
                return Err(TwError::InvalidDecomposition(format!(
                    "edge ({u}, {v}) is covered by no bag"
                )));
            }
        }
        // Per-vertex occurrences form a connected subtree.
        for v in 0..g.vertex_count() as u32 {
            let holder: Vec<usize> = (0..nodes)
                .filter(|&i| self.bags[i].binary_search(&v).is_ok())
                .collect();
            let mut seen: BTreeSet<usize> = BTreeSet::from([holder[0]]);
            let mut stack = vec![holder[0]];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if self.bags[y].binary_search(&v).is_ok() && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            if seen.len() != holder.len() {
                return Err(TwError::InvalidDecomposition(format!(
                    "occurrences of vertex {v} are not connected in the tree"
                )));
            }
        }
        Ok(())
    }
}

/// Why no decomposition was returned. `proven_exceeds_cap` is only set when
/// the exact search exhausted all elimination orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionFailure {
    pub proven_exceeds_cap: bool,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionOutcome {
    Found(TreeDecomposition),
    NotFound(DecompositionFailure),
}

/// Builds the decomposition induced by an elimination order: each vertex's
/// bag is itself plus its not-yet-eliminated neighbors in the fill graph.
fn decomposition_from_order(g: &Graph, order: &[u32]) -> TreeDecomposition {
    let n = g.vertex_count();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![Vec::new()],
            edges: Vec::new(),
        };
    }
    let mut adj: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for (u, v) in g.edges() {
        adj[u as usize].insert(v);
        adj[v as usize].insert(u);
    }
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v as usize] = i;
    }
    let mut bags: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut edges = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<u32> = adj[v as usize]
            .iter()
            .copied()
            .filter(|&w| position[w as usize] > i)
            .collect();
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        // Fill: later neighbors become a clique.
        for (xi, &x) in later.iter().enumerate() {
            for &y in &later[xi + 1..] {
                adj[x as usize].insert(y);
                adj[y as usize].insert(x);
            }
        }
    }
    // Attach each bag to the bag of the earliest-eliminated later neighbor,
    // or to the next bag when the vertex was isolated by then.
    for (i, &v) in order.iter().enumerate() {
        if i + 1 == n {
            break;
        }
        let parent = bags[i]
            .iter()
            .filter(|&&w| w != v)
            .map(|&w| position[w as usize])
            .min()
            .unwrap_or(i + 1);
        edges.push((i, parent));
    }
    TreeDecomposition { bags, edges }
}

fn greedy_order(g: &Graph, min_fill: bool) -> Vec<u32> {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for (u, v) in g.edges() {
        adj[u as usize].insert(v);
        adj[v as usize].insert(u);
    }
    let mut remaining: BTreeSet<u32> = (0..n as u32).collect();
    let mut order = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let mut best: Option<(usize, usize, u32)> = None; // (score, degree, vertex)
        for &v in &remaining {
            let neighbors: Vec<u32> = adj[v as usize].iter().copied().collect();
            let degree = neighbors.len();
            let score = if min_fill {
                let mut fill = 0usize;
                for (i, &x) in neighbors.iter().enumerate() {
                    for &y in &neighbors[i + 1..] {
                        if !adj[x as usize].contains(&y) {
                            fill += 1;
                        }
                    }
                }
                fill
            } else {
                degree
            };
            let candidate = (score, degree, v);
            if best.map_or(true, |b| candidate < b) {
                best = Some(candidate);
            }
        }
        let (_, _, v) = best.unwrap();
        let neighbors: Vec<u32> = adj[v as usize].iter().copied().collect();
        for (i, &x) in neighbors.iter().enumerate() {
            for &y in &neighbors[i + 1..] {
                adj[x as usize].insert(y);
                adj[y as usize].insert(x);
            }
        }
        for &x in &neighbors {
            adj[x as usize].remove(&v);
        }
        adj[v as usize].clear();
        remaining.remove(&v);
        order.push(v);
    }
    order
}

enum ExactOutcome {
    Order(Vec<u32>),
    ProvenExceeds,
    OutOfBudget,
}

/// Decision search over elimination orders: does the graph admit width
/// `cap`? Memoizes failed eliminated-sets; sound prunings only, so full
/// exploration constitutes a proof.
fn exact_order_within(g: &Graph, cap: usize, node_budget: u64) -> ExactOutcome {
    let n = g.vertex_count();
    debug_assert!(n <= 64);
    let mut adj: Vec<u64> = vec![0; n];
    for (u, v) in g.edges() {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    let mut failed: std::collections::HashSet<u64> = std::collections::HashSet::new();
    let mut spent = 0u64;

    fn eliminate(adj: &[u64], v: usize) -> Vec<u64> {
        let mut next = adj.to_vec();
        let nb = adj[v];
        let mut rest = nb;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next[x] |= nb & !(1 << x);
            next[x] &= !(1 << v);
        }
        next[v] = 0;
        next
    }

    fn search(
        adj: &[u64],
        eliminated: u64,
        n: usize,
        cap: usize,
        failed: &mut std::collections::HashSet<u64>,
        spent: &mut u64,
        budget: u64,
        order: &mut Vec<u32>,
    ) -> Option<bool> {
        let alive = n - eliminated.count_ones() as usize;
        if alive <= cap + 1 {
            for v in 0..n {
                if eliminated >> v & 1 == 0 {
                    order.push(v as u32);
                }
            }
            return Some(true);
        }
        if failed.contains(&eliminated) {
            return Some(false);
        }
        *spent += 1;
        if *spent > budget {
            return None;
        }
        // A simplicial vertex of small degree can always go first.
        for v in 0..n {
            if eliminated >> v & 1 == 1 {
                continue;
            }
            let nb = adj[v];
            let deg = nb.count_ones() as usize;
            if deg > cap {
                continue;
            }
            let mut clique = true;
            let mut rest = nb;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if nb & !(1 << x) & !adj[x] != 0 {
                    clique = false;
                    break;
                }
            }
            if clique {
                let next = eliminate(adj, v);
                order.push(v as u32);
                match search(&next, eliminated | 1 << v, n, cap, failed, spent, budget, order) {
                    Some(true) => return Some(true),
                    Some(false) => {
                        order.pop();
                        failed.insert(eliminated);
                        return Some(false);
                    }
                    None => return None,
                }
            }
        }
        for v in 0..n {
            if eliminated >> v & 1 == 1 || adj[v].count_ones() as usize > cap {
                continue;
            }
            let next = eliminate(adj, v);
            order.push(v as u32);
            match search(&next, eliminated | 1 << v, n, cap, failed, spent, budget, order) {
                Some(true) => return Some(true),
                Some(false) => {
                    order.pop();
                }
                None => return None,
            }
        }
        failed.insert(eliminated);
        Some(false)
    }

    let mut order = Vec::new();
    match search(&adj, 0, n, cap, &mut failed, &mut spent, node_budget, &mut order) {
        Some(true) => ExactOutcome::Order(order),
        Some(false) => ExactOutcome::ProvenExceeds,
        None => ExactOutcome::OutOfBudget,
    }
}

pub const EXACT_SEARCH_MAX_VERTICES: usize = 40;
pub const EXACT_SEARCH_MAX_WIDTH: usize = 4;

/// Searches for a decomposition of width at most `width_cap`: greedy
/// min-fill first, min-degree next, then the exact search when the instance
/// is small enough. A failure claims "treewidth exceeds the cap" only when
/// the exact search proved it.
pub fn compute_decomposition(
    g: &Graph,
    width_cap: usize,
    effort: u64,
) -> Result<DecompositionOutcome, TwError> {
    if g.is_directed() {
        return Err(TwError::DirectedInput);
    }
    let mut best: Option<TreeDecomposition> = None;
    for min_fill in [true, false] {
        let td = decomposition_from_order(g, &greedy_order(g, min_fill));
        debug_assert!(td.validate(g).is_ok());
        if best.as_ref().map_or(true, |b| td.width() < b.width()) {
            best = Some(td);
        }
    }
    let best = best.expect("heuristics always build a decomposition");
    if best.width() <= width_cap {
        return Ok(DecompositionOutcome::Found(best));
    }
    if g.vertex_count() <= EXACT_SEARCH_MAX_VERTICES && width_cap <= EXACT_SEARCH_MAX_WIDTH {
        match exact_order_within(g, width_cap, effort) {
            ExactOutcome::Order(order) => {
                let td = decomposition_from_order(g, &order);
                debug_assert!(td.validate(g).is_ok());
                debug_assert!(td.width() <= width_cap);
                return Ok(DecompositionOutcome::Found(td));
            }
            ExactOutcome::ProvenExceeds => {
                return Ok(DecompositionOutcome::NotFound(DecompositionFailure {
                    proven_exceeds_cap: true,
                    reason: format!("exact search proved treewidth exceeds {width_cap}"),
                }));
            }
            ExactOutcome::OutOfBudget => {
                return Ok(DecompositionOutcome::NotFound(DecompositionFailure {
                    proven_exceeds_cap: false,
                    reason: format!("no width-{width_cap} decomposition found within budget"),
                }));
            }
        }
    }
    Ok(DecompositionOutcome::NotFound(DecompositionFailure {
        proven_exceeds_cap: false,
        reason: format!(
            "heuristic width {} exceeds cap {width_cap}; exact search not attempted (limits: {} vertices, width {})",
            best.width(),
            EXACT_SEARCH_MAX_VERTICES,
            EXACT_SEARCH_MAX_WIDTH
        ),
    }))
}

/// Proves `treewidth(g) >= bound` when the exact search can settle it.
pub fn prove_treewidth_at_least(g: &Graph, bound: usize, effort: u64) -> Option<bool> {
    if bound == 0 {
        return Some(true);
    }
    let cap = bound - 1;
    if g.vertex_count() > EXACT_SEARCH_MAX_VERTICES || cap > EXACT_SEARCH_MAX_WIDTH {
        return None;
    }
    match exact_order_within(g, cap, effort) {
        ExactOutcome::Order(_) => Some(false),
        ExactOutcome::ProvenExceeds => Some(true),
        ExactOutcome::OutOfBudget => None,
    }
}

/// Emits the exchange format: `td <nodes> <width>`, bag lines
/// `b <node> <v...>`, tree edges `e <a> <b>`.
pub fn emit_decomposition(td: &TreeDecomposition) -> String {
    let mut out = String::new();
    writeln!(out, "td {} {}", td.bags.len(), td.width()).unwrap();
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {i}").unwrap();
        for v in bag {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        writeln!(out, "e {a} {b}").unwrap();
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition, TwError> {
    let mut bags: Vec<Option<Vec<u32>>> = Vec::new();
    let mut edges = Vec::new();
    let mut declared: Option<(usize, usize)> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap();
        let bad = |detail: String| TwError::InvalidDecomposition(format!("line {}: {detail}", lineno + 1));
        match tag {
            "td" => {
                let nodes: usize = fields
                    .next()
                    .and_then(|f| f.parse().ok())
                    .ok_or_else(|| bad("malformed td header".into()))?;
                let width: usize = fields
                    .next()
                    .and_then(|f| f.parse().ok())
                    .ok_or_else(|| bad("malformed td header".into()))?;
                declared = Some((nodes, width));
                bags = vec![None; nodes];
            }
            "b" => {
                let node: usize = fields
                    .next()
                    .and_then(|f| f.parse().ok())
                    .ok_or_else(|| bad("malformed bag line".into()))?;
                if node >= bags.len() {
                    return Err(bad(format!("bag node {node} out of range")));
                }
                let mut bag = Vec::new();
                for f in fields {
                    bag.push(f.parse().map_err(|_| bad("malformed bag vertex".into()))?);
                }
                bag.sort_unstable();
                bag.dedup();
                if bags[node].replace(bag).is_some() {
                    return Err(bad(format!("duplicate bag for node {node}")));
                }
            }
            "e" => {
                let a: usize = fields
                    .next()
                    .and_then(|f| f.parse().ok())
                    .ok_or_else(|| bad("malformed tree edge".into()))?;
                let b: usize = fields
                    .next()
                    .and_then(|f| f.parse().ok())
                    .ok_or_else(|| bad("malformed tree edge".into()))?;
                edges.push((a, b));
            }
            _ => return Err(bad(format!("unknown line tag {tag:?}"))),
        }
    }
    let (nodes, width) = declared
        .ok_or_else(|| TwError::InvalidDecomposition("missing td header".into()))?;
    let bags: Vec<Vec<u32>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or(i))
        .collect::<Result<_, _>>()
        .map_err(|i| TwError::InvalidDecomposition(format!("missing bag for node {i}")))?;
    let td = TreeDecomposition { bags, edges };
    if td.bags.len() != nodes {
        return Err(TwError::InvalidDecomposition("node count mismatch".into()));
    }
    if td.width() != width {
        return Err(TwError::InvalidDecomposition(format!(
            "declared width {width} but bags give {}",
            td.width()
        )));
    }
    Ok(td)
}
