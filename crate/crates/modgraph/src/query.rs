//! Queries, residue constraints, witnesses, and verdicts shared by every
//! solver in the crate.

use crate::graph::Graph;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("allowed residue {0} is outside 0..{1}")]
    ResidueOutOfRange(u32, u32),
    #[error("allowed residue set must be nonempty")]
    EmptyAllowed,
    #[error("path query requires both source and target")]
    MissingEndpoints,
    #[error("cycle query takes no endpoints")]
    UnexpectedEndpoints,
}

/// Modulus `q >= 1` plus a nonempty set of allowed remainders in `0..q`.
/// The singleton set recovers the plain "length is p mod q" problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueConstraint {
    modulus: u32,
    allowed: BTreeSet<u32>,
}

impl ResidueConstraint {
    pub fn new(modulus: u32, allowed: impl IntoIterator<Item = u32>) -> Result<Self, QueryError> {
        if modulus == 0 {
            return Err(QueryError::ZeroModulus);
        }
        let allowed: BTreeSet<u32> = allowed.into_iter().collect();
        if allowed.is_empty() {
            return Err(QueryError::EmptyAllowed);
        }
        if let Some(&r) = allowed.iter().find(|&&r| r >= modulus) {
            return Err(QueryError::ResidueOutOfRange(r, modulus));
        }
        Ok(ResidueConstraint { modulus, allowed })
    }

    /// The single-remainder constraint "length is p mod q". `p` may be any
    /// integer; it is reduced into `0..q`.
    pub fn single(p: i64, q: u32) -> Self {
        assert!(q >= 1, "modulus must be at least 1");
        let r = p.rem_euclid(q as i64) as u32;
        ResidueConstraint {
            modulus: q,
            allowed: BTreeSet::from([r]),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn allowed(&self) -> &BTreeSet<u32> {
        &self.allowed
    }

    pub fn accepts(&self, length: usize) -> bool {
        self.allowed.contains(&((length as u64 % self.modulus as u64) as u32))
    }
}

impl fmt::Display for ResidueConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let residues: Vec<String> = self.allowed.iter().map(|r| r.to_string()).collect();
        write!(f, "{{{}}} mod {}", residues.join(","), self.modulus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QueryKind {
    Path,
    Cycle,
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryKind::Path => write!(f, "path"),
            QueryKind::Cycle => write!(f, "cycle"),
        }
    }
}

/// One decision question: a path query carries its endpoints, a cycle query
/// has none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub kind: QueryKind,
    pub source: Option<u32>,
    pub target: Option<u32>,
    pub constraint: ResidueConstraint,
}

impl Query {
    pub fn path(source: u32, target: u32, constraint: ResidueConstraint) -> Self {
        Query {
            kind: QueryKind::Path,
            source: Some(source),
            target: Some(target),
            constraint,
        }
    }

    pub fn cycle(constraint: ResidueConstraint) -> Self {
        Query {
            kind: QueryKind::Cycle,
            source: None,
            target: None,
            constraint,
        }
    }

    pub fn validate_shape(&self) -> Result<(), QueryError> {
        match self.kind {
            QueryKind::Path if self.source.is_none() || self.target.is_none() => {
                Err(QueryError::MissingEndpoints)
            }
            QueryKind::Cycle if self.source.is_some() || self.target.is_some() => {
                Err(QueryError::UnexpectedEndpoints)
            }
            _ => Ok(()),
        }
    }
}

/// A concrete path or cycle certifying a yes-answer. Path length is
/// `vertices.len() - 1`; cycle length is `vertices.len()` (the closing edge
/// back to the first vertex is implicit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub kind: QueryKind,
    pub vertices: Vec<u32>,
}

impl Witness {
    pub fn path(vertices: Vec<u32>) -> Self {
        Witness {
            kind: QueryKind::Path,
            vertices,
        }
    }

    pub fn cycle(vertices: Vec<u32>) -> Self {
        Witness {
            kind: QueryKind::Cycle,
            vertices,
        }
    }

    pub fn length(&self) -> usize {
        match self.kind {
            QueryKind::Path => self.vertices.len().saturating_sub(1),
            QueryKind::Cycle => self.vertices.len(),
        }
    }
}

/// Tri-state solver outcome. `Unknown` is reserved for solvers whose
/// completeness depends on budgets or unconfigured constants; exhaustive and
/// exact solvers never return it. `YesExistential` marks a yes-answer backed
/// by an existence theorem with no constructive witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(Witness),
    YesExistential(String),
    No,
    Unknown(String),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_) | Verdict::YesExistential(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Yes(w) => Some(w),
            _ => None,
        }
    }
}

fn endpoints_in_range(g: &Graph, w: &Witness) -> bool {
    w.vertices.iter().all(|&v| (v as usize) < g.vertex_count())
}

fn all_distinct(vertices: &[u32]) -> bool {
    let mut seen = BTreeSet::new();
    vertices.iter().all(|&v| seen.insert(v))
}

/// Checks a witness against a graph and query: structure, endpoints, and the
/// residue constraint. Malformed witnesses return `false`, never panic.
pub fn validate_witness(g: &Graph, query: &Query, w: &Witness) -> bool {
    if w.kind != query.kind || !endpoints_in_range(g, w) || !all_distinct(&w.vertices) {
        return false;
    }
    match w.kind {
        QueryKind::Path => {
            let (Some(s), Some(t)) = (query.source, query.target) else {
                return false;
            };
            if w.vertices.is_empty() || w.vertices[0] != s || *w.vertices.last().unwrap() != t {
                return false;
            }
            if !w
                .vertices
                .windows(2)
                .all(|pair| g.has_edge(pair[0], pair[1]))
            {
                return false;
            }
            query.constraint.accepts(w.length())
        }
        QueryKind::Cycle => {
            let min_len = if g.is_directed() { 2 } else { 3 };
            if w.vertices.len() < min_len {
                return false;
            }
            if !w
                .vertices
                .windows(2)
                .all(|pair| g.has_edge(pair[0], pair[1]))
            {
                return false;
            }
            if !g.has_edge(*w.vertices.last().unwrap(), w.vertices[0]) {
                return false;
            }
            query.constraint.accepts(w.length())
        }
    }
}

/// Relaxed validation for walk witnesses: vertices may repeat, everything
/// else (endpoints, consecutive edges, residue) is still enforced. Only the
/// walk-based solvers produce such witnesses.
pub fn validate_walk(g: &Graph, query: &Query, w: &Witness) -> bool {
    if w.kind != QueryKind::Path || query.kind != QueryKind::Path || !endpoints_in_range(g, w) {
        return false;
    }
    let (Some(s), Some(t)) = (query.source, query.target) else {
        return false;
    };
    if w.vertices.is_empty() || w.vertices[0] != s || *w.vertices.last().unwrap() != t {
        return false;
    }
    if !w
        .vertices
        .windows(2)
        .all(|pair| g.has_edge(pair[0], pair[1]))
    {
        return false;
    }
    query.constraint.accepts(w.length())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn c4() -> Graph {
        Graph::undirected_from(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
    }

    #[test]
    fn accepts_even_path_on_c4() {
        let q = Query::path(0, 2, ResidueConstraint::new(2, [0]).unwrap());
        assert!(validate_witness(&c4(), &q, &Witness::path(vec![0, 1, 2])));
    }

    #[test]
    fn rejects_non_edge_step() {
        let q = Query::path(0, 2, ResidueConstraint::new(2, [0]).unwrap());
        assert!(!validate_witness(&c4(), &q, &Witness::path(vec![0, 2])));
    }

    #[test]
    fn rejects_odd_cycle_when_even_required() {
        let c5 = Graph::undirected_from(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let q = Query::cycle(ResidueConstraint::new(2, [0]).unwrap());
        assert!(!validate_witness(&c5, &q, &Witness::cycle(vec![0, 1, 2, 3, 4])));
    }

    #[test]
    fn empty_path_needs_zero_residue() {
        let g = c4();
        let yes = Query::path(1, 1, ResidueConstraint::new(3, [0]).unwrap());
        let no = Query::path(1, 1, ResidueConstraint::new(3, [1]).unwrap());
        let w = Witness::path(vec![1]);
        assert!(validate_witness(&g, &yes, &w));
        assert!(!validate_witness(&g, &no, &w));
    }

    #[test]
    fn directed_two_cycle_is_valid() {
        let g = Graph::directed_from(2, &[(0, 1), (1, 0)]);
        let q = Query::cycle(ResidueConstraint::new(2, [0]).unwrap());
        assert!(validate_witness(&g, &q, &Witness::cycle(vec![0, 1])));
    }

    #[test]
    fn walk_validation_allows_repeats() {
        let g = Graph::undirected_from(3, &[(0, 1), (1, 2)]);
        let q = Query::path(0, 2, ResidueConstraint::new(3, [1]).unwrap());
        let w = Witness::path(vec![0, 1, 0, 1, 2]);
        assert!(!validate_witness(&g, &q, &w));
        assert!(validate_walk(&g, &q, &w));
    }

    #[test]
    fn constraint_validation() {
        assert_eq!(ResidueConstraint::new(0, [0]), Err(QueryError::ZeroModulus));
        assert_eq!(
            ResidueConstraint::new(3, [3]),
            Err(QueryError::ResidueOutOfRange(3, 3))
        );
        assert_eq!(
            ResidueConstraint::new(3, std::iter::empty()),
            Err(QueryError::EmptyAllowed)
        );
        assert_eq!(ResidueConstraint::single(-1, 4).allowed().iter().next(), Some(&3));
    }
}
