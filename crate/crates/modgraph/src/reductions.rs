//! Executable reductions between the modular path and cycle problems, the
//! Turing-reduction drivers built on them, and the NP-hardness gadgets that
//! embed two-disjoint-paths instances. Every transformation carries an
//! instance map that translates output witnesses back to the input.

use crate::graph::{subdivide, Graph};
use crate::query::{validate_witness, Query, ResidueConstraint, Verdict, Witness};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(u32, u32),
    #[error("source and target must differ")]
    SameEndpoints,
    #[error("endpoint {0} out of range (vertex count {1})")]
    EndpointOutOfRange(u32, usize),
    #[error("reduction requires an undirected graph")]
    RequiresUndirected,
    #[error("reduction requires a directed graph")]
    RequiresDirected,
    #[error("parameters out of range: {0}")]
    ParamDomain(String),
    #[error("two-disjoint-paths endpoints must be pairwise distinct")]
    EndpointsNotDistinct,
}

/// Source instance for the hardness gadgets: a digraph with two terminal
/// pairs whose connecting paths must be vertex-disjoint.
#[derive(Debug, Clone)]
pub struct TwoDisjointPathsInstance {
    pub graph: Graph,
    pub s: u32,
    pub t: u32,
    pub s2: u32,
    pub t2: u32,
}

impl TwoDisjointPathsInstance {
    pub fn new(graph: Graph, s: u32, t: u32, s2: u32, t2: u32) -> Result<Self, ReductionError> {
        if !graph.is_directed() {
            return Err(ReductionError::RequiresDirected);
        }
        let ends = [s, t, s2, t2];
        for &v in &ends {
            if v as usize >= graph.vertex_count() {
                return Err(ReductionError::EndpointOutOfRange(v, graph.vertex_count()));
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if ends[i] == ends[j] {
                    return Err(ReductionError::EndpointsNotDistinct);
                }
            }
        }
        Ok(TwoDisjointPathsInstance { graph, s, t, s2, t2 })
    }

    /// The equivalent disjoint-family query (any path length).
    pub fn as_k_disjoint_query(&self) -> crate::oracle::KDisjointQuery {
        let any = ResidueConstraint::new(1, [0]).unwrap();
        crate::oracle::KDisjointQuery::new(vec![
            Query::path(self.s, self.t, any.clone()),
            Query::path(self.s2, self.t2, any),
        ])
        .expect("two path components are within the cap")
    }
}

type EdgeChains = Vec<((u32, u32), Vec<u32>)>;

/// Per-reduction payload translating output witnesses back to the input
/// instance.
#[derive(Debug, Clone)]
pub enum InstanceMap {
    CycleToPath {
        removed_edge: (u32, u32),
    },
    PathToCycle {
        fresh_edge: (u32, u32),
        original_vertices: usize,
        chains: EdgeChains,
    },
    ShiftRemainder {
        original_target: u32,
        appended: Vec<u32>,
    },
    HardnessPath {
        original_vertices: usize,
        terminals: (u32, u32, u32, u32),
        fresh_source: Option<u32>,
        connector: Vec<u32>,
        chains: EdgeChains,
    },
    HardnessCycle {
        original_vertices: usize,
        terminals: (u32, u32, u32, u32),
        connector1: Vec<u32>,
        connector2: Vec<u32>,
        chains: EdgeChains,
    },
}

/// A transformed instance plus the data to pull witnesses back.
#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub query: Query,
    pub instance_map: InstanceMap,
}

/// Witness on the input instance recovered from an output witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslatedWitness {
    One(Witness),
    /// The two vertex-disjoint paths of a gadget source instance.
    Two(Witness, Witness),
}

impl ReductionOutput {
    /// Translates a witness of the output instance back to the input.
    /// Returns `None` for witnesses that do not validate on the output.
    pub fn back_translate(&self, out_witness: &Witness) -> Option<TranslatedWitness> {
        if !validate_witness(&self.graph, &self.query, out_witness) {
            return None;
        }
        let w = out_witness;
        match &self.instance_map {
            InstanceMap::CycleToPath { .. } => {
                Some(TranslatedWitness::One(Witness::cycle(w.vertices.clone())))
            }
            InstanceMap::PathToCycle {
                fresh_edge,
                original_vertices,
                ..
            } => {
                let seq = &w.vertices;
                let k = seq.len();
                let (s, t) = *fresh_edge;
                // Locate the fresh edge along the cycle; the odd residue
                // forces its use, every other cycle being even.
                let j = (0..k).find(|&j| {
                    let a = seq[j];
                    let b = seq[(j + 1) % k];
                    (a, b) == (s, t) || (a, b) == (t, s)
                })?;
                let from_s = seq[j] == s;
                let mut path = Vec::with_capacity(k);
                for step in 0..k {
                    let v = if from_s {
                        // seq[j] = s, seq[j+1] = t: walk backwards from s.
                        seq[(j + k - step) % k]
                    } else {
                        // seq[j] = t, seq[j+1] = s: walk forwards from s.
                        seq[(j + 1 + step) % k]
                    };
                    path.push(v);
                }
                let originals: Vec<u32> = path
                    .into_iter()
                    .filter(|&v| (v as usize) < *original_vertices)
                    .collect();
                Some(TranslatedWitness::One(Witness::path(originals)))
            }
            InstanceMap::ShiftRemainder { appended, .. } => {
                let keep = w.vertices.len().checked_sub(appended.len())?;
                Some(TranslatedWitness::One(Witness::path(
                    w.vertices[..keep].to_vec(),
                )))
            }
            InstanceMap::HardnessPath {
                original_vertices,
                terminals,
                ..
            } => {
                let (s, t, s2, t2) = *terminals;
                let originals: Vec<u32> = w
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&v| (v as usize) < *original_vertices)
                    .collect();
                let cut = originals.iter().position(|&v| v == t)?;
                let (first, second) = originals.split_at(cut + 1);
                if first.first() != Some(&s)
                    || second.first() != Some(&s2)
                    || second.last() != Some(&t2)
                {
                    return None;
                }
                Some(TranslatedWitness::Two(
                    Witness::path(first.to_vec()),
                    Witness::path(second.to_vec()),
                ))
            }
            InstanceMap::HardnessCycle {
                original_vertices,
                terminals,
                ..
            } => {
                let (s, t, s2, t2) = *terminals;
                let originals: Vec<u32> = w
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&v| (v as usize) < *original_vertices)
                    .collect();
                let start = originals.iter().position(|&v| v == s)?;
                let rotated: Vec<u32> = (0..originals.len())
                    .map(|i| originals[(start + i) % originals.len()])
                    .collect();
                let cut = rotated.iter().position(|&v| v == t)?;
                let (first, second) = rotated.split_at(cut + 1);
                if second.first() != Some(&s2) || second.last() != Some(&t2) {
                    return None;
                }
                Some(TranslatedWitness::Two(
                    Witness::path(first.to_vec()),
                    Witness::path(second.to_vec()),
                ))
            }
        }
    }
}

fn check_endpoint(g: &Graph, v: u32) -> Result<(), ReductionError> {
    if (v as usize) < g.vertex_count() {
        Ok(())
    } else {
        Err(ReductionError::EndpointOutOfRange(v, g.vertex_count()))
    }
}

/// Cycles through a fixed edge correspond to paths between its endpoints in
/// the graph without it, with the remainder lowered by the closing edge.
pub fn cycle_to_path(
    g: &Graph,
    p: i64,
    q: u32,
    e: (u32, u32),
) -> Result<ReductionOutput, ReductionError> {
    if g.is_directed() {
        return Err(ReductionError::RequiresUndirected);
    }
    let graph = g
        .without_edge(e.0, e.1)
        .ok_or(ReductionError::NotAnEdge(e.0, e.1))?;
    let (u, v) = (e.0.min(e.1), e.0.max(e.1));
    Ok(ReductionOutput {
        graph,
        query: Query::path(u, v, ResidueConstraint::single(p - 1, q)),
        instance_map: InstanceMap::CycleToPath { removed_edge: (u, v) },
    })
}

/// Turing reduction: try every edge as the forced cycle edge and OR the
/// path-solver answers. A solver `Unknown` contaminates a would-be `No`.
pub fn cycle_to_path_driver<E>(
    g: &Graph,
    p: i64,
    q: u32,
    mut path_solver: impl FnMut(&Graph, &Query) -> Result<Verdict, E>,
) -> Result<Verdict, E> {
    let mut contaminated = false;
    for e in g.edges().collect::<Vec<_>>() {
        let out = cycle_to_path(g, p, q, e).expect("edges of g are valid");
        match path_solver(&out.graph, &out.query)? {
            Verdict::Yes(w) => {
                if let Some(TranslatedWitness::One(cycle)) = out.back_translate(&w) {
                    return Ok(Verdict::Yes(cycle));
                }
                contaminated = true;
            }
            Verdict::YesExistential(reason) => return Ok(Verdict::YesExistential(reason)),
            Verdict::No => {}
            Verdict::Unknown(_) => contaminated = true,
        }
    }
    Ok(if contaminated {
        Verdict::Unknown("some branch was unknown".into())
    } else {
        Verdict::No
    })
}

/// Karp reduction from paths to cycles: replace every edge by a two-edge
/// path (doubling all lengths, so surviving cycles are even), then close the
/// endpoints with one fresh direct edge. Odd target residues force any
/// qualifying cycle through the fresh edge.
pub fn path_to_cycle(
    g: &Graph,
    s: u32,
    t: u32,
    p: i64,
    q: u32,
) -> Result<ReductionOutput, ReductionError> {
    if g.is_directed() {
        return Err(ReductionError::RequiresUndirected);
    }
    check_endpoint(g, s)?;
    check_endpoint(g, t)?;
    if s == t {
        return Err(ReductionError::SameEndpoints);
    }
    let (mut graph, chains) = subdivide(g, 2);
    graph
        .add_edge(s, t)
        .expect("any direct edge was subdivided away");
    let p_norm = p.rem_euclid(q as i64);
    Ok(ReductionOutput {
        graph,
        query: Query::cycle(ResidueConstraint::single(2 * p_norm + 1, 2 * q)),
        instance_map: InstanceMap::PathToCycle {
            fresh_edge: (s, t),
            original_vertices: g.vertex_count(),
            chains,
        },
    })
}

/// Moves the requested remainder by appending a pendant path at the target.
/// The appended length is `(p' - p) mod q`, or a full `q` when that is zero,
/// so a fresh target always exists.
pub fn shift_remainder(
    g: &Graph,
    s: u32,
    t: u32,
    p: i64,
    q: u32,
    p_new: i64,
) -> Result<ReductionOutput, ReductionError> {
    check_endpoint(g, s)?;
    check_endpoint(g, t)?;
    let mut len = (p_new - p).rem_euclid(q as i64) as usize;
    if len == 0 {
        len = q as usize;
    }
    let mut graph = g.with_extra_vertices(len);
    let mut appended = Vec::with_capacity(len);
    let mut prev = t;
    for i in 0..len {
        let fresh = (g.vertex_count() + i) as u32;
        graph.add_edge(prev, fresh).expect("fresh chain edge");
        appended.push(fresh);
        prev = fresh;
    }
    Ok(ReductionOutput {
        graph,
        query: Query::path(s, prev, ResidueConstraint::single(p_new, q)),
        instance_map: InstanceMap::ShiftRemainder {
            original_target: t,
            appended,
        },
    })
}

/// Turing reduction to a larger modulus kq: a length is `p mod q` iff it is
/// `p + iq mod kq` for some `i`. Each branch is routed through
/// `shift_remainder` so the inner solver always sees the same remainder.
pub fn modulus_multiply_driver<E>(
    g: &Graph,
    s: u32,
    t: u32,
    p: i64,
    q: u32,
    k: u32,
    mut solver_kq: impl FnMut(&Graph, &Query) -> Result<Verdict, E>,
) -> Result<Verdict, E> {
    assert!(k >= 1 && q >= 1);
    let kq = k * q;
    let base = p.rem_euclid(q as i64);
    let mut contaminated = false;
    for i in 0..k {
        if i == 0 {
            match solver_kq(g, &Query::path(s, t, ResidueConstraint::single(base, kq)))? {
                Verdict::Yes(w) => return Ok(Verdict::Yes(w)),
                Verdict::YesExistential(r) => return Ok(Verdict::YesExistential(r)),
                Verdict::No => {}
                Verdict::Unknown(_) => contaminated = true,
            }
            continue;
        }
        let target = base + (i * q) as i64;
        let shifted = shift_remainder(g, s, t, target, kq, base)
            .expect("endpoints validated by the first branch");
        match solver_kq(&shifted.graph, &shifted.query)? {
            Verdict::Yes(w) => {
                if let Some(TranslatedWitness::One(path)) = shifted.back_translate(&w) {
                    return Ok(Verdict::Yes(path));
                }
                contaminated = true;
            }
            Verdict::YesExistential(r) => return Ok(Verdict::YesExistential(r)),
            Verdict::No => {}
            Verdict::Unknown(_) => contaminated = true,
        }
    }
    Ok(if contaminated {
        Verdict::Unknown("some branch was unknown".into())
    } else {
        Verdict::No
    })
}

/// Cycle counterpart of [`modulus_multiply_driver`]: a cycle length is
/// `p mod q` iff it is `p + iq mod kq` for some `i`. Cycles have no
/// endpoint to shift, so every branch queries the same graph with a moved
/// remainder.
pub fn modulus_multiply_cycle_driver<E>(
    g: &Graph,
    p: i64,
    q: u32,
    k: u32,
    mut solver_kq: impl FnMut(&Graph, &Query) -> Result<Verdict, E>,
) -> Result<Verdict, E> {
    assert!(k >= 1 && q >= 1);
    let kq = k * q;
    let base = p.rem_euclid(q as i64);
    let mut contaminated = false;
    for i in 0..k {
        let target = base + (i * q) as i64;
        match solver_kq(g, &Query::cycle(ResidueConstraint::single(target, kq)))? {
            Verdict::Yes(w) => return Ok(Verdict::Yes(w)),
            Verdict::YesExistential(r) => return Ok(Verdict::YesExistential(r)),
            Verdict::No => {}
            Verdict::Unknown(_) => contaminated = true,
        }
    }
    Ok(if contaminated {
        Verdict::Unknown("some branch was unknown".into())
    } else {
        Verdict::No
    })
}

/// Connects a chain of `len - 1` fresh vertices from `from` to `to`
/// (total `len` arcs), or a direct arc when `len` is 1. Returns the interior
/// fresh vertices.
fn connect_arc_chain(
    graph: &mut Graph,
    from: u32,
    to: u32,
    len: usize,
    next_fresh: &mut u32,
) -> Vec<u32> {
    debug_assert!(len >= 1);
    let mut interior = Vec::with_capacity(len - 1);
    let mut prev = from;
    for _ in 0..len - 1 {
        let fresh = *next_fresh;
        *next_fresh += 1;
        graph.add_edge(prev, fresh).expect("fresh arc");
        interior.push(fresh);
        prev = fresh;
    }
    graph.add_edge(prev, to).expect("closing arc");
    interior
}

/// Hardness gadget for directed modular paths: subdivide every arc into a
/// path of q arcs and connect t to s' with p arcs (p > 0), or hang a fresh
/// one-arc source off s and use a (q-1)-arc connector (p = 0). A qualifying
/// path must cross the connector, yielding the two disjoint paths.
pub fn hardness_path_gadget(
    inst: &TwoDisjointPathsInstance,
    p: u32,
    q: u32,
) -> Result<ReductionOutput, ReductionError> {
    if q < 2 {
        return Err(ReductionError::ParamDomain(format!(
            "modulus must be at least 2, got {q}"
        )));
    }
    if p >= q {
        return Err(ReductionError::ParamDomain(format!(
            "remainder {p} must lie below the modulus {q}"
        )));
    }
    let original_vertices = inst.graph.vertex_count();
    let (subdivided, chains) = subdivide(&inst.graph, q as usize);
    let mut next_fresh = subdivided.vertex_count() as u32;
    if p > 0 {
        let mut graph = subdivided.with_extra_vertices(p as usize - 1);
        let connector = connect_arc_chain(&mut graph, inst.t, inst.s2, p as usize, &mut next_fresh);
        Ok(ReductionOutput {
            graph,
            query: Query::path(inst.s, inst.t2, ResidueConstraint::single(p as i64, q)),
            instance_map: InstanceMap::HardnessPath {
                original_vertices,
                terminals: (inst.s, inst.t, inst.s2, inst.t2),
                fresh_source: None,
                connector,
                chains,
            },
        })
    } else {
        let connector_len = q as usize - 1;
        let mut graph = subdivided.with_extra_vertices(connector_len);
        let connector =
            connect_arc_chain(&mut graph, inst.t, inst.s2, connector_len, &mut next_fresh);
        let source = next_fresh;
        graph.add_edge(source, inst.s).expect("fresh source arc");
        Ok(ReductionOutput {
            graph,
            query: Query::path(source, inst.t2, ResidueConstraint::single(0, q)),
            instance_map: InstanceMap::HardnessPath {
                original_vertices,
                terminals: (inst.s, inst.t, inst.s2, inst.t2),
                fresh_source: Some(source),
                connector,
                chains,
            },
        })
    }
}

/// The two connector lengths of the cycle gadget: positive, distinct from
/// p, and summing to p mod q.
pub fn gadget_split(p: u32, q: u32) -> Result<(u32, u32), ReductionError> {
    if q < 3 {
        return Err(ReductionError::ParamDomain(format!(
            "modulus must be at least 3, got {q}"
        )));
    }
    if p == 0 || p >= q {
        return Err(ReductionError::ParamDomain(format!(
            "remainder must satisfy 0 < p < q (the p = 0 directed case is an open \
             problem and has no such construction), got p={p} q={q}"
        )));
    }
    Ok(if p >= 2 { (1, p - 1) } else { (2, q - 1) })
}

/// Hardness gadget for directed modular cycles: subdivide arcs by q, then
/// connect t to s' with p1 arcs and t' back to s with p2 arcs. Cycles using
/// neither, one, or both connectors have residues 0, p1 or p2, and p; only
/// the last matches, forcing both connectors and hence two disjoint paths.
pub fn hardness_cycle_gadget(
    inst: &TwoDisjointPathsInstance,
    p: u32,
    q: u32,
) -> Result<ReductionOutput, ReductionError> {
    let (p1, p2) = gadget_split(p, q)?;
    let original_vertices = inst.graph.vertex_count();
    let (subdivided, chains) = subdivide(&inst.graph, q as usize);
    let mut next_fresh = subdivided.vertex_count() as u32;
    let extra = (p1 as usize - 1) + (p2 as usize - 1);
    let mut graph = subdivided.with_extra_vertices(extra);
    let connector1 = connect_arc_chain(&mut graph, inst.t, inst.s2, p1 as usize, &mut next_fresh);
    let connector2 = connect_arc_chain(&mut graph, inst.t2, inst.s, p2 as usize, &mut next_fresh);
    Ok(ReductionOutput {
        graph,
        query: Query::cycle(ResidueConstraint::single(p as i64, q)),
        instance_map: InstanceMap::HardnessCycle {
            original_vertices,
            terminals: (inst.s, inst.t, inst.s2, inst.t2),
            connector1,
            connector2,
            chains,
        },
    })
}

/// Sidecar map format written next to transformed graphs.
pub fn emit_map(map: &InstanceMap) -> String {
    let mut out = String::new();
    let chains_lines = |out: &mut String, chains: &EdgeChains| {
        for ((u, v), fresh) in chains {
            write!(out, "sub {u} {v}").unwrap();
            for f in fresh {
                write!(out, " {f}").unwrap();
            }
            out.push('\n');
        }
    };
    match map {
        InstanceMap::CycleToPath { removed_edge: (u, v) } => {
            writeln!(out, "m cycle-to-path").unwrap();
            writeln!(out, "removed-edge {u} {v}").unwrap();
        }
        InstanceMap::PathToCycle {
            fresh_edge: (s, t),
            chains,
            ..
        } => {
            writeln!(out, "m path-to-cycle").unwrap();
            writeln!(out, "fresh-edge {s} {t}").unwrap();
            chains_lines(&mut out, chains);
        }
        InstanceMap::ShiftRemainder {
            original_target,
            appended,
        } => {
            writeln!(out, "m shift-remainder").unwrap();
            write!(out, "appended {original_target}").unwrap();
            for v in appended {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        InstanceMap::HardnessPath {
            terminals: (s, t, s2, t2),
            fresh_source,
            connector,
            chains,
            ..
        } => {
            writeln!(out, "m hardness-path").unwrap();
            writeln!(out, "endpoints {s} {t} {s2} {t2}").unwrap();
            if let Some(src) = fresh_source {
                writeln!(out, "fresh-source {src}").unwrap();
            }
            write!(out, "connector1 {t}").unwrap();
            for v in connector {
                write!(out, " {v}").unwrap();
            }
            writeln!(out, " {s2}").unwrap();
            chains_lines(&mut out, chains);
        }
        InstanceMap::HardnessCycle {
            terminals: (s, t, s2, t2),
            connector1,
            connector2,
            chains,
            ..
        } => {
            writeln!(out, "m hardness-cycle").unwrap();
            writeln!(out, "endpoints {s} {t} {s2} {t2}").unwrap();
            write!(out, "connector1 {t}").unwrap();
            for v in connector1 {
                write!(out, " {v}").unwrap();
            }
            writeln!(out, " {s2}").unwrap();
            write!(out, "connector2 {t2}").unwrap();
            for v in connector2 {
                write!(out, " {v}").unwrap();
            }
            writeln!(out, " {s}").unwrap();
            chains_lines(&mut out, chains);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle};
    use crate::oracle::{oracle_decide, Budget};

    fn oracle_solver(g: &Graph, query: &Query) -> Result<Verdict, String> {
        oracle_decide(g, query, &mut Budget::default()).map_err(|e| e.to_string())
    }

    #[test]
    fn c6_cycle_to_path_instance() {
        let g = cycle(6).unwrap();
        let out = cycle_to_path(&g, 0, 3, (0, 1)).unwrap();
        assert_eq!(out.graph.edge_count(), 5);
        assert_eq!(out.query.constraint, ResidueConstraint::single(2, 3));
        let v = oracle_solver(&out.graph, &out.query).unwrap();
        let Verdict::Yes(w) = v else { panic!("expected yes") };
        let TranslatedWitness::One(cycle_w) = out.back_translate(&w).unwrap() else {
            panic!("expected single witness")
        };
        assert_eq!(cycle_w.vertices.len(), 6);
        assert!(validate_witness(
            &g,
            &Query::cycle(ResidueConstraint::single(0, 3)),
            &cycle_w
        ));
    }

    #[test]
    fn driver_matches_hand_counts() {
        let c6 = cycle(6).unwrap();
        assert!(matches!(
            cycle_to_path_driver(&c6, 0, 3, oracle_solver).unwrap(),
            Verdict::Yes(_)
        ));
        let c5 = cycle(5).unwrap();
        assert_eq!(
            cycle_to_path_driver(&c5, 0, 2, oracle_solver).unwrap(),
            Verdict::No
        );
        // K_4 has cycle lengths {3, 4}.
        let k4 = complete(4);
        assert!(matches!(
            cycle_to_path_driver(&k4, 1, 3, oracle_solver).unwrap(),
            Verdict::Yes(_)
        ));
    }

    #[test]
    fn single_edge_path_to_cycle() {
        let g = Graph::undirected_from(2, &[(0, 1)]);
        let out = path_to_cycle(&g, 0, 1, 1, 2).unwrap();
        // s-a-t plus the fresh direct edge: one triangle.
        assert_eq!(out.graph.vertex_count(), 3);
        assert_eq!(out.graph.edge_count(), 3);
        assert_eq!(out.query.constraint, ResidueConstraint::single(3, 4));
        let v = oracle_solver(&out.graph, &out.query).unwrap();
        let Verdict::Yes(w) = v else { panic!("expected yes") };
        let TranslatedWitness::One(path) = out.back_translate(&w).unwrap() else {
            panic!()
        };
        assert_eq!(path.vertices, vec![0, 1]);
    }

    #[test]
    fn c4_path_to_cycle_both_parities() {
        let g = cycle(4).unwrap();
        // Even paths exist between opposite corners; odd ones do not.
        let even = path_to_cycle(&g, 0, 2, 0, 2).unwrap();
        assert!(matches!(
            oracle_solver(&even.graph, &even.query).unwrap(),
            Verdict::Yes(_)
        ));
        let odd = path_to_cycle(&g, 0, 2, 1, 2).unwrap();
        assert_eq!(oracle_solver(&odd.graph, &odd.query).unwrap(), Verdict::No);
    }

    #[test]
    fn shift_remainder_moves_the_spectrum() {
        let g = cycle(4).unwrap();
        // Both 0-2 paths have length 2; shifting 0 -> 2 mod 3 appends 2.
        let out = shift_remainder(&g, 0, 2, 0, 3, 2).unwrap();
        assert_eq!(out.graph.vertex_count(), 6);
        // Transformed paths have length 4, residue 1, so residue 2 fails,
        // matching the original: no 0-2 path of length 0 mod 3.
        assert_eq!(oracle_solver(&out.graph, &out.query).unwrap(), Verdict::No);
        // Shift to the same remainder appends a full period.
        let id = shift_remainder(&g, 0, 2, 2, 3, 2).unwrap();
        assert_eq!(id.graph.vertex_count(), 4 + 3);
        let v = oracle_solver(&id.graph, &id.query).unwrap();
        let Verdict::Yes(w) = v else { panic!("expected yes") };
        let TranslatedWitness::One(orig) = id.back_translate(&w).unwrap() else {
            panic!()
        };
        assert_eq!(orig.vertices.first(), Some(&0));
        assert_eq!(orig.vertices.last(), Some(&2));
    }

    #[test]
    fn modulus_multiply_on_c6() {
        let g = cycle(6).unwrap();
        // Paths 0..2 have lengths {2, 4}.
        let yes = modulus_multiply_driver(&g, 0, 2, 2, 3, 2, oracle_solver).unwrap();
        let Verdict::Yes(w) = yes else { panic!("expected yes") };
        assert!(validate_witness(
            &g,
            &Query::path(0, 2, ResidueConstraint::new(6, [2, 5]).unwrap()),
            &w
        ));
        let no = modulus_multiply_driver(&g, 0, 2, 0, 3, 2, oracle_solver).unwrap();
        assert_eq!(no, Verdict::No);
        // k = 1 behaves like a single direct query.
        let single = modulus_multiply_driver(&g, 0, 2, 2, 3, 1, oracle_solver).unwrap();
        assert!(matches!(single, Verdict::Yes(_)));
    }

    #[test]
    fn cycle_modulus_multiply_matches_oracle() {
        // K_4 has cycle lengths {3, 4}.
        let k4 = complete(4);
        for (p, q, k, expect) in [(0i64, 3u32, 2u32, true), (1, 3, 2, true), (2, 3, 2, false)] {
            let got = modulus_multiply_cycle_driver(&k4, p, q, k, oracle_solver)
                .unwrap()
                .is_yes();
            assert_eq!(got, expect, "p={p} q={q} k={k}");
        }
    }

    fn two_arc_instance() -> TwoDisjointPathsInstance {
        TwoDisjointPathsInstance::new(Graph::directed_from(4, &[(0, 1), (2, 3)]), 0, 1, 2, 3)
            .unwrap()
    }

    #[test]
    fn path_gadget_positive_remainder() {
        let inst = two_arc_instance();
        let out = hardness_path_gadget(&inst, 1, 2).unwrap();
        // Arcs subdivided to length 2; connector t -> s' of 1 arc:
        // unique path s..t' of length 2+1+2 = 5, residue 1.
        let v = oracle_solver(&out.graph, &out.query).unwrap();
        let Verdict::Yes(w) = v else { panic!("expected yes") };
        assert_eq!(w.length() % 2, 1);
        let TranslatedWitness::Two(a, b) = out.back_translate(&w).unwrap() else {
            panic!()
        };
        assert_eq!(a.vertices, vec![0, 1]);
        assert_eq!(b.vertices, vec![2, 3]);
    }

    #[test]
    fn path_gadget_zero_remainder() {
        let inst = two_arc_instance();
        let out = hardness_path_gadget(&inst, 0, 2).unwrap();
        // Length 1 + 2 + 1 + 2 = 6, residue 0.
        let v = oracle_solver(&out.graph, &out.query).unwrap();
        let Verdict::Yes(w) = v else { panic!("expected yes") };
        assert_eq!(w.length() % 2, 0);
        assert!(matches!(
            out.back_translate(&w),
            Some(TranslatedWitness::Two(_, _))
        ));
    }

    #[test]
    fn path_gadget_unreachable_target_is_no() {
        // t unreachable from s: no modular path for any remainder.
        let inst =
            TwoDisjointPathsInstance::new(Graph::directed_from(4, &[(1, 0), (2, 3)]), 0, 1, 2, 3)
                .unwrap();
        for p in 0..2 {
            let out = hardness_path_gadget(&inst, p, 2).unwrap();
            assert_eq!(oracle_solver(&out.graph, &out.query).unwrap(), Verdict::No);
        }
    }

    #[test]
    fn cycle_gadget_hand_counts() {
        let inst = two_arc_instance();
        // p=2, q=3: p1=1, p2=1; cycle length 3+1+3+1 = 8, residue 2.
        let out = hardness_cycle_gadget(&inst, 2, 3).unwrap();
        let v = oracle_solver(&out.graph, &out.query).unwrap();
        let Verdict::Yes(w) = v else { panic!("expected yes") };
        assert_eq!(w.length(), 8);
        let TranslatedWitness::Two(a, b) = out.back_translate(&w).unwrap() else {
            panic!()
        };
        assert_eq!(a.vertices, vec![0, 1]);
        assert_eq!(b.vertices, vec![2, 3]);
        // p=1, q=3: p1=2, p2=2; cycle length 3+2+3+2 = 10, residue 1.
        let out = hardness_cycle_gadget(&inst, 1, 3).unwrap();
        let v = oracle_solver(&out.graph, &out.query).unwrap();
        let Verdict::Yes(w) = v else { panic!("expected yes") };
        assert_eq!(w.length(), 10);
    }

    #[test]
    fn cycle_gadget_without_second_path_is_no() {
        // No s' -> t' connection: no cycle can make a full crossing.
        let inst =
            TwoDisjointPathsInstance::new(Graph::directed_from(4, &[(0, 1), (3, 2)]), 0, 1, 2, 3)
                .unwrap();
        let out = hardness_cycle_gadget(&inst, 2, 3).unwrap();
        assert_eq!(oracle_solver(&out.graph, &out.query).unwrap(), Verdict::No);
    }

    #[test]
    fn crossing_instance_blocks_both_gadgets() {
        // Both terminal pairs route through the shared middle vertex, so no
        // two disjoint paths exist, and neither gadget has a witness.
        let crossing = Graph::directed_from(5, &[(0, 4), (4, 1), (2, 4), (4, 3)]);
        let inst = TwoDisjointPathsInstance::new(crossing, 0, 1, 2, 3).unwrap();
        let direct = crate::oracle::oracle_k_disjoint(
            &inst.graph,
            &inst.as_k_disjoint_query(),
            &mut Budget::default(),
        )
        .unwrap();
        assert_eq!(direct, crate::oracle::MultiVerdict::No);
        let path_g = hardness_path_gadget(&inst, 1, 3).unwrap();
        assert_eq!(oracle_solver(&path_g.graph, &path_g.query).unwrap(), Verdict::No);
        let cycle_g = hardness_cycle_gadget(&inst, 1, 3).unwrap();
        assert_eq!(oracle_solver(&cycle_g.graph, &cycle_g.query).unwrap(), Verdict::No);
    }

    #[test]
    fn cycle_gadget_rejects_open_parameters() {
        let inst = two_arc_instance();
        assert!(matches!(
            hardness_cycle_gadget(&inst, 0, 3),
            Err(ReductionError::ParamDomain(_))
        ));
        assert!(matches!(
            hardness_cycle_gadget(&inst, 1, 2),
            Err(ReductionError::ParamDomain(_))
        ));
    }

    #[test]
    fn split_arithmetic_exhaustive() {
        for q in 3..=50u32 {
            for p in 1..q {
                let (p1, p2) = gadget_split(p, q).unwrap();
                assert!(p1 > 0 && p1 < q);
                assert!(p2 > 0 && p2 < q);
                assert_ne!(p1, p);
                assert_ne!(p2, p);
                assert_eq!((p1 + p2) % q, p % q);
            }
        }
    }

    #[test]
    fn double_shift_preserves_verdicts() {
        let g = complete(4);
        for (p, p2) in [(0i64, 2i64), (1, 0), (2, 1)] {
            let first = shift_remainder(&g, 0, 1, p, 3, p2).unwrap();
            let (s1, t1) = (first.query.source.unwrap(), first.query.target.unwrap());
            let second = shift_remainder(&first.graph, s1, t1, p2, 3, p).unwrap();
            let direct = oracle_solver(&g, &Query::path(0, 1, ResidueConstraint::single(p, 3)))
                .unwrap()
                .is_yes();
            let shifted = oracle_solver(&second.graph, &second.query).unwrap().is_yes();
            assert_eq!(direct, shifted, "p={p} p'={p2}");
        }
    }
}
