//! Walk solver via the layered product construction, and the DAG path
//! solver built on it (directed walks on a DAG are automatically simple).

use super::PolyError;
use crate::graph::Graph;
use crate::query::{ResidueConstraint, Verdict, Witness};
use std::collections::VecDeque;

/// Decides whether an s-t walk (vertices may repeat) of allowed residue
/// length exists, by reachability over q layered copies of the graph.
/// Witnesses are walks flagged as paths; validate them with
/// [`crate::query::validate_walk`]. Never returns `Unknown`.
pub fn walk_decide(
    g: &Graph,
    s: u32,
    t: u32,
    constraint: &ResidueConstraint,
) -> Result<Verdict, PolyError> {
    let n = g.vertex_count();
    for v in [s, t] {
        if v as usize >= n {
            return Err(PolyError::EndpointOutOfRange(v, n));
        }
    }
    let q = constraint.modulus() as usize;
    let state = |v: u32, r: usize| v as usize * q + r;
    let mut parent = vec![usize::MAX; n * q];
    let mut seen = vec![false; n * q];
    let start = state(s, 0);
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let (v, r) = ((x / q) as u32, x % q);
        for &w in g.neighbors(v) {
            let y = state(w, (r + 1) % q);
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    for &r in constraint.allowed() {
        let goal = state(t, r as usize);
        if !seen[goal] {
            continue;
        }
        let mut walk = Vec::new();
        let mut x = goal;
        loop {
            walk.push((x / q) as u32);
            if x == start {
                break;
            }
            x = parent[x];
        }
        walk.reverse();
        return Ok(Verdict::Yes(Witness::path(walk)));
    }
    Ok(Verdict::No)
}

/// Topological order, or `None` if the directed graph has a cycle.
fn topological_order(g: &Graph) -> Option<Vec<u32>> {
    let n = g.vertex_count();
    let mut indeg = vec![0usize; n];
    for v in 0..n as u32 {
        for &w in g.neighbors(v) {
            indeg[w as usize] += 1;
        }
    }
    let mut queue: VecDeque<u32> = (0..n as u32).filter(|&v| indeg[v as usize] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v) {
            indeg[w as usize] -= 1;
            if indeg[w as usize] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Exact ModPath on directed acyclic graphs. Walks cannot revisit a vertex
/// here, so the product-construction verdict is exact and its witness is a
/// simple path.
pub fn dag_decide(
    g: &Graph,
    s: u32,
    t: u32,
    constraint: &ResidueConstraint,
) -> Result<Verdict, PolyError> {
    if !g.is_directed() {
        return Err(PolyError::NotDirected);
    }
    if topological_order(g).is_none() {
        return Err(PolyError::HasDirectedCycle);
    }
    let verdict = walk_decide(g, s, t, constraint)?;
    if let Verdict::Yes(w) = &verdict {
        debug_assert!(
            {
                let mut sorted = w.vertices.clone();
                sorted.sort_unstable();
                sorted.windows(2).all(|p| p[0] != p[1])
            },
            "walks on a DAG are simple"
        );
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle, path_graph};
    use crate::query::{validate_walk, validate_witness, Query};

    #[test]
    fn walk_wraps_to_reach_residue() {
        // 0-1-2: shortest 0->2 walk is 2 edges; residue 1 mod 3 needs a
        // length-4 walk such as 0,1,0,1,2.
        let g = path_graph(3);
        let c = ResidueConstraint::new(3, [1]).unwrap();
        let verdict = walk_decide(&g, 0, 2, &c).unwrap();
        let Verdict::Yes(w) = &verdict else {
            panic!("expected yes, got {verdict:?}")
        };
        assert_eq!(w.length() % 3, 1);
        assert!(validate_walk(&g, &Query::path(0, 2, c), w));
    }

    #[test]
    fn bipartite_blocks_odd_walks() {
        let g = cycle(4).unwrap();
        let c = ResidueConstraint::new(2, [1]).unwrap();
        assert_eq!(walk_decide(&g, 0, 2, &c).unwrap(), Verdict::No);
    }

    #[test]
    fn empty_walk_when_source_is_target() {
        let g = path_graph(2);
        let c = ResidueConstraint::new(4, [0]).unwrap();
        let verdict = walk_decide(&g, 1, 1, &c).unwrap();
        assert_eq!(verdict, Verdict::Yes(Witness::path(vec![1])));
    }

    #[test]
    fn dag_diamond_lengths() {
        // s=0, a=1, t=2, b=3, c=4: paths 0->1->2 (len 2) and 0->3->4->2 (len 3).
        let g = Graph::directed_from(5, &[(0, 1), (1, 2), (0, 3), (3, 4), (4, 2)]);
        let yes = dag_decide(&g, 0, 2, &ResidueConstraint::new(3, [0]).unwrap()).unwrap();
        let Verdict::Yes(w) = &yes else { panic!("expected yes") };
        assert_eq!(w.vertices, vec![0, 3, 4, 2]);
        assert!(validate_witness(
            &g,
            &Query::path(0, 2, ResidueConstraint::new(3, [0]).unwrap()),
            w
        ));
        assert_eq!(
            dag_decide(&g, 0, 2, &ResidueConstraint::new(3, [1]).unwrap()).unwrap(),
            Verdict::No
        );
    }

    #[test]
    fn dag_solver_rejects_cyclic_input() {
        let g = Graph::directed_from(2, &[(0, 1), (1, 0)]);
        assert_eq!(
            dag_decide(&g, 0, 1, &ResidueConstraint::new(2, [1]).unwrap()),
            Err(PolyError::HasDirectedCycle)
        );
    }

    #[test]
    fn single_vertex_empty_path() {
        let g = Graph::directed(1);
        let v = dag_decide(&g, 0, 0, &ResidueConstraint::new(3, [0]).unwrap()).unwrap();
        assert_eq!(v, Verdict::Yes(Witness::path(vec![0])));
    }
}
