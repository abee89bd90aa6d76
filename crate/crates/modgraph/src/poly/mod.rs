//! Polynomial-time solvers: walks via the product construction, paths on
//! DAGs, parity-constrained paths and cycles on undirected graphs, and
//! directed odd-cycle detection.

pub mod blocks;
mod odd_cycle;
mod parity;
mod product;

pub use odd_cycle::{directed_any_cycle, directed_odd_cycle, strongly_connected_components};
pub use parity::{all_same_parity, parity_cycle_decide, parity_path_decide, ParityAnalysis};
pub use product::{dag_decide, walk_decide};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("solver requires a directed graph")]
    NotDirected,
    #[error("solver requires an undirected graph")]
    NotUndirected,
    #[error("input has a directed cycle")]
    HasDirectedCycle,
    #[error("endpoint {0} out of range (vertex count {1})")]
    EndpointOutOfRange(u32, usize),
    #[error("vertices {0} and {1} are not connected")]
    Disconnected(u32, u32),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::generate::{cycle, path_graph};
    use crate::query::{validate_witness, Query, ResidueConstraint, Verdict};

    fn path_query(s: u32, t: u32, p: i64) -> Query {
        Query::path(s, t, ResidueConstraint::single(p, 2))
    }

    fn bowtie() -> Graph {
        Graph::undirected_from(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    }

    #[test]
    fn bowtie_achieves_both_parities() {
        let g = bowtie();
        for p in 0..2u8 {
            let verdict = parity_path_decide(&g, 0, 4, p).unwrap();
            let Verdict::Yes(w) = &verdict else {
                panic!("expected yes for p={p}, got {verdict:?}")
            };
            assert!(validate_witness(&g, &path_query(0, 4, p as i64), w));
        }
    }

    #[test]
    fn c4_opposite_corners_are_even_only() {
        let g = cycle(4).unwrap();
        let yes = parity_path_decide(&g, 0, 2, 0).unwrap();
        assert!(matches!(yes, Verdict::Yes(_)));
        assert_eq!(parity_path_decide(&g, 0, 2, 1).unwrap(), Verdict::No);
    }

    #[test]
    fn path_graph_has_unique_parity() {
        let g = path_graph(3);
        assert!(matches!(parity_path_decide(&g, 0, 2, 0).unwrap(), Verdict::Yes(_)));
        assert_eq!(parity_path_decide(&g, 0, 2, 1).unwrap(), Verdict::No);
        assert_eq!(all_same_parity(&g, 0, 2).unwrap(), (true, Some(0)));
    }

    #[test]
    fn same_endpoint_is_the_empty_path() {
        let g = path_graph(3);
        assert_eq!(
            parity_path_decide(&g, 1, 1, 0).unwrap(),
            Verdict::Yes(crate::query::Witness::path(vec![1]))
        );
        assert_eq!(parity_path_decide(&g, 1, 1, 1).unwrap(), Verdict::No);
    }

    #[test]
    fn disconnected_endpoints_say_no() {
        let g = Graph::undirected_from(4, &[(0, 1), (2, 3)]);
        assert_eq!(parity_path_decide(&g, 0, 3, 0).unwrap(), Verdict::No);
        assert_eq!(parity_path_decide(&g, 0, 3, 1).unwrap(), Verdict::No);
        assert_eq!(all_same_parity(&g, 0, 3), Err(PolyError::Disconnected(0, 3)));
    }

    #[test]
    fn bowtie_mixed_parities_reported() {
        assert_eq!(all_same_parity(&bowtie(), 0, 4).unwrap(), (false, None));
        let edge = path_graph(2);
        assert_eq!(all_same_parity(&edge, 0, 1).unwrap(), (true, Some(1)));
    }

    #[test]
    fn c5_cycles_are_odd_only() {
        let g = cycle(5).unwrap();
        let odd = parity_cycle_decide(&g, 1).unwrap();
        assert_eq!(odd.witness().map(|w| w.vertices.len()), Some(5));
        assert_eq!(parity_cycle_decide(&g, 0).unwrap(), Verdict::No);
    }

    #[test]
    fn chord_gives_even_cycle() {
        // C_5 plus chord 0-2: cycle lengths {3, 4, 5}.
        let mut g = cycle(5).unwrap();
        g.add_edge(0, 2).unwrap();
        let even = parity_cycle_decide(&g, 0).unwrap();
        let Verdict::Yes(w) = &even else { panic!("expected yes") };
        assert_eq!(w.vertices.len() % 2, 0);
        assert!(validate_witness(
            &g,
            &Query::cycle(ResidueConstraint::single(0, 2)),
            w
        ));
    }

    #[test]
    fn trees_have_no_cycles_of_either_parity() {
        let g = path_graph(5);
        assert_eq!(parity_cycle_decide(&g, 0).unwrap(), Verdict::No);
        assert_eq!(parity_cycle_decide(&g, 1).unwrap(), Verdict::No);
    }

    #[test]
    fn even_cycle_block_is_its_own_witness() {
        let g = cycle(6).unwrap();
        let even = parity_cycle_decide(&g, 0).unwrap();
        let Verdict::Yes(w) = &even else { panic!("expected yes") };
        assert_eq!(w.vertices.len(), 6);
        assert_eq!(parity_cycle_decide(&g, 1).unwrap(), Verdict::No);
    }

    #[test]
    fn ear_construction_on_theta_graph() {
        // Theta graph: poles 0 and 1 joined by paths of lengths 1, 2, 2
        // through vertices 2 and 3: non-bipartite (triangle 0,1,2), m > n.
        let g = Graph::undirected_from(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]);
        let even = parity_cycle_decide(&g, 0).unwrap();
        let Verdict::Yes(w) = &even else { panic!("expected yes") };
        assert_eq!(w.vertices.len() % 2, 0);
        assert!(validate_witness(
            &g,
            &Query::cycle(ResidueConstraint::single(0, 2)),
            w
        ));
    }
}
