//! Constant-k disjoint families: exhaustive search for vertex-disjoint
//! paths or cycles under per-component residue constraints.

use modgraph::generate::complete;
use modgraph::oracle::{oracle_k_disjoint, Budget, KDisjointQuery};
use modgraph::query::{Query, ResidueConstraint};
use modgraph::Graph;

fn main() {
    let any = ResidueConstraint::new(1, [0]).unwrap();

    // Two disjoint triangles: each is its own witness.
    let two_triangles =
        Graph::undirected_from(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
    let two_cycles =
        KDisjointQuery::new(vec![Query::cycle(any.clone()), Query::cycle(any.clone())]).unwrap();
    println!(
        "two triangles, 2 disjoint cycles: {:?}",
        oracle_k_disjoint(&two_triangles, &two_cycles, &mut Budget::default()).unwrap()
    );

    // K_4 cannot host two disjoint cycles: six vertices are needed.
    println!(
        "K_4, 2 disjoint cycles:           {:?}",
        oracle_k_disjoint(&complete(4), &two_cycles, &mut Budget::default()).unwrap()
    );

    // Parity-constrained disjoint paths across K_6.
    let odd = ResidueConstraint::single(1, 2);
    let even = ResidueConstraint::single(0, 2);
    let mixed = KDisjointQuery::new(vec![
        Query::path(0, 1, odd),
        Query::path(2, 3, even),
    ])
    .unwrap();
    println!(
        "K_6, odd 0..1 + even 2..3 paths:  {:?}",
        oracle_k_disjoint(&complete(6), &mixed, &mut Budget::default()).unwrap()
    );
}
