//! The product construction solves the walk relaxation in polynomial time;
//! on DAGs walks and simple paths coincide, giving an exact path solver.

use modgraph::poly::{dag_decide, directed_odd_cycle, walk_decide};
use modgraph::query::ResidueConstraint;
use modgraph::Graph;

fn main() {
    // On the path graph 0-1-2, no simple 0..2 path has length 1 mod 3, but
    // a walk can pace back and forth: 0,1,0,1,2 has length 4.
    let line = Graph::undirected_from(3, &[(0, 1), (1, 2)]);
    let c = ResidueConstraint::single(1, 3);
    println!("walk 0..2 = 1 mod 3: {:?}", walk_decide(&line, 0, 2, &c).unwrap());

    // Diamond DAG: 0->1->2 and 0->3->4->2 give lengths 2 and 3.
    let dag = Graph::directed_from(5, &[(0, 1), (1, 2), (0, 3), (3, 4), (4, 2)]);
    for p in 0..3 {
        let verdict = dag_decide(&dag, 0, 2, &ResidueConstraint::single(p, 3)).unwrap();
        println!("dag 0..2 = {p} mod 3: {verdict:?}");
    }

    // Directed parity cycles: the odd case is easy via the two-layer
    // product per strongly connected component.
    let merged = Graph::directed_from(4, &[(0, 1), (1, 0), (0, 2), (2, 3), (3, 0)]);
    println!("odd directed cycle:  {:?}", directed_odd_cycle(&merged).unwrap());
    let even_only = Graph::directed_from(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    println!("on directed C_4:     {:?}", directed_odd_cycle(&even_only).unwrap());
}
