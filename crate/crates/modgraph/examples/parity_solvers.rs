//! Polynomial q=2 solvers on undirected graphs: block-chain parity for
//! paths, bipartiteness and block shape for cycles, with real witnesses.

use modgraph::generate::cycle;
use modgraph::poly::{all_same_parity, parity_cycle_decide, parity_path_decide};
use modgraph::Graph;

fn main() {
    // Bowtie: two triangles glued at vertex 2. Both parities are reachable
    // between the outer tips because each block is non-bipartite.
    let bowtie = Graph::undirected_from(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]);
    for p in 0..2 {
        let verdict = parity_path_decide(&bowtie, 0, 4, p).unwrap();
        println!("bowtie path 0..4, parity {p}: {verdict:?}");
    }
    println!("bowtie all-same(0,4): {:?}", all_same_parity(&bowtie, 0, 4).unwrap());

    // C_4 is bipartite: opposite corners are stuck at even distance.
    let c4 = cycle(4).unwrap();
    println!("C_4 path 0..2, parity 1: {:?}", parity_path_decide(&c4, 0, 2, 1).unwrap());
    println!("C_4 all-same(0,2):    {:?}", all_same_parity(&c4, 0, 2).unwrap());

    // Cycle side: C_5 has only its odd 5-cycle; adding the chord 0-2
    // creates the even cycle 0,2,3,4.
    let c5 = cycle(5).unwrap();
    println!("C_5 odd cycle:  {:?}", parity_cycle_decide(&c5, 1).unwrap());
    println!("C_5 even cycle: {:?}", parity_cycle_decide(&c5, 0).unwrap());
    let mut chorded = c5.clone();
    chorded.add_edge(0, 2).unwrap();
    println!("C_5+chord even: {:?}", parity_cycle_decide(&chorded, 0).unwrap());
}
