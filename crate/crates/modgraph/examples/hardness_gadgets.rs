//! Hardness gadgets: embedding a two-disjoint-paths instance into modular
//! path and cycle questions on directed graphs, and recovering the two
//! disjoint paths from a gadget witness.

use modgraph::io::emit_graph;
use modgraph::oracle::{oracle_decide, oracle_k_disjoint, Budget, MultiVerdict};
use modgraph::query::Verdict;
use modgraph::reductions::{
    hardness_cycle_gadget, hardness_path_gadget, TranslatedWitness, TwoDisjointPathsInstance,
};
use modgraph::Graph;

fn main() {
    // A crossing instance: both terminal pairs route through the shared
    // middle vertex 4, so only one of the two paths can survive.
    let crossing = Graph::directed_from(5, &[(0, 4), (4, 1), (2, 4), (4, 3)]);
    let inst = TwoDisjointPathsInstance::new(crossing, 0, 1, 2, 3).unwrap();
    let mut budget = Budget::default();
    let direct = oracle_k_disjoint(&inst.graph, &inst.as_k_disjoint_query(), &mut budget).unwrap();
    println!("crossing instance solvable: {}", matches!(direct, MultiVerdict::Yes(_)));
    let gadget = hardness_path_gadget(&inst, 1, 2).unwrap();
    println!(
        "path gadget verdict:        {:?}",
        oracle_decide(&gadget.graph, &gadget.query, &mut budget).unwrap()
    );

    // Two independent arcs: the disjoint paths exist, and the gadget
    // witness splits back into them.
    let easy = Graph::directed_from(4, &[(0, 1), (2, 3)]);
    let inst = TwoDisjointPathsInstance::new(easy, 0, 1, 2, 3).unwrap();
    let gadget = hardness_cycle_gadget(&inst, 2, 3).unwrap();
    println!("\ncycle gadget ({}):", gadget.query.constraint);
    print!("{}", emit_graph(&gadget.graph));
    match oracle_decide(&gadget.graph, &gadget.query, &mut budget).unwrap() {
        Verdict::Yes(w) => {
            println!("gadget cycle: {:?} (length {})", w.vertices, w.length());
            if let Some(TranslatedWitness::Two(a, b)) = gadget.back_translate(&w) {
                println!("recovered paths: {:?} and {:?}", a.vertices, b.vertices);
            }
        }
        other => println!("unexpected: {other:?}"),
    }
}
