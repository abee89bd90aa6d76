//! Reductions in both directions with witness back-translation: force a
//! cycle through each edge, double lengths to turn paths into cycles, move
//! the remainder, and multiply the modulus.

use modgraph::generate::cycle;
use modgraph::io::emit_graph;
use modgraph::oracle::{oracle_decide, Budget};
use modgraph::query::{Query, Verdict};
use modgraph::reductions::{
    cycle_to_path, cycle_to_path_driver, modulus_multiply_driver, path_to_cycle, shift_remainder,
    TranslatedWitness,
};
use modgraph::Graph;

fn oracle(g: &Graph, q: &Query) -> Result<Verdict, String> {
    oracle_decide(g, q, &mut Budget::default()).map_err(|e| e.to_string())
}

fn main() {
    let c6 = cycle(6).unwrap();

    // Cycles through edge (0,1) of length 0 mod 3 become 0..1 paths of
    // length 2 mod 3 once the edge is removed.
    let out = cycle_to_path(&c6, 0, 3, (0, 1)).unwrap();
    println!("cycle-to-path query: {:?}", out.query);
    let verdict = oracle(&out.graph, &out.query).unwrap();
    if let Verdict::Yes(w) = &verdict {
        let back = out.back_translate(w).unwrap();
        println!("path witness {:?} back-translates to {back:?}", w.vertices);
    }
    // The Turing driver tries every edge.
    println!(
        "driver on C_6 (p=0, q=3): {:?}",
        cycle_to_path_driver(&c6, 0, 3, oracle).unwrap()
    );

    // Path-to-cycle on C_4: subdivide everything once, add the direct
    // fresh edge, and ask for an odd residue in the doubled modulus.
    let c4 = cycle(4).unwrap();
    let out = path_to_cycle(&c4, 0, 2, 0, 2).unwrap();
    println!("\npath-to-cycle instance ({} residue):", out.query.constraint);
    print!("{}", emit_graph(&out.graph));
    let verdict = oracle(&out.graph, &out.query).unwrap();
    if let Verdict::Yes(w) = &verdict {
        if let Some(TranslatedWitness::One(path)) = out.back_translate(w) {
            println!("cycle {:?} contracts to path {:?}", w.vertices, path.vertices);
        }
    }

    // Remainder shift: a pendant path moves the requested residue.
    let out = shift_remainder(&c4, 0, 2, 0, 3, 2).unwrap();
    println!("\nshift 0 -> 2 mod 3 appends {} vertices", out.graph.vertex_count() - 4);
    println!("shifted query: {:?} -> {:?}", out.query.source, out.query.target);

    // Modulus multiplication: answer a mod-3 question with a mod-6 solver.
    let verdict = modulus_multiply_driver(&c6, 0, 2, 2, 3, 2, oracle).unwrap();
    println!("\npath 0..2 = 2 mod 3 via mod-6 oracle: {verdict:?}");
}
