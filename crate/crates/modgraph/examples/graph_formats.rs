//! The text formats: edge-list graphs, witness files, and the tree
//! decomposition exchange format, all round-tripping.

use modgraph::generate::{generate, GeneratorSpec};
use modgraph::io::{emit_graph, emit_witness, parse_graph, parse_witness};
use modgraph::query::Witness;
use modgraph::treewidth::{
    compute_decomposition, emit_decomposition, parse_decomposition, DecompositionOutcome,
};

fn main() {
    let text = "# a directed two-cycle\ng directed 2 2\n0 1\n1 0\n";
    let g = parse_graph(text).unwrap();
    println!("parsed {} vertices, {} arcs; canonical form:", g.vertex_count(), g.edge_count());
    print!("{}", emit_graph(&g));

    // Generators are deterministic in (descriptor, seed).
    let spec = GeneratorSpec::parse("sub:2:complete:3").unwrap();
    let sub = generate(&spec, 0).unwrap();
    println!("\n{} gives {} vertices, {} edges:", spec, sub.vertex_count(), sub.edge_count());
    print!("{}", emit_graph(&sub));

    let w = Witness::path(vec![0, 3, 1]);
    println!("\nwitness file for a 0-3-1 path:");
    print!("{}", emit_witness(&w));
    assert_eq!(parse_witness(&emit_witness(&w)).unwrap(), w);

    let gnm = generate(&GeneratorSpec::parse("gnm:8,10").unwrap(), 7).unwrap();
    if let DecompositionOutcome::Found(td) = compute_decomposition(&gnm, 4, 100_000).unwrap() {
        let text = emit_decomposition(&td);
        println!("\ndecomposition of gnm:8,10 (width {}):", td.width());
        print!("{text}");
        assert_eq!(parse_decomposition(&text).unwrap(), td);
    }
}
