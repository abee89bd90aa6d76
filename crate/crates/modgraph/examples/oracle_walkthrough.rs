//! Ground-truth oracle on small graphs: exact verdicts, residue spectra,
//! and the all-residues-equal test.

use modgraph::generate::{complete, cycle};
use modgraph::oracle::{oracle_all_same, oracle_decide, oracle_spectrum, Budget};
use modgraph::query::{Query, QueryKind, ResidueConstraint};

fn main() {
    let mut budget = Budget::default();

    // Both 0-2 paths in C_4 have length 2, so no odd path exists.
    let c4 = cycle(4).unwrap();
    let query = Query::path(0, 2, ResidueConstraint::single(1, 2));
    println!("C_4, odd path 0..2:   {:?}", oracle_decide(&c4, &query, &mut budget).unwrap());

    // K_3 offers paths of lengths 1 and 2 between any two vertices.
    let k3 = complete(3);
    let query = Query::path(0, 1, ResidueConstraint::single(0, 2));
    println!("K_3, even path 0..1:  {:?}", oracle_decide(&k3, &query, &mut budget).unwrap());

    // Spectra: K_4 has cycle lengths {3, 4}.
    let k4 = complete(4);
    let spectrum = oracle_spectrum(&k4, QueryKind::Cycle, None, None, 3, &mut budget).unwrap();
    println!("K_4 cycles mod 3:     {}", spectrum.report_line());

    // All-same test: C_4 pins the 0-2 residue, K_3 does not pin 0-1.
    println!("C_4 all-same (0,2):   {:?}", oracle_all_same(&c4, 0, 2, 2, &mut budget).unwrap());
    println!("K_3 all-same (0,1):   {:?}", oracle_all_same(&k3, 0, 1, 2, &mut budget).unwrap());
    println!("budget used: {} nodes", budget.used());
}
