//! Acceptance suite: each test pins one gate criterion at its full scale
//! and prints a pass/fail line. Run with
//! `cargo test -p modgraph --test acceptance -- --nocapture`.

use modgraph::crosscheck::{
    check_block_lemma, check_directed_odd_cycle, check_parity_characterizations,
    check_parity_solvers, check_reductions, check_treewidth_dp, check_walks, CheckReport,
};
use modgraph::reductions::gadget_split;

fn gate(criterion: &str, report: &CheckReport) {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    println!(
        "ACCEPTANCE {criterion}: {status} ({} cases, {} discrepancies)",
        report.cases,
        report.discrepancies.len()
    );
    if let Some(d) = report.discrepancies.first() {
        println!("first discrepancy: {}\n{}", d.detail, d.graph);
    }
    assert!(report.passed(), "{criterion} failed: {:?}", report.discrepancies.first());
}

/// Criterion 1: parity path and cycle solvers agree with the oracle on all
/// connected undirected graphs with up to 7 vertices, every endpoint pair,
/// both parities.
#[test]
fn criterion_1_parity_solvers_vs_oracle() {
    gate("1 parity-solvers", &check_parity_solvers(7));
}

/// Criterion 2: the treewidth DP agrees with the oracle on at least 2000
/// random connected low-width graphs, all moduli up to 5, all residues,
/// both kinds.
#[test]
fn criterion_2_treewidth_dp_vs_oracle() {
    gate("2 treewidth-dp", &check_treewidth_dp(2000, 0x5eed));
}

/// Criterion 3: reduction soundness over at least 500 random inputs per
/// reduction, with witness back-translation.
#[test]
fn criterion_3_reduction_soundness() {
    gate("3 reductions", &check_reductions(500, 0xacc3));
}

/// Criterion 4: the walk solver agrees with the boolean matrix-power oracle
/// on all undirected graphs up to 6 vertices and all directed graphs up to
/// 5 vertices, and with the exhaustive oracle on every DAG among them.
#[test]
fn criterion_4_walk_product_construction() {
    gate("4 walks", &check_walks(6, 5));
}

/// Criterion 5: the q=2 characterization facts hold exactly on all
/// undirected graphs up to 7 vertices.
#[test]
fn criterion_5_parity_characterizations() {
    gate("5 characterizations", &check_parity_characterizations(7));
}

/// Criterion 6: the directed odd-cycle solver agrees with the oracle on all
/// directed graphs up to 5 vertices and 2000 random digraphs up to 12.
#[test]
fn criterion_6_directed_odd_cycle() {
    gate("6 directed-odd-cycle", &check_directed_odd_cycle(5, 2000, 0xd1c3));
}

/// Criterion 7: in every 2-connected non-bipartite graph on up to 7
/// vertices, every vertex pair achieves both path parities.
#[test]
fn criterion_7_block_lemma() {
    gate("7 block-lemma", &check_block_lemma(7));
}

/// Criterion 8: the cycle-gadget connector arithmetic holds for every
/// modulus up to 50.
#[test]
fn criterion_8_gadget_arithmetic() {
    let mut cases = 0u64;
    for q in 3..=50u32 {
        for p in 1..q {
            let (p1, p2) = gadget_split(p, q).expect("parameters in range");
            assert!(0 < p1 && p1 < q, "p1 out of range for p={p} q={q}");
            assert!(0 < p2 && p2 < q, "p2 out of range for p={p} q={q}");
            assert_ne!(p1, p, "p1 collides for p={p} q={q}");
            assert_ne!(p2, p, "p2 collides for p={p} q={q}");
            assert_eq!((p1 + p2) % q, p, "sum wrong for p={p} q={q}");
            cases += 1;
        }
    }
    println!("ACCEPTANCE 8 gadget-arithmetic: PASS ({cases} cases, 0 discrepancies)");
}

/// Criterion 9: repeated CLI runs with fixed seeds produce byte-identical
/// reports for solve, spectrum, and experiment.
#[test]
fn criterion_9_report_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("k4.g");
    std::fs::write(&graph, "g undirected 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let spec = dir.path().join("probe.spec");
    std::fs::write(
        &spec,
        "seed 11\nsamples 6\nq 3\nkind cycle\nprobe zero-achieved\ngrid gnm:8,12\ngrid regular:8,3\n",
    )
    .unwrap();
    let graph = graph.to_str().unwrap();
    let spec = spec.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "solve", "--graph", graph, "--kind", "cycle", "--q", "3", "--p", "1",
            "--solver", "oracle", "--seed", "7",
        ],
        vec![
            "solve", "--graph", graph, "--kind", "path", "--s", "0", "--t", "3",
            "--q", "4", "--p", "2", "--solver", "treewidth", "--seed", "7",
        ],
        vec!["spectrum", "--graph", graph, "--kind", "cycle", "--q", "5"],
        vec!["experiment", "--spec", spec, "--seed", "11"],
    ];
    for args in &commands {
        let mut runs = Vec::new();
        for _ in 0..2 {
            let mut out = Vec::new();
            let mut err = Vec::new();
            let code =
                modgraph::cli::run_captured(args.iter().map(|s| s.to_string()), &mut out, &mut err);
            runs.push((code, out));
        }
        assert_eq!(runs[0].0, runs[1].0, "exit codes differ for {args:?}");
        assert_eq!(
            runs[0].1, runs[1].1,
            "stdout differs for {args:?}: {}",
            String::from_utf8_lossy(&runs[0].1)
        );
    }
    println!(
        "ACCEPTANCE 9 determinism: PASS ({} commands, 0 discrepancies)",
        commands.len()
    );
}
