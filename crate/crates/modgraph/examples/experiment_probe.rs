//! Ensemble probes at desk scale: fraction of sampled graphs whose cycle
//! spectrum satisfies a predicate. Empirical checks of existence claims,
//! not proofs.

use modgraph::cli::experiment::{run_experiment, ExperimentSpec};

fn main() {
    // Dense regular graphs reliably contain cycles of length 0 mod 3;
    // trees never contain any cycle.
    let spec = ExperimentSpec::parse(
        "seed 42\n\
         samples 20\n\
         q 3\n\
         kind cycle\n\
         probe zero-achieved\n\
         grid regular:12,6\n\
         grid gnm:12,18\n\
         grid path:12\n",
    )
    .unwrap();
    print!("{}", run_experiment(&spec, 100_000_000));

    // Bipartite ensembles never reach odd residues.
    let spec = ExperimentSpec::parse(
        "seed 7\n\
         samples 10\n\
         q 2\n\
         kind cycle\n\
         probe residue-achieved 1\n\
         grid bipartite:3,3\n\
         grid bipartite:4,4\n",
    )
    .unwrap();
    print!("{}", run_experiment(&spec, 100_000_000));
}
