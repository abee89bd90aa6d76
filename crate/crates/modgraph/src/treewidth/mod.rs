//! Tree decompositions and the dynamic program for ModPath/ModCycle on
//! bounded-treewidth graphs, plus the combined tri-state solver for cycles
//! of length divisible by q.

pub mod decomposition;
pub mod dp;
pub mod nice;

pub use decomposition::{
    compute_decomposition, emit_decomposition, parse_decomposition, prove_treewidth_at_least,
    DecompositionFailure, DecompositionOutcome, TreeDecomposition,
};
pub use dp::{tw_decide, tw_decide_with_cap, tw_residue_spectrum, DEFAULT_STATE_CAP};
pub use nice::{make_nice, NiceDecomposition, NiceKind, NiceNode};

use crate::graph::Graph;
use crate::query::{Query, ResidueConstraint, Verdict};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwError {
    #[error("decomposition requires an undirected graph (decompose the underlying graph explicitly)")]
    DirectedInput,
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("decomposition/graph mismatch: {0}")]
    Mismatch(String),
    #[error("state budget of {0} exhausted")]
    StateBudget(usize),
}

/// Tri-state solver for "is there a simple cycle of length divisible by q".
///
/// Low-treewidth inputs get the exact DP answer. When no decomposition
/// within `width_cap` is found, a yes can still be certified existentially:
/// sufficiently high treewidth forces such a cycle. The exact threshold is
/// not built in; callers must supply one they trust via
/// `divisible_cycle_treewidth_threshold`, and the answer is `Unknown`
/// otherwise.
pub fn modcycle_zero_decide(
    g: &Graph,
    q: u32,
    width_cap: usize,
    effort: u64,
    divisible_cycle_treewidth_threshold: Option<usize>,
) -> Result<Verdict, TwError> {
    match compute_decomposition(g, width_cap, effort)? {
        DecompositionOutcome::Found(td) => {
            let nd = make_nice(&td, g)?;
            let query = Query::cycle(ResidueConstraint::single(0, q));
            tw_decide(g, &query, &nd)
        }
        DecompositionOutcome::NotFound(failure) => {
            if let Some(threshold) = divisible_cycle_treewidth_threshold {
                match prove_treewidth_at_least(g, threshold, effort) {
                    Some(true) => {
                        return Ok(Verdict::YesExistential(format!(
                            "treewidth proven >= {threshold}: the configured threshold \
                             guarantees a cycle of length 0 mod {q}; no witness constructed"
                        )));
                    }
                    Some(false) | None => {
                        return Ok(Verdict::Unknown(format!(
                            "{}; treewidth >= {threshold} not proven",
                            failure.reason
                        )));
                    }
                }
            }
            Ok(Verdict::Unknown(format!(
                "{}; no trusted treewidth threshold configured for the existential route",
                failure.reason
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle};

    #[test]
    fn c6_divisible_by_three() {
        let g = cycle(6).unwrap();
        let verdict = modcycle_zero_decide(&g, 3, 4, 100_000, None).unwrap();
        assert!(matches!(verdict, Verdict::Yes(_)));
    }

    #[test]
    fn c5_not_divisible_by_three() {
        let g = cycle(5).unwrap();
        let verdict = modcycle_zero_decide(&g, 3, 4, 100_000, None).unwrap();
        assert_eq!(verdict, Verdict::No);
    }

    #[test]
    fn unknown_without_threshold() {
        let g = complete(5);
        let verdict = modcycle_zero_decide(&g, 3, 2, 100_000, None).unwrap();
        assert!(matches!(verdict, Verdict::Unknown(_)));
    }

    #[test]
    fn existential_yes_with_proven_threshold() {
        // K_6 has treewidth 5; with a trusted threshold of 4 the solver
        // answers yes without a witness.
        let g = complete(6);
        let verdict = modcycle_zero_decide(&g, 3, 2, 10_000_000, Some(4)).unwrap();
        assert!(matches!(verdict, Verdict::YesExistential(_)));
    }

    #[test]
    fn threshold_configured_but_not_proven() {
        let g = complete(5); // treewidth 4
        let verdict = modcycle_zero_decide(&g, 2, 2, 10_000_000, Some(5)).unwrap();
        assert!(matches!(verdict, Verdict::Unknown(_)));
    }
}
