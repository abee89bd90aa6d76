//! Property tests for the cross-module invariants: format round-trips,
//! verdict monotonicity in the allowed set, and decide/spectrum agreement.

use modgraph::graph::Graph;
use modgraph::io::{emit_graph, parse_graph};
use modgraph::oracle::{oracle_decide, oracle_spectrum, Budget};
use modgraph::query::{Query, QueryKind, ResidueConstraint, Verdict};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (any::<bool>(), 0..=max_n)
        .prop_flat_map(|(directed, n)| {
            let mut pairs = Vec::new();
            for u in 0..n as u32 {
                for v in 0..n as u32 {
                    if u == v || (!directed && u > v) {
                        continue;
                    }
                    pairs.push((u, v));
                }
            }
            let len = pairs.len();
            (
                Just(directed),
                Just(n),
                Just(pairs),
                proptest::collection::vec(any::<bool>(), len),
            )
        })
        .prop_map(|(directed, n, pairs, mask)| {
            let mut g = Graph::new(directed, n);
            for (&(u, v), &keep) in pairs.iter().zip(&mask) {
                if keep {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        })
}

proptest! {
    #[test]
    fn emit_parse_round_trip(g in graph_strategy(12)) {
        let text = emit_graph(&g);
        let parsed = parse_graph(&text).unwrap();
        prop_assert_eq!(parsed, g);
    }

    /// Enlarging the allowed remainder set never flips a yes to a no.
    #[test]
    fn verdict_monotone_in_allowed(
        g in graph_strategy(5),
        q in 1u32..=4,
        kind_cycle in any::<bool>(),
        s in 0u32..5,
        t in 0u32..5,
        r in 0u32..4,
        extra in 0u32..4,
    ) {
        let n = g.vertex_count() as u32;
        prop_assume!(r < q && extra < q);
        let make = |allowed: Vec<u32>| -> Option<Query> {
            let c = ResidueConstraint::new(q, allowed).ok()?;
            if kind_cycle {
                Some(Query::cycle(c))
            } else if n > 0 {
                Some(Query::path(s % n, t % n, c))
            } else {
                None
            }
        };
        let Some(small) = make(vec![r]) else { return Ok(()) };
        let mut wide_set = vec![r, extra];
        wide_set.dedup();
        let Some(wide) = make(wide_set) else { return Ok(()) };
        let v1 = oracle_decide(&g, &small, &mut Budget::default()).unwrap();
        let v2 = oracle_decide(&g, &wide, &mut Budget::default()).unwrap();
        if v1.is_yes() {
            prop_assert!(v2.is_yes(), "{v1:?} vs {v2:?}");
        }
    }

    /// `oracle_decide` with a singleton set says yes exactly when the
    /// residue is in the spectrum.
    #[test]
    fn decide_matches_spectrum(
        g in graph_strategy(5),
        q in 1u32..=5,
        kind_cycle in any::<bool>(),
        s in 0u32..5,
        t in 0u32..5,
    ) {
        let n = g.vertex_count() as u32;
        let (kind, s, t) = if kind_cycle {
            (QueryKind::Cycle, None, None)
        } else {
            prop_assume!(n > 0);
            (QueryKind::Path, Some(s % n), Some(t % n))
        };
        let spectrum = oracle_spectrum(&g, kind, s, t, q, &mut Budget::default()).unwrap();
        for r in 0..q {
            let c = ResidueConstraint::new(q, [r]).unwrap();
            let query = match kind {
                QueryKind::Cycle => Query::cycle(c),
                QueryKind::Path => Query::path(s.unwrap(), t.unwrap(), c),
            };
            let verdict = oracle_decide(&g, &query, &mut Budget::default()).unwrap();
            prop_assert_eq!(
                verdict.is_yes(),
                spectrum.achieved.contains(&r),
                "kind={:?} r={} spectrum={:?} verdict={:?}",
                kind, r, &spectrum.achieved, &verdict
            );
            if let Verdict::Yes(w) = &verdict {
                prop_assert!(modgraph::query::validate_witness(&g, &query, w));
            }
        }
    }
}
