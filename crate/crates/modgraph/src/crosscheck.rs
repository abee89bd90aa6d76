//! Oracle-equivalence harnesses: every polynomial solver and every reduction
//! is replayed against exhaustive enumeration on small instances. The CLI
//! crosscheck command and the acceptance suite both drive these.

use crate::generate::gnm_random;
use crate::graph::Graph;
use crate::io::emit_graph;
use crate::oracle::{
    cycle_spectrum_mask, oracle_decide, oracle_k_disjoint, path_spectra_from, small_graph,
    small_graph_count, Budget, MultiVerdict,
};
use crate::poly::blocks::{classify_block, BlockDecomposition, BlockParityProfile};
use crate::poly::{dag_decide, directed_odd_cycle, walk_decide, ParityAnalysis};
use crate::query::{validate_witness, Query, QueryKind, ResidueConstraint, Verdict, Witness};
use crate::reductions::{
    cycle_to_path, cycle_to_path_driver, hardness_cycle_gadget, hardness_path_gadget,
    modulus_multiply_cycle_driver, modulus_multiply_driver, path_to_cycle, shift_remainder,
    TranslatedWitness, TwoDisjointPathsInstance,
};
use crate::treewidth::{
    compute_decomposition, make_nice, tw_decide, tw_residue_spectrum, DecompositionOutcome,
    DEFAULT_STATE_CAP,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// A disagreement between a solver and the oracle, with the offending graph
/// in edge-list format.
#[derive(Debug, Clone)]
pub struct Discrepancy {
    pub graph: String,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: u64,
    pub discrepancies: Vec<Discrepancy>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "crosscheck suite={} cases={} discrepancies={} status={}",
            self.name,
            self.cases,
            self.discrepancies.len(),
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

const DISCREPANCY_KEEP: usize = 8;

fn merge<I: IntoIterator<Item = (u64, Vec<Discrepancy>)>>(
    name: &'static str,
    parts: I,
) -> CheckReport {
    let mut cases = 0;
    let mut discrepancies = Vec::new();
    for (c, mut d) in parts {
        cases += c;
        if discrepancies.len() < DISCREPANCY_KEEP {
            discrepancies.append(&mut d);
            discrepancies.truncate(DISCREPANCY_KEEP);
        }
    }
    CheckReport {
        name,
        cases,
        discrepancies,
    }
}

fn big_budget() -> Budget {
    Budget::new(1_000_000_000)
}

/// Enumerates all simple cycles and returns the residue mask of those that
/// traverse the given edge. Independent of the oracle's cycle machinery;
/// used to check the per-edge cycle/path correspondence.
fn cycles_through_edge_mask(g: &Graph, e: (u32, u32), q: u32) -> u64 {
    fn dfs(
        g: &Graph,
        root: u32,
        u: u32,
        visited: &mut Vec<bool>,
        path: &mut Vec<u32>,
        e: (u32, u32),
        q: u32,
        acc: &mut u64,
    ) {
        if path.len() >= 3 && g.has_edge(u, root) && path[1] < u {
            let uses = path
                .windows(2)
                .any(|p| (p[0], p[1]) == e || (p[1], p[0]) == e)
                || (u, root) == e
                || (root, u) == e
                || (*path.last().unwrap(), root) == e;
            if uses {
                *acc |= 1 << (path.len() as u64 % q as u64);
            }
        }
        for &w in g.neighbors(u) {
            if w <= root || visited[w as usize] {
                continue;
            }
            visited[w as usize] = true;
            path.push(w);
            dfs(g, root, w, visited, path, e, q, acc);
            path.pop();
            visited[w as usize] = false;
        }
    }
    let e = (e.0.min(e.1), e.0.max(e.1));
    let mut acc = 0u64;
    for root in 0..g.vertex_count() as u32 {
        let mut visited = vec![false; g.vertex_count()];
        visited[root as usize] = true;
        let mut path = vec![root];
        dfs(g, root, root, &mut visited, &mut path, e, q, &mut acc);
    }
    acc
}

/// Oracle path-parity masks for every source, one sweep per source.
fn oracle_parity_masks(g: &Graph) -> Vec<Vec<u64>> {
    (0..g.vertex_count() as u32)
        .map(|s| path_spectra_from(g, s, 2, &mut big_budget()).expect("budget ample at this size"))
        .collect()
}

/// Parity path and cycle solvers against the oracle, over every connected
/// undirected graph with up to `max_n` vertices and every endpoint pair.
pub fn check_parity_solvers(max_n: usize) -> CheckReport {
    check_parity_solvers_with(max_n, |analysis, g, s, t, p| {
        analysis.path_decide(g, s, t, p)
    })
}

/// Hook used by the harness self-test: the path solver is injectable.
pub fn check_parity_solvers_with(
    max_n: usize,
    path_solver: impl Fn(&ParityAnalysis, &Graph, u32, u32, u8) -> Verdict + Sync,
) -> CheckReport {
    let parts: Vec<(u64, Vec<Discrepancy>)> = (1..=max_n)
        .map(|n| {
            let count = small_graph_count(n, false).expect("size guard");
            let (cases, discrepancies) = (0..count)
                .into_par_iter()
                .map(|index| {
                    let g = small_graph(n, false, index);
                    if !g.is_connected() {
                        return (0u64, Vec::new());
                    }
                    let mut local = Vec::new();
                    let mut cases = 0u64;
                    let analysis = ParityAnalysis::new(&g).expect("undirected");
                    let masks = oracle_parity_masks(&g);
                    for s in 0..n as u32 {
                        for t in s..n as u32 {
                            for p in 0..2u8 {
                                cases += 1;
                                let verdict = path_solver(&analysis, &g, s, t, p);
                                let oracle_yes = masks[s as usize][t as usize] >> p & 1 == 1;
                                if verdict.is_yes() != oracle_yes {
                                    local.push(Discrepancy {
                                        graph: emit_graph(&g),
                                        detail: format!(
                                            "parity path s={s} t={t} p={p}: solver={} oracle={}",
                                            verdict.is_yes(),
                                            oracle_yes
                                        ),
                                    });
                                    continue;
                                }
                                if let Verdict::Yes(w) = &verdict {
                                    let query =
                                        Query::path(s, t, ResidueConstraint::single(p as i64, 2));
                                    if !validate_witness(&g, &query, w) {
                                        local.push(Discrepancy {
                                            graph: emit_graph(&g),
                                            detail: format!(
                                                "parity path witness invalid s={s} t={t} p={p}: {:?}",
                                                w.vertices
                                            ),
                                        });
                                    }
                                }
                            }
                        }
                    }
                    let cycle_mask =
                        cycle_spectrum_mask(&g, 2, &mut big_budget(), 0b11).expect("budget");
                    for p in 0..2u8 {
                        cases += 1;
                        let verdict =
                            crate::poly::parity_cycle_decide(&g, p).expect("undirected");
                        let oracle_yes = cycle_mask >> p & 1 == 1;
                        if verdict.is_yes() != oracle_yes {
                            local.push(Discrepancy {
                                graph: emit_graph(&g),
                                detail: format!(
                                    "parity cycle p={p}: solver={} oracle={}",
                                    verdict.is_yes(),
                                    oracle_yes
                                ),
                            });
                        } else if let Verdict::Yes(w) = &verdict {
                            let query = Query::cycle(ResidueConstraint::single(p as i64, 2));
                            if !validate_witness(&g, &query, w) {
                                local.push(Discrepancy {
                                    graph: emit_graph(&g),
                                    detail: format!(
                                        "parity cycle witness invalid p={p}: {:?}",
                                        w.vertices
                                    ),
                                });
                            }
                        }
                    }
                    (cases, local)
                })
                .reduce(
                    || (0, Vec::new()),
                    |mut a, mut b| {
                        a.0 += b.0;
                        if a.1.len() < DISCREPANCY_KEEP {
                            a.1.append(&mut b.1);
                            a.1.truncate(DISCREPANCY_KEEP);
                        }
                        a
                    },
                );
            (cases, discrepancies)
        })
        .collect();
    merge("parity", parts)
}

/// The q=2 characterization facts against the oracle, over all undirected
/// graphs (connected or not) with up to `max_n` vertices: an odd cycle
/// exists iff the graph is non-bipartite; an even cycle exists iff some
/// block is neither a single edge nor an odd cycle.
pub fn check_parity_characterizations(max_n: usize) -> CheckReport {
    let parts: Vec<(u64, Vec<Discrepancy>)> = (1..=max_n)
        .map(|n| {
            let count = small_graph_count(n, false).expect("size guard");
            let (cases, discrepancies) = (0..count)
                .into_par_iter()
                .map(|index| {
                    let g = small_graph(n, false, index);
                    let mut local = Vec::new();
                    let mask = cycle_spectrum_mask(&g, 2, &mut big_budget(), 0b11).expect("budget");
                    let bd = BlockDecomposition::new(&g);
                    let non_bipartite = bd
                        .blocks
                        .iter()
                        .any(|b| matches!(classify_block(b), BlockParityProfile::NonBipartite { .. }));
                    let odd_fact = non_bipartite;
                    let even_fact = bd.blocks.iter().any(|b| {
                        let (nb, mb) = (b.vertices.len(), b.edges.len());
                        nb >= 3 && (mb > nb || nb % 2 == 0)
                    });
                    if odd_fact != (mask >> 1 & 1 == 1) {
                        local.push(Discrepancy {
                            graph: emit_graph(&g),
                            detail: format!(
                                "odd-cycle characterization: structural={odd_fact} oracle={}",
                                mask >> 1 & 1 == 1
                            ),
                        });
                    }
                    if even_fact != (mask & 1 == 1) {
                        local.push(Discrepancy {
                            graph: emit_graph(&g),
                            detail: format!(
                                "even-cycle characterization: structural={even_fact} oracle={}",
                                mask & 1 == 1
                            ),
                        });
                    }
                    (2u64, local)
                })
                .reduce(
                    || (0, Vec::new()),
                    |mut a, mut b| {
                        a.0 += b.0;
                        if a.1.len() < DISCREPANCY_KEEP {
                            a.1.append(&mut b.1);
                            a.1.truncate(DISCREPANCY_KEEP);
                        }
                        a
                    },
                );
            (cases, discrepancies)
        })
        .collect();
    merge("characterizations", parts)
}

/// Empirical basis of the parity path solver: in every 2-connected
/// non-bipartite graph, each vertex pair is joined by simple paths of both
/// parities.
pub fn check_block_lemma(max_n: usize) -> CheckReport {
    let parts: Vec<(u64, Vec<Discrepancy>)> = (3..=max_n)
        .map(|n| {
            let count = small_graph_count(n, false).expect("size guard");
            let (cases, discrepancies) = (0..count)
                .into_par_iter()
                .map(|index| {
                    let g = small_graph(n, false, index);
                    if !g.is_connected() {
                        return (0u64, Vec::new());
                    }
                    let bd = BlockDecomposition::new(&g);
                    if bd.blocks.len() != 1 || bd.blocks[0].vertices.len() != n {
                        return (0, Vec::new());
                    }
                    if !matches!(
                        classify_block(&bd.blocks[0]),
                        BlockParityProfile::NonBipartite { .. }
                    ) {
                        return (0, Vec::new());
                    }
                    let masks = oracle_parity_masks(&g);
                    let mut cases = 0u64;
                    let mut local = Vec::new();
                    for s in 0..n as u32 {
                        for t in s + 1..n as u32 {
                            cases += 1;
                            if masks[s as usize][t as usize] != 0b11 {
                                local.push(Discrepancy {
                                    graph: emit_graph(&g),
                                    detail: format!(
                                        "block lemma: spectrum mod 2 for ({s},{t}) is {:#b}",
                                        masks[s as usize][t as usize]
                                    ),
                                });
                            }
                        }
                    }
                    (cases, local)
                })
                .reduce(
                    || (0, Vec::new()),
                    |mut a, mut b| {
                        a.0 += b.0;
                        if a.1.len() < DISCREPANCY_KEEP {
                            a.1.append(&mut b.1);
                            a.1.truncate(DISCREPANCY_KEEP);
                        }
                        a
                    },
                );
            (cases, discrepancies)
        })
        .collect();
    merge("block-lemma", parts)
}

/// Independent walk oracle: boolean adjacency powers, layer by layer. The
/// residue mask of walk lengths from `s` to each vertex, using lengths
/// below n*q (longer walks revisit a product state).
pub fn matrix_walk_masks(g: &Graph, s: u32, q: u32) -> Vec<u64> {
    let n = g.vertex_count();
    let mut masks = vec![0u64; n];
    let mut reach = vec![false; n];
    reach[s as usize] = true;
    masks[s as usize] |= 1;
    for len in 1..(n as u64 * q as u64) {
        let mut next = vec![false; n];
        for v in 0..n as u32 {
            if reach[v as usize] {
                for &w in g.neighbors(v) {
                    next[w as usize] = true;
                }
            }
        }
        for v in 0..n {
            if next[v] {
                masks[v] |= 1 << (len % q as u64);
            }
        }
        reach = next;
    }
    masks
}

/// Walk residue masks from the product-construction side, via `walk_decide`
/// on every (target, residue) combination.
fn product_walk_masks(g: &Graph, s: u32, q: u32) -> Vec<u64> {
    let mut masks = vec![0u64; g.vertex_count()];
    for t in 0..g.vertex_count() as u32 {
        for r in 0..q {
            let c = ResidueConstraint::new(q, [r]).unwrap();
            let verdict = walk_decide(g, s, t, &c).expect("endpoints in range");
            if let Verdict::Yes(w) = &verdict {
                let query = Query::path(s, t, c.clone());
                if !crate::query::validate_walk(g, &query, w) {
                    // Signal through an impossible mask; caught by caller.
                    return vec![u64::MAX; g.vertex_count()];
                }
                masks[t as usize] |= 1 << r;
            }
        }
    }
    masks
}

/// Walk solver against the matrix-power oracle on every graph (undirected
/// up to `max_undirected`, directed up to `max_directed` vertices), and the
/// DAG solver against the simple-path oracle on every small DAG.
pub fn check_walks(max_undirected: usize, max_directed: usize) -> CheckReport {
    let mut parts: Vec<(u64, Vec<Discrepancy>)> = Vec::new();
    for (directed, max_n) in [(false, max_undirected), (true, max_directed)] {
        for n in 1..=max_n {
            let count = small_graph_count(n, directed).expect("size guard");
            let part = (0..count)
                .into_par_iter()
                .map(|index| {
                    let g = small_graph(n, directed, index);
                    let mut cases = 0u64;
                    let mut local = Vec::new();
                    for q in 1..=5u32 {
                        for s in 0..n as u32 {
                            cases += 1;
                            let expect = matrix_walk_masks(&g, s, q);
                            let got = product_walk_masks(&g, s, q);
                            if got != expect {
                                local.push(Discrepancy {
                                    graph: emit_graph(&g),
                                    detail: format!(
                                        "walk masks differ: s={s} q={q} product={got:?} matrix={expect:?}"
                                    ),
                                });
                            }
                        }
                    }
                    // On DAGs, walks are simple paths: the walk solver must
                    // agree with the exhaustive oracle.
                    if directed {
                        let acyclic = dag_decide(&g, 0, 0, &ResidueConstraint::new(1, [0]).unwrap())
                            .is_ok();
                        if acyclic {
                            for q in 1..=5u32 {
                                for s in 0..n as u32 {
                                    let spectra =
                                        path_spectra_from(&g, s, q, &mut big_budget())
                                            .expect("budget");
                                    for t in 0..n as u32 {
                                        for r in 0..q {
                                            cases += 1;
                                            let c = ResidueConstraint::new(q, [r]).unwrap();
                                            let verdict =
                                                dag_decide(&g, s, t, &c).expect("acyclic");
                                            let oracle_yes =
                                                spectra[t as usize] >> r & 1 == 1;
                                            if verdict.is_yes() != oracle_yes {
                                                local.push(Discrepancy {
                                                    graph: emit_graph(&g),
                                                    detail: format!(
                                                        "dag solver s={s} t={t} q={q} r={r}: solver={} oracle={}",
                                                        verdict.is_yes(),
                                                        oracle_yes
                                                    ),
                                                });
                                            } else if let Verdict::Yes(w) = &verdict {
                                                let query = Query::path(s, t, c.clone());
                                                if !validate_witness(&g, &query, w) {
                                                    local.push(Discrepancy {
                                                        graph: emit_graph(&g),
                                                        detail: format!(
                                                            "dag witness invalid s={s} t={t} q={q} r={r}"
                                                        ),
                                                    });
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    (cases, local)
                })
                .reduce(
                    || (0, Vec::new()),
                    |mut a, mut b| {
                        a.0 += b.0;
                        if a.1.len() < DISCREPANCY_KEEP {
                            a.1.append(&mut b.1);
                            a.1.truncate(DISCREPANCY_KEEP);
                        }
                        a
                    },
                );
            parts.push(part);
        }
    }
    merge("walks", parts)
}

/// Directed odd-cycle solver against exhaustive cycle enumeration on every
/// directed graph with up to `max_n` vertices, plus random digraphs.
pub fn check_directed_odd_cycle(max_n: usize, random_samples: usize, seed: u64) -> CheckReport {
    let mut parts: Vec<(u64, Vec<Discrepancy>)> = Vec::new();
    for n in 1..=max_n {
        let count = small_graph_count(n, true).expect("size guard");
        let part = (0..count)
            .into_par_iter()
            .map(|index| {
                let g = small_graph(n, true, index);
                (1u64, odd_cycle_case(&g).into_iter().collect::<Vec<_>>())
            })
            .reduce(
                || (0, Vec::new()),
                |mut a, mut b| {
                    a.0 += b.0;
                    if a.1.len() < DISCREPANCY_KEEP {
                        a.1.append(&mut b.1);
                        a.1.truncate(DISCREPANCY_KEEP);
                    }
                    a
                },
            );
        parts.push(part);
    }
    let random_part = (0..random_samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e3779b97f4a7c15u64.wrapping_mul(i + 1)));
            let n = rng.gen_range(6..=12);
            let m = rng.gen_range(0..=(2 * n).min(n * (n - 1)));
            let g = gnm_random(n, m, true, rng.gen()).expect("m within range");
            (1u64, odd_cycle_case(&g).into_iter().collect::<Vec<_>>())
        })
        .reduce(
            || (0, Vec::new()),
            |mut a, mut b| {
                a.0 += b.0;
                if a.1.len() < DISCREPANCY_KEEP {
                    a.1.append(&mut b.1);
                    a.1.truncate(DISCREPANCY_KEEP);
                }
                a
            },
        );
    parts.push(random_part);
    merge("directed-odd-cycle", parts)
}

fn odd_cycle_case(g: &Graph) -> Option<Discrepancy> {
    let verdict = directed_odd_cycle(g).expect("directed");
    let mask = cycle_spectrum_mask(g, 2, &mut big_budget(), 0b10).expect("budget");
    let oracle_yes = mask >> 1 & 1 == 1;
    if verdict.is_yes() != oracle_yes {
        return Some(Discrepancy {
            graph: emit_graph(g),
            detail: format!(
                "directed odd cycle: solver={} oracle={}",
                verdict.is_yes(),
                oracle_yes
            ),
        });
    }
    if let Verdict::Yes(w) = &verdict {
        let query = Query::cycle(ResidueConstraint::new(2, [1]).unwrap());
        if !validate_witness(g, &query, w) {
            return Some(Discrepancy {
                graph: emit_graph(g),
                detail: format!("directed odd cycle witness invalid: {:?}", w.vertices),
            });
        }
    }
    None
}

/// Samples a random connected graph whose computed width is at most 3,
/// retrying deterministically from the per-sample seed stream.
fn sample_low_width_graph(rng: &mut ChaCha8Rng) -> (Graph, crate::treewidth::NiceDecomposition) {
    loop {
        let n = rng.gen_range(4..=10usize);
        let m = rng.gen_range(n - 1..=(n + 4).min(n * (n - 1) / 2));
        let g = match gnm_random(n, m, false, rng.gen()) {
            Ok(g) => g,
            Err(_) => continue,
        };
        if !g.is_connected() {
            continue;
        }
        match compute_decomposition(&g, 3, 2_000_000) {
            Ok(DecompositionOutcome::Found(td)) => {
                let nd = make_nice(&td, &g).expect("valid decomposition");
                return (g, nd);
            }
            _ => continue,
        }
    }
}

/// Treewidth DP against the oracle on random low-width connected graphs:
/// all moduli up to 5, all residues, both kinds, random path endpoints.
pub fn check_treewidth_dp(samples: usize, seed: u64) -> CheckReport {
    let part = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (0xd1b54a32d192ed03u64.wrapping_mul(i + 1)));
            let (g, nd) = sample_low_width_graph(&mut rng);
            let n = g.vertex_count();
            let s = rng.gen_range(0..n) as u32;
            let t = rng.gen_range(0..n) as u32;
            let mut cases = 0u64;
            let mut local = Vec::new();
            for q in 1..=5u32 {
                let oracle_path = path_spectra_from(&g, s, q, &mut big_budget()).expect("budget")
                    [t as usize];
                let oracle_cycle =
                    cycle_spectrum_mask(&g, q, &mut big_budget(), 0).expect("budget");
                let dp_path: u64 = tw_residue_spectrum(
                    &g,
                    QueryKind::Path,
                    Some(s),
                    Some(t),
                    q,
                    &nd,
                    DEFAULT_STATE_CAP,
                )
                .expect("valid decomposition")
                .iter()
                .fold(0, |m, &r| m | 1 << r);
                let dp_cycle: u64 = tw_residue_spectrum(
                    &g,
                    QueryKind::Cycle,
                    None,
                    None,
                    q,
                    &nd,
                    DEFAULT_STATE_CAP,
                )
                .expect("valid decomposition")
                .iter()
                .fold(0, |m, &r| m | 1 << r);
                cases += 2 * q as u64;
                if dp_path != oracle_path {
                    local.push(Discrepancy {
                        graph: emit_graph(&g),
                        detail: format!(
                            "tw path spectrum s={s} t={t} q={q}: dp={dp_path:#b} oracle={oracle_path:#b}"
                        ),
                    });
                }
                if dp_cycle != oracle_cycle {
                    local.push(Discrepancy {
                        graph: emit_graph(&g),
                        detail: format!(
                            "tw cycle spectrum q={q}: dp={dp_cycle:#b} oracle={oracle_cycle:#b}"
                        ),
                    });
                }
                // Witnesses for the achieved residues.
                for r in 0..q {
                    if dp_path >> r & 1 == 1 {
                        let query = Query::path(s, t, ResidueConstraint::new(q, [r]).unwrap());
                        match tw_decide(&g, &query, &nd) {
                            Ok(Verdict::Yes(w)) if validate_witness(&g, &query, &w) => {}
                            other => local.push(Discrepancy {
                                graph: emit_graph(&g),
                                detail: format!(
                                    "tw path witness s={s} t={t} q={q} r={r}: {other:?}"
                                ),
                            }),
                        }
                    }
                    if dp_cycle >> r & 1 == 1 {
                        let query = Query::cycle(ResidueConstraint::new(q, [r]).unwrap());
                        match tw_decide(&g, &query, &nd) {
                            Ok(Verdict::Yes(w)) if validate_witness(&g, &query, &w) => {}
                            other => local.push(Discrepancy {
                                graph: emit_graph(&g),
                                detail: format!("tw cycle witness q={q} r={r}: {other:?}"),
                            }),
                        }
                    }
                }
            }
            (cases, local)
        })
        .reduce(
            || (0, Vec::new()),
            |mut a, mut b| {
                a.0 += b.0;
                if a.1.len() < DISCREPANCY_KEEP {
                    a.1.append(&mut b.1);
                    a.1.truncate(DISCREPANCY_KEEP);
                }
                a
            },
        );
    merge("treewidth", [part])
}

fn oracle_solver(g: &Graph, query: &Query) -> Result<Verdict, String> {
    oracle_decide(g, query, &mut big_budget()).map_err(|e| e.to_string())
}

/// Every reduction against the oracle on random small inputs: verdicts on
/// the input and transformed instances must agree, and yes-witnesses must
/// back-translate to validating input witnesses.
pub fn check_reductions(samples_per_reduction: usize, seed: u64) -> CheckReport {
    let part = (0..samples_per_reduction as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (0x94d049bb133111ebu64.wrapping_mul(i + 1)));
            let mut cases = 0u64;
            let mut local = Vec::new();

            // Undirected source instance.
            let n = rng.gen_range(2..=6usize);
            let m = rng.gen_range(0..=n * (n - 1) / 2);
            let g = gnm_random(n, m, false, rng.gen()).expect("m within range");
            let q = rng.gen_range(1..=4u32);
            let p = rng.gen_range(0..q) as i64;
            let s = rng.gen_range(0..n) as u32;
            let t = (s + rng.gen_range(1..n.max(2)) as u32) % n as u32;

            // Cycle-to-path: per-edge correspondence and the full driver.
            for e in g.edges().collect::<Vec<_>>() {
                cases += 1;
                let out = cycle_to_path(&g, p, q, e).expect("edge exists");
                let through = cycles_through_edge_mask(&g, e, q);
                let want = through >> (p as u32 % q) & 1 == 1;
                let got = oracle_solver(&out.graph, &out.query).unwrap();
                if got.is_yes() != want {
                    local.push(Discrepancy {
                        graph: emit_graph(&g),
                        detail: format!(
                            "cycle_to_path edge {e:?} p={p} q={q}: path-instance={} cycles-through-edge={want}",
                            got.is_yes()
                        ),
                    });
                }
                if let Verdict::Yes(w) = &got {
                    match out.back_translate(w) {
                        Some(TranslatedWitness::One(cycle)) => {
                            let query = Query::cycle(ResidueConstraint::single(p, q));
                            if !validate_witness(&g, &query, &cycle) {
                                local.push(Discrepancy {
                                    graph: emit_graph(&g),
                                    detail: format!(
                                        "cycle_to_path back-translation invalid: {:?}",
                                        cycle.vertices
                                    ),
                                });
                            }
                        }
                        other => local.push(Discrepancy {
                            graph: emit_graph(&g),
                            detail: format!("cycle_to_path back-translation failed: {other:?}"),
                        }),
                    }
                }
            }
            cases += 1;
            let driver = cycle_to_path_driver(&g, p, q, oracle_solver).unwrap();
            let direct = oracle_solver(&g, &Query::cycle(ResidueConstraint::single(p, q))).unwrap();
            if driver.is_yes() != direct.is_yes() {
                local.push(Discrepancy {
                    graph: emit_graph(&g),
                    detail: format!(
                        "cycle_to_path_driver p={p} q={q}: driver={} oracle={}",
                        driver.is_yes(),
                        direct.is_yes()
                    ),
                });
            }

            // Path-to-cycle (needs distinct endpoints).
            if s != t {
                cases += 1;
                let out = path_to_cycle(&g, s, t, p, q).expect("distinct endpoints");
                let direct =
                    oracle_solver(&g, &Query::path(s, t, ResidueConstraint::single(p, q)))
                        .unwrap();
                let transformed = oracle_solver(&out.graph, &out.query).unwrap();
                if direct.is_yes() != transformed.is_yes() {
                    local.push(Discrepancy {
                        graph: emit_graph(&g),
                        detail: format!(
                            "path_to_cycle s={s} t={t} p={p} q={q}: input={} output={}",
                            direct.is_yes(),
                            transformed.is_yes()
                        ),
                    });
                } else if let Verdict::Yes(w) = &transformed {
                    match out.back_translate(w) {
                        Some(TranslatedWitness::One(path)) => {
                            let query = Query::path(s, t, ResidueConstraint::single(p, q));
                            if !validate_witness(&g, &query, &path) {
                                local.push(Discrepancy {
                                    graph: emit_graph(&g),
                                    detail: format!(
                                        "path_to_cycle back-translation invalid: {:?}",
                                        path.vertices
                                    ),
                                });
                            }
                        }
                        other => local.push(Discrepancy {
                            graph: emit_graph(&g),
                            detail: format!("path_to_cycle back-translation failed: {other:?}"),
                        }),
                    }
                }
            }

            // Shift-remainder.
            cases += 1;
            let p_new = rng.gen_range(0..q) as i64;
            let out = shift_remainder(&g, s, t, p, q, p_new).expect("endpoints in range");
            let direct = oracle_solver(&g, &Query::path(s, t, ResidueConstraint::single(p, q)))
                .unwrap();
            let transformed = oracle_solver(&out.graph, &out.query).unwrap();
            if direct.is_yes() != transformed.is_yes() {
                local.push(Discrepancy {
                    graph: emit_graph(&g),
                    detail: format!(
                        "shift_remainder s={s} t={t} {p}->{p_new} mod {q}: input={} output={}",
                        direct.is_yes(),
                        transformed.is_yes()
                    ),
                });
            } else if let Verdict::Yes(w) = &transformed {
                match out.back_translate(w) {
                    Some(TranslatedWitness::One(path))
                        if validate_witness(
                            &g,
                            &Query::path(s, t, ResidueConstraint::single(p, q)),
                            &path,
                        ) => {}
                    other => local.push(Discrepancy {
                        graph: emit_graph(&g),
                        detail: format!("shift_remainder back-translation failed: {other:?}"),
                    }),
                }
            }

            // Modulus multiplication, path form and cycle form.
            cases += 1;
            let k = rng.gen_range(1..=3u32);
            let driver = modulus_multiply_driver(&g, s, t, p, q, k, oracle_solver).unwrap();
            if driver.is_yes() != direct.is_yes() {
                local.push(Discrepancy {
                    graph: emit_graph(&g),
                    detail: format!(
                        "modulus_multiply s={s} t={t} p={p} q={q} k={k}: driver={} oracle={}",
                        driver.is_yes(),
                        direct.is_yes()
                    ),
                });
            } else if let Verdict::Yes(w) = &driver {
                let query = Query::path(s, t, ResidueConstraint::single(p, q));
                if !validate_witness(&g, &query, &w) {
                    local.push(Discrepancy {
                        graph: emit_graph(&g),
                        detail: "modulus_multiply witness invalid".into(),
                    });
                }
            }
            cases += 1;
            let cycle_query = Query::cycle(ResidueConstraint::single(p, q));
            let cycle_direct = oracle_solver(&g, &cycle_query).unwrap();
            let cycle_driver =
                modulus_multiply_cycle_driver(&g, p, q, k, oracle_solver).unwrap();
            if cycle_driver.is_yes() != cycle_direct.is_yes() {
                local.push(Discrepancy {
                    graph: emit_graph(&g),
                    detail: format!(
                        "modulus_multiply_cycle p={p} q={q} k={k}: driver={} oracle={}",
                        cycle_driver.is_yes(),
                        cycle_direct.is_yes()
                    ),
                });
            } else if let Verdict::Yes(w) = &cycle_driver {
                if !validate_witness(&g, &cycle_query, &w) {
                    local.push(Discrepancy {
                        graph: emit_graph(&g),
                        detail: "modulus_multiply_cycle witness invalid".into(),
                    });
                }
            }

            // Hardness gadgets over a random directed source instance.
            let dn = rng.gen_range(4..=6usize);
            let dm = rng.gen_range(0..=(dn * (dn - 1)).min(2 * dn));
            let dg = gnm_random(dn, dm, true, rng.gen()).expect("m within range");
            let mut ends: Vec<u32> = (0..dn as u32).collect();
            for i in 0..4 {
                let j = rng.gen_range(i..ends.len());
                ends.swap(i, j);
            }
            let inst = TwoDisjointPathsInstance::new(dg.clone(), ends[0], ends[1], ends[2], ends[3])
                .expect("distinct endpoints");
            let disjoint = match oracle_k_disjoint(&dg, &inst.as_k_disjoint_query(), &mut big_budget())
                .expect("valid query")
            {
                MultiVerdict::Yes(_) => true,
                MultiVerdict::No => false,
                MultiVerdict::Unknown(r) => panic!("budget too small: {r}"),
            };

            let gq = rng.gen_range(2..=4u32);
            let gp = rng.gen_range(0..gq);
            cases += 1;
            let out = hardness_path_gadget(&inst, gp, gq).expect("parameters in range");
            let gadget = oracle_solver(&out.graph, &out.query).unwrap();
            if gadget.is_yes() != disjoint {
                local.push(Discrepancy {
                    graph: emit_graph(&dg),
                    detail: format!(
                        "hardness_path_gadget p={gp} q={gq} ends={ends:?}: gadget={} disjoint={disjoint}",
                        gadget.is_yes()
                    ),
                });
            } else if let Verdict::Yes(w) = &gadget {
                match out.back_translate(w) {
                    Some(TranslatedWitness::Two(a, b)) if disjoint_paths_valid(&dg, &inst, &a, &b) => {}
                    other => local.push(Discrepancy {
                        graph: emit_graph(&dg),
                        detail: format!("hardness_path back-translation failed: {other:?}"),
                    }),
                }
            }

            let cq = rng.gen_range(3..=4u32);
            let cp = rng.gen_range(1..cq);
            cases += 1;
            let out = hardness_cycle_gadget(&inst, cp, cq).expect("parameters in range");
            let gadget = oracle_solver(&out.graph, &out.query).unwrap();
            if gadget.is_yes() != disjoint {
                local.push(Discrepancy {
                    graph: emit_graph(&dg),
                    detail: format!(
                        "hardness_cycle_gadget p={cp} q={cq} ends={ends:?}: gadget={} disjoint={disjoint}",
                        gadget.is_yes()
                    ),
                });
            } else if let Verdict::Yes(w) = &gadget {
                match out.back_translate(w) {
                    Some(TranslatedWitness::Two(a, b)) if disjoint_paths_valid(&dg, &inst, &a, &b) => {}
                    other => local.push(Discrepancy {
                        graph: emit_graph(&dg),
                        detail: format!("hardness_cycle back-translation failed: {other:?}"),
                    }),
                }
            }

            (cases, local)
        })
        .reduce(
            || (0, Vec::new()),
            |mut a, mut b| {
                a.0 += b.0;
                if a.1.len() < DISCREPANCY_KEEP {
                    a.1.append(&mut b.1);
                    a.1.truncate(DISCREPANCY_KEEP);
                }
                a
            },
        );
    merge("reductions", [part])
}

fn disjoint_paths_valid(
    g: &Graph,
    inst: &TwoDisjointPathsInstance,
    a: &Witness,
    b: &Witness,
) -> bool {
    let any = ResidueConstraint::new(1, [0]).unwrap();
    if !validate_witness(g, &Query::path(inst.s, inst.t, any.clone()), a) {
        return false;
    }
    if !validate_witness(g, &Query::path(inst.s2, inst.t2, any), b) {
        return false;
    }
    let mut seen = std::collections::BTreeSet::new();
    a.vertices.iter().chain(b.vertices.iter()).all(|&v| seen.insert(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_suite_clean_at_small_scale() {
        let report = check_parity_solvers(4);
        assert!(report.passed(), "{:?}", report.discrepancies.first());
        assert!(report.cases > 0);
    }

    #[test]
    fn broken_solver_is_caught() {
        // Flip every answer for p = 1: the harness must produce a
        // counterexample graph.
        let report = check_parity_solvers_with(3, |analysis, g, s, t, p| {
            let real = analysis.path_decide(g, s, t, p);
            if p == 1 {
                match real {
                    Verdict::Yes(_) => Verdict::No,
                    Verdict::No => Verdict::Yes(Witness::path(vec![s])),
                    other => other,
                }
            } else {
                real
            }
        });
        assert!(!report.passed());
        assert!(report.discrepancies[0].graph.starts_with("g undirected"));
    }

    #[test]
    fn characterizations_clean_at_small_scale() {
        let report = check_parity_characterizations(4);
        assert!(report.passed(), "{:?}", report.discrepancies.first());
    }

    #[test]
    fn block_lemma_clean_at_small_scale() {
        let report = check_block_lemma(5);
        assert!(report.passed(), "{:?}", report.discrepancies.first());
        assert!(report.cases > 0);
    }

    #[test]
    fn walks_clean_at_small_scale() {
        let report = check_walks(4, 3);
        assert!(report.passed(), "{:?}", report.discrepancies.first());
    }

    #[test]
    fn directed_odd_cycle_clean_at_small_scale() {
        let report = check_directed_odd_cycle(4, 50, 11);
        assert!(report.passed(), "{:?}", report.discrepancies.first());
    }

    #[test]
    fn treewidth_clean_at_small_scale() {
        let report = check_treewidth_dp(25, 17);
        assert!(report.passed(), "{:?}", report.discrepancies.first());
    }

    #[test]
    fn reductions_clean_at_small_scale() {
        let report = check_reductions(25, 23);
        assert!(report.passed(), "{:?}", report.discrepancies.first());
    }

    #[test]
    fn subdivision_law_on_small_graphs() {
        // Subdividing by f multiplies every cycle length by f: the spectrum
        // mod f*q is exactly the scaled input spectrum.
        for index in [7u64, 63, 105, 511, 1023] {
            let g = small_graph(5, false, index);
            for f in [2usize, 3] {
                for q in 1..=3u32 {
                    let (sub, _) = crate::graph::subdivide(&g, f);
                    let base =
                        cycle_spectrum_mask(&g, q, &mut big_budget(), 0).expect("budget");
                    let scaled =
                        cycle_spectrum_mask(&sub, f as u32 * q, &mut big_budget(), 0)
                            .expect("budget");
                    let mut expect = 0u64;
                    for r in 0..q {
                        if base >> r & 1 == 1 {
                            expect |= 1 << ((f as u32 * r) % (f as u32 * q));
                        }
                    }
                    assert_eq!(scaled, expect, "index={index} f={f} q={q}");
                }
            }
        }
    }
}
