//! Deterministic graph generators for tests, probes, and experiments.
//! Randomized families are driven by a seeded ChaCha stream, so a fixed
//! `(descriptor, seed)` pair always yields the same graph.

use crate::graph::{subdivide, Graph};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("infeasible descriptor: {0}")]
    Infeasible(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Cycle { n: usize },
    PathGraph { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    GnmRandom { n: usize, m: usize, directed: bool },
    RandomRegular { n: usize, d: usize },
    Subdivision { base: Box<GeneratorSpec>, factor: usize },
}

impl GeneratorSpec {
    /// Parses the compact form used by experiment specs and the CLI:
    /// `cycle:5`, `path:4`, `complete:6`, `bipartite:3,3`,
    /// `gnm:10,15[,directed]`, `regular:12,6`, `sub:2:<base>`.
    pub fn parse(text: &str) -> Result<Self, GenerateError> {
        let bad = || GenerateError::Infeasible(format!("unrecognized generator {text:?}"));
        let (name, rest) = text.split_once(':').ok_or_else(bad)?;
        let ints = |s: &str| -> Result<Vec<usize>, GenerateError> {
            s.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        match name {
            "cycle" => Ok(GeneratorSpec::Cycle { n: ints(rest)?[0] }),
            "path" => Ok(GeneratorSpec::PathGraph { n: ints(rest)?[0] }),
            "complete" => Ok(GeneratorSpec::Complete { n: ints(rest)?[0] }),
            "bipartite" => {
                let v = ints(rest)?;
                if v.len() != 2 {
                    return Err(bad());
                }
                Ok(GeneratorSpec::CompleteBipartite { a: v[0], b: v[1] })
            }
            "gnm" => {
                let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
                match parts.as_slice() {
                    [n, m] => Ok(GeneratorSpec::GnmRandom {
                        n: n.parse().map_err(|_| bad())?,
                        m: m.parse().map_err(|_| bad())?,
                        directed: false,
                    }),
                    [n, m, "directed"] => Ok(GeneratorSpec::GnmRandom {
                        n: n.parse().map_err(|_| bad())?,
                        m: m.parse().map_err(|_| bad())?,
                        directed: true,
                    }),
                    _ => Err(bad()),
                }
            }
            "regular" => {
                let v = ints(rest)?;
                if v.len() != 2 {
                    return Err(bad());
                }
                Ok(GeneratorSpec::RandomRegular { n: v[0], d: v[1] })
            }
            "sub" => {
                let (factor, base) = rest.split_once(':').ok_or_else(bad)?;
                Ok(GeneratorSpec::Subdivision {
                    base: Box::new(GeneratorSpec::parse(base)?),
                    factor: factor.trim().parse().map_err(|_| bad())?,
                })
            }
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeneratorSpec::Cycle { n } => write!(f, "cycle:{n}"),
            GeneratorSpec::PathGraph { n } => write!(f, "path:{n}"),
            GeneratorSpec::Complete { n } => write!(f, "complete:{n}"),
            GeneratorSpec::CompleteBipartite { a, b } => write!(f, "bipartite:{a},{b}"),
            GeneratorSpec::GnmRandom { n, m, directed } => {
                write!(f, "gnm:{n},{m}{}", if *directed { ",directed" } else { "" })
            }
            GeneratorSpec::RandomRegular { n, d } => write!(f, "regular:{n},{d}"),
            GeneratorSpec::Subdivision { base, factor } => write!(f, "sub:{factor}:{base}"),
        }
    }
}

pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<Graph, GenerateError> {
    match spec {
        GeneratorSpec::Cycle { n } => cycle(*n),
        GeneratorSpec::PathGraph { n } => Ok(path_graph(*n)),
        GeneratorSpec::Complete { n } => Ok(complete(*n)),
        GeneratorSpec::CompleteBipartite { a, b } => Ok(complete_bipartite(*a, *b)),
        GeneratorSpec::GnmRandom { n, m, directed } => gnm_random(*n, *m, *directed, seed),
        GeneratorSpec::RandomRegular { n, d } => random_regular(*n, *d, seed),
        GeneratorSpec::Subdivision { base, factor } => {
            if *factor == 0 {
                return Err(GenerateError::Infeasible(
                    "subdivision factor must be at least 1".into(),
                ));
            }
            let g = generate(base, seed)?;
            Ok(subdivide(&g, *factor).0)
        }
    }
}

pub fn cycle(n: usize) -> Result<Graph, GenerateError> {
    if n < 3 {
        return Err(GenerateError::Infeasible(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut g = Graph::undirected(n);
    for i in 0..n {
        g.add_edge(i as u32, ((i + 1) % n) as u32).unwrap();
    }
    Ok(g)
}

pub fn path_graph(n: usize) -> Graph {
    let mut g = Graph::undirected(n);
    for i in 1..n {
        g.add_edge((i - 1) as u32, i as u32).unwrap();
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::undirected(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u as u32, v as u32).unwrap();
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::undirected(a + b);
    for u in 0..a {
        for v in 0..b {
            g.add_edge(u as u32, (a + v) as u32).unwrap();
        }
    }
    g
}

/// Uniform simple graph with exactly `m` edges, sampled without replacement
/// from all candidate pairs.
pub fn gnm_random(n: usize, m: usize, directed: bool, seed: u64) -> Result<Graph, GenerateError> {
    let max = if directed {
        n.saturating_mul(n.saturating_sub(1))
    } else {
        n.saturating_mul(n.saturating_sub(1)) / 2
    };
    if m > max {
        return Err(GenerateError::Infeasible(format!(
            "gnm: {m} edges requested but at most {max} possible on {n} vertices"
        )));
    }
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(max);
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u == v {
                continue;
            }
            if directed || u < v {
                pairs.push((u, v));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Partial Fisher-Yates: the first m slots end up a uniform sample.
    for i in 0..m {
        let j = rng.gen_range(i..pairs.len());
        pairs.swap(i, j);
    }
    let mut g = Graph::new(directed, n);
    for &(u, v) in &pairs[..m] {
        g.add_edge(u, v).unwrap();
    }
    Ok(g)
}

/// Random d-regular simple graph: uniformly pick admissible edges among
/// vertices with remaining degree, restarting on the rare dead end.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    if n * d % 2 != 0 {
        return Err(GenerateError::Infeasible(format!(
            "regular: n*d must be even, got n={n} d={d}"
        )));
    }
    if d >= n && !(n == 0 || d == 0) {
        return Err(GenerateError::Infeasible(format!(
            "regular: degree {d} needs more than {n} vertices"
        )));
    }
    if d == 0 || n == 0 {
        return Ok(Graph::undirected(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..10_000 {
        let mut g = Graph::undirected(n);
        let mut remaining = vec![d; n];
        for _ in 0..n * d / 2 {
            let mut candidates = Vec::new();
            for u in 0..n {
                if remaining[u] == 0 {
                    continue;
                }
                for v in u + 1..n {
                    if remaining[v] > 0 && !g.has_edge(u as u32, v as u32) {
                        candidates.push((u, v));
                    }
                }
            }
            if candidates.is_empty() {
                continue 'attempt;
            }
            let (u, v) = candidates[rng.gen_range(0..candidates.len())];
            g.add_edge(u as u32, v as u32).unwrap();
            remaining[u] -= 1;
            remaining[v] -= 1;
        }
        return Ok(g);
    }
    Err(GenerateError::Infeasible(format!(
        "regular: no admissible completion for n={n} d={d} after 10000 restarts"
    )))
}
