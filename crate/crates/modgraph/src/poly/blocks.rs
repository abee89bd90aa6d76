//! Biconnected components, cut vertices, and the block-cut tree, plus the
//! per-block parity classification the q=2 solvers are built on.

use crate::graph::Graph;
use std::collections::BTreeSet;

/// One biconnected component. Isolated vertices appear as singleton blocks
/// with no edges, so every vertex belongs to at least one block.
#[derive(Debug, Clone)]
pub struct Block {
    pub vertices: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
}

impl Block {
    pub fn is_single_edge(&self) -> bool {
        self.vertices.len() == 2
    }
}

/// Parity structure of a block.
#[derive(Debug, Clone)]
pub enum BlockParityProfile {
    SingleEdge,
    /// Two-coloring indexed like `Block::vertices`; all paths between two
    /// fixed vertices of a bipartite block have the same parity.
    Bipartite { colors: Vec<u8> },
    /// A concrete odd cycle inside the block, as a vertex sequence.
    NonBipartite { odd_cycle: Vec<u32> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcNode {
    Block(usize),
    Cut(u32),
}

/// Blocks, cut vertices, and the forest connecting them. Two blocks share at
/// most one vertex, always a cut vertex.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: BTreeSet<u32>,
    /// Blocks containing each vertex (singleton for non-cut vertices).
    pub vertex_blocks: Vec<Vec<usize>>,
    /// Adjacency of the block-cut forest: block nodes first, then cut
    /// vertices in ascending order.
    tree_adj: Vec<Vec<usize>>,
    cut_index: Vec<usize>,
}

impl BlockDecomposition {
    pub fn new(g: &Graph) -> Self {
        assert!(!g.is_directed(), "block decomposition is for undirected graphs");
        let n = g.vertex_count();
        let mut blocks: Vec<Block> = Vec::new();
        let mut cut_vertices = BTreeSet::new();

        // Iterative Tarjan with an edge stack.
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut parent = vec![u32::MAX; n];
        let mut timer = 0usize;
        let mut edge_stack: Vec<(u32, u32)> = Vec::new();

        for root in 0..n as u32 {
            if disc[root as usize] != usize::MAX {
                continue;
            }
            if g.degree(root) == 0 {
                disc[root as usize] = timer;
                timer += 1;
                blocks.push(Block {
                    vertices: vec![root],
                    edges: Vec::new(),
                });
                continue;
            }
            let mut root_children = 0usize;
            // Stack of (vertex, next neighbor index).
            let mut stack: Vec<(u32, usize)> = vec![(root, 0)];
            disc[root as usize] = timer;
            low[root as usize] = timer;
            timer += 1;
            while let Some(&mut (u, ref mut next)) = stack.last_mut() {
                if *next < g.neighbors(u).len() {
                    let w = g.neighbors(u)[*next];
                    *next += 1;
                    if disc[w as usize] == usize::MAX {
                        parent[w as usize] = u;
                        edge_stack.push((u, w));
                        disc[w as usize] = timer;
                        low[w as usize] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, 0));
                    } else if w != parent[u as usize] && disc[w as usize] < disc[u as usize] {
                        edge_stack.push((u, w));
                        low[u as usize] = low[u as usize].min(disc[w as usize]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _)) = stack.last() {
                        low[p as usize] = low[p as usize].min(low[u as usize]);
                        if low[u as usize] >= disc[p as usize] {
                            // p closes a block containing the edge (p, u).
                            let mut edges = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                let done = e == (p, u);
                                edges.push(e);
                                if done {
                                    break;
                                }
                            }
                            let mut vertices: BTreeSet<u32> = BTreeSet::new();
                            for &(a, b) in &edges {
                                vertices.insert(a);
                                vertices.insert(b);
                            }
                            edges.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
                            blocks.push(Block {
                                vertices: vertices.into_iter().collect(),
                                edges: edges
                                    .into_iter()
                                    .map(|(a, b)| (a.min(b), a.max(b)))
                                    .collect(),
                            });
                            if p != root || root_children > 1 {
                                cut_vertices.insert(p);
                            }
                        }
                    }
                }
            }
        }

        let mut vertex_blocks = vec![Vec::new(); n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in &b.vertices {
                vertex_blocks[v as usize].push(i);
            }
        }

        // Block-cut forest over block nodes and cut-vertex nodes.
        let cuts: Vec<u32> = cut_vertices.iter().copied().collect();
        let mut cut_index = vec![usize::MAX; n];
        for (i, &c) in cuts.iter().enumerate() {
            cut_index[c as usize] = blocks.len() + i;
        }
        let mut tree_adj = vec![Vec::new(); blocks.len() + cuts.len()];
        for (i, b) in blocks.iter().enumerate() {
            for &v in &b.vertices {
                let ci = cut_index[v as usize];
                if ci != usize::MAX {
                    tree_adj[i].push(ci);
                    tree_adj[ci].push(i);
                }
            }
        }

        BlockDecomposition {
            blocks,
            cut_vertices,
            vertex_blocks,
            tree_adj,
            cut_index,
        }
    }

    pub fn is_cut_vertex(&self, v: u32) -> bool {
        self.cut_vertices.contains(&v)
    }

    fn node_of(&self, v: u32) -> Option<usize> {
        let ci = self.cut_index[v as usize];
        if ci != usize::MAX {
            return Some(ci);
        }
        self.vertex_blocks[v as usize].first().copied()
    }

    fn node_desc(&self, node: usize) -> BcNode {
        if node < self.blocks.len() {
            BcNode::Block(node)
        } else {
            let cut = *self
                .cut_vertices
                .iter()
                .nth(node - self.blocks.len())
                .expect("cut node index in range");
            BcNode::Cut(cut)
        }
    }

    /// The unique chain of blocks between `s` and `t` (distinct, connected),
    /// as `(block index, entry vertex, exit vertex)` triples. `None` when
    /// the endpoints are disconnected.
    pub fn block_chain(&self, s: u32, t: u32) -> Option<Vec<(usize, u32, u32)>> {
        assert_ne!(s, t, "block chain needs distinct endpoints");
        let start = self.node_of(s)?;
        let goal = self.node_of(t)?;
        // BFS over the forest.
        let mut parent = vec![usize::MAX; self.tree_adj.len()];
        let mut seen = vec![false; self.tree_adj.len()];
        let mut queue = std::collections::VecDeque::from([start]);
        seen[start] = true;
        while let Some(x) = queue.pop_front() {
            if x == goal {
                break;
            }
            for &y in &self.tree_adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if !seen[goal] {
            return None;
        }
        let mut nodes = vec![goal];
        let mut x = goal;
        while x != start {
            x = parent[x];
            nodes.push(x);
        }
        nodes.reverse();

        let mut chain = Vec::new();
        let mut entry = s;
        for (i, &node) in nodes.iter().enumerate() {
            match self.node_desc(node) {
                BcNode::Cut(_) => {}
                BcNode::Block(b) => {
                    let exit = match nodes.get(i + 1).map(|&nx| self.node_desc(nx)) {
                        Some(BcNode::Cut(c)) => c,
                        _ => t,
                    };
                    chain.push((b, entry, exit));
                    entry = exit;
                }
            }
        }
        Some(chain)
    }
}

/// Two-colors the block, or returns the odd cycle created by the first
/// conflicting edge.
pub fn classify_block(block: &Block) -> BlockParityProfile {
    if block.is_single_edge() {
        return BlockParityProfile::SingleEdge;
    }
    if block.edges.is_empty() {
        // Isolated-vertex singleton block; vacuously bipartite.
        return BlockParityProfile::Bipartite {
            colors: vec![0; block.vertices.len()],
        };
    }
    let index_of = |v: u32| block.vertices.binary_search(&v).expect("vertex in block");
    let k = block.vertices.len();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &block.edges {
        let (ia, ib) = (index_of(a), index_of(b));
        adj[ia].push(ib);
        adj[ib].push(ia);
    }
    let mut colors = vec![u8::MAX; k];
    let mut bfs_parent = vec![usize::MAX; k];
    let mut queue = std::collections::VecDeque::from([0usize]);
    colors[0] = 0;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if colors[y] == u8::MAX {
                colors[y] = colors[x] ^ 1;
                bfs_parent[y] = x;
                queue.push_back(y);
            } else if colors[y] == colors[x] {
                // Conflict edge (x, y): tree paths to their lowest common
                // ancestor plus the edge close an odd cycle.
                let mut up_x = vec![x];
                while *up_x.last().unwrap() != 0 {
                    up_x.push(bfs_parent[*up_x.last().unwrap()]);
                }
                let on_x_path: std::collections::HashMap<usize, usize> =
                    up_x.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                let mut up_y = vec![y];
                while !on_x_path.contains_key(up_y.last().unwrap()) {
                    up_y.push(bfs_parent[*up_y.last().unwrap()]);
                }
                let lca = *up_y.last().unwrap();
                let mut cycle: Vec<usize> = up_x[..=on_x_path[&lca]].to_vec();
                cycle.reverse(); // lca .. x
                cycle.extend(&up_y[..up_y.len() - 1]); // y .. child of lca
                debug_assert!(cycle.len() % 2 == 1);
                return BlockParityProfile::NonBipartite {
                    odd_cycle: cycle.into_iter().map(|i| block.vertices[i]).collect(),
                };
            }
        }
    }
    BlockParityProfile::Bipartite { colors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::cycle;

    #[test]
    fn bowtie_blocks_and_cut_vertex() {
        let g = Graph::undirected_from(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]);
        let bd = BlockDecomposition::new(&g);
        assert_eq!(bd.blocks.len(), 2);
        assert_eq!(bd.cut_vertices, BTreeSet::from([2]));
        let chain = bd.block_chain(0, 4).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!((chain[0].1, chain[0].2), (0, 2));
        assert_eq!((chain[1].1, chain[1].2), (2, 4));
    }

    #[test]
    fn path_graph_blocks_are_single_edges() {
        let g = crate::generate::path_graph(4);
        let bd = BlockDecomposition::new(&g);
        assert_eq!(bd.blocks.len(), 3);
        assert!(bd.blocks.iter().all(|b| b.is_single_edge()));
        assert_eq!(bd.cut_vertices, BTreeSet::from([1, 2]));
    }

    #[test]
    fn every_edge_in_exactly_one_block() {
        let g = Graph::undirected_from(
            7,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5), (5, 6)],
        );
        let bd = BlockDecomposition::new(&g);
        let mut total = 0;
        for b in &bd.blocks {
            total += b.edges.len();
            for &(u, v) in &b.edges {
                assert!(g.has_edge(u, v));
            }
        }
        assert_eq!(total, g.edge_count());
    }

    #[test]
    fn disconnected_endpoints_have_no_chain() {
        let g = Graph::undirected_from(4, &[(0, 1), (2, 3)]);
        let bd = BlockDecomposition::new(&g);
        assert!(bd.block_chain(0, 3).is_none());
        assert!(bd.block_chain(0, 1).is_some());
    }

    #[test]
    fn odd_cycle_profile_on_c5() {
        let g = cycle(5).unwrap();
        let bd = BlockDecomposition::new(&g);
        assert_eq!(bd.blocks.len(), 1);
        match classify_block(&bd.blocks[0]) {
            BlockParityProfile::NonBipartite { odd_cycle } => {
                assert_eq!(odd_cycle.len(), 5);
            }
            other => panic!("expected non-bipartite, got {other:?}"),
        }
    }

    #[test]
    fn isolated_vertices_get_singleton_blocks() {
        let mut g = Graph::undirected(3);
        g.add_edge(0, 1).unwrap();
        let bd = BlockDecomposition::new(&g);
        assert_eq!(bd.blocks.len(), 2);
        assert!(bd.vertex_blocks[2].len() == 1);
    }
}
