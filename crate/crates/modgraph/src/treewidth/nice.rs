//! Refinement of a tree decomposition into Leaf/Introduce/Forget/Join nodes
//! with an empty root bag, the shape the dynamic program consumes.

use super::decomposition::TreeDecomposition;
use super::TwError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(u32),
    Forget(u32),
    Join,
}

#[derive(Debug, Clone)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted bag after this node's operation.
    pub bag: Vec<u32>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
    pub width: usize,
}

impl NiceDecomposition {
    /// Node indices in processing order (children before parents).
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                order.push(x);
            } else {
                stack.push((x, true));
                for &c in &self.nodes[x].children {
                    stack.push((c, false));
                }
            }
        }
        order
    }
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NiceKind, bag: Vec<u32>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Leaf chain introducing every vertex of `bag`.
    fn leaf_chain(&mut self, bag: &[u32]) -> usize {
        let mut node = self.push(NiceKind::Leaf, Vec::new(), Vec::new());
        let mut current: Vec<u32> = Vec::new();
        for &v in bag {
            current.push(v);
            node = self.push(NiceKind::Introduce(v), current.clone(), vec![node]);
        }
        node
    }

    /// Forgets and introduces to turn `from`'s bag into `to`.
    fn morph(&mut self, mut node: usize, from: &[u32], to: &[u32]) -> usize {
        let mut current: Vec<u32> = from.to_vec();
        for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
            current.retain(|&x| x != v);
            node = self.push(NiceKind::Forget(v), current.clone(), vec![node]);
        }
        for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
            current.push(v);
            current.sort_unstable();
            node = self.push(NiceKind::Introduce(v), current.clone(), vec![node]);
        }
        debug_assert_eq!(current, to);
        node
    }
}

/// Validates the decomposition and refines it so every node is Leaf,
/// Introduce, Forget, or a Join of two equal bags; the root bag is empty.
/// The width never changes.
pub fn make_nice(td: &TreeDecomposition, g: &Graph) -> Result<NiceDecomposition, TwError> {
    td.validate(g)?;
    let n = td.bags.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &td.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let root_td = 0usize;
    // Rooted traversal order.
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root_td];
    let mut seen = vec![false; n];
    seen[root_td] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }

    let mut builder = Builder { nodes: Vec::new() };
    // Nice subtree root per td node, built children-first.
    let mut built: Vec<Option<usize>> = vec![None; n];
    for &x in order.iter().rev() {
        let children: Vec<usize> = adj[x].iter().copied().filter(|&y| parent[y] == x).collect();
        let bag = &td.bags[x];
        let node = if children.is_empty() {
            builder.leaf_chain(bag)
        } else {
            let mut arms: Vec<usize> = children
                .iter()
                .map(|&c| {
                    let sub = built[c].expect("children built first");
                    builder.morph(sub, &td.bags[c], bag)
                })
                .collect();
            let mut combined = arms.remove(0);
            for arm in arms {
                combined = builder.push(NiceKind::Join, bag.clone(), vec![combined, arm]);
            }
            combined
        };
        built[x] = Some(node);
    }
    // Forget everything above the root so the accept states live in an
    // empty bag.
    let top = built[root_td].unwrap();
    let root = builder.morph(top, &td.bags[root_td].clone(), &[]);
    let nodes = builder.nodes;
    let width = nodes.iter().map(|nd| nd.bag.len()).max().unwrap_or(0).saturating_sub(1);
    debug_assert!(width <= td.width().max(0));
    Ok(NiceDecomposition { nodes, root, width })
}
