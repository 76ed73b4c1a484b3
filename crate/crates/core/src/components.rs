//! Connected components of the subgraph induced by un-failed nodes.

use crate::graph::{AliveMask, Network};

/// Union-find with union by size and path halving.
struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grandparent = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grandparent;
            x = grandparent;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Component labelling of the alive-induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabels {
    /// Node count of the largest component; 0 when nothing is alive.
    pub largest_size: usize,
    /// Component id per node (ids are assigned in order of first appearance
    /// by node index); `None` for failed nodes.
    pub labels: Vec<Option<u32>>,
}

/// Size and membership of connected components among alive nodes only.
/// Edges with a failed endpoint are ignored.
///
/// Panics if the mask length does not match the node count.
pub fn giant_component(net: &Network, alive: &AliveMask) -> ComponentLabels {
    let n = net.node_count();
    assert_eq!(alive.len(), n, "alive mask length must match node count");

    let mut uf = UnionFind::new(n);
    for u in 0..n {
        if !alive.is_alive(u) {
            continue;
        }
        for &v in net.neighbors(u) {
            if v as usize > u && alive.is_alive(v as usize) {
                uf.union(u as u32, v);
            }
        }
    }

    let mut labels = vec![None; n];
    let mut root_label: Vec<Option<u32>> = vec![None; n];
    let mut component_sizes: Vec<usize> = Vec::new();
    for (v, slot) in labels.iter_mut().enumerate() {
        if !alive.is_alive(v) {
            continue;
        }
        let root = uf.find(v as u32) as usize;
        let label = *root_label[root].get_or_insert_with(|| {
            component_sizes.push(0);
            (component_sizes.len() - 1) as u32
        });
        component_sizes[label as usize] += 1;
        *slot = Some(label);
    }

    ComponentLabels {
        largest_size: component_sizes.iter().copied().max().unwrap_or(0),
        labels,
    }
}
