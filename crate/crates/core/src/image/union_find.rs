//! Degree-0 persistence by union-find over edges in filtration order.

use crate::rips::{BinomialTable, FiltrationOrder, Simplex};

#[derive(Clone, Debug)]
struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
    /// Earliest vertex of each root's component. Vertices all enter at 0 and
    /// ties go to the larger index, so this is the largest vertex.
    eldest: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
            eldest: (0..n).collect(),
        }
    }

    fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != node {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    /// Merges the components of `a` and `b`. Returns the eldest vertex of the
    /// younger component, or `None` if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (ea, eb) = (self.eldest[ra], self.eldest[rb]);
        let (survivor_eldest, dying) = if ea > eb { (ea, eb) } else { (eb, ea) };
        let (mut big, mut small) = (ra, rb);
        if self.rank[big] < self.rank[small] {
            std::mem::swap(&mut big, &mut small);
        }
        self.parent[small] = big;
        if self.rank[big] == self.rank[small] {
            self.rank[big] = self.rank[big].saturating_add(1);
        }
        self.eldest[big] = survivor_eldest;
        Some(dying)
    }
}

/// One merge: the edge at `edge_position` of the order kills the component
/// whose eldest vertex is `vertex`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Merge {
    pub vertex: usize,
    pub edge: Simplex,
    pub edge_position: usize,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub(crate) struct ComponentPairs {
    pub merges: Vec<Merge>,
    /// Eldest vertex of every component that never merges.
    pub essential: Vec<usize>,
}

/// Processes `edges` from its first entry in filtration order. A reverse
/// order is walked backwards.
pub(crate) fn component_pairs(
    n: usize,
    edges: &FiltrationOrder,
    binomials: &BinomialTable,
) -> ComponentPairs {
    use crate::rips::OrderDirection;
    let positions: Box<dyn Iterator<Item = usize>> = match edges.direction() {
        OrderDirection::Filtration => Box::new(0..edges.len()),
        OrderDirection::Reverse => Box::new((0..edges.len()).rev()),
    };
    let mut set = DisjointSet::new(n);
    let mut merges = Vec::new();
    for p in positions {
        let edge = edges.simplex_at(p);
        let vs = edge.vertices(binomials);
        if let Some(vertex) = set.union(vs[0], vs[1]) {
            merges.push(Merge {
                vertex,
                edge,
                edge_position: p,
                value: edges.value_at(p),
            });
        }
    }
    let mut essential: Vec<usize> = Vec::new();
    for v in 0..n {
        if set.find(v) == v {
            essential.push(set.eldest[v]);
        }
    }
    essential.sort_unstable_by(|a, b| b.cmp(a));
    ComponentPairs { merges, essential }
}
