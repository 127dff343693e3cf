//! Exact MWIS on bipartite induced subgraphs through min vertex cover /
//! max flow duality.
//!
//! The network has a source arc of capacity `w(v)` into every side-1 vertex,
//! a sink arc of capacity `w(v)` out of every side-2 vertex, and an
//! effectively infinite arc along every edge from side 1 to side 2. A minimum
//! cut is then a minimum weight vertex cover and its complement a maximum
//! weight independent set.

use std::collections::VecDeque;

use crate::error::BipartiteError;
use crate::graph::{Bipartition, Vertex, VertexSet, Weight, WeightedGraph};

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: Weight,
    rev: usize,
}

/// Directed capacitated network solved with Dinic's blocking-flow algorithm.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
    // (node, index) of each arc as added, to report original capacities
    added: Vec<(usize, usize, Weight)>,
}

/// Maximum flow value together with the source side of a minimum cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: Weight,
    /// Nodes reachable from the source in the final residual network.
    pub source_side: Vec<bool>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: vec![Vec::new(); nodes],
            added: Vec::new(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.arcs.len()
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: Weight) {
        let i = self.arcs[from].len();
        let j = self.arcs[to].len() + usize::from(from == to);
        self.arcs[from].push(Arc { to, cap, rev: j });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            rev: i,
        });
        self.added.push((from, i, cap));
    }

    /// Runs Dinic from `source` to `sink`, consuming the network. Asserts
    /// that the flow value equals the capacity of the returned cut.
    pub fn max_flow(mut self, source: usize, sink: usize) -> MaxFlow {
        let n = self.nodes();
        let mut value: Weight = 0;
        let mut level = vec![usize::MAX; n];
        let mut next = vec![0usize; n];
        while self.build_levels(source, sink, &mut level) {
            next.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.augment(source, sink, Weight::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                value += pushed;
            }
        }
        let source_side: Vec<bool> = level.iter().map(|&l| l != usize::MAX).collect();
        let cut: Weight = self
            .added
            .iter()
            .filter(|&&(u, i, _)| source_side[u] && !source_side[self.arcs[u][i].to])
            .map(|&(_, _, cap)| cap)
            .sum();
        assert_eq!(value, cut, "max-flow value differs from min-cut capacity");
        MaxFlow { value, source_side }
    }

    // BFS over residual arcs; on return `level` marks exactly the reachable nodes.
    fn build_levels(&self, source: usize, sink: usize, level: &mut [usize]) -> bool {
        level.iter_mut().for_each(|l| *l = usize::MAX);
        level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for a in &self.arcs[u] {
                if a.cap > 0 && level[a.to] == usize::MAX {
                    level[a.to] = level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        level[sink] != usize::MAX
    }

    fn augment(
        &mut self,
        u: usize,
        sink: usize,
        limit: Weight,
        level: &[usize],
        next: &mut [usize],
    ) -> Weight {
        if u == sink {
            return limit;
        }
        while next[u] < self.arcs[u].len() {
            let i = next[u];
            let Arc { to, cap, rev } = self.arcs[u][i];
            if cap > 0 && level[to] == level[u] + 1 {
                let pushed = self.augment(to, sink, limit.min(cap), level, next);
                if pushed > 0 {
                    self.arcs[u][i].cap -= pushed;
                    self.arcs[to][rev].cap += pushed;
                    return pushed;
                }
            }
            next[u] += 1;
        }
        0
    }
}

/// Result of a bipartite solve, with the dual cover for auditing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSolution {
    pub weight: Weight,
    pub independent_set: VertexSet,
    pub cover: VertexSet,
}

/// Maximum weight independent set of `g[within]` given a bipartition of it.
///
/// Zero-weight vertices are left out of the returned set. The duality
/// `w(set) + w(cover) = w(within)` and the cover property are asserted.
pub fn mwis_bipartite(
    g: &WeightedGraph,
    within: &VertexSet,
    bip: &Bipartition,
) -> Result<BipartiteSolution, BipartiteError> {
    if !bip.side1.is_disjoint(&bip.side2) || bip.vertices() != *within {
        return Err(BipartiteError::WrongVertexSet);
    }
    if !g.is_independent(&bip.side1) {
        return Err(BipartiteError::SideNotIndependent { side: 1 });
    }
    if !g.is_independent(&bip.side2) {
        return Err(BipartiteError::SideNotIndependent { side: 2 });
    }

    let local: Vec<Vertex> = within.to_vec();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in local.iter().enumerate() {
        index[v] = i;
    }
    let k = local.len();
    let (source, sink) = (k, k + 1);
    let total = g.set_weight(within);
    let infinite = total + 1;

    let mut net = FlowNetwork::new(k + 2);
    for (i, &v) in local.iter().enumerate() {
        if bip.side1.contains(v) {
            net.add_arc(source, i, g.weight(v));
            for u in g.neighbors(v).intersection(&bip.side2).iter() {
                net.add_arc(i, index[u], infinite);
            }
        } else {
            net.add_arc(i, sink, g.weight(v));
        }
    }
    let flow = net.max_flow(source, sink);

    let mut cover = VertexSet::with_capacity(g.n());
    for (i, &v) in local.iter().enumerate() {
        let reachable = flow.source_side[i];
        if bip.side1.contains(v) != reachable {
            cover.insert(v);
        }
    }
    let mut independent_set = within.difference(&cover);
    independent_set.retain_positive(g);

    let weight = g.set_weight(&independent_set);
    assert_eq!(flow.value, g.set_weight(&cover), "cut is not the cover");
    assert_eq!(
        weight + flow.value,
        total,
        "independent set and cover are not dual"
    );
    assert!(
        within
            .iter()
            .filter(|&u| !cover.contains(u))
            .all(|u| g.neighbors(u).intersection(within).is_subset(&cover)),
        "cover misses an edge"
    );
    assert!(g.is_independent(&independent_set));

    Ok(BipartiteSolution {
        weight,
        independent_set,
        cover,
    })
}
