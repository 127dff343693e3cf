//! Immutable vertex-weighted simple graphs and the set algebra the solver is
//! written in.
//!
//! Vertex ids are `0..n` and never change. Every subproblem the solver creates
//! is a [`VertexSet`] over the ids of the original graph; induced copies are
//! only materialized on request.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::GraphError;

pub type Vertex = usize;
pub type Weight = u64;

/// A set of vertex ids, iterated in ascending order.
#[derive(Clone, Default)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn singleton(v: Vertex) -> Self {
        let mut s = VertexSet::with_capacity(v + 1);
        s.insert(v);
        s
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        if v >= self.bits.len() {
            self.bits.grow(v + 1);
        }
        !self.bits.put(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        if v >= self.bits.len() {
            return false;
        }
        let had = self.bits.contains(v);
        self.bits.set(v, false);
        had
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.as_slice().iter().all(|&b| b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.bits.ones().next()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    /// True iff the two sets share at least one vertex.
    pub fn meets(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.bits.intersection(&other.bits).count()
    }

    /// Drops the zero-weight vertices.
    pub fn retain_positive(&mut self, g: &WeightedGraph) {
        let zero: Vec<Vertex> = self.iter().filter(|&v| g.weight(v) == 0).collect();
        for v in zero {
            self.remove(v);
        }
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl Eq for VertexSet {}

impl Hash for VertexSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for v in self.iter() {
            v.hash(state);
        }
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Extend<Vertex> for VertexSet {
    fn extend<I: IntoIterator<Item = Vertex>>(&mut self, iter: I) {
        for v in iter {
            self.insert(v);
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = fixedbitset::Ones<'a>;

    fn into_iter(self) -> Self::IntoIter {
        self.bits.ones()
    }
}

/// A proper 2-colouring of an induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub side1: VertexSet,
    pub side2: VertexSet,
}

impl Bipartition {
    pub fn vertices(&self) -> VertexSet {
        self.side1.union(&self.side2)
    }

    /// Side 1 and side 2 exchanged.
    pub fn flipped(&self) -> Bipartition {
        Bipartition {
            side1: self.side2.clone(),
            side2: self.side1.clone(),
        }
    }

    /// True iff this is a valid bipartition of `g[within]`.
    pub fn is_valid_for(&self, g: &WeightedGraph, within: &VertexSet) -> bool {
        self.side1.is_disjoint(&self.side2)
            && self.vertices() == *within
            && g.is_independent(&self.side1)
            && g.is_independent(&self.side2)
    }
}

/// Odd cycle found while 2-colouring; consecutive vertices (cyclically) are adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCycle {
    pub cycle: Vec<Vertex>,
}

impl OddCycle {
    /// Shrinks the cycle along chords until it is chordless. The result is
    /// still odd.
    pub fn into_induced(self, g: &WeightedGraph) -> OddCycle {
        let mut cycle = self.cycle;
        'outer: loop {
            let len = cycle.len();
            for i in 0..len {
                for j in (i + 2)..len {
                    if i == 0 && j == len - 1 {
                        continue;
                    }
                    if g.has_edge(cycle[i], cycle[j]) {
                        // chord splits the cycle into [i..=j] and [j..] + [..=i];
                        // exactly one of the two is odd
                        let inner: Vec<Vertex> = cycle[i..=j].to_vec();
                        let next = if inner.len() % 2 == 1 {
                            inner
                        } else {
                            let mut outer = cycle[j..].to_vec();
                            outer.extend_from_slice(&cycle[..=i]);
                            outer
                        };
                        cycle = next;
                        continue 'outer;
                    }
                }
            }
            return OddCycle { cycle };
        }
    }
}

/// One connected component of an induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: VertexSet,
    /// At least one edge inside.
    pub nontrivial: bool,
}

/// Bidirectional id map between a graph and one of its induced copies.
#[derive(Clone, Debug)]
pub struct IdMap {
    /// `to_original[i]` is the original id of induced vertex `i`.
    pub to_original: Vec<Vertex>,
    /// `to_induced[v]` is the induced id of original vertex `v`, if kept.
    pub to_induced: Vec<Option<Vertex>>,
}

/// Simple undirected graph with non-negative integer vertex weights.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    adjacency: Vec<VertexSet>,
    weights: Vec<Weight>,
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedGraph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .field("weights", &self.weights)
            .finish()
    }
}

impl WeightedGraph {
    /// Builds a graph from 0-indexed edges. Rejects self-loops, out-of-range
    /// endpoints and repeated edges.
    pub fn new(
        n: usize,
        edges: &[(Vertex, Vertex)],
        weights: Vec<Weight>,
    ) -> Result<Self, GraphError> {
        if weights.len() != n {
            return Err(GraphError::WeightCount {
                expected: n,
                found: weights.len(),
            });
        }
        let mut adjacency = vec![VertexSet::with_capacity(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !adjacency[u].insert(v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adjacency[v].insert(u);
        }
        Ok(WeightedGraph { adjacency, weights })
    }

    /// Unit weights.
    pub fn unweighted(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        Self::new(n, edges, vec![1; n])
    }

    /// Same edges, different weights.
    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<Self, GraphError> {
        Self::new(self.n(), &self.edges(), weights)
    }

    pub fn empty() -> Self {
        WeightedGraph {
            adjacency: Vec::new(),
            weights: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn weight(&self, v: Vertex) -> Weight {
        self.weights[v]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Edges `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() {
            for v in self.adjacency[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Open neighbourhood `N(v)`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        assert!(v < self.n(), "vertex {v} out of range (n = {})", self.n());
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    /// Number of neighbours of `v` inside `s`.
    pub fn degree_in(&self, v: Vertex, s: &VertexSet) -> usize {
        self.adjacency[v].intersection_len(s)
    }

    /// True iff `v` has a neighbour in `s`.
    pub fn contacts(&self, v: Vertex, s: &VertexSet) -> bool {
        self.adjacency[v].meets(s)
    }

    /// `V \ N[v]`.
    pub fn anti_neighborhood(&self, v: Vertex) -> VertexSet {
        let mut out = self.vertices();
        out.difference_with(self.neighbors(v));
        out.remove(v);
        out
    }

    /// Union of the open neighbourhoods of `s`.
    pub fn neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::with_capacity(self.n());
        for v in s {
            out.union_with(&self.adjacency[v]);
        }
        out
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.adjacency[v].meets(s))
    }

    pub fn set_weight(&self, s: &VertexSet) -> Weight {
        s.iter().map(|v| self.weights[v]).sum()
    }

    /// `g[s]` with vertices renumbered in ascending original order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (WeightedGraph, IdMap) {
        let to_original = s.to_vec();
        let mut to_induced = vec![None; self.n()];
        for (i, &v) in to_original.iter().enumerate() {
            to_induced[v] = Some(i);
        }
        let k = to_original.len();
        let mut adjacency = vec![VertexSet::with_capacity(k); k];
        for (i, &v) in to_original.iter().enumerate() {
            for u in self.adjacency[v].iter() {
                if let Some(j) = to_induced[u] {
                    adjacency[i].insert(j);
                }
            }
        }
        let weights = to_original.iter().map(|&v| self.weights[v]).collect();
        (
            WeightedGraph { adjacency, weights },
            IdMap {
                to_original,
                to_induced,
            },
        )
    }

    /// Connected components of `g[within]`, ordered by least vertex.
    pub fn connected_components(&self, within: &VertexSet) -> Vec<Component> {
        let mut seen = VertexSet::with_capacity(self.n());
        let mut out = Vec::new();
        for start in within {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::with_capacity(self.n());
            let mut nontrivial = false;
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for w in self.adjacency[u].intersection(within).iter() {
                    nontrivial = true;
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            out.push(Component {
                vertices: comp,
                nontrivial,
            });
        }
        out
    }

    /// 2-colours `g[within]` by BFS, or returns an odd cycle. Each component's
    /// least vertex goes to side 1.
    pub fn bipartition(&self, within: &VertexSet) -> Result<Bipartition, OddCycle> {
        let n = self.n();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent: Vec<Vertex> = vec![usize::MAX; n];
        let mut depth: Vec<usize> = vec![0; n];
        let mut side1 = VertexSet::with_capacity(n);
        let mut side2 = VertexSet::with_capacity(n);
        for start in within {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                if cu {
                    side2.insert(u);
                } else {
                    side1.insert(u);
                }
                for w in self.adjacency[u].iter().filter(|&w| within.contains(w)) {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            parent[w] = u;
                            depth[w] = depth[u] + 1;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => {
                            return Err(self.tree_cycle(u, w, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(Bipartition { side1, side2 })
    }

    pub fn is_bipartite(&self, within: &VertexSet) -> bool {
        self.bipartition(within).is_ok()
    }

    // Cycle formed by the BFS tree paths from `a` and `b` to their common
    // ancestor plus the same-colour edge `ab`.
    fn tree_cycle(&self, a: Vertex, b: Vertex, parent: &[Vertex], depth: &[usize]) -> OddCycle {
        let (mut x, mut y) = (a, b);
        let mut left = vec![x];
        let mut right = vec![y];
        while depth[x] > depth[y] {
            x = parent[x];
            left.push(x);
        }
        while depth[y] > depth[x] {
            y = parent[y];
            right.push(y);
        }
        while x != y {
            x = parent[x];
            y = parent[y];
            left.push(x);
            right.push(y);
        }
        right.pop();
        right.reverse();
        left.extend(right);
        OddCycle { cycle: left }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn neighbors_of_cycle_star_and_clique() {
        let c5 = cycle(5);
        assert_eq!(*c5.neighbors(0), set(&[1, 4]));
        let g = WeightedGraph::unweighted(3, &[(0, 1)]).unwrap();
        assert!(g.neighbors(2).is_empty());
        let k4 = complete(4);
        assert_eq!(*k4.neighbors(2), set(&[0, 1, 3]));
    }

    #[test]
    fn anti_neighborhoods() {
        assert_eq!(cycle(5).anti_neighborhood(0), set(&[2, 3]));
        assert!(complete(4).anti_neighborhood(1).is_empty());
        let star = WeightedGraph::unweighted(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(star.anti_neighborhood(0).is_empty());
        assert_eq!(star.anti_neighborhood(1), set(&[2, 3]));
    }

    #[test]
    fn induced_subgraphs() {
        let c5 = cycle(5);
        let (p3, map) = c5.induced_subgraph(&set(&[0, 1, 2]));
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(map.to_original, vec![0, 1, 2]);

        let (same, map) = c5.induced_subgraph(&c5.vertices());
        assert_eq!(same, c5);
        assert!(map.to_original.iter().enumerate().all(|(i, &v)| i == v));

        let (empty, _) = c5.induced_subgraph(&VertexSet::new());
        assert_eq!(empty.n(), 0);
    }

    #[test]
    fn components() {
        let g = WeightedGraph::unweighted(4, &[(0, 1), (2, 3)]).unwrap();
        let comps = g.connected_components(&g.vertices());
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.nontrivial && c.vertices.len() == 2));

        let e3 = WeightedGraph::unweighted(3, &[]).unwrap();
        let comps = e3.connected_components(&e3.vertices());
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| !c.nontrivial));

        let c5 = cycle(5);
        assert_eq!(c5.connected_components(&c5.vertices()).len(), 1);
    }

    #[test]
    fn bipartitions() {
        let p4 = path(4);
        let b = p4.bipartition(&p4.vertices()).unwrap();
        assert_eq!(b.side1, set(&[0, 2]));
        assert_eq!(b.side2, set(&[1, 3]));

        let c5 = cycle(5);
        let odd = c5.bipartition(&c5.vertices()).unwrap_err();
        assert_eq!(odd.cycle.len(), 5);

        let b = c5.bipartition(&VertexSet::new()).unwrap();
        assert!(b.side1.is_empty() && b.side2.is_empty());
    }

    #[test]
    fn odd_cycle_shrinks_to_induced() {
        // C7 with chord 0-3 leaves an induced C5 (3,4,5,6,0)
        let mut edges: Vec<_> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        edges.push((0, 3));
        let g = WeightedGraph::unweighted(7, &edges).unwrap();
        let cyc = OddCycle {
            cycle: (0..7).collect(),
        }
        .into_induced(&g);
        assert_eq!(cyc.cycle.len(), 5);
        let mut vs = cyc.cycle.clone();
        vs.sort();
        assert_eq!(vs, vec![0, 3, 4, 5, 6]);
    }

    #[test]
    fn independence_and_weight() {
        let c5 = cycle(5);
        assert!(c5.is_independent(&set(&[0, 2])));
        assert!(!c5.is_independent(&set(&[0, 1])));
        assert!(c5.is_independent(&VertexSet::new()));
        let g = c5.with_weights(vec![3, 1, 4, 1, 5]).unwrap();
        assert_eq!(g.set_weight(&VertexSet::new()), 0);
        assert_eq!(g.set_weight(&set(&[2])), 4);
        assert_eq!(c5.set_weight(&set(&[0, 2])), 2);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            WeightedGraph::unweighted(2, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        ));
        assert!(matches!(
            WeightedGraph::unweighted(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(WeightedGraph::unweighted(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn vertex_set_equality_ignores_capacity() {
        let mut a = VertexSet::with_capacity(100);
        a.insert(3);
        assert_eq!(a, VertexSet::singleton(3));
        assert!(VertexSet::with_capacity(64).is_empty());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
        (1..=max_n)
            .prop_flat_map(|n| {
                let pairs = n * (n - 1) / 2;
                (Just(n), proptest::collection::vec(any::<bool>(), pairs))
            })
            .prop_map(|(n, mask)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if mask[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                WeightedGraph::unweighted(n, &edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn neighborhood_partition(g in arb_graph(12)) {
            for v in 0..g.n() {
                let a = g.anti_neighborhood(v);
                prop_assert!(!a.contains(v));
                prop_assert!(a.is_disjoint(g.neighbors(v)));
                prop_assert_eq!(a.len() + g.degree(v) + 1, g.n());
            }
        }

        #[test]
        fn bipartition_or_odd_cycle(g in arb_graph(12)) {
            let all = g.vertices();
            match g.bipartition(&all) {
                Ok(b) => prop_assert!(b.is_valid_for(&g, &all)),
                Err(odd) => {
                    let k = odd.cycle.len();
                    prop_assert!(k % 2 == 1);
                    for i in 0..k {
                        prop_assert!(g.has_edge(odd.cycle[i], odd.cycle[(i + 1) % k]));
                    }
                    let ind = odd.into_induced(&g);
                    let k = ind.cycle.len();
                    prop_assert!(k % 2 == 1 && k >= 3);
                    let s: VertexSet = ind.cycle.iter().copied().collect();
                    prop_assert_eq!(s.len(), k);
                    let (sub, _) = g.induced_subgraph(&s);
                    prop_assert_eq!(sub.m(), k);
                }
            }
        }

        #[test]
        fn components_are_separated(g in arb_graph(12)) {
            let comps = g.connected_components(&g.vertices());
            let total: usize = comps.iter().map(|c| c.vertices.len()).sum();
            prop_assert_eq!(total, g.n());
            for (i, a) in comps.iter().enumerate() {
                prop_assert_eq!(a.nontrivial, a.vertices.iter().any(|v| g.contacts(v, &a.vertices)));
                for b in &comps[i + 1..] {
                    prop_assert!(a.vertices.iter().all(|v| !g.contacts(v, &b.vertices)));
                }
            }
        }

        #[test]
        fn induced_round_trip(g in arb_graph(10)) {
            let s: VertexSet = (0..g.n()).filter(|v| v % 2 == 0).collect();
            let (sub, map) = g.induced_subgraph(&s);
            for (i, j) in sub.edges() {
                prop_assert!(g.has_edge(map.to_original[i], map.to_original[j]));
            }
            for u in &s {
                for v in g.neighbors(u).intersection(&s).iter() {
                    prop_assert!(sub.has_edge(map.to_induced[u].unwrap(), map.to_induced[v].unwrap()));
                }
            }
        }
    }
}
