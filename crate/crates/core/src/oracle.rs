//! Exponential-time ground truth used to validate the polynomial solver.
//!
//! Two exact MWIS routines are kept on purpose: plain subset enumeration for
//! tiny inputs and a branch-and-bound search for slightly larger ones, each
//! checking the other in tests. Maximal independent sets are enumerated with
//! Bron–Kerbosch on the complement graph.

use crate::error::OracleError;
use crate::graph::{Vertex, VertexSet, Weight, WeightedGraph};

/// Limits for the branch-and-bound oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 26,
            max_nodes: 50_000_000,
        }
    }
}

/// `g[within]` packed into bitmasks over local ids.
struct Local {
    ids: Vec<Vertex>,
    adj: Vec<u64>,
    weights: Vec<Weight>,
}

impl Local {
    fn new(g: &WeightedGraph, within: &VertexSet) -> Self {
        let ids = within.to_vec();
        assert!(ids.len() <= 64, "local masks hold at most 64 vertices");
        let adj = ids
            .iter()
            .map(|&v| {
                ids.iter()
                    .enumerate()
                    .filter(|&(_, &u)| g.has_edge(u, v))
                    .fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect();
        let weights = ids.iter().map(|&v| g.weight(v)).collect();
        Local { ids, adj, weights }
    }

    fn mask_weight(&self, mut mask: u64) -> Weight {
        let mut w = 0;
        while mask != 0 {
            let i = mask.trailing_zeros() as usize;
            w += self.weights[i];
            mask &= mask - 1;
        }
        w
    }

    fn to_set(&self, mut mask: u64) -> VertexSet {
        let mut s = VertexSet::new();
        while mask != 0 {
            let i = mask.trailing_zeros() as usize;
            s.insert(self.ids[i]);
            mask &= mask - 1;
        }
        s
    }

    fn to_mask(&self, s: &VertexSet) -> Option<u64> {
        let mut m = 0u64;
        for v in s {
            m |= 1 << self.ids.binary_search(&v).ok()?;
        }
        Some(m)
    }
}

/// Exact MWIS by branching on a maximum-degree vertex, pruned by the weight
/// of the remaining candidates.
pub fn oracle_mwis(
    g: &WeightedGraph,
    within: &VertexSet,
    budget: OracleBudget,
) -> Result<(Weight, VertexSet), OracleError> {
    let size = within.len();
    if size > budget.max_vertices.min(64) {
        return Err(OracleError::TooManyVertices {
            size,
            limit: budget.max_vertices.min(64),
        });
    }
    let local = Local::new(g, within);
    let full = if size == 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    };
    let mut search = BranchAndBound {
        local: &local,
        best: (0, 0),
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    search.run(full, 0, 0)?;
    let (w, mask) = search.best;
    let mut set = local.to_set(mask);
    set.retain_positive(g);
    Ok((w, set))
}

struct BranchAndBound<'a> {
    local: &'a Local,
    best: (Weight, u64),
    nodes: u64,
    max_nodes: u64,
}

impl BranchAndBound<'_> {
    fn run(&mut self, cand: u64, weight: Weight, chosen: u64) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(OracleError::NodeBudget(self.max_nodes));
        }
        let bound = weight + self.local.mask_weight(cand);
        if bound <= self.best.0 && self.best.1 != 0 {
            return Ok(());
        }
        // pick the candidate with most candidate neighbours
        let mut pick = None;
        let mut pick_deg = 0;
        let mut rest = cand;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let deg = (self.local.adj[i] & cand).count_ones();
            if pick.is_none() || deg > pick_deg {
                pick = Some(i);
                pick_deg = deg;
            }
        }
        match pick {
            None => {
                if weight > self.best.0 || self.best.1 == 0 {
                    self.best = (weight, chosen);
                }
                Ok(())
            }
            Some(_) if pick_deg == 0 => {
                // what is left is independent
                if bound > self.best.0 || self.best.1 == 0 {
                    self.best = (bound, chosen | cand);
                }
                Ok(())
            }
            Some(i) => {
                let bit = 1u64 << i;
                self.run(
                    cand & !bit & !self.local.adj[i],
                    weight + self.local.weights[i],
                    chosen | bit,
                )?;
                self.run(cand & !bit, weight, chosen)
            }
        }
    }
}

/// Exact MWIS by trying every subset of `within`. Meant for at most ~20 vertices.
pub fn subset_mwis(g: &WeightedGraph, within: &VertexSet) -> (Weight, VertexSet) {
    let local = Local::new(g, within);
    let k = local.ids.len();
    assert!(k <= 24, "subset enumeration over {k} vertices");
    let mut best = (0, 0u64);
    for mask in 0u64..(1u64 << k) {
        let mut rest = mask;
        let mut independent = true;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if local.adj[i] & mask != 0 {
                independent = false;
                break;
            }
        }
        if independent {
            let w = local.mask_weight(mask);
            if w > best.0 {
                best = (w, mask);
            }
        }
    }
    let mut set = local.to_set(best.1);
    set.retain_positive(g);
    (best.0, set)
}

/// Every maximal independent set of `g[within]`, each exactly once, sorted.
pub fn enumerate_maximal_is(g: &WeightedGraph, within: &VertexSet) -> Vec<VertexSet> {
    let local = Local::new(g, within);
    let k = local.ids.len();
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    // complement adjacency; maximal cliques there are maximal independent sets here
    let co: Vec<u64> = (0..k)
        .map(|i| full & !local.adj[i] & !(1u64 << i))
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(&co, 0, full, 0, &mut out);
    let mut sets: Vec<VertexSet> = out.into_iter().map(|m| local.to_set(m)).collect();
    sets.sort();
    sets
}

fn bron_kerbosch(co: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let mut pivot = 0;
    let mut best = -1i32;
    let mut px = p | x;
    while px != 0 {
        let u = px.trailing_zeros() as usize;
        px &= px - 1;
        let c = (p & co[u]).count_ones() as i32;
        if c > best {
            best = c;
            pivot = u;
        }
    }
    let mut todo = p & !co[pivot];
    while todo != 0 {
        let v = todo.trailing_zeros() as usize;
        todo &= todo - 1;
        let bit = 1u64 << v;
        bron_kerbosch(co, r | bit, p & co[v], x & co[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Why a leaf family fails to cover the maximal independent sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverViolation {
    /// This leaf does not induce a bipartite graph.
    NonBipartiteLeaf(VertexSet),
    /// This maximal independent set lies in no leaf.
    Uncovered(VertexSet),
}

/// Checks that every leaf induces a bipartite subgraph and that every maximal
/// independent set of `g` is contained in some leaf.
pub fn verify_cover(g: &WeightedGraph, leaves: &[VertexSet]) -> Result<(), CoverViolation> {
    for leaf in leaves {
        if !leaf.is_subset(&g.vertices()) || !g.is_bipartite(leaf) {
            return Err(CoverViolation::NonBipartiteLeaf(leaf.clone()));
        }
    }
    let all = g.vertices();
    let local = Local::new(g, &all);
    let masks: Vec<u64> = leaves.iter().filter_map(|l| local.to_mask(l)).collect();
    for mis in enumerate_maximal_is(g, &all) {
        let m = local.to_mask(&mis).expect("maximal set inside the graph");
        if !masks.iter().any(|&leaf| m & !leaf == 0) {
            return Err(CoverViolation::Uncovered(mis));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn small_optima() {
        let b = OracleBudget::default();
        assert_eq!(
            oracle_mwis(&cycle(5), &cycle(5).vertices(), b).unwrap().0,
            2
        );
        assert_eq!(
            oracle_mwis(&complete(6), &complete(6).vertices(), b)
                .unwrap()
                .0,
            1
        );
        let (w, s) = oracle_mwis(&path(7), &path(7).vertices(), b).unwrap();
        assert_eq!((w, s), (4, set(&[0, 2, 4, 6])));
        assert_eq!(subset_mwis(&path(7), &path(7).vertices()).0, 4);
    }

    #[test]
    fn empty_and_zero_weights() {
        let g = WeightedGraph::new(3, &[(0, 1)], vec![0, 0, 0]).unwrap();
        let (w, s) = oracle_mwis(&g, &g.vertices(), OracleBudget::default()).unwrap();
        assert_eq!(w, 0);
        assert!(s.is_empty());
        assert_eq!(
            oracle_mwis(&g, &VertexSet::new(), OracleBudget::default())
                .unwrap()
                .0,
            0
        );
    }

    #[test]
    fn budget_is_reported() {
        let g = WeightedGraph::unweighted(30, &[]).unwrap();
        assert!(matches!(
            oracle_mwis(&g, &g.vertices(), OracleBudget::default()),
            Err(OracleError::TooManyVertices {
                size: 30,
                limit: 26
            })
        ));
        let c = cycle(20);
        let tight = OracleBudget {
            max_vertices: 26,
            max_nodes: 3,
        };
        assert_eq!(
            oracle_mwis(&c, &c.vertices(), tight),
            Err(OracleError::NodeBudget(3))
        );
    }

    #[test]
    fn maximal_sets() {
        assert_eq!(
            enumerate_maximal_is(&cycle(4), &cycle(4).vertices()),
            vec![set(&[0, 2]), set(&[1, 3])]
        );
        assert_eq!(
            enumerate_maximal_is(&complete(3), &complete(3).vertices()),
            vec![set(&[0]), set(&[1]), set(&[2])]
        );
        let e3 = WeightedGraph::unweighted(3, &[]).unwrap();
        assert_eq!(
            enumerate_maximal_is(&e3, &e3.vertices()),
            vec![set(&[0, 1, 2])]
        );
    }

    #[test]
    fn cover_checks() {
        let p4 = path(4);
        assert!(verify_cover(&p4, &[p4.vertices()]).is_ok());
        assert!(matches!(
            verify_cover(&p4, &[]),
            Err(CoverViolation::Uncovered(_))
        ));
        let c5 = cycle(5);
        assert!(matches!(
            verify_cover(&c5, &[c5.vertices()]),
            Err(CoverViolation::NonBipartiteLeaf(_))
        ));
    }
}
