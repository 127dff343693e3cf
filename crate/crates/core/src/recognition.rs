//! Recognizers for the forbidden patterns of the class: triangles, induced
//! five-cycles and induced `S1,2,4`s.
//!
//! All searches scan vertices in ascending id, so the witness returned for a
//! given graph is always the same.

use std::fmt;

use crate::graph::{Vertex, VertexSet, WeightedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternKind {
    Triangle,
    C5,
    S124,
}

impl PatternKind {
    /// Edges of the pattern over positions in the canonical vertex order.
    fn edges(self) -> &'static [(usize, usize)] {
        match self {
            PatternKind::Triangle => &[(0, 1), (1, 2), (0, 2)],
            PatternKind::C5 => &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
            // center, arm 1, arm 2 (two vertices), arm 4 (four vertices)
            PatternKind::S124 => &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7)],
        }
    }

    fn order(self) -> usize {
        match self {
            PatternKind::Triangle => 3,
            PatternKind::C5 => 5,
            PatternKind::S124 => 8,
        }
    }
}

/// Vertices of an induced copy of a forbidden pattern, in canonical order.
///
/// For a C5 consecutive vertices are adjacent; for an S1,2,4 the order is the
/// center, the tip of the 1-arm, the 2-arm from the center outwards, then the
/// 4-arm from the center outwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForbiddenWitness {
    pub kind: PatternKind,
    pub vertices: Vec<Vertex>,
}

impl ForbiddenWitness {
    /// Re-checks all vertex pairs: the listed vertices must be distinct and
    /// induce exactly the pattern's edges.
    pub fn verify(&self, g: &WeightedGraph) -> bool {
        let vs = &self.vertices;
        if vs.len() != self.kind.order() || vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let pattern = self.kind.edges();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if vs[i] == vs[j] {
                    return false;
                }
                let want = pattern.contains(&(i, j)) || pattern.contains(&(j, i));
                if g.has_edge(vs[i], vs[j]) != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

impl fmt::Display for ForbiddenWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            PatternKind::Triangle => "triangle",
            PatternKind::C5 => "C5",
            PatternKind::S124 => "S1,2,4",
        };
        write!(f, "{name} {:?}", self.vertices)
    }
}

/// Least triangle `a < b < c` in lexicographic order.
pub fn find_triangle(g: &WeightedGraph) -> Option<ForbiddenWitness> {
    find_triangle_within(g, &g.vertices())
}

pub fn find_triangle_within(g: &WeightedGraph, within: &VertexSet) -> Option<ForbiddenWitness> {
    for a in within {
        let na = g.neighbors(a).intersection(within);
        for b in na.iter().filter(|&b| b > a) {
            if let Some(c) = g.neighbors(b).intersection(&na).iter().find(|&c| c > b) {
                return Some(ForbiddenWitness {
                    kind: PatternKind::Triangle,
                    vertices: vec![a, b, c],
                });
            }
        }
    }
    None
}

/// Visits every induced 5-cycle of `g[within]` once, as `[v0, .., v4]` with
/// `v0` the least vertex and `v1 < v4`. Stops early when `visit` returns false.
fn scan_induced_c5(
    g: &WeightedGraph,
    within: &VertexSet,
    mut visit: impl FnMut([Vertex; 5]) -> bool,
) {
    for v0 in within {
        let above: VertexSet = within.iter().filter(|&u| u > v0).collect();
        let n0 = g.neighbors(v0).intersection(&above);
        for v1 in &n0 {
            for v4 in n0.iter().filter(|&v4| v4 > v1 && !g.has_edge(v1, v4)) {
                let mut c2 = g.neighbors(v1).intersection(&above);
                c2.difference_with(g.neighbors(v0));
                c2.difference_with(g.neighbors(v4));
                c2.remove(v4);
                for v2 in &c2 {
                    let mut c3 = g.neighbors(v2).intersection(g.neighbors(v4));
                    c3.intersect_with(&above);
                    c3.difference_with(g.neighbors(v0));
                    c3.difference_with(g.neighbors(v1));
                    for v3 in &c3 {
                        if !visit([v0, v1, v2, v3, v4]) {
                            return;
                        }
                    }
                }
            }
        }
    }
}

fn c5_witness(c: [Vertex; 5]) -> ForbiddenWitness {
    ForbiddenWitness {
        kind: PatternKind::C5,
        vertices: c.to_vec(),
    }
}

/// First induced 5-cycle of `g[within]`, if any. Chords are excluded
/// explicitly, so this is correct on graphs with triangles too.
pub fn find_induced_c5(g: &WeightedGraph, within: &VertexSet) -> Option<ForbiddenWitness> {
    let mut found = None;
    scan_induced_c5(g, within, |c| {
        found = Some(c5_witness(c));
        false
    });
    found
}

/// All induced 5-cycles of `g[within]`, each once up to rotation and reflection.
pub fn enumerate_induced_c5(g: &WeightedGraph, within: &VertexSet) -> Vec<ForbiddenWitness> {
    let mut out = Vec::new();
    scan_induced_c5(g, within, |c| {
        out.push(c5_witness(c));
        true
    });
    out
}

// Parent position of each S1,2,4 vertex after the center, in canonical order.
const S124_PARENT: [usize; 8] = [usize::MAX, 0, 0, 2, 0, 4, 5, 6];

/// First induced `S1,2,4` of `g`, searched by extending center, 1-arm,
/// 2-arm and 4-arm with adjacency pruning.
pub fn find_induced_s124(g: &WeightedGraph) -> Option<ForbiddenWitness> {
    find_induced_s124_within(g, &g.vertices())
}

pub fn find_induced_s124_within(g: &WeightedGraph, within: &VertexSet) -> Option<ForbiddenWitness> {
    let mut chosen = [0usize; 8];
    for a in within {
        if g.degree_in(a, within) < 3 {
            continue;
        }
        chosen[0] = a;
        if extend_s124(g, within, &mut chosen, 1) {
            return Some(ForbiddenWitness {
                kind: PatternKind::S124,
                vertices: chosen.to_vec(),
            });
        }
    }
    None
}

fn extend_s124(
    g: &WeightedGraph,
    within: &VertexSet,
    chosen: &mut [Vertex; 8],
    pos: usize,
) -> bool {
    if pos == 8 {
        return true;
    }
    let parent = chosen[S124_PARENT[pos]];
    // a candidate sees its parent and nothing else chosen so far
    let mut cands = g.neighbors(parent).intersection(within);
    for &c in &chosen[..pos] {
        cands.remove(c);
        if c != parent {
            cands.difference_with(g.neighbors(c));
        }
    }
    for x in &cands {
        chosen[pos] = x;
        if extend_s124(g, within, chosen, pos + 1) {
            return true;
        }
    }
    false
}

/// `Ok(())` iff `g` is triangle-free and S1,2,4-free; otherwise the first
/// witness, triangles checked first.
pub fn check_class(g: &WeightedGraph) -> Result<(), ForbiddenWitness> {
    if let Some(t) = find_triangle(g) {
        return Err(t);
    }
    match find_induced_s124(g) {
        Some(s) => Err(s),
        None => Ok(()),
    }
}

/// Position of a C5 relative to the set `H` of a solver context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C5Type {
    /// Exactly one vertex in `H`, the nail.
    Type1 { nail: Vertex },
    /// Exactly two vertices in `H`.
    Type2 { h: [Vertex; 2] },
    /// Zero or at least three vertices in `H`; impossible in a valid context.
    Other { in_h: usize },
}

pub fn classify_c5(c5: &ForbiddenWitness, h: &VertexSet) -> C5Type {
    let hs: Vec<Vertex> = c5
        .vertices
        .iter()
        .copied()
        .filter(|&v| h.contains(v))
        .collect();
    match hs.as_slice() {
        [nail] => C5Type::Type1 { nail: *nail },
        [a, b] => C5Type::Type2 { h: [*a, *b] },
        _ => C5Type::Other { in_h: hs.len() },
    }
}
