//! Structural queries on a component `K` split by a fixed vertex `d` into
//! `H = K ∩ N(d)` and `Z = K \ N(d)`.

use crate::graph::{Bipartition, Vertex, VertexSet, WeightedGraph};

/// One of the two sides of a bipartite component of `G[Z]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    One,
    Two,
}

/// How a vertex of `H` meets a nontrivial component `T = (U1, U2)` of `G[Z]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Contact {
    NoContact,
    /// Adjacent to all of one side and to nothing on the other.
    HalfJoin(Side),
    /// Adjacent to a nonempty proper subset of one side and nothing on the other.
    Proper(Side),
    /// Neighbours on both sides.
    BothSides,
}

pub fn classify_contact(g: &WeightedGraph, h: Vertex, bip: &Bipartition) -> Contact {
    let n1 = g.neighbors(h).intersection_len(&bip.side1);
    let n2 = g.neighbors(h).intersection_len(&bip.side2);
    match (n1, n2) {
        (0, 0) => Contact::NoContact,
        (_, 0) if n1 == bip.side1.len() => Contact::HalfJoin(Side::One),
        (_, 0) => Contact::Proper(Side::One),
        (0, _) if n2 == bip.side2.len() => Contact::HalfJoin(Side::Two),
        (0, _) => Contact::Proper(Side::Two),
        _ => Contact::BothSides,
    }
}

/// A nontrivial component of `G[Z]` with its bipartition and the contact
/// class of every `H` vertex that touches it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenInfo {
    pub component: VertexSet,
    pub bip: Bipartition,
    /// `(h, contact)` for each contacting `h`, ascending by `h`.
    pub contactors: Vec<(Vertex, Contact)>,
}

impl GreenInfo {
    /// Green: some vertex of `H` properly one-side contacts the component.
    pub fn is_green(&self) -> bool {
        self.contactors
            .iter()
            .any(|(_, c)| matches!(c, Contact::Proper(_)))
    }

    pub fn proper_on(&self, side: Side) -> Vec<Vertex> {
        self.contactors
            .iter()
            .filter(|&&(_, c)| c == Contact::Proper(side))
            .map(|&(h, _)| h)
            .collect()
    }

    pub fn proper_contactors(&self) -> Vec<Vertex> {
        self.contactors
            .iter()
            .filter(|(_, c)| matches!(c, Contact::Proper(_)))
            .map(|&(h, _)| h)
            .collect()
    }

    pub fn contact_of(&self, h: Vertex) -> Contact {
        self.contactors
            .iter()
            .find(|&&(x, _)| x == h)
            .map_or(Contact::NoContact, |&(_, c)| c)
    }

    pub fn side(&self, side: Side) -> &VertexSet {
        match side {
            Side::One => &self.bip.side1,
            Side::Two => &self.bip.side2,
        }
    }

    /// Swaps the sides so that proper contacts, if all on one side, are on
    /// side one.
    pub fn oriented(mut self) -> GreenInfo {
        if self.proper_on(Side::One).is_empty() && !self.proper_on(Side::Two).is_empty() {
            self.bip = self.bip.flipped();
            for (_, c) in &mut self.contactors {
                *c = match *c {
                    Contact::HalfJoin(s) => Contact::HalfJoin(other(s)),
                    Contact::Proper(s) => Contact::Proper(other(s)),
                    c => c,
                };
            }
        }
        self
    }
}

fn other(s: Side) -> Side {
    match s {
        Side::One => Side::Two,
        Side::Two => Side::One,
    }
}

/// Contact information for every nontrivial component of `G[Z]`, ordered by
/// least vertex. Returns `None` if `G[Z]` is not bipartite.
pub fn green_info(g: &WeightedGraph, h: &VertexSet, z: &VertexSet) -> Option<Vec<GreenInfo>> {
    let mut out = Vec::new();
    for comp in g.connected_components(z) {
        if !comp.nontrivial {
            continue;
        }
        let bip = g.bipartition(&comp.vertices).ok()?;
        let contactors = h
            .iter()
            .map(|x| (x, classify_contact(g, x, &bip)))
            .filter(|&(_, c)| c != Contact::NoContact)
            .collect();
        out.push(GreenInfo {
            component: comp.vertices,
            bip,
            contactors,
        });
    }
    Some(out)
}

/// `h` doubly contacts the `P1 + P2` made of `x` and the edge `yz`: it sees
/// `x` and exactly one of `y`, `z`.
pub fn doubly_contacts(g: &WeightedGraph, h: Vertex, (x, y, z): (Vertex, Vertex, Vertex)) -> bool {
    g.has_edge(h, x) && (g.has_edge(h, y) != g.has_edge(h, z))
}

/// Every induced `P1 + P2` `(x, y, z)` of `G[Z]` (edge `yz`) that `h` doubly
/// contacts, with `y` the endpoint `h` sees.
pub fn doubly_contacted_triples(
    g: &WeightedGraph,
    h: Vertex,
    z: &VertexSet,
) -> Vec<(Vertex, Vertex, Vertex)> {
    let nh = g.neighbors(h).intersection(z);
    let mut out = Vec::new();
    for x in &nh {
        for y in nh.iter().filter(|&y| y != x && !g.has_edge(x, y)) {
            for t in g.neighbors(y).intersection(z).iter() {
                if t != x && !g.has_edge(h, t) && !g.has_edge(x, t) {
                    out.push((x, y, t));
                }
            }
        }
    }
    out
}

/// Repeated extraction of a maximum under `ge`, restricted to the items not
/// yet placed. Among several maxima the one ranked first by `key` is taken.
///
/// Returns the items placed so far and the first remainder that has no
/// maximum, if any.
pub fn order_by_domination<T: Copy, K: Ord>(
    items: &[T],
    mut ge: impl FnMut(T, T) -> bool,
    mut key: impl FnMut(T) -> K,
) -> Result<Vec<T>, Vec<T>> {
    let mut rest: Vec<T> = items.to_vec();
    let mut order = Vec::with_capacity(items.len());
    while !rest.is_empty() {
        let mut best: Option<(usize, K)> = None;
        for (i, &a) in rest.iter().enumerate() {
            if rest.iter().all(|&b| ge(a, b)) {
                let k = key(a);
                if best.as_ref().is_none_or(|(_, bk)| k < *bk) {
                    best = Some((i, k));
                }
            }
        }
        match best {
            Some((i, _)) => order.push(rest.remove(i)),
            None => return Err(rest),
        }
    }
    Ok(order)
}

/// Induced five-cycles `[h, a, x, y, b]` through `h` whose other four
/// vertices lie in `z`, each once (`a < b`).
pub fn type1_cycles(g: &WeightedGraph, h: Vertex, z: &VertexSet) -> Vec<[Vertex; 5]> {
    let mut out = Vec::new();
    scan_type1(g, h, z, |c| {
        out.push(c);
        true
    });
    out
}

pub fn has_type1(g: &WeightedGraph, h: Vertex, z: &VertexSet) -> bool {
    let mut found = false;
    scan_type1(g, h, z, |_| {
        found = true;
        false
    });
    found
}

fn scan_type1(
    g: &WeightedGraph,
    h: Vertex,
    z: &VertexSet,
    mut visit: impl FnMut([Vertex; 5]) -> bool,
) {
    let nh = g.neighbors(h).intersection(z);
    let far = z.difference(g.neighbors(h));
    for a in &nh {
        let xs = g.neighbors(a).intersection(&far);
        for b in nh.iter().filter(|&b| b > a && !g.has_edge(a, b)) {
            for x in xs.iter().filter(|&x| !g.has_edge(x, b)) {
                for y in g.neighbors(x).intersection(&far).iter() {
                    if g.has_edge(y, b) && !g.has_edge(y, a) && !visit([h, a, x, y, b]) {
                        return;
                    }
                }
            }
        }
    }
}

/// Vertices of `z` at distance two from the nail `h` on some induced
/// five-cycle with all other vertices in `z`.
pub fn nail_set_l(g: &WeightedGraph, h: Vertex, z: &VertexSet) -> VertexSet {
    let mut l = VertexSet::new();
    for [_, _, x, y, _] in type1_cycles(g, h, z) {
        l.insert(x);
        l.insert(y);
    }
    l
}

/// The `y ∈ U2 \ N(h_max)` that end an induced path `h - a - y - b` with
/// `h ∈ H` and `a, b ∈ U1 \ N(h_max)`.
pub fn compute_y(
    g: &WeightedGraph,
    h_set: &VertexSet,
    u1: &VertexSet,
    u2: &VertexSet,
    h_max: Vertex,
) -> VertexSet {
    let u1f = u1.difference(g.neighbors(h_max));
    let u2f = u2.difference(g.neighbors(h_max));
    let mut y_set = VertexSet::new();
    for y in &u2f {
        let around = g.neighbors(y).intersection(&u1f);
        if around.len() < 2 {
            continue;
        }
        // some h sees a neighbour of y in U1 \ N(h_max) but misses y and another one
        let hit = h_set.iter().any(|h| {
            !g.has_edge(h, y) && around.meets(g.neighbors(h)) && !around.is_subset(g.neighbors(h))
        });
        if hit {
            y_set.insert(y);
        }
    }
    y_set
}
