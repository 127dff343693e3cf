//! The decomposition solver.
//!
//! A connected component with an induced C5 is solved through
//! `α(G) = max_v w(v) + α(G[A(v)])`. Every component `K` of an
//! anti-neighbourhood is handled in a frame `(v, d)` with `d ∈ N(v)`
//! contacting `K`, which splits `K` into `H = K ∩ N(d)` and `Z = K \ N(d)`.
//! The case handlers in [`cases`] cut `K` into smaller vertex sets whose
//! maximum is `α(K)`; each piece re-enters the dispatcher in the same frame
//! and must land in a case strictly below the one it came from. When that
//! expectation fails the input is searched for a triangle or an induced
//! `S1,2,4`, which is reported as a [`SolveError::ClassViolation`].
//!
//! Every cut is an exact cover of the independent sets of its scope, so a
//! returned weight is optimal even when the input is outside the class.

mod cases;
pub mod structure;

use std::collections::BTreeMap;
use std::fmt;

use crate::bipartite::mwis_bipartite;
use crate::error::SolveError;
use crate::graph::{Bipartition, Vertex, VertexSet, Weight, WeightedGraph};
use crate::recognition::{
    find_induced_c5, find_induced_s124, find_induced_s124_within, find_triangle,
    find_triangle_within,
};
use structure::{green_info, has_type1, Contact, GreenInfo, Side};

/// The branch of the case tree a component was dispatched to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    Bipartite,
    /// A bipartite component consisting of `H` and a single green component.
    Occurrence1,
    NearlyBipartite,
    Case111,
    Case112111,
    Case112112,
    Case11212,
    Case1122,
    Case12,
    Case2,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 10] = [
        CaseLabel::Bipartite,
        CaseLabel::Occurrence1,
        CaseLabel::NearlyBipartite,
        CaseLabel::Case111,
        CaseLabel::Case112111,
        CaseLabel::Case112112,
        CaseLabel::Case11212,
        CaseLabel::Case1122,
        CaseLabel::Case12,
        CaseLabel::Case2,
    ];

    /// Position in the reduction order; pieces of a case land strictly lower.
    pub fn rank(self) -> u8 {
        match self {
            CaseLabel::Bipartite | CaseLabel::Occurrence1 => 0,
            CaseLabel::NearlyBipartite => 1,
            CaseLabel::Case111 => 2,
            CaseLabel::Case112111 => 3,
            CaseLabel::Case112112 => 4,
            CaseLabel::Case11212 => 5,
            CaseLabel::Case1122 => 6,
            CaseLabel::Case12 => 7,
            CaseLabel::Case2 => 8,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Bipartite => "bipartite",
            CaseLabel::Occurrence1 => "1.1.2.1.1.1-occ1",
            CaseLabel::NearlyBipartite => "nearly-bipartite",
            CaseLabel::Case111 => "1.1.1",
            CaseLabel::Case112111 => "1.1.2.1.1.1",
            CaseLabel::Case112112 => "1.1.2.1.1.2",
            CaseLabel::Case11212 => "1.1.2.1.2",
            CaseLabel::Case1122 => "1.1.2.2",
            CaseLabel::Case12 => "1.2",
            CaseLabel::Case2 => "2",
        }
    }

    pub fn parse(s: &str) -> Option<CaseLabel> {
        CaseLabel::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The fixed pair `(v, d)`: every scope solved in this frame lies in `A(v)`
/// and `d ∈ N(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub v: Vertex,
    pub d: Vertex,
}

/// A component `K` of an anti-neighbourhood with its frame and the split
/// `H = K ∩ N(d)`, `Z = K \ N(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentContext {
    pub v: Vertex,
    pub d: Vertex,
    pub component: VertexSet,
    pub h: VertexSet,
    pub z: VertexSet,
}

impl ComponentContext {
    pub fn new(g: &WeightedGraph, v: Vertex, d: Vertex, component: VertexSet) -> Self {
        let h = component.intersection(g.neighbors(d));
        let z = component.difference(&h);
        ComponentContext {
            v,
            d,
            component,
            h,
            z,
        }
    }

    pub fn frame(&self) -> Frame {
        Frame {
            v: self.v,
            d: self.d,
        }
    }
}

/// Context for the component `k` of `G[A(v) ∩ within]`, with `d` the least
/// neighbour of `v` in `within` that contacts `k`.
pub fn make_context(
    g: &WeightedGraph,
    within: &VertexSet,
    v: Vertex,
    k: &VertexSet,
) -> Result<ComponentContext, SolveError> {
    let d = g
        .neighbors(v)
        .intersection(within)
        .iter()
        .find(|&d| g.contacts(d, k))
        .ok_or_else(|| SolveError::ContextViolation {
            what: format!("no neighbour of {v} contacts the component"),
            vertices: k.to_vec(),
        })?;
    Ok(ComponentContext::new(g, v, d, k.clone()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metrics {
    /// Components dispatched, including the top-level ones.
    pub subproblems: u64,
    pub max_depth: usize,
    /// Bipartite base cases solved by max flow.
    pub leaves: u64,
    pub case_hits: BTreeMap<CaseLabel, u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Materialize the family of bipartite vertex sets covering every
    /// maximal independent set. Its size can grow quickly; meant for tests.
    pub record_leaves: bool,
    /// Recursion guard; `None` means `4 n`.
    pub depth_limit: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub weight: Weight,
    pub solution: VertexSet,
    /// Vertex sets inducing bipartite subgraphs such that every maximal
    /// independent set lies in one of them. Empty unless recorded.
    pub leaves: Vec<VertexSet>,
    pub metrics: Metrics,
}

pub fn solve(g: &WeightedGraph) -> Result<SolveResult, SolveError> {
    solve_with(g, SolveOptions::default())
}

pub fn solve_with(g: &WeightedGraph, opts: SolveOptions) -> Result<SolveResult, SolveError> {
    let mut s = Solver::new(g, opts);
    let p = s.top(&g.vertices())?;
    s.finish(p)
}

/// α of `g[within]` for C5-free inputs: every anti-neighbourhood inside a
/// component must be bipartite.
pub fn solve_nearly_bipartite(
    g: &WeightedGraph,
    within: &VertexSet,
) -> Result<SolveResult, SolveError> {
    let mut s = Solver::new(g, SolveOptions::default());
    let (iso, comps) = split(g, within);
    let mut p = Partial::fixed(g, &iso, false);
    for c in comps {
        s.metrics.subproblems += 1;
        let part = match g.bipartition(&c) {
            Ok(bip) => s.leaf(&c, &bip)?,
            Err(_) => s.nearly_bipartite(&c, None)?,
        };
        p = p.and(part);
    }
    s.finish(p)
}

/// α of a single component in its frame, through the case dispatcher.
pub fn solve_component(
    g: &WeightedGraph,
    ctx: &ComponentContext,
    opts: SolveOptions,
) -> Result<SolveResult, SolveError> {
    let mut s = Solver::new(g, opts);
    let p = s.solve_scope(ctx.frame(), &ctx.component, Expect::ANY, 1)?;
    s.finish(p)
}

/// The branch the dispatcher takes first on `ctx`.
pub fn classify_component(
    g: &WeightedGraph,
    ctx: &ComponentContext,
) -> Result<CaseLabel, SolveError> {
    let s = Solver::new(g, SolveOptions::default());
    Ok(match s.analyze(ctx.frame(), &ctx.component)? {
        Analysis::Leaf(_, label) | Analysis::Case(label, _) => label,
        Analysis::NearlyBipartite => CaseLabel::NearlyBipartite,
    })
}

/// The `ℓ + 1` vertex sets an elimination over `seq` produces: for each `i`
/// the scope minus `h1..h(i-1)` and `N(hi)`, then the scope minus all of `seq`.
/// Every maximal independent set of `g[scope]` lies in one of them.
pub fn elimination_sets(g: &WeightedGraph, scope: &VertexSet, seq: &[Vertex]) -> Vec<VertexSet> {
    let mut residual = scope.clone();
    let mut out = Vec::with_capacity(seq.len() + 1);
    for &h in seq {
        out.push(residual.difference(g.neighbors(h)));
        residual.remove(h);
    }
    out.push(residual);
    out
}

/// Isolated vertices of `g[scope]` and the vertex sets of the remaining components.
fn split(g: &WeightedGraph, scope: &VertexSet) -> (VertexSet, Vec<VertexSet>) {
    let iso: VertexSet = scope
        .iter()
        .filter(|&u| !g.neighbors(u).meets(scope))
        .collect();
    let comps = g
        .connected_components(&scope.difference(&iso))
        .into_iter()
        .map(|c| c.vertices)
        .collect();
    (iso, comps)
}

/// Optimum of a scope plus, when recording, its covering family.
#[derive(Clone, Debug)]
pub(crate) struct Partial {
    weight: Weight,
    solution: VertexSet,
    leaves: Option<Vec<VertexSet>>,
}

impl Partial {
    /// Vertices that belong to every maximal independent set of the scope.
    fn fixed(g: &WeightedGraph, set: &VertexSet, record: bool) -> Partial {
        let mut solution = set.clone();
        solution.retain_positive(g);
        Partial {
            weight: g.set_weight(set),
            solution,
            leaves: record.then(|| vec![set.clone()]),
        }
    }

    /// Independent parts combined.
    fn and(self, other: Partial) -> Partial {
        let leaves = match (self.leaves, other.leaves) {
            (Some(a), Some(b)) => Some(
                a.iter()
                    .flat_map(|x| b.iter().map(move |y| x.union(y)))
                    .collect(),
            ),
            _ => None,
        };
        Partial {
            weight: self.weight + other.weight,
            solution: self.solution.union(&other.solution),
            leaves,
        }
    }

    /// Alternatives; ties keep `self`.
    fn or(self, other: Partial) -> Partial {
        let leaves = match (self.leaves, other.leaves) {
            (Some(mut a), Some(b)) => {
                a.extend(b);
                Some(a)
            }
            _ => None,
        };
        let (weight, solution) = if other.weight > self.weight {
            (other.weight, other.solution)
        } else {
            (self.weight, self.solution)
        };
        Partial {
            weight,
            solution,
            leaves,
        }
    }
}

/// The highest case a scope may land in, and the fact that guarantees it.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Expect {
    cap: u8,
    fact: &'static str,
}

impl Expect {
    const ANY: Expect = Expect {
        cap: u8::MAX,
        fact: "any case",
    };

    pub(crate) fn at_most(label: CaseLabel, fact: &'static str) -> Expect {
        Expect {
            cap: label.rank(),
            fact,
        }
    }
}

/// What the dispatcher needs to know about a component in its frame.
pub(crate) struct Ctx {
    pub frame: Frame,
    pub k: VertexSet,
    pub h: VertexSet,
    pub z: VertexSet,
    /// Nontrivial components of `G[Z]`; empty when `G[Z]` is not bipartite.
    pub greens: Vec<GreenInfo>,
}

enum Analysis {
    Leaf(Bipartition, CaseLabel),
    NearlyBipartite,
    Case(CaseLabel, Ctx),
}

pub(crate) struct Solver<'g> {
    pub g: &'g WeightedGraph,
    record: bool,
    depth_limit: usize,
    metrics: Metrics,
}

impl<'g> Solver<'g> {
    fn new(g: &'g WeightedGraph, opts: SolveOptions) -> Self {
        Solver {
            g,
            record: opts.record_leaves,
            depth_limit: opts.depth_limit.unwrap_or(4 * g.n()).max(1),
            metrics: Metrics::default(),
        }
    }

    fn finish(self, p: Partial) -> Result<SolveResult, SolveError> {
        if !self.g.is_independent(&p.solution) || self.g.set_weight(&p.solution) != p.weight {
            return Err(SolveError::ContextViolation {
                what: "solution is not independent or misreports its weight".into(),
                vertices: p.solution.to_vec(),
            });
        }
        let mut leaves = p.leaves.unwrap_or_default();
        leaves.sort();
        leaves.dedup();
        Ok(SolveResult {
            weight: p.weight,
            solution: p.solution,
            leaves,
            metrics: self.metrics,
        })
    }

    fn hit(&mut self, label: CaseLabel) {
        *self.metrics.case_hits.entry(label).or_insert(0) += 1;
    }

    /// Connected components of the whole graph, each through the
    /// anti-neighbourhood recurrence unless it is already easy.
    fn top(&mut self, all: &VertexSet) -> Result<Partial, SolveError> {
        let g = self.g;
        let (iso, comps) = split(g, all);
        let mut p = Partial::fixed(g, &iso, self.record);
        for c in comps {
            self.metrics.subproblems += 1;
            let part = if let Ok(bip) = g.bipartition(&c) {
                self.hit(CaseLabel::Bipartite);
                self.leaf(&c, &bip)?
            } else if find_induced_c5(g, &c).is_none() {
                self.hit(CaseLabel::NearlyBipartite);
                self.nearly_bipartite(&c, None)?
            } else {
                self.pivot_all(&c)?
            };
            p = p.and(part);
        }
        Ok(p)
    }

    fn pivot_all(&mut self, c: &VertexSet) -> Result<Partial, SolveError> {
        let g = self.g;
        let mut best: Option<Partial> = None;
        for v in c {
            let mut anti = c.difference(g.neighbors(v));
            anti.remove(v);
            let (iso, comps) = split(g, &anti);
            let mut fixed = iso;
            fixed.insert(v);
            let mut p = Partial::fixed(g, &fixed, self.record);
            for k in comps {
                let ctx = make_context(g, c, v, &k)?;
                p = p.and(self.component(ctx.frame(), &k, Expect::ANY, 1)?);
            }
            best = Some(match best {
                Some(b) => b.or(p),
                None => p,
            });
        }
        Ok(best.expect("component is nonempty"))
    }

    /// Harvests isolated vertices and dispatches each remaining component.
    pub(crate) fn solve_scope(
        &mut self,
        frame: Frame,
        scope: &VertexSet,
        expect: Expect,
        depth: usize,
    ) -> Result<Partial, SolveError> {
        let (iso, comps) = split(self.g, scope);
        let mut p = Partial::fixed(self.g, &iso, self.record);
        for k in comps {
            p = p.and(self.component(frame, &k, expect, depth)?);
        }
        Ok(p)
    }

    fn component(
        &mut self,
        frame: Frame,
        k: &VertexSet,
        expect: Expect,
        depth: usize,
    ) -> Result<Partial, SolveError> {
        if depth > self.depth_limit {
            return Err(SolveError::ContextViolation {
                what: format!("recursion deeper than {}", self.depth_limit),
                vertices: k.to_vec(),
            });
        }
        self.metrics.subproblems += 1;
        self.metrics.max_depth = self.metrics.max_depth.max(depth);
        let analysis = self.analyze(frame, k)?;
        let label = match &analysis {
            Analysis::Leaf(_, l) | Analysis::Case(l, _) => *l,
            Analysis::NearlyBipartite => CaseLabel::NearlyBipartite,
        };
        if label.rank() > expect.cap {
            return Err(self.violation(expect.fact, k, Some(frame)));
        }
        self.hit(label);
        match analysis {
            Analysis::Leaf(bip, _) => self.leaf(k, &bip),
            Analysis::NearlyBipartite => self.nearly_bipartite(k, Some(frame)),
            Analysis::Case(label, ctx) => cases::run(self, label, &ctx, depth),
        }
    }

    fn analyze(&self, frame: Frame, k: &VertexSet) -> Result<Analysis, SolveError> {
        let g = self.g;
        if let Ok(bip) = g.bipartition(k) {
            return Ok(match self.occurrence1(frame, k) {
                Some(explicit) => Analysis::Leaf(explicit, CaseLabel::Occurrence1),
                None => Analysis::Leaf(bip, CaseLabel::Bipartite),
            });
        }
        if find_induced_c5(g, k).is_none() {
            return Ok(Analysis::NearlyBipartite);
        }
        let h = k.intersection(g.neighbors(frame.d));
        let z = k.difference(&h);
        if h.is_empty() {
            return Err(self.violation("d contacts every component holding a C5", k, Some(frame)));
        }
        if !g.is_independent(&h) {
            return Err(self.violation("N(d) is independent", k, Some(frame)));
        }
        let mut ctx = Ctx {
            frame,
            k: k.clone(),
            h,
            z,
            greens: Vec::new(),
        };
        let Some(greens) = green_info(g, &ctx.h, &ctx.z) else {
            return Ok(Analysis::Case(CaseLabel::Case2, ctx));
        };
        if ctx.h.iter().any(|x| has_type1(g, x, &ctx.z)) {
            return Ok(Analysis::Case(CaseLabel::Case12, ctx));
        }
        if greens
            .iter()
            .any(|t| t.contactors.iter().any(|&(_, c)| c == Contact::BothSides))
        {
            return Err(self.violation(
                "a vertex of H seeing both sides of a component of G[Z] closes a type-1 C5",
                k,
                Some(frame),
            ));
        }
        let green: Vec<&GreenInfo> = greens.iter().filter(|t| t.is_green()).collect();
        let label = if green.is_empty() {
            CaseLabel::Case111
        } else if ctx.h.iter().any(|x| {
            green
                .iter()
                .filter(|t| matches!(t.contact_of(x), Contact::Proper(_)))
                .count()
                >= 2
        }) {
            CaseLabel::Case1122
        } else if green
            .iter()
            .any(|t| !t.proper_on(Side::One).is_empty() && !t.proper_on(Side::Two).is_empty())
        {
            CaseLabel::Case11212
        } else if green.len() == 1 {
            CaseLabel::Case112111
        } else {
            CaseLabel::Case112112
        };
        ctx.greens = greens;
        Ok(Analysis::Case(label, ctx))
    }

    /// For a bipartite `K` made of `H` and one green component `T` contacted
    /// on a single side: the bipartition with each `H` vertex opposite the
    /// side it sees. `H` vertices missing `T` go with `U1`.
    fn occurrence1(&self, frame: Frame, k: &VertexSet) -> Option<Bipartition> {
        let g = self.g;
        let h = k.intersection(g.neighbors(frame.d));
        let z = k.difference(&h);
        if h.is_empty() || !g.is_independent(&h) {
            return None;
        }
        let mut greens = green_info(g, &h, &z)?;
        if greens.len() != 1 || greens[0].component != z {
            return None;
        }
        let t = greens.pop()?.oriented();
        if !t.is_green() || !t.proper_on(Side::Two).is_empty() {
            return None;
        }
        let mut side1 = t.bip.side1.clone();
        let mut side2 = t.bip.side2.clone();
        for x in &h {
            match t.contact_of(x) {
                Contact::HalfJoin(Side::One) | Contact::Proper(Side::One) => side2.insert(x),
                Contact::BothSides => return None,
                _ => side1.insert(x),
            };
        }
        Some(Bipartition { side1, side2 })
    }

    fn leaf(&mut self, k: &VertexSet, bip: &Bipartition) -> Result<Partial, SolveError> {
        self.metrics.leaves += 1;
        let sol = mwis_bipartite(self.g, k, bip).map_err(|e| SolveError::ContextViolation {
            what: format!("bipartite leaf rejected: {e}"),
            vertices: k.to_vec(),
        })?;
        Ok(Partial {
            weight: sol.weight,
            solution: sol.independent_set,
            leaves: self.record.then(|| vec![k.clone()]),
        })
    }

    /// C5-free connected `k`: every anti-neighbourhood is bipartite.
    fn nearly_bipartite(
        &mut self,
        k: &VertexSet,
        frame: Option<Frame>,
    ) -> Result<Partial, SolveError> {
        let g = self.g;
        let mut best: Option<Partial> = None;
        for v in k {
            let mut anti = k.difference(g.neighbors(v));
            anti.remove(v);
            let Ok(bip) = g.bipartition(&anti) else {
                return Err(self.violation(
                    "anti-neighbourhoods in a connected C5-free graph are bipartite",
                    k,
                    frame,
                ));
            };
            let p = Partial::fixed(g, &VertexSet::singleton(v), self.record)
                .and(self.leaf(&anti, &bip)?);
            best = Some(match best {
                Some(b) => b.or(p),
                None => p,
            });
        }
        Ok(best.expect("component is nonempty"))
    }

    /// Piece of `ctx.k` solved in the same frame. A piece equal to `ctx.k`
    /// must land strictly below `own`.
    pub(crate) fn sub(
        &mut self,
        ctx: &Ctx,
        own: CaseLabel,
        set: &VertexSet,
        expect: Expect,
        depth: usize,
    ) -> Result<Partial, SolveError> {
        let mut expect = expect;
        if *set == ctx.k {
            expect.cap = expect.cap.min(own.rank().saturating_sub(1));
        }
        self.solve_scope(ctx.frame, set, expect, depth + 1)
    }

    /// Maximum over the pieces of an elimination: `step` gets the residual
    /// scope (earlier elements removed), the element `h`, and the residual
    /// minus `N(h)`; `tail` gets the scope minus all of `seq`.
    pub(crate) fn eliminate(
        &mut self,
        scope: &VertexSet,
        seq: &[Vertex],
        mut step: impl FnMut(&mut Self, &VertexSet, Vertex, &VertexSet) -> Result<Partial, SolveError>,
        tail: impl FnOnce(&mut Self, &VertexSet) -> Result<Partial, SolveError>,
    ) -> Result<Partial, SolveError> {
        let mut residual = scope.clone();
        let mut best: Option<Partial> = None;
        for &h in seq {
            let piece = residual.difference(self.g.neighbors(h));
            let p = step(self, &residual, h, &piece)?;
            best = Some(match best {
                Some(b) => b.or(p),
                None => p,
            });
            residual.remove(h);
        }
        let p = tail(self, &residual)?;
        Ok(match best {
            Some(b) => b.or(p),
            None => p,
        })
    }

    /// A failed structural fact: look for a forbidden pattern near the scope,
    /// then anywhere.
    pub(crate) fn violation(
        &self,
        fact: &'static str,
        scope: &VertexSet,
        frame: Option<Frame>,
    ) -> SolveError {
        let g = self.g;
        let mut near = scope.clone();
        if let Some(f) = frame {
            near.insert(f.v);
            near.insert(f.d);
        }
        let witness = find_triangle_within(g, &near)
            .or_else(|| find_triangle(g))
            .or_else(|| find_induced_s124_within(g, &near))
            .or_else(|| find_induced_s124(g));
        match witness {
            Some(witness) => {
                debug_assert!(witness.verify(g));
                SolveError::ClassViolation { fact, witness }
            }
            None => SolveError::ContextViolation {
                what: format!("{fact} failed without a forbidden pattern"),
                vertices: scope.to_vec(),
            },
        }
    }
}
