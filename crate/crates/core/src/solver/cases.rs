//! Handlers for the branches of the case tree. Each one cuts `K` into
//! pieces through [`Solver::eliminate`] and sends every piece back to the
//! dispatcher with the highest case it is allowed to land in.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use super::structure::{
    compute_y, doubly_contacted_triples, green_info, has_type1, nail_set_l, order_by_domination,
    Contact, GreenInfo, Side,
};
use super::{CaseLabel, Ctx, Expect, Frame, Partial, Solver};
use crate::error::SolveError;
use crate::graph::{Vertex, VertexSet};

type Res = Result<Partial, SolveError>;

pub(super) fn run(s: &mut Solver, label: CaseLabel, ctx: &Ctx, depth: usize) -> Res {
    match label {
        CaseLabel::Case111 => case_1_1_1(s, ctx, depth),
        CaseLabel::Case112111 => case_1_1_2_1_1_1(s, ctx, depth),
        CaseLabel::Case112112 => case_1_1_2_1_1_2(s, ctx, depth),
        CaseLabel::Case11212 => case_1_1_2_1_2(s, ctx, depth),
        CaseLabel::Case1122 => case_1_1_2_2(s, ctx, depth),
        CaseLabel::Case12 => case_1_2(s, ctx, depth),
        CaseLabel::Case2 => case_2(s, ctx, depth),
        other => unreachable!("{other} is not a case handler"),
    }
}

/// No green component. Order the vertices that doubly contact a `P1 + P2`
/// of `G[Z]` by domination; every piece is C5-free.
fn case_1_1_1(s: &mut Solver, ctx: &Ctx, depth: usize) -> Res {
    let g = s.g;
    let own = CaseLabel::Case111;
    let triples: BTreeMap<Vertex, Vec<(Vertex, Vertex, Vertex)>> = ctx
        .h
        .iter()
        .map(|h| (h, doubly_contacted_triples(g, h, &ctx.z)))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    if triples.is_empty() {
        return Err(s.violation(
            "some vertex of H doubly contacts a P1+P2 when K has a C5",
            &ctx.k,
            Some(ctx.frame),
        ));
    }
    let hs: Vec<Vertex> = triples.keys().copied().collect();
    let touches = |a: Vertex, &(x, y, z): &(Vertex, Vertex, Vertex)| {
        g.has_edge(a, x) || g.has_edge(a, y) || g.has_edge(a, z)
    };
    let order = order_by_domination(
        &hs,
        |a, b| a == b || triples[&b].iter().all(|t| touches(a, t)),
        |a| a,
    )
    .map_err(|rest| {
        s.violation(
            "the doubly-contact order has a maximum",
            &ctx.k.union(&rest.into_iter().collect()),
            Some(ctx.frame),
        )
    })?;
    let fact = "pieces cut by the doubly-contact order are C5-free";
    let expect = Expect::at_most(CaseLabel::NearlyBipartite, fact);
    s.eliminate(
        &ctx.k,
        &order,
        |s, _, _, piece| s.sub(ctx, own, piece, expect, depth),
        |s, rest| s.sub(ctx, own, rest, expect, depth),
    )
}

/// Solves `piece = residual \ N(h)` by splitting on the set `Y` of `h`
/// relative to the green component `t` (side one is the contacted side).
#[allow(clippy::too_many_arguments)]
fn y_split(
    s: &mut Solver,
    ctx: &Ctx,
    own: CaseLabel,
    residual: &VertexSet,
    t: &GreenInfo,
    h: Vertex,
    piece: &VertexSet,
    expect: Expect,
    depth: usize,
) -> Res {
    let hr = residual.intersection(&ctx.h);
    let y = compute_y(s.g, &hr, t.side(Side::One), t.side(Side::Two), h).to_vec();
    s.eliminate(
        piece,
        &y,
        |s, _, _, p| s.sub(ctx, own, p, expect, depth),
        |s, rest| s.sub(ctx, own, rest, expect, depth),
    )
}

fn by_degree_desc(s: &Solver, hs: &mut [Vertex], within: &VertexSet) {
    hs.sort_by_key(|&h| (Reverse(s.g.degree_in(h, within)), h));
}

/// Exactly one green component `T`, properly contacted on `U1` only, and
/// other components in `G[Z]`.
fn case_1_1_2_1_1_1(s: &mut Solver, ctx: &Ctx, depth: usize) -> Res {
    let g = s.g;
    let own = CaseLabel::Case112111;
    let t = ctx
        .greens
        .iter()
        .find(|t| t.is_green())
        .cloned()
        .expect("one green component")
        .oriented();
    let elsewhere = ctx.z.difference(&t.component);
    let mut out: Vec<Vertex> = t
        .proper_on(Side::One)
        .into_iter()
        .filter(|&h| g.contacts(h, &elsewhere))
        .collect();
    by_degree_desc(s, &mut out, t.side(Side::One));

    let no_green = Expect::at_most(
        CaseLabel::Case111,
        "no green component survives the Y split",
    );
    s.eliminate(
        &ctx.k,
        &out,
        |s, r, h, piece| y_split(s, ctx, own, r, &t, h, piece, no_green, depth),
        |s, rest| {
            // half-joins to T, then what is left is bipartite
            let joins: Vec<Vertex> = rest
                .intersection(&ctx.h)
                .iter()
                .filter(|&h| matches!(t.contact_of(h), Contact::HalfJoin(_)))
                .collect();
            s.eliminate(
                rest,
                &joins,
                |s, _, _, p| {
                    let e = Expect::at_most(
                        CaseLabel::Case111,
                        "removing a half-join to T leaves no green component",
                    );
                    s.sub(ctx, own, p, e, depth)
                },
                |s, p| {
                    let e = Expect::at_most(
                        CaseLabel::Occurrence1,
                        "without the outside contactors and half-joins K is bipartite",
                    );
                    s.sub(ctx, own, p, e, depth)
                },
            )
        },
    )
}

/// At least two green components, each contacted on one side: peel off
/// critical vertices until one green component is left.
fn case_1_1_2_1_1_2(s: &mut Solver, ctx: &Ctx, depth: usize) -> Res {
    let g = s.g;
    let own = CaseLabel::Case112112;
    let mut residual = ctx.k.clone();
    let mut critical: Vec<(Vertex, GreenInfo)> = Vec::new();
    loop {
        let hr = residual.intersection(&ctx.h);
        let greens: Vec<GreenInfo> = green_info(g, &hr, &ctx.z)
            .expect("G[Z] is bipartite")
            .into_iter()
            .filter(GreenInfo::is_green)
            .map(GreenInfo::oriented)
            .collect();
        if greens.len() < 2 {
            break;
        }
        let mut found: Option<(Vertex, usize)> = None;
        for (i, t) in greens.iter().enumerate() {
            let hi = t.proper_on(Side::One);
            let top = hi
                .iter()
                .map(|&h| g.degree_in(h, t.side(Side::One)))
                .max()
                .unwrap_or(0);
            for &h in &hi {
                let joins_rest = greens
                    .iter()
                    .enumerate()
                    .all(|(j, tj)| j == i || matches!(tj.contact_of(h), Contact::HalfJoin(_)));
                if g.degree_in(h, t.side(Side::One)) == top
                    && joins_rest
                    && found.is_none_or(|(f, _)| h < f)
                {
                    found = Some((h, i));
                }
            }
        }
        let Some((h, i)) = found else {
            return Err(s.violation(
                "a critical vertex exists while two green components remain",
                &residual,
                Some(ctx.frame),
            ));
        };
        critical.push((h, greens[i].clone()));
        residual.remove(h);
    }
    let seq: Vec<Vertex> = critical.iter().map(|&(h, _)| h).collect();
    let no_green = Expect::at_most(
        CaseLabel::Case111,
        "no green component survives the Y split of a critical vertex",
    );
    let one_green = Expect::at_most(
        CaseLabel::Case112111,
        "one green component remains without the critical vertices",
    );
    let mut i = 0;
    s.eliminate(
        &ctx.k,
        &seq,
        |s, r, h, piece| {
            let t = &critical[i].1;
            i += 1;
            y_split(s, ctx, own, r, t, h, piece, no_green, depth)
        },
        |s, rest| s.sub(ctx, own, rest, one_green, depth),
    )
}

/// Some green component is properly contacted on both sides. Eliminate the
/// side-one proper contactors of every such component; afterwards all green
/// components are one-sided.
fn case_1_1_2_1_2(s: &mut Solver, ctx: &Ctx, depth: usize) -> Res {
    let g = s.g;
    let own = CaseLabel::Case11212;
    let both: Vec<&GreenInfo> = ctx
        .greens
        .iter()
        .filter(|t| !t.proper_on(Side::One).is_empty() && !t.proper_on(Side::Two).is_empty())
        .collect();
    let mut seq: Vec<(Vertex, usize)> = Vec::new();
    for (i, t) in both.iter().enumerate() {
        seq.extend(t.proper_on(Side::One).into_iter().map(|h| (h, i)));
    }
    seq.sort_by_key(|&(h, i)| (Reverse(g.degree_in(h, both[i].side(Side::One))), h));
    let order: Vec<Vertex> = seq.iter().map(|&(h, _)| h).collect();

    let step = Expect::at_most(own, "pieces stay inside case 1.1.2.1");
    let tail = Expect::at_most(
        CaseLabel::Case112112,
        "green components are one-sided without the side-one contactors",
    );
    let mut i = 0;
    s.eliminate(
        &ctx.k,
        &order,
        |s, r, h, piece| {
            let t = both[seq[i].1];
            i += 1;
            if g.contacts(h, &ctx.z.difference(&t.component)) {
                y_split(s, ctx, own, r, t, h, piece, step, depth)
            } else {
                s.sub(ctx, own, piece, step, depth)
            }
        },
        |s, rest| s.sub(ctx, own, rest, tail, depth),
    )
}

/// A vertex of `H` properly contacts two green components. Eliminate all
/// proper contactors in basic-vertex order.
fn case_1_1_2_2(s: &mut Solver, ctx: &Ctx, depth: usize) -> Res {
    let g = s.g;
    let own = CaseLabel::Case1122;
    let greens: Vec<&GreenInfo> = ctx.greens.iter().filter(|t| t.is_green()).collect();
    let mut proper: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    let mut touched: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (i, t) in greens.iter().enumerate() {
        for &(h, c) in &t.contactors {
            touched.entry(h).or_default().push(i);
            if matches!(c, Contact::Proper(_)) {
                proper.entry(h).or_default().push(i);
            }
        }
    }
    let hs: Vec<Vertex> = proper.keys().copied().collect();
    let ge = |a: Vertex, b: Vertex| a == b || proper[&b].iter().all(|i| touched[&a].contains(i));
    let order =
        order_by_domination(&hs, ge, |a| (Reverse(g.degree_in(a, &ctx.z)), a)).map_err(|_| {
            s.violation(
                "the contact order on proper contactors has a maximum",
                &ctx.k,
                Some(ctx.frame),
            )
        })?;
    let step = Expect::at_most(
        CaseLabel::Case11212,
        "no vertex properly contacts two green components after a basic vertex",
    );
    let tail = Expect::at_most(
        CaseLabel::Case111,
        "no green component without the proper contactors",
    );
    s.eliminate(
        &ctx.k,
        &order,
        |s, _, _, piece| s.sub(ctx, own, piece, step, depth),
        |s, rest| s.sub(ctx, own, rest, tail, depth),
    )
}

/// A type-1 C5 exists. Eliminate `H` by descending degree into `Z`; inside
/// each piece split on the remaining nails and their `L` sets.
fn case_1_2(s: &mut Solver, ctx: &Ctx, depth: usize) -> Res {
    let g = s.g;
    let own = CaseLabel::Case12;
    let mut order = ctx.h.to_vec();
    by_degree_desc(s, &mut order, &ctx.z);
    let no_type1 = Expect::at_most(CaseLabel::Case1122, "no type-1 C5 survives the nail split");
    let no_nails = Expect::at_most(
        CaseLabel::Case1122,
        "no type-1 C5 once the nails are removed",
    );
    let in_z = Expect::at_most(CaseLabel::Bipartite, "K minus H lies in the bipartite G[Z]");
    s.eliminate(
        &ctx.k,
        &order,
        |s, _, _, piece| {
            let zs = piece.intersection(&ctx.z);
            let nails: Vec<Vertex> = piece
                .intersection(&ctx.h)
                .iter()
                .filter(|&a| has_type1(g, a, &zs))
                .collect();
            s.eliminate(
                piece,
                &nails,
                |s, _, a, p| {
                    let l = nail_set_l(g, a, &ctx.z).intersection(p).to_vec();
                    s.eliminate(
                        p,
                        &l,
                        |s, _, _, q| s.sub(ctx, own, q, no_type1, depth),
                        |s, q| s.sub(ctx, own, q, no_type1, depth),
                    )
                },
                |s, rest| s.sub(ctx, own, rest, no_nails, depth),
            )
        },
        |s, rest| s.sub(ctx, own, rest, in_z, depth),
    )
}

/// `G[Z]` is not bipartite: it has a single non-bipartite component `Z*`
/// and every vertex contacting `Z*` leaves it bipartite.
fn case_2(s: &mut Solver, ctx: &Ctx, depth: usize) -> Res {
    let g = s.g;
    let own = CaseLabel::Case2;
    let odd: Vec<VertexSet> = g
        .connected_components(&ctx.z)
        .into_iter()
        .map(|c| c.vertices)
        .filter(|c| !g.is_bipartite(c))
        .collect();
    if odd.len() != 1 {
        return Err(s.violation(
            "at most one component of G[Z] is not bipartite",
            &ctx.k,
            Some(ctx.frame),
        ));
    }
    let z_star = &odd[0];
    let h_star: Vec<Vertex> = ctx.h.iter().filter(|&h| g.contacts(h, z_star)).collect();
    if h_star.is_empty() {
        return Err(s.violation("K is connected", &ctx.k, Some(ctx.frame)));
    }
    if h_star
        .iter()
        .any(|&h| !g.is_bipartite(&z_star.difference(g.neighbors(h))))
    {
        return Err(s.violation(
            "Z* minus the neighbours of a contactor is bipartite",
            &ctx.k,
            Some(ctx.frame),
        ));
    }
    let case1 = Expect::at_most(CaseLabel::Case12, "G[Z] becomes bipartite");
    s.eliminate(
        &ctx.k,
        &h_star,
        |s, _, _, piece| s.sub(ctx, own, piece, case1, depth),
        |s, rest| {
            let others = s.sub(ctx, own, &rest.difference(z_star), case1, depth)?;
            // Z* in its own frame: v := d, d := the first contactor
            let frame = Frame {
                v: ctx.frame.d,
                d: h_star[0],
            };
            let e = Expect::at_most(
                CaseLabel::Case12,
                "Z* split by a contactor is bipartite on its far side",
            );
            Ok(others.and(s.solve_scope(frame, z_star, e, depth + 1)?))
        },
    )
}
