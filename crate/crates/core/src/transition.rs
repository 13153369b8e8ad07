//! The transition polynomial `Q(G; (alpha, beta, gamma), t)` of pointed-gecs.
//!
//! [`split`], [`splice`] and [`contract_e`] act at one e-edge; the recursion
//! `Q(G) = alpha Q(G ⋈ e) + beta Q(G ⫛ e) + gamma Q(G / e)` with base
//! `t^k(G)` is [`transition_recursive`]. [`transition_statesum`] and
//! [`k_valuation_sum`] are independent formulations, and
//! [`topological_transition`] is the ribbon-graph polynomial on signed
//! rotation systems.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{CogError, Result};
use crate::model::{GecGraph, GecSum, PointedGec, SignedRotationSystem};
use crate::poly::{MultiPoly, Var};
use crate::surface::boundary_count;

/// The five local configurations at an e-edge `e = (u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeCase {
    /// Four distinct adjacent v-edges.
    FourDistinct,
    /// A v-loop at exactly one end.
    OneLoop,
    /// v-loops at both ends.
    TwoLoops,
    /// Exactly one v-edge parallel to `e`.
    OneParallel,
    /// Both v-edges at `u` go to `v`.
    TripleParallel,
}

/// The two summands of a splice, with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceResult {
    pub summands: [PointedGec; 2],
}

impl SpliceResult {
    pub fn to_sum(&self) -> GecSum {
        self.summands.iter().cloned().collect()
    }
}

struct Local {
    u: usize,
    v: usize,
    u_nb: Vec<usize>,
    v_nb: Vec<usize>,
    case: EdgeCase,
}

fn local(g: &GecGraph, e: usize) -> Result<Local> {
    let (a, b) = g.e_edge(e)?;
    let (mut u, mut v) = (a, b);
    let mut u_nb = g.v_neighbours(u);
    let mut v_nb = g.v_neighbours(v);
    if u_nb.len() != 2 || v_nb.len() != 2 {
        return Err(CogError::Inconsistent(format!(
            "ends of e-edge {e} do not have degree 3"
        )));
    }
    let par = u_nb.iter().filter(|&&w| w == v).count();
    let loop_u = u_nb == [u, u];
    let loop_v = v_nb == [v, v];
    let case = match (par, loop_u, loop_v) {
        (2, _, _) => EdgeCase::TripleParallel,
        (1, _, _) => EdgeCase::OneParallel,
        (0, true, true) => EdgeCase::TwoLoops,
        (0, true, false) | (0, false, true) => EdgeCase::OneLoop,
        (0, false, false) => EdgeCase::FourDistinct,
        _ => {
            return Err(CogError::Inconsistent(format!(
                "unrecognised configuration at e-edge {e}"
            )))
        }
    };
    if case == EdgeCase::OneLoop && loop_v {
        std::mem::swap(&mut u, &mut v);
        std::mem::swap(&mut u_nb, &mut v_nb);
    }
    Ok(Local {
        u,
        v,
        u_nb,
        v_nb,
        case,
    })
}

pub fn edge_case(g: &PointedGec, e: usize) -> Result<EdgeCase> {
    Ok(local(g, e)?.case)
}

fn without(g: &GecGraph, l: &Local) -> GecGraph {
    let mut h = g.clone();
    h.remove_vertices(&[l.u, l.v]);
    h
}

fn with_loops(mut g: GecGraph, n: usize) -> GecGraph {
    g.free_loops += n;
    g
}

fn with_edges(mut g: GecGraph, edges: &[(usize, usize)]) -> GecGraph {
    for &(a, b) in edges {
        g.add_v_edge(a, b);
    }
    g
}

fn other(nb: &[usize], x: usize) -> usize {
    if nb[0] == x {
        nb[1]
    } else {
        nb[0]
    }
}

fn pointed(g: GecGraph) -> PointedGec {
    PointedGec::from_graph_unchecked(g)
}

/// `G ⫛ e`.
pub fn split(g: &PointedGec, e: usize) -> Result<PointedGec> {
    let l = local(g, e)?;
    let rest = without(g, &l);
    let out = match l.case {
        EdgeCase::FourDistinct => {
            with_edges(rest, &[(l.u_nb[0], l.u_nb[1]), (l.v_nb[0], l.v_nb[1])])
        }
        EdgeCase::OneLoop => with_loops(with_edges(rest, &[(l.v_nb[0], l.v_nb[1])]), 1),
        EdgeCase::TwoLoops => with_loops(rest, 2),
        EdgeCase::OneParallel => with_edges(rest, &[(other(&l.u_nb, l.v), other(&l.v_nb, l.u))]),
        EdgeCase::TripleParallel => with_loops(rest, 1),
    };
    Ok(pointed(out))
}

/// `G ⋈ e`, always two summands.
pub fn splice(g: &PointedGec, e: usize) -> Result<SpliceResult> {
    let l = local(g, e)?;
    let rest = without(g, &l);
    let (a, b) = match l.case {
        EdgeCase::FourDistinct => {
            let (u1, u2, v1, v2) = (l.u_nb[0], l.u_nb[1], l.v_nb[0], l.v_nb[1]);
            (
                with_edges(rest.clone(), &[(u1, v1), (u2, v2)]),
                with_edges(rest, &[(u1, v2), (u2, v1)]),
            )
        }
        EdgeCase::OneLoop => {
            let g1 = with_edges(rest, &[(l.v_nb[0], l.v_nb[1])]);
            (g1.clone(), g1)
        }
        EdgeCase::TwoLoops => (with_loops(rest.clone(), 1), with_loops(rest, 1)),
        EdgeCase::OneParallel => {
            let g1 = with_edges(rest, &[(other(&l.u_nb, l.v), other(&l.v_nb, l.u))]);
            (g1.clone(), with_loops(g1, 1))
        }
        EdgeCase::TripleParallel => (with_loops(rest.clone(), 2), with_loops(rest, 1)),
    };
    Ok(SpliceResult {
        summands: [pointed(a), pointed(b)],
    })
}

/// `G / e`: the ends of `e` merge into one pointed degree-4 vertex.
pub fn contract_e(g: &PointedGec, e: usize) -> Result<PointedGec> {
    let (u, v) = g.e_edge(e)?;
    let mut h = g.graph().clone();
    h.e_edges.remove(&e);
    h.vertices.remove(&v);
    for edge in h.v_edges.iter_mut() {
        let a = if edge.0 == v { u } else { edge.0 };
        let b = if edge.1 == v { u } else { edge.1 };
        *edge = (a.min(b), a.max(b));
    }
    Ok(pointed(h))
}

fn t_pow(k: usize) -> MultiPoly {
    MultiPoly::power_of(Var::T, k as u32)
}

fn var(v: Var) -> MultiPoly {
    MultiPoly::var(v)
}

fn checked_order(g: &PointedGec, order: Option<&[usize]>) -> Result<Vec<usize>> {
    match order {
        None => Ok(g.e_edge_ids()),
        Some(o) => {
            let mut sorted = o.to_vec();
            sorted.sort_unstable();
            if sorted != g.e_edge_ids() {
                return Err(CogError::InvalidArgument(
                    "edge order must list every e-edge exactly once".into(),
                ));
            }
            Ok(o.to_vec())
        }
    }
}

/// The recursion over e-edges in `order` (default: ascending id).
pub fn transition_recursive(g: &PointedGec, order: Option<&[usize]>) -> Result<MultiPoly> {
    let order = checked_order(g, order)?;
    fn rec(g: &PointedGec, order: &[usize]) -> Result<MultiPoly> {
        let Some((&e, rest)) = order.split_first() else {
            return Ok(t_pow(g.k()));
        };
        let sp = splice(g, e)?;
        let spliced = rec(&sp.summands[0], rest)? + rec(&sp.summands[1], rest)?;
        let split = rec(&split(g, e)?, rest)?;
        let contracted = rec(&contract_e(g, e)?, rest)?;
        Ok(var(Var::Alpha) * spliced + var(Var::Beta) * split + var(Var::Gamma) * contracted)
    }
    rec(g, &order)
}

/// `Q` extended linearly over a formal sum.
pub fn transition_of_sum(s: &GecSum) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for (g, c) in s.terms() {
        out += transition_recursive(g, None)?.scale(c);
    }
    Ok(out)
}

/// Sum over ordered partitions `(X, Y, Z)` of the e-edges of
/// `alpha^|X| beta^|Y| gamma^|Z|` times `t^k` summed over `((G ⫛ Y) / Z) ⋈ X`.
pub fn transition_statesum(g: &PointedGec) -> MultiPoly {
    let ids = g.e_edge_ids();
    let m = ids.len() as u32;
    (0..3u64.pow(m))
        .into_par_iter()
        .map(|code| {
            let mut blocks = vec![0u8; ids.len()];
            let mut c = code;
            for b in blocks.iter_mut() {
                *b = (c % 3) as u8;
                c /= 3;
            }
            let mut h = g.clone();
            for (i, &e) in ids.iter().enumerate() {
                if blocks[i] == 1 {
                    h = split(&h, e).expect("e-edge present");
                }
            }
            for (i, &e) in ids.iter().enumerate() {
                if blocks[i] == 2 {
                    h = contract_e(&h, e).expect("e-edge present");
                }
            }
            let mut summands = vec![h];
            for (i, &e) in ids.iter().enumerate() {
                if blocks[i] == 0 {
                    summands = summands
                        .iter()
                        .flat_map(|s| splice(s, e).expect("e-edge present").summands)
                        .collect();
                }
            }
            let count = |b: u8| blocks.iter().filter(|&&x| x == b).count() as u32;
            let weight = MultiPoly::monomial(
                &[
                    (Var::Alpha, count(0)),
                    (Var::Beta, count(1)),
                    (Var::Gamma, count(2)),
                ],
                1,
            );
            weight * summands.iter().map(|s| t_pow(s.k())).sum::<MultiPoly>()
        })
        .reduce(MultiPoly::zero, |a, b| a + b)
}

enum Constraint {
    /// Slots `[g_u, f_u, g_v, f_v]` of v-edge indices at an e-edge.
    EEdge([usize; 4]),
    /// v-edge slots at a pointed vertex.
    Pointed(Vec<usize>),
}

/// Sum over k-valuations `phi` of
/// `(2 alpha + beta + gamma)^tot alpha^splice beta^split`.
pub fn k_valuation_sum(g: &PointedGec, k: usize) -> Result<MultiPoly> {
    if k < 1 {
        return Err(CogError::InvalidArgument("k must be at least 1".into()));
    }
    let slots = |u: usize| -> Vec<usize> {
        let mut s = Vec::new();
        for (i, &(a, b)) in g.v_edges.iter().enumerate() {
            if a == u {
                s.push(i);
            }
            if b == u {
                s.push(i);
            }
        }
        s
    };
    let mut constraints: Vec<(usize, Constraint)> = Vec::new();
    for &(u, v) in g.e_edges.values() {
        let (su, sv) = (slots(u), slots(v));
        let c = [su[0], su[1], sv[0], sv[1]];
        constraints.push((*c.iter().max().unwrap(), Constraint::EEdge(c)));
    }
    for p in g.pointed_vertices() {
        let s = slots(p);
        constraints.push((*s.iter().max().unwrap(), Constraint::Pointed(s)));
    }
    let n = g.v_edges.len();
    let mut by_last: Vec<Vec<&Constraint>> = (0..n).map(|_| Vec::new()).collect();
    for (last, c) in &constraints {
        by_last[*last].push(c);
    }
    let mut counts: BTreeMap<(u32, u32, u32), BigInt> = BTreeMap::new();
    let mut colours = vec![0usize; n];

    fn classify(c: [usize; 4]) -> Option<u8> {
        let [gu, fu, gv, fv] = c;
        if gu == fu && gv == fv {
            Some(if gu == gv { 0 } else { 2 })
        } else if (gu == gv && fu == fv) || (gu == fv && fu == gv) {
            Some(1)
        } else {
            None
        }
    }

    fn dfs(
        i: usize,
        k: usize,
        colours: &mut Vec<usize>,
        by_last: &[Vec<&Constraint>],
        counts: &mut BTreeMap<(u32, u32, u32), BigInt>,
    ) {
        if i == colours.len() {
            let mut tally = [0u32; 3];
            for cs in by_last {
                for c in cs {
                    if let Constraint::EEdge(s) = c {
                        let cols = [colours[s[0]], colours[s[1]], colours[s[2]], colours[s[3]]];
                        tally[classify(cols).expect("checked") as usize] += 1;
                    }
                }
            }
            *counts.entry((tally[0], tally[1], tally[2])).or_default() += 1;
            return;
        }
        for col in 0..k {
            colours[i] = col;
            let ok = by_last[i].iter().all(|c| match c {
                Constraint::EEdge(s) => {
                    classify([colours[s[0]], colours[s[1]], colours[s[2]], colours[s[3]]]).is_some()
                }
                Constraint::Pointed(s) => s.iter().all(|&j| colours[j] == colours[s[0]]),
            });
            if ok {
                dfs(i + 1, k, colours, by_last, counts);
            }
        }
    }

    // an e-edge with no v-edges cannot occur in a pointed-gec
    dfs(0, k, &mut colours, &by_last, &mut counts);
    let total = var(Var::Alpha).scale(&BigInt::from(2)) + var(Var::Beta) + var(Var::Gamma);
    let mut out = MultiPoly::zero();
    for ((tot, spliced, split), c) in counts {
        out +=
            total.pow(tot) * MultiPoly::monomial(&[(Var::Alpha, spliced), (Var::Beta, split)], c);
    }
    let free = BigInt::from(k).pow(g.free_loops as u32);
    Ok(out.scale(&free))
}

/// `sum over (X, Y, Z) of alpha^|X| beta^|Y| gamma^|Z| t^{b(s^{tau(Z)} \ Y)}`.
pub fn topological_transition(s: &SignedRotationSystem) -> MultiPoly {
    let m = s.num_edges() as u32;
    (0..3u64.pow(m))
        .into_par_iter()
        .map(|code| {
            let mut blocks = vec![0u8; m as usize];
            let mut c = code;
            for b in blocks.iter_mut() {
                *b = (c % 3) as u8;
                c /= 3;
            }
            let pick =
                |b: u8| -> Vec<usize> { (0..m as usize).filter(|&e| blocks[e] == b).collect() };
            let (x, y, z) = (pick(0), pick(1), pick(2));
            let h = s
                .partial_petrial(&z)
                .and_then(|h| h.delete_edges(&y))
                .expect("edges in range");
            MultiPoly::monomial(
                &[
                    (Var::Alpha, x.len() as u32),
                    (Var::Beta, y.len() as u32),
                    (Var::Gamma, z.len() as u32),
                    (Var::T, boundary_count(&h) as u32),
                ],
                1,
            )
        })
        .reduce(MultiPoly::zero, |a, b| a + b)
}

/// Substitutes `gamma := alpha`.
pub fn gamma_as_alpha(p: &MultiPoly) -> MultiPoly {
    p.substitute(Var::Gamma, &var(Var::Alpha))
}

/// Substitutes `gamma := 0`.
pub fn gamma_zero(p: &MultiPoly) -> MultiPoly {
    p.substitute(Var::Gamma, &MultiPoly::zero())
}
