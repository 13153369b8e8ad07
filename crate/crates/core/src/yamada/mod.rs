//! Cog drawings, the Yamada polynomial `R` of a drawing, and the cog
//! invariants `R(-1)` and `Y = |R(1)|`.
//!
//! `R` of a drawing is the state sum
//! `sum_s A^{w(s)} (-1)^{k(G[s])} T(G[s]; 0, -sigma)` with
//! `sigma = A + 1 + A^-1`. A closed curve through no vertex counts as a vertex
//! with one loop, contributing `sigma`.

mod drawing;
mod tutte;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use drawing::{
    draw, draw_with, Arc, ArcEnd, Crossing, CrossingState, DrawSpec, Drawing, Node, Point,
    Resolution,
};
pub use tutte::{flow_count, flow_count_tutte, tutte_at_int, tutte_at_laurent, tutte_x0};

use crate::error::{CogError, Result};
use crate::model::Cog;
use crate::multigraph::Multigraph;
use crate::poly::LaurentPoly;

fn num_states(d: &Drawing) -> u64 {
    3u64.pow(d.num_crossings() as u32)
}

fn sign_for(components: usize) -> i32 {
    if components.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(-1)^{k(g)} T(g; 0, -sigma)`.
pub fn plane_r(g: &Multigraph) -> LaurentPoly {
    let t = tutte_at_laurent(g, &-LaurentPoly::sigma());
    t.scale(&BigInt::from(sign_for(g.num_components())))
}

/// `R` by the state sum.
pub fn yamada_r(d: &Drawing) -> LaurentPoly {
    let n = d.num_crossings();
    (0..num_states(d))
        .into_par_iter()
        .map(|i| {
            let s = CrossingState::nth(n, i);
            let g = d.resolve(&s).with_free_loops_as_loops();
            plane_r(&g).shift(s.weight())
        })
        .reduce(LaurentPoly::zero, |a, b| a + b)
}

/// `R` of a plane graph by the local rules: deletion plus contraction of a
/// non-loop edge, `-1` for a point, and `-(-sigma)^k` for a bouquet of `k`
/// loops; disjoint pieces multiply.
pub fn plane_r_skein(g: &Multigraph) -> LaurentPoly {
    fn rec(n: usize, edges: &[(usize, usize)]) -> LaurentPoly {
        if let Some(i) = edges.iter().position(|(a, b)| a != b) {
            let (a, b) = edges[i];
            let rest: Vec<(usize, usize)> =
                edges[..i].iter().chain(&edges[i + 1..]).copied().collect();
            let merged: Vec<(usize, usize)> = rest
                .iter()
                .map(|&(x, y)| (if x == b { a } else { x }, if y == b { a } else { y }))
                .collect();
            // contracting leaves `b` isolated, so drop its point factor
            return rec(n, &rest) + -rec(n, &merged);
        }
        let mut loops = vec![0u32; n];
        for &(a, _) in edges {
            loops[a] += 1;
        }
        let minus_sigma = -LaurentPoly::sigma();
        loops
            .iter()
            .map(|&k| -minus_sigma.pow(k))
            .fold(LaurentPoly::one(), |acc, p| acc * p)
    }
    rec(g.num_vertices(), g.edges())
}

/// `R` by the skein relation over crossings, evaluating plane pieces with
/// [`plane_r_skein`].
pub fn yamada_r_skein(d: &Drawing) -> LaurentPoly {
    fn rec(d: &Drawing, state: &mut Vec<i8>) -> LaurentPoly {
        if state.len() == d.num_crossings() {
            let s = CrossingState(state.clone());
            return plane_r_skein(&d.resolve(&s).with_free_loops_as_loops());
        }
        let mut out = LaurentPoly::zero();
        for (s, shift) in [(1i8, 1), (-1, -1), (0, 0)] {
            state.push(s);
            out += rec(d, state).shift(shift);
            state.pop();
        }
        out
    }
    rec(d, &mut Vec::new())
}

/// `R` at `A = a` for `a = 1` or `a = -1`, in integer arithmetic.
pub fn yamada_r_at_unit(d: &Drawing, a: i64) -> BigInt {
    assert!(a == 1 || a == -1, "A must be 1 or -1");
    let y = -(a + 1 + a);
    let n = d.num_crossings();
    (0..num_states(d))
        .into_par_iter()
        .map(|i| {
            let s = CrossingState::nth(n, i);
            let g = d.resolve(&s).with_free_loops_as_loops();
            let mut v = tutte_at_int(&g, y) * sign_for(g.num_components());
            if a == -1 && s.weight() % 2 != 0 {
                v = -v;
            }
            v
        })
        .sum()
}

/// Drawing `i` of a multi-drawing check: seeded, with vertex 0 reversed on
/// odd `i` so at least two rotation representatives are used.
fn nth_drawing(c: &Cog, seed: u64, i: u64) -> Drawing {
    let s = seed.wrapping_add(i);
    let mut rng = ChaCha8Rng::seed_from_u64(s);
    let mut spec = DrawSpec::random(c, &mut rng);
    if let Some(r) = spec.reversed.first_mut() {
        *r = i % 2 == 1;
    }
    draw_with(c, &spec, s)
}

fn agree(
    c: &Cog,
    drawings: u64,
    seed: u64,
    value: impl Fn(&Drawing) -> BigInt + Sync,
) -> Result<BigInt> {
    if drawings == 0 {
        return Err(CogError::InvalidArgument(
            "need at least one drawing".into(),
        ));
    }
    let values: Vec<BigInt> = (0..drawings)
        .into_par_iter()
        .map(|i| value(&nth_drawing(c, seed, i)))
        .collect();
    if let Some(v) = values.iter().find(|v| **v != values[0]) {
        return Err(CogError::Inconsistent(format!(
            "drawings of {c} disagree: {} versus {v}",
            values[0]
        )));
    }
    Ok(values[0].clone())
}

/// `Y = |R(1)|`, checked to agree across `drawings` drawings.
pub fn invariant_y(c: &Cog, drawings: u64, seed: u64) -> Result<BigInt> {
    agree(c, drawings, seed, |d| yamada_r_at_unit(d, 1).abs())
}

/// `R(-1)`, checked to agree across `drawings` drawings.
pub fn invariant_rm1(c: &Cog, drawings: u64, seed: u64) -> Result<BigInt> {
    agree(c, drawings, seed, |d| yamada_r_at_unit(d, -1))
}

/// `(-A)^{-m} R`, where `A^m` is the lowest term of `R`.
pub fn normalised(r: &LaurentPoly) -> LaurentPoly {
    r.normalised()
}
