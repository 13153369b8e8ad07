//! The saturation polynomial `M(x, y)`.
//!
//! Three formulations are provided and cross-checked in the tests: the
//! delete/extract recursion on generalised gecs, the component state sum, and
//! the segment sum on cogs. [`saturation_dx`] is the `M(G, D, X)` variant.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{CogError, Result};
use crate::model::{Cog, GecGraph, GeneralisedGec};
use crate::poly::{MultiPoly, Var};

fn x_pow(k: usize) -> MultiPoly {
    MultiPoly::power_of(Var::X, k as u32)
}

fn xy(x: usize, y: usize) -> MultiPoly {
    MultiPoly::monomial(&[(Var::X, x as u32), (Var::Y, y as u32)], 1)
}

/// `M(G) = M(G \ e) + y M(G † e)`, base `x^k(G)`, processing e-edges in
/// `order` (default: ascending id).
pub fn saturation_recursive(g: &GeneralisedGec, order: Option<&[usize]>) -> Result<MultiPoly> {
    let order: Vec<usize> = match order {
        None => g.e_edge_ids(),
        Some(o) => {
            let mut sorted = o.to_vec();
            sorted.sort_unstable();
            if sorted != g.e_edge_ids() {
                return Err(CogError::InvalidArgument(
                    "edge order must list every e-edge exactly once".into(),
                ));
            }
            o.to_vec()
        }
    };
    fn rec(g: &GecGraph, order: &[usize]) -> MultiPoly {
        match order.split_first() {
            None => x_pow(g.k()),
            Some((&e, rest)) => {
                let deleted = rec(&g.delete_e_edge(e).expect("e-edge present"), rest);
                let extracted = rec(&g.extract_e_edge(e).expect("e-edge present"), rest);
                deleted + MultiPoly::var(Var::Y) * extracted
            }
        }
    }
    Ok(rec(g.graph(), &order))
}

/// `sum over A of y^|A| x^{k_v(G † A)}`, remaining e-edges deleted.
pub fn saturation_statesum(g: &GeneralisedGec) -> MultiPoly {
    let ids = g.e_edge_ids();
    let m = ids.len();
    (0u64..1 << m)
        .into_par_iter()
        .map(|mask| {
            let mut h = g.graph().clone();
            let mut size = 0;
            for (i, &e) in ids.iter().enumerate() {
                h = if mask >> i & 1 == 1 {
                    size += 1;
                    h.extract_e_edge(e)
                } else {
                    h.delete_e_edge(e)
                }
                .expect("e-edge present");
            }
            xy(h.k_v(), size)
        })
        .reduce(MultiPoly::zero, |a, b| a + b)
}

fn edge_mask(c: &Cog, edges: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; c.num_edges()];
    for &e in edges {
        *mask
            .get_mut(e)
            .ok_or_else(|| CogError::UnknownEdge(e.to_string()))? = true;
    }
    Ok(mask)
}

fn seg_mask(c: &Cog, v: usize, mask: &[bool]) -> Result<usize> {
    let inside: Vec<bool> = c.vertex(v)?.iter().map(|h| mask[h.edge()]).collect();
    Ok(if inside.iter().all(|&b| !b) {
        0
    } else if inside.iter().all(|&b| b) {
        1
    } else {
        (0..inside.len())
            .filter(|&i| inside[i] && !inside[(i + inside.len() - 1) % inside.len()])
            .count()
    })
}

/// Number of maximal cyclic runs of half-edges at `v` whose edges lie in `b`.
pub fn seg(c: &Cog, v: usize, b: &[usize]) -> Result<usize> {
    seg_mask(c, v, &edge_mask(c, b)?)
}

/// `seg(B)`: the sum of `seg(v, B)` over all vertices.
pub fn seg_total(c: &Cog, b: &[usize]) -> Result<usize> {
    let mask = edge_mask(c, b)?;
    (0..c.num_vertices()).map(|v| seg_mask(c, v, &mask)).sum()
}

/// Number of isolated vertices.
pub fn iota(c: &Cog) -> usize {
    c.iota()
}

fn mask_of(bits: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| bits >> i & 1 == 1).collect()
}

fn seg_total_mask(c: &Cog, mask: &[bool]) -> usize {
    (0..c.num_vertices())
        .map(|v| seg_mask(c, v, mask).expect("vertex in range"))
        .sum()
}

/// `sum over B of y^{|E|-|B|} x^{seg(B) + iota}`.
pub fn saturation_cog(c: &Cog) -> MultiPoly {
    let n = c.num_edges();
    let iota = c.iota();
    (0u64..1 << n)
        .into_par_iter()
        .map(|bits| {
            let mask = mask_of(bits, n);
            xy(
                seg_total_mask(c, &mask) + iota,
                n - bits.count_ones() as usize,
            )
        })
        .reduce(MultiPoly::zero, |a, b| a + b)
}

/// The saturated / crossing counts for edge set `a`.
fn saturated_and_crossing(c: &Cog, a: &[bool]) -> (usize, usize) {
    let mut sat = 0;
    let mut cr = 0;
    for seq in c.vertices() {
        let inside: Vec<bool> = seq.iter().map(|h| a[h.edge()]).collect();
        if !inside.is_empty() && inside.iter().all(|&b| b) {
            sat += 1;
        }
        if inside.len() == 4 && (0..4).all(|i| inside[i] != inside[(i + 1) % 4]) {
            cr += 1;
        }
    }
    (sat, cr)
}

/// The 3-regular (`x^{n - sat(A)}`) and 4-regular (`x^{n + cr(A) - sat(A)}`)
/// forms, summed over `A` with weight `y^|A|`.
pub fn saturation_regular(c: &Cog, degree: usize) -> Result<MultiPoly> {
    if degree != 3 && degree != 4 {
        return Err(CogError::InvalidArgument(format!(
            "regular form exists for degree 3 or 4, not {degree}"
        )));
    }
    if !c.is_regular(degree) {
        return Err(CogError::NotRegular { degree });
    }
    let n = c.num_vertices();
    let m = c.num_edges();
    Ok((0u64..1 << m)
        .into_par_iter()
        .map(|bits| {
            let (sat, cr) = saturated_and_crossing(c, &mask_of(bits, m));
            xy(n + cr - sat, bits.count_ones() as usize)
        })
        .reduce(MultiPoly::zero, |a, b| a + b))
}

fn check_disjoint(c: &Cog, d: &[usize], x: &[usize]) -> Result<(Vec<bool>, Vec<bool>)> {
    let dm = edge_mask(c, d)?;
    let xm = edge_mask(c, x)?;
    if dm.iter().zip(&xm).any(|(a, b)| *a && *b) {
        return Err(CogError::NotDisjoint);
    }
    Ok((dm, xm))
}

/// `M(G, D, X)`: sum over `B` outside `D ∪ X` of
/// `y^{|E| - |B ∪ D ∪ X|} x^{seg(B ∪ D) + iota}`.
pub fn saturation_dx(c: &Cog, d: &[usize], x: &[usize]) -> Result<MultiPoly> {
    let (dm, xm) = check_disjoint(c, d, x)?;
    let free: Vec<usize> = (0..c.num_edges()).filter(|&e| !dm[e] && !xm[e]).collect();
    let fixed = c.num_edges() - free.len();
    let iota = c.iota();
    Ok((0u64..1 << free.len())
        .into_par_iter()
        .map(|bits| {
            let mut mask = dm.clone();
            for (i, &e) in free.iter().enumerate() {
                mask[e] = bits >> i & 1 == 1;
            }
            let b = bits.count_ones() as usize;
            xy(seg_total_mask(c, &mask) + iota, c.num_edges() - b - fixed)
        })
        .reduce(MultiPoly::zero, |a, b| a + b))
}

/// `M(G, D, X) = M(G, D + e, X) + y M(G, D, X + e)` with base
/// `x^{seg(D) + iota}` once `D ∪ X = E`.
pub fn saturation_dx_recursive(c: &Cog, d: &[usize], x: &[usize]) -> Result<MultiPoly> {
    let (dm, xm) = check_disjoint(c, d, x)?;
    fn rec(c: &Cog, dm: &mut Vec<bool>, xm: &mut Vec<bool>) -> MultiPoly {
        match (0..c.num_edges()).find(|&e| !dm[e] && !xm[e]) {
            None => x_pow(seg_total_mask(c, dm) + c.iota()),
            Some(e) => {
                dm[e] = true;
                let left = rec(c, dm, xm);
                dm[e] = false;
                xm[e] = true;
                let right = rec(c, dm, xm);
                xm[e] = false;
                left + MultiPoly::var(Var::Y) * right
            }
        }
    }
    let (mut dm, mut xm) = (dm, xm);
    Ok(rec(c, &mut dm, &mut xm))
}

/// Coefficient of `x^i y^j` as a plain integer table lookup helper.
pub fn coefficient(p: &MultiPoly, x: u32, y: u32) -> BigInt {
    p.coefficient(&[(Var::X, x), (Var::Y, y)])
}
