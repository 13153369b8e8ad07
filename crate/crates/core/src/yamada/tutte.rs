//! `T(G; 0, y)` by deletion-contraction, and nowhere-zero flow counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::multigraph::{Multigraph, UnionFind};
use crate::poly::LaurentPoly;

/// Coefficients (lowest degree first) of `T(G; 0, y)` as a polynomial in `y`.
pub fn tutte_x0(g: &Multigraph) -> Vec<BigInt> {
    fn connected_without(
        n: usize,
        edges: &[(usize, usize)],
        skip: usize,
        a: usize,
        b: usize,
    ) -> bool {
        let mut uf = UnionFind::new(n);
        for (i, &(x, y)) in edges.iter().enumerate() {
            if i != skip {
                uf.union(x, y);
            }
        }
        uf.find(a) == uf.find(b)
    }

    fn add(a: &mut Vec<BigInt>, b: Vec<BigInt>) {
        if a.len() < b.len() {
            a.resize(b.len(), BigInt::zero());
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
    }

    fn rec(n: usize, edges: Vec<(usize, usize)>) -> Vec<BigInt> {
        let loops = edges.iter().filter(|(a, b)| a == b).count();
        let rest: Vec<(usize, usize)> = edges.into_iter().filter(|(a, b)| a != b).collect();
        let Some(&(a, b)) = rest.first() else {
            let mut out = vec![BigInt::zero(); loops + 1];
            out[loops] = BigInt::one();
            return out;
        };
        if !connected_without(n, &rest, 0, a, b) {
            return vec![BigInt::zero()];
        }
        let deleted: Vec<(usize, usize)> = rest[1..].to_vec();
        let contracted: Vec<(usize, usize)> = rest[1..]
            .iter()
            .map(|&(x, y)| (if x == b { a } else { x }, if y == b { a } else { y }))
            .collect();
        let mut out = rec(n, deleted);
        add(&mut out, rec(n, contracted));
        let mut shifted = vec![BigInt::zero(); loops];
        shifted.extend(out);
        shifted
    }

    let mut out = rec(g.num_vertices(), g.edges().to_vec());
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// `T(G; 0, y)` at an integer `y`.
pub fn tutte_at_int(g: &Multigraph, y: i64) -> BigInt {
    let y = BigInt::from(y);
    tutte_x0(g)
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * &y + c)
}

/// `T(G; 0, y)` at a Laurent polynomial `y`.
pub fn tutte_at_laurent(g: &Multigraph, y: &LaurentPoly) -> LaurentPoly {
    tutte_x0(g)
        .iter()
        .rev()
        .fold(LaurentPoly::zero(), |acc, c| {
            &acc * y + LaurentPoly::constant(c.clone())
        })
}

/// Nowhere-zero `Z_k` flows, by brute force over one fixed orientation.
pub fn flow_count(g: &Multigraph, k: u32) -> BigInt {
    assert!(k >= 2, "flows need k >= 2");
    let m = g.num_edges();
    let mut values = vec![1u32; m];
    let mut count = BigInt::zero();
    if m == 0 {
        return BigInt::one();
    }
    loop {
        let mut net = vec![0i64; g.num_vertices()];
        for (&(a, b), &v) in g.edges().iter().zip(&values) {
            net[a] -= v as i64;
            net[b] += v as i64;
        }
        if net.iter().all(|x| x.rem_euclid(k as i64) == 0) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == m {
                return count;
            }
            values[i] += 1;
            if values[i] < k {
                break;
            }
            values[i] = 1;
            i += 1;
        }
    }
}

/// `(-1)^{nullity} T(G; 0, 1 - k)`.
pub fn flow_count_tutte(g: &Multigraph, k: u32) -> BigInt {
    let t = tutte_at_int(g, 1 - k as i64);
    if g.nullity() % 2 == 1 {
        -t
    } else {
        t
    }
}
