//! Straight-chord drawings of cogs on the parabola `y = x^2`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::model::{Cog, HalfEdge};
use crate::multigraph::{Multigraph, UnionFind};

const MAX_ATTEMPTS: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Point {
    #[serde(serialize_with = "ser_rational")]
    pub x: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub y: BigRational,
}

fn ser_rational<S: serde::Serializer>(
    r: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Node {
    Vertex(usize),
    Crossing(usize),
}

/// A piece of an edge between consecutive nodes along its chord, directed
/// from half-edge `2e` towards `2e + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub edge: usize,
    pub from: Node,
    pub to: Node,
}

/// End 0 is an arc's start, end 1 its finish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArcEnd {
    pub arc: usize,
    pub end: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub point: Point,
    /// Edge of the over strand.
    pub over: usize,
    /// Arc ends in counterclockwise order; entries 0 and 2 belong to the over
    /// strand, 1 and 3 to the under strand.
    pub rotation: [ArcEnd; 4],
}

/// Where each vertex block goes on the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawSpec {
    /// Vertices in curve order.
    pub order: Vec<usize>,
    pub reversed: Vec<bool>,
    /// Rotation applied to each vertex sequence before placement.
    pub offsets: Vec<usize>,
}

impl DrawSpec {
    pub fn identity(c: &Cog) -> DrawSpec {
        DrawSpec {
            order: (0..c.num_vertices()).collect(),
            reversed: vec![false; c.num_vertices()],
            offsets: vec![0; c.num_vertices()],
        }
    }

    pub fn random<R: Rng>(c: &Cog, rng: &mut R) -> DrawSpec {
        let mut order: Vec<usize> = (0..c.num_vertices()).collect();
        order.shuffle(rng);
        DrawSpec {
            order,
            reversed: (0..c.num_vertices()).map(|_| rng.gen()).collect(),
            offsets: c
                .vertices()
                .iter()
                .map(|v| rng.gen_range(0..v.len().max(1)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Drawing {
    #[serde(skip)]
    cog: Cog,
    /// Half-edges in order along the curve.
    curve: Vec<HalfEdge>,
    /// Block boundaries of `curve`, one `(vertex, start, len)` per vertex.
    blocks: Vec<(usize, usize, usize)>,
    points: Vec<Point>,
    arcs: Vec<Arc>,
    crossings: Vec<Crossing>,
}

fn cross(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn sub(p: &Point, q: &Point) -> (BigRational, BigRational) {
    (&p.x - &q.x, &p.y - &q.y)
}

/// Draws `c` with a seeded random block arrangement.
pub fn draw(c: &Cog, seed: u64) -> Drawing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = DrawSpec::random(c, &mut rng);
    draw_with(c, &spec, seed)
}

pub fn draw_with(c: &Cog, spec: &DrawSpec, seed: u64) -> Drawing {
    let mut curve = Vec::new();
    let mut blocks = Vec::new();
    for &v in &spec.order {
        let seq = &c.vertices()[v];
        let mut block: Vec<HalfEdge> = seq.clone();
        let len = block.len();
        if len > 0 {
            block.rotate_left(spec.offsets[v] % len);
        }
        if spec.reversed[v] {
            block.reverse();
        }
        blocks.push((v, curve.len(), block.len()));
        curve.extend(block);
    }
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut x = 0i64;
        let points: Vec<Point> = curve
            .iter()
            .map(|_| {
                x += rng.gen_range(1..=4 + attempt as i64);
                let x = BigRational::from_integer(BigInt::from(x));
                Point { y: &x * &x, x }
            })
            .collect();
        if let Some(d) = build(c, &curve, &blocks, points) {
            return d;
        }
    }
    panic!("no generic drawing found after {MAX_ATTEMPTS} attempts");
}

fn build(
    c: &Cog,
    curve: &[HalfEdge],
    blocks: &[(usize, usize, usize)],
    points: Vec<Point>,
) -> Option<Drawing> {
    let m = c.num_edges();
    let mut position = vec![0; 2 * m];
    for (i, h) in curve.iter().enumerate() {
        position[h.0] = i;
    }
    let mut owner = vec![0; 2 * m];
    for &(v, start, len) in blocks {
        for h in &curve[start..start + len] {
            owner[h.0] = v;
        }
    }
    let start = |e: usize| &points[position[2 * e]];
    let end = |e: usize| &points[position[2 * e + 1]];

    // (point, e, f, t along e, s along f) for e < f
    let mut raw = Vec::new();
    for e in 0..m {
        for f in e + 1..m {
            let (p, q) = (start(e), start(f));
            let d = sub(end(e), p);
            let g = sub(end(f), q);
            let denom = cross(&d, &g);
            if denom.is_zero() {
                continue;
            }
            let qp = sub(q, p);
            let t = cross(&qp, &g) / &denom;
            let s = cross(&qp, &d) / &denom;
            let inside =
                |r: &BigRational| r.is_positive() && r < &BigRational::from_integer(1.into());
            if !inside(&t) || !inside(&s) {
                continue;
            }
            let point = Point {
                x: &p.x + &t * &d.0,
                y: &p.y + &t * &d.1,
            };
            raw.push((point, e, f, t, s, denom.is_positive()));
        }
    }
    let distinct: BTreeSet<&Point> = raw.iter().map(|r| &r.0).collect();
    if distinct.len() != raw.len() {
        return None;
    }

    // crossings along each edge, sorted by parameter
    let mut along: Vec<Vec<(BigRational, usize)>> = vec![Vec::new(); m];
    for (i, r) in raw.iter().enumerate() {
        along[r.1].push((r.3.clone(), i));
        along[r.2].push((r.4.clone(), i));
    }
    let mut arcs = Vec::new();
    // per crossing: (in, out) arc ends of each of its two edges
    let mut ends = vec![[[ArcEnd { arc: 0, end: 0 }; 2]; 2]; raw.len()];
    for e in 0..m {
        along[e].sort();
        let mut from = Node::Vertex(owner[2 * e]);
        for (_, i) in &along[e] {
            let slot = if raw[*i].1 == e { 0 } else { 1 };
            ends[*i][slot][0] = ArcEnd {
                arc: arcs.len(),
                end: 1,
            };
            ends[*i][slot][1] = ArcEnd {
                arc: arcs.len() + 1,
                end: 0,
            };
            arcs.push(Arc {
                edge: e,
                from,
                to: Node::Crossing(*i),
            });
            from = Node::Crossing(*i);
        }
        arcs.push(Arc {
            edge: e,
            from,
            to: Node::Vertex(owner[2 * e + 1]),
        });
    }
    let crossings = raw
        .into_iter()
        .zip(ends)
        .map(|((point, e, _, _, _, ccw), [a, b])| {
            let [a_in, a_out] = a;
            let [b_in, b_out] = b;
            let rotation = if ccw {
                [a_out, b_out, a_in, b_in]
            } else {
                [a_out, b_in, a_in, b_out]
            };
            Crossing {
                point,
                over: e,
                rotation,
            }
        })
        .collect();
    Some(Drawing {
        cog: c.clone(),
        curve: curve.to_vec(),
        blocks: blocks.to_vec(),
        points,
        arcs,
        crossings,
    })
}

/// Value of a crossing in a state: `1` and `-1` smooth, `0` keeps a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossingState(pub Vec<i8>);

impl CrossingState {
    /// `w(s)`: the sum of the assigned symbols.
    pub fn weight(&self) -> i32 {
        self.0.iter().map(|&s| s as i32).sum()
    }

    /// The `index`-th of the `3^n` states, in base 3 with digits `0, 1, 2`
    /// meaning `0, 1, -1`.
    pub fn nth(n: usize, mut index: u64) -> CrossingState {
        CrossingState(
            (0..n)
                .map(|_| {
                    let d = index % 3;
                    index /= 3;
                    [0, 1, -1][d as usize]
                })
                .collect(),
        )
    }
}

/// The plane graph left by a state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    /// Real vertices first, then the 0-crossings in crossing order.
    pub graph: Multigraph,
    /// Closed curves through no vertex.
    pub free_loops: usize,
}

impl Resolution {
    /// The graph with each free loop replaced by a vertex carrying a loop.
    pub fn with_free_loops_as_loops(&self) -> Multigraph {
        let n = self.graph.num_vertices();
        let mut edges = self.graph.edges().to_vec();
        edges.extend((n..n + self.free_loops).map(|v| (v, v)));
        Multigraph::new(n + self.free_loops, edges)
    }
}

impl Drawing {
    pub fn cog(&self) -> &Cog {
        &self.cog
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    /// Reads each vertex block back off the curve.
    pub fn source_cog(&self) -> Cog {
        let mut vertices = vec![Vec::new(); self.cog.num_vertices()];
        for &(v, start, len) in &self.blocks {
            vertices[v] = self.curve[start..start + len].to_vec();
        }
        Cog::from_half_edges(vertices, self.cog.labels().to_vec())
    }

    /// The same drawing with the strands of crossing `i` exchanged.
    pub fn with_crossing_flipped(&self, i: usize) -> Drawing {
        let mut d = self.clone();
        let c = &mut d.crossings[i];
        c.rotation.rotate_left(1);
        c.over = self.arcs[c.rotation[0].arc].edge;
        d
    }

    /// Whether opposite arc ends at every crossing lie on one strand, and each
    /// crossing is met by exactly four arc ends.
    pub fn is_consistent(&self) -> bool {
        let mut met = vec![0usize; self.crossings.len()];
        for a in &self.arcs {
            for n in [a.from, a.to] {
                if let Node::Crossing(i) = n {
                    met[i] += 1;
                }
            }
        }
        met.iter().all(|&k| k == 4)
            && self.crossings.iter().enumerate().all(|(i, c)| {
                let r = &c.rotation;
                let edge = |k: usize| self.arcs[r[k].arc].edge;
                let at = |k: usize| {
                    let a = &self.arcs[r[k].arc];
                    if r[k].end == 0 {
                        a.from
                    } else {
                        a.to
                    }
                };
                edge(0) == edge(2)
                    && edge(1) == edge(3)
                    && edge(0) != edge(1)
                    && edge(0) == c.over
                    && (0..4).all(|k| at(k) == Node::Crossing(i))
            })
    }

    /// Applies a state.
    ///
    /// For a crossing with counterclockwise ends `r0 r1 r2 r3` (over strand at
    /// `r0`, `r2`), state `1` joins `r0` with `r3` and `r2` with `r1`, and
    /// state `-1` joins `r0` with `r1` and `r2` with `r3`.
    pub fn resolve(&self, state: &CrossingState) -> Resolution {
        assert_eq!(state.0.len(), self.crossings.len(), "state must be total");
        let n = self.cog.num_vertices();
        let mut node_of = vec![None; self.crossings.len()];
        let mut next = n;
        for (i, &s) in state.0.iter().enumerate() {
            if s == 0 {
                node_of[i] = Some(next);
                next += 1;
            }
        }
        let mut uf = UnionFind::new(self.arcs.len());
        for (c, &s) in self.crossings.iter().zip(&state.0) {
            let r = &c.rotation;
            match s {
                1 => {
                    uf.union(r[0].arc, r[3].arc);
                    uf.union(r[2].arc, r[1].arc);
                }
                -1 => {
                    uf.union(r[0].arc, r[1].arc);
                    uf.union(r[2].arc, r[3].arc);
                }
                _ => {}
            }
        }
        let attach = |node: Node| match node {
            Node::Vertex(v) => Some(v),
            Node::Crossing(i) => node_of[i],
        };
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); self.arcs.len()];
        let mut members = vec![false; self.arcs.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            let root = uf.find(i);
            members[root] = true;
            classes[root].extend(attach(a.from));
            classes[root].extend(attach(a.to));
        }
        let mut edges = Vec::new();
        let mut free_loops = 0;
        for (root, ends) in classes.iter().enumerate() {
            if !members[root] {
                continue;
            }
            match ends.as_slice() {
                [] => free_loops += 1,
                &[a, b] => edges.push((a.min(b), a.max(b))),
                other => unreachable!("a strand class has {} attached ends", other.len()),
            }
        }
        edges.sort();
        Resolution {
            graph: Multigraph::new(next, edges),
            free_loops,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cog(s: &str) -> Cog {
        Cog::parse(s).unwrap()
    }

    #[test]
    fn crossing_counts() {
        for seed in 0..6 {
            assert_eq!(draw(&cog("(1 1 2 2)"), seed).num_crossings(), 0);
            assert_eq!(draw(&cog("(1 2 1 2)"), seed).num_crossings(), 1);
        }
        let point = draw(&cog("()"), 3);
        assert_eq!((point.num_crossings(), point.arcs().len()), (0, 0));
    }

    #[test]
    fn drawings_recover_the_cog() {
        for text in [
            "(1 2 3)(1 2 3)",
            "(1 2 3 1 2 3)",
            "(1 3 2 3)(1 2)",
            "(1)(1)()",
        ] {
            let c = cog(text);
            for seed in 0..5 {
                let d = draw(&c, seed);
                assert!(d.is_consistent());
                assert_eq!(d.source_cog(), c);
                assert_eq!(draw(&c, seed), d);
            }
        }
    }

    #[test]
    fn states_of_the_crossed_bouquet() {
        let d = draw(&cog("(1 2 1 2)"), 0);
        let zero = d.resolve(&CrossingState(vec![0]));
        assert_eq!(zero.graph.num_vertices(), 2);
        assert_eq!(zero.graph.edges(), &[(0, 1); 4]);
        for s in [1, -1] {
            let r = d.resolve(&CrossingState(vec![s]));
            assert_eq!((r.graph.edges(), r.free_loops), (&[(0, 0), (0, 0)][..], 0));
        }
    }

    #[test]
    fn smoothing_can_leave_a_free_loop() {
        let c = cog("(1 2 3 1 2 3)");
        let d = draw_with(&c, &DrawSpec::identity(&c), 0);
        assert_eq!(d.num_crossings(), 3);
        let found = (0..27)
            .map(|i| d.resolve(&CrossingState::nth(3, i)))
            .any(|r| r.free_loops > 0);
        assert!(found);
    }

    #[test]
    fn flipping_swaps_the_smoothings() {
        let d = draw(&cog("(1 2 3)(1 2 3)"), 1);
        for i in 0..d.num_crossings() {
            let f = d.with_crossing_flipped(i);
            assert!(f.is_consistent());
            let mut s = CrossingState(vec![0; d.num_crossings()]);
            s.0[i] = 1;
            let mut t = s.clone();
            t.0[i] = -1;
            assert_eq!(d.resolve(&s), f.resolve(&t));
            let back = f.with_crossing_flipped(i);
            assert_eq!(back.crossings()[i].over, d.crossings()[i].over);
            assert_eq!(back.resolve(&s), d.resolve(&s));
        }
    }
}
