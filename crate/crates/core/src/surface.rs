//! Face tracing of signed rotation systems, Euler genus, orientability and
//! genus ranges of cogs.
//!
//! Each half-edge `h` has two sides, giving flags `(h, 0)` and `(h, 1)`;
//! side 1 of `h` and side 0 of its rotation successor form one corner. Two
//! involutions act on flags: `a1` joins the two flags of a corner, and `a0`
//! crosses the edge to the partner half-edge, swapping sides when the edge is
//! positive and keeping them when it is negative. Boundary components are the
//! orbits of the group they generate, plus one per isolated vertex.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CogError, Result};
use crate::model::{Cog, HalfEdge, RotationSystem, Sign, SignedRotationSystem};
use crate::multigraph::UnionFind;

pub const MAX_SWEEP_SIZE: usize = 24;

/// A half-edge side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Flag {
    pub half_edge: HalfEdge,
    pub side: u8,
}

fn flag_index(f: Flag) -> usize {
    2 * f.half_edge.0 + f.side as usize
}

fn flag_at(i: usize) -> Flag {
    Flag {
        half_edge: HalfEdge(i / 2),
        side: (i % 2) as u8,
    }
}

struct Involutions {
    a0: Vec<usize>,
    a1: Vec<usize>,
}

fn involutions(s: &SignedRotationSystem) -> Involutions {
    let n = 4 * s.num_edges();
    let succ = s.rotation().successor();
    let mut a0 = vec![0; n];
    let mut a1 = vec![0; n];
    for i in 0..n {
        let f = flag_at(i);
        let h = f.half_edge;
        let side = match s.sign(h.edge()) {
            Sign::Plus => 1 - f.side,
            Sign::Minus => f.side,
        };
        a0[i] = flag_index(Flag {
            half_edge: h.partner(),
            side,
        });
        if f.side == 1 {
            let j = flag_index(Flag {
                half_edge: succ[h.0],
                side: 0,
            });
            a1[i] = j;
            a1[j] = i;
        }
    }
    Involutions { a0, a1 }
}

/// Boundary walks of a signed rotation system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceTrace {
    /// Each walk alternates edge crossings and corner turns, starting from its
    /// least flag with an edge crossing.
    pub walks: Vec<Vec<Flag>>,
    /// Isolated vertices, each bounding one face on its own.
    pub isolated_vertices: usize,
}

impl FaceTrace {
    pub fn count(&self) -> usize {
        self.walks.len() + self.isolated_vertices
    }

    /// Renders flags as `<label><a|b>:<side>`, where `a` is the first half of
    /// the edge and `b` the second.
    pub fn render(&self, labels: &[String]) -> Vec<String> {
        let mut out: Vec<String> = self
            .walks
            .iter()
            .map(|w| {
                w.iter()
                    .map(|f| {
                        format!(
                            "{}{}:{}",
                            labels[f.half_edge.edge()],
                            if f.half_edge.0 % 2 == 0 { 'a' } else { 'b' },
                            f.side
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        out.extend(std::iter::repeat_n(
            "(isolated vertex)".to_string(),
            self.isolated_vertices,
        ));
        out
    }
}

pub fn trace_boundaries(s: &SignedRotationSystem) -> FaceTrace {
    let inv = involutions(s);
    let n = inv.a0.len();
    let mut seen = vec![false; n];
    let mut walks = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut current = start;
        let mut use_a0 = true;
        loop {
            seen[current] = true;
            walk.push(flag_at(current));
            current = if use_a0 {
                inv.a0[current]
            } else {
                inv.a1[current]
            };
            use_a0 = !use_a0;
            if current == start && use_a0 {
                break;
            }
        }
        walks.push(walk);
    }
    let isolated_vertices = s
        .rotation()
        .vertices()
        .iter()
        .filter(|v| v.is_empty())
        .count();
    FaceTrace {
        walks,
        isolated_vertices,
    }
}

/// `b(s)`: the number of boundary components.
pub fn boundary_count(s: &SignedRotationSystem) -> usize {
    let inv = involutions(s);
    let mut uf = UnionFind::new(inv.a0.len());
    for i in 0..inv.a0.len() {
        uf.union(i, inv.a0[i]);
        uf.union(i, inv.a1[i]);
    }
    uf.num_sets()
        + s.rotation()
            .vertices()
            .iter()
            .filter(|v| v.is_empty())
            .count()
}

fn num_components(r: &RotationSystem) -> usize {
    r.underlying_cog().underlying_graph().num_components()
}

/// `2k - v + e - f`.
pub fn euler_genus(s: &SignedRotationSystem) -> usize {
    let k = num_components(s.rotation());
    2 * k + s.num_edges() - s.num_vertices() - boundary_count(s)
}

/// Whether some vertex switching makes every edge positive.
pub fn is_orientable(s: &SignedRotationSystem) -> bool {
    let owner = s.rotation().half_edge_owner();
    let n = s.num_vertices();
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for e in 0..s.num_edges() {
        let (a, b) = (owner[2 * e], owner[2 * e + 1]);
        let odd = s.sign(e) == Sign::Minus;
        if a == b {
            if odd {
                return false;
            }
            continue;
        }
        adj[a].push((b, odd));
        adj[b].push((a, odd));
    }
    let mut parity: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if parity[root].is_some() {
            continue;
        }
        parity[root] = Some(false);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let pu = parity[u].unwrap();
            for &(w, odd) in &adj[u] {
                match parity[w] {
                    None => {
                        parity[w] = Some(pu ^ odd);
                        stack.push(w);
                    }
                    Some(pw) if pw != pu ^ odd => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenusKind {
    Orientable,
    Euler,
    Nonorientable,
}

impl FromStr for GenusKind {
    type Err = CogError;

    fn from_str(s: &str) -> Result<GenusKind> {
        match s {
            "orientable" => Ok(GenusKind::Orientable),
            "euler" => Ok(GenusKind::Euler),
            "nonorientable" => Ok(GenusKind::Nonorientable),
            other => Err(CogError::InvalidArgument(format!(
                "unknown genus kind '{other}'"
            ))),
        }
    }
}

impl fmt::Display for GenusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenusKind::Orientable => "orientable",
            GenusKind::Euler => "euler",
            GenusKind::Nonorientable => "nonorientable",
        })
    }
}

/// The genera of the cellular embeddings whose underlying cog is `c`.
///
/// Orientable genus sweeps vertex reversals of one rotation representative
/// with all edges positive; Euler and nonorientable genus sweep all edge
/// signatures of that representative.
pub fn genus_range(c: &Cog, kind: GenusKind) -> Result<BTreeSet<usize>> {
    if !c.is_connected() {
        return Err(CogError::Disconnected);
    }
    if c.num_vertices() + c.num_edges() > MAX_SWEEP_SIZE {
        return Err(CogError::TooLarge(format!(
            "genus sweeps need |V| + |E| <= {MAX_SWEEP_SIZE}"
        )));
    }
    let base = c.to_rotation_system();
    let out = match kind {
        GenusKind::Orientable => (0u64..1 << c.num_vertices())
            .into_par_iter()
            .map(|mask| {
                let mut r = base.clone();
                for v in 0..c.num_vertices() {
                    if mask >> v & 1 == 1 {
                        r = r.vertex_reversal(v).expect("vertex in range");
                    }
                }
                euler_genus(&SignedRotationSystem::all_plus(r)) / 2
            })
            .collect(),
        GenusKind::Euler | GenusKind::Nonorientable => (0u64..1 << c.num_edges())
            .into_par_iter()
            .filter_map(|mask| {
                let signs = (0..c.num_edges())
                    .map(|e| {
                        if mask >> e & 1 == 1 {
                            Sign::Minus
                        } else {
                            Sign::Plus
                        }
                    })
                    .collect();
                let s = SignedRotationSystem::new(base.clone(), signs).expect("one sign per edge");
                if kind == GenusKind::Nonorientable && is_orientable(&s) {
                    None
                } else {
                    Some(euler_genus(&s))
                }
            })
            .collect(),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn srs(s: &str) -> SignedRotationSystem {
        SignedRotationSystem::parse(s).unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn theta_faces() {
        let planar = srs("[1 2 3][1 3 2]");
        assert_eq!(trace_boundaries(&planar).count(), 3);
        assert_eq!((euler_genus(&planar), is_orientable(&planar)), (0, true));
        let torus = srs("[1 2 3][1 2 3]");
        assert_eq!(trace_boundaries(&torus).count(), 1);
        assert_eq!((euler_genus(&torus), is_orientable(&torus)), (2, true));
    }

    #[test]
    fn projective_loop() {
        let s = srs("[1 1]\nsigns: 1-");
        assert_eq!(trace_boundaries(&s).count(), 1);
        assert_eq!((euler_genus(&s), is_orientable(&s)), (1, false));
        let p = srs("[1 1]");
        assert_eq!(boundary_count(&p), 2);
    }

    #[test]
    fn walks_cover_every_flag_once() {
        for text in [
            "[1 2 3][1 3 2]",
            "[1 3 2 3][1 2]\nsigns: 2-",
            "[1 1 2][2][]",
        ] {
            let s = srs(text);
            let t = trace_boundaries(&s);
            let mut flags: Vec<Flag> = t.walks.iter().flatten().copied().collect();
            flags.sort();
            assert_eq!(flags.len(), 4 * s.num_edges());
            flags.dedup();
            assert_eq!(flags.len(), 4 * s.num_edges());
            assert_eq!(t.count(), boundary_count(&s));
        }
    }

    #[test]
    fn switching_keeps_orientability() {
        let s = srs("[1 2 3][1 3 2]\nsigns: 1- 2- 3-");
        assert!(is_orientable(&s));
        // switching alone is not a flip: this is the toroidal theta
        assert_eq!(euler_genus(&s), 2);
        assert_eq!(euler_genus(&s.vertex_flip(0).unwrap()), 2);
        let t = srs("[1 2 3][1 3 2]\nsigns: 1-");
        assert!(!is_orientable(&t));
    }

    #[test]
    fn ranges() {
        let theta = Cog::parse("(1 2 3)(1 2 3)").unwrap();
        assert_eq!(
            genus_range(&theta, GenusKind::Orientable).unwrap(),
            set(&[0, 1])
        );
        assert_eq!(
            genus_range(&theta, GenusKind::Euler).unwrap(),
            set(&[0, 1, 2])
        );
        assert_eq!(
            genus_range(&theta, GenusKind::Nonorientable).unwrap(),
            set(&[1, 2])
        );
        let dipole = Cog::parse("(1 2 3 4 5)(1 5 4 3 2)").unwrap();
        assert_eq!(
            genus_range(&dipole, GenusKind::Orientable).unwrap(),
            set(&[0, 2])
        );
        let two = Cog::parse("(1 1)(2 2)").unwrap();
        assert_eq!(
            genus_range(&two, GenusKind::Euler),
            Err(CogError::Disconnected)
        );
    }
}
