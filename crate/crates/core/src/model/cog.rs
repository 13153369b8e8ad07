use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::parse::{index_labels, numbered_lines, parse_groups};
use super::{min_dihedral, HalfEdge};
use crate::error::{CogError, Result};
use crate::multigraph::Multigraph;

/// A cyclically ordered graph.
///
/// Edge `i` owns half-edges `2i` and `2i + 1`. Each vertex holds an undirected
/// cyclic sequence of half-edges, stored in its least rotation/reflection, so
/// structural equality is equality of labelled cogs. Use
/// [`Cog::canonical_form`] for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cog {
    vertices: Vec<Vec<HalfEdge>>,
    labels: Vec<String>,
}

impl Cog {
    /// Builds a cog from per-vertex sequences of edge indices `0..n`, with
    /// labels `1..=n`. The first occurrence of edge `i` is half-edge `2i`.
    pub fn new(sequences: Vec<Vec<usize>>) -> Result<Cog> {
        let n = sequences
            .iter()
            .flatten()
            .map(|&e| e + 1)
            .max()
            .unwrap_or(0);
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Cog::with_labels(sequences, labels)
    }

    pub fn with_labels(sequences: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Cog> {
        let mut seen = vec![0usize; labels.len()];
        let mut vertices = Vec::with_capacity(sequences.len());
        for seq in sequences {
            let mut hs = Vec::with_capacity(seq.len());
            for e in seq {
                if e >= labels.len() {
                    return Err(CogError::UnknownEdge(e.to_string()));
                }
                if seen[e] >= 2 {
                    return Err(CogError::Invalid(format!(
                        "edge {} occurs more than twice",
                        labels[e]
                    )));
                }
                hs.push(HalfEdge(2 * e + seen[e]));
                seen[e] += 1;
            }
            vertices.push(hs);
        }
        if let Some(e) = seen.iter().position(|&c| c != 2) {
            return Err(CogError::Invalid(format!(
                "edge {} occurs {} time(s)",
                labels[e], seen[e]
            )));
        }
        Ok(Cog::from_half_edges(vertices, labels))
    }

    /// Half-edge ids are kept as given; callers guarantee validity.
    pub(crate) fn from_half_edges(vertices: Vec<Vec<HalfEdge>>, labels: Vec<String>) -> Cog {
        Cog {
            vertices: vertices.iter().map(|v| min_dihedral(v)).collect(),
            labels,
        }
    }

    pub fn parse(text: &str) -> Result<Cog> {
        let groups = parse_groups(&numbered_lines(text), '(', ')')?;
        let (seqs, labels) = index_labels(&groups)?;
        Cog::with_labels(seqs, labels)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> &[Vec<HalfEdge>] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Result<&[HalfEdge]> {
        self.vertices
            .get(v)
            .map(|s| s.as_slice())
            .ok_or(CogError::UnknownVertex(v))
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        Ok(self.vertex(v)?.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn edge_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| CogError::UnknownEdge(label.to_string()))
    }

    pub fn edges_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.edge_index(l.as_ref())).collect()
    }

    /// Edge indices around `v` in cyclic order.
    pub fn edge_sequence(&self, v: usize) -> Result<Vec<usize>> {
        Ok(self.vertex(v)?.iter().map(|h| h.edge()).collect())
    }

    /// Vertex holding each half-edge, indexed by half-edge id.
    pub fn half_edge_owner(&self) -> Vec<usize> {
        let mut owner = vec![0; 2 * self.num_edges()];
        for (v, seq) in self.vertices.iter().enumerate() {
            for h in seq {
                owner[h.0] = v;
            }
        }
        owner
    }

    pub fn underlying_graph(&self) -> Multigraph {
        let owner = self.half_edge_owner();
        Multigraph::new(
            self.num_vertices(),
            (0..self.num_edges())
                .map(|e| (owner[2 * e], owner[2 * e + 1]))
                .collect(),
        )
    }

    pub fn is_connected(&self) -> bool {
        self.underlying_graph().num_components() <= 1
    }

    /// Number of isolated vertices.
    pub fn iota(&self) -> usize {
        self.vertices.iter().filter(|s| s.is_empty()).count()
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.vertices.iter().all(|s| s.len() == degree)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    fn relabelled_key(&self, perm: &[usize]) -> Vec<Vec<usize>> {
        let mut key: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .map(|s| min_dihedral(&s.iter().map(|h| perm[h.edge()]).collect::<Vec<_>>()))
            .collect();
        key.sort();
        key
    }

    /// A string equal for two cogs exactly when they are isomorphic.
    ///
    /// Exhaustive over edge relabellings, so only suitable for small cogs.
    pub fn canonical_form(&self) -> String {
        let n = self.num_edges();
        let best = (0..n)
            .permutations(n)
            .map(|perm| self.relabelled_key(&perm))
            .min()
            .unwrap_or_else(|| self.relabelled_key(&[]));
        best.iter()
            .map(|s| format!("({})", s.iter().map(|e| e + 1).join(" ")))
            .collect()
    }

    pub fn is_isomorphic(&self, other: &Cog) -> bool {
        self.num_edges() == other.num_edges()
            && self.num_vertices() == other.num_vertices()
            && self.canonical_form() == other.canonical_form()
    }

    /// The same cog with vertex sequences read as directed rotations.
    pub fn to_rotation_system(&self) -> super::RotationSystem {
        super::RotationSystem::from_half_edges(self.vertices.clone(), self.labels.clone())
    }
}

impl FromStr for Cog {
    type Err = CogError;

    fn from_str(s: &str) -> Result<Cog> {
        Cog::parse(s)
    }
}

impl fmt::Display for Cog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for seq in &self.vertices {
            write!(
                f,
                "({})",
                seq.iter().map(|h| self.labels[h.edge()].as_str()).join(" ")
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cog(s: &str) -> Cog {
        Cog::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let loop_cog = cog("(1 1)");
        assert_eq!((loop_cog.num_vertices(), loop_cog.num_edges()), (1, 1));
        let g2 = cog("(1 3 2 3)(1 2)");
        assert_eq!(g2.num_vertices(), 2);
        assert_eq!(
            g2.underlying_graph()
                .edges()
                .iter()
                .filter(|(a, b)| a != b)
                .count(),
            2
        );
        assert!(matches!(Cog::parse("(1 2 1)"), Err(CogError::Parse { .. })));
        let iso = cog("()");
        assert_eq!((iso.num_vertices(), iso.num_edges(), iso.iota()), (1, 0, 1));
        assert_eq!(cog("").num_vertices(), 0);
    }

    #[test]
    fn display_round_trip() {
        let c = cog("(1 3 2 3)(1 2)()");
        assert_eq!(cog(&c.to_string()), c);
        assert_eq!(cog("(1323)(12)"), cog("(1 3 2 3)(1 2)"));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(
            cog("(1 2 3 3)(1 2)").canonical_form(),
            cog("(3 3 2 1)(2 1)").canonical_form()
        );
        assert_ne!(
            cog("(12)(1233)").canonical_form(),
            cog("(12)(1323)").canonical_form()
        );
        assert_eq!(cog("()").canonical_form(), "()");
        assert_eq!(cog("(1 2)(1 2 3 3)").canonical_form(), "(1 1 2 3)(2 3)");
    }

    #[test]
    fn reversal_is_same_vertex() {
        assert_eq!(cog("(1 2 3 4)(1 2 3 4)"), cog("(1 4 3 2)(1 2 3 4)"));
        assert!(!cog("(1 2 3 4)(1 2 3 4)").is_isomorphic(&cog("(1 3 2 4)(1 2 3 4)")));
    }
}
