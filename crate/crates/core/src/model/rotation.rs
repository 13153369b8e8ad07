use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::parse::{index_labels, numbered_lines, parse_error, parse_groups, tokens};
use super::{min_rotation, Cog, HalfEdge};
use crate::error::{CogError, Result};

/// Directed cyclic orders at the vertices; stored rotated so the least
/// half-edge comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    vertices: Vec<Vec<HalfEdge>>,
    labels: Vec<String>,
}

impl RotationSystem {
    pub fn new(sequences: Vec<Vec<usize>>) -> Result<RotationSystem> {
        let cog = Cog::new(sequences.clone())?;
        Ok(Self::from_sequences_like(&sequences, cog.labels().to_vec()))
    }

    pub fn with_labels(sequences: Vec<Vec<usize>>, labels: Vec<String>) -> Result<RotationSystem> {
        Cog::with_labels(sequences.clone(), labels.clone())?;
        Ok(Self::from_sequences_like(&sequences, labels))
    }

    fn from_sequences_like(sequences: &[Vec<usize>], labels: Vec<String>) -> RotationSystem {
        let mut seen = vec![0; labels.len()];
        let vertices = sequences
            .iter()
            .map(|seq| {
                seq.iter()
                    .map(|&e| {
                        seen[e] += 1;
                        HalfEdge(2 * e + seen[e] - 1)
                    })
                    .collect()
            })
            .collect();
        Self::from_half_edges(vertices, labels)
    }

    pub(crate) fn from_half_edges(vertices: Vec<Vec<HalfEdge>>, labels: Vec<String>) -> Self {
        RotationSystem {
            vertices: vertices.iter().map(|v| min_rotation(v)).collect(),
            labels,
        }
    }

    /// Parses `[1 3 2 3][1 2]`; a `signs:` line, if present, is ignored.
    pub fn parse(text: &str) -> Result<RotationSystem> {
        Ok(SignedRotationSystem::parse(text)?.rotation)
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

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn underlying_cog(&self) -> Cog {
        Cog::from_half_edges(self.vertices.clone(), self.labels.clone())
    }

    pub fn vertex_reversal(&self, v: usize) -> Result<RotationSystem> {
        let seq = self.vertices.get(v).ok_or(CogError::UnknownVertex(v))?;
        let mut out = self.clone();
        out.vertices[v] = min_rotation(&seq.iter().rev().copied().collect::<Vec<_>>());
        Ok(out)
    }

    /// Successor of each half-edge in the rotation at its vertex.
    pub fn successor(&self) -> Vec<HalfEdge> {
        let mut succ = vec![HalfEdge(0); 2 * self.num_edges()];
        for seq in &self.vertices {
            for (i, h) in seq.iter().enumerate() {
                succ[h.0] = seq[(i + 1) % seq.len()];
            }
        }
        succ
    }

    /// Half-edge owner vertex, indexed by half-edge id.
    pub fn half_edge_owner(&self) -> Vec<usize> {
        let mut owner = vec![0; 2 * self.num_edges()];
        for (v, seq) in self.vertices.iter().enumerate() {
            for h in seq {
                owner[h.0] = v;
            }
        }
        owner
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let owner = self.half_edge_owner();
        owner[2 * e] == owner[2 * e + 1]
    }

    /// Removes the given edges; the remaining edges keep their relative order.
    pub fn delete_edges(&self, edges: &[usize]) -> Result<RotationSystem> {
        let mut keep = vec![true; self.num_edges()];
        for &e in edges {
            *keep
                .get_mut(e)
                .ok_or_else(|| CogError::UnknownEdge(e.to_string()))? = false;
        }
        let mut new_index = vec![usize::MAX; self.num_edges()];
        let mut labels = Vec::new();
        for e in (0..self.num_edges()).filter(|&e| keep[e]) {
            new_index[e] = labels.len();
            labels.push(self.labels[e].clone());
        }
        let vertices = self
            .vertices
            .iter()
            .map(|seq| {
                seq.iter()
                    .filter(|h| keep[h.edge()])
                    .map(|h| HalfEdge(2 * new_index[h.edge()] + (h.0 & 1)))
                    .collect()
            })
            .collect();
        Ok(Self::from_half_edges(vertices, labels))
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for seq in &self.vertices {
            write!(
                f,
                "[{}]",
                seq.iter().map(|h| self.labels[h.edge()].as_str()).join(" ")
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn toggled(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A rotation system with a sign on every edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedRotationSystem {
    rotation: RotationSystem,
    signs: Vec<Sign>,
}

impl SignedRotationSystem {
    pub fn new(rotation: RotationSystem, signs: Vec<Sign>) -> Result<Self> {
        if signs.len() != rotation.num_edges() {
            return Err(CogError::Invalid(format!(
                "{} signs for {} edges",
                signs.len(),
                rotation.num_edges()
            )));
        }
        Ok(SignedRotationSystem { rotation, signs })
    }

    pub fn all_plus(rotation: RotationSystem) -> Self {
        let signs = vec![Sign::Plus; rotation.num_edges()];
        SignedRotationSystem { rotation, signs }
    }

    /// Parses `[1 3 2 3][1 2]` followed by an optional `signs: 1+ 2- 3+` line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut group_lines = Vec::new();
        let mut sign_tokens = Vec::new();
        for (no, line) in numbered_lines(text) {
            let trimmed = line.trim_start();
            if let Some(rest) = trimmed.strip_prefix("signs:") {
                let offset = line.len() - rest.len();
                sign_tokens.extend(tokens(rest, no, offset));
            } else {
                group_lines.push((no, line));
            }
        }
        let groups = parse_groups(&group_lines, '[', ']')?;
        let (seqs, labels) = index_labels(&groups)?;
        let rotation = RotationSystem::with_labels(seqs, labels)?;
        let mut signs = vec![Sign::Plus; rotation.num_edges()];
        for tok in sign_tokens {
            let (label, sign) = match tok.text.chars().last() {
                Some('+') => (&tok.text[..tok.text.len() - 1], Sign::Plus),
                Some('-') => (&tok.text[..tok.text.len() - 1], Sign::Minus),
                _ => {
                    return Err(parse_error(
                        tok.line,
                        tok.column,
                        format!("sign token '{}' must end in + or -", tok.text),
                    ))
                }
            };
            let e = rotation
                .labels()
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| {
                    parse_error(tok.line, tok.column, format!("unknown edge {label}"))
                })?;
            signs[e] = sign;
        }
        Ok(SignedRotationSystem { rotation, signs })
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, e: usize) -> Sign {
        self.signs[e]
    }

    pub fn num_vertices(&self) -> usize {
        self.rotation.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.rotation.num_edges()
    }

    pub fn underlying_cog(&self) -> Cog {
        self.rotation.underlying_cog()
    }

    /// Reverses the rotation at `v` and toggles every non-loop edge at `v`.
    pub fn vertex_flip(&self, v: usize) -> Result<Self> {
        let rotation = self.rotation.vertex_reversal(v)?;
        let owner = self.rotation.half_edge_owner();
        let mut signs = self.signs.clone();
        for (e, sign) in signs.iter_mut().enumerate() {
            let (a, b) = (owner[2 * e], owner[2 * e + 1]);
            if (a == v) != (b == v) {
                *sign = sign.toggled();
            }
        }
        Ok(SignedRotationSystem { rotation, signs })
    }

    pub fn delete_edges(&self, edges: &[usize]) -> Result<Self> {
        let rotation = self.rotation.delete_edges(edges)?;
        let signs = (0..self.num_edges())
            .filter(|e| !edges.contains(e))
            .map(|e| self.signs[e])
            .collect();
        Ok(SignedRotationSystem { rotation, signs })
    }

    /// Toggles the signs of the edges in `edges`.
    pub fn partial_petrial(&self, edges: &[usize]) -> Result<Self> {
        let mut signs = self.signs.clone();
        for &e in edges {
            let s = signs
                .get_mut(e)
                .ok_or_else(|| CogError::UnknownEdge(e.to_string()))?;
            *s = s.toggled();
        }
        Ok(SignedRotationSystem {
            rotation: self.rotation.clone(),
            signs,
        })
    }
}

impl FromStr for SignedRotationSystem {
    type Err = CogError;

    fn from_str(s: &str) -> Result<Self> {
        SignedRotationSystem::parse(s)
    }
}

impl fmt::Display for SignedRotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rotation)?;
        if !self.signs.is_empty() {
            let signs = self
                .signs
                .iter()
                .enumerate()
                .map(|(e, s)| format!("{}{}", self.rotation.labels[e], s.symbol()))
                .join(" ");
            write!(f, "\nsigns: {signs}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RotationSystem {
        RotationSystem::parse(s).unwrap()
    }

    #[test]
    fn reversal() {
        let r = rs("[1 2 3 4][1 2 3 4]");
        let rev = r.vertex_reversal(0).unwrap();
        assert_eq!(rev.to_string(), "[1 4 3 2][1 2 3 4]");
        assert_eq!(rev.vertex_reversal(0).unwrap(), r);
        assert_eq!(rev.underlying_cog(), r.underlying_cog());
        assert_eq!(r.vertex_reversal(5), Err(CogError::UnknownVertex(5)));
    }

    #[test]
    fn distinct_cyclic_orders() {
        assert_ne!(
            rs("[1 2 3 4][1 2 3 4]").underlying_cog().canonical_form(),
            rs("[1 3 2 4][1 2 3 4]").underlying_cog().canonical_form()
        );
    }

    #[test]
    fn srs_parse_and_print() {
        let s = SignedRotationSystem::parse("# theta\n[1 3 2 3][1 2]\nsigns: 1+ 2- 3+\n").unwrap();
        assert_eq!(s.signs(), &[Sign::Plus, Sign::Minus, Sign::Plus]);
        assert_eq!(s.to_string(), "[1 3 2 3][1 2]\nsigns: 1+ 2- 3+");
        assert_eq!(SignedRotationSystem::parse(&s.to_string()).unwrap(), s);
        let d = SignedRotationSystem::parse("[1 1]").unwrap();
        assert_eq!(d.signs(), &[Sign::Plus]);
        assert!(SignedRotationSystem::parse("[1 1]\nsigns: 2+").is_err());
        assert!(SignedRotationSystem::parse("[1 1]\nsigns: 1*").is_err());
    }

    #[test]
    fn flip_keeps_loop_signs() {
        let s = SignedRotationSystem::parse("[1 1 2][2]").unwrap();
        let f = s.vertex_flip(0).unwrap();
        assert_eq!(f.sign(0), Sign::Plus);
        assert_eq!(f.sign(1), Sign::Minus);
        assert_eq!(f.vertex_flip(0).unwrap(), s);
        let both = s.vertex_flip(0).unwrap().vertex_flip(1).unwrap();
        assert_eq!(both.sign(1), Sign::Plus);
    }

    #[test]
    fn petrial_involution() {
        let s = SignedRotationSystem::parse("[1 2 3][1 2 3]").unwrap();
        assert_eq!(s.partial_petrial(&[]).unwrap(), s);
        let p = s.partial_petrial(&[0, 2]).unwrap();
        assert_ne!(p, s);
        assert_eq!(p.partial_petrial(&[0, 2]).unwrap(), s);
        assert_eq!(p.underlying_cog(), s.underlying_cog());
        assert!(s.partial_petrial(&[3]).is_err());
    }
}
