use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use super::parse::{numbered_lines, parse_error, tokens};
use super::{Cog, HalfEdge};
use crate::error::{CogError, Result};
use crate::multigraph::UnionFind;

/// The graph underlying every gec variant: vertices, e-edges keyed by id,
/// v-edges (a pair `(a, a)` is a v-loop) and a count of free loops.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GecGraph {
    pub vertices: BTreeSet<usize>,
    pub e_edges: BTreeMap<usize, (usize, usize)>,
    pub v_edges: Vec<(usize, usize)>,
    pub free_loops: usize,
}

impl GecGraph {
    pub fn num_e_edges(&self) -> usize {
        self.e_edges.len()
    }

    pub fn e_edge_ids(&self) -> Vec<usize> {
        self.e_edges.keys().copied().collect()
    }

    pub fn e_edge(&self, e: usize) -> Result<(usize, usize)> {
        self.e_edges.get(&e).copied().ok_or(CogError::NotAnEEdge(e))
    }

    pub fn e_edge_at(&self, u: usize) -> Option<usize> {
        self.e_edges
            .iter()
            .find(|(_, &(a, b))| a == u || b == u)
            .map(|(&e, _)| e)
    }

    /// Number of v-half-edges at `u`; a v-loop counts twice.
    pub fn v_degree(&self, u: usize) -> usize {
        self.v_edges
            .iter()
            .map(|&(a, b)| (a == u) as usize + (b == u) as usize)
            .sum()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.v_degree(u) + self.e_edge_at(u).is_some() as usize
    }

    /// Other ends of the v-half-edges at `u`, one entry per half-edge.
    pub fn v_neighbours(&self, u: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.v_edges {
            if a == u {
                out.push(b);
            }
            if b == u {
                out.push(a);
            }
        }
        out
    }

    fn count_components(&self, with_e_edges: bool) -> usize {
        let ids: Vec<usize> = self.vertices.iter().copied().collect();
        let index = |x: usize| ids.binary_search(&x).unwrap();
        let mut uf = UnionFind::new(ids.len());
        for &(a, b) in &self.v_edges {
            uf.union(index(a), index(b));
        }
        if with_e_edges {
            for &(a, b) in self.e_edges.values() {
                uf.union(index(a), index(b));
            }
        }
        uf.num_sets() + self.free_loops
    }

    /// Components of the v-edge subgraph, free loops included.
    pub fn k_v(&self) -> usize {
        self.count_components(false)
    }

    /// Components of the whole graph, free loops included.
    pub fn k(&self) -> usize {
        self.count_components(true)
    }

    /// Removes vertices with their incident v-edges and e-edges.
    pub(crate) fn remove_vertices(&mut self, vs: &[usize]) {
        for v in vs {
            self.vertices.remove(v);
        }
        self.v_edges
            .retain(|(a, b)| !vs.contains(a) && !vs.contains(b));
        self.e_edges
            .retain(|_, (a, b)| !vs.contains(a) && !vs.contains(b));
    }

    pub(crate) fn add_v_edge(&mut self, a: usize, b: usize) {
        self.v_edges.push((a.min(b), a.max(b)));
    }

    pub fn delete_e_edge(&self, e: usize) -> Result<GecGraph> {
        self.e_edge(e)?;
        let mut g = self.clone();
        g.e_edges.remove(&e);
        Ok(g)
    }

    /// `G † e`: removes `e`, both its ends and their incident v-edges.
    pub fn extract_e_edge(&self, e: usize) -> Result<GecGraph> {
        let (a, b) = self.e_edge(e)?;
        let mut g = self.clone();
        g.remove_vertices(&[a, b]);
        Ok(g)
    }

    fn check_common(&self) -> Result<()> {
        let mut used = BTreeSet::new();
        for (&e, &(a, b)) in &self.e_edges {
            if a == b {
                return Err(CogError::Invalid(format!("e-edge {e} is a loop")));
            }
            for x in [a, b] {
                if !self.vertices.contains(&x) {
                    return Err(CogError::Invalid(format!(
                        "e-edge {e} meets unknown vertex {x}"
                    )));
                }
                if !used.insert(x) {
                    return Err(CogError::Invalid(format!(
                        "e-edges do not form a matching at vertex {x}"
                    )));
                }
            }
        }
        for &(a, b) in &self.v_edges {
            for x in [a, b] {
                if !self.vertices.contains(&x) {
                    return Err(CogError::Invalid(format!(
                        "v-edge meets unknown vertex {x}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn sorted_v_edges(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self
            .v_edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        v.sort();
        v
    }
}

impl fmt::Display for GecGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines = Vec::new();
        lines.push(format!("vertices: {}", self.vertices.iter().join(" ")));
        for &(a, b) in self.e_edges.values() {
            lines.push(format!("e: {a} {b}"));
        }
        for (a, b) in self.sorted_v_edges() {
            lines.push(format!("v: {a} {b}"));
        }
        lines.push(format!("freeloops: {}", self.free_loops));
        write!(f, "{}", lines.join("\n"))
    }
}

macro_rules! gec_newtype {
    ($name:ident) => {
        impl Deref for $name {
            type Target = GecGraph;
            fn deref(&self) -> &GecGraph {
                &self.0
            }
        }

        impl $name {
            pub fn graph(&self) -> &GecGraph {
                &self.0
            }

            pub fn into_graph(self) -> GecGraph {
                self.0
            }
        }
    };
}

/// A generalised gec: e-edges form a matching, v-degrees are at most 2.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneralisedGec(GecGraph);
gec_newtype!(GeneralisedGec);

impl GeneralisedGec {
    pub fn new(g: GecGraph) -> Result<Self> {
        g.check_common()?;
        if let Some(u) = g.vertices.iter().find(|&&u| g.v_degree(u) > 2) {
            return Err(CogError::Invalid(format!(
                "vertex {u} has v-degree above 2"
            )));
        }
        Ok(GeneralisedGec(g))
    }

    pub fn delete_e_edge(&self, e: usize) -> Result<Self> {
        Ok(GeneralisedGec(self.0.delete_e_edge(e)?))
    }

    pub fn extract_e_edge(&self, e: usize) -> Result<Self> {
        Ok(GeneralisedGec(self.0.extract_e_edge(e)?))
    }
}

/// A gec: each vertex meets exactly one e-edge and two v-half-edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Gec(GecGraph);
gec_newtype!(Gec);

impl Gec {
    pub fn new(g: GecGraph) -> Result<Self> {
        g.check_common()?;
        for &u in &g.vertices {
            if g.v_degree(u) != 2 || g.e_edge_at(u).is_none() {
                return Err(CogError::Invalid(format!("vertex {u} is not cubic")));
            }
        }
        Ok(Gec(g))
    }

    /// Parses the `vcycle:` / `e:` / `freeloops:` text format.
    pub fn parse(text: &str) -> Result<Gec> {
        let mut names: Vec<String> = Vec::new();
        let mut id = |name: &str| -> usize {
            match names.iter().position(|n| n == name) {
                Some(i) => i,
                None => {
                    names.push(name.to_string());
                    names.len() - 1
                }
            }
        };
        let mut g = GecGraph::default();
        for (no, line) in numbered_lines(text) {
            let trimmed = line.trim_start();
            if trimmed.is_empty() {
                continue;
            }
            let Some((key, rest)) = trimmed.split_once(':') else {
                return Err(parse_error(
                    no,
                    line.len() - trimmed.len() + 1,
                    "expected 'key: values'",
                ));
            };
            let offset = line.len() - rest.len();
            let toks = tokens(rest, no, offset);
            match key.trim() {
                "vcycle" => {
                    if toks.is_empty() {
                        return Err(parse_error(no, offset, "empty v-cycle"));
                    }
                    let ids: Vec<usize> = toks.iter().map(|t| id(&t.text)).collect();
                    for (i, &a) in ids.iter().enumerate() {
                        g.vertices.insert(a);
                        g.add_v_edge(a, ids[(i + 1) % ids.len()]);
                    }
                }
                "e" => {
                    if toks.len() != 2 {
                        return Err(parse_error(no, offset, "an e-edge needs two ends"));
                    }
                    let (a, b) = (id(&toks[0].text), id(&toks[1].text));
                    g.vertices.insert(a);
                    g.vertices.insert(b);
                    let next = g.e_edges.len();
                    g.e_edges.insert(next, (a, b));
                }
                "freeloops" => {
                    let t = toks
                        .first()
                        .ok_or_else(|| parse_error(no, offset, "missing free loop count"))?;
                    g.free_loops += t.text.parse::<usize>().map_err(|_| {
                        parse_error(
                            t.line,
                            t.column,
                            "free loop count must be a non-negative integer",
                        )
                    })?;
                }
                other => {
                    return Err(parse_error(
                        no,
                        line.len() - trimmed.len() + 1,
                        format!("unknown key '{other}'"),
                    ))
                }
            }
        }
        Gec::new(g)
    }

    /// Vertex sequences of the v-cycles, each starting at its least vertex.
    pub fn v_cycles(&self) -> Vec<Vec<usize>> {
        let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &(a, b)) in self.v_edges.iter().enumerate() {
            incident.entry(a).or_default().push(i);
            incident.entry(b).or_default().push(i);
        }
        let mut seen = BTreeSet::new();
        let mut cycles = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut current = start;
            let mut came_by: Option<usize> = None;
            loop {
                seen.insert(current);
                cycle.push(current);
                let edges = &incident[&current];
                let next_edge = edges
                    .iter()
                    .copied()
                    .find(|&i| Some(i) != came_by)
                    .unwrap_or(edges[0]);
                let (a, b) = self.v_edges[next_edge];
                let next = if a == current { b } else { a };
                came_by = Some(next_edge);
                if next == start {
                    break;
                }
                current = next;
            }
            cycles.push(cycle);
        }
        cycles
    }
}

impl fmt::Display for Gec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines = Vec::new();
        for cycle in self.v_cycles() {
            lines.push(format!("vcycle: {}", cycle.iter().join(" ")));
        }
        for &(a, b) in self.e_edges.values() {
            lines.push(format!("e: {a} {b}"));
        }
        if self.free_loops > 0 {
            lines.push(format!("freeloops: {}", self.free_loops));
        }
        write!(f, "{}", lines.join("\n"))
    }
}

/// A pointed-gec: degree-3 vertices carry one e-edge, degree-4 vertices none.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointedGec(GecGraph);
gec_newtype!(PointedGec);

impl PointedGec {
    pub fn new(g: GecGraph) -> Result<Self> {
        g.check_common()?;
        for &u in &g.vertices {
            let ok = matches!(
                (g.e_edge_at(u).is_some(), g.v_degree(u)),
                (true, 2) | (false, 4)
            );
            if !ok {
                return Err(CogError::Invalid(format!(
                    "vertex {u} is neither an e-edge end of degree 3 nor a pointed vertex of degree 4"
                )));
            }
        }
        Ok(PointedGec(g))
    }

    pub(crate) fn from_graph_unchecked(g: GecGraph) -> Self {
        debug_assert!(
            PointedGec::new(g.clone()).is_ok(),
            "invalid pointed-gec {g}"
        );
        PointedGec(g)
    }

    pub fn pointed_vertices(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .copied()
            .filter(|&u| self.e_edge_at(u).is_none())
            .collect()
    }

    /// A string equal for two pointed-gecs exactly when they are isomorphic
    /// (as graphs with distinguished e-edges). Exhaustive over e-edge orders,
    /// their orientations and orders of the pointed vertices.
    pub fn canonical_form(&self) -> String {
        let es: Vec<(usize, usize)> = self.e_edges.values().copied().collect();
        let pointed = self.pointed_vertices();
        let m = es.len();
        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
        for order in (0..m).permutations(m) {
            for flips in 0u32..(1 << m) {
                for (slot, &i) in order.iter().enumerate() {
                    let (a, b) = es[i];
                    let (a, b) = if flips >> slot & 1 == 1 {
                        (b, a)
                    } else {
                        (a, b)
                    };
                    relabel.insert(a, 2 * slot);
                    relabel.insert(b, 2 * slot + 1);
                }
                for pperm in pointed.iter().permutations(pointed.len()) {
                    for (j, &&p) in pperm.iter().enumerate() {
                        relabel.insert(p, 2 * m + j);
                    }
                    let mut key: Vec<(usize, usize)> = self
                        .v_edges
                        .iter()
                        .map(|&(a, b)| {
                            let (a, b) = (relabel[&a], relabel[&b]);
                            (a.min(b), a.max(b))
                        })
                        .collect();
                    key.sort();
                    if best.as_ref().is_none_or(|b| key < *b) {
                        best = Some(key);
                    }
                }
            }
        }
        format!(
            "e{};p{};fl{};v{}",
            m,
            pointed.len(),
            self.free_loops,
            best.unwrap_or_default()
                .iter()
                .map(|(a, b)| format!("{a}-{b}"))
                .join(",")
        )
    }
}

impl From<Gec> for GeneralisedGec {
    fn from(g: Gec) -> Self {
        GeneralisedGec(g.0)
    }
}

impl From<Gec> for PointedGec {
    fn from(g: Gec) -> Self {
        PointedGec(g.0)
    }
}

/// A formal integer combination of pointed-gecs, merged up to isomorphism.
#[derive(Debug, Clone, Default)]
pub struct GecSum {
    terms: BTreeMap<String, (PointedGec, BigInt)>,
}

impl GecSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(g: PointedGec) -> Self {
        let mut s = Self::new();
        s.add(g, BigInt::from(1));
        s
    }

    pub fn add(&mut self, g: PointedGec, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = g.canonical_form();
        let entry = self.terms.entry(key.clone()).or_insert((g, BigInt::zero()));
        entry.1 += coeff;
        if entry.1.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_sum(&mut self, other: &GecSum, factor: &BigInt) {
        for (g, c) in other.terms() {
            self.add(g.clone(), c * factor);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PointedGec, &BigInt)> {
        self.terms.values().map(|(g, c)| (g, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &PointedGec) -> BigInt {
        self.terms
            .get(&g.canonical_form())
            .map(|t| t.1.clone())
            .unwrap_or_default()
    }
}

impl PartialEq for GecSum {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .all(|(k, (_, c))| other.terms.get(k).is_some_and(|(_, d)| c == d))
    }
}

impl Eq for GecSum {}

impl FromIterator<PointedGec> for GecSum {
    fn from_iter<I: IntoIterator<Item = PointedGec>>(iter: I) -> Self {
        let mut s = GecSum::new();
        for g in iter {
            s.add(g, BigInt::from(1));
        }
        s
    }
}

/// Blows each cog vertex up into a v-cycle. Gec vertex ids are half-edge
/// ids and e-edge `i` joins `2i` to `2i + 1`; an isolated vertex becomes a
/// free loop, a degree-1 vertex a v-loop, a degree-2 vertex a double v-edge.
pub fn cog_to_gec(c: &Cog) -> Gec {
    let mut g = GecGraph::default();
    for seq in c.vertices() {
        if seq.is_empty() {
            g.free_loops += 1;
            continue;
        }
        for (i, h) in seq.iter().enumerate() {
            g.vertices.insert(h.0);
            g.add_v_edge(h.0, seq[(i + 1) % seq.len()].0);
        }
    }
    for e in 0..c.num_edges() {
        g.e_edges.insert(e, (2 * e, 2 * e + 1));
    }
    Gec(g)
}

/// Contracts each v-cycle to a cog vertex and each free loop to an isolated
/// vertex. Edges are labelled `1..` in e-edge id order.
pub fn gec_to_cog(g: &Gec) -> Cog {
    let index: BTreeMap<usize, usize> =
        g.e_edges.keys().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut side: BTreeMap<usize, HalfEdge> = BTreeMap::new();
    for (&e, &(a, b)) in &g.e_edges {
        side.insert(a, HalfEdge(2 * index[&e]));
        side.insert(b, HalfEdge(2 * index[&e] + 1));
    }
    let mut vertices: Vec<Vec<HalfEdge>> = g
        .v_cycles()
        .iter()
        .map(|cycle| cycle.iter().map(|u| side[u]).collect())
        .collect();
    vertices.extend(std::iter::repeat_n(Vec::new(), g.free_loops));
    let labels = (1..=index.len()).map(|i| i.to_string()).collect();
    Cog::from_half_edges(vertices, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cog(s: &str) -> Cog {
        Cog::parse(s).unwrap()
    }

    #[test]
    fn loop_gec() {
        let g = cog_to_gec(&cog("(1 1)"));
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.v_cycles(), vec![vec![0, 1]]);
        assert_eq!(g.v_edges.len(), 2);
        assert_eq!(gec_to_cog(&g), cog("(1 1)"));
        assert_eq!(g.delete_e_edge(0).unwrap().k_v(), 1);
        let x = g.extract_e_edge(0).unwrap();
        assert!(x.vertices.is_empty());
        assert_eq!(x.k_v(), 0);
        assert_eq!(g.extract_e_edge(3), Err(CogError::NotAnEEdge(3)));
    }

    #[test]
    fn isolated_vertex_is_free_loop() {
        let g = cog_to_gec(&cog("()"));
        assert_eq!((g.vertices.len(), g.free_loops, g.k()), (0, 1, 1));
        assert_eq!(gec_to_cog(&g).to_string(), "()");
    }

    #[test]
    fn theta_is_prism() {
        let theta = cog("(1 2 3)(1 2 3)");
        let g = cog_to_gec(&theta);
        assert_eq!(g.vertices.len(), 6);
        assert_eq!(g.v_cycles().len(), 2);
        assert!(g.v_cycles().iter().all(|c| c.len() == 3));
        assert_eq!(g.k(), 1);
        assert!(gec_to_cog(&g).is_isomorphic(&theta));
        for e in 0..3 {
            for f in 0..3 {
                if e != f {
                    let a = g.extract_e_edge(e).unwrap().extract_e_edge(f).unwrap();
                    let b = g.extract_e_edge(f).unwrap().extract_e_edge(e).unwrap();
                    assert_eq!(a.vertices, b.vertices);
                    assert_eq!(a.sorted_v_edges(), b.sorted_v_edges());
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["(1 3 2 3)(1 2)", "(1)(1 2)(2)", "(1 1)()", "(1 2 1 2)"] {
            let g = cog_to_gec(&cog(s));
            let parsed = Gec::parse(&g.to_string()).unwrap();
            assert!(gec_to_cog(&parsed).is_isomorphic(&cog(s)), "{s}");
        }
        assert!(Gec::parse("vcycle: a b\ne: a c").is_err());
        assert!(Gec::parse("bogus: 1").is_err());
    }

    #[test]
    fn pointed_canonical_form_ignores_ids() {
        let a = PointedGec::from(cog_to_gec(&cog("(1 2 3)(1 2 3)")));
        let b = PointedGec::from(cog_to_gec(&cog("(3 1 2)(2 1 3)")));
        assert_eq!(a.canonical_form(), b.canonical_form());
        let c = PointedGec::from(cog_to_gec(&cog("(1 1 2)(2 3 3)")));
        assert_ne!(a.canonical_form(), c.canonical_form());
        let sum: GecSum = [a.clone(), b].into_iter().collect();
        assert_eq!(sum.len(), 1);
        assert_eq!(sum.coefficient(&a), BigInt::from(2));
    }

    #[test]
    fn validation() {
        let mut g = cog_to_gec(&cog("(1 1)")).into_graph();
        g.v_edges.pop();
        assert!(Gec::new(g.clone()).is_err());
        assert!(GeneralisedGec::new(g.clone()).is_ok());
        assert!(PointedGec::new(g).is_err());
    }
}
