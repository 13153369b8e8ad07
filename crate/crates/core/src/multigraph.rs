//! Plain multigraphs (loops and parallel edges allowed).

use itertools::Itertools;

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.sets -= 1;
        true
    }

    pub fn num_sets(&self) -> usize {
        self.sets
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        assert!(
            edges
                .iter()
                .all(|&(a, b)| a < num_vertices && b < num_vertices),
            "edge endpoint out of range"
        );
        Multigraph {
            num_vertices,
            edges,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_components(&self) -> usize {
        let mut uf = UnionFind::new(self.num_vertices);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.num_sets()
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() <= 1
    }

    /// Cycle rank `e - v + k`.
    pub fn nullity(&self) -> usize {
        self.edges.len() + self.num_components() - self.num_vertices
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Equal for isomorphic multigraphs; brute force over vertex orders.
    pub fn canonical_key(&self) -> Vec<(usize, usize)> {
        let n = self.num_vertices;
        let mut key: Vec<(usize, usize)> = (0..n)
            .permutations(n)
            .map(|p| {
                let mut k: Vec<(usize, usize)> = self
                    .edges
                    .iter()
                    .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                    .collect();
                k.sort();
                k
            })
            .min()
            .unwrap_or_default();
        key.insert(0, (n, n));
        key
    }

    pub fn is_isomorphic(&self, other: &Multigraph) -> bool {
        self.num_vertices == other.num_vertices
            && self.num_edges() == other.num_edges()
            && self.canonical_key() == other.canonical_key()
    }
}

/// Connected multigraphs with exactly `edges` edges, as labelled edge lists
/// in which each edge after the first meets an earlier vertex. Every
/// isomorphism class occurs; copies are not merged.
pub fn connected_multigraphs(edges: usize) -> Vec<Multigraph> {
    fn grow(
        edges: usize,
        current: &mut Vec<(usize, usize)>,
        used: usize,
        out: &mut Vec<Multigraph>,
    ) {
        if current.len() == edges {
            out.push(Multigraph::new(used.max(1), current.clone()));
            return;
        }
        let choices: Vec<(usize, usize)> = if current.is_empty() {
            vec![(0, 0), (0, 1)]
        } else {
            (0..used)
                .flat_map(|a| (a..=used).map(move |b| (a, b)))
                .collect()
        };
        for (a, b) in choices {
            current.push((a, b));
            grow(edges, current, used.max(b + 1), out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    grow(edges, &mut Vec::new(), 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_and_nullity() {
        let theta = Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]);
        assert_eq!(theta.num_components(), 1);
        assert_eq!(theta.nullity(), 2);
        let two = Multigraph::new(3, vec![(0, 0)]);
        assert_eq!(two.num_components(), 3);
    }

    #[test]
    fn iso_keys() {
        let a = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 2)]);
        let b = Multigraph::new(3, vec![(1, 0), (0, 0), (2, 1)]);
        assert!(a.is_isomorphic(&b));
        let c = Multigraph::new(3, vec![(0, 1), (1, 2), (1, 1)]);
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn connected_generation() {
        // classes on one edge: a loop and a link
        let one = connected_multigraphs(1);
        assert!(one.iter().all(|g| g.is_connected()));
        let classes = |gs: &[Multigraph]| gs.iter().map(|g| g.canonical_key()).unique().count();
        assert_eq!(classes(&one), 2);
        // bouquet, loop with pendant link, double link, path
        assert_eq!(classes(&connected_multigraphs(2)), 4);
    }
}
