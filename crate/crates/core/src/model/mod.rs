//! Cogs, rotation systems and graph-encoded cogs.

mod cog;
mod gec;
mod parse;
pub mod random;
mod rotation;

pub use cog::Cog;
pub use gec::{cog_to_gec, gec_to_cog, Gec, GecGraph, GecSum, GeneralisedGec, PointedGec};
pub use rotation::{RotationSystem, Sign, SignedRotationSystem};

use serde::{Deserialize, Serialize};

/// A half-edge; edge `i` is the pair `2i`, `2i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfEdge(pub usize);

impl HalfEdge {
    pub fn edge(self) -> usize {
        self.0 / 2
    }

    pub fn partner(self) -> HalfEdge {
        HalfEdge(self.0 ^ 1)
    }
}

/// Least rotation of a cyclic sequence.
pub(crate) fn min_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    (0..seq.len().max(1))
        .map(|i| rotated(seq, i))
        .min()
        .unwrap_or_default()
}

/// Least rotation or reflection of a cyclic sequence.
pub(crate) fn min_dihedral<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    let reversed: Vec<T> = seq.iter().rev().cloned().collect();
    min_rotation(seq).min(min_rotation(&reversed))
}

fn rotated<T: Clone>(seq: &[T], i: usize) -> Vec<T> {
    if seq.is_empty() {
        return Vec::new();
    }
    seq[i..].iter().chain(&seq[..i]).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_minimum() {
        assert_eq!(min_dihedral(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(min_dihedral(&[2, 1, 3, 1]), vec![1, 2, 1, 3]);
        assert_eq!(min_rotation(&[2, 1, 3]), vec![1, 3, 2]);
        assert!(min_dihedral::<u8>(&[]).is_empty());
    }
}
