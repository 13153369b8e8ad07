//! Seeded random instances for property tests and the self-check.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Cog, RotationSystem, Sign, SignedRotationSystem};

/// A random rotation system with exactly `edges` edges on `vertices` vertices
/// (some of which may be isolated).
pub fn random_rotation_system<R: Rng>(
    rng: &mut R,
    edges: usize,
    vertices: usize,
) -> RotationSystem {
    let vertices = vertices.max(1);
    let mut ends: Vec<usize> = (0..edges).flat_map(|e| [e, e]).collect();
    ends.shuffle(rng);
    let mut seqs = vec![Vec::new(); vertices];
    for e in ends {
        seqs[rng.gen_range(0..vertices)].push(e);
    }
    RotationSystem::with_labels(seqs, (1..=edges).map(|i| i.to_string()).collect())
        .expect("generated sequences use each edge twice")
}

/// A random signed rotation system with between 1 and `max_edges` edges.
pub fn random_signed_rotation_system<R: Rng>(
    rng: &mut R,
    max_edges: usize,
) -> SignedRotationSystem {
    let edges = rng.gen_range(1..=max_edges.max(1));
    let vertices = rng.gen_range(1..=edges + 1);
    let rotation = random_rotation_system(rng, edges, vertices);
    let signs = (0..edges)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    SignedRotationSystem::new(rotation, signs).expect("one sign per edge")
}

pub fn random_cog<R: Rng>(rng: &mut R, edges: usize, vertices: usize) -> Cog {
    random_rotation_system(rng, edges, vertices).underlying_cog()
}
