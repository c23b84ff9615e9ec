#![allow(dead_code)]

use fca_core::{BitSet, FormalContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DENSITIES: [f64; 3] = [0.3, 0.5, 0.7];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_context(rng: &mut impl Rng, objects: usize, attributes: usize, density: f64) -> FormalContext {
    FormalContext::from_fn(
        (0..objects).map(|g| format!("g{g}")).collect(),
        (0..attributes).map(|m| format!("m{m}")).collect(),
        |_, _| rng.gen_bool(density),
    )
    .expect("generated names are unique")
}

/// `count` contexts with `1..=max_g` objects, `min_m..=max_m` attributes and
/// densities cycling through [`DENSITIES`].
pub fn corpus(seed: u64, count: usize, max_g: usize, min_m: usize, max_m: usize) -> Vec<FormalContext> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let g = rng.gen_range(1..=max_g);
            let m = rng.gen_range(min_m..=max_m);
            random_context(&mut rng, g, m, DENSITIES[i % DENSITIES.len()])
        })
        .collect()
}

pub fn random_subset(rng: &mut impl Rng, len: usize, density: f64) -> BitSet {
    BitSet::from_indices(len, (0..len).filter(|_| rng.gen_bool(density)))
}

/// A random partition of `0..n` into non-empty blocks.
pub fn random_partition(rng: &mut impl Rng, n: usize) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for m in 0..n {
        let slot = rng.gen_range(0..=blocks.len());
        if slot == blocks.len() {
            blocks.push(vec![m]);
        } else {
            blocks[slot].push(m);
        }
    }
    blocks
}
