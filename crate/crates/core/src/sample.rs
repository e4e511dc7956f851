//! Seeded random instances for the verification suites. Everything is
//! driven by a caller-supplied ChaCha stream, so identical seeds give
//! identical instances on every platform.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::LabeledDigraph;
use crate::label::Label;
use crate::matrix::LabeledMatrix;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A strictly positive rational with numerator in `1..=max_numer` and
/// denominator in `1..=max_denom`.
pub fn random_label(rng: &mut ChaCha8Rng, max_numer: u32, max_denom: u32) -> Label {
    let n = rng.gen_range(1..=max_numer) as u64;
    let d = rng.gen_range(1..=max_denom) as u64;
    Label::from_fraction(n, d).expect("positive fraction")
}

/// A random DAG in forward normal form: vertices `0..v` for a random
/// `v <= max_vertices`, each forward cell kept with probability 1/2, at
/// least one edge always, rational labels.
pub fn random_dag(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_numer: u32,
    max_denom: u32,
) -> LabeledDigraph {
    assert!(max_vertices >= 2);
    let v = rng.gen_range(2..=max_vertices);
    let mut cells = Vec::new();
    for i in 0..v {
        for j in i + 1..v {
            cells.push((i, j));
        }
    }
    let mut chosen: Vec<(usize, usize)> = cells
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    if chosen.is_empty() {
        chosen.push(cells[rng.gen_range(0..cells.len())]);
    }
    LabeledDigraph::from_numbered_edges(
        v,
        chosen
            .into_iter()
            .map(|(s, d)| (s, d, random_label(rng, max_numer, max_denom))),
    )
}

/// A random digraph over all ordered pairs, self-loops included, each cell
/// kept with probability 1/4, at least one edge always.
pub fn random_digraph(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_numer: u32,
    max_denom: u32,
) -> LabeledDigraph {
    assert!(max_vertices >= 2);
    let v = rng.gen_range(2..=max_vertices);
    let mut cells = Vec::new();
    for i in 0..v {
        for j in 0..v {
            cells.push((i, j));
        }
    }
    let mut chosen: Vec<(usize, usize)> = cells
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.25))
        .collect();
    if chosen.is_empty() {
        chosen.push(cells[rng.gen_range(0..cells.len())]);
    }
    LabeledDigraph::from_numbered_edges(
        v,
        chosen
            .into_iter()
            .map(|(s, d)| (s, d, random_label(rng, max_numer, max_denom))),
    )
}

/// A random square matrix with about half of the entries zero and the rest
/// positive rationals.
pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    max_numer: u32,
    max_denom: u32,
) -> LabeledMatrix {
    assert!(max_dim >= 1);
    let n = rng.gen_range(1..=max_dim);
    let mut m = LabeledMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(0.5) {
                m.set(i, j, random_label(rng, max_numer, max_denom));
            }
        }
    }
    m
}
