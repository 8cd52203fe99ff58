//! Published tables for the classifying spaces and their universal bundles.
//!
//! Kept apart from the engine so computed and asserted values never mix.

use crate::abelian::{FgGroup, Hom};
use crate::catalog::GradedCohomology;
use crate::error::Result;

/// Deck action on H² of the universal cover of R2, basis (b, v).
pub const THETA_R2: [[i64; 2]; 2] = [[1, 1], [0, 1]];

/// Deck action on π2 and H² of the cover of R32, basis (a1, a2, c).
pub const PI2_ON_R32: [[i64; 3]; 3] = [[1, 0, 1], [0, 1, 0], [0, 0, 1]];

/// Deck action on H⁴ of the cover of R32 as published, basis
/// (a1^2, a2^2, a1c, a2c, c^2).
pub const PHI_R32: [[i64; 5]; 5] = [
    [1, 0, 2, 0, 1],
    [0, 1, 0, 0, 0],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1],
];

pub const R2_RANKS: [usize; 4] = [1, 1, 1, 1];
pub const R2_LABELS: [&[&str]; 4] = [&["1"], &["a"], &["b"], &["c"]];

pub const R32_RANKS: [usize; 5] = [1, 1, 2, 1, 3];
pub const R32_LABELS: [&[&str]; 5] = [
    &["1"],
    &["l"],
    &["a1", "a2"],
    &["a2l"],
    &["a1^2", "a2^2", "x"],
];

/// Ranks of π1, π2, ... ; higher groups vanish.
pub const PI_R2: [usize; 2] = [1, 2];
pub const PI_R32: [usize; 3] = [1, 3, 1];

pub const E32_RANKS: [usize; 4] = [1, 1, 2, 2];
pub const E32_HAT_RANKS: [usize; 4] = [1, 1, 1, 1];
/// Classes of the base hit by the pushforward: `p!(b) = l`, `p!(h) = a2`.
pub const E32_PUSHFORWARDS: [(usize, &str); 2] = [(2, "l"), (3, "a2")];
/// `p!(h^) = a1`.
pub const E32_HAT_PUSHFORWARDS: [(usize, &str); 1] = [(3, "a1")];

/// Universal pair bundle over R2 in degrees 1..3; `p!(w) = a` in degree 2.
pub const E2_RANKS: [usize; 4] = [1, 1, 1, 1];
pub const E2_PUSHFORWARDS: [(usize, &str); 1] = [(2, "a")];

fn free_groups(ranks: &[usize]) -> Vec<FgGroup> {
    ranks.iter().map(|&r| FgGroup::free(r)).collect()
}

pub fn r32_groups() -> Vec<FgGroup> {
    free_groups(&R32_RANKS)
}

pub fn e32_groups() -> Vec<FgGroup> {
    free_groups(&E32_RANKS)
}

pub fn e32_hat_groups() -> Vec<FgGroup> {
    free_groups(&E32_HAT_RANKS)
}

/// The published ring of R32 through degree 4, with `a1*a2 = 0`, `a1*l = 0`.
pub fn r32_ring() -> Result<GradedCohomology> {
    let g = r32_groups();
    let labels = R32_LABELS
        .iter()
        .map(|row| row.iter().map(|s| s.to_string()).collect())
        .collect();
    let cup = |k: usize, rows: &[Vec<i64>]| Hom::from_i64(&g[k], &g[k + 2], rows).map(Some);
    let cup2 = vec![
        vec![cup(0, &[vec![1], vec![0]])?, cup(0, &[vec![0], vec![1]])?],
        vec![cup(1, &[vec![0]])?, cup(1, &[vec![1]])?],
        vec![
            cup(2, &[vec![1, 0], vec![0, 0], vec![0, 0]])?,
            cup(2, &[vec![0, 0], vec![0, 1], vec![0, 0]])?,
        ],
    ];
    GradedCohomology::from_tables("R32", g, labels, cup2, Some(false))
}

/// The T32 action on H⁰..H³ of R32: `l -> 0`, `a1 <-> a2`, `a2l -> 0`.
pub const T32_ON_R32: [&[&[i64]]; 4] = [&[&[1]], &[&[0]], &[&[0, 1], &[1, 0]], &[&[0]]];

/// The map H*(E32) -> H*(E32^) in degrees 0..3: `y -> 0`,
/// `p*(a2) -> p^*(a1)`, `p*(a2l) -> 0`, `h -> h^`. The image of `b` is
/// `k p^*(a1)` with `k` not determined, so it is a parameter.
pub fn t32_on_bundles(k: i64) -> [Vec<Vec<i64>>; 4] {
    [
        vec![vec![1]],
        vec![vec![0]],
        vec![vec![1, k]],
        vec![vec![0, 1]],
    ]
}
