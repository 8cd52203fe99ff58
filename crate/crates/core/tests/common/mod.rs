//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's normal-form code.
#![allow(dead_code)]

pub mod suites;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use tdual_core::abelian::{FgGroup, GroupElement, Hom, IntMatrix};

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k = gcd of k x k
/// minors`, factor `k` is `d_k / d_(k-1)`. Stops at the rank.
pub fn determinantal_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                    .collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

pub fn to_i128(x: &BigInt) -> i128 {
    x.to_i128().expect("small test values")
}

pub fn matrix_from(m: &[Vec<i64>]) -> IntMatrix {
    let cols = m.first().map_or(0, Vec::len);
    let flat: Vec<i64> = m.iter().flatten().copied().collect();
    IntMatrix::from_i64(m.len(), cols, &flat)
}

pub fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

/// Every invariant-factor chain (all factors at least 2) with product at
/// most `max_order`.
pub fn finite_chains(max_order: u64) -> Vec<Vec<u64>> {
    fn extend(chain: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(chain.clone());
        let start = chain.last().copied().unwrap_or(2);
        let mut d = start;
        while product * d <= max {
            if chain.last().is_none_or(|&l| d % l == 0) {
                chain.push(d);
                extend(chain, product * d, max, out);
                chain.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out
}

pub fn finite_group(chain: &[u64]) -> FgGroup {
    FgGroup::new(0, chain.iter().map(|&d| BigInt::from(d)).collect()).expect("valid chain")
}

/// All elements of a finite group as residue vectors.
pub fn elements(chain: &[u64]) -> Vec<Vec<i128>> {
    let mut out = vec![Vec::new()];
    for &d in chain {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..d as i128).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn reduce(chain: &[u64], v: &[i128]) -> Vec<i128> {
    v.iter()
        .zip(chain)
        .map(|(x, &d)| x.rem_euclid(d as i128))
        .collect()
}

pub fn add(chain: &[u64], a: &[i128], b: &[i128]) -> Vec<i128> {
    reduce(
        chain,
        &a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>(),
    )
}

pub fn scale(chain: &[u64], k: i128, a: &[i128]) -> Vec<i128> {
    reduce(chain, &a.iter().map(|x| k * x).collect::<Vec<_>>())
}

/// A well-defined map between finite groups from arbitrary seeds: entry
/// `(j, i)` is a multiple of `e_j / gcd(e_j, d_i)`.
pub fn hom_from_seeds(dom: &[u64], cod: &[u64], seeds: &[i64]) -> Vec<Vec<i128>> {
    (0..cod.len())
        .map(|j| {
            (0..dom.len())
                .map(|i| {
                    let e = cod[j] as i128;
                    let step = e / gcd(e, dom[i] as i128);
                    let s = seeds[(j * dom.len() + i) % seeds.len().max(1)] as i128;
                    (s * step).rem_euclid(e)
                })
                .collect()
        })
        .collect()
}

pub fn to_hom(dom: &[u64], cod: &[u64], m: &[Vec<i128>]) -> Hom {
    let rows: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    Hom::from_i64(&finite_group(dom), &finite_group(cod), &rows)
        .expect("seeded map is well-defined")
}

pub fn apply(cod: &[u64], m: &[Vec<i128>], x: &[i128]) -> Vec<i128> {
    let y: Vec<i128> = m
        .iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect();
    reduce(cod, &y)
}

pub fn image_set(dom: &[u64], cod: &[u64], m: &[Vec<i128>]) -> BTreeSet<Vec<i128>> {
    elements(dom).iter().map(|x| apply(cod, m, x)).collect()
}

pub fn kernel_set(dom: &[u64], cod: &[u64], m: &[Vec<i128>]) -> BTreeSet<Vec<i128>> {
    let zero = vec![0; cod.len()];
    elements(dom)
        .into_iter()
        .filter(|x| apply(cod, m, x) == zero)
        .collect()
}

fn order_in(chain: &[u64], x: &[i128], inside: &BTreeSet<Vec<i128>>) -> u64 {
    let mut n = 1u64;
    loop {
        if inside.contains(&scale(chain, n as i128, x)) {
            return n;
        }
        n += 1;
    }
}

/// Multiset of element orders: determines a finite abelian group.
pub fn order_profile_of_subset(chain: &[u64], set: &BTreeSet<Vec<i128>>) -> Vec<u64> {
    let zero: BTreeSet<Vec<i128>> = [vec![0; chain.len()]].into_iter().collect();
    let mut v: Vec<u64> = set.iter().map(|x| order_in(chain, x, &zero)).collect();
    v.sort();
    v
}

/// Order profile of `G / S` by coset enumeration.
pub fn quotient_profile(chain: &[u64], sub: &BTreeSet<Vec<i128>>) -> Vec<u64> {
    let mut seen: BTreeSet<Vec<i128>> = BTreeSet::new();
    let mut out = Vec::new();
    for g in elements(chain) {
        if seen.contains(&g) {
            continue;
        }
        for s in sub {
            seen.insert(add(chain, &g, s));
        }
        out.push(order_in(chain, &g, sub));
    }
    out.sort();
    out
}

/// Order profile of a library group, enumerated through its own elements.
pub fn group_profile(g: &FgGroup) -> Vec<u64> {
    let chain: Vec<u64> = g.torsion().iter().map(|d| d.to_u64().unwrap()).collect();
    assert_eq!(g.free_rank(), 0, "finite groups only");
    order_profile_of_subset(&chain, &elements(&chain).into_iter().collect())
}

pub fn element_coords(x: &GroupElement) -> Vec<i128> {
    x.coords().iter().map(to_i128).collect()
}
