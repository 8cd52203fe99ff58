//! Property suites shared by the oracle tests and the acceptance harness.
//! Each suite panics with a description of the first counterexample.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use tdual_core::abelian::{is_exact_at, smith_normal_form, FgGroup, IntMatrix};
use tdual_core::catalog::{cohomology_of, kunneth_with_circle, CatalogSpace, GradedCohomology};
use tdual_core::classifying::{unbased_classes_over_sphere, universal_bundle_tables, ZAction};
use tdual_core::gysin::{total_space_cohomology, CircleBundle, TotalSpaceCohomology};

use super::*;

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    if let Err(e) = runner.run(&strategy, test) {
        panic!("{e}");
    }
}

pub fn catalog() -> Vec<CatalogSpace> {
    let mut v = vec![
        CatalogSpace::Point,
        CatalogSpace::Torus,
        CatalogSpace::EilenbergMacLaneZ2,
    ];
    v.extend((1..=6).map(CatalogSpace::Sphere));
    v.extend((2..=4).map(CatalogSpace::Surface));
    v.extend((1..=6).map(CatalogSpace::RealProjective));
    v.extend((1..=3).map(CatalogSpace::ComplexProjective));
    v
}

/// Base cohomology one degree above the total space, and that top degree.
pub fn base_of(space: CatalogSpace) -> (Arc<GradedCohomology>, usize) {
    let top = space.dimension().map_or(5, |d| (d + 1).max(3));
    (Arc::new(cohomology_of(space, top + 1).unwrap()), top)
}

/// SNF is exact, unimodular, diagonal with a divisibility chain, and its
/// invariant factors are the determinantal divisor quotients.
pub fn smith_suite(cases: u32) {
    run(cases, small_matrix(), |m| {
        let a = matrix_from(&m);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
        prop_assert!(snf.u.is_unimodular() && snf.v.is_unimodular());
        prop_assert_eq!(snf.u.mul(&snf.u_inv), IntMatrix::identity(a.rows()));
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    prop_assert_eq!(&snf.d[(i, j)], &BigInt::from(0));
                }
            }
        }
        let f: Vec<i128> = snf.invariant_factors().iter().map(to_i128).collect();
        prop_assert!(f.iter().all(|&x| x > 0));
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(f, determinantal_factors(&m));
        Ok(())
    });
}

pub fn check_against_brute_force(dom: &[u64], cod: &[u64], m: &[Vec<i128>]) {
    let h = to_hom(dom, cod, m);
    let ker = kernel_set(dom, cod, m);
    let img = image_set(dom, cod, m);
    assert_eq!(
        group_profile(&h.kernel().0),
        order_profile_of_subset(dom, &ker),
        "kernel {dom:?}->{cod:?} {m:?}"
    );
    assert_eq!(
        group_profile(&h.image().0),
        order_profile_of_subset(cod, &img),
        "image {dom:?}->{cod:?} {m:?}"
    );
    assert_eq!(
        group_profile(&h.cokernel().0),
        quotient_profile(cod, &img),
        "cokernel {dom:?}->{cod:?} {m:?}"
    );
    let (kg, kin) = h.kernel();
    let embedded: BTreeSet<Vec<i128>> = kg
        .elements(64)
        .unwrap()
        .iter()
        .map(|x| element_coords(&kin.apply(x).unwrap()))
        .collect();
    assert_eq!(embedded, ker, "kernel inclusion {dom:?}->{cod:?} {m:?}");
}

fn diagonal(n: usize, k: i128) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { k } else { 0 }).collect())
        .collect()
}

/// Kernel, image, cokernel and exactness against brute force: every
/// multiplication map on every group of order at most 64, then random maps
/// and composable pairs between such groups.
pub fn small_group_suite(random_cases: u32) {
    let chains = finite_chains(64);
    assert!(
        chains.len() > 100,
        "only {} groups enumerated",
        chains.len()
    );
    for c in &chains {
        for k in 0..4 {
            let m = diagonal(c.len(), k);
            let m2 = diagonal(c.len(), 2 * k);
            check_against_brute_force(c, c, &m);
            let brute = image_set(c, c, &m) == kernel_set(c, c, &m2);
            assert_eq!(
                is_exact_at(&to_hom(c, c, &m), &to_hom(c, c, &m2)).unwrap(),
                brute,
                "{c:?} x{k}"
            );
        }
    }
    let n = chains.len();
    let strategy = (
        0..n,
        0..n,
        0..n,
        prop::collection::vec(-5i64..6, 16),
        prop::collection::vec(-5i64..6, 16),
    );
    run(random_cases, strategy, |(a, b, c, s1, s2)| {
        let (a, b, c) = (&chains[a], &chains[b], &chains[c]);
        let f = hom_from_seeds(a, b, &s1);
        let g = hom_from_seeds(b, c, &s2);
        check_against_brute_force(a, b, &f);
        let brute = image_set(a, b, &f) == kernel_set(b, c, &g);
        prop_assert_eq!(
            is_exact_at(&to_hom(a, b, &f), &to_hom(b, c, &g)).unwrap(),
            brute
        );
        let gh = to_hom(b, c, &g);
        prop_assert!(is_exact_at(&gh.kernel().1, &gh).unwrap());
        Ok(())
    });
}

/// Trivial bundles over every catalog space against H^k ⊕ H^(k-1).
pub fn kunneth_suite() {
    for space in catalog() {
        let (w, top) = base_of(space);
        let bundle = CircleBundle::new(Arc::clone(&w), w.group(2).unwrap().zero_element()).unwrap();
        let t = total_space_cohomology(&bundle, top).unwrap();
        let k = kunneth_with_circle(&w).unwrap();
        for d in 0..=top {
            let (hk, hk1) = (
                w.group(d as isize).unwrap(),
                w.group(d as isize - 1).unwrap(),
            );
            let mut tors = hk.torsion().to_vec();
            tors.extend(hk1.torsion().iter().cloned());
            let oracle = FgGroup::from_factors(hk.free_rank() + hk1.free_rank(), &tors);
            assert_eq!(t.group(d).unwrap(), &oracle, "{space} degree {d}");
            if d <= k.max_degree() {
                assert_eq!(
                    k.group(d as isize).unwrap(),
                    oracle,
                    "{space} product degree {d}"
                );
                let from_base = k
                    .labels(d)
                    .iter()
                    .filter(|l| l.ends_with("x1") || *l == "1")
                    .count();
                assert_eq!(from_base, hk.ngens(), "{space} degree {d}");
            }
        }
        if space.dimension().is_some() {
            let chi: i64 = k
                .ranks()
                .iter()
                .enumerate()
                .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
                .sum();
            assert_eq!(chi, 0, "{space}");
        }
    }
}

/// Every small Euler class over every catalog base.
pub fn bundle_corpus() -> Vec<(CatalogSpace, TotalSpaceCohomology)> {
    let mut out = Vec::new();
    for space in catalog() {
        let (w, top) = base_of(space);
        let h2 = w.group(2).unwrap();
        let mut eulers: Vec<Vec<i64>> = vec![vec![0; h2.ngens()]];
        if h2.ngens() == 1 {
            eulers.extend((-3..=3).filter(|&m| m != 0).map(|m| vec![m]));
        }
        for e in eulers {
            let bundle = CircleBundle::with_coords(Arc::clone(&w), &e).unwrap();
            out.push((space, total_space_cohomology(&bundle, top).unwrap()));
        }
    }
    out
}

pub fn assert_gysin_invariants(name: &str, t: &TotalSpaceCohomology) {
    for (k, ok) in t.audit_exactness().unwrap() {
        assert!(ok, "{name}: exactness fails in degree {k}");
    }
    for k in 0..=t.max_degree() {
        assert!(
            t.pullback(k)
                .unwrap()
                .then(t.pushforward(k).unwrap())
                .unwrap()
                .is_zero(),
            "{name} degree {k}"
        );
    }
    if t.max_degree() >= 2 {
        assert!(
            t.pullback_of(2, t.bundle().euler()).unwrap().is_zero(),
            "{name}: euler class survives"
        );
    }
}

/// Exactness audit over the catalog corpus and the universal bundles.
/// Returns the number of bundles checked.
pub fn gysin_suite() -> usize {
    let corpus = bundle_corpus();
    for (space, t) in &corpus {
        assert_gysin_invariants(&format!("{space} e={}", t.bundle().euler()), t);
    }
    let u = universal_bundle_tables().unwrap();
    assert_gysin_invariants("E32", &u.e32);
    assert_gysin_invariants("E32^", &u.e32_hat);
    corpus.len() + 2
}

pub fn orbit_actions() -> Vec<ZAction> {
    vec![
        ZAction::from_rows(&[[1, 1], [0, 1]]).unwrap(),
        ZAction::from_rows(&[[1, 0, 1], [0, 1, 0], [0, 0, 1]]).unwrap(),
        ZAction::from_rows(&[[1, 0, -3], [0, 1, 2], [0, 0, 1]]).unwrap(),
    ]
}

/// Orbit representatives are idempotent and constant under 100 random
/// powers of the action.
pub fn orbit_suite(cases: u32) {
    let actions = orbit_actions();
    let strategy = (
        0..actions.len(),
        prop::collection::vec(-40i64..41, 3),
        prop::collection::vec(-30i64..31, 100),
    );
    run(cases, strategy, |(which, coords, powers)| {
        let action = &actions[which];
        let x = action
            .group()
            .element_i64(&coords[..action.group().ngens()])
            .unwrap();
        let rep = unbased_classes_over_sphere(action, &x).unwrap();
        prop_assert_eq!(&unbased_classes_over_sphere(action, &rep).unwrap(), &rep);
        for n in powers {
            let moved = action.power(n).apply(&x).unwrap();
            prop_assert_eq!(&unbased_classes_over_sphere(action, &moved).unwrap(), &rep);
        }
        Ok(())
    });
}
