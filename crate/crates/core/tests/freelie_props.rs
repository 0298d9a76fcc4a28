mod common;

use common::*;
use kvcs_core::freelie::{lie_coordinates, lyndon_basis, GeneratorSet, LieSeries};
use kvcs_core::linalg::Rational;
use kvcs_core::text::{format_series, parse_series};
use proptest::prelude::*;

fn sign(p: u32) -> Rational {
    if p.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn br(a: &LieSeries, b: &LieSeries) -> LieSeries {
    a.bracket(b).unwrap()
}

/// Witt's formula `(1/k) Σ_{d|k} μ(d) n^{k/d}`.
fn witt(n: u64, k: u64) -> u64 {
    fn mobius(mut d: u64) -> i64 {
        let mut m = 1;
        let mut p = 2;
        while p * p <= d {
            if d.is_multiple_of(p) {
                d /= p;
                if d.is_multiple_of(p) {
                    return 0;
                }
                m = -m;
            }
            p += 1;
        }
        if d > 1 {
            m = -m;
        }
        m
    }
    let s: i64 = (1..=k)
        .filter(|d| k.is_multiple_of(*d))
        .map(|d| mobius(d) * (n.pow((k / d) as u32) as i64))
        .sum();
    (s / k as i64) as u64
}

#[test]
fn lyndon_basis_matches_witt() {
    for n in 1..=4 {
        for k in 1..=8 {
            let basis = lyndon_basis(GeneratorSet::lie(n), k, k).unwrap();
            assert_eq!(basis.len() as u64, witt(n as u64, k as u64), "n={n} k={k}");
        }
    }
}

#[test]
fn lyndon_basis_is_triangular() {
    for k in 1..=6 {
        for b in lyndon_basis(GeneratorSet::lie(3), k, k).unwrap() {
            let coords = lie_coordinates(b.poly()).unwrap();
            assert_eq!(coords.len(), 1);
            assert!(coords[0].1.is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn super_jacobi(
        (a, da) in homogeneous(GeneratorSet::gauge(2), 8, 3),
        (b, db) in homogeneous(GeneratorSet::gauge(2), 8, 3),
        (c, dc) in homogeneous(GeneratorSet::gauge(2), 8, 3),
    ) {
        let t1 = br(&a, &br(&b, &c)).scale(&sign(da * dc));
        let t2 = br(&b, &br(&c, &a)).scale(&sign(db * da));
        let t3 = br(&c, &br(&a, &b)).scale(&sign(dc * db));
        prop_assert!((&(&t1 + &t2) + &t3).is_zero());
    }

    #[test]
    fn super_antisymmetry(
        (a, da) in homogeneous(GeneratorSet::gauge(2), 8, 4),
        (b, db) in homogeneous(GeneratorSet::gauge(2), 8, 4),
    ) {
        prop_assert!((&br(&a, &b) + &br(&b, &a).scale(&sign(da * db))).is_zero());
    }

    #[test]
    fn printed_series_reparse((a, _) in homogeneous(GeneratorSet::gauge(2), 6, 5)) {
        let text = format_series(&a);
        prop_assert_eq!(parse_series(&text, GeneratorSet::gauge(2), 6).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn bch_is_associative(a in lie_element(3, 6, 2), b in lie_element(3, 6, 2), c in lie_element(3, 6, 2)) {
        let left = a.bch(&b.bch(&c).unwrap()).unwrap();
        let right = a.bch(&b).unwrap().bch(&c).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn bch_with_negative_vanishes(a in lie_element(3, 6, 3)) {
        prop_assert!(a.bch(&-&a).unwrap().is_zero());
    }
}
