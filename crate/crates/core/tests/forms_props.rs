mod common;

use common::*;
use kvcs_core::forms::{graded_basis, pair, CyclicForm};
use kvcs_core::freelie::GeneratorSet;
use kvcs_core::linalg::Rational;
use kvcs_core::text::{format_form, parse_form};
use proptest::prelude::*;

fn gen_sets() -> [GeneratorSet; 3] {
    [
        GeneratorSet::forms(2),
        GeneratorSet::forms(3),
        GeneratorSet::gauge(1),
    ]
}

#[test]
fn d_squared_and_homotopy_on_bases() {
    for gens in gen_sets() {
        for j in 0..=4 {
            for k in 2..=6 {
                for b in graded_basis(gens, j, k).iter() {
                    let b = b.with_truncation(6);
                    assert!(b.de_rham().de_rham().is_zero(), "d² ≠ 0 on {b}");
                    let de_ed = &b.contraction_e().de_rham() + &b.de_rham().contraction_e();
                    assert_eq!(de_ed, b.scale(&Rational::from(k)), "de+ed ≠ n on {b}");
                }
            }
        }
    }
}

#[test]
fn primitives_of_exact_forms() {
    for gens in gen_sets() {
        for j in 0..=3 {
            for k in 2..=6 {
                for b in graded_basis(gens, j, k).iter() {
                    let w = b.with_truncation(6).de_rham();
                    if w.is_zero() {
                        continue;
                    }
                    assert_eq!(w.poincare_primitive().unwrap().de_rham(), w);
                }
            }
        }
    }
}

#[test]
fn non_closed_forms_have_no_primitive() {
    let g = GeneratorSet::gauge(0);
    let w = parse_form("(A dA)", g, 4).unwrap();
    assert!(w.poincare_primitive().is_err());
}

fn koszul(p: u32) -> Rational {
    if p.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_relations(
        (a, da) in homogeneous(GeneratorSet::gauge(2), 5, 3),
        (b, db) in homogeneous(GeneratorSet::gauge(2), 5, 3),
        (c, _) in homogeneous(GeneratorSet::gauge(2), 5, 3),
    ) {
        prop_assert_eq!(pair(&a, &b).unwrap(), pair(&b, &a).unwrap().scale(&koszul(da * db)));
        prop_assert_eq!(
            pair(&a, &b.bracket(&c).unwrap()).unwrap(),
            pair(&a.bracket(&b).unwrap(), &c).unwrap()
        );
    }

    #[test]
    fn printed_forms_reparse(
        (a, _) in homogeneous(GeneratorSet::gauge(2), 6, 3),
        (b, _) in homogeneous(GeneratorSet::gauge(2), 6, 3),
    ) {
        let f: CyclicForm = pair(&a, &b).unwrap();
        prop_assert_eq!(parse_form(&format_form(&f), GeneratorSet::gauge(2), 6).unwrap(), f);
    }

    #[test]
    fn d_is_a_derivation_of_the_pairing(
        (a, da) in homogeneous(GeneratorSet::gauge(2), 6, 3),
        (b, _) in homogeneous(GeneratorSet::gauge(2), 6, 3),
    ) {
        let n = 6;
        let dpoly = |s: &kvcs_core::freelie::LieSeries| {
            kvcs_core::freelie::LieSeries::from_poly(s.gens(), n, s.poly().de_rham(n)).unwrap()
        };
        let lhs = pair(&a, &b).unwrap().de_rham();
        let rhs = &pair(&dpoly(&a), &b).unwrap() + &pair(&a, &dpoly(&b)).unwrap().scale(&koszul(da));
        prop_assert_eq!(lhs, rhs);
    }
}
