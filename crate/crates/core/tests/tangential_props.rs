mod common;

use std::collections::BTreeMap;

use common::*;
use kvcs_core::forms::{graded_basis, pair, CyclicForm};
use kvcs_core::freelie::{GeneratorSet, LieSeries, Word};
use kvcs_core::kv::tder2_basis;
use kvcs_core::linalg::{rank, Rational, SparseMatrix, SparseVector};
use kvcs_core::tangential::{
    block_map, pushforward_form, TangentialAutomorphism, TangentialDerivation,
};
use proptest::prelude::*;

const N: usize = 5;

fn x(n: usize, i: usize) -> LieSeries {
    LieSeries::x(GeneratorSet::lie(n), N, i)
}

fn form_vec(f: &CyclicForm, idx: &mut BTreeMap<Word, usize>, offset: usize) -> SparseVector {
    f.iter()
        .map(|(w, c)| {
            let next = idx.len();
            (offset + *idx.entry(w.clone()).or_insert(next), c.clone())
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tder_jacobi(u in tder(2, N, 3), v in tder(2, N, 3), w in tder(2, N, 3)) {
        let br = |a: &TangentialDerivation, b: &TangentialDerivation| a.bracket(b).unwrap();
        let s = &(&br(&u, &br(&v, &w)) + &br(&v, &br(&w, &u))) + &br(&w, &br(&u, &v));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn rho_is_a_homomorphism(u in tder(3, N, 3), v in tder(3, N, 3)) {
        let uv = u.bracket(&v).unwrap();
        for i in 1..=3 {
            let t = x(3, i);
            let lhs = uv.rho_series(&t);
            let rhs = &u.rho_series(&v.rho_series(&t)) - &v.rho_series(&u.rho_series(&t));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rho_commutes_with_d(u in tder(2, N, 3), (a, _) in homogeneous(GeneratorSet::forms(2), N, 3), (b, _) in homogeneous(GeneratorSet::forms(2), N, 3)) {
        let f = pair(&a, &b).unwrap();
        prop_assert_eq!(u.rho_form(&f.de_rham()), u.rho_form(&f).de_rham());
    }

    #[test]
    fn gamma_roundtrip_and_c_relation(u in tder(2, N, 4)) {
        prop_assert_eq!(&TangentialDerivation::gamma_inverse(2, &u.gamma()).unwrap(), &u);
        let g = GeneratorSet::forms(2);
        let mut s = CyclicForm::zero(g, N);
        for (i, ui) in u.components().iter().enumerate() {
            s = &s + &pair(&LieSeries::x(g, N, i + 1), &ui.embed(g).unwrap()).unwrap();
        }
        prop_assert_eq!(&u.gamma() + &u.cocycle_c(), s.de_rham());
    }

    #[test]
    fn c_is_a_cocycle(u in tder(2, N, 3), v in tder(2, N, 3)) {
        let lhs = u.bracket(&v).unwrap().cocycle_c();
        let rhs = &u.rho_form(&v.cocycle_c()) - &v.rho_form(&u.cocycle_c());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn c_is_natural(u in tder(2, N, 3)) {
        for pattern in ["12,3", "1,23", "1,2", "2,3"] {
            let f = block_map(pattern, 3).unwrap();
            let lhs = u.pushforward(&f).unwrap().cocycle_c();
            let rhs = pushforward_form(&f, &u.cocycle_c()).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", pattern);
        }
    }

    #[test]
    fn pushforward_is_a_lie_map(u in tder(2, N, 3), v in tder(2, N, 3)) {
        for pattern in ["12,3", "1,23", "1,2", "2,3"] {
            let f = block_map(pattern, 3).unwrap();
            let lhs = u.bracket(&v).unwrap().pushforward(&f).unwrap();
            let rhs = u.pushforward(&f).unwrap().bracket(&v.pushforward(&f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", pattern);
        }
    }

    #[test]
    fn group_cocycle(u in tder(2, N, 3), v in tder(2, N, 3)) {
        let (g, f) = (TangentialAutomorphism::exp(u), TangentialAutomorphism::exp(v));
        let gf = g.multiply(&f).unwrap();
        prop_assert_eq!(gf.cocycle(), &g.cocycle() + &g.apply_form(&f.cocycle()));
    }

    #[test]
    fn action_is_left(u in tder(2, N, 3), v in tder(2, N, 3), t in lie_element(2, N, 3)) {
        let (g, h) = (TangentialAutomorphism::exp(u), TangentialAutomorphism::exp(v));
        prop_assert_eq!(g.multiply(&h).unwrap().apply_series(&t), g.apply_series(&h.apply_series(&t)));
    }

    #[test]
    fn group_law_is_associative(u in tder(2, N, 3), v in tder(2, N, 3), w in tder(2, N, 3)) {
        let (a, b, c) = (TangentialAutomorphism::exp(u), TangentialAutomorphism::exp(v), TangentialAutomorphism::exp(w));
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(a.multiply(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn saut_cocycle_is_closed(u in sder2(N)) {
        prop_assert!(u.is_sder());
        let g = TangentialAutomorphism::exp(u);
        prop_assert!(g.is_saut());
        prop_assert!(g.cocycle().de_rham().is_zero());
    }
}

#[test]
fn c_after_gamma_inverse_is_de_minus_id() {
    for k in 2..=N {
        for b in graded_basis(GeneratorSet::forms(2), 1, k).iter() {
            let w = b.with_truncation(N);
            let u = TangentialDerivation::gamma_inverse(2, &w).unwrap();
            assert_eq!(u.cocycle_c(), &w.contraction_e().de_rham() - &w, "on {w}");
            let lhs = {
                let v = &w - &w.de_rham().contraction_e();
                &v.contraction_e().de_rham() - &v
            };
            assert_eq!(lhs, &w.scale(&Rational::from(k)) - &w, "on {w}");
        }
    }
}

#[test]
fn c_is_injective() {
    for k in 1..N {
        let basis = tder2_basis(k, N).unwrap();
        let mut idx = BTreeMap::new();
        let cols: Vec<SparseVector> = basis
            .iter()
            .map(|u| form_vec(&u.cocycle_c(), &mut idx, 0))
            .collect();
        assert_eq!(
            rank(&SparseMatrix::from_columns(idx.len(), &cols)),
            basis.len(),
            "k={k}"
        );
    }
}

#[test]
fn sder_iff_gamma_closed() {
    for k in 1..=4 {
        let basis = tder2_basis(k, N).unwrap();
        let s = TangentialDerivation::sum_of_generators(2, N);
        let (mut di, mut ri) = (BTreeMap::new(), BTreeMap::new());
        let dg: Vec<SparseVector> = basis
            .iter()
            .map(|u| form_vec(&u.gamma().de_rham(), &mut di, 0))
            .collect();
        let rv: Vec<SparseVector> = basis
            .iter()
            .map(|u| {
                u.rho_series(&s)
                    .poly()
                    .iter()
                    .map(|(w, c)| {
                        let next = ri.len();
                        (*ri.entry(w.clone()).or_insert(next), c.clone())
                    })
                    .collect()
            })
            .collect();
        let off = di.len();
        let stacked: Vec<SparseVector> = dg
            .iter()
            .zip(&rv)
            .map(|(a, b)| {
                a.iter()
                    .map(|(i, c)| (*i, c.clone()))
                    .chain(b.iter().map(|(i, c)| (off + i, c.clone())))
                    .collect()
            })
            .collect();
        let r1 = rank(&SparseMatrix::from_columns(off, &dg));
        let r2 = rank(&SparseMatrix::from_columns(ri.len(), &rv));
        let r12 = rank(&SparseMatrix::from_columns(off + ri.len(), &stacked));
        assert!(r1 == r2 && r2 == r12, "k={k}: {r1} {r2} {r12}");
    }
}
