#![allow(dead_code)]

use kvcs_core::freelie::{GeneratorSet, Letter, LieSeries};
use kvcs_core::linalg::Rational;
use kvcs_core::tangential::TangentialDerivation;
use proptest::prelude::*;

/// Bracket monomials as trees over letter names.
#[derive(Clone, Debug)]
pub enum Tree {
    Leaf(Letter),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn text(&self) -> String {
        match self {
            Tree::Leaf(l) => l.name(),
            Tree::Node(a, b) => format!("[{},{}]", a.text(), b.text()),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Tree::Leaf(l) => l.degree(),
            Tree::Node(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn letters(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(a, b) => a.letters() + b.letters(),
        }
    }
}

pub fn tree(letters: Vec<Letter>, max_letters: u32) -> impl Strategy<Value = Tree> {
    let leaf = proptest::sample::select(letters).prop_map(Tree::Leaf);
    leaf.prop_recursive(
        max_letters.saturating_sub(1).max(1),
        max_letters,
        2,
        |inner| (inner.clone(), inner).prop_map(|(a, b)| Tree::Node(Box::new(a), Box::new(b))),
    )
    .prop_filter("too many letters", move |t| {
        t.letters() <= max_letters as usize
    })
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q))
}

/// Series `Σ c_i t_i` from trees.
pub fn series(gens: GeneratorSet, trunc: usize, terms: &[(Rational, Tree)]) -> LieSeries {
    let mut s = LieSeries::zero(gens, trunc);
    for (c, t) in terms {
        let p = kvcs_core::text::parse_series(&t.text(), gens, trunc).unwrap();
        s = &s + &p.scale(c);
    }
    s
}

/// Random element of `Lie_n` up to `max_letters` letters.
pub fn lie_element(n: usize, trunc: usize, max_letters: u32) -> impl Strategy<Value = LieSeries> {
    let letters: Vec<Letter> = (1..=n).map(Letter::x).collect();
    proptest::collection::vec((small_rational(), tree(letters, max_letters)), 1..4)
        .prop_map(move |ts| series(GeneratorSet::lie(n), trunc, &ts))
}

/// Homogeneous element (fixed Koszul degree) over `gens`.
pub fn homogeneous(
    gens: GeneratorSet,
    trunc: usize,
    max_letters: u32,
) -> impl Strategy<Value = (LieSeries, u32)> {
    let letters = gens.letters();
    (
        tree(letters.clone(), max_letters),
        proptest::collection::vec((small_rational(), tree(letters, max_letters)), 0..3),
    )
        .prop_map(move |(head, rest)| {
            let deg = head.degree();
            let mut ts = vec![(Rational::one(), head)];
            ts.extend(rest.into_iter().filter(|(_, t)| t.degree() == deg));
            (series(gens, trunc, &ts), deg)
        })
}

/// Random tangential derivation of arity `n` with components of 2..=`max_letters` letters.
pub fn tder(
    n: usize,
    trunc: usize,
    max_letters: u32,
) -> impl Strategy<Value = TangentialDerivation> {
    proptest::collection::vec(lie_element(n, trunc, max_letters), n).prop_map(|comps| {
        let comps = comps.into_iter().map(|c| strip_linear(&c)).collect();
        TangentialDerivation::new(comps).unwrap()
    })
}

/// Drops the one-letter part (tangential derivations in the completed
/// positive part start at two letters).
pub fn strip_linear(s: &LieSeries) -> LieSeries {
    s - &s.part(1)
}

/// Random `u ∈ sder_2`: `γ⁻¹` of an exact one-form `d⟨a,b⟩`.
pub fn sder2(trunc: usize) -> impl Strategy<Value = TangentialDerivation> {
    (lie_element(2, trunc, 3), lie_element(2, trunc, 3)).prop_filter_map("zero", move |(a, b)| {
        let g = GeneratorSet::forms(2);
        let f = kvcs_core::forms::pair(&a.embed(g).unwrap(), &b.embed(g).unwrap())
            .unwrap()
            .de_rham();
        let u = TangentialDerivation::gamma_inverse(2, &f).unwrap();
        (!u.is_zero()).then_some(u)
    })
}
