//! Lyndon words, standard bracketings and Lie coordinates.

use super::alphabet::{GeneratorSet, Letter, Word};
use super::poly::Poly;
use super::series::LieSeries;
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Lyndon words of length `k` over the sorted alphabet, in lexicographic order
/// (Duval's generation algorithm).
pub fn lyndon_words(alphabet: &[Letter], k: usize) -> Vec<Word> {
    let m = alphabet.len();
    let mut out = Vec::new();
    if m == 0 || k == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        if w.len() == k {
            out.push(Word::from_letters(
                &w.iter().map(|&i| alphabet[i]).collect::<Vec<_>>(),
            ));
        }
        let base = w.len();
        while w.len() < k {
            let c = w[w.len() - base];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last + 1 == m {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

pub fn is_lyndon(w: &[Letter]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorization `w = uv`, `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[Letter]) -> Option<(usize, &[Letter], &[Letter])> {
    (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .map(|i| (i, &w[..i], &w[i..]))
}

/// Bracket tree of a basis word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(Letter),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn to_poly(&self, n: usize) -> Poly {
        match self {
            BracketTree::Leaf(l) => Poly::letter(*l),
            BracketTree::Node(a, b) => a.to_poly(n).bracket(&b.to_poly(n), n),
        }
    }

    fn is_even(&self) -> bool {
        match self {
            BracketTree::Leaf(l) => l.degree() == 0,
            BracketTree::Node(a, b) => a.is_even() && b.is_even(),
        }
    }

    /// Textual form. For degree-0 trees a bracket `[[a,b],l]` with a single
    /// letter on the right is written as the equal `[l,[b,a]]`.
    pub fn render(&self) -> String {
        match self {
            BracketTree::Leaf(l) => l.name(),
            BracketTree::Node(a, b) => {
                if let (BracketTree::Node(p, q), BracketTree::Leaf(l)) = (a.as_ref(), b.as_ref()) {
                    if self.is_even() {
                        return format!("[{},[{},{}]]", l.name(), q.render(), p.render());
                    }
                }
                format!("[{},{}]", a.render(), b.render())
            }
        }
    }
}

/// Standard bracketing of a Lyndon word.
pub fn standard_bracketing(w: &[Letter]) -> BracketTree {
    if w.len() == 1 {
        return BracketTree::Leaf(w[0]);
    }
    let (_, u, v) = standard_factorization(w).expect("not a Lyndon word");
    BracketTree::Node(
        Box::new(standard_bracketing(u)),
        Box::new(standard_bracketing(v)),
    )
}

/// Basis words of the free Lie superalgebra: Lyndon words, plus squares `ww`
/// of odd Lyndon words (bracketed as `[w,w]`).
pub fn basis_tree(w: &[Letter]) -> Option<BracketTree> {
    if is_lyndon(w) {
        return Some(standard_bracketing(w));
    }
    let h = w.len() / 2;
    if w.len().is_multiple_of(2) && w[..h] == w[h..] && is_lyndon(&w[..h]) {
        let deg: u32 = w[..h].iter().map(|l| l.degree()).sum();
        if deg % 2 == 1 {
            let t = standard_bracketing(&w[..h]);
            return Some(BracketTree::Node(Box::new(t.clone()), Box::new(t)));
        }
    }
    None
}

/// Expands a primitive polynomial in the (super) Lyndon basis. The leading
/// word of each basis element is the word itself, so the decomposition is
/// triangular; a leftover non-basis leading word means the input is not Lie.
pub fn lie_coordinates(p: &Poly) -> Result<Vec<(BracketTree, Rational)>> {
    let mut rem = p.clone();
    let mut out = Vec::new();
    loop {
        let first = rem.iter().next().map(|(w, c)| (w.clone(), c.clone()));
        let Some((w, c)) = first else { break };
        let tree = basis_tree(&w).ok_or_else(|| Error::NotPrimitive(format!("{p:?}")))?;
        let bp = tree.to_poly(w.len());
        let lead = bp.coeff(&w);
        if lead.is_zero() {
            return Err(Error::NotPrimitive(format!("{p:?}")));
        }
        let coef = &c / &lead;
        rem.add_scaled(&bp, &-coef.clone());
        out.push((tree, coef));
    }
    Ok(out)
}

/// Standard Lyndon basis of the letter-count-`k` component of `Lie_n`.
pub fn lyndon_basis(gens: GeneratorSet, k: usize, trunc: usize) -> Result<Vec<LieSeries>> {
    if !gens.is_even() {
        return Err(Error::InvalidArgument(format!(
            "basis enumeration needs degree-0 generators, got {gens}"
        )));
    }
    if k > trunc {
        return Err(Error::InvalidArgument(format!(
            "letter count {k} exceeds truncation {trunc}"
        )));
    }
    Ok(lyndon_words(&gens.letters(), k)
        .into_iter()
        .map(|w| {
            LieSeries::from_poly_unchecked(gens, trunc, standard_bracketing(&w).to_poly(trunc))
        })
        .collect())
}

/// Basis of the letter-count-`k` component of the free Lie superalgebra on
/// `gens` (any degrees): standard bracketings of Lyndon words and `[w,w]`
/// for odd Lyndon `w`.
pub fn super_lyndon_basis(gens: GeneratorSet, k: usize, trunc: usize) -> Result<Vec<LieSeries>> {
    if k > trunc {
        return Err(Error::InvalidArgument(format!(
            "letter count {k} exceeds truncation {trunc}"
        )));
    }
    let letters = gens.letters();
    let mut words = lyndon_words(&letters, k);
    if k.is_multiple_of(2) {
        for w in lyndon_words(&letters, k / 2) {
            if w.iter().map(|l| l.degree()).sum::<u32>() % 2 == 1 {
                let mut sq = w.clone();
                sq.extend_from_slice(&w);
                words.push(sq);
            }
        }
    }
    words.sort();
    Ok(words
        .into_iter()
        .map(|w| {
            let t = basis_tree(&w).expect("basis word");
            LieSeries::from_poly_unchecked(gens, trunc, t.to_poly(trunc))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xs(n: usize) -> Vec<Letter> {
        (1..=n).map(Letter::x).collect()
    }

    #[test]
    fn small_lyndon_lists() {
        let ws = lyndon_words(&xs(2), 3);
        let names: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["x1 x1 x2", "x1 x2 x2"]);
        assert_eq!(lyndon_words(&xs(2), 1).len(), 2);
        assert_eq!(lyndon_words(&xs(1), 2).len(), 0);
    }

    #[test]
    fn all_generated_words_are_lyndon() {
        for k in 1..=6 {
            for w in lyndon_words(&xs(3), k) {
                assert!(is_lyndon(&w));
            }
        }
    }

    #[test]
    fn degree_two_basis() {
        let b = lyndon_basis(GeneratorSet::lie(2), 2, 4).unwrap();
        assert_eq!(b.len(), 1);
        let x1 = LieSeries::x(GeneratorSet::lie(2), 4, 1);
        let x2 = LieSeries::x(GeneratorSet::lie(2), 4, 2);
        assert_eq!(b[0], x1.bracket(&x2).unwrap());
    }

    #[test]
    fn graded_generators_rejected() {
        assert!(lyndon_basis(GeneratorSet::forms(2), 2, 4).is_err());
    }

    #[test]
    fn render_swaps_trailing_letter() {
        let t = standard_bracketing(&[Letter::x(1), Letter::x(2), Letter::x(2)]);
        assert_eq!(t.render(), "[x2,[x2,x1]]");
        let t = standard_bracketing(&[Letter::x(1), Letter::x(1), Letter::x(2)]);
        assert_eq!(t.render(), "[x1,[x1,x2]]");
    }

    #[test]
    fn super_basis_small_cases() {
        let g = GeneratorSet::from_letters(&[Letter::dx(1)]).unwrap();
        let dims: Vec<usize> = (1..=4)
            .map(|k| super_lyndon_basis(g, k, 4).unwrap().len())
            .collect();
        assert_eq!(dims, [1, 1, 0, 0]);
        let g = GeneratorSet::forms(1);
        for k in 1..=5 {
            for b in super_lyndon_basis(g, k, 5).unwrap() {
                assert!(!b.is_zero());
                assert!(b.poly().is_lie());
            }
        }
        assert_eq!(
            super_lyndon_basis(GeneratorSet::lie(2), 4, 4)
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn coordinates_of_odd_square() {
        let dx = Poly::letter(Letter::dx(1));
        let sq = dx.bracket(&dx, 3);
        let coords = lie_coordinates(&sq).unwrap();
        assert_eq!(coords.len(), 1);
        assert_eq!(coords[0].0.render(), "[dx1,dx1]");
        assert_eq!(coords[0].1, Rational::one());
    }
}
