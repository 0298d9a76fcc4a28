//! Noncommutative polynomials over ℚ: the free associative envelope.
//!
//! Every product takes an explicit letter-count bound and never materializes
//! words beyond it.

use std::collections::BTreeMap;
use std::fmt;

use super::alphabet::{Letter, Word};
use crate::linalg::Rational;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Word, Rational>,
}

/// Per-letter images for substitutions and derivations, indexed by letter code.
#[derive(Clone, Debug)]
pub struct LetterMap {
    images: Vec<Option<Poly>>,
}

impl Default for LetterMap {
    fn default() -> Self {
        LetterMap::new()
    }
}

impl LetterMap {
    /// `l ↦ dl` for every letter with a nonzero differential.
    pub fn de_rham() -> &'static LetterMap {
        static D: std::sync::OnceLock<LetterMap> = std::sync::OnceLock::new();
        D.get_or_init(|| {
            let mut m = LetterMap::new();
            for c in 0..64u8 {
                if let Some(dl) = Letter::from_code(c).d() {
                    m.set(Letter::from_code(c), Poly::letter(dl));
                }
            }
            m
        })
    }

    pub fn new() -> Self {
        LetterMap {
            images: vec![None; 64],
        }
    }

    pub fn set(&mut self, l: Letter, p: Poly) {
        self.images[l.code() as usize] = Some(p);
    }

    pub fn get(&self, l: Letter) -> Option<&Poly> {
        self.images[l.code() as usize].as_ref()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_some())
            .map(|(c, _)| Letter::from_code(c as u8))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(Word::empty(), Rational::one())
    }

    pub fn letter(l: Letter) -> Self {
        Poly::monomial(Word::letter(l), Rational::one())
    }

    pub fn monomial(w: Word, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in (length, lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Rational> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * s);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(other, &Rational::one());
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(other, &-Rational::one());
        p
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().next_back().map_or(0, |w| w.len())
    }

    /// Shortest word length, `usize::MAX` for zero.
    pub fn min_len(&self) -> usize {
        self.terms.keys().next().map_or(usize::MAX, |w| w.len())
    }

    pub fn truncate(&self, n: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of the given letter count.
    pub fn part(&self, len: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == len)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn filter(&self, f: impl Fn(&Word) -> bool) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| f(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Koszul degrees present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|w| w.degree()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Product truncated at `n` letters.
    pub fn mul(&self, other: &Poly, n: usize) -> Poly {
        let mut out = BTreeMap::<Word, Rational>::new();
        for (u, cu) in &self.terms {
            if u.len() + other.min_len().min(n + 1) > n {
                break;
            }
            for (v, cv) in &other.terms {
                if u.len() + v.len() > n {
                    break;
                }
                let w = u.concat(v);
                let c = cu * cv;
                accumulate(&mut out, w, c);
            }
        }
        Poly { terms: out }
    }

    /// Super commutator `[a, b] = ab - (-1)^{|a||b|} ba`, termwise in Koszul degree.
    pub fn bracket(&self, other: &Poly, n: usize) -> Poly {
        let mut out = BTreeMap::<Word, Rational>::new();
        for (u, cu) in &self.terms {
            if other.is_zero() || u.len() + other.min_len() > n {
                break;
            }
            let du = u.degree();
            for (v, cv) in &other.terms {
                if u.len() + v.len() > n {
                    break;
                }
                let c = cu * cv;
                let odd = (du * v.degree()) % 2 == 1;
                accumulate(&mut out, u.concat(v), c.clone());
                accumulate(&mut out, v.concat(u), if odd { c } else { -c });
            }
        }
        Poly { terms: out }
    }

    /// Applies the derivation with the given letter images (missing letters
    /// map to zero). `odd` derivations pick up the Koszul sign of the prefix.
    pub fn derive(&self, images: &LetterMap, odd: bool, n: usize) -> Poly {
        let mut out = BTreeMap::<Word, Rational>::new();
        for (w, c) in &self.terms {
            let mut prefix_deg = 0u32;
            for (i, &l) in w.iter().enumerate() {
                if let Some(img) = images.get(l) {
                    let s = if odd && prefix_deg % 2 == 1 {
                        -c.clone()
                    } else {
                        c.clone()
                    };
                    for (iw, ic) in img.iter() {
                        if w.len() - 1 + iw.len() > n {
                            break;
                        }
                        let mut nw = Word::from_letters(&w[..i]);
                        nw.extend_from_slice(iw);
                        nw.extend_from_slice(&w[i + 1..]);
                        accumulate(&mut out, nw, &s * ic);
                    }
                }
                prefix_deg += l.degree();
            }
        }
        Poly { terms: out }
    }

    /// The de Rham differential of the envelope.
    pub fn de_rham(&self, n: usize) -> Poly {
        self.derive(LetterMap::de_rham(), true, n)
    }

    /// Applies the algebra homomorphism sending each letter to its image
    /// (letters without an image are fixed), truncated at `n`.
    pub fn substitute(&self, images: &LetterMap, n: usize) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            let img = substitute_word(w, images, n);
            out.add_scaled(&img, c);
        }
        out
    }

    /// `exp(self)` truncated at `n`; `self` must have no constant term.
    pub fn exp(&self, n: usize) -> Poly {
        assert!(
            self.coeff(&Word::empty()).is_zero(),
            "exp of a series with constant term"
        );
        let mut out = Poly::one();
        let mut power = Poly::one();
        for k in 1..=n {
            power = power.mul(self, n);
            if power.is_zero() {
                break;
            }
            out.add_scaled(&power, &Rational::inv_factorial(k));
        }
        out
    }

    /// `log(self)` truncated at `n`; `self` must have constant term 1.
    pub fn log(&self, n: usize) -> Poly {
        assert!(
            self.coeff(&Word::empty()).is_one(),
            "log of a series without unit constant term"
        );
        let mut b = self.clone();
        b.add_term(Word::empty(), -Rational::one());
        let mut out = Poly::zero();
        let mut power = Poly::one();
        for k in 1..=n {
            power = power.mul(&b, n);
            if power.is_zero() {
                break;
            }
            let s = Rational::new(if k % 2 == 1 { 1 } else { -1 }, k as i64);
            out.add_scaled(&power, &s);
        }
        out
    }

    /// Dynkin operator: each word `l1 l2 ... lk` goes to the left-normed
    /// bracket `[..[[l1,l2],l3],..,lk]`.
    pub fn dynkin(&self, n: usize) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            if w.is_empty() {
                continue;
            }
            let mut acc = Poly::letter(w[0]);
            for &l in &w[1..] {
                acc = acc.bracket(&Poly::letter(l), n);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// Dynkin-Specht-Wever test: a polynomial without constant term is Lie
    /// iff the Dynkin operator acts as multiplication by the letter count.
    pub fn is_lie(&self) -> bool {
        if !self.coeff(&Word::empty()).is_zero() {
            return false;
        }
        let n = self.max_len();
        let theta = self.dynkin(n);
        let mut scaled = Poly::zero();
        for (w, c) in &self.terms {
            scaled.add_term(w.clone(), c * &Rational::from(w.len()));
        }
        theta == scaled
    }
}

fn accumulate(out: &mut BTreeMap<Word, Rational>, w: Word, c: Rational) {
    if c.is_zero() {
        return;
    }
    match out.get_mut(&w) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                out.remove(&w);
            }
        }
        None => {
            out.insert(w, c);
        }
    }
}

fn substitute_word(w: &Word, images: &LetterMap, n: usize) -> Poly {
    // min image lengths of the remaining suffix bound what a prefix may contribute
    let min_lens: Vec<usize> = w
        .iter()
        .map(|&l| images.get(l).map_or(1, |p| p.min_len()))
        .collect();
    if min_lens.contains(&usize::MAX) {
        return Poly::zero();
    }
    let mut suffix_min = vec![0usize; w.len() + 1];
    for i in (0..w.len()).rev() {
        suffix_min[i] = suffix_min[i + 1] + min_lens[i];
    }
    if suffix_min[0] > n {
        return Poly::zero();
    }
    let mut acc = Poly::one();
    for (i, &l) in w.iter().enumerate() {
        let budget = n - suffix_min[i + 1];
        acc = match images.get(l) {
            Some(img) => acc.mul(img, budget),
            None => {
                let mut out = BTreeMap::new();
                for (u, c) in acc.terms {
                    if u.len() < budget + 1 {
                        let mut nw = u;
                        nw.push(l);
                        out.insert(nw, c);
                    }
                }
                Poly { terms: out }
            }
        };
        if acc.is_zero() {
            break;
        }
    }
    acc
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{c}*({w})"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::letter(Letter::x(i))
    }

    #[test]
    fn bracket_even_self_vanishes() {
        assert!(x(1).bracket(&x(1), 5).is_zero());
    }

    #[test]
    fn bracket_odd_self() {
        let dx = Poly::letter(Letter::dx(1));
        let b = dx.bracket(&dx, 5);
        let w = Word::from_letters(&[Letter::dx(1), Letter::dx(1)]);
        assert_eq!(b, Poly::monomial(w, Rational::from(2)));
    }

    #[test]
    fn exp_log_inverse() {
        let a = x(1).add(&x(2).scale(&Rational::new(1, 3)));
        let e = a.exp(5);
        assert_eq!(e.log(5), a);
    }

    #[test]
    fn truncation_respected() {
        let a = x(1).add(&x(2));
        let p = a.mul(&a, 1);
        assert!(p.is_zero());
        assert_eq!(a.exp(3).max_len(), 3);
    }

    #[test]
    fn dynkin_detects_lie() {
        let b = x(1).bracket(&x(1).bracket(&x(2), 5), 5);
        assert!(b.is_lie());
        assert!(!x(1).mul(&x(2), 5).is_lie());
    }

    #[test]
    fn substitution_prunes() {
        let mut m = LetterMap::new();
        m.set(Letter::x(1), x(1).add(&x(2)));
        let w = x(1).mul(&x(1), 2);
        let s = w.substitute(&m, 2);
        // (x1+x2)^2
        assert_eq!(s, x(1).add(&x(2)).mul(&x(1).add(&x(2)), 2));
        assert!(w.substitute(&m, 1).is_zero());
    }
}
