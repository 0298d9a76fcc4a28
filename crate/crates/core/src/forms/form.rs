//! Universal forms `Ω⟨gens⟩` as rational combinations of cyclic words.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use rayon::prelude::*;

use super::cyclic::canonicalize;
use crate::error::{Error, Result};
use crate::freelie::{GeneratorSet, LetterMap, LieSeries, Poly, Word};
use crate::linalg::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicForm {
    gens: GeneratorSet,
    trunc: usize,
    terms: BTreeMap<Word, Rational>,
}

fn accumulate(terms: &mut BTreeMap<Word, Rational>, w: Word, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&w) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                terms.remove(&w);
            }
        }
        None => {
            terms.insert(w, c);
        }
    }
}

/// Above this many words the per-word work is spread over threads.
const PAR_THRESHOLD: usize = 256;

impl CyclicForm {
    pub fn zero(gens: GeneratorSet, trunc: usize) -> Self {
        CyclicForm {
            gens,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    /// The cyclic image of an envelope polynomial.
    pub fn from_poly(gens: GeneratorSet, trunc: usize, p: &Poly) -> Self {
        let mut f = CyclicForm::zero(gens, trunc);
        for (w, c) in p.iter() {
            f.add_word(w, c.clone());
        }
        f
    }

    /// The cyclic class of a single word.
    pub fn word(gens: GeneratorSet, trunc: usize, w: &Word) -> Self {
        let mut f = CyclicForm::zero(gens, trunc);
        f.add_word(w, Rational::one());
        f
    }

    /// Adds `c` times the cyclic class of `w` (dropped beyond truncation).
    pub fn add_word(&mut self, w: &[crate::freelie::Letter], c: Rational) {
        if w.len() > self.trunc || c.is_zero() {
            return;
        }
        debug_assert!(
            self.gens.contains_word(w),
            "word {w:?} outside {}",
            self.gens
        );
        if let Some((cw, neg)) = canonicalize(w) {
            accumulate(&mut self.terms, cw, if neg { -c } else { c });
        }
    }

    pub fn gens(&self) -> GeneratorSet {
        self.gens
    }

    pub fn truncation(&self) -> usize {
        self.trunc
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

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    /// Coefficient of the class of `w`, with the rotation sign applied.
    pub fn coeff(&self, w: &Word) -> Rational {
        match canonicalize(w) {
            Some((cw, neg)) => {
                let c = self.terms.get(&cw).cloned().unwrap_or_else(Rational::zero);
                if neg {
                    -c
                } else {
                    c
                }
            }
            None => Rational::zero(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return CyclicForm::zero(self.gens, self.trunc);
        }
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect();
        CyclicForm {
            gens: self.gens,
            trunc: self.trunc,
            terms,
        }
    }

    pub fn add_scaled(&mut self, other: &CyclicForm, s: &Rational) {
        for (w, c) in &other.terms {
            if w.len() <= self.trunc {
                accumulate(&mut self.terms, w.clone(), c * s);
            }
        }
    }

    pub fn filter(&self, f: impl Fn(&Word) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| f(w))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        CyclicForm {
            gens: self.gens,
            trunc: self.trunc,
            terms,
        }
    }

    /// Letter-count-homogeneous piece.
    pub fn part(&self, letters: usize) -> Self {
        self.filter(|w| w.len() == letters)
    }

    /// De Rham (Koszul) degree homogeneous piece.
    pub fn degree_part(&self, degree: u32) -> Self {
        self.filter(|w| w.degree() == degree)
    }

    pub fn truncate(&self, n: usize) -> Self {
        let mut f = self.filter(|w| w.len() <= n);
        f.trunc = n.min(self.trunc);
        f
    }

    pub fn with_truncation(&self, n: usize) -> Self {
        let mut f = self.filter(|w| w.len() <= n);
        f.trunc = n;
        f
    }

    /// Re-homes the form in another generator set containing its letters.
    pub fn with_gens(&self, gens: GeneratorSet) -> Result<Self> {
        if !self.terms.keys().all(|w| gens.contains_word(w)) {
            return Err(Error::GeneratorMismatch {
                left: self.gens.to_string(),
                right: gens.to_string(),
            });
        }
        Ok(CyclicForm {
            gens,
            trunc: self.trunc,
            terms: self.terms.clone(),
        })
    }

    /// Distinct de Rham degrees present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|w| w.degree()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn letter_counts(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self.terms.keys().map(|w| w.len()).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    fn map_words<F>(&self, gens: GeneratorSet, trunc: usize, f: F) -> CyclicForm
    where
        F: Fn(&Word, &Rational, &mut CyclicForm) + Sync,
    {
        let empty = CyclicForm::zero(gens, trunc);
        if self.terms.len() < PAR_THRESHOLD {
            let mut out = empty;
            for (w, c) in &self.terms {
                f(w, c, &mut out);
            }
            return out;
        }
        let words: Vec<(&Word, &Rational)> = self.terms.iter().collect();
        let parts: Vec<CyclicForm> = words
            .par_chunks(64)
            .map(|chunk| {
                let mut out = empty.clone();
                for (w, c) in chunk {
                    f(w, c, &mut out);
                }
                out
            })
            .collect();
        let mut out = empty;
        for p in parts {
            out.add_scaled(&p, &Rational::one());
        }
        out
    }

    /// Applies a derivation given on letters. Odd derivations carry the
    /// Koszul sign of the prefix they pass.
    pub fn derive(&self, images: &LetterMap, odd: bool) -> CyclicForm {
        let n = self.trunc;
        self.map_words(self.gens, n, |w, c, out| {
            let mut prefix = 0u32;
            for (i, &l) in w.iter().enumerate() {
                if let Some(img) = images.get(l) {
                    let s = if odd && prefix % 2 == 1 {
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
                        out.add_word(&nw, &s * ic);
                    }
                }
                prefix += l.degree();
            }
        })
    }

    /// Applies the algebra homomorphism given on letters (unlisted letters
    /// are fixed), landing in `target` generators.
    pub fn substitute(&self, images: &LetterMap, target: GeneratorSet) -> CyclicForm {
        let n = self.trunc;
        self.map_words(target, n, |w, c, out| {
            let p = Poly::monomial(w.clone(), c.clone()).substitute(images, n);
            for (pw, pc) in p.iter() {
                out.add_word(pw, pc.clone());
            }
        })
    }

    /// The de Rham differential.
    pub fn de_rham(&self) -> CyclicForm {
        let mut images = LetterMap::new();
        for l in self.gens.letters() {
            if let Some(dl) = l.d() {
                images.set(l, Poly::letter(dl));
            }
        }
        self.derive(&images, true)
    }

    /// The contraction `e`: `dx ↦ x`, `dA ↦ A`.
    pub fn contraction_e(&self) -> CyclicForm {
        let mut images = LetterMap::new();
        for l in self.gens.letters() {
            if let Some(el) = l.e() {
                images.set(l, Poly::letter(el));
            }
        }
        self.derive(&images, true)
    }

    /// The Euler operator: multiplies each word by its letter count.
    pub fn euler(&self) -> CyclicForm {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c * &Rational::from(w.len())))
            .collect();
        CyclicForm {
            gens: self.gens,
            trunc: self.trunc,
            terms,
        }
    }

    /// `Σ_k e(ω_k)/k`, a primitive of a closed form.
    pub fn poincare_primitive(&self) -> Result<CyclicForm> {
        let dw = self.de_rham();
        if !dw.is_zero() {
            return Err(Error::NotClosed {
                residual: dw.to_string(),
            });
        }
        let e = self.contraction_e();
        let terms = e.terms.into_iter().map(|(w, c)| {
            let k = Rational::from(w.len());
            (w, &c / &k)
        });
        Ok(CyclicForm {
            gens: self.gens,
            trunc: self.trunc,
            terms: terms.collect(),
        })
    }

    fn check_compatible(&self, other: &CyclicForm) {
        assert_eq!(self.gens, other.gens, "generator sets differ");
        assert_eq!(self.trunc, other.trunc, "truncations differ");
    }
}

/// The pairing `⟨a, b⟩`.
pub fn pair(a: &LieSeries, b: &LieSeries) -> Result<CyclicForm> {
    a.gens().check_same(&b.gens())?;
    if a.truncation() != b.truncation() {
        return Err(Error::TruncationMismatch {
            left: a.truncation(),
            right: b.truncation(),
        });
    }
    let n = a.truncation();
    Ok(CyclicForm::from_poly(
        a.gens(),
        n,
        &a.poly().mul(b.poly(), n),
    ))
}

impl Add<&CyclicForm> for &CyclicForm {
    type Output = CyclicForm;
    fn add(self, rhs: &CyclicForm) -> CyclicForm {
        self.check_compatible(rhs);
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub<&CyclicForm> for &CyclicForm {
    type Output = CyclicForm;
    fn sub(self, rhs: &CyclicForm) -> CyclicForm {
        self.check_compatible(rhs);
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Add for CyclicForm {
    type Output = CyclicForm;
    fn add(self, rhs: CyclicForm) -> CyclicForm {
        &self + &rhs
    }
}

impl Sub for CyclicForm {
    type Output = CyclicForm;
    fn sub(self, rhs: CyclicForm) -> CyclicForm {
        &self - &rhs
    }
}

impl Neg for &CyclicForm {
    type Output = CyclicForm;
    fn neg(self) -> CyclicForm {
        self.scale(&-Rational::one())
    }
}

impl Neg for CyclicForm {
    type Output = CyclicForm;
    fn neg(self) -> CyclicForm {
        -&self
    }
}

impl fmt::Display for CyclicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "({w})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicForm[{}; N={}] {}", self.gens, self.trunc, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::Letter;

    fn gen(g: GeneratorSet, n: usize, l: Letter) -> LieSeries {
        LieSeries::generator(g, n, l).unwrap()
    }

    #[test]
    fn pairing_relations() {
        let g = GeneratorSet::lie(3);
        let x = |i| LieSeries::x(g, 4, i);
        let lhs = &pair(&x(1), &x(2)).unwrap() - &pair(&x(2), &x(1)).unwrap();
        assert!(lhs.is_zero());
        let a = pair(&x(1), &x(2).bracket(&x(3)).unwrap()).unwrap();
        let b = pair(&x(1).bracket(&x(2)).unwrap(), &x(3)).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_zero());
    }

    #[test]
    fn odd_self_pairing_vanishes() {
        let g = GeneratorSet::gauge(0);
        let a = gen(g, 4, Letter::A);
        assert!(pair(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn d_and_e_on_small_forms() {
        let g = GeneratorSet::gauge(0);
        let a = gen(g, 4, Letter::A);
        let da = gen(g, 4, Letter::DA);
        let ada = pair(&a, &da).unwrap();
        let dada = pair(&da, &da).unwrap();
        assert_eq!(ada.de_rham(), dada);
        assert_eq!(dada.contraction_e(), ada.scale(&Rational::from(2)));
        assert_eq!(dada.poincare_primitive().unwrap(), ada);
        assert!(ada.poincare_primitive().is_err());
    }

    #[test]
    fn e_kills_functions() {
        let g = GeneratorSet::forms(2);
        let f = pair(&LieSeries::x(g, 4, 1), &LieSeries::x(g, 4, 2)).unwrap();
        assert!(f.contraction_e().is_zero());
    }

    #[test]
    fn chern_simons_identity() {
        let g = GeneratorSet::gauge(0);
        let n = 6;
        let a = gen(g, n, Letter::A);
        let da = gen(g, n, Letter::DA);
        let aa = a.bracket(&a).unwrap();
        let cs = &pair(&a, &da).unwrap() + &pair(&a, &aa).unwrap().scale(&Rational::new(1, 3));
        let f = &da + &aa.scale(&Rational::new(1, 2));
        let ff = pair(&f, &f).unwrap();
        assert_eq!(cs.de_rham(), ff);
        assert_eq!(ff.poincare_primitive().unwrap(), cs);
    }
}
