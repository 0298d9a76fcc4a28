//! BCH in an arbitrary Lie algebra via the Dynkin form of the series.
//!
//! The coefficients are read off `log(e^X e^Y)` in the two-letter envelope:
//! `bch(X, Y) = sum_w c_w / |w| * [..[w1, w2], .., wk]`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::alphabet::{Letter, Word};
use super::poly::Poly;
use crate::linalg::Rational;

/// `(word over {X = false, Y = true}, coefficient)` up to length `n`.
pub fn dynkin_bch_terms(n: usize) -> Vec<(Vec<bool>, Rational)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<(Vec<bool>, Rational)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let (x, y) = (Letter::x(1), Letter::x(2));
    let z = Poly::letter(x)
        .exp(n)
        .mul(&Poly::letter(y).exp(n), n)
        .log(n);
    let terms: Vec<(Vec<bool>, Rational)> = z
        .iter()
        .map(|(w, c): (&Word, &Rational)| {
            let bits = w.iter().map(|&l| l == y).collect::<Vec<_>>();
            let k = Rational::from(w.len());
            (bits, c / &k)
        })
        .collect();
    cache.lock().unwrap().insert(n, terms.clone());
    terms
}

/// Operations needed to evaluate BCH in a Lie algebra.
pub trait LieOps: Clone {
    fn bracket(&self, other: &Self) -> Self;
    fn add_scaled(&mut self, other: &Self, s: &Rational);
    fn zero_like(&self) -> Self;
}

/// `log(e^x e^y)` through letter count `n`; both arguments must have no
/// letter-count-0 part so longer words vanish.
pub fn bch_generic<T: LieOps>(x: &T, y: &T, n: usize) -> T {
    let mut out = x.zero_like();
    let mut memo: HashMap<Vec<bool>, T> = HashMap::new();
    for (w, c) in dynkin_bch_terms(n) {
        let val = left_normed(&w, x, y, &mut memo);
        out.add_scaled(&val, &c);
    }
    out
}

fn left_normed<T: LieOps>(w: &[bool], x: &T, y: &T, memo: &mut HashMap<Vec<bool>, T>) -> T {
    let pick = |b: bool| if b { y.clone() } else { x.clone() };
    if w.len() == 1 {
        return pick(w[0]);
    }
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let head = left_normed(&w[..w.len() - 1], x, y, memo);
    let v = head.bracket(&pick(w[w.len() - 1]));
    memo.insert(w.to_vec(), v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::alphabet::GeneratorSet;
    use crate::freelie::series::LieSeries;

    impl LieOps for LieSeries {
        fn bracket(&self, other: &Self) -> Self {
            LieSeries::bracket(self, other).unwrap()
        }
        fn add_scaled(&mut self, other: &Self, s: &Rational) {
            *self = &*self + &other.scale(s);
        }
        fn zero_like(&self) -> Self {
            LieSeries::zero(self.gens(), self.truncation())
        }
    }

    #[test]
    fn dynkin_form_matches_envelope() {
        let g = GeneratorSet::lie(3);
        for n in 1..=6 {
            let a = LieSeries::x(g, n, 1);
            let b = LieSeries::x(g, n, 2)
                .bracket(&LieSeries::x(g, n, 3))
                .unwrap();
            let b = &b + &LieSeries::x(g, n, 3);
            assert_eq!(bch_generic(&a, &b, n), a.bch(&b).unwrap());
        }
    }

    #[test]
    fn low_coefficients() {
        let t = dynkin_bch_terms(2);
        assert!(t.contains(&(vec![false], Rational::one())));
        assert!(t.contains(&(vec![false, true], Rational::new(1, 4))));
    }
}
