//! Coface substitutions on `Ω⟨A, x1..xn⟩`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::CyclicForm;
use crate::freelie::{GeneratorSet, Letter, LetterMap, LieSeries, Poly, PowerSeries};
use crate::linalg::Rational;

/// Abelian (`δ`) or non-abelian (`Δ`) gauge transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Abelian,
    NonAbelian,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Abelian => "abelian",
            Variant::NonAbelian => "nonabelian",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abelian" => Ok(Variant::Abelian),
            "nonabelian" | "non-abelian" => Ok(Variant::NonAbelian),
            _ => Err(Error::InvalidArgument(format!("unknown variant {s:?}"))),
        }
    }
}

/// Generators at simplicial level `n`.
pub fn level_gens(n: usize) -> GeneratorSet {
    GeneratorSet::gauge(n)
}

/// Simplicial level of a form, read off its generator set.
pub fn level_of(f: &CyclicForm) -> Result<usize> {
    let g = f.gens();
    let n = g.max_index();
    if g != level_gens(n) {
        return Err(Error::InvalidArgument(format!(
            "{g} is not a simplicial level generator set"
        )));
    }
    Ok(n)
}

type Key = (Variant, usize, usize, usize);

fn cache() -> &'static Mutex<HashMap<Key, Arc<LetterMap>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<LetterMap>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Images of the level-`n` letters under the `i`-th coface, in the envelope
/// of level `n + 1`, truncated at `trunc` letters. The images of `dA` and
/// `dx_j` are the differentials of the images of `A` and `x_j`.
pub fn coface_images(variant: Variant, i: usize, n: usize, trunc: usize) -> Result<Arc<LetterMap>> {
    if i > n + 1 {
        return Err(Error::InvalidArgument(format!(
            "coface index {i} out of range 0..={}",
            n + 1
        )));
    }
    let key = (variant, i, n, trunc);
    if let Some(m) = cache().lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let m = Arc::new(build_images(variant, i, n, trunc));
    cache().lock().unwrap().insert(key, m.clone());
    Ok(m)
}

fn build_images(variant: Variant, i: usize, n: usize, trunc: usize) -> LetterMap {
    let target = level_gens(n + 1);
    let lie = GeneratorSet::lie(n + 1);
    let mut base: Vec<(Letter, Poly)> = Vec::new();
    if i == 0 {
        let a_img = match variant {
            Variant::Abelian => Poly::letter(Letter::A).add(&Poly::letter(Letter::dx(1))),
            Variant::NonAbelian => {
                let x1 = LieSeries::x(target, trunc, 1);
                let a = LieSeries::generator(target, trunc, Letter::A).unwrap();
                let dx1 = LieSeries::generator(target, trunc, Letter::dx(1)).unwrap();
                let conj = x1.ad_series(&PowerSeries::exp_neg(trunc), &a).unwrap();
                let mc = x1.ad_series(&PowerSeries::left_mc(trunc), &dx1).unwrap();
                conj.poly().add(mc.poly())
            }
        };
        base.push((Letter::A, a_img));
        for j in 1..=n {
            base.push((Letter::x(j), Poly::letter(Letter::x(j + 1))));
        }
    } else if i <= n {
        for j in 1..=n {
            let img = if j < i {
                Poly::letter(Letter::x(j))
            } else if j > i {
                Poly::letter(Letter::x(j + 1))
            } else {
                match variant {
                    Variant::Abelian => {
                        Poly::letter(Letter::x(i)).add(&Poly::letter(Letter::x(i + 1)))
                    }
                    Variant::NonAbelian => {
                        let a = LieSeries::x(lie, trunc, i);
                        let b = LieSeries::x(lie, trunc, i + 1);
                        a.bch(&b).unwrap().into_poly()
                    }
                }
            };
            base.push((Letter::x(j), img));
        }
    }
    let mut m = LetterMap::new();
    for (l, img) in base {
        let dimg = img.de_rham(trunc);
        let dl = l.d().unwrap();
        if !(img == Poly::letter(l)) {
            m.set(l, img);
        }
        if !(dimg == Poly::letter(dl)) {
            m.set(dl, dimg);
        }
    }
    m
}

/// The `i`-th coface applied to a form at level `n`.
pub fn coface(variant: Variant, i: usize, omega: &CyclicForm) -> Result<CyclicForm> {
    let n = level_of(omega)?;
    let images = coface_images(variant, i, n, omega.truncation())?;
    Ok(omega.substitute(&images, level_gens(n + 1)))
}

/// `Σ (-1)^i` of the cofaces.
pub fn simplicial_delta(variant: Variant, omega: &CyclicForm) -> Result<CyclicForm> {
    let n = level_of(omega)?;
    let mut out = CyclicForm::zero(level_gens(n + 1), omega.truncation());
    for i in 0..=n + 1 {
        let s = if i % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        out.add_scaled(&coface(variant, i, omega)?, &s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::pair;

    fn gen(n: usize, trunc: usize, l: Letter) -> LieSeries {
        LieSeries::generator(level_gens(n), trunc, l).unwrap()
    }

    #[test]
    fn abelian_zeroth_face() {
        let w = pair(&gen(0, 4, Letter::A), &gen(0, 4, Letter::DA)).unwrap();
        let got = coface(Variant::Abelian, 0, &w).unwrap();
        let a = &gen(1, 4, Letter::A) + &gen(1, 4, Letter::dx(1));
        assert_eq!(got, pair(&a, &gen(1, 4, Letter::DA)).unwrap());
    }

    #[test]
    fn last_face_is_inclusion() {
        let w = pair(&gen(1, 4, Letter::A), &gen(1, 4, Letter::x(1))).unwrap();
        let got = coface(Variant::NonAbelian, 2, &w).unwrap();
        assert_eq!(got, w.with_gens(level_gens(2)).unwrap());
    }

    #[test]
    fn delta_of_f_pair_leading_term() {
        let n = 3;
        let a = gen(1, n, Letter::A);
        let f = &gen(1, n, Letter::DA) + &a.bracket(&a).unwrap().scale(&Rational::new(1, 2));
        let w = pair(&f, &gen(1, n, Letter::x(1))).unwrap();
        let got = simplicial_delta(Variant::NonAbelian, &w).unwrap();
        let x12 = gen(2, n, Letter::x(1))
            .bracket(&gen(2, n, Letter::x(2)))
            .unwrap();
        let want = pair(&gen(2, n, Letter::DA), &x12)
            .unwrap()
            .scale(&Rational::new(1, 2));
        assert_eq!(got, want);
    }

    #[test]
    fn delta_squared_vanishes() {
        for variant in [Variant::Abelian, Variant::NonAbelian] {
            let n = 5;
            let a = gen(0, n, Letter::A);
            let da = gen(0, n, Letter::DA);
            let cs = &pair(&a, &da).unwrap() + &pair(&a, &a.bracket(&a).unwrap()).unwrap();
            let d1 = simplicial_delta(variant, &cs).unwrap();
            let d2 = simplicial_delta(variant, &d1).unwrap();
            assert!(d2.is_zero(), "{variant}: {d2}");
        }
    }
}
