//! Mixed chains in the total complex and the total differential.

use std::collections::BTreeMap;

use super::cofaces::{level_gens, level_of, simplicial_delta, Variant};
use crate::error::{Error, Result};
use crate::forms::CyclicForm;
use crate::linalg::Rational;

/// Finitely many forms indexed by simplicial level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedChain {
    trunc: usize,
    levels: BTreeMap<usize, CyclicForm>,
}

impl MixedChain {
    pub fn new(trunc: usize) -> Self {
        MixedChain {
            trunc,
            levels: BTreeMap::new(),
        }
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    /// Adds a form at the level read off its generators.
    pub fn add(&mut self, f: &CyclicForm) -> Result<()> {
        let n = level_of(f)?;
        if f.truncation() != self.trunc {
            return Err(Error::TruncationMismatch {
                left: self.trunc,
                right: f.truncation(),
            });
        }
        let entry = self
            .levels
            .entry(n)
            .or_insert_with(|| CyclicForm::zero(level_gens(n), self.trunc));
        entry.add_scaled(f, &Rational::one());
        if entry.is_zero() {
            self.levels.remove(&n);
        }
        Ok(())
    }

    pub fn from_forms(trunc: usize, forms: &[CyclicForm]) -> Result<Self> {
        let mut c = MixedChain::new(trunc);
        for f in forms {
            c.add(f)?;
        }
        Ok(c)
    }

    pub fn level(&self, n: usize) -> CyclicForm {
        self.levels
            .get(&n)
            .cloned()
            .unwrap_or_else(|| CyclicForm::zero(level_gens(n), self.trunc))
    }

    pub fn levels(&self) -> impl Iterator<Item = (usize, &CyclicForm)> {
        self.levels.iter().map(|(n, f)| (*n, f))
    }

    pub fn is_zero(&self) -> bool {
        self.levels.is_empty()
    }

    /// Components of total degree `t` (de Rham degree plus level).
    pub fn total_degree_part(&self, t: u32) -> MixedChain {
        let mut out = MixedChain::new(self.trunc);
        for (&n, f) in &self.levels {
            if t >= n as u32 {
                let p = f.degree_part(t - n as u32);
                if !p.is_zero() {
                    out.levels.insert(n, p);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &MixedChain) -> Result<MixedChain> {
        let mut out = self.clone();
        for f in other.levels.values() {
            out.add(&-f)?;
        }
        Ok(out)
    }
}

/// `(-1)^{deg}` applied per de Rham degree.
pub fn degree_sign(f: &CyclicForm) -> CyclicForm {
    let mut out = CyclicForm::zero(f.gens(), f.truncation());
    for (w, c) in f.iter() {
        let c = if w.degree() % 2 == 1 {
            -c.clone()
        } else {
            c.clone()
        };
        out.add_word(w, c);
    }
    out
}

/// `D = d + (-1)^{de Rham degree} Δ`, so that at level `n` the result is
/// `d(ω_n) + (-1)^{|ω_{n-1}|} Δ(ω_{n-1})`.
pub fn total_differential(chain: &MixedChain, variant: Variant) -> Result<MixedChain> {
    let mut out = MixedChain::new(chain.trunc);
    for (_, f) in chain.levels() {
        out.add(&f.de_rham())?;
        out.add(&simplicial_delta(variant, &degree_sign(f))?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::pair;
    use crate::freelie::{Letter, LieSeries};

    fn gen(n: usize, trunc: usize, l: Letter) -> LieSeries {
        LieSeries::generator(level_gens(n), trunc, l).unwrap()
    }

    #[test]
    fn abelian_primitive_of_dada() {
        let t = 4;
        let w0 = pair(&gen(0, t, Letter::A), &gen(0, t, Letter::DA)).unwrap();
        let w1 = pair(&gen(1, t, Letter::A), &gen(1, t, Letter::dx(1))).unwrap();
        let w2 = -pair(&gen(2, t, Letter::x(1)), &gen(2, t, Letter::dx(2))).unwrap();
        let chain = MixedChain::from_forms(t, &[w0, w1, w2]).unwrap();
        let d = total_differential(&chain, Variant::Abelian).unwrap();
        let want = pair(&gen(0, t, Letter::DA), &gen(0, t, Letter::DA)).unwrap();
        assert_eq!(d, MixedChain::from_forms(t, &[want]).unwrap());
    }

    #[test]
    fn total_differential_squares_to_zero() {
        let t = 4;
        let w0 = pair(&gen(0, t, Letter::A), &gen(0, t, Letter::DA)).unwrap();
        let w1 = pair(&gen(1, t, Letter::A), &gen(1, t, Letter::x(1))).unwrap();
        let w2 = pair(&gen(2, t, Letter::x(1)), &gen(2, t, Letter::dx(2))).unwrap();
        let chain = MixedChain::from_forms(t, &[w0, w1, w2]).unwrap();
        for v in [Variant::Abelian, Variant::NonAbelian] {
            let dd = total_differential(&total_differential(&chain, v).unwrap(), v).unwrap();
            assert!(dd.is_zero(), "{v}: {dd:?}");
        }
    }
}
