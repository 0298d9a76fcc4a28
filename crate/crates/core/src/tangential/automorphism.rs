//! Tangential automorphisms `TAut_n` in logarithmic coordinates.
//!
//! `g = exp(u)` acts by `exp(-ρ(u))`. With this direction the action is a
//! left action for the group law `log(gh) = bch_tder(log h, log g)`.

use std::fmt;

use super::derivation::{bch_tder, TangentialDerivation};
use crate::error::{Error, Result};
use crate::forms::CyclicForm;
use crate::freelie::LieSeries;
use crate::linalg::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TangentialAutomorphism {
    log: TangentialDerivation,
}

impl TangentialAutomorphism {
    pub fn identity(arity: usize, trunc: usize) -> Self {
        TangentialAutomorphism {
            log: TangentialDerivation::zero(arity, trunc),
        }
    }

    pub fn exp(log: TangentialDerivation) -> Self {
        TangentialAutomorphism { log }
    }

    pub fn log(&self) -> &TangentialDerivation {
        &self.log
    }

    pub fn arity(&self) -> usize {
        self.log.arity()
    }

    pub fn truncation(&self) -> usize {
        self.log.truncation()
    }

    pub fn is_identity(&self) -> bool {
        self.log.is_zero()
    }

    pub fn inverse(&self) -> Self {
        TangentialAutomorphism { log: -&self.log }
    }

    /// The composite `self ∘ other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        Ok(TangentialAutomorphism {
            log: bch_tder(&other.log, &self.log)?,
        })
    }

    /// Product of a sequence, left to right.
    pub fn product(factors: &[&Self]) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
        factors[1..]
            .iter()
            .try_fold((*first).clone(), |acc, g| acc.multiply(g))
    }

    /// `Σ_k (-ρ(u))^k / k!` applied to a Lie series.
    pub fn apply_series(&self, target: &LieSeries) -> LieSeries {
        exp_series(target, |t| self.log.rho_series(t), Rational::inv_factorial)
    }

    /// `Σ_k (-ρ(u))^k / k!` applied to a form.
    pub fn apply_form(&self, target: &CyclicForm) -> CyclicForm {
        exp_form(target, |t| self.log.rho_form(t), Rational::inv_factorial)
    }

    pub fn is_saut(&self) -> bool {
        let s = TangentialDerivation::sum_of_generators(self.arity(), self.truncation());
        self.apply_series(&s) == s
    }

    /// `C(e^u) = Σ_k (-ρ(u))^k / (k+1)! c(u)`.
    pub fn cocycle(&self) -> CyclicForm {
        exp_form(
            &self.log.cocycle_c(),
            |t| self.log.rho_form(t),
            |k| Rational::inv_factorial(k + 1),
        )
    }

    pub fn pushforward(&self, f: &[Option<usize>]) -> Result<Self> {
        Ok(TangentialAutomorphism {
            log: self.log.pushforward(f)?,
        })
    }
}

fn exp_series(
    target: &LieSeries,
    rho: impl Fn(&LieSeries) -> LieSeries,
    coeff: impl Fn(usize) -> Rational,
) -> LieSeries {
    let mut out = target.scale(&coeff(0));
    let mut term = target.clone();
    for k in 1..=target.truncation() {
        term = -rho(&term);
        if term.is_zero() {
            break;
        }
        out = &out + &term.scale(&coeff(k));
    }
    out
}

fn exp_form(
    target: &CyclicForm,
    rho: impl Fn(&CyclicForm) -> CyclicForm,
    coeff: impl Fn(usize) -> Rational,
) -> CyclicForm {
    let mut out = target.scale(&coeff(0));
    let mut term = target.clone();
    for k in 1..=target.truncation() {
        term = -rho(&term);
        if term.is_zero() {
            break;
        }
        out.add_scaled(&term, &coeff(k));
    }
    out
}

impl fmt::Debug for TangentialAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp{:?}", self.log)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::GeneratorSet;

    fn x(i: usize) -> LieSeries {
        LieSeries::x(GeneratorSet::lie(2), 5, i)
    }

    fn aut(a: LieSeries, b: LieSeries) -> TangentialAutomorphism {
        TangentialAutomorphism::exp(TangentialDerivation::new(vec![a, b]).unwrap())
    }

    #[test]
    fn inverse_and_identity() {
        let g = aut(x(2), x(1).bracket(&x(2)).unwrap());
        assert!(g.multiply(&g.inverse()).unwrap().is_identity());
        let id = TangentialAutomorphism::identity(2, 5);
        assert_eq!(id.apply_series(&x(1)), x(1));
        assert!(id.cocycle().is_zero());
    }

    #[test]
    fn exponential_action_example() {
        // exp(-ρ(-u)) = exp(ρ(u)) for u = (x2, 0)
        let g = aut(-&x(2), LieSeries::zero(GeneratorSet::lie(2), 5));
        let b = x(2).bracket(&x(1)).unwrap();
        let bb = x(2).bracket(&b).unwrap();
        let got = g.apply_series(&x(1)).with_truncation(3);
        let want = (&(&x(1) + &b) + &bb.scale(&Rational::new(1, 2))).with_truncation(3);
        assert_eq!(got, want);
    }

    #[test]
    fn left_action() {
        let g = aut(x(2), x(1).bracket(&x(2)).unwrap());
        let h = aut(x(1).bracket(&x(2)).unwrap(), x(1));
        let gh = g.multiply(&h).unwrap();
        let t = &x(1) + &x(2).scale(&Rational::from(3));
        assert_eq!(gh.apply_series(&t), g.apply_series(&h.apply_series(&t)));
    }

    #[test]
    fn group_cocycle() {
        let g = aut(x(2), x(1).bracket(&x(2)).unwrap());
        let f = aut(x(1).bracket(&x(2)).unwrap(), x(1));
        let lhs = g.multiply(&f).unwrap().cocycle();
        let rhs = &g.cocycle() + &g.apply_form(&f.cocycle());
        assert_eq!(lhs, rhs);
    }
}
