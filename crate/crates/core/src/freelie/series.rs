//! Truncated elements of the free graded Lie superalgebra.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::alphabet::{GeneratorSet, Letter, Word};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Default truncation (maximal letter count).
pub const DEFAULT_TRUNCATION: usize = 6;

/// An element of `Lie(gens)` truncated at `trunc` letters, stored through
/// its associative-envelope expansion.
///
/// Values are only produced by generators, brackets and Lie-closed series
/// operations, so the envelope polynomial is always primitive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieSeries {
    gens: GeneratorSet,
    trunc: usize,
    poly: Poly,
}

impl LieSeries {
    pub fn zero(gens: GeneratorSet, trunc: usize) -> Self {
        LieSeries {
            gens,
            trunc,
            poly: Poly::zero(),
        }
    }

    pub fn generator(gens: GeneratorSet, trunc: usize, l: Letter) -> Result<Self> {
        if !gens.contains(l) {
            return Err(Error::InvalidArgument(format!(
                "{l} is not a generator of {gens}"
            )));
        }
        let poly = if trunc >= 1 {
            Poly::letter(l)
        } else {
            Poly::zero()
        };
        Ok(LieSeries { gens, trunc, poly })
    }

    /// Convenience for `x_i` in `Lie_n`-style sets; panics if absent.
    pub fn x(gens: GeneratorSet, trunc: usize, i: usize) -> Self {
        LieSeries::generator(gens, trunc, Letter::x(i)).expect("x_i not in generator set")
    }

    /// Wraps an envelope polynomial that is known to be primitive.
    pub(crate) fn from_poly_unchecked(gens: GeneratorSet, trunc: usize, poly: Poly) -> Self {
        debug_assert!(poly.iter().all(|(w, _)| gens.contains_word(w)));
        LieSeries {
            gens,
            trunc,
            poly: poly.truncate(trunc),
        }
    }

    /// Wraps an envelope polynomial after verifying it lies in the free Lie algebra.
    pub fn from_poly(gens: GeneratorSet, trunc: usize, poly: Poly) -> Result<Self> {
        if !poly.iter().all(|(w, _)| gens.contains_word(w)) {
            return Err(Error::InvalidArgument(format!(
                "polynomial uses letters outside {gens}"
            )));
        }
        let poly = poly.truncate(trunc);
        if !poly.is_lie() {
            return Err(Error::NotPrimitive(format!("{poly:?}")));
        }
        Ok(LieSeries { gens, trunc, poly })
    }

    pub fn gens(&self) -> GeneratorSet {
        self.gens
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        LieSeries {
            gens: self.gens,
            trunc: self.trunc,
            poly: self.poly.scale(s),
        }
    }

    /// Homogeneous component of the given letter count.
    pub fn part(&self, letters: usize) -> Self {
        LieSeries {
            gens: self.gens,
            trunc: self.trunc,
            poly: self.poly.part(letters),
        }
    }

    /// Homogeneous component by (letter count, Koszul degree).
    pub fn component(&self, letters: usize, degree: u32) -> Self {
        let poly = self
            .poly
            .filter(|w| w.len() == letters && w.degree() == degree);
        LieSeries {
            gens: self.gens,
            trunc: self.trunc,
            poly,
        }
    }

    /// Lowest letter count present (`None` for zero).
    pub fn valuation(&self) -> Option<usize> {
        (!self.poly.is_zero()).then(|| self.poly.min_len())
    }

    pub fn with_truncation(&self, trunc: usize) -> Self {
        LieSeries {
            gens: self.gens,
            trunc,
            poly: self.poly.truncate(trunc),
        }
    }

    /// Re-homes the series in a larger generator set.
    pub fn embed(&self, gens: GeneratorSet) -> Result<Self> {
        if !self.gens.is_subset(&gens) {
            return Err(Error::GeneratorMismatch {
                left: self.gens.to_string(),
                right: gens.to_string(),
            });
        }
        Ok(LieSeries {
            gens,
            trunc: self.trunc,
            poly: self.poly.clone(),
        })
    }

    fn check_compatible(&self, other: &LieSeries) -> Result<()> {
        self.gens.check_same(&other.gens)?;
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch {
                left: self.trunc,
                right: other.trunc,
            });
        }
        Ok(())
    }

    /// The super bracket `[a, b] = ab - (-1)^{|a||b|} ba`.
    pub fn bracket(&self, other: &LieSeries) -> Result<LieSeries> {
        self.check_compatible(other)?;
        Ok(LieSeries {
            gens: self.gens,
            trunc: self.trunc,
            poly: self.poly.bracket(&other.poly, self.trunc),
        })
    }

    /// `ad_self^k(v)` summed against the coefficients of `f`.
    pub fn ad_series(&self, f: &PowerSeries, v: &LieSeries) -> Result<LieSeries> {
        self.check_compatible(v)?;
        let n = self.trunc;
        let mut out = Poly::zero();
        let mut term = v.poly.clone();
        for k in 0..=n {
            if term.is_zero() {
                break;
            }
            out.add_scaled(&term, &f.coeff(k));
            term = self.poly.bracket(&term, n);
        }
        Ok(LieSeries {
            gens: self.gens,
            trunc: n,
            poly: out,
        })
    }

    /// `log(exp(a) exp(b))`, computed in the truncated envelope and certified
    /// primitive.
    pub fn bch(&self, other: &LieSeries) -> Result<LieSeries> {
        self.check_compatible(other)?;
        let n = self.trunc;
        if n < 1 {
            return Err(Error::InvalidArgument(
                "BCH needs truncation at least 1".into(),
            ));
        }
        if self
            .poly
            .degrees()
            .iter()
            .chain(other.poly.degrees().iter())
            .any(|&d| d != 0)
        {
            return Err(Error::InvalidArgument(
                "BCH is defined here for Koszul degree 0 only".into(),
            ));
        }
        let z = self.poly.exp(n).mul(&other.poly.exp(n), n).log(n);
        if !z.is_lie() {
            return Err(Error::NotPrimitive(format!("{z:?}")));
        }
        Ok(LieSeries {
            gens: self.gens,
            trunc: n,
            poly: z,
        })
    }

    /// Coefficient of an envelope word.
    pub fn coeff(&self, w: &Word) -> Rational {
        self.poly.coeff(w)
    }
}

macro_rules! series_binop {
    ($tr:ident, $m:ident, $poly_op:ident) => {
        impl $tr<&LieSeries> for &LieSeries {
            type Output = LieSeries;
            /// Panics if the operands live in different generator sets or truncations.
            fn $m(self, rhs: &LieSeries) -> LieSeries {
                self.check_compatible(rhs).expect("incompatible Lie series");
                LieSeries {
                    gens: self.gens,
                    trunc: self.trunc,
                    poly: self.poly.$poly_op(&rhs.poly),
                }
            }
        }
        impl $tr<LieSeries> for LieSeries {
            type Output = LieSeries;
            fn $m(self, rhs: LieSeries) -> LieSeries {
                (&self).$m(&rhs)
            }
        }
    };
}

series_binop!(Add, add, add);
series_binop!(Sub, sub, sub);

impl Neg for &LieSeries {
    type Output = LieSeries;
    fn neg(self) -> LieSeries {
        LieSeries {
            gens: self.gens,
            trunc: self.trunc,
            poly: self.poly.neg(),
        }
    }
}

impl Neg for LieSeries {
    type Output = LieSeries;
    fn neg(self) -> LieSeries {
        -&self
    }
}

impl fmt::Debug for LieSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LieSeries({}, N={}, {:?})",
            self.gens, self.trunc, self.poly
        )
    }
}

/// A formal power series in one variable with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        PowerSeries { coeffs: vec![c] }
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `e^{-z}`
    pub fn exp_neg(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| {
                let c = Rational::inv_factorial(k);
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        PowerSeries { coeffs }
    }

    /// `(1 - e^{-z}) / z`: left-invariant Maurer-Cartan series.
    pub fn left_mc(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| {
                let c = Rational::inv_factorial(k + 1);
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        PowerSeries { coeffs }
    }

    /// `(e^z - 1) / z`: right-invariant Maurer-Cartan series.
    pub fn right_mc(order: usize) -> Self {
        PowerSeries {
            coeffs: (0..=order)
                .map(|k| Rational::inv_factorial(k + 1))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> GeneratorSet {
        GeneratorSet::gauge(3)
    }

    fn x(i: usize, n: usize) -> LieSeries {
        LieSeries::x(gens(), n, i)
    }

    fn w(ls: &[Letter]) -> Word {
        Word::from_letters(ls)
    }

    #[test]
    fn bracket_even_self_is_zero() {
        assert!(x(1, 4).bracket(&x(1, 4)).unwrap().is_zero());
    }

    #[test]
    fn bracket_nested_expansion() {
        let (a, b) = (Letter::x(1), Letter::x(2));
        let e = x(1, 4)
            .bracket(&x(1, 4).bracket(&x(2, 4)).unwrap())
            .unwrap();
        let mut expected = Poly::zero();
        expected.add_term(w(&[a, a, b]), Rational::one());
        expected.add_term(w(&[a, b, a]), Rational::from(-2));
        expected.add_term(w(&[b, a, a]), Rational::one());
        assert_eq!(e.poly(), &expected);
    }

    #[test]
    fn odd_self_bracket() {
        let dx = LieSeries::generator(gens(), 4, Letter::dx(1)).unwrap();
        let b = dx.bracket(&dx).unwrap();
        assert_eq!(
            b.coeff(&w(&[Letter::dx(1), Letter::dx(1)])),
            Rational::from(2)
        );
    }

    #[test]
    fn mismatched_sets_error() {
        let a = LieSeries::x(GeneratorSet::lie(2), 3, 1);
        let b = LieSeries::x(GeneratorSet::lie(3), 3, 1);
        assert!(matches!(
            a.bracket(&b),
            Err(Error::GeneratorMismatch { .. })
        ));
        let c = LieSeries::x(GeneratorSet::lie(2), 4, 1);
        assert!(matches!(
            a.bracket(&c),
            Err(Error::TruncationMismatch { .. })
        ));
    }

    #[test]
    fn bch_identity_and_degree_two() {
        let z = LieSeries::zero(gens(), 5);
        assert_eq!(x(1, 5).bch(&z).unwrap(), x(1, 5));
        let b = x(1, 2).bch(&x(2, 2)).unwrap();
        let expected = &(&x(1, 2) + &x(2, 2))
            + &x(1, 2)
                .bracket(&x(2, 2))
                .unwrap()
                .scale(&Rational::new(1, 2));
        assert_eq!(b, expected);
    }

    #[test]
    fn bch_rejects_odd_and_zero_truncation() {
        let a = LieSeries::generator(gens(), 3, Letter::A).unwrap();
        assert!(a.bch(&a).is_err());
        assert!(x(1, 0).bch(&x(2, 0)).is_err());
    }

    #[test]
    fn ad_series_constant_and_exp() {
        let n = 3;
        let a = LieSeries::generator(gens(), n, Letter::A).unwrap();
        let x1 = x(1, n);
        assert_eq!(
            x1.ad_series(&PowerSeries::constant(Rational::one()), &a)
                .unwrap(),
            a
        );
        let got = x1.ad_series(&PowerSeries::exp_neg(n), &a).unwrap();
        let c1 = x1.bracket(&a).unwrap();
        let c2 = x1.bracket(&c1).unwrap();
        let expected = &(&a - &c1) + &c2.scale(&Rational::new(1, 2));
        assert_eq!(got, expected);
    }

    #[test]
    fn left_mc_leading_terms() {
        let n = 2;
        let dx1 = LieSeries::generator(gens(), n, Letter::dx(1)).unwrap();
        let got = x(1, n).ad_series(&PowerSeries::left_mc(n), &dx1).unwrap();
        let expected = &dx1 - &x(1, n).bracket(&dx1).unwrap().scale(&Rational::new(1, 2));
        assert_eq!(got, expected);
    }

    #[test]
    fn from_poly_checks_primitivity() {
        let p = Poly::letter(Letter::x(1)).mul(&Poly::letter(Letter::x(2)), 3);
        assert!(matches!(
            LieSeries::from_poly(GeneratorSet::lie(2), 3, p),
            Err(Error::NotPrimitive(_))
        ));
    }
}
