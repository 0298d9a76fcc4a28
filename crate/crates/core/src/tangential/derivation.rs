//! Tangential derivations `tder_n` and their action.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::forms::{pair, CyclicForm};
use crate::freelie::{bch_generic, GeneratorSet, Letter, LetterMap, LieOps, LieSeries, Poly};
use crate::linalg::Rational;

/// `(u_1, ..., u_n)` with `u_i ∈ Lie_n` truncated at `N` letters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TangentialDerivation {
    trunc: usize,
    comps: Vec<LieSeries>,
}

impl TangentialDerivation {
    pub fn zero(arity: usize, trunc: usize) -> Self {
        TangentialDerivation {
            trunc,
            comps: vec![LieSeries::zero(GeneratorSet::lie(arity), trunc); arity],
        }
    }

    pub fn new(comps: Vec<LieSeries>) -> Result<Self> {
        let n = comps.len();
        let trunc = comps.first().map_or(0, |c| c.truncation());
        for c in &comps {
            c.gens().check_same(&GeneratorSet::lie(n))?;
            if c.truncation() != trunc {
                return Err(Error::TruncationMismatch {
                    left: trunc,
                    right: c.truncation(),
                });
            }
        }
        Ok(TangentialDerivation { trunc, comps })
    }

    pub fn arity(&self) -> usize {
        self.comps.len()
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn components(&self) -> &[LieSeries] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &LieSeries {
        &self.comps[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        TangentialDerivation {
            trunc: self.trunc,
            comps: self.comps.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Letter-count-homogeneous part.
    pub fn part(&self, letters: usize) -> Self {
        TangentialDerivation {
            trunc: self.trunc,
            comps: self.comps.iter().map(|c| c.part(letters)).collect(),
        }
    }

    pub fn with_truncation(&self, n: usize) -> Self {
        TangentialDerivation {
            trunc: n,
            comps: self.comps.iter().map(|c| c.with_truncation(n)).collect(),
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::InvalidArgument(format!(
                "arity {} vs {}",
                self.arity(),
                other.arity()
            )));
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch {
                left: self.trunc,
                right: other.trunc,
            });
        }
        Ok(())
    }

    /// Letter images of `ρ(u)`: `x_i ↦ [u_i, x_i]`, `dx_i ↦ d[u_i, x_i]`.
    pub fn rho_images(&self) -> LetterMap {
        let n = self.trunc;
        let mut m = LetterMap::new();
        for (i, u) in self.comps.iter().enumerate() {
            let img = u.poly().bracket(&Poly::letter(Letter::x(i + 1)), n);
            if img.is_zero() {
                continue;
            }
            m.set(Letter::dx(i + 1), img.de_rham(n));
            m.set(Letter::x(i + 1), img);
        }
        m
    }

    /// `ρ(u)` on a Lie series over generators containing `x_1..x_n`.
    pub fn rho_series(&self, target: &LieSeries) -> LieSeries {
        let n = target.truncation();
        let p = target.poly().derive(&self.rho_images(), false, n);
        LieSeries::from_poly_unchecked(target.gens(), n, p)
    }

    /// `ρ(u)` on a form; `A` and `dA` are annihilated.
    pub fn rho_form(&self, target: &CyclicForm) -> CyclicForm {
        target.derive(&self.rho_images(), false)
    }

    /// `[u, v]_i = ρ(u)v_i - ρ(v)u_i - [u_i, v_i]`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let (ru, rv) = (self.rho_images(), other.rho_images());
        let n = self.trunc;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(u, v)| {
                let p = v
                    .poly()
                    .derive(&ru, false, n)
                    .sub(&u.poly().derive(&rv, false, n))
                    .sub(&u.poly().bracket(v.poly(), n));
                LieSeries::from_poly_unchecked(u.gens(), n, p)
            })
            .collect();
        Ok(TangentialDerivation { trunc: n, comps })
    }

    /// `x_1 + ... + x_n` in `Lie_n`.
    pub fn sum_of_generators(arity: usize, trunc: usize) -> LieSeries {
        let g = GeneratorSet::lie(arity);
        (1..=arity).fold(LieSeries::zero(g, trunc), |acc, i| {
            &acc + &LieSeries::x(g, trunc, i)
        })
    }

    pub fn is_sder(&self) -> bool {
        self.rho_series(&Self::sum_of_generators(self.arity(), self.trunc))
            .is_zero()
    }

    /// `γ(u) = Σ ⟨u_i, dx_i⟩` in `Ω¹⟨x_1..x_n⟩`.
    pub fn gamma(&self) -> CyclicForm {
        let g = GeneratorSet::forms(self.arity());
        let mut out = CyclicForm::zero(g, self.trunc);
        for (i, u) in self.comps.iter().enumerate() {
            let dx = LieSeries::generator(g, self.trunc, Letter::dx(i + 1)).unwrap();
            out.add_scaled(&pair(&u.embed(g).unwrap(), &dx).unwrap(), &Rational::one());
        }
        out
    }

    /// Inverse of `γ` on one-forms without `A`, `dA`: rotate every word so
    /// its differential comes last.
    pub fn gamma_inverse(arity: usize, omega: &CyclicForm) -> Result<Self> {
        let n = omega.truncation();
        let mut polys = vec![Poly::zero(); arity];
        for (w, c) in omega.iter() {
            let diffs: Vec<usize> = (0..w.len()).filter(|&i| w[i].is_differential()).collect();
            if w.iter().any(|l| l.is_gauge()) || diffs.len() != 1 {
                return Err(Error::InvalidArgument(format!(
                    "({w}) is not a one-form in dx_1..dx_{arity}"
                )));
            }
            let p = diffs[0];
            let i = w[p].index().unwrap();
            if i > arity {
                return Err(Error::InvalidArgument(format!(
                    "({w}) uses dx{i} beyond arity {arity}"
                )));
            }
            let mut rest = crate::freelie::Word::from_letters(&w[p + 1..]);
            rest.extend_from_slice(&w[..p]);
            polys[i - 1].add_term(rest, c.clone());
        }
        let g = GeneratorSet::lie(arity);
        let comps = polys
            .into_iter()
            .map(|p| LieSeries::from_poly(g, n, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(TangentialDerivation { trunc: n, comps })
    }

    /// The cocycle `c(u) = Σ ⟨x_i, du_i⟩` in `Ω¹⟨x_1..x_n⟩`.
    pub fn cocycle_c(&self) -> CyclicForm {
        let g = GeneratorSet::forms(self.arity());
        let n = self.trunc;
        let mut out = CyclicForm::zero(g, n);
        for (i, u) in self.comps.iter().enumerate() {
            let x = Poly::letter(Letter::x(i + 1));
            out.add_scaled(
                &CyclicForm::from_poly(g, n, &x.mul(&u.poly().de_rham(n), n)),
                &Rational::one(),
            );
        }
        out
    }

    /// Pushforward along a partial map `f: {1..k} → {1..n}` (`f[k-1]` is the
    /// image of `k`, `None` where undefined): the `k`-th component is
    /// `u_{f(k)}` with `x_i ↦ Σ_{f(l)=i} x_l`, or zero if `f(k)` is undefined.
    pub fn pushforward(&self, f: &[Option<usize>]) -> Result<Self> {
        let images = pushforward_images(f, self.arity())?;
        let k = f.len();
        let g = GeneratorSet::lie(k);
        let n = self.trunc;
        let comps = f
            .iter()
            .map(|fk| match fk {
                Some(i) => LieSeries::from_poly_unchecked(
                    g,
                    n,
                    self.comps[i - 1].poly().substitute(&images, n),
                ),
                None => LieSeries::zero(g, n),
            })
            .collect();
        Ok(TangentialDerivation { trunc: n, comps })
    }
}

/// Letter images `x_i ↦ Σ_{f(l)=i} x_l` (and on `dx_i`) for a partial map
/// into `{1..n}`.
pub fn pushforward_images(f: &[Option<usize>], n: usize) -> Result<LetterMap> {
    if let Some(bad) = f.iter().flatten().find(|&&i| i == 0 || i > n) {
        return Err(Error::InvalidArgument(format!(
            "map value {bad} outside 1..={n}"
        )));
    }
    let mut m = LetterMap::new();
    for i in 1..=n {
        let mut x = Poly::zero();
        let mut dx = Poly::zero();
        for (l, fl) in f.iter().enumerate() {
            if *fl == Some(i) {
                x.add_term(
                    crate::freelie::Word::letter(Letter::x(l + 1)),
                    Rational::one(),
                );
                dx.add_term(
                    crate::freelie::Word::letter(Letter::dx(l + 1)),
                    Rational::one(),
                );
            }
        }
        m.set(Letter::x(i), x);
        m.set(Letter::dx(i), dx);
    }
    Ok(m)
}

/// Pushforward of a form in `Ω⟨x_1..x_n⟩` (or with `A`) to `k = f.len()` variables.
pub fn pushforward_form(f: &[Option<usize>], omega: &CyclicForm) -> Result<CyclicForm> {
    let n = omega.gens().max_index();
    let images = pushforward_images(f, n)?;
    let target = if omega.gens().contains(Letter::A) {
        GeneratorSet::gauge(f.len())
    } else {
        GeneratorSet::forms(f.len())
    };
    Ok(omega.substitute(&images, target))
}

/// Parses block notation such as `"12,3"` into the partial map of the
/// corresponding pushforward into arity `k`: the `j`-th block lists the
/// indices sent to `j`.
pub fn block_map(pattern: &str, k: usize) -> Result<Vec<Option<usize>>> {
    let mut f = vec![None; k];
    for (j, block) in pattern.split(',').enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "empty block in {pattern:?}"
            )));
        }
        for ch in block.chars() {
            let l = ch
                .to_digit(10)
                .map(|d| d as usize)
                .filter(|&d| (1..=k).contains(&d));
            let l = l.ok_or_else(|| {
                Error::InvalidArgument(format!("bad index {ch:?} in {pattern:?}"))
            })?;
            if f[l - 1].is_some() {
                return Err(Error::InvalidArgument(format!(
                    "index {l} repeated in {pattern:?}"
                )));
            }
            f[l - 1] = Some(j + 1);
        }
    }
    Ok(f)
}

impl LieOps for TangentialDerivation {
    fn bracket(&self, other: &Self) -> Self {
        TangentialDerivation::bracket(self, other).expect("arity mismatch")
    }

    fn add_scaled(&mut self, other: &Self, s: &Rational) {
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            *a = &*a + &b.scale(s);
        }
    }

    fn zero_like(&self) -> Self {
        TangentialDerivation::zero(self.arity(), self.trunc)
    }
}

/// BCH in `tder_n` for its own bracket.
pub fn bch_tder(
    u: &TangentialDerivation,
    v: &TangentialDerivation,
) -> Result<TangentialDerivation> {
    u.check_arity(v)?;
    Ok(bch_generic(u, v, u.trunc))
}

impl Add<&TangentialDerivation> for &TangentialDerivation {
    type Output = TangentialDerivation;
    fn add(self, rhs: &TangentialDerivation) -> TangentialDerivation {
        self.check_arity(rhs)
            .expect("incompatible tangential derivations");
        let comps = self
            .comps
            .iter()
            .zip(&rhs.comps)
            .map(|(a, b)| a + b)
            .collect();
        TangentialDerivation {
            trunc: self.trunc,
            comps,
        }
    }
}

impl Sub<&TangentialDerivation> for &TangentialDerivation {
    type Output = TangentialDerivation;
    fn sub(self, rhs: &TangentialDerivation) -> TangentialDerivation {
        self + &(-rhs)
    }
}

impl Neg for &TangentialDerivation {
    type Output = TangentialDerivation;
    fn neg(self) -> TangentialDerivation {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for TangentialDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.comps.iter()).finish()
    }
}
