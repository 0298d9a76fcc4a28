//! The zig-zag solver and the descent chain `ω₀ + ω₁ + ω₂ + ω₃`.

use serde::Serialize;

use super::forms::{chern_simons, pontryagin, wess_zumino};
use crate::error::{Error, Result};
use crate::forms::basis::{filtered_basis, WordIndex};
use crate::forms::{pair, CyclicForm};
use crate::freelie::{Letter, LieSeries};
use crate::linalg::{rank_kernel_image, solve_particular, Rational, SparseMatrix, SparseVector};
use crate::simplicial::cohomology::{combine, delta_columns};
use crate::simplicial::{level_gens, simplicial_delta, total_differential, MixedChain, Variant};
use crate::tangential::TangentialAutomorphism;

/// `omega[j]` is the de Rham degree `j` component, at level `3 - j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentChain {
    pub omega: [CyclicForm; 4],
    pub lambda: Rational,
    pub variant: Variant,
}

/// Residuals of the five descent equations, all zero for a valid chain.
#[derive(Clone, Debug, Serialize)]
pub struct DescentResiduals {
    /// `dω₃ - λ⟨F,F⟩`
    pub top: String,
    /// `dω₂ - Δω₃`
    pub level1: String,
    /// `dω₁ + Δω₂`
    pub level2: String,
    /// `dω₀ - Δω₁`
    pub level3: String,
    /// `Δω₀`
    pub level4: String,
    pub all_zero: bool,
}

/// The closed four-form the chain is a primitive of.
fn top_form(variant: Variant, n: usize) -> CyclicForm {
    match variant {
        Variant::NonAbelian => pontryagin(n),
        Variant::Abelian => {
            let da = LieSeries::generator(level_gens(0), n, Letter::DA).unwrap();
            pair(&da, &da).unwrap()
        }
    }
}

impl DescentChain {
    pub fn truncation(&self) -> usize {
        self.omega[0].truncation()
    }

    pub fn as_mixed(&self) -> Result<MixedChain> {
        MixedChain::from_forms(self.truncation(), &self.omega)
    }

    pub fn residuals(&self) -> Result<DescentResiduals> {
        let v = self.variant;
        let [w0, w1, w2, w3] = &self.omega;
        let n = self.truncation();
        let r = [
            &w3.de_rham() - &top_form(v, n).scale(&self.lambda),
            &w2.de_rham() - &simplicial_delta(v, w3)?,
            &w1.de_rham() + &simplicial_delta(v, w2)?,
            &w0.de_rham() - &simplicial_delta(v, w1)?,
            simplicial_delta(v, w0)?,
        ];
        let all_zero = r.iter().all(|f| f.is_zero());
        let [a, b, c, d, e] = r.map(|f| f.to_string());
        Ok(DescentResiduals {
            top: a,
            level1: b,
            level2: c,
            level3: d,
            level4: e,
            all_zero,
        })
    }

    /// `D(ω) - λ⟨F,F⟩` through the total differential.
    pub fn total_residual(&self) -> Result<MixedChain> {
        let d = total_differential(&self.as_mixed()?, self.variant)?;
        let top = MixedChain::from_forms(
            self.truncation(),
            &[top_form(self.variant, self.truncation()).scale(&self.lambda)],
        )?;
        d.sub(&top)
    }
}

/// Solves `Δ x = rhs` for `x` in `Ω^j` at `level` (letters up to `n`).
/// Non-abelian rows must have a unique solution; abelian rows carry the
/// classes of `H⟨dA, x_•⟩`, so there the pivot-rule solution is taken.
fn solve_row(
    variant: Variant,
    j: u32,
    level: usize,
    n: usize,
    rhs: &CyclicForm,
    seed: u64,
) -> Result<CyclicForm> {
    let mut basis = filtered_basis(level_gens(level), j, n);
    shuffle(&mut basis, seed);
    if basis.is_empty() {
        return if rhs.is_zero() {
            Ok(CyclicForm::zero(level_gens(level), n))
        } else {
            Err(Error::NoSolution(format!(
                "Δ on Ω^{j} at level {level} is zero but the target is {rhs}"
            )))
        };
    }
    let mut idx = WordIndex::new();
    let cols = delta_columns(variant, &basis, &mut idx)?;
    let b = idx.vector(rhs);
    let m = SparseMatrix::from_columns(idx.len(), &cols);
    let x = solve_particular(&m, &b).ok().ok_or_else(|| {
        Error::NoSolution(format!(
            "Δ x = target in Ω^{j} at level {level}, {n} letters"
        ))
    })?;
    let rki = rank_kernel_image(&m);
    if variant == Variant::NonAbelian && !rki.kernel_basis.is_empty() {
        return Err(Error::CheckFailed(format!(
            "Δ on Ω^{j} at level {level} has a {}-dimensional kernel; solution not unique",
            rki.kernel_basis.len()
        )));
    }
    Ok(combine(&basis, &x, n))
}

/// Fisher-Yates with a fixed LCG; seed 0 keeps the order.
fn shuffle<T>(v: &mut [T], seed: u64) {
    if seed == 0 {
        return;
    }
    let mut s = seed;
    for i in (1..v.len()).rev() {
        s = s
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        v.swap(i, (s >> 33) as usize % (i + 1));
    }
}

/// The zig-zag: `ω₀ = h_P(Δω₁)`, `Δω₂ = -dω₁`, `Δω₃ = dω₂`, `dω₃ = λ⟨F,F⟩`.
pub fn zigzag_solve(omega1: &CyclicForm, variant: Variant) -> Result<DescentChain> {
    zigzag_solve_permuted(omega1, variant, 0)
}

/// As [`zigzag_solve`], with the row bases permuted by `seed`.
pub fn zigzag_solve_permuted(
    omega1: &CyclicForm,
    variant: Variant,
    seed: u64,
) -> Result<DescentChain> {
    let n = omega1.truncation();
    let omega1 = omega1.with_gens(level_gens(2))?;
    let d1 = simplicial_delta(variant, &omega1)?;
    let dd1 = d1.de_rham();
    if !dd1.is_zero() {
        return Err(Error::Precondition(format!("dΔω₁ ≠ 0: {dd1}")));
    }
    let omega0 = d1.poincare_primitive()?;
    let d0 = simplicial_delta(variant, &omega0)?;
    if !d0.is_zero() {
        return Err(Error::CheckFailed(format!("Δω₀ ≠ 0: {d0}")));
    }
    let omega2 = solve_row(variant, 2, 1, n, &-&omega1.de_rham(), seed)?;
    let omega3 = solve_row(variant, 3, 0, n, &omega2.de_rham(), seed)?;
    let top = omega3.de_rham();
    let p = top_form(variant, n);
    let lambda = match p.iter().next() {
        Some((w, c)) => &top.coeff(w) / c,
        None => Rational::zero(),
    };
    if top != p.scale(&lambda) {
        return Err(Error::CheckFailed(format!(
            "dω₃ = {top} is not a multiple of {p}"
        )));
    }
    Ok(DescentChain {
        omega: [omega0, omega1, omega2, omega3],
        lambda,
        variant,
    })
}

/// `⟨A, x1⟩` at level 1.
pub fn a_x1(n: usize) -> CyclicForm {
    let g = level_gens(1);
    pair(
        &LieSeries::generator(g, n, Letter::A).unwrap(),
        &LieSeries::x(g, n, 1),
    )
    .unwrap()
}

/// Chain with `ω₁ = -C(g) - sΔ⟨A, x1⟩`, cross-checked against
/// `ω₂ = ½WZ + s d⟨A, x1⟩` and `ω₃ = ½CS`.
pub fn omega_chain(g: &TangentialAutomorphism, s: &Rational) -> Result<DescentChain> {
    let n = g.truncation();
    let c = g.cocycle().with_gens(level_gens(2))?;
    let shift = simplicial_delta(Variant::NonAbelian, &a_x1(n))?;
    let omega1 = &(-&c) - &shift.scale(s);
    let chain = zigzag_solve(&omega1, Variant::NonAbelian)?;
    let half = Rational::new(1, 2);
    let want2 = &wess_zumino(n)?.scale(&half) + &a_x1(n).de_rham().scale(s);
    if chain.omega[2] != want2 {
        return Err(Error::CheckFailed(format!(
            "ω₂ ≠ ½WZ + s d⟨A,x1⟩: difference {}",
            &chain.omega[2] - &want2
        )));
    }
    if chain.omega[3] != chern_simons(n).scale(&half) {
        return Err(Error::CheckFailed(format!("ω₃ ≠ ½CS: {}", chain.omega[3])));
    }
    Ok(chain)
}

/// `⟨x1, [x2, x3]⟩` at level 3.
pub fn phi_leading(n: usize) -> CyclicForm {
    let g = level_gens(3);
    let x = |i| LieSeries::x(g, n, i);
    pair(&x(1), &x(2).bracket(&x(3)).unwrap()).unwrap()
}

/// Δ-closed lift (modulo words beyond the truncation) of `⟨x1, [x2, x3]⟩`,
/// with correction terms of four or more letters.
pub fn phi_representative(n: usize) -> Result<CyclicForm> {
    let phi = phi_leading(n);
    let target = -&simplicial_delta(Variant::NonAbelian, &phi)?;
    if target.is_zero() {
        return Ok(phi);
    }
    let basis: Vec<CyclicForm> = filtered_basis(level_gens(3), 0, n)
        .into_iter()
        .filter(|b| b.letter_counts().iter().all(|&k| k >= 4))
        .collect();
    let mut idx = WordIndex::new();
    let cols = delta_columns(Variant::NonAbelian, &basis, &mut idx)?;
    let b = idx.vector(&target);
    let m = SparseMatrix::from_columns(idx.len(), &cols);
    let x = solve_particular(&m, &b)
        .ok()
        .ok_or_else(|| Error::NoSolution("lift of ⟨x1,[x2,x3]⟩".into()))?;
    Ok(&phi + &combine(&basis, &x, n))
}

/// Coefficient `c` with `ω₀ = c·φ + Δν`.
pub fn omega0_class(omega0: &CyclicForm) -> Result<Rational> {
    let n = omega0.truncation();
    let omega0 = omega0.with_gens(level_gens(3))?;
    if !simplicial_delta(Variant::NonAbelian, &omega0)?.is_zero() {
        return Err(Error::Precondition("ω₀ is not Δ-closed".into()));
    }
    let phi = phi_representative(n)?;
    let prev = filtered_basis(level_gens(2), 0, n);
    let mut idx = WordIndex::new();
    let mut cols: Vec<SparseVector> = vec![idx.vector(&phi)];
    cols.extend(delta_columns(Variant::NonAbelian, &prev, &mut idx)?);
    let b = idx.vector(&omega0);
    let m = SparseMatrix::from_columns(idx.len(), &cols);
    let rki = rank_kernel_image(&m);
    if rki.kernel_basis.iter().any(|v| v.contains_key(&0)) {
        return Err(Error::CheckFailed("⟨x1,[x2,x3]⟩ lift is Δ-exact".into()));
    }
    let x = solve_particular(&m, &b)
        .ok()
        .ok_or_else(|| Error::NoSolution("ω₀ is not a multiple of [φ]".into()))?;
    Ok(x.get(&0).cloned().unwrap_or_else(Rational::zero))
}

/// The abelian analog: `ω₁ = -⟨x1, dx2⟩` at level 2.
pub fn abelian_omega1(n: usize) -> CyclicForm {
    let g = level_gens(2);
    let x1 = LieSeries::x(g, n, 1);
    let dx2 = LieSeries::generator(g, n, Letter::dx(2)).unwrap();
    -&pair(&x1, &dx2).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kv::kv_solve;

    #[test]
    fn zero_input() {
        let c = zigzag_solve(&CyclicForm::zero(level_gens(2), 4), Variant::NonAbelian).unwrap();
        assert!(c.omega.iter().all(|f| f.is_zero()));
        assert!(c.lambda.is_zero());
    }

    #[test]
    fn abelian_chain() {
        let n = 4;
        let c = zigzag_solve(&abelian_omega1(n), Variant::Abelian).unwrap();
        assert_eq!(c.lambda, Rational::one());
        let g = |lv: usize, l: Letter| LieSeries::generator(level_gens(lv), n, l).unwrap();
        assert_eq!(
            c.omega[3],
            pair(&g(0, Letter::A), &g(0, Letter::DA)).unwrap()
        );
        assert_eq!(
            c.omega[2],
            pair(&g(1, Letter::A), &g(1, Letter::dx(1))).unwrap()
        );
        assert!(c.omega[0].is_zero());
        assert!(c.residuals().unwrap().all_zero);
    }

    #[test]
    fn full_chain_low_truncation() {
        let sol = kv_solve(4).unwrap();
        let c = omega_chain(&sol.g, &Rational::zero()).unwrap();
        assert_eq!(c.lambda, Rational::new(1, 2));
        assert!(c.residuals().unwrap().all_zero);
        assert!(c.total_residual().unwrap().is_zero());
        assert_eq!(omega0_class(&c.omega[0]).unwrap(), Rational::new(-1, 12));
    }
}
