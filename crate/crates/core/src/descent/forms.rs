//! Chern-Simons and Wess-Zumino forms.

use crate::error::Result;
use crate::forms::{pair, CyclicForm};
use crate::freelie::{Letter, LieSeries, PowerSeries};
use crate::linalg::Rational;
use crate::simplicial::{level_gens, simplicial_delta, Variant};

fn gen(level: usize, n: usize, l: Letter) -> LieSeries {
    LieSeries::generator(level_gens(level), n, l).expect("letter at level")
}

/// Curvature `F = dA + ½[A, A]` at the given level.
pub fn curvature(level: usize, n: usize) -> LieSeries {
    let a = gen(level, n, Letter::A);
    &gen(level, n, Letter::DA) + &a.bracket(&a).unwrap().scale(&Rational::new(1, 2))
}

/// `⟨F, F⟩` at level 0.
pub fn pontryagin(n: usize) -> CyclicForm {
    let f = curvature(0, n);
    pair(&f, &f).unwrap()
}

/// `CS = ⟨A, dA⟩ + ⅓⟨A, [A, A]⟩`.
pub fn chern_simons(n: usize) -> CyclicForm {
    let a = gen(0, n, Letter::A);
    let da = gen(0, n, Letter::DA);
    &pair(&a, &da).unwrap()
        + &pair(&a, &a.bracket(&a).unwrap())
            .unwrap()
            .scale(&Rational::new(1, 3))
}

/// `g^{-1}dg = f(ad x1) dx1` for `g = e^{x1}`, `f(z) = (1 - e^{-z})/z`.
pub fn left_maurer_cartan(n: usize) -> LieSeries {
    let x1 = gen(1, n, Letter::x(1));
    x1.ad_series(&PowerSeries::left_mc(n), &gen(1, n, Letter::dx(1)))
        .unwrap()
}

/// `dg g^{-1} = κ(ad x1) dx1`, `κ(z) = (e^z - 1)/z`.
pub fn right_maurer_cartan(n: usize) -> LieSeries {
    let x1 = gen(1, n, Letter::x(1));
    x1.ad_series(&PowerSeries::right_mc(n), &gen(1, n, Letter::dx(1)))
        .unwrap()
}

/// The pulled-back Cartan three-form `⟨θ, [θ, θ]⟩`, `θ = g^{-1}dg`.
pub fn cartan_form(n: usize) -> CyclicForm {
    let t = left_maurer_cartan(n);
    pair(&t, &t.bracket(&t).unwrap()).unwrap()
}

/// `WZ = ⟨A, dg g^{-1}⟩ - (1/6) h_P(⟨θ, [θ, θ]⟩)` at level 1.
pub fn wess_zumino(n: usize) -> Result<CyclicForm> {
    let a = gen(1, n, Letter::A);
    let first = pair(&a, &right_maurer_cartan(n))?;
    let second = cartan_form(n).poincare_primitive()?;
    Ok(&first - &second.scale(&Rational::new(1, 6)))
}

/// `ΔCS` together with `d⟨A, mc⟩ - (1/6)⟨θ, [θ, θ]⟩` for the given
/// Maurer-Cartan form `mc`.
pub fn delta_cs_with(n: usize, mc: &LieSeries) -> Result<(CyclicForm, CyclicForm)> {
    let lhs = simplicial_delta(Variant::NonAbelian, &chern_simons(n))?;
    let a = gen(1, n, Letter::A);
    let rhs = &pair(&a, mc)?.de_rham() - &cartan_form(n).scale(&Rational::new(1, 6));
    Ok((lhs, rhs))
}

/// `ΔCS` and its closed form with `dg g^{-1}` in the boundary term.
pub fn delta_cs(n: usize) -> Result<(CyclicForm, CyclicForm)> {
    delta_cs_with(n, &right_maurer_cartan(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cs_is_primitive_of_pontryagin() {
        for n in 2..=6 {
            assert_eq!(chern_simons(n).de_rham(), pontryagin(n));
            assert_eq!(pontryagin(n).poincare_primitive().unwrap(), chern_simons(n));
        }
        let two = chern_simons(6).part(2);
        assert_eq!(
            two,
            pair(&gen(0, 6, Letter::A), &gen(0, 6, Letter::DA)).unwrap()
        );
    }

    #[test]
    fn wz_leading_term() {
        let wz = wess_zumino(5).unwrap();
        assert_eq!(
            wz.part(2),
            pair(&gen(1, 5, Letter::A), &gen(1, 5, Letter::dx(1))).unwrap()
        );
    }

    #[test]
    fn cartan_form_closed() {
        assert!(cartan_form(6).de_rham().is_zero());
        let lead = cartan_form(6).part(3);
        let dx = gen(1, 6, Letter::dx(1));
        assert_eq!(lead, pair(&dx, &dx.bracket(&dx).unwrap()).unwrap());
    }

    #[test]
    fn delta_cs_matches_boundary_formula() {
        let (lhs, rhs) = delta_cs(5).unwrap();
        assert_eq!(lhs, rhs);
        let (lhs, rhs) = delta_cs_with(5, &left_maurer_cartan(5)).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn delta_cs_is_d_wz() {
        let n = 5;
        let lhs = simplicial_delta(Variant::NonAbelian, &chern_simons(n)).unwrap();
        assert_eq!(lhs, wess_zumino(n).unwrap().de_rham());
    }
}
