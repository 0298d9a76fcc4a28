//! Solutions of the first Kashiwara-Vergne equation, and the twist and
//! pentagon equations of their associators.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::CyclicForm;
use crate::freelie::{lyndon_basis, GeneratorSet, LieSeries, Word};
use crate::linalg::{rank_kernel_image, solve_particular, Rational, SparseMatrix, SparseVector};
use crate::simplicial::{level_gens, simplicial_delta, Variant};
use crate::tangential::{associator, block_map, TangentialAutomorphism, TangentialDerivation};

/// Free-variable bookkeeping for one degree of the solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeChoice {
    pub degree: usize,
    pub unknowns: usize,
    pub rank: usize,
    /// Coefficients given to the kernel basis vectors (all zero by default).
    pub kernel_coefficients: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KvSolution {
    pub g: TangentialAutomorphism,
    pub truncation: usize,
    pub gauge: Vec<GaugeChoice>,
}

/// `g(x1 + x2) - bch(x1, x2)`.
pub fn kv_residual(g: &TangentialAutomorphism) -> Result<LieSeries> {
    if g.arity() != 2 {
        return Err(Error::InvalidArgument(format!(
            "KV residual needs arity 2, got {}",
            g.arity()
        )));
    }
    let n = g.truncation();
    let gens = GeneratorSet::lie(2);
    let (x1, x2) = (LieSeries::x(gens, n, 1), LieSeries::x(gens, n, 2));
    Ok(&g.apply_series(&(&x1 + &x2)) - &x1.bch(&x2)?)
}

/// Basis of the letter-count-`k` part of `tder_2`: Lyndon elements in the
/// first component, then in the second.
pub fn tder2_basis(k: usize, trunc: usize) -> Result<Vec<TangentialDerivation>> {
    let gens = GeneratorSet::lie(2);
    let lb = lyndon_basis(gens, k, trunc)?;
    let zero = LieSeries::zero(gens, trunc);
    let mut out = Vec::new();
    for slot in 0..2 {
        for b in &lb {
            let mut comps = vec![zero.clone(), zero.clone()];
            comps[slot] = b.clone();
            out.push(TangentialDerivation::new(comps)?);
        }
    }
    Ok(out)
}

fn series_vector(s: &LieSeries, idx: &mut BTreeMap<Word, usize>) -> SparseVector {
    s.poly()
        .iter()
        .map(|(w, c)| {
            let next = idx.len();
            (*idx.entry(w.clone()).or_insert(next), c.clone())
        })
        .collect()
}

pub fn kv_solve(n: usize) -> Result<KvSolution> {
    kv_solve_with_gauge(n, &BTreeMap::new())
}

/// Degree-by-degree solver. At letter count `k` the new component `u_k`
/// only enters the residual at letter count `k + 1`, through
/// `-ρ(u_k)(x1 + x2)`. `gauge` optionally assigns coefficients to the
/// kernel directions at chosen degrees; otherwise free variables are zero.
pub fn kv_solve_with_gauge(n: usize, gauge: &BTreeMap<usize, Vec<Rational>>) -> Result<KvSolution> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "KV solver needs truncation at least 2, got {n}"
        )));
    }
    let sum = TangentialDerivation::sum_of_generators(2, n);
    let mut log = TangentialDerivation::zero(2, n);
    let mut record = Vec::new();
    for k in 1..n {
        let g = TangentialAutomorphism::exp(log.clone());
        let residual = kv_residual(&g)?;
        if let Some(v) = residual.valuation() {
            if v <= k {
                return Err(Error::CheckFailed(format!(
                    "residual survives at letter count {v}"
                )));
            }
        }
        let target = residual.part(k + 1);
        let basis = tder2_basis(k, n)?;
        let mut idx = BTreeMap::new();
        let cols: Vec<SparseVector> = basis
            .iter()
            .map(|b| series_vector(&-&b.rho_series(&sum), &mut idx))
            .collect();
        let rhs = series_vector(&-&target, &mut idx);
        let m = SparseMatrix::from_columns(idx.len(), &cols);
        let x = solve_particular(&m, &rhs)
            .ok()
            .ok_or_else(|| Error::NoSolution(format!("KV equation at letter count {}", k + 1)))?;
        let rki = rank_kernel_image(&m);
        let coeffs = gauge
            .get(&k)
            .cloned()
            .unwrap_or_else(|| vec![Rational::zero(); rki.kernel_basis.len()]);
        if coeffs.len() != rki.kernel_basis.len() {
            return Err(Error::InvalidArgument(format!(
                "degree {k} has {} gauge directions, got {} coefficients",
                rki.kernel_basis.len(),
                coeffs.len()
            )));
        }
        let mut sol = x;
        for (kv, c) in rki.kernel_basis.iter().zip(&coeffs) {
            crate::linalg::axpy(&mut sol, c, kv);
        }
        for (&i, c) in &sol {
            log = &log + &basis[i].scale(c);
        }
        record.push(GaugeChoice {
            degree: k,
            unknowns: basis.len(),
            rank: rki.rank,
            kernel_coefficients: coeffs,
        });
    }
    let g = TangentialAutomorphism::exp(log);
    if !kv_residual(&g)?.is_zero() {
        return Err(Error::CheckFailed("KV residual does not vanish".into()));
    }
    Ok(KvSolution {
        g,
        truncation: n,
        gauge: record,
    })
}

fn face(g: &TangentialAutomorphism, pattern: &str, arity: usize) -> Result<TangentialAutomorphism> {
    g.pushforward(&block_map(pattern, arity)?)
}

/// `(g^{1,2} g^{12,3} Φ_g)^{-1} g^{2,3} g^{1,23}`.
pub fn twist_residual(g: &TangentialAutomorphism) -> Result<TangentialAutomorphism> {
    twist_residual_with(g, &associator(g)?)
}

/// Twist residual against a given `Φ`, for controls.
pub fn twist_residual_with(
    g: &TangentialAutomorphism,
    phi: &TangentialAutomorphism,
) -> Result<TangentialAutomorphism> {
    let lhs = TangentialAutomorphism::product(&[&face(g, "1,2", 3)?, &face(g, "12,3", 3)?, phi])?;
    let rhs = face(g, "2,3", 3)?.multiply(&face(g, "1,23", 3)?)?;
    lhs.inverse().multiply(&rhs)
}

/// Order of the three factors on the right-hand side of the pentagon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PentagonOrdering {
    /// `Φ^{12,3,4} Φ^{1,2,34} = Φ^{1,2,3} Φ^{1,23,4} Φ^{2,3,4}`
    Standard,
    /// `Φ^{12,3,4} Φ^{1,2,34} = Φ^{2,3,4} Φ^{1,23,4} Φ^{1,2,3}`
    Opposite,
}

impl std::fmt::Display for PentagonOrdering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PentagonOrdering::Standard => "standard",
            PentagonOrdering::Opposite => "opposite",
        })
    }
}

impl std::str::FromStr for PentagonOrdering {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(PentagonOrdering::Standard),
            "opposite" => Ok(PentagonOrdering::Opposite),
            _ => Err(Error::InvalidArgument(format!(
                "unknown pentagon ordering {s:?}"
            ))),
        }
    }
}

/// The two sides of the pentagon in `TAut_4`.
pub fn pentagon_sides(
    phi: &TangentialAutomorphism,
    ordering: PentagonOrdering,
) -> Result<(TangentialAutomorphism, TangentialAutomorphism)> {
    if phi.arity() != 3 {
        return Err(Error::InvalidArgument(format!(
            "pentagon needs arity 3, got {}",
            phi.arity()
        )));
    }
    let lhs = face(phi, "12,3,4", 4)?.multiply(&face(phi, "1,2,34", 4)?)?;
    let (a, b, c) = (
        face(phi, "1,2,3", 4)?,
        face(phi, "1,23,4", 4)?,
        face(phi, "2,3,4", 4)?,
    );
    let rhs = match ordering {
        PentagonOrdering::Standard => TangentialAutomorphism::product(&[&a, &b, &c])?,
        PentagonOrdering::Opposite => TangentialAutomorphism::product(&[&c, &b, &a])?,
    };
    Ok((lhs, rhs))
}

/// `(right side)^{-1} (left side)`.
pub fn pentagon_residual(
    phi: &TangentialAutomorphism,
    ordering: PentagonOrdering,
) -> Result<TangentialAutomorphism> {
    let (lhs, rhs) = pentagon_sides(phi, ordering)?;
    rhs.inverse().multiply(&lhs)
}

/// Both sides of
/// `g^{1,2} g^{12,3} g^{123,4}.(C(Φ^{12,3,4}Φ^{1,2,34}) - C(Φ^{1,2,3}Φ^{1,23,4}Φ^{2,3,4})) = dΔω₀`.
pub fn final_remark_identity(
    g: &TangentialAutomorphism,
    omega0: &CyclicForm,
    ordering: PentagonOrdering,
) -> Result<(CyclicForm, CyclicForm)> {
    if !kv_residual(g)?.is_zero() {
        return Err(Error::Precondition(
            "g does not solve the KV equation".into(),
        ));
    }
    let phi = associator(g)?;
    let (lhs_prod, rhs_prod) = pentagon_sides(&phi, ordering)?;
    let diff = &lhs_prod.cocycle() - &rhs_prod.cocycle();
    let h = TangentialAutomorphism::product(&[
        &face(g, "1,2", 4)?,
        &face(g, "12,3", 4)?,
        &face(g, "123,4", 4)?,
    ])?;
    let lhs = h.apply_form(&diff).with_gens(level_gens(4))?;
    let rhs = simplicial_delta(Variant::NonAbelian, omega0)?.de_rham();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_component() {
        let sol = kv_solve(3).unwrap();
        let u1 = sol.g.log().part(1);
        let gens = GeneratorSet::lie(2);
        let half = Rational::new(1, 2);
        let want = TangentialDerivation::new(vec![
            LieSeries::x(gens, 3, 2).scale(&half),
            LieSeries::zero(gens, 3),
        ])
        .unwrap();
        assert_eq!(u1, want);
    }

    #[test]
    fn identity_residual_is_bch_tail() {
        let id = TangentialAutomorphism::identity(2, 3);
        let r = kv_residual(&id).unwrap();
        let gens = GeneratorSet::lie(2);
        let x12 = LieSeries::x(gens, 3, 1)
            .bracket(&LieSeries::x(gens, 3, 2))
            .unwrap();
        assert_eq!(r.part(2), x12.scale(&Rational::new(-1, 2)));
    }

    #[test]
    fn twist_is_identity() {
        let sol = kv_solve(4).unwrap();
        assert!(twist_residual(&sol.g).unwrap().is_identity());
    }

    #[test]
    fn pentagon_small() {
        let sol = kv_solve(4).unwrap();
        let phi = associator(&sol.g).unwrap();
        assert!(phi.is_saut());
        assert!(pentagon_residual(&phi, PentagonOrdering::Standard)
            .unwrap()
            .is_identity());
    }
}
