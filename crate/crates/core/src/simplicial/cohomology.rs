//! Cohomology of the rows `(Ω^j⟨A, x_•⟩, Δ)` at finite letter count.
//!
//! With `Q_k` the quotient by words of more than `k` letters, the reported
//! group at `(j, n, k)` is the image of `H^n(Q_{k+1}) → H^n(Q_k)`: cocycles
//! must survive one extra letter, which removes classes that only exist
//! because their coboundary was truncated away.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cofaces::{level_gens, simplicial_delta, Variant};
use crate::error::{Error, Result};
use crate::forms::basis::{filtered_basis, WordIndex};
use crate::forms::CyclicForm;
use crate::linalg::{rank_kernel_image, Echelon, SparseMatrix, SparseVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCohomology {
    pub de_rham_degree: u32,
    pub level: usize,
    pub letters: usize,
    pub dim_kernel: usize,
    pub dim_image: usize,
    pub dim_h: usize,
}

/// Δ of every basis element, as columns over a shared word index.
pub(crate) fn delta_columns(
    variant: Variant,
    basis: &[CyclicForm],
    idx: &mut WordIndex,
) -> Result<Vec<SparseVector>> {
    let images: Vec<CyclicForm> = basis
        .par_iter()
        .map(|b| simplicial_delta(variant, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(images.iter().map(|f| idx.vector(f)).collect())
}

pub(crate) fn combine(basis: &[CyclicForm], v: &SparseVector, trunc: usize) -> CyclicForm {
    let mut f = CyclicForm::zero(basis[0].gens(), trunc);
    for (&i, c) in v {
        f.add_scaled(&basis[i].with_truncation(trunc), c);
    }
    f
}

/// Kernel of Δ on `Ω^j` at level `n` with at most `k` letters (modulo
/// longer words).
pub fn delta_kernel(variant: Variant, j: u32, n: usize, k: usize) -> Result<Vec<CyclicForm>> {
    let basis = filtered_basis(level_gens(n), j, k);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let mut idx = WordIndex::new();
    let cols = delta_columns(variant, &basis, &mut idx)?;
    let rki = rank_kernel_image(&SparseMatrix::from_columns(idx.len(), &cols));
    Ok(rki
        .kernel_basis
        .iter()
        .map(|v| combine(&basis, v, k))
        .collect())
}

pub fn row_cohomology(variant: Variant, j: u32, n: usize, k: usize) -> Result<RowCohomology> {
    let kernel = delta_kernel(variant, j, n, k + 1)?;
    let mut idx = WordIndex::new();
    let mut z = Echelon::new();
    for f in &kernel {
        z.insert(idx.vector(&f.with_truncation(k)));
    }
    let dim_kernel = z.rank();
    let mut dim_image = 0;
    if n > 0 {
        let prev = filtered_basis(level_gens(n - 1), j, k);
        let mut b = Echelon::new();
        let mut tmp = WordIndex::new();
        let cols = delta_columns(variant, &prev, &mut tmp)?;
        for c in cols {
            let f = tmp.form(&c, level_gens(n), k);
            let v = idx.vector(&f);
            if !z.contains(&v) {
                return Err(Error::CheckFailed(format!(
                    "coboundary {f} is not a cocycle"
                )));
            }
            b.insert(v);
        }
        dim_image = b.rank();
    }
    Ok(RowCohomology {
        de_rham_degree: j,
        level: n,
        letters: k,
        dim_kernel,
        dim_image,
        dim_h: dim_kernel - dim_image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_class_in_functions() {
        let h = row_cohomology(Variant::NonAbelian, 0, 3, 3).unwrap();
        assert_eq!(h.dim_h, 1, "{h:?}");
    }

    #[test]
    fn low_rows_exact() {
        for j in 1..=3 {
            for n in 0..=2 {
                for k in 2..=3 {
                    let h = row_cohomology(Variant::NonAbelian, j, n, k).unwrap();
                    assert_eq!(h.dim_h, 0, "{h:?}");
                }
            }
        }
    }
}
