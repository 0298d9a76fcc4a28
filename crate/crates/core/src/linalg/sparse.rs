//! Sparse exact matrices and row reduction.
//!
//! Every routine uses the same pivot rule: rows are consumed in index order,
//! and the pivot of a row is its first nonzero column after reduction
//! against the pivots already found. Free variables are always set to zero,
//! so particular solutions are reproducible.

use std::collections::BTreeMap;

use super::Rational;

/// Sparse vector: column index -> nonzero coefficient.
pub type SparseVector = BTreeMap<usize, Rational>;

/// `a += s * b`, dropping entries that cancel.
pub fn axpy(a: &mut SparseVector, s: &Rational, b: &SparseVector) {
    if s.is_zero() {
        return;
    }
    for (k, v) in b {
        let prod = s * v;
        match a.get_mut(k) {
            Some(x) => {
                *x += prod;
                if x.is_zero() {
                    a.remove(k);
                }
            }
            None => {
                a.insert(*k, prod);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![SparseVector::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from its (sparse) columns.
    pub fn from_columns(rows: usize, columns: &[SparseVector]) -> Self {
        let mut m = SparseMatrix::new(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVector>) -> Self {
        debug_assert!(rows.iter().all(|r| r.keys().all(|&c| c < cols)));
        SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    /// Iterates stored (row, col, value) triples in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn mul_vec(&self, x: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = Rational::zero();
            for (j, v) in r {
                if let Some(xj) = x.get(j) {
                    acc += v * xj;
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }
}

/// Incremental reduced row echelon form.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    /// pivot column -> normalized row (pivot entry 1, zero in other pivot columns)
    pivots: BTreeMap<usize, SparseVector>,
    /// pivot columns in discovery order
    order: Vec<usize>,
    /// Columns at or beyond this index never become pivots.
    pivot_limit: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
            order: Vec::new(),
            pivot_limit: usize::MAX,
        }
    }

    fn with_pivot_limit(limit: usize) -> Self {
        Echelon {
            pivot_limit: limit,
            ..Echelon::new()
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.order
    }

    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, mut row: SparseVector) -> SparseVector {
        let hits: Vec<usize> = row
            .keys()
            .copied()
            .filter(|c| self.pivots.contains_key(c))
            .collect();
        for c in hits {
            if let Some(coef) = row.get(&c).cloned() {
                axpy(&mut row, &-coef, &self.pivots[&c]);
            }
        }
        row
    }

    /// Inserts a row; returns its new pivot column if it was independent.
    pub fn insert(&mut self, row: SparseVector) -> Option<usize> {
        let mut row = self.reduce(row);
        let (&p, lead) = row.iter().find(|(&c, _)| c < self.pivot_limit)?;
        let inv = lead.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        for other in self.pivots.values_mut() {
            if let Some(coef) = other.get(&p).cloned() {
                axpy(other, &-coef, &row);
            }
        }
        self.pivots.insert(p, row);
        self.order.push(p);
        Some(p)
    }

    pub fn contains(&self, row: &SparseVector) -> bool {
        self.reduce(row.clone())
            .keys()
            .all(|&c| c >= self.pivot_limit)
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseVector> {
        self.pivots.get(&col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankKernelImage {
    pub rank: usize,
    pub kernel_basis: Vec<SparseVector>,
    pub pivot_columns: Vec<usize>,
}

pub fn rank_kernel_image(m: &SparseMatrix) -> RankKernelImage {
    let mut ech = Echelon::new();
    for r in &m.data {
        ech.insert(r.clone());
    }
    let mut pivot_columns: Vec<usize> = ech.pivots.keys().copied().collect();
    pivot_columns.sort_unstable();
    let mut kernel_basis = Vec::new();
    for f in (0..m.cols).filter(|c| !ech.pivots.contains_key(c)) {
        let mut v = SparseVector::new();
        v.insert(f, Rational::one());
        for (&p, row) in &ech.pivots {
            if let Some(x) = row.get(&f) {
                v.insert(p, -x);
            }
        }
        kernel_basis.push(v);
    }
    RankKernelImage {
        rank: ech.rank(),
        kernel_basis,
        pivot_columns,
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    let mut ech = Echelon::new();
    for r in &m.data {
        ech.insert(r.clone());
    }
    ech.rank()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Solved(SparseVector),
    NoSolution,
}

impl Solution {
    pub fn ok(self) -> Option<SparseVector> {
        match self {
            Solution::Solved(x) => Some(x),
            Solution::NoSolution => None,
        }
    }
}

/// Finds `x` with `m x = b`, free variables set to zero.
pub fn solve_particular(m: &SparseMatrix, b: &SparseVector) -> Solution {
    assert!(
        b.keys().all(|&i| i < m.rows),
        "right-hand side does not fit the matrix"
    );
    let aug = m.cols;
    let mut ech = Echelon::with_pivot_limit(aug);
    for (i, r) in m.data.iter().enumerate() {
        let mut row = r.clone();
        if let Some(bi) = b.get(&i) {
            row.insert(aug, bi.clone());
        }
        if ech.insert(row.clone()).is_none() && !ech.reduce(row).is_empty() {
            return Solution::NoSolution;
        }
    }
    let mut x = SparseVector::new();
    for (&p, row) in &ech.pivots {
        if let Some(v) = row.get(&aug) {
            x.insert(p, v.clone());
        }
    }
    Solution::Solved(x)
}
