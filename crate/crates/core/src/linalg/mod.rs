//! Exact rational scalars and sparse linear algebra over finite graded bases.

mod rational;
mod sparse;

pub use rational::{ParseRationalError, Rational};
pub use sparse::{
    axpy, rank, rank_kernel_image, solve_particular, Echelon, RankKernelImage, Solution,
    SparseMatrix, SparseVector,
};
