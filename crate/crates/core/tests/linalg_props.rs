use kvcs_core::linalg::{rank, solve_particular, Rational, Solution, SparseMatrix, SparseVector};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    let entry = prop_oneof![3 => Just(Rational::zero()), 2 => (-3i64..=3, 1i64..=3).prop_map(|(p, q)| Rational::new(p, q))];
    proptest::collection::vec(proptest::collection::vec(entry, cols), rows)
}

fn to_sparse(v: &[Rational]) -> SparseVector {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

proptest! {
    #[test]
    fn rank_ignores_row_order(m in matrix(6, 5), seed in any::<u64>()) {
        let mut shuffled = m.clone();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(rank(&SparseMatrix::from_dense(&m)), rank(&SparseMatrix::from_dense(&shuffled)));
    }

    #[test]
    fn particular_solution_is_exact(m in matrix(5, 6), x in matrix(1, 6)) {
        let a = SparseMatrix::from_dense(&m);
        let b = a.mul_vec(&to_sparse(&x[0]));
        match solve_particular(&a, &b) {
            Solution::Solved(sol) => prop_assert_eq!(a.mul_vec(&sol), b),
            Solution::NoSolution => prop_assert!(false, "consistent system reported unsolvable"),
        }
    }

    #[test]
    fn rank_bounded_by_shape(m in matrix(4, 7)) {
        prop_assert!(rank(&SparseMatrix::from_dense(&m)) <= 4);
    }
}
