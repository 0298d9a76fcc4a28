//! Finite bases of the bigraded pieces of `Ω⟨gens⟩`.
//!
//! A piece is spanned by the pairings `⟨g, b⟩` with `g` a letter and `b` a
//! super-Lyndon basis element; those spanning sets are row reduced block by
//! block (blocks = letter content, which every pairing preserves).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::form::CyclicForm;
use crate::freelie::lyndon::{basis_tree, lyndon_words};
use crate::freelie::{GeneratorSet, Letter, Poly, Word};
use crate::linalg::{Echelon, Rational, SparseVector};

/// Assigns column indices to canonical cyclic words.
#[derive(Clone, Debug, Default)]
pub struct WordIndex {
    index: HashMap<Word, usize>,
    words: Vec<Word>,
}

impl WordIndex {
    pub fn new() -> Self {
        WordIndex::default()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn id(&mut self, w: &Word) -> usize {
        if let Some(&i) = self.index.get(w) {
            return i;
        }
        self.words.push(w.clone());
        self.index.insert(w.clone(), self.words.len() - 1);
        self.words.len() - 1
    }

    pub fn get(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn vector(&mut self, f: &CyclicForm) -> SparseVector {
        f.iter().map(|(w, c)| (self.id(w), c.clone())).collect()
    }

    /// Like `vector` but never grows the index; `None` if a word is unknown.
    pub fn try_vector(&self, f: &CyclicForm) -> Option<SparseVector> {
        f.iter()
            .map(|(w, c)| self.get(w).map(|i| (i, c.clone())))
            .collect()
    }

    pub fn form(&self, v: &SparseVector, gens: GeneratorSet, trunc: usize) -> CyclicForm {
        let mut f = CyclicForm::zero(gens, trunc);
        for (&i, c) in v {
            f.add_word(&self.words[i], c.clone());
        }
        f
    }
}

/// Super-Lyndon basis words (Lyndon words and squares of odd Lyndon words)
/// of length `k`.
fn super_lyndon_words(letters: &[Letter], k: usize) -> Vec<Word> {
    let mut out = lyndon_words(letters, k);
    if k.is_multiple_of(2) {
        for w in lyndon_words(letters, k / 2) {
            if w.degree() % 2 == 1 {
                out.push(w.concat(&w));
            }
        }
    }
    out
}

fn content_key(w: &[Letter]) -> Vec<Letter> {
    let mut c = w.to_vec();
    c.sort_unstable();
    c
}

type BasisKey = (GeneratorSet, u32, usize);

fn cache() -> &'static Mutex<HashMap<BasisKey, Arc<Vec<CyclicForm>>>> {
    static CACHE: OnceLock<Mutex<HashMap<BasisKey, Arc<Vec<CyclicForm>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Basis of the piece of `Ω⟨gens⟩` with de Rham degree `j` and exactly `k`
/// letters, as forms truncated at `k`. Deterministic: blocks in content
/// order, reduced rows in pivot order.
pub fn graded_basis(gens: GeneratorSet, j: u32, k: usize) -> Arc<Vec<CyclicForm>> {
    let key = (gens, j, k);
    if let Some(b) = cache().lock().unwrap().get(&key) {
        return b.clone();
    }
    let b = Arc::new(compute_basis(gens, j, k));
    cache().lock().unwrap().insert(key, b.clone());
    b
}

fn compute_basis(gens: GeneratorSet, j: u32, k: usize) -> Vec<CyclicForm> {
    if k < 2 {
        return Vec::new();
    }
    let letters = gens.letters();
    let mut blocks: BTreeMap<Vec<Letter>, Vec<(Letter, Word)>> = BTreeMap::new();
    for w in super_lyndon_words(&letters, k - 1) {
        let dw = w.degree();
        for &g in &letters {
            if g.degree() + dw != j {
                continue;
            }
            let mut full = w.to_vec();
            full.push(g);
            blocks
                .entry(content_key(&full))
                .or_default()
                .push((g, w.clone()));
        }
    }
    let blocks: Vec<(Vec<Letter>, Vec<(Letter, Word)>)> = blocks.into_iter().collect();
    let per_block: Vec<Vec<CyclicForm>> = blocks
        .par_iter()
        .map(|(_, spanning)| {
            let mut idx = WordIndex::new();
            let mut ech = Echelon::new();
            for (g, w) in spanning {
                let tree = basis_tree(w).expect("super-Lyndon word");
                let p = Poly::letter(*g).mul(&tree.to_poly(k), k);
                let f = CyclicForm::from_poly(gens, k, &p);
                ech.insert(idx.vector(&f));
            }
            // re-index columns by word order so the reduced rows do not
            // depend on the spanning order
            let mut order: Vec<usize> = (0..idx.len()).collect();
            order.sort_by(|&a, &b| idx.word(a).cmp(idx.word(b)));
            let mut rank_of = vec![0; idx.len()];
            for (r, &c) in order.iter().enumerate() {
                rank_of[c] = r;
            }
            let mut sorted = Echelon::new();
            for &p in ech.pivot_columns() {
                let row = ech.pivot_row(p).unwrap();
                sorted.insert(row.iter().map(|(&c, v)| (rank_of[c], v.clone())).collect());
            }
            let mut pivots = sorted.pivot_columns().to_vec();
            pivots.sort_unstable();
            pivots
                .iter()
                .map(|&p| {
                    let row = sorted.pivot_row(p).unwrap();
                    let mut f = CyclicForm::zero(gens, k);
                    for (&c, v) in row {
                        f.add_word(idx.word(order[c]), v.clone());
                    }
                    f
                })
                .collect()
        })
        .collect();
    per_block.into_iter().flatten().collect()
}

/// Basis of all pieces with de Rham degree `j` and letter counts `2..=k`,
/// ordered by letter count.
pub fn filtered_basis(gens: GeneratorSet, j: u32, k: usize) -> Vec<CyclicForm> {
    (2..=k)
        .flat_map(|m| {
            graded_basis(gens, j, m)
                .iter()
                .map(|f| f.with_truncation(k))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Expresses `f` in `basis` (assumed independent); `None` if outside the span.
pub fn coordinates(f: &CyclicForm, basis: &[CyclicForm]) -> Option<Vec<Rational>> {
    let mut idx = WordIndex::new();
    let cols: Vec<SparseVector> = basis.iter().map(|b| idx.vector(b)).collect();
    let target = idx.vector(f);
    let m = crate::linalg::SparseMatrix::from_columns(idx.len(), &cols);
    let x = crate::linalg::solve_particular(&m, &target).ok()?;
    Some(
        (0..basis.len())
            .map(|i| x.get(&i).cloned().unwrap_or_else(Rational::zero))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::pair;
    use crate::freelie::LieSeries;

    #[test]
    fn functions_of_one_variable() {
        let b = graded_basis(GeneratorSet::lie(1), 0, 2);
        assert_eq!(b.len(), 1);
        let x = LieSeries::x(GeneratorSet::lie(1), 2, 1);
        assert_eq!(b[0], pair(&x, &x).unwrap());
        assert!(graded_basis(GeneratorSet::lie(1), 0, 3).is_empty());
    }

    #[test]
    fn unique_multilinear_cubic() {
        let g = GeneratorSet::lie(3);
        let b = graded_basis(g, 0, 3);
        let multi: Vec<_> = b
            .iter()
            .filter(|f| {
                f.iter()
                    .all(|(w, _)| content_key(w) == vec![Letter::x(1), Letter::x(2), Letter::x(3)])
            })
            .collect();
        assert_eq!(multi.len(), 1);
        let x = |i| LieSeries::x(g, 3, i);
        let phi = pair(&x(1), &x(2).bracket(&x(3)).unwrap()).unwrap();
        assert!(coordinates(&phi, &[multi[0].clone()]).is_some());
    }

    #[test]
    fn one_forms_in_one_variable() {
        let b = graded_basis(GeneratorSet::forms(1), 1, 2);
        assert_eq!(b.len(), 1);
        let w = Word::from_letters(&[Letter::x(1), Letter::dx(1)]);
        assert_eq!(b[0], CyclicForm::word(GeneratorSet::forms(1), 2, &w));
    }
}
