//! Letters, words and generator sets.
//!
//! All computations share one fixed alphabet: the gauge field `A` (degree 1)
//! with its differential `dA` (degree 2), and group coordinates `x1, x2, ...`
//! (degree 0) with differentials `dx1, dx2, ...` (degree 1). The numeric
//! encoding fixes the total order used by every canonical form:
//! `A < dA < x1 < dx1 < x2 < dx2 < ...`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Highest supported group coordinate index.
pub const MAX_INDEX: usize = 31;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub const A: Letter = Letter(0);
    pub const DA: Letter = Letter(1);

    /// The group coordinate `x_i`, `i >= 1`.
    pub fn x(i: usize) -> Letter {
        assert!(
            (1..=MAX_INDEX).contains(&i),
            "generator index {i} out of range"
        );
        Letter((2 * i) as u8)
    }

    /// The differential `dx_i`.
    pub fn dx(i: usize) -> Letter {
        assert!(
            (1..=MAX_INDEX).contains(&i),
            "generator index {i} out of range"
        );
        Letter((2 * i + 1) as u8)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn from_code(c: u8) -> Letter {
        assert!((c as usize) < 2 * MAX_INDEX + 2);
        Letter(c)
    }

    /// Koszul degree.
    pub fn degree(self) -> u32 {
        match self.0 {
            0 => 1,
            1 => 2,
            c if c % 2 == 0 => 0,
            _ => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self.degree() % 2 == 1
    }

    pub fn is_differential(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn is_gauge(self) -> bool {
        self.0 < 2
    }

    /// `Some(i)` for `x_i` and `dx_i`.
    pub fn index(self) -> Option<usize> {
        (self.0 >= 2).then_some((self.0 / 2) as usize)
    }

    /// The de Rham differential of the letter, `None` when it is zero.
    pub fn d(self) -> Option<Letter> {
        (!self.is_differential()).then(|| Letter(self.0 + 1))
    }

    /// The contraction `e(dx) = x`, `None` when it is zero.
    pub fn e(self) -> Option<Letter> {
        self.is_differential().then(|| Letter(self.0 - 1))
    }

    pub fn name(self) -> String {
        match self.0 {
            0 => "A".to_string(),
            1 => "dA".to_string(),
            c if c % 2 == 0 => format!("x{}", c / 2),
            c => format!("dx{}", c / 2),
        }
    }

    pub fn parse(name: &str) -> Option<Letter> {
        match name {
            "A" => Some(Letter::A),
            "dA" => Some(Letter::DA),
            _ => {
                let (d, rest) = match name.strip_prefix("dx") {
                    Some(r) => (true, r),
                    None => (false, name.strip_prefix('x')?),
                };
                if rest.is_empty()
                    || rest.starts_with('0')
                    || !rest.bytes().all(|b| b.is_ascii_digit())
                {
                    return None;
                }
                let i: usize = rest.parse().ok()?;
                if !(1..=MAX_INDEX).contains(&i) {
                    return None;
                }
                Some(if d { Letter::dx(i) } else { Letter::x(i) })
            }
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// An associative word. Ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn letter(l: Letter) -> Word {
        let mut v = SmallVec::new();
        v.push(l);
        Word(v)
    }

    pub fn from_letters(ls: &[Letter]) -> Word {
        Word(SmallVec::from_slice(ls))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|l| l.degree()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn count_where(&self, f: impl Fn(Letter) -> bool) -> usize {
        self.0.iter().filter(|l| f(**l)).count()
    }
}

impl Deref for Word {
    type Target = SmallVec<[Letter; 8]>;
    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl DerefMut for Word {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.0.iter().map(|l| l.name()).collect();
        f.write_str(&names.join(" "))
    }
}

/// A totally ordered set of generators, closed under `d` when it contains
/// differentials.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSet(u64);

impl GeneratorSet {
    pub fn empty() -> Self {
        GeneratorSet(0)
    }

    /// `Lie_n`: the degree-0 generators `x1..xn`.
    pub fn lie(n: usize) -> Self {
        let mut g = GeneratorSet(0);
        for i in 1..=n {
            g.insert(Letter::x(i));
        }
        g
    }

    /// `x1..xn, dx1..dxn`: the alphabet of `Ω⟨x1..xn⟩`.
    pub fn forms(n: usize) -> Self {
        let mut g = GeneratorSet::lie(n);
        for i in 1..=n {
            g.insert(Letter::dx(i));
        }
        g
    }

    /// `A, dA, x1..xn, dx1..dxn`: the alphabet of `Ω⟨A, x1..xn⟩` at simplicial level `n`.
    pub fn gauge(n: usize) -> Self {
        let mut g = GeneratorSet::forms(n);
        g.insert(Letter::A);
        g.insert(Letter::DA);
        g
    }

    pub fn from_letters(ls: &[Letter]) -> Result<Self> {
        let mut g = GeneratorSet(0);
        for &l in ls {
            if g.contains(l) {
                return Err(Error::InvalidArgument(format!("duplicate generator {l}")));
            }
            g.insert(l);
        }
        Ok(g)
    }

    fn insert(&mut self, l: Letter) {
        self.0 |= 1u64 << l.code();
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.0 & (1u64 << l.code()) != 0
    }

    pub fn contains_word(&self, w: &[Letter]) -> bool {
        w.iter().all(|l| self.contains(*l))
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..64u8)
            .filter(|c| self.0 & (1u64 << c) != 0)
            .map(Letter::from_code)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: &GeneratorSet) -> GeneratorSet {
        GeneratorSet(self.0 | other.0)
    }

    pub fn is_subset(&self, other: &GeneratorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Every non-differential letter has its differential in the set (and
    /// every differential its primitive).
    pub fn is_d_closed(&self) -> bool {
        self.letters().iter().all(|l| match (l.d(), l.e()) {
            (Some(dl), _) => self.contains(dl),
            (_, Some(el)) => self.contains(el),
            _ => true,
        })
    }

    /// Largest `i` with `x_i` or `dx_i` in the set.
    pub fn max_index(&self) -> usize {
        self.letters()
            .iter()
            .filter_map(|l| l.index())
            .max()
            .unwrap_or(0)
    }

    /// All generators have degree 0.
    pub fn is_even(&self) -> bool {
        self.letters().iter().all(|l| l.degree() == 0)
    }

    pub fn check_same(&self, other: &GeneratorSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.letters().iter().map(|l| l.name()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_roundtrip() {
        for l in GeneratorSet::gauge(12).letters() {
            assert_eq!(Letter::parse(&l.name()), Some(l));
        }
        assert_eq!(Letter::parse("x0"), None);
        assert_eq!(Letter::parse("x01"), None);
        assert_eq!(Letter::parse("y1"), None);
        assert_eq!(Letter::parse("dx"), None);
    }

    #[test]
    fn degrees_and_differentials() {
        assert_eq!(Letter::A.degree(), 1);
        assert_eq!(Letter::DA.degree(), 2);
        assert_eq!(Letter::x(3).degree(), 0);
        assert_eq!(Letter::dx(3).degree(), 1);
        assert_eq!(Letter::x(2).d(), Some(Letter::dx(2)));
        assert_eq!(Letter::A.d(), Some(Letter::DA));
        assert_eq!(Letter::DA.d(), None);
        assert_eq!(Letter::dx(1).e(), Some(Letter::x(1)));
        assert_eq!(Letter::x(1).e(), None);
    }

    #[test]
    fn order_is_fixed() {
        let ls = GeneratorSet::gauge(2).letters();
        let names: Vec<String> = ls.iter().map(|l| l.name()).collect();
        assert_eq!(names, ["A", "dA", "x1", "dx1", "x2", "dx2"]);
    }

    #[test]
    fn closure() {
        assert!(GeneratorSet::forms(3).is_d_closed());
        assert!(GeneratorSet::gauge(0).is_d_closed());
        assert!(!GeneratorSet::from_letters(&[Letter::x(1), Letter::A])
            .unwrap()
            .is_d_closed());
        assert!(GeneratorSet::from_letters(&[Letter::x(1), Letter::x(1)]).is_err());
    }
}
