//! Sign-canonical representatives of cyclic words.

use crate::freelie::{Letter, Word};

fn degree(ls: &[Letter]) -> u32 {
    ls.iter().map(|l| l.degree()).sum()
}

/// Sign picked up by moving the first `r` letters of `w` to the back.
pub fn rotation_sign_odd(w: &[Letter], r: usize) -> bool {
    (degree(&w[..r]) * degree(&w[r..])) % 2 == 1
}

pub fn rotate(w: &[Letter], r: usize) -> Word {
    let mut out = Word::from_letters(&w[r..]);
    out.extend_from_slice(&w[..r]);
    out
}

/// Lexicographically minimal rotation together with the sign relating it to
/// `w` (`true` for a minus sign). `None` when the cyclic word vanishes, i.e.
/// some rotation maps it to minus itself.
pub fn canonicalize(w: &[Letter]) -> Option<(Word, bool)> {
    let n = w.len();
    if n == 0 {
        return Some((Word::empty(), false));
    }
    let period = (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]))
        .unwrap();
    if period < n && rotation_sign_odd(w, period) {
        return None;
    }
    let mut best = 0;
    for r in 1..period {
        let better = (0..n)
            .map(|i| w[(r + i) % n].cmp(&w[(best + i) % n]))
            .find(|c| c.is_ne());
        if better == Some(std::cmp::Ordering::Less) {
            best = r;
        }
    }
    Some((rotate(w, best), rotation_sign_odd(w, best)))
}
