//! Words in the free group generated by the arcs of a system of arcs.
//!
//! A letter `+k` (k >= 1) records crossing arc `k - 1` from its left side to
//! its right side; `-k` records the opposite crossing.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub i32);

impl Letter {
    pub fn new(arc: usize, forward: bool) -> Self {
        let k = arc as i32 + 1;
        Letter(if forward { k } else { -k })
    }

    pub fn arc(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_forward(self) -> bool {
        self.0 > 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Appends a letter, cancelling against the last one when possible.
    pub fn push_reduced(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn reduced(&self) -> Word {
        let mut out = Word::empty();
        for &l in &self.0 {
            out.push_reduced(l);
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Reduced product `self * other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.reduced();
        for &l in &other.0 {
            out.push_reduced(l);
        }
        out
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Freely and cyclically reduced form.
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.reduced().0;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
            w.pop();
            w.remove(0);
        }
        Word(w)
    }

    /// Canonical representative of the free homotopy class of an unoriented
    /// closed curve: the lexicographically smallest rotation of the cyclic
    /// reduction or of its inverse.
    pub fn conjugacy_key(&self) -> Word {
        let c = self.cyclically_reduced();
        let a = min_rotation(&c.0);
        let b = min_rotation(&c.inverse().0);
        Word(a.min(b))
    }

    /// Same as [`Word::conjugacy_key`] but keeps orientation.
    pub fn oriented_conjugacy_key(&self) -> Word {
        Word(min_rotation(&self.cyclically_reduced().0))
    }

    /// Number of occurrences of each arc (either direction).
    pub fn arc_counts(&self, arcs: usize) -> Vec<usize> {
        let mut c = vec![0; arcs];
        for l in &self.0 {
            if l.arc() < arcs {
                c[l.arc()] += 1;
            }
        }
        c
    }

    /// `true` if `self` is a proper power `u^k` with `k >= 2`.
    pub fn is_proper_power(&self) -> bool {
        let n = self.0.len();
        (1..n).any(|p| n % p == 0 && (p..n).all(|i| self.0[i] == self.0[i - p]))
    }
}

fn min_rotation(v: &[Letter]) -> Vec<Letter> {
    if v.is_empty() {
        return Vec::new();
    }
    (0..v.len())
        .map(|i| v[i..].iter().chain(v[..i].iter()).copied().collect::<Vec<_>>())
        .min()
        .unwrap()
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = (b'a' + (self.arc() % 26) as u8) as char;
        if self.is_forward() {
            write!(f, "{c}")?;
        } else {
            write!(f, "{}", c.to_ascii_uppercase())?;
        }
        if self.arc() >= 26 {
            write!(f, "{}", self.arc())?;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl From<Vec<i32>> for Word {
    fn from(v: Vec<i32>) -> Self {
        Word(v.into_iter().map(Letter).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i32]) -> Word {
        Word::from(v.to_vec())
    }

    #[test]
    fn reduction_cancels_inverse_pairs() {
        assert_eq!(w(&[1, 2, -2, -1, 3]).reduced(), w(&[3]));
        assert_eq!(w(&[1, -1]).reduced(), Word::empty());
    }

    #[test]
    fn cyclic_reduction_and_keys() {
        assert_eq!(w(&[2, 1, 3, -2]).cyclically_reduced(), w(&[1, 3]));
        assert_eq!(w(&[1, 2]).conjugacy_key(), w(&[2, 1]).conjugacy_key());
        assert_eq!(w(&[1, 2]).conjugacy_key(), w(&[-2, -1]).conjugacy_key());
        assert_ne!(w(&[1, 2]).oriented_conjugacy_key(), w(&[-2, -1]).oriented_conjugacy_key());
    }

    #[test]
    fn proper_powers() {
        assert!(w(&[1, 2, 1, 2]).is_proper_power());
        assert!(!w(&[1, 2, 2]).is_proper_power());
        assert!(!w(&[1]).is_proper_power());
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..12).prop_map(Word::from)
    }

    proptest! {
        #[test]
        fn inverse_multiplies_to_identity(a in arb_word()) {
            prop_assert!(a.mul(&a.inverse()).is_empty());
        }

        #[test]
        fn multiplication_is_associative(a in arb_word(), b in arb_word(), c in arb_word()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn conjugation_preserves_key(a in arb_word(), g in arb_word()) {
            let conj = g.mul(&a).mul(&g.inverse());
            prop_assert_eq!(conj.conjugacy_key(), a.conjugacy_key());
        }
    }
}
