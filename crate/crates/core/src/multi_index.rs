//! Strictly increasing index tuples keying antisymmetric tensors.

use std::fmt;

/// A strictly increasing tuple of 0-based coordinate indices.
///
/// Printed 1-based, so `MultiIndex::new(vec![0, 2])` displays as `(1,3)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Accepts only strictly increasing input.
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        if indices.windows(2).all(|w| w[0] < w[1]) {
            Some(Self(indices))
        } else {
            None
        }
    }

    /// Sorts an arbitrary tuple, returning the permutation parity
    /// (`true` for odd), or `None` when an index repeats.
    pub fn sorted(mut indices: Vec<usize>) -> Option<(bool, Self)> {
        let mut odd = false;
        // insertion sort keeps the transposition count explicit
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            None
        } else {
            Some((odd, Self(indices)))
        }
    }

    pub fn single(i: usize) -> Self {
        Self(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn position(&self, i: usize) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }

    /// Concatenates `self` then `other` and sorts; `None` if they overlap.
    pub fn wedge(&self, other: &Self) -> Option<(bool, Self)> {
        let mut merged = Vec::with_capacity(self.len() + other.len());
        let mut odd = false;
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() || b < other.0.len() {
            if b == other.0.len() || (a < self.0.len() && self.0[a] < other.0[b]) {
                merged.push(self.0[a]);
                a += 1;
            } else if a == self.0.len() || other.0[b] < self.0[a] {
                // other[b] jumps over the remaining entries of self
                if (self.0.len() - a) % 2 == 1 {
                    odd = !odd;
                }
                merged.push(other.0[b]);
                b += 1;
            } else {
                return None;
            }
        }
        Some((odd, Self(merged)))
    }

    /// Removes `i`; the parity is that of its position (left interior product).
    pub fn remove_left(&self, i: usize) -> Option<(bool, Self)> {
        let pos = self.position(i)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some((pos % 2 == 1, Self(v)))
    }

    /// Removes `i`; parity counts the entries to its right (right derivative).
    pub fn remove_right(&self, i: usize) -> Option<(bool, Self)> {
        let pos = self.position(i)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(((self.0.len() - 1 - pos) % 2 == 1, Self(v)))
    }

    /// Prepends `i` (as in `dx^i ^ dx^I`) and sorts.
    pub fn insert_front(&self, i: usize) -> Option<(bool, Self)> {
        Self::single(i).wedge(self)
    }

    /// All strictly increasing `k`-tuples from `0..n` in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(binomial(n, k));
        if k > n {
            return out;
        }
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(Self(cur.clone()));
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < n - k + i {
                    cur[i] += 1;
                    for j in i + 1..k {
                        cur[j] = cur[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
