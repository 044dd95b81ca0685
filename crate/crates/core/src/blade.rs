//! Basis blades `e^I` stored as bit masks (bit `i-1` for index `i`).

use std::cmp::Ordering;
use std::fmt;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Blade(u16);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_mask(mask: u16) -> Blade {
        Blade(mask)
    }

    /// Blade from 1-based indices in any order; `None` on a repeated index.
    /// The sign of the sorting permutation is returned alongside.
    pub fn from_indices(indices: &[usize]) -> Option<(Blade, i8)> {
        let mut acc = Blade::SCALAR;
        let mut sign = 1i8;
        for &i in indices {
            debug_assert!((1..=16).contains(&i));
            let s = acc.wedge_sign(Blade::single(i))?;
            sign *= s;
            acc = Blade(acc.0 | 1 << (i - 1));
        }
        Some((acc, sign))
    }

    pub fn single(i: usize) -> Blade {
        Blade(1 << (i - 1))
    }

    /// The top blade `e^{1..n}`.
    pub fn top(n: usize) -> Blade {
        Blade(((1u32 << n) - 1) as u16)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    /// Highest index present, 0 for the scalar blade.
    pub fn max_index(self) -> usize {
        16 - self.0.leading_zeros() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (1..=16).filter(|&i| self.contains(i)).collect()
    }

    /// Sign of `e^I ∧ e^J`, or `None` when the blades share an index.
    pub fn wedge_sign(self, other: Blade) -> Option<i8> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (i in self, j in other) with i > j
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            inversions += (self.0 >> (j + 1)).count_ones();
        }
        Some(if inversions % 2 == 0 { 1 } else { -1 })
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }

    pub fn without(self, i: usize) -> Blade {
        Blade(self.0 & !(1 << (i - 1)))
    }

    /// Number of indices of `self` strictly below `i`.
    pub fn rank_of(self, i: usize) -> usize {
        (self.0 & ((1u16 << (i - 1)) - 1)).count_ones() as usize
    }

    pub fn complement(self, n: usize) -> Blade {
        Blade(Blade::top(n).0 & !self.0)
    }

    /// `sgn(I, I^c)`, the sign in `*e^I = sgn(I, I^c) e^{I^c}`.
    pub fn hodge_sign(self, n: usize) -> i8 {
        self.wedge_sign(self.complement(n)).expect("disjoint by construction")
    }

    /// All blades of grade `k` in dimension `n`, in canonical order.
    pub fn all(n: usize, k: usize) -> Vec<Blade> {
        let mut out: Vec<Blade> = (0u32..(1 << n))
            .map(|m| Blade(m as u16))
            .filter(|b| b.grade() == k)
            .collect();
        out.sort();
        out
    }
}

impl Ord for Blade {
    /// Grade first, then lexicographic order of the sorted index tuples.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.grade().cmp(&other.grade()) {
            Ordering::Equal => {}
            o => return o,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(ix: &[usize]) -> Blade {
        Blade::from_indices(ix).unwrap().0
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(b(&[1]).wedge_sign(b(&[2])), Some(1));
        assert_eq!(b(&[2]).wedge_sign(b(&[1])), Some(-1));
        assert_eq!(b(&[1, 2]).wedge_sign(b(&[1, 2])), None);
        assert_eq!(Blade::from_indices(&[3, 1, 2]), Some((b(&[1, 2, 3]), 1)));
        assert_eq!(Blade::from_indices(&[2, 1, 3]), Some((b(&[1, 2, 3]), -1)));
    }

    #[test]
    fn hodge_sign_matches_inversion_count() {
        // (1,4,5,2,3,6,7) has four inversions
        assert_eq!(b(&[1, 4, 5]).hodge_sign(7), 1);
        assert_eq!(b(&[1, 2, 3]).hodge_sign(7), 1);
        assert_eq!(b(&[2]).hodge_sign(7), -1);
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let mut v = vec![b(&[3, 5, 6]), b(&[1, 6, 7]), b(&[1, 2, 3]), b(&[2, 4, 6]), b(&[1, 4, 5])];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["e123", "e145", "e167", "e246", "e356"]);
        assert_eq!(Blade::all(7, 3).len(), 35);
    }
}
