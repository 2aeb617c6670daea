//! Squarefree exterior monomials as 64-bit sets.
//!
//! Bit `i - 1` stands for the variable `e_i`, so the canonical (strictly
//! increasing) variable sequence is simply the list of set bits.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 62;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u64) -> Self {
        Monomial(bits)
    }

    /// The variable `e_i`, 1-based.
    pub fn var(i: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&i), "variable index {i} out of range");
        Monomial(1 << (i - 1))
    }

    /// Builds the monomial of a set of 1-based indices. Repeated indices are
    /// rejected since the corresponding product vanishes.
    pub fn from_vars(vars: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in vars {
            if !(1..=MAX_VARS).contains(&i) {
                return Err(Error::VariableOutOfRange { index: i, n: MAX_VARS });
            }
            let b = 1u64 << (i - 1);
            if bits & b != 0 {
                return Err(Error::Usage(format!("variable e{i} repeated in monomial")));
            }
            bits |= b;
        }
        Ok(Monomial(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= MAX_VARS && self.0 & (1 << (i - 1)) != 0
    }

    /// Largest variable index present (1-based), 0 for the unit monomial.
    pub fn max_var(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// `self` divides `other`.
    pub fn divides(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    /// `self / other` as sets; caller guarantees `other` divides `self`.
    pub fn without(self, other: Monomial) -> Monomial {
        Monomial(self.0 & !other.0)
    }

    /// 1-based variable indices in increasing order.
    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i + 1)
            }
        })
    }

    /// Wedge product: `None` if the supports meet, otherwise the sign and
    /// the sorted product. The sign is `(-1)^k` with `k` the number of pairs
    /// `(a, b)` in `self x other` with `a > b`.
    pub fn mul(self, other: Monomial) -> Option<(i8, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for b in other.vars() {
            // variables of `self` strictly above index b
            let above = if b >= 64 { 0 } else { self.0 >> b };
            inversions += above.count_ones();
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial(self.0 | other.0)))
    }

    /// Monomials of a given degree in `n` variables, in increasing bit order.
    pub fn all_of_degree(n: usize, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d > n {
            return out;
        }
        if d == 0 {
            out.push(Monomial::ONE);
            return out;
        }
        // Gosper's hack over n-bit words
        let mut x: u64 = (1u64 << d) - 1;
        let limit: u64 = 1u64 << n;
        while x < limit {
            out.push(Monomial(x));
            let c = x & x.wrapping_neg();
            let r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `e1*e3*e4`, or `1` for the unit.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in self.vars() {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "e{i}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[usize]) -> Monomial {
        Monomial::from_vars(v).unwrap()
    }

    #[test]
    fn sorted_product_has_positive_sign() {
        assert_eq!(m(&[1]).mul(m(&[2])), Some((1, m(&[1, 2]))));
    }

    #[test]
    fn transposition_flips_sign() {
        assert_eq!(m(&[2]).mul(m(&[1])), Some((-1, m(&[1, 2]))));
    }

    #[test]
    fn one_inversion() {
        assert_eq!(m(&[1, 3]).mul(m(&[2])), Some((-1, m(&[1, 2, 3]))));
    }

    #[test]
    fn squares_vanish() {
        assert_eq!(m(&[1]).mul(m(&[1])), None);
        assert_eq!(m(&[1, 2]).mul(m(&[2, 5])), None);
    }

    #[test]
    fn unit_is_neutral() {
        assert_eq!(Monomial::ONE.mul(m(&[2, 4])), Some((1, m(&[2, 4]))));
        assert_eq!(m(&[2, 4]).mul(Monomial::ONE), Some((1, m(&[2, 4]))));
    }

    #[test]
    fn sign_matches_bubble_sort_parity() {
        // brute-force parity of sorting the concatenated index list
        for a in 0u64..64 {
            for b in 0u64..64 {
                let (u, v) = (Monomial(a), Monomial(b));
                let mut seq: Vec<usize> = u.vars().chain(v.vars()).collect();
                let expected = if a & b != 0 {
                    None
                } else {
                    let mut swaps = 0;
                    for i in 0..seq.len() {
                        for j in 0..seq.len() - 1 - i {
                            if seq[j] > seq[j + 1] {
                                seq.swap(j, j + 1);
                                swaps += 1;
                            }
                        }
                    }
                    Some((if swaps % 2 == 0 { 1 } else { -1 }, Monomial(a | b)))
                };
                assert_eq!(u.mul(v), expected, "{u} * {v}");
            }
        }
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(6, 3).len(), 20);
        assert_eq!(Monomial::all_of_degree(4, 0), vec![Monomial::ONE]);
        assert!(Monomial::all_of_degree(3, 4).is_empty());
        assert_eq!(Monomial::all_of_degree(62, 1).len(), 62);
    }

    #[test]
    fn display_and_divisibility() {
        assert_eq!(m(&[1, 3, 4]).to_string(), "e1*e3*e4");
        assert!(m(&[1, 3]).divides(m(&[1, 2, 3])));
        assert!(!m(&[1, 4]).divides(m(&[1, 2, 3])));
        assert_eq!(m(&[2, 7]).max_var(), 7);
    }
}
