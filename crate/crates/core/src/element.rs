//! Elements of the exterior algebra `E = ⋀⟨e_1, …, e_n⟩`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::monomial::{Monomial, MAX_VARS};

/// A finite linear combination of monomials with nonzero coefficients.
///
/// Terms are kept in a sorted map keyed by the monomial bit pattern, which
/// fixes the iteration order (and hence printing) independently of any
/// monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElement<K = Q> {
    n: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> ExtElement<K> {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables");
        ExtElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::term(n, Monomial::ONE, K::one())
    }

    /// The variable `e_i` (1-based).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "variable e{i} outside 1..={n}");
        Self::term(n, Monomial::var(i), K::one())
    }

    pub fn term(n: usize, m: Monomial, c: K) -> Self {
        let mut f = Self::zero(n);
        assert!(m.max_var() <= n, "monomial {m} outside {n} variables");
        if !c.is_zero() {
            f.terms.insert(m, c);
        }
        f
    }

    pub fn monomial(n: usize, m: Monomial) -> Self {
        Self::term(n, m, K::one())
    }

    /// Builds an element from `(monomial, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut f = Self::zero(n);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &K)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// The support `Supp(f)`.
    pub fn support(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, m: Monomial) -> K {
        self.terms.get(&m).cloned().unwrap_or_else(K::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        debug_assert!(m.max_var() <= self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &K, other: &Self) {
        assert_eq!(self.n, other.n, "ambient mismatch");
        if c.is_zero() {
            return;
        }
        for (m, d) in other.terms() {
            self.add_term(m, c.clone() * d.clone());
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        ExtElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, d)| (*m, c.clone() * d.clone())).collect(),
        }
    }

    /// The degree of every term if they agree, `None` for zero or mixed elements.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Largest degree of a term, `None` for zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The part of degree `d`.
    pub fn component(&self, d: usize) -> Self {
        ExtElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Left multiplication by a signed monomial: `c * w * self`.
    pub fn mul_monomial_left(&self, w: Monomial, c: &K) -> Self {
        let mut out = Self::zero(self.n);
        for (m, d) in self.terms() {
            if let Some((s, p)) = w.mul(m) {
                let v = c.clone() * d.clone();
                out.add_term(p, if s < 0 { -v } else { v });
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::AmbientMismatch { left: self.n, right: rhs.n });
        }
        let mut out = Self::zero(self.n);
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                if let Some((s, p)) = u.mul(v) {
                    let c = a.clone() * b.clone();
                    out.add_term(p, if s < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::AmbientMismatch { left: self.n, right: rhs.n });
        }
        let mut out = self.clone();
        out.add_scaled(&K::one(), rhs);
        Ok(out)
    }

    /// Same element viewed in a larger exterior algebra.
    pub fn embed(&self, n: usize) -> Self {
        assert!(n >= self.max_index(), "cannot embed into {n} variables");
        ExtElement { n, terms: self.terms.clone() }
    }

    /// Largest variable index occurring in the support.
    pub fn max_index(&self) -> usize {
        self.terms.keys().map(|m| m.max_var()).max().unwrap_or(0)
    }

    /// Applies a coefficientwise map, dropping terms that become zero.
    pub fn map_coeffs<L: Field>(&self, mut f: impl FnMut(&K) -> L) -> ExtElement<L> {
        let mut out = ExtElement::zero(self.n);
        for (m, c) in self.terms() {
            out.add_term(m, f(c));
        }
        out
    }

    /// Re-indexes variables through `map` (1-based old index → 1-based new
    /// index) into an algebra on `n` variables. The caller guarantees `map`
    /// is strictly increasing on the variables present, so no re-sorting is
    /// needed.
    pub fn reindex(&self, n: usize, map: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(n);
        for (m, c) in self.terms() {
            let vars: Vec<usize> = m.vars().map(&map).collect();
            debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
            let mono = Monomial::from_vars(&vars).expect("injective reindexing");
            out.add_term(mono, c.clone());
        }
        out
    }
}

impl<K: Field> Add for &ExtElement<K> {
    type Output = ExtElement<K>;
    fn add(self, rhs: Self) -> ExtElement<K> {
        self.checked_add(rhs).expect("ambient mismatch in addition")
    }
}

impl<K: Field> Sub for &ExtElement<K> {
    type Output = ExtElement<K>;
    fn sub(self, rhs: Self) -> ExtElement<K> {
        assert_eq!(self.n, rhs.n, "ambient mismatch in subtraction");
        let mut out = self.clone();
        out.add_scaled(&-K::one(), rhs);
        out
    }
}

impl<K: Field> Neg for &ExtElement<K> {
    type Output = ExtElement<K>;
    fn neg(self) -> ExtElement<K> {
        self.scale(&-K::one())
    }
}

/// Panics on ambient mismatch; use [`ExtElement::checked_mul`] to get an error instead.
impl<K: Field> Mul for &ExtElement<K> {
    type Output = ExtElement<K>;
    fn mul(self, rhs: Self) -> ExtElement<K> {
        self.checked_mul(rhs).expect("ambient mismatch in product")
    }
}

impl<K: Field> fmt::Debug for ExtElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Prints in the grammar accepted by the expression parser, e.g.
/// `e1*e2 - 1/2*e3*e4 + 2`.
impl<K: Field> fmt::Display for ExtElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // lower degrees first, then by bit pattern
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|(m, _)| (m.degree(), std::cmp::Reverse(m.bits().reverse_bits())));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// An element of `E_1`, stored densely.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearForm<K = Q> {
    coeffs: Vec<K>,
}

impl<K: Field> LinearForm<K> {
    pub fn new(coeffs: Vec<K>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        LinearForm { coeffs: vec![K::zero(); n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut l = Self::zero(n);
        l.coeffs[i - 1] = K::one();
        l
    }

    /// Sum of the listed variables (1-based).
    pub fn sum_of_vars(n: usize, vars: &[usize]) -> Self {
        let mut l = Self::zero(n);
        for &i in vars {
            l.coeffs[i - 1] = l.coeffs[i - 1].clone() + K::one();
        }
        l
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        LinearForm { coeffs: coeffs.iter().map(|&c| K::from_i64(c)).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Coefficient of `e_i` (1-based).
    pub fn coeff(&self, i: usize) -> &K {
        &self.coeffs[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    /// 1-based indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.coeffs.len()).filter(|&i| !self.coeffs[i - 1].is_zero()).collect()
    }

    pub fn to_element(&self) -> ExtElement<K> {
        let n = self.coeffs.len();
        ExtElement::from_terms(
            n,
            self.coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i + 1), c.clone())),
        )
    }

    /// Reads the linear part of a degree-1 element.
    pub fn from_element(f: &ExtElement<K>) -> Result<Self> {
        if !f.is_zero() && f.homogeneous_degree() != Some(1) {
            return Err(Error::NotHomogeneous { expected: 1 });
        }
        let mut l = Self::zero(f.ambient());
        for (m, c) in f.terms() {
            l.coeffs[m.max_var() - 1] = c.clone();
        }
        Ok(l)
    }
}

impl<K: Field> fmt::Display for LinearForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_element())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp32003;

    fn e(n: usize, i: usize) -> ExtElement {
        ExtElement::var(n, i)
    }

    fn mono(v: &[usize]) -> Monomial {
        Monomial::from_vars(v).unwrap()
    }

    fn poly(n: usize, terms: &[(&[usize], i64)]) -> ExtElement {
        ExtElement::from_terms(n, terms.iter().map(|(v, c)| (mono(v), <Q as Field>::from_i64(*c))))
    }

    #[test]
    fn rank_two_witness_expansion() {
        let l = &e(4, 1) - &e(4, 4);
        let r = &e(4, 2) + &e(4, 3);
        let expected = poly(4, &[(&[1, 2], 1), (&[1, 3], 1), (&[2, 4], 1), (&[3, 4], 1)]);
        assert_eq!(&l * &r, expected);
    }

    #[test]
    fn thieu_factor_expansion() {
        let l = &e(4, 1) + &e(4, 4);
        let r = &e(4, 2) + &e(4, 3);
        let expected = poly(4, &[(&[1, 2], 1), (&[1, 3], 1), (&[2, 4], -1), (&[3, 4], -1)]);
        assert_eq!(&l * &r, expected);
    }

    #[test]
    fn unit_is_identity() {
        let f = poly(5, &[(&[1, 2], 3), (&[4], -2)]);
        assert_eq!(&f * &ExtElement::one(5), f);
        assert_eq!(&ExtElement::one(5) * &f, f);
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let err = e(3, 1).checked_mul(&e(4, 1)).unwrap_err();
        assert_eq!(err, Error::AmbientMismatch { left: 3, right: 4 });
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let f = &e(3, 1) - &e(3, 1);
        assert!(f.is_zero());
        assert_eq!(f.len(), 0);
        assert_eq!(ExtElement::<Q>::term(3, mono(&[1]), <Q as Field>::zero()).len(), 0);
    }

    #[test]
    fn homogeneity() {
        assert_eq!(poly(4, &[(&[1, 2], 1), (&[3, 4], 1)]).homogeneous_degree(), Some(2));
        assert_eq!(poly(4, &[(&[1, 2], 1), (&[3], 1)]).homogeneous_degree(), None);
    }

    #[test]
    fn printing() {
        let f = poly(4, &[(&[1, 2], 1), (&[3, 4], -2)]);
        assert_eq!(f.to_string(), "e1*e2 - 2*e3*e4");
        assert_eq!(ExtElement::<Q>::zero(2).to_string(), "0");
        let g = ExtElement::<Fp32003>::var(2, 2).scale(&Fp32003::new(-1));
        assert_eq!(g.to_string(), "-e2");
    }

    #[test]
    fn linear_form_roundtrip() {
        let l = LinearForm::<Q>::from_i64s(&[1, 0, -3, 2]);
        let f = l.to_element();
        assert_eq!(LinearForm::from_element(&f).unwrap(), l);
        assert_eq!(l.support(), vec![1, 3, 4]);
        assert!(LinearForm::from_element(&poly(4, &[(&[1, 2], 1)])).is_err());
    }
}
