//! Hilbert series, truncated power series and the Fröberg test.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::buchberger;
use crate::ideal::{Ideal, MonomialIdeal};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;

/// Largest number of variables for which standard monomials are enumerated.
pub const MAX_HILBERT_VARS: usize = 24;

/// A polynomial with integer coefficients, indexed by degree. Trailing
/// zeros are trimmed, so equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HilbertSeries {
    coeffs: Vec<i64>,
}

impl HilbertSeries {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        HilbertSeries { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    /// `(1+t)^n`.
    pub fn one_plus_t_pow(n: usize) -> Self {
        let mut c = vec![1i64];
        for _ in 0..n {
            let mut next = vec![0i64; c.len() + 1];
            for (k, v) in c.iter().enumerate() {
                next[k] += v;
                next[k + 1] += v;
            }
            c = next;
        }
        Self::new(c)
    }

    /// Parses a comma-separated coefficient list such as `1,4,5`.
    pub fn parse_list(text: &str) -> Result<Self> {
        text.split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad coefficient '{s}': {e}"))))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Degree of the polynomial (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Value at `t = 1`, the total dimension.
    pub fn total(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut c = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    /// Exact quotient by `1+t`, if it divides.
    pub fn div_one_plus_t(&self) -> Option<Self> {
        if self.coeffs.is_empty() {
            return Some(Self::default());
        }
        let mut rest = self.coeffs.clone();
        let mut q = vec![0i64; rest.len() - 1];
        for k in (1..rest.len()).rev() {
            q[k - 1] = rest[k];
            rest[k - 1] -= rest[k];
            rest[k] = 0;
        }
        (rest[0] == 0).then(|| Self::new(q))
    }

    /// Largest `k` with `(1+t)^k` dividing the series.
    pub fn one_plus_t_multiplicity(&self) -> usize {
        let mut h = self.clone();
        let mut k = 0;
        while !h.coeffs.is_empty() {
            match h.div_one_plus_t() {
                Some(q) => {
                    h = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }
}

impl fmt::Debug for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `1 + 7t + 15t^2 + 10t^3 + t^4`.
impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|&c| BigInt::from(c)))
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: impl Iterator<Item = BigInt>) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        let one = mag == BigInt::from(1);
        match (k, one) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "t")?,
            (1, false) => write!(f, "{mag}t")?,
            (_, true) => write!(f, "t^{k}")?,
            (_, false) => write!(f, "{mag}t^{k}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Coefficients through degree `bound` of a power series with integer
/// coefficients; the truncation bound is part of the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.is_negative())
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().cloned())?;
        write!(f, " + O(t^{})", self.coeffs.len())
    }
}

/// `1/h(t)` through degree `bound`; requires `h(0) = 1`.
pub fn inverse_series(h: &HilbertSeries, bound: usize) -> Result<PowerSeries> {
    if h.coeff(0) != 1 {
        return Err(Error::Usage("series inversion needs constant term 1".into()));
    }
    let mut c: Vec<BigInt> = Vec::with_capacity(bound + 1);
    c.push(BigInt::from(1));
    for k in 1..=bound {
        let mut s = BigInt::zero();
        for i in 1..=k.min(h.degree()) {
            s += BigInt::from(h.coeff(i)) * &c[k - i];
        }
        c.push(-s);
    }
    Ok(PowerSeries { coeffs: c })
}

/// Result of the Fröberg test: the coefficients of `1/h(-t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobergInverse {
    pub series: PowerSeries,
    pub first_negative: Option<usize>,
}

impl FrobergInverse {
    /// A negative coefficient rules out Koszulness.
    pub fn refutes_koszul(&self) -> bool {
        self.first_negative.is_some()
    }
}

pub fn froberg_inverse(h: &HilbertSeries, bound: usize) -> Result<FrobergInverse> {
    let alt = HilbertSeries::new(
        h.coeffs().iter().enumerate().map(|(k, &c)| if k % 2 == 1 { -c } else { c }).collect(),
    );
    let series = inverse_series(&alt, bound)?;
    let first_negative = series.first_negative();
    Ok(FrobergInverse { series, first_negative })
}

/// `HS_E(t) = (1+t)^n`.
pub fn ambient_hilbert(n: usize) -> HilbertSeries {
    HilbertSeries::one_plus_t_pow(n)
}

/// Calls `visit` on every monomial outside `j`.
pub fn for_each_standard_monomial(j: &MonomialIdeal, mut visit: impl FnMut(Monomial)) {
    fn go(
        n: usize,
        next: usize,
        cur: u64,
        gens: &[u64],
        visit: &mut dyn FnMut(Monomial),
    ) {
        visit(Monomial::from_bits(cur));
        for v in next..n {
            let m = cur | 1u64 << v;
            // only generators containing v can newly divide m
            if gens.iter().any(|&g| g & (1u64 << v) != 0 && g & !m == 0) {
                continue;
            }
            go(n, v + 1, m, gens, visit);
        }
    }
    let gens: Vec<u64> = j.generators().iter().map(|g| g.bits()).collect();
    if gens.contains(&0) {
        return;
    }
    go(j.ambient(), 0, 0, &gens, &mut visit);
}

pub(crate) fn monomial_quotient_hilbert(j: &MonomialIdeal) -> Result<HilbertSeries> {
    let n = j.ambient();
    if n > MAX_HILBERT_VARS {
        return Err(Error::Refused(format!(
            "Hilbert series by standard monomials is limited to {MAX_HILBERT_VARS} variables (got {n})"
        )));
    }
    let mut c = vec![0i64; n + 1];
    for_each_standard_monomial(j, |m| c[m.degree()] += 1);
    Ok(HilbertSeries::new(c))
}

/// `HS_{E/I}` from the standard monomials of `in_<(I)`.
pub fn hilbert_series<K: Field>(ideal: &Ideal<K>, order: &MonomialOrder) -> Result<HilbertSeries> {
    if ideal.ambient() > MAX_HILBERT_VARS {
        return Err(Error::Refused(format!(
            "Hilbert series by standard monomials is limited to {MAX_HILBERT_VARS} variables (got {})",
            ideal.ambient()
        )));
    }
    buchberger(ideal, order).hilbert_series()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(c: &[i64]) -> HilbertSeries {
        HilbertSeries::new(c.to_vec())
    }

    #[test]
    fn ambient_series_are_binomial() {
        assert_eq!(ambient_hilbert(0), hs(&[1]));
        assert_eq!(ambient_hilbert(4), hs(&[1, 4, 6, 4, 1]));
        assert_eq!(ambient_hilbert(6), hs(&[1, 6, 15, 20, 15, 6, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(hs(&[1, 7, 15, 10, 1]).to_string(), "1 + 7t + 15t^2 + 10t^3 + t^4");
        assert_eq!(hs(&[]).to_string(), "0");
    }

    #[test]
    fn froberg_principal_quadric() {
        let r = froberg_inverse(&hs(&[1, 4, 5]), 6).unwrap();
        assert_eq!(r.series.to_i64s().unwrap(), vec![1, 4, 11, 24, 41, 44, -29]);
        assert_eq!(r.first_negative, Some(6));
    }

    #[test]
    fn froberg_of_free_algebra_is_binomial() {
        let r = froberg_inverse(&ambient_hilbert(5), 10).unwrap();
        for k in 0..=10u64 {
            let expected = (1..=k).fold(1u64, |acc, i| acc * (5 + i - 1) / i);
            assert_eq!(r.series.coeff(k as usize), &BigInt::from(expected));
        }
        assert!(r.first_negative.is_none());
    }

    #[test]
    fn froberg_two_triangles() {
        let r = froberg_inverse(&hs(&[1, 6, 9]), 12).unwrap();
        for k in 0..=12u32 {
            assert_eq!(r.series.coeff(k as usize), &BigInt::from((k as i64 + 1) * 3i64.pow(k)));
        }
    }

    #[test]
    fn division_by_one_plus_t() {
        let h = hs(&[1, 7, 15, 10, 1]);
        assert_eq!(h.div_one_plus_t(), Some(hs(&[1, 6, 9, 1])));
        assert_eq!(hs(&[1, 6, 9, 1]).div_one_plus_t(), None);
        assert_eq!(ambient_hilbert(5).one_plus_t_multiplicity(), 5);
    }

    #[test]
    fn too_many_variables_refused() {
        let j = MonomialIdeal::new(30, std::iter::empty());
        assert!(matches!(j.hilbert_series(), Err(Error::Refused(_))));
    }
}
