//! Graded ideals and monomial ideals of `E`.

use std::fmt;

use crate::element::ExtElement;
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Q};
use crate::hilbert::HilbertSeries;
use crate::monomial::{Monomial, MAX_VARS};

/// An ideal given by homogeneous generators. Zero generators are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal<K = Q> {
    n: usize,
    gens: Vec<ExtElement<K>>,
}

impl<K: Field> Ideal<K> {
    pub fn new(n: usize, gens: Vec<ExtElement<K>>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::TooManyVariables { got: n, max: MAX_VARS });
        }
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.ambient() != n {
                return Err(Error::AmbientMismatch { left: n, right: g.ambient() });
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::Usage(format!("generator {g} is not homogeneous")));
            }
            kept.push(g);
        }
        Ok(Ideal { n, gens: kept })
    }

    pub fn zero(n: usize) -> Self {
        Ideal { n, gens: Vec::new() }
    }

    pub fn from_monomials(n: usize, monomials: &[Monomial]) -> Result<Self> {
        Self::new(n, monomials.iter().map(|&m| ExtElement::monomial(n, m)).collect())
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[ExtElement<K>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True if every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.len() == 1)
    }

    pub fn max_generator_degree(&self) -> usize {
        self.gens.iter().filter_map(|g| g.homogeneous_degree()).max().unwrap_or(0)
    }

    pub fn with_generator(&self, g: ExtElement<K>) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.push(g);
        Self::new(self.n, gens)
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> Ideal<L> {
        Ideal::new(self.n, self.gens.iter().map(|g| g.map_coeffs(&f)).collect())
            .expect("coefficient maps preserve homogeneity")
    }
}

impl Ideal<Q> {
    /// Reduction modulo `P`; `None` if some coefficient has `P` in its denominator.
    pub fn reduce_mod<const P: u64>(&self) -> Option<Ideal<Fp<P>>> {
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut h = ExtElement::zero(self.n);
            for (m, c) in g.terms() {
                h.add_term(m, Fp::<P>::from_rational(c)?);
            }
            gens.push(h);
        }
        Some(Ideal::new(self.n, gens).expect("reduction preserves homogeneity"))
    }
}

impl<K: Field> fmt::Debug for Ideal<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: Field> fmt::Display for Ideal<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// A monomial ideal stored by its minimal generators, sorted by bit pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes the given generating set.
    pub fn new(n: usize, monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = monomials.into_iter().collect();
        assert!(all.iter().all(|m| m.max_var() <= n), "monomial outside {n} variables");
        all.sort_by_key(|m| (m.degree(), m.bits()));
        all.dedup();
        let mut gens: Vec<Monomial> = Vec::new();
        for m in all {
            if !gens.iter().any(|g| g.divides(m)) {
                gens.push(m);
            }
        }
        gens.sort();
        MonomialIdeal { n, gens }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Hilbert series of `E/J`.
    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        crate::hilbert::monomial_quotient_hilbert(self)
    }

    /// Monomials outside the ideal, ordered by degree then bit pattern.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        crate::hilbert::for_each_standard_monomial(self, |m| out.push(m));
        out.sort_by_key(|m| (m.degree(), m.bits()));
        out
    }

    pub fn to_ideal<K: Field>(&self) -> Ideal<K> {
        Ideal::from_monomials(self.n, &self.gens).expect("monomials are homogeneous")
    }

    pub fn is_quadratic(&self) -> bool {
        self.gens.iter().all(|g| g.degree() == 2)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut g = self.gens.clone();
        g.sort_by_key(|m| (m.degree(), std::cmp::Reverse(m.bits().reverse_bits())));
        let g: Vec<String> = g.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[usize]) -> Monomial {
        Monomial::from_vars(v).unwrap()
    }

    #[test]
    fn minimal_generators_form_an_antichain() {
        let j = MonomialIdeal::new(4, [m(&[1, 2]), m(&[1, 2, 3]), m(&[3, 4]), m(&[1, 2])]);
        assert_eq!(j.generators(), &[m(&[1, 2]), m(&[3, 4])]);
        assert!(j.contains(m(&[1, 2, 4])));
        assert!(!j.contains(m(&[1, 3])));
    }

    #[test]
    fn zero_generators_dropped() {
        let i = Ideal::<Q>::new(3, vec![ExtElement::zero(3), ExtElement::var(3, 1)]).unwrap();
        assert_eq!(i.generators().len(), 1);
    }

    #[test]
    fn inhomogeneous_generator_rejected() {
        let g = &ExtElement::<Q>::var(3, 1) + &(&ExtElement::var(3, 2) * &ExtElement::var(3, 3));
        assert!(Ideal::new(3, vec![g]).is_err());
    }

    #[test]
    fn display_orders_generators() {
        let j = MonomialIdeal::new(4, [m(&[3, 4]), m(&[1, 2])]);
        assert_eq!(j.to_string(), "(e1*e2, e3*e4)");
    }
}
