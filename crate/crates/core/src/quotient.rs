//! Graded quotients `R = E/I` with a standard-monomial basis.

use std::collections::HashMap;
use std::ops::Range;

use crate::element::{ExtElement, LinearForm};
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Q};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::hilbert::{HilbertSeries, MAX_HILBERT_VARS};
use crate::ideal::Ideal;
use crate::linalg::{sparse_axpy, sparse_from_unsorted, SparseVec};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;

/// `E/I` as a finite-dimensional graded algebra. Elements are sparse
/// coordinate vectors over [`QuotientAlgebra::basis`].
#[derive(Clone)]
pub struct QuotientAlgebra<K = Q> {
    n: usize,
    gb: GroebnerBasis<K>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    // basis indices of degree d are deg_start[d]..deg_start[d + 1]
    deg_start: Vec<usize>,
    // var_mul[i][j] = e_{i+1} * basis[j] in normal form
    var_mul: Vec<Vec<SparseVec<K>>>,
}

impl<K: Field> std::fmt::Debug for QuotientAlgebra<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuotientAlgebra(n={}, I={})", self.n, self.gb.to_ideal())
    }
}

impl<K: Field> QuotientAlgebra<K> {
    pub fn new(ideal: &Ideal<K>, order: &MonomialOrder) -> Result<Self> {
        if ideal.ambient() > MAX_HILBERT_VARS {
            return Err(Error::Refused(format!(
                "quotient algebras are limited to {MAX_HILBERT_VARS} variables"
            )));
        }
        Ok(Self::from_gb(buchberger(ideal, order)))
    }

    /// `E` itself.
    pub fn exterior(n: usize) -> Self {
        Self::new(&Ideal::zero(n), &MonomialOrder::degrevlex(n)).expect("small exterior algebra")
    }

    pub fn from_gb(gb: GroebnerBasis<K>) -> Self {
        let n = gb.ambient();
        let basis = gb.initial().standard_monomials();
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let top = basis.last().map_or(0, |m| m.degree());
        let mut deg_start = vec![0usize; top + 2];
        for d in 0..=top + 1 {
            deg_start[d] = basis.iter().position(|m| m.degree() >= d).unwrap_or(basis.len());
        }
        let mut alg = QuotientAlgebra { n, gb, basis, index, deg_start, var_mul: Vec::new() };
        let table: Vec<Vec<SparseVec<K>>> = (1..=n)
            .map(|i| {
                let x = Monomial::var(i);
                alg.basis
                    .iter()
                    .map(|&b| match x.mul(b) {
                        None => Vec::new(),
                        Some((s, p)) => {
                            let c = K::from_i64(s as i64);
                            match alg.index.get(&p) {
                                Some(&j) => vec![(j, c)],
                                None => alg.reduce(&ExtElement::term(n, p, c)),
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        alg.var_mul = table;
        alg
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn gb(&self) -> &GroebnerBasis<K> {
        &self.gb
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn top_degree(&self) -> usize {
        self.deg_start.len() - 2
    }

    /// Basis indices of degree `d` (empty beyond the top degree).
    pub fn degree_range(&self, d: usize) -> Range<usize> {
        if d + 1 >= self.deg_start.len() {
            return self.basis.len()..self.basis.len();
        }
        self.deg_start[d]..self.deg_start[d + 1]
    }

    pub fn dim_of_degree(&self, d: usize) -> usize {
        self.degree_range(d).len()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::new((0..=self.top_degree()).map(|d| self.dim_of_degree(d) as i64).collect())
    }

    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.index.get(&m).copied()
    }

    /// Normal form of `f` in basis coordinates.
    pub fn reduce(&self, f: &ExtElement<K>) -> SparseVec<K> {
        let r = self.gb.normal_form(f);
        sparse_from_unsorted(r.terms().map(|(m, c)| (self.index[&m], c.clone())).collect())
    }

    pub fn element(&self, v: &[(usize, K)]) -> ExtElement<K> {
        ExtElement::from_terms(self.n, v.iter().map(|(j, c)| (self.basis[*j], c.clone())))
    }

    /// `e_i * v`.
    pub fn mul_var(&self, i: usize, v: &[(usize, K)]) -> SparseVec<K> {
        let row = &self.var_mul[i - 1];
        let mut out: Vec<(usize, K)> = Vec::new();
        for (j, c) in v {
            for (k, d) in &row[*j] {
                out.push((*k, c.clone() * d.clone()));
            }
        }
        sparse_from_unsorted(out)
    }

    /// `m * v` for a monomial `m`.
    pub fn mul_monomial(&self, m: Monomial, v: &[(usize, K)]) -> SparseVec<K> {
        let vars: Vec<usize> = m.vars().collect();
        let mut acc = v.to_vec();
        for &i in vars.iter().rev() {
            if acc.is_empty() {
                break;
            }
            acc = self.mul_var(i, &acc);
        }
        acc
    }

    pub fn mul_linear(&self, l: &LinearForm<K>, v: &[(usize, K)]) -> SparseVec<K> {
        let mut out: Vec<(usize, K)> = Vec::new();
        for (i, c) in l.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, d) in self.mul_var(i + 1, v) {
                out.push((k, c.clone() * d));
            }
        }
        sparse_from_unsorted(out)
    }

    /// `f * v` for an arbitrary element `f` of `E`.
    pub fn mul_element(&self, f: &ExtElement<K>, v: &[(usize, K)]) -> SparseVec<K> {
        let mut acc: SparseVec<K> = Vec::new();
        for (m, c) in f.terms() {
            acc = sparse_axpy(&acc, c, &self.mul_monomial(m, v));
        }
        acc
    }

    /// Product of two elements in normal form.
    pub fn mul(&self, a: &[(usize, K)], b: &[(usize, K)]) -> SparseVec<K> {
        self.mul_element(&self.element(a), b)
    }

    /// Unit vector of basis element `j`.
    pub fn unit(&self, j: usize) -> SparseVec<K> {
        vec![(j, K::one())]
    }
}

impl QuotientAlgebra<Q> {
    /// The same structure constants modulo `P`; `None` if a denominator is
    /// divisible by `P`.
    pub fn reduce_mod<const P: u64>(&self) -> Option<QuotientAlgebra<Fp<P>>> {
        let gb = self.gb.reduce_mod::<P>()?;
        let mut var_mul = Vec::with_capacity(self.n);
        for row in &self.var_mul {
            let mut r = Vec::with_capacity(row.len());
            for v in row {
                let mut w = Vec::with_capacity(v.len());
                for (j, c) in v {
                    let c = Fp::<P>::from_rational(c)?;
                    if !c.is_zero() {
                        w.push((*j, c));
                    }
                }
                r.push(w);
            }
            var_mul.push(r);
        }
        Some(QuotientAlgebra {
            n: self.n,
            gb,
            basis: self.basis.clone(),
            index: self.index.clone(),
            deg_start: self.deg_start.clone(),
            var_mul,
        })
    }
}
