//! Quadrics in `E_2`: alternating matrices, Pfaffians, rank, the leading-term
//! decomposition into products of linear forms, rank-2 members of pencils and
//! random spans, and generic quadric ideals.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::element::{ExtElement, LinearForm};
use crate::error::{Error, Result};
use crate::field::{rational_sqrt, Field, Q};
use crate::groebner::leading_monomial;
use crate::ideal::Ideal;
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;

/// `q = Σ_{i<j} a_{ij} e_i e_j`, stored as the full alternating matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingMatrix<K = Q> {
    matrix: Matrix<K>,
}

impl<K: Field> AlternatingMatrix<K> {
    pub fn zeros(n: usize) -> Self {
        AlternatingMatrix { matrix: Matrix::zeros(n, n) }
    }

    /// Entries `a_{ij}`, `i < j`, listed row by row.
    pub fn from_upper(n: usize, upper: &[K]) -> Result<Self> {
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::Usage(format!("expected {} entries", n * n.saturating_sub(1) / 2)));
        }
        let mut a = Self::zeros(n);
        let mut k = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                a.set(i, j, upper[k].clone());
                k += 1;
            }
        }
        Ok(a)
    }

    pub fn from_quadric(q: &ExtElement<K>) -> Result<Self> {
        if !q.is_zero() && q.homogeneous_degree() != Some(2) {
            return Err(Error::Usage(format!("{q} is not a quadric")));
        }
        let mut a = Self::zeros(q.ambient());
        for (m, c) in q.terms() {
            let v: Vec<usize> = m.vars().collect();
            a.set(v[0], v[1], c.clone());
        }
        Ok(a)
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    /// `a_{ij}` with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> &K {
        self.matrix.get(i - 1, j - 1)
    }

    /// Sets `a_{ij} = c` and `a_{ji} = -c`.
    pub fn set(&mut self, i: usize, j: usize, c: K) {
        assert_ne!(i, j, "diagonal of an alternating matrix is zero");
        self.matrix.set(j - 1, i - 1, -c.clone());
        self.matrix.set(i - 1, j - 1, c);
    }

    pub fn matrix(&self) -> &Matrix<K> {
        &self.matrix
    }

    pub fn to_quadric(&self) -> ExtElement<K> {
        let n = self.size();
        let mut q = ExtElement::zero(n);
        for i in 1..=n {
            for j in i + 1..=n {
                let c = self.get(i, j);
                if !c.is_zero() {
                    q.add_term(Monomial::from_vars(&[i, j]).expect("distinct"), c.clone());
                }
            }
        }
        q
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn det(&self) -> K {
        self.matrix.det()
    }

    /// Pfaffian by expansion along the first row, memoised on index sets.
    pub fn pfaffian(&self) -> Result<K> {
        let n = self.size();
        if n % 2 == 1 {
            return Err(Error::Usage(format!("Pfaffian of an odd ({n}×{n}) matrix")));
        }
        if n > 62 {
            return Err(Error::TooManyVariables { got: n, max: 62 });
        }
        let mut memo = HashMap::new();
        let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        Ok(self.pf(all, &mut memo))
    }

    fn pf(&self, mask: u64, memo: &mut HashMap<u64, K>) -> K {
        if mask == 0 {
            return K::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut acc = K::zero();
        let mut sign = true;
        let mut r = rest;
        while r != 0 {
            let j = r.trailing_zeros() as usize;
            r &= r - 1;
            let a = self.matrix.get(i, j);
            if !a.is_zero() {
                let term = a.clone() * self.pf(rest & !(1 << j), memo);
                acc = if sign { acc + term } else { acc - term };
            }
            sign = !sign;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Principal submatrix on the given (1-based) indices.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let mut a = Self::zeros(idx.len());
        for (x, &i) in idx.iter().enumerate() {
            for (y, &j) in idx.iter().enumerate().skip(x + 1) {
                a.set(x + 1, y + 1, self.get(i, j).clone());
            }
        }
        a
    }
}

pub fn rank<K: Field>(q: &ExtElement<K>) -> Result<usize> {
    Ok(AlternatingMatrix::from_quadric(q)?.rank())
}

/// One term `α (e_i + ℓ_1)(e_j + ℓ_2)` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricFactor<K = Q> {
    pub alpha: K,
    pub left: LinearForm<K>,
    pub right: LinearForm<K>,
    /// Leading variables `(i, j)` of `left` and `right`.
    pub leading: (usize, usize),
}

impl<K: Field> QuadricFactor<K> {
    pub fn product(&self) -> ExtElement<K> {
        (&self.left.to_element() * &self.right.to_element()).scale(&self.alpha)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricDecomposition<K = Q> {
    pub factors: Vec<QuadricFactor<K>>,
    pub order: MonomialOrder,
}

impl<K: Field> QuadricDecomposition<K> {
    pub fn recompose(&self, n: usize) -> ExtElement<K> {
        let mut q = ExtElement::zero(n);
        for f in &self.factors {
            q.add_scaled(&K::one(), &f.product());
        }
        q
    }
}

impl<K: Field> fmt::Display for QuadricDecomposition<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        for (k, x) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let (l, r) = (x.left.to_element(), x.right.to_element());
            if x.alpha.is_one() {
                write!(f, "({l})({r})")?;
            } else {
                write!(f, "({})({l})({r})", x.alpha)?;
            }
        }
        Ok(())
    }
}

fn contraction<K: Field>(a: &AlternatingMatrix<K>, p: usize) -> Vec<K> {
    (1..=a.size()).map(|j| if j == p { K::zero() } else { a.get(p, j).clone() }).collect()
}

/// Peels off `α (e_p + ℓ_1)(e_s + ℓ_2)` for the leading monomial `e_p e_s`
/// (`e_p > e_s`) until nothing is left. Each step removes both leading
/// variables, so the number of factors is `rank(q)/2`.
pub fn decompose<K: Field>(q: &ExtElement<K>, order: &MonomialOrder) -> Result<QuadricDecomposition<K>> {
    let n = q.ambient();
    if order.ambient() != n {
        return Err(Error::AmbientMismatch { left: n, right: order.ambient() });
    }
    let mut a = AlternatingMatrix::from_quadric(q)?;
    let mut factors = Vec::new();
    loop {
        let c = a.to_quadric();
        let Some(lm) = leading_monomial(&c, order) else { break };
        let v: Vec<usize> = lm.vars().collect();
        let (p, s) = if order.var_greater(v[0], v[1]) { (v[0], v[1]) } else { (v[1], v[0]) };
        let alpha = a.get(p, s).clone();
        let inv = alpha.inv().expect("leading coefficient");
        let neg_inv = -inv.clone();
        // ι_s ω = -α e_p + …, ι_p ω = α e_s + …
        let left = LinearForm::new(contraction(&a, s).into_iter().map(|x| x * neg_inv.clone()).collect());
        let right = LinearForm::new(contraction(&a, p).into_iter().map(|x| x * inv.clone()).collect());
        let factor = QuadricFactor { alpha, left, right, leading: (p, s) };
        let rest = &c - &factor.product();
        a = AlternatingMatrix::from_quadric(&rest)?;
        factors.push(factor);
    }
    Ok(QuadricDecomposition { factors, order: order.clone() })
}

/// The two linear factors of a rank-2 quadric.
pub fn rank2_factors<K: Field>(q: &ExtElement<K>) -> Result<Option<(LinearForm<K>, LinearForm<K>)>> {
    let d = decompose(q, &MonomialOrder::degrevlex(q.ambient()))?;
    if d.factors.len() != 1 {
        return Ok(None);
    }
    let f = &d.factors[0];
    Ok(Some((LinearForm::new(f.left.coeffs().iter().map(|c| c.clone() * f.alpha.clone()).collect()), f.right.clone())))
}

/// A pencil member of rank at most 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilWitness {
    /// `None` stands for `λ = ∞`, i.e. `q_2` itself.
    pub lambda: Option<Q>,
    pub quadric: ExtElement<Q>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilRoot {
    /// Every member of the pencil has rank at most 2.
    IdenticallyDeficient,
    Rational(Vec<PencilWitness>),
    /// `c_2 λ² + c_1 λ + c_0` is irreducible over the rationals.
    Irrational { coefficients: [Q; 3], discriminant: Q },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilAnalysis {
    /// Variables spanned by the two quadrics (padded to four).
    pub variables: Vec<usize>,
    /// `Pf(A_1 + λ A_2) = c_0 + c_1 λ + c_2 λ²`.
    pub pfaffian: [Q; 3],
    pub root: PencilRoot,
}

impl PencilAnalysis {
    pub fn witnesses(&self) -> &[PencilWitness] {
        match &self.root {
            PencilRoot::Rational(w) => w,
            _ => &[],
        }
    }
}

impl fmt::Display for PencilAnalysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2] = &self.pfaffian;
        writeln!(f, "Pf(A1 + λ A2) = {c0} + ({c1})λ + ({c2})λ^2")?;
        match &self.root {
            PencilRoot::IdenticallyDeficient => write!(f, "every member has rank ≤ 2"),
            PencilRoot::Rational(ws) => {
                for (k, w) in ws.iter().enumerate() {
                    if k > 0 {
                        writeln!(f)?;
                    }
                    match &w.lambda {
                        Some(l) => write!(f, "λ = {l}: {} (rank {})", w.quadric, w.rank)?,
                        None => write!(f, "λ = ∞: {} (rank {})", w.quadric, w.rank)?,
                    }
                }
                Ok(())
            }
            PencilRoot::Irrational { discriminant, .. } => {
                let kind = if discriminant < &Q::from_integer(0.into()) { "complex" } else { "real irrational" };
                write!(f, "no rational root; discriminant {discriminant}; {kind} roots")
            }
        }
    }
}

/// Rank-2 members of `q_1 + λ q_2` for quadrics involving at most four
/// variables, from the roots of the quadratic `Pf(A_1 + λ A_2)`. The member
/// `λ = ∞` is checked separately.
pub fn rank2_in_pencil(q1: &ExtElement<Q>, q2: &ExtElement<Q>) -> Result<PencilAnalysis> {
    let n = q1.ambient();
    if q2.ambient() != n {
        return Err(Error::AmbientMismatch { left: n, right: q2.ambient() });
    }
    let a1 = AlternatingMatrix::from_quadric(q1)?;
    let a2 = AlternatingMatrix::from_quadric(q2)?;
    if AlternatingMatrix::from_quadric(&(q1 + q2))?.matrix().rank() == 0
        || Matrix::from_rows(vec![flatten(&a1), flatten(&a2)]).rank() < 2
    {
        return Err(Error::Usage("the two quadrics must be linearly independent".into()));
    }
    let mut vars: Vec<usize> = q1.terms().chain(q2.terms()).flat_map(|(m, _)| m.vars()).collect();
    vars.sort_unstable();
    vars.dedup();
    if vars.len() > 4 {
        return Err(Error::Usage(format!("the pencil involves {} variables; at most 4 are allowed", vars.len())));
    }
    if n < 4 {
        return Err(Error::Usage("pencils need at least 4 variables".into()));
    }
    for v in 1..=n {
        if vars.len() == 4 {
            break;
        }
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort_unstable();
    let (b1, b2) = (a1.restrict(&vars), a2.restrict(&vars));
    let c0 = b1.pfaffian()?;
    let c2 = b2.pfaffian()?;
    let mut sum = b1.clone();
    for i in 1..=4 {
        for j in i + 1..=4 {
            sum.set(i, j, b1.get(i, j).clone() + b2.get(i, j).clone());
        }
    }
    let c1 = sum.pfaffian()? - c0.clone() - c2.clone();
    let zero = Q::from_integer(0.into());
    let pfaffian = [c0.clone(), c1.clone(), c2.clone()];
    if c0 == zero && c1 == zero && c2 == zero {
        return Ok(PencilAnalysis { variables: vars, pfaffian, root: PencilRoot::IdenticallyDeficient });
    }
    let mut lambdas: Vec<Option<Q>> = Vec::new();
    if c2 == zero {
        if c1 != zero {
            lambdas.push(Some(-c0.clone() / c1.clone()));
        }
        lambdas.push(None);
    } else {
        let disc = c1.clone() * c1.clone() - Q::from_integer(4.into()) * c0.clone() * c2.clone();
        match rational_sqrt(&disc) {
            None => {
                return Ok(PencilAnalysis {
                    variables: vars,
                    pfaffian,
                    root: PencilRoot::Irrational { coefficients: [c0, c1, c2], discriminant: disc },
                })
            }
            Some(r) => {
                let two = Q::from_integer(2.into()) * c2.clone();
                let mut roots = vec![(-c1.clone() - r.clone()) / two.clone(), (-c1.clone() + r) / two];
                roots.sort();
                roots.dedup();
                lambdas.extend(roots.into_iter().map(Some));
            }
        }
    }
    let witnesses = lambdas
        .into_iter()
        .map(|lambda| {
            let quadric = match &lambda {
                Some(l) => q1 + &q2.scale(l),
                None => q2.clone(),
            };
            let rank = rank(&quadric).expect("quadric");
            PencilWitness { lambda, quadric, rank }
        })
        .collect();
    Ok(PencilAnalysis { variables: vars, pfaffian, root: PencilRoot::Rational(witnesses) })
}

fn flatten<K: Field>(a: &AlternatingMatrix<K>) -> Vec<K> {
    let n = a.size();
    let mut v = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            v.push(a.get(i, j).clone());
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinRankReport<K: Field = Q> {
    pub min_rank: usize,
    /// Coefficients of the minimising combination of the spanning quadrics.
    pub coefficients: Vec<K>,
    pub witness: ExtElement<K>,
    /// Number of combinations examined.
    pub examined: usize,
}

const SAMPLE_CHUNK: usize = 1024;

/// Smallest rank among the generators, their pairwise sums and differences,
/// and `samples` random combinations with coefficients in `[-100, 100]`.
/// A low rank is certified by its witness; a high minimum is evidence only.
pub fn min_rank_sample<K: Field>(span: &[ExtElement<K>], samples: usize, seed: u64) -> Result<MinRankReport<K>> {
    let Some(first) = span.first() else {
        return Err(Error::Usage("empty span".into()));
    };
    let n = first.ambient();
    let mats: Vec<AlternatingMatrix<K>> =
        span.iter().map(AlternatingMatrix::from_quadric).collect::<Result<_>>()?;
    if let Some(m) = mats.iter().find(|m| m.size() != n) {
        return Err(Error::AmbientMismatch { left: n, right: m.size() });
    }
    let t = span.len();
    let combine = |c: &[K]| -> Option<(usize, Vec<K>)> {
        let mut m: Matrix<K> = Matrix::zeros(n, n);
        for (a, x) in mats.iter().zip(c) {
            if x.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    let v = m.get(i, j).clone() + a.matrix().get(i, j).clone() * x.clone();
                    m.set(i, j, v);
                }
            }
        }
        let r = m.rank();
        (r > 0).then(|| (r, c.to_vec()))
    };
    let mut fixed: Vec<Vec<K>> = Vec::new();
    for i in 0..t {
        let mut c = vec![K::zero(); t];
        c[i] = K::one();
        fixed.push(c);
    }
    for i in 0..t {
        for j in i + 1..t {
            for s in [1, -1] {
                let mut c = vec![K::zero(); t];
                c[i] = K::one();
                c[j] = K::from_i64(s);
                fixed.push(c);
            }
        }
    }
    let mut best: Option<(usize, Vec<K>)> =
        fixed.iter().filter_map(|c| combine(c)).min_by_key(|(r, _)| *r);
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    let sampled: Vec<Option<(usize, Vec<K>)>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let count = SAMPLE_CHUNK.min(samples - k * SAMPLE_CHUNK);
            (0..count)
                .filter_map(|_| {
                    let c: Vec<K> = (0..t).map(|_| K::from_i64(rng.gen_range(-100..=100))).collect();
                    combine(&c)
                })
                .min_by_key(|(r, _)| *r)
        })
        .collect();
    for s in sampled.into_iter().flatten() {
        if best.as_ref().map_or(true, |(r, _)| s.0 < *r) {
            best = Some(s);
        }
    }
    let (min_rank, coefficients) = best.ok_or_else(|| Error::Usage("the span is zero".into()))?;
    let mut witness = ExtElement::zero(n);
    for (q, c) in span.iter().zip(&coefficients) {
        witness.add_scaled(c, q);
    }
    Ok(MinRankReport { min_rank, coefficients, witness, examined: fixed.len() + samples })
}

/// `t` quadrics in `n` variables with independent uniform coefficients in
/// `[-bound, bound]`.
pub fn generic_quadrics<K: Field>(n: usize, t: usize, seed: u64, bound: i64) -> Result<Ideal<K>> {
    if bound < 1 {
        return Err(Error::Usage("the coefficient bound must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monomials = Monomial::all_of_degree(n, 2);
    let gens = (0..t)
        .map(|_| {
            ExtElement::from_terms(n, monomials.iter().map(|&m| (m, K::from_i64(rng.gen_range(-bound..=bound)))))
        })
        .collect();
    Ideal::new(n, gens)
}

/// Whether `t ≤ (n-2r+1)(n-2r+2)/2`, the largest dimension of a space of
/// quadrics in `n` variables all of whose nonzero members can have rank at
/// least `2r`.
pub fn rank_bound(n: usize, r: usize, t: usize) -> bool {
    let m = n as i64 - 2 * r as i64;
    let cap = if m + 1 < 0 { 0 } else { (m + 1) * (m + 2) / 2 };
    (t as i64) <= cap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    fn quad(n: usize, terms: &[(i64, usize, usize)]) -> ExtElement {
        ExtElement::from_terms(n, terms.iter().map(|&(c, i, j)| (Monomial::from_vars(&[i, j]).unwrap(), rational(c, 1))))
    }

    #[test]
    fn ranks_of_small_quadrics() {
        assert_eq!(rank(&quad(4, &[(1, 1, 2)])).unwrap(), 2);
        assert_eq!(rank(&quad(4, &[(1, 1, 2), (1, 3, 4)])).unwrap(), 4);
        assert_eq!(rank(&quad(4, &[(1, 1, 2), (1, 1, 3), (1, 2, 4), (1, 3, 4)])).unwrap(), 2);
        assert!(rank(&ExtElement::<Q>::var(3, 1)).is_err());
    }

    #[test]
    fn pfaffian_four() {
        let a = AlternatingMatrix::from_quadric(&quad(4, &[(1, 1, 2), (1, 3, 4)])).unwrap();
        assert_eq!(a.pfaffian().unwrap(), rational(1, 1));
        let b = AlternatingMatrix::from_quadric(&quad(4, &[(2, 1, 2), (3, 1, 3), (5, 1, 4), (7, 2, 3), (11, 2, 4), (13, 3, 4)]))
            .unwrap();
        // a12 a34 - a13 a24 + a14 a23
        assert_eq!(b.pfaffian().unwrap(), rational(2 * 13 - 3 * 11 + 5 * 7, 1));
        assert!(AlternatingMatrix::<Q>::zeros(3).pfaffian().is_err());
    }

    #[test]
    fn decomposition_example() {
        let q = quad(4, &[(1, 1, 2), (1, 1, 3), (1, 2, 4)]);
        let d = decompose(&q, &MonomialOrder::degrevlex(4)).unwrap();
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.factors[0].left, LinearForm::from_i64s(&[1, 0, 0, -1]));
        assert_eq!(d.factors[0].right, LinearForm::from_i64s(&[0, 1, 1, 0]));
        assert_eq!(d.recompose(4), q);
        assert_eq!(d.factors[1].product(), quad(4, &[(-1, 3, 4)]));
    }

    #[test]
    fn split_form_decomposes_into_itself() {
        let q = quad(4, &[(1, 1, 2), (1, 3, 4)]);
        let d = decompose(&q, &MonomialOrder::degrevlex(4)).unwrap();
        assert_eq!(d.factors[0].leading, (1, 2));
        assert_eq!(d.factors[1].leading, (3, 4));
        assert_eq!(d.to_string(), "(e1)(e2) + (e3)(e4)");
    }

    #[test]
    fn pencils() {
        let q1 = quad(4, &[(1, 1, 2), (1, 3, 4)]);
        let p = rank2_in_pencil(&q1, &quad(4, &[(1, 1, 3), (1, 2, 4)])).unwrap();
        assert_eq!(p.pfaffian, [rational(1, 1), rational(0, 1), rational(-1, 1)]);
        let lambdas: Vec<_> = p.witnesses().iter().map(|w| w.lambda.clone()).collect();
        assert_eq!(lambdas, vec![Some(rational(-1, 1)), Some(rational(1, 1))]);
        assert!(p.witnesses().iter().all(|w| w.rank == 2));

        let p = rank2_in_pencil(&quad(4, &[(1, 1, 2)]), &quad(4, &[(1, 3, 4)])).unwrap();
        assert_eq!(p.witnesses()[0].lambda, Some(rational(0, 1)));

        let p = rank2_in_pencil(&q1, &quad(4, &[(1, 1, 3), (-1, 2, 4)])).unwrap();
        match p.root {
            PencilRoot::Irrational { discriminant, .. } => assert_eq!(discriminant, rational(-4, 1)),
            other => panic!("{other:?}"),
        }
        assert!(rank2_in_pencil(&q1, &q1.scale(&rational(2, 1))).is_err());
    }

    #[test]
    fn rank_bounds() {
        assert!(rank_bound(6, 2, 6));
        assert!(!rank_bound(6, 2, 7));
    }

    #[test]
    fn min_rank_of_span_with_product() {
        let r = min_rank_sample(&[quad(4, &[(1, 1, 2), (1, 3, 4)]), quad(4, &[(1, 1, 2)])], 100, 3).unwrap();
        assert_eq!(r.min_rank, 2);
        assert_eq!(rank(&r.witness).unwrap(), 2);
    }
}
