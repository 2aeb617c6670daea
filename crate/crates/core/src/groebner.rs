//! Gröbner bases of graded ideals in `E`.
//!
//! For a homogeneous `f` we have `e_i f = (-1)^{deg f} f e_i`, so graded left
//! ideals are two-sided and all reductions use left multiplication. A
//! generating set `G` is a Gröbner basis iff every S-polynomial and every
//! product `e_i g` with `e_i | LT(g)` reduces to zero modulo `G`.

use std::collections::{BTreeMap, BTreeSet};

use crate::element::ExtElement;
use crate::field::{Field, Fp, Q};
use crate::hilbert::HilbertSeries;
use crate::ideal::{Ideal, MonomialIdeal};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::Result;

/// Leading monomial and coefficient.
pub fn leading_term<K: Field>(f: &ExtElement<K>, order: &MonomialOrder) -> Option<(Monomial, K)> {
    f.terms().max_by_key(|(m, _)| order.key(*m)).map(|(m, c)| (m, c.clone()))
}

pub fn leading_monomial<K: Field>(f: &ExtElement<K>, order: &MonomialOrder) -> Option<Monomial> {
    f.support().max_by_key(|m| order.key(*m))
}

/// A divisor prepared for repeated reduction steps.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Divisor<K> {
    lt: Monomial,
    lc_inv: K,
    tail: Vec<(Monomial, K)>,
}

impl<K: Field> Divisor<K> {
    fn new(g: &ExtElement<K>, order: &MonomialOrder) -> Option<Self> {
        let (lt, lc) = leading_term(g, order)?;
        let tail = g.terms().filter(|(m, _)| *m != lt).map(|(m, c)| (m, c.clone())).collect();
        Some(Divisor { lt, lc_inv: lc.inv().expect("nonzero leading coefficient"), tail })
    }
}

/// Polynomial under reduction, keyed by order so the leading term is last.
struct Work<K> {
    map: BTreeMap<u128, (Monomial, K)>,
}

impl<K: Field> Work<K> {
    fn new(f: &ExtElement<K>, order: &MonomialOrder) -> Self {
        Work { map: f.terms().map(|(m, c)| (order.key(m), (m, c.clone()))).collect() }
    }

    fn add(&mut self, key: u128, m: Monomial, c: K) {
        use std::collections::btree_map::Entry;
        match self.map.entry(key) {
            Entry::Vacant(v) => {
                v.insert((m, c));
            }
            Entry::Occupied(mut o) => {
                let s = o.get().1.clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.get_mut().1 = s;
                }
            }
        }
    }
}

fn reduce_with<K: Field>(
    f: &ExtElement<K>,
    divisors: &[Divisor<K>],
    order: &MonomialOrder,
) -> ExtElement<K> {
    let mut p = Work::new(f, order);
    let mut rem = ExtElement::zero(f.ambient());
    while let Some((_, (m, c))) = p.map.pop_last() {
        let Some(g) = divisors.iter().find(|g| g.lt.divides(m)) else {
            rem.add_term(m, c);
            continue;
        };
        // w * LT(g) = s * m, so subtracting (c * s / lc) * w * g cancels the term
        let w = m.without(g.lt);
        let (s, _) = w.mul(g.lt).expect("disjoint by divisibility");
        let mut factor = c * g.lc_inv.clone();
        if s > 0 {
            factor = -factor;
        }
        for (t, d) in &g.tail {
            if let Some((s2, prod)) = w.mul(*t) {
                let v = factor.clone() * d.clone();
                p.add(order.key(prod), prod, if s2 < 0 { -v } else { v });
            }
        }
    }
    rem
}

/// Fully reduced remainder of `f` modulo `divisors`. When several divisors
/// apply, the earliest in the list is used.
pub fn normal_form<K: Field>(
    f: &ExtElement<K>,
    divisors: &[ExtElement<K>],
    order: &MonomialOrder,
) -> ExtElement<K> {
    let prepared: Vec<Divisor<K>> = divisors.iter().filter_map(|g| Divisor::new(g, order)).collect();
    reduce_with(f, &prepared, order)
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by degree and then
/// by decreasing leading monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis<K> {
    n: usize,
    order: MonomialOrder,
    elements: Vec<ExtElement<K>>,
    initial: MonomialIdeal,
    divisors: Vec<Divisor<K>>,
}

impl<K: Field> std::fmt::Debug for GroebnerBasis<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.order.to_string())
            .field("elements", &self.elements)
            .finish()
    }
}

impl<K: Field> GroebnerBasis<K> {
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[ExtElement<K>] {
        &self.elements
    }

    pub fn initial(&self) -> &MonomialIdeal {
        &self.initial
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.divisors.iter().map(|d| d.lt).collect()
    }

    pub fn normal_form(&self, f: &ExtElement<K>) -> ExtElement<K> {
        reduce_with(f, &self.divisors, &self.order)
    }

    pub fn contains(&self, f: &ExtElement<K>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_quadratic(&self) -> bool {
        self.elements.iter().all(|g| g.homogeneous_degree() == Some(2))
    }

    pub fn to_ideal(&self) -> Ideal<K> {
        Ideal::new(self.n, self.elements.clone()).expect("basis elements are homogeneous")
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        self.initial.hilbert_series()
    }
}

impl GroebnerBasis<Q> {
    /// Coefficientwise reduction modulo `P`. A monic basis over the rationals
    /// whose coefficients have no `P` in their denominators stays a reduced
    /// Gröbner basis modulo `P`.
    pub fn reduce_mod<const P: u64>(&self) -> Option<GroebnerBasis<Fp<P>>> {
        let mut elements = Vec::with_capacity(self.elements.len());
        for g in &self.elements {
            let mut h = ExtElement::zero(self.n);
            for (m, c) in g.terms() {
                h.add_term(m, Fp::<P>::from_rational(c)?);
            }
            elements.push(h);
        }
        let divisors = elements.iter().map(|g| Divisor::new(g, &self.order).expect("monic")).collect();
        Some(GroebnerBasis {
            n: self.n,
            order: self.order.clone(),
            elements,
            initial: self.initial.clone(),
            divisors,
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BuchbergerOptions {
    /// Process the products `e_i g` with `e_i | LT(g)`. Disabling this gives
    /// a wrong answer in general; it exists for regression tests.
    pub annihilators: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { annihilators: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Task {
    Generator(usize),
    Pair(usize, usize),
    Annihilator(usize, usize),
}

pub fn buchberger<K: Field>(ideal: &Ideal<K>, order: &MonomialOrder) -> GroebnerBasis<K> {
    buchberger_with(ideal, order, BuchbergerOptions::default())
}

pub fn buchberger_with<K: Field>(
    ideal: &Ideal<K>,
    order: &MonomialOrder,
    opts: BuchbergerOptions,
) -> GroebnerBasis<K> {
    let n = ideal.ambient();
    assert_eq!(order.ambient(), n, "order and ideal disagree on the number of variables");
    let mut basis: Vec<ExtElement<K>> = Vec::new();
    let mut divisors: Vec<Divisor<K>> = Vec::new();
    // normal strategy: lowest degree first, then creation order
    let mut queue: BTreeSet<(usize, usize, Task)> = BTreeSet::new();
    let mut seq = 0usize;
    for (i, g) in ideal.generators().iter().enumerate() {
        queue.insert((g.homogeneous_degree().unwrap_or(0), seq, Task::Generator(i)));
        seq += 1;
    }
    while let Some((_, _, task)) = queue.pop_first() {
        let candidate = match task {
            Task::Generator(i) => ideal.generators()[i].clone(),
            Task::Pair(i, j) => {
                let l = divisors[i].lt.lcm(divisors[j].lt);
                let mut s = lift(&basis[i], divisors[i].lt, l);
                s.add_scaled(&-K::one(), &lift(&basis[j], divisors[j].lt, l));
                s
            }
            Task::Annihilator(i, v) => basis[i].mul_monomial_left(Monomial::var(v), &K::one()),
        };
        let h = reduce_with(&candidate, &divisors, order);
        if h.is_zero() {
            continue;
        }
        let (_, lc) = leading_term(&h, order).expect("nonzero");
        let h = h.scale(&lc.inv().expect("nonzero"));
        let d = Divisor::new(&h, order).expect("nonzero");
        let k = basis.len();
        for i in 0..k {
            let l = divisors[i].lt.lcm(d.lt);
            queue.insert((l.degree(), seq, Task::Pair(i, k)));
            seq += 1;
        }
        if opts.annihilators {
            for v in d.lt.vars() {
                queue.insert((d.lt.degree() + 1, seq, Task::Annihilator(k, v)));
                seq += 1;
            }
        }
        basis.push(h);
        divisors.push(d);
    }
    finish(n, order, basis, divisors)
}

/// `s * u * g` with `u = l / lt`, normalized so its leading term is `l`.
fn lift<K: Field>(g: &ExtElement<K>, lt: Monomial, l: Monomial) -> ExtElement<K> {
    let u = l.without(lt);
    let (s, _) = u.mul(lt).expect("disjoint");
    g.mul_monomial_left(u, &K::from_i64(s as i64))
}

fn finish<K: Field>(
    n: usize,
    order: &MonomialOrder,
    basis: Vec<ExtElement<K>>,
    divisors: Vec<Divisor<K>>,
) -> GroebnerBasis<K> {
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|j| {
                j != i
                    && divisors[j].lt.divides(divisors[i].lt)
                    && (divisors[j].lt != divisors[i].lt || j < i)
            })
        })
        .collect();
    let mut reduced: Vec<ExtElement<K>> = Vec::with_capacity(keep.len());
    for &i in &keep {
        let others: Vec<Divisor<K>> =
            keep.iter().filter(|&&j| j != i).map(|&j| divisors[j].clone()).collect();
        let lt = divisors[i].lt;
        let mut tail = basis[i].clone();
        tail.add_term(lt, -K::one());
        let mut g = reduce_with(&tail, &others, order);
        g.add_term(lt, K::one());
        reduced.push(g);
    }
    reduced.sort_by_key(|g| {
        let lt = leading_monomial(g, order).expect("nonzero");
        (lt.degree(), std::cmp::Reverse(order.key(lt)))
    });
    let divisors: Vec<Divisor<K>> = reduced.iter().map(|g| Divisor::new(g, order).expect("nonzero")).collect();
    let initial = MonomialIdeal::new(n, divisors.iter().map(|d| d.lt));
    GroebnerBasis { n, order: order.clone(), elements: reduced, initial, divisors }
}

pub fn initial_ideal<K: Field>(ideal: &Ideal<K>, order: &MonomialOrder) -> MonomialIdeal {
    buchberger(ideal, order).initial
}

pub fn is_quadratic_gb<K: Field>(ideal: &Ideal<K>, order: &MonomialOrder) -> bool {
    buchberger(ideal, order).is_quadratic()
}
