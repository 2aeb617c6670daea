//! Regular linear forms, regular sequences and depth.
//!
//! `ℓ ∈ E_1` is regular on a graded module `M` when `{m ∈ M | ℓm = 0} = ℓM`.
//! Since `ℓ² = 0`, the image of multiplication by `ℓ` always lies in its
//! kernel, so regularity is the rank identity
//! `dim M_d = rank(ℓ: M_d → M_{d+1}) + rank(ℓ: M_{d-1} → M_d)` in every degree.
//! Modules here are cyclic quotients `M = R/(ℓ_1, …, ℓ_k)R`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::change::LinearChange;
use crate::element::{ExtElement, LinearForm};
use crate::enumerate::search_by_series;
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::graph::Graph;
use crate::groebner::buchberger;
use crate::hilbert::HilbertSeries;
use crate::ideal::Ideal;
use crate::linalg::{left_kernel, EchelonBasis, SparseVec};
use crate::monomial::Monomial;
use crate::quotient::QuotientAlgebra;

/// Coefficient bound for random linear forms.
pub const RANDOM_COEFF_BOUND: i64 = 100;

/// Default number of random forms tried per extension step.
pub const DEFAULT_TRIALS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate<K: Field = Q> {
    pub form: LinearForm<K>,
    pub verdict: Verdict,
    /// For a singular form: `m` with `ℓm = 0` in `M` but `m ∉ ℓM`, given by
    /// a representative in the standard-monomial basis of `R`.
    pub witness: Option<ExtElement<K>>,
    pub failing_degree: Option<usize>,
    /// `rank(ℓ: M_d → M_{d+1})` for each degree examined.
    pub ranks: Vec<usize>,
}

impl<K: Field> RegularityCertificate<K> {
    pub fn is_regular(&self) -> bool {
        self.verdict == Verdict::Regular
    }
}

/// `M = R/(ℓ_1, …, ℓ_k)R`, stored as the subspaces `U_d = Σ ℓ_i R_{d-1}`.
pub struct CyclicModule<'a, K: Field> {
    alg: &'a QuotientAlgebra<K>,
    forms: Vec<LinearForm<K>>,
    sub: Vec<EchelonBasis<K>>,
}

impl<'a, K: Field> CyclicModule<'a, K> {
    pub fn new(alg: &'a QuotientAlgebra<K>, forms: &[LinearForm<K>]) -> Result<Self> {
        for l in forms {
            if l.ambient() != alg.ambient() {
                return Err(Error::AmbientMismatch { left: alg.ambient(), right: l.ambient() });
            }
        }
        let top = alg.top_degree();
        let mut sub = Vec::with_capacity(top + 2);
        sub.push(EchelonBasis::new());
        for d in 1..=top + 1 {
            let mut u = EchelonBasis::new();
            for j in alg.degree_range(d - 1) {
                for l in forms {
                    u.insert(alg.mul_linear(l, &alg.unit(j)));
                }
            }
            sub.push(u);
        }
        Ok(CyclicModule { alg, forms: forms.to_vec(), sub })
    }

    pub fn algebra(&self) -> &QuotientAlgebra<K> {
        self.alg
    }

    pub fn forms(&self) -> &[LinearForm<K>] {
        &self.forms
    }

    /// Canonical representative modulo `U_d`.
    pub fn reduce(&self, d: usize, v: SparseVec<K>) -> SparseVec<K> {
        match self.sub.get(d) {
            Some(u) => u.reduce_full(v),
            None => Vec::new(),
        }
    }

    /// Basis indices of `R_d` that survive in `M_d`.
    pub fn basis(&self, d: usize) -> Vec<usize> {
        match self.sub.get(d) {
            Some(u) => self.alg.degree_range(d).filter(|&j| !u.is_pivot(j)).collect(),
            None => Vec::new(),
        }
    }

    pub fn dim_of_degree(&self, d: usize) -> usize {
        self.basis(d).len()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::new((0..=self.alg.top_degree()).map(|d| self.dim_of_degree(d) as i64).collect())
    }

    /// Rows of multiplication by `ℓ` from `M_d` to `M_{d+1}`, one per
    /// element of [`CyclicModule::basis`].
    fn multiplication_rows(&self, l: &LinearForm<K>, basis: &[usize], d: usize) -> Vec<SparseVec<K>> {
        basis.iter().map(|&j| self.reduce(d + 1, self.alg.mul_linear(l, &self.alg.unit(j)))).collect()
    }

    pub fn is_regular(&self, l: &LinearForm<K>) -> Result<RegularityCertificate<K>> {
        if l.ambient() != self.alg.ambient() {
            return Err(Error::AmbientMismatch { left: self.alg.ambient(), right: l.ambient() });
        }
        let mut ranks = Vec::new();
        let mut prev_image: EchelonBasis<K> = EchelonBasis::new();
        for d in 0..=self.alg.top_degree() {
            let basis = self.basis(d);
            let rows = self.multiplication_rows(l, &basis, d);
            let mut image = EchelonBasis::new();
            for r in &rows {
                image.insert(r.clone());
            }
            let rank = image.rank();
            ranks.push(rank);
            if basis.len() - rank != prev_image.rank() {
                let witness = left_kernel(&rows, self.alg.dim())
                    .into_iter()
                    .map(|x| -> SparseVec<K> {
                        let mut v: Vec<(usize, K)> = x.into_iter().map(|(k, c)| (basis[k], c)).collect();
                        v.sort_by_key(|e| e.0);
                        v
                    })
                    .find(|m| !prev_image.contains(m.clone()))
                    .expect("kernel strictly larger than image");
                return Ok(RegularityCertificate {
                    form: l.clone(),
                    verdict: Verdict::Singular,
                    witness: Some(self.alg.element(&witness)),
                    failing_degree: Some(d),
                    ranks,
                });
            }
            prev_image = image;
        }
        Ok(RegularityCertificate {
            form: l.clone(),
            verdict: Verdict::Regular,
            witness: None,
            failing_degree: None,
            ranks,
        })
    }

    /// Re-checks a singular witness: `ℓm = 0` in `M` and `m ∉ ℓM`.
    pub fn verify_witness(&self, l: &LinearForm<K>, m: &ExtElement<K>) -> bool {
        let Some(d) = m.homogeneous_degree() else {
            return false;
        };
        let v = self.reduce(d, self.alg.reduce(m));
        if v.is_empty() {
            return false;
        }
        if !self.reduce(d + 1, self.alg.mul_linear(l, &v)).is_empty() {
            return false;
        }
        if d == 0 {
            return true;
        }
        let mut image = self.sub.get(d).cloned().unwrap_or_default();
        for j in self.alg.degree_range(d - 1) {
            image.insert(self.alg.mul_linear(l, &self.alg.unit(j)));
        }
        !image.contains(v)
    }
}

/// Is `ℓ` regular on `R` itself?
pub fn is_regular<K: Field>(l: &LinearForm<K>, alg: &QuotientAlgebra<K>) -> Result<RegularityCertificate<K>> {
    CyclicModule::new(alg, &[])?.is_regular(l)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceVerdict<K: Field = Q> {
    pub regular: bool,
    /// 1-based index of the first form that is not regular.
    pub failing_index: Option<usize>,
    pub certificates: Vec<RegularityCertificate<K>>,
}

/// Checks each `ℓ_i` on `R/(ℓ_1, …, ℓ_{i-1})R`.
pub fn is_regular_sequence<K: Field>(
    forms: &[LinearForm<K>],
    alg: &QuotientAlgebra<K>,
) -> Result<SequenceVerdict<K>> {
    let mut certificates = Vec::new();
    for (i, l) in forms.iter().enumerate() {
        let cert = CyclicModule::new(alg, &forms[..i])?.is_regular(l)?;
        let ok = cert.is_regular();
        certificates.push(cert);
        if !ok {
            return Ok(SequenceVerdict { regular: false, failing_index: Some(i + 1), certificates });
        }
    }
    Ok(SequenceVerdict { regular: true, failing_index: None, certificates })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthReport {
    /// Length of the certified regular sequence.
    pub certified: usize,
    pub probable: usize,
    /// True when `probable` rests on random failures rather than a proof.
    pub monte_carlo: bool,
    pub sequence: Vec<LinearForm<Q>>,
    pub random_failures: usize,
}

/// A random form with coefficients uniform in `[-bound, bound]`, not zero.
pub fn random_form(n: usize, bound: i64, rng: &mut impl Rng) -> LinearForm<Q> {
    loop {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if c.iter().any(|&x| x != 0) {
            return LinearForm::from_i64s(&c);
        }
    }
}

pub fn depth_probe(alg: &QuotientAlgebra<Q>, trials: usize, seed: u64) -> Result<DepthReport> {
    depth_probe_with(alg, trials, seed, &[])
}

/// Greedy depth probe: extends a certified regular sequence, trying the
/// `preferred` forms before `trials` random ones at each step. A module
/// with `dim M = 1` has no regular element, which ends the search with a
/// proof rather than a Monte-Carlo verdict.
pub fn depth_probe_with(
    alg: &QuotientAlgebra<Q>,
    trials: usize,
    seed: u64,
    preferred: &[LinearForm<Q>],
) -> Result<DepthReport> {
    let n = alg.ambient();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sequence: Vec<LinearForm<Q>> = Vec::new();
    let mut random_failures = 0;
    let mut unused: Vec<LinearForm<Q>> = preferred.to_vec();
    loop {
        let module = CyclicModule::new(alg, &sequence)?;
        if module.hilbert_series().total() == 1 {
            return Ok(DepthReport {
                certified: sequence.len(),
                probable: sequence.len(),
                monte_carlo: false,
                sequence,
                random_failures,
            });
        }
        let mut found = None;
        for (k, l) in unused.iter().enumerate() {
            if module.is_regular(l)?.is_regular() {
                found = Some(k);
                break;
            }
        }
        if let Some(k) = found {
            sequence.push(unused.remove(k));
            continue;
        }
        let mut extended = false;
        for _ in 0..trials {
            let l = random_form(n, RANDOM_COEFF_BOUND, &mut rng);
            if module.is_regular(&l)?.is_regular() {
                sequence.push(l);
                extended = true;
                break;
            }
            random_failures += 1;
        }
        if !extended {
            return Ok(DepthReport {
                certified: sequence.len(),
                probable: sequence.len(),
                monte_carlo: true,
                sequence,
                random_failures,
            });
        }
    }
}

/// `Σ e_{3i+1}`, the preferred witness on path quotients.
pub fn path_witness(n: usize) -> LinearForm<Q> {
    let vars: Vec<usize> = (1..=n).step_by(3).collect();
    LinearForm::sum_of_vars(n, &vars)
}

/// Presentation of `R/ℓR` over `n-1` variables.
#[derive(Clone, Debug)]
pub struct LinearQuotient<K: Field = Q> {
    pub algebra: QuotientAlgebra<K>,
    /// Generators of the new ideal (before Gröbner completion).
    pub generators: Vec<ExtElement<K>>,
    /// Eliminated variable (1-based, in the old numbering).
    pub eliminated: usize,
    /// Coordinate change on the old algebra taking `ℓ` to `e_eliminated`.
    pub change: LinearChange<K>,
}

/// Quotient by a certified regular form.
pub fn quotient_by_linear<K: Field>(
    alg: &QuotientAlgebra<K>,
    cert: &RegularityCertificate<K>,
) -> Result<LinearQuotient<K>> {
    if !cert.is_regular() {
        return Err(Error::Refused(format!("{} is not certified regular", cert.form)));
    }
    quotient_by_linear_unchecked(alg, &cert.form)
}

/// Same elimination without any regularity requirement. The Hilbert series
/// of the result need not be `HS_R(t)/(1+t)`.
pub fn quotient_by_linear_unchecked<K: Field>(
    alg: &QuotientAlgebra<K>,
    l: &LinearForm<K>,
) -> Result<LinearQuotient<K>> {
    let n = alg.ambient();
    if l.ambient() != n {
        return Err(Error::AmbientMismatch { left: n, right: l.ambient() });
    }
    let k = *l.support().last().ok_or_else(|| Error::Usage("cannot divide by the zero form".into()))?;
    let ck_inv = l.coeff(k).inv().expect("nonzero");
    // e_k ↦ -(1/c_k) Σ_{j≠k} c_j e_j
    let mut images: Vec<ExtElement<K>> = (1..=n).map(|i| ExtElement::var(n, i)).collect();
    let mut sub = ExtElement::zero(n);
    for j in l.support() {
        if j != k {
            sub.add_term(Monomial::var(j), -(l.coeff(j).clone() * ck_inv.clone()));
        }
    }
    images[k - 1] = sub;
    let relabel = |j: usize| if j > k { j - 1 } else { j };
    let mut generators = Vec::new();
    for g in alg.gb().elements() {
        let mut h = ExtElement::zero(n);
        for (m, c) in g.terms() {
            let mut acc = ExtElement::one(n);
            for v in m.vars() {
                acc = &acc * &images[v - 1];
            }
            h.add_scaled(c, &acc);
        }
        if !h.is_zero() {
            generators.push(h.reindex(n - 1, relabel));
        }
    }
    let order = alg.gb().order().without_variable(k);
    let ideal = Ideal::new(n - 1, generators.clone())?;
    let algebra = QuotientAlgebra::from_gb(buchberger(&ideal, &order));
    let mut coords: Vec<LinearForm<K>> = (1..=n).map(|i| LinearForm::var(n, i)).collect();
    coords[k - 1] = l.clone();
    let change = LinearChange::from_new_coordinates(&coords)?;
    Ok(LinearQuotient { algebra, generators, eliminated: k, change })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LgStep {
    pub extra: usize,
    pub vertices: usize,
    pub edges: Option<usize>,
    pub target: HilbertSeries,
    pub candidates: Vec<Graph>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LgSummary {
    /// No graph at `d = 0`: the algebra is not G-quadratic.
    NotGQuadratic,
    /// No graph in any tested `d`; not a proof that the algebra is not
    /// LG-quadratic, only that the tested range is obstructed.
    ObstructedInRange,
    /// Some step has graph candidates.
    Inconclusive,
}

/// For each `d` in `0..=max_extra`, searches graphs on `h_1 + d` vertices
/// whose independence polynomial is `h·(1+t)^d`. Quadratic monomial ideals
/// in `E` are exactly edge ideals, so an empty `d = 0` step rules out a
/// quadratic Gröbner basis in every coordinate system.
pub fn lg_obstruction_search(h: &HilbertSeries, max_extra: usize) -> Result<(Vec<LgStep>, LgSummary)> {
    let mut steps = Vec::new();
    for d in 0..=max_extra {
        let target = h.mul(&HilbertSeries::one_plus_t_pow(d));
        let v = usize::try_from(target.coeff(1)).map_err(|_| Error::Usage("negative h_1".into()))?;
        let pairs = (v * v.saturating_sub(1) / 2) as i64;
        let e = pairs - target.coeff(2);
        let (edges, candidates) = if e < 0 || target.coeff(0) != 1 {
            (None, Vec::new())
        } else {
            let e = e as usize;
            let t = target.clone();
            (Some(e), search_by_series(v..=v, e, move |_| t.clone(), false)?)
        };
        steps.push(LgStep { extra: d, vertices: v, edges, target, candidates });
    }
    let summary = if steps[0].candidates.is_empty() {
        LgSummary::NotGQuadratic
    } else if steps.iter().all(|s| s.candidates.is_empty()) {
        LgSummary::ObstructedInRange
    } else {
        LgSummary::Inconclusive
    };
    Ok((steps, summary))
}
