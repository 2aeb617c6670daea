//! Minimal graded free resolutions over finite-dimensional quotients of `E`,
//! truncated in homological and internal degree.
//!
//! The resolution of `M = A/J` over `A` is built one internal degree `t` at a
//! time. `(F_s)_t` has coordinates `(h, b)` for generators `h` of `F_s` and
//! basis elements `b` of `A_{t - deg h}`. New generators of `F_{s+1}` in
//! degree `t` are a basis of `ker(d_s)_t` modulo the image of the generators
//! already present; the complement is read off from the kernel of `d_s`
//! restricted to the non-pivot coordinates of that image.

use std::collections::BTreeMap;
use std::fmt;

use crate::element::ExtElement;
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Q};
use crate::hilbert::{inverse_series, HilbertSeries};
use crate::ideal::Ideal;
use crate::linalg::{left_kernel, EchelonBasis, SparseVec};
use crate::order::MonomialOrder;
use crate::quotient::QuotientAlgebra;

/// Default prime for the modular backend.
pub const DEFAULT_PRIME: u64 = 32003;

/// Default cap on the dimension of a single graded piece `(F_s)_t`.
pub const DEFAULT_MAX_COORDS: usize = 60_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub ring: String,
    pub module: String,
    /// `"Q"` or `"F_p"`.
    pub field: String,
    pub i_max: usize,
    pub j_max: usize,
    /// Entries are exact for internal degrees `j ≤ complete_through`.
    pub complete_through: Option<usize>,
    pub entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.complete_through == Some(self.j_max)
    }

    /// Nonzero entries off the diagonal `i = j`.
    pub fn off_diagonal(&self) -> Vec<(usize, usize)> {
        self.entries.iter().filter(|(&(i, j), &b)| b > 0 && i != j).map(|(&k, _)| k).collect()
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..=(i, usize::MAX)).map(|(_, &b)| b).sum()
    }

    /// Entrywise `self ≤ other` on the common range.
    pub fn dominated_by(&self, other: &BettiTable) -> bool {
        let i_max = self.i_max.min(other.i_max);
        let j_max = self.j_max.min(other.j_max);
        (0..=i_max).all(|i| (0..=j_max).all(|j| self.get(i, j) <= other.get(i, j)))
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Betti table of {} over {} ({})", self.module, self.ring, self.field)?;
        let rows = (0..=self.j_max).filter(|&r| (0..=self.i_max).any(|i| self.get(i, i + r) > 0));
        let rows: Vec<usize> = rows.collect();
        let width = (0..=self.i_max)
            .map(|i| self.total(i).to_string().len())
            .max()
            .unwrap_or(1)
            .max(self.i_max.to_string().len());
        write!(f, "       ")?;
        for i in 0..=self.i_max {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "total: ")?;
        for i in 0..=self.i_max {
            write!(f, " {:>width$}", self.total(i))?;
        }
        writeln!(f)?;
        for r in rows {
            write!(f, "{r:>5}: ")?;
            for i in 0..=self.i_max {
                match self.get(i, i + r) {
                    0 => write!(f, " {:>width$}", ".")?,
                    b => write!(f, " {b:>width$}")?,
                }
            }
            writeln!(f)?;
        }
        match self.complete_through {
            Some(t) if t == self.j_max => write!(f, "exact for i ≤ {}, j ≤ {}", self.i_max, self.j_max),
            Some(t) => write!(f, "partial: exact only for j ≤ {t} (resource cap)"),
            None => write!(f, "partial: no degree completed (resource cap)"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ResolutionOptions {
    pub max_coords: usize,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions { max_coords: DEFAULT_MAX_COORDS }
    }
}

struct Gen<K> {
    degree: usize,
    // d(g) as (generator of the previous module, coordinates in A)
    diff: Vec<(usize, SparseVec<K>)>,
}

struct Layout {
    // offset of each generator's block, None if the block is empty
    offset: Vec<Option<usize>>,
    // first A-basis index of each block
    start: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new<K: Field>(alg: &QuotientAlgebra<K>, gens: &[Gen<K>], t: usize) -> Layout {
        let mut offset = Vec::with_capacity(gens.len());
        let mut start = Vec::with_capacity(gens.len());
        let mut total = 0;
        for g in gens {
            if g.degree > t || alg.dim_of_degree(t - g.degree) == 0 {
                offset.push(None);
                start.push(0);
            } else {
                let r = alg.degree_range(t - g.degree);
                offset.push(Some(total));
                start.push(r.start);
                total += r.len();
            }
        }
        Layout { offset, start, total }
    }

    fn coords<K: Field>(&self, parts: &[(usize, SparseVec<K>)]) -> SparseVec<K> {
        let mut out = Vec::new();
        for (h, v) in parts {
            if v.is_empty() {
                continue;
            }
            let off = self.offset[*h].expect("component lives in a nonempty block");
            out.extend(v.iter().map(|(b, c)| (off + b - self.start[*h], c.clone())));
        }
        out.sort_by_key(|e| e.0);
        out
    }

    fn parts<K: Field>(&self, v: &[(usize, K)]) -> Vec<(usize, SparseVec<K>)> {
        let mut out: Vec<(usize, SparseVec<K>)> = Vec::new();
        for (c, x) in v {
            let (h, b) = self.locate(*c);
            match out.last_mut() {
                Some((last, w)) if *last == h => w.push((b, x.clone())),
                _ => out.push((h, vec![(b, x.clone())])),
            }
        }
        out
    }

    fn locate(&self, c: usize) -> (usize, usize) {
        let h = self
            .offset
            .iter()
            .enumerate()
            .filter_map(|(h, o)| o.filter(|&o| o <= c).map(|o| (h, o)))
            .last()
            .expect("coordinate in range");
        (h.0, self.start[h.0] + c - h.1)
    }
}

fn act<K: Field>(alg: &QuotientAlgebra<K>, b: usize, parts: &[(usize, SparseVec<K>)]) -> Vec<(usize, SparseVec<K>)> {
    let m = alg.basis()[b];
    parts
        .iter()
        .map(|(h, v)| (*h, alg.mul_monomial(m, v)))
        .filter(|(_, v)| !v.is_empty())
        .collect()
}

/// Graded Betti numbers of `A/J` over `A` for `i ≤ i_max`, `j ≤ j_max`.
pub fn resolve<K: Field>(
    alg: &QuotientAlgebra<K>,
    j_gens: &[ExtElement<K>],
    i_max: usize,
    j_max: usize,
    opts: ResolutionOptions,
) -> Result<(BTreeMap<(usize, usize), u64>, Option<usize>)> {
    let mut rel: Vec<(usize, SparseVec<K>)> = Vec::new();
    for f in j_gens {
        let d = f.homogeneous_degree().ok_or_else(|| Error::Usage(format!("{f} is not homogeneous")))?;
        let v = alg.reduce(f);
        if !v.is_empty() {
            rel.push((d, v));
        }
    }
    let mut gens: Vec<Vec<Gen<K>>> = (0..=i_max).map(|_| Vec::new()).collect();
    gens[0].push(Gen { degree: 0, diff: Vec::new() });
    let mut entries = BTreeMap::new();
    entries.insert((0, 0), 1);
    let mut complete = None;
    for t in 0..=j_max {
        for s in 0..i_max {
            let layout = Layout::new(alg, &gens[s], t);
            if layout.total > opts.max_coords {
                return Ok((entries, complete));
            }
            let mut image = EchelonBasis::new();
            for g in gens[s + 1].iter().filter(|g| g.degree < t) {
                for b in alg.degree_range(t - g.degree) {
                    image.insert(layout.coords(&act(alg, b, &g.diff)));
                }
            }
            let mut fresh = Vec::new();
            if s == 0 {
                for (d, r) in rel.iter().filter(|(d, _)| *d <= t) {
                    for b in alg.degree_range(t - d) {
                        let v = alg.mul_monomial(alg.basis()[b], r);
                        if image.insert(layout.coords(&[(0, v.clone())])) {
                            fresh.push(Gen { degree: t, diff: vec![(0, v)] });
                        }
                    }
                }
            } else {
                let target = Layout::new(alg, &gens[s - 1], t);
                if target.total > opts.max_coords {
                    return Ok((entries, complete));
                }
                let free: Vec<usize> = (0..layout.total).filter(|&c| !image.is_pivot(c)).collect();
                let rows: Vec<SparseVec<K>> = free
                    .iter()
                    .map(|&c| {
                        let (h, b) = layout.locate(c);
                        target.coords(&act(alg, b, &gens[s][h].diff))
                    })
                    .collect();
                for x in left_kernel(&rows, target.total) {
                    let v: SparseVec<K> = x.into_iter().map(|(k, c)| (free[k], c)).collect();
                    fresh.push(Gen { degree: t, diff: layout.parts(&v) });
                }
            }
            if !fresh.is_empty() {
                entries.insert((s + 1, t), fresh.len() as u64);
            }
            gens[s + 1].extend(fresh);
        }
        complete = Some(t);
    }
    Ok((entries, complete))
}

fn field_name<K: Field>() -> String {
    match K::characteristic() {
        0 => "Q".to_string(),
        p => format!("F_{p}"),
    }
}

/// `β^E_{i,j}(E/I)` for `i ≤ i_max`, `j ≤ j_max`.
pub fn betti_over_e<K: Field>(ideal: &Ideal<K>, i_max: usize, j_max: usize) -> Result<BettiTable> {
    betti_over_e_with(ideal, i_max, j_max, ResolutionOptions::default())
}

pub fn betti_over_e_with<K: Field>(
    ideal: &Ideal<K>,
    i_max: usize,
    j_max: usize,
    opts: ResolutionOptions,
) -> Result<BettiTable> {
    let n = ideal.ambient();
    let e = QuotientAlgebra::<K>::new(&Ideal::zero(n), &MonomialOrder::degrevlex(n))?;
    let (entries, complete_through) = resolve(&e, ideal.generators(), i_max, j_max, opts)?;
    Ok(BettiTable {
        ring: format!("E (n={n})"),
        module: format!("E/{ideal}"),
        field: field_name::<K>(),
        i_max,
        j_max,
        complete_through,
        entries,
    })
}

/// `β^R_{i,j}(K)` for `R = E/I`, `i ≤ i_max`, `j ≤ j_max`.
pub fn koszul_betti<K: Field>(ideal: &Ideal<K>, i_max: usize, j_max: usize) -> Result<BettiTable> {
    koszul_betti_with(ideal, i_max, j_max, ResolutionOptions::default())
}

pub fn koszul_betti_with<K: Field>(
    ideal: &Ideal<K>,
    i_max: usize,
    j_max: usize,
    opts: ResolutionOptions,
) -> Result<BettiTable> {
    let n = ideal.ambient();
    let r = QuotientAlgebra::new(ideal, &MonomialOrder::degrevlex(n))?;
    let vars: Vec<ExtElement<K>> = (1..=n).map(|i| ExtElement::var(n, i)).collect();
    let (entries, complete_through) = resolve(&r, &vars, i_max, j_max, opts)?;
    Ok(BettiTable {
        ring: format!("E/{ideal}"),
        module: "k".to_string(),
        field: field_name::<K>(),
        i_max,
        j_max,
        complete_through,
        entries,
    })
}

/// Internal degree through which homological degrees `≤ i_max` are
/// computed: `max(i_max, 1 + (i_max - 1)·D)` with `D` the largest generator
/// degree.
pub fn koszul_degree_bound(i_max: usize, max_generator_degree: usize) -> usize {
    i_max.max(1 + i_max.saturating_sub(1) * max_generator_degree.max(1))
}

pub fn koszul_betti_bounded<K: Field>(ideal: &Ideal<K>, i_max: usize) -> Result<BettiTable> {
    let d = ideal.max_generator_degree();
    koszul_betti(ideal, i_max, koszul_degree_bound(i_max, d))
}

/// `koszul_betti_bounded` over `F_p` for `p = 32003`.
pub fn koszul_betti_bounded_mod(ideal: &Ideal<Q>, i_max: usize) -> Result<BettiTable> {
    let i = ideal
        .reduce_mod::<DEFAULT_PRIME>()
        .ok_or_else(|| Error::Refused(format!("a coefficient has denominator divisible by {DEFAULT_PRIME}")))?;
    koszul_betti_bounded::<Fp<DEFAULT_PRIME>>(&i, i_max)
}

pub fn betti_over_e_mod(ideal: &Ideal<Q>, i_max: usize, j_max: usize) -> Result<BettiTable> {
    let i = ideal
        .reduce_mod::<DEFAULT_PRIME>()
        .ok_or_else(|| Error::Refused(format!("a coefficient has denominator divisible by {DEFAULT_PRIME}")))?;
    betti_over_e::<Fp<DEFAULT_PRIME>>(&i, i_max, j_max)
}

/// `Σ_i (-1)^i β_{i,j} = [t^j] (1/h(t))` for every `j ≤ j_max`, where `h` is
/// the Hilbert series of the ring and the module is the residue field.
pub fn euler_identity_check(table: &BettiTable, h: &HilbertSeries, j_max: usize) -> Result<bool> {
    euler_identity_check_module(table, &HilbertSeries::one(), h, j_max)
}

/// `Σ_i (-1)^i β_{i,j} = [t^j] (m(t)/h(t))` for a module with Hilbert series
/// `m` over a ring with Hilbert series `h`.
pub fn euler_identity_check_module(
    table: &BettiTable,
    m: &HilbertSeries,
    h: &HilbertSeries,
    j_max: usize,
) -> Result<bool> {
    if table.complete_through.map_or(true, |t| t < j_max) || table.i_max < j_max || table.j_max < j_max {
        return Err(Error::Refused(format!(
            "the table must be complete for i ≤ j ≤ {j_max} (have i ≤ {}, j ≤ {:?})",
            table.i_max, table.complete_through
        )));
    }
    let inv = inverse_series(h, j_max)?;
    for j in 0..=j_max {
        let lhs: i128 = (0..=j).map(|i| if i % 2 == 0 { 1 } else { -1 } * table.get(i, j) as i128).sum();
        let rhs: num_bigint::BigInt = (0..=j).map(|k| inv.coeff(j - k) * m.coeff(k)).sum();
        if num_bigint::BigInt::from(lhs) != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::monomial::Monomial;

    type F = Fp<DEFAULT_PRIME>;

    #[test]
    fn residue_field_over_exterior_algebra() {
        // Cartan: β_{i,i} = C(n+i-1, i)
        let t = koszul_betti::<Q>(&Ideal::zero(3), 4, 4).unwrap();
        for (i, b) in [1, 3, 6, 10, 15].into_iter().enumerate() {
            assert_eq!(t.get(i, i), b);
        }
        assert!(t.off_diagonal().is_empty());
        assert!(euler_identity_check(&t, &HilbertSeries::one_plus_t_pow(3), 4).unwrap());
    }

    #[test]
    fn single_monomial_over_e() {
        let i = Ideal::<Q>::from_monomials(2, &[Monomial::from_vars(&[1, 2]).unwrap()]).unwrap();
        let t = betti_over_e(&i, 2, 3).unwrap();
        assert_eq!(t.get(1, 2), 1);
        assert_eq!(t.get(2, 3), 2);
    }

    #[test]
    fn edge_ideal_is_koszul_through_four() {
        let i = Graph::preset("triangle+triangle").unwrap().edge_ideal::<F>();
        let t = koszul_betti_bounded(&i, 4).unwrap();
        assert!(t.is_complete());
        assert!(t.off_diagonal().is_empty());
        // (k+1)·3^k
        for (k, b) in [1, 6, 27, 108, 405].into_iter().enumerate() {
            assert_eq!(t.get(k, k), b);
        }
    }

    #[test]
    fn corrupted_table_fails_euler() {
        let mut t = koszul_betti::<Q>(&Ideal::zero(2), 3, 3).unwrap();
        assert!(euler_identity_check(&t, &HilbertSeries::one_plus_t_pow(2), 3).unwrap());
        *t.entries.get_mut(&(2, 2)).unwrap() += 1;
        assert!(!euler_identity_check(&t, &HilbertSeries::one_plus_t_pow(2), 3).unwrap());
        assert!(euler_identity_check(&t, &HilbertSeries::one_plus_t_pow(2), 5).is_err());
    }

    #[test]
    fn resource_cap_gives_partial_table() {
        let t = koszul_betti_with::<Q>(&Ideal::zero(4), 6, 6, ResolutionOptions { max_coords: 30 }).unwrap();
        assert!(!t.is_complete());
        assert!(t.to_string().contains("partial"));
    }
}
