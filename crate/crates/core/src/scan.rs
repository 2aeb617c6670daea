//! Order-free test for quadratic Gröbner bases in fixed coordinates.
//!
//! Under any total order on quadratic monomials, the leading monomials of the
//! degree-2 part `I_2` form a basis of the column matroid of its coefficient
//! matrix, and every such basis arises this way. A quadratic Gröbner basis
//! would make `in(I)` equal to the ideal generated by one of these bases, so
//! if no basis reproduces the Hilbert function of `E/I`, none exists.

use std::ops::Range;

use crate::combin::{binomial, combinations_in_range};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert::{hilbert_series, HilbertSeries};
use crate::ideal::{Ideal, MonomialIdeal};
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;

/// Largest `dim I_2` accepted.
pub const MAX_SCAN_DIM: usize = 12;

/// Largest number of column subsets examined in one call.
pub const MAX_SCAN_CANDIDATES: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanOutcome {
    /// No candidate leading-monomial set matches the Hilbert function.
    NoQuadraticGb { bases_checked: u64, hilbert: HilbertSeries },
    /// Candidate leading-monomial sets that do match.
    Inconclusive { survivors: Vec<Vec<Monomial>>, hilbert: HilbertSeries },
}

impl ScanOutcome {
    pub fn is_certificate(&self) -> bool {
        matches!(self, ScanOutcome::NoQuadraticGb { .. })
    }
}

/// The degree-2 part as an echelonized coefficient matrix over the quadratic
/// monomials that occur.
#[derive(Clone, Debug)]
pub struct QuadraticPart<K> {
    pub columns: Vec<Monomial>,
    pub rows: Matrix<K>,
}

impl<K: Field> QuadraticPart<K> {
    pub fn new(ideal: &Ideal<K>) -> Result<Self> {
        if ideal.generators().iter().any(|g| g.homogeneous_degree() != Some(2)) {
            return Err(Error::Usage("the quadratic scan needs an ideal generated by quadrics".into()));
        }
        let mut columns: Vec<Monomial> =
            ideal.generators().iter().flat_map(|g| g.support().collect::<Vec<_>>()).collect();
        columns.sort();
        columns.dedup();
        let raw = Matrix::from_rows(
            ideal.generators().iter().map(|g| columns.iter().map(|&m| g.coeff(m)).collect()).collect(),
        );
        let (red, pivots) = raw.rref();
        let rank = pivots.len();
        let rows = Matrix::from_rows((0..rank).map(|i| red.row(i).to_vec()).collect());
        Ok(QuadraticPart { columns, rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.nrows()
    }

    /// Total number of column subsets of size `dim`.
    pub fn candidate_count(&self) -> u64 {
        binomial(self.columns.len() as u64, self.dim() as u64)
    }

    pub fn is_basis(&self, cols: &[usize]) -> bool {
        let r = self.dim();
        let sub = Matrix::from_rows(
            (0..r).map(|i| cols.iter().map(|&j| self.rows.get(i, j).clone()).collect()).collect(),
        );
        !sub.det().is_zero()
    }
}

pub fn fixed_coordinate_quadratic_scan<K: Field>(ideal: &Ideal<K>) -> Result<ScanOutcome> {
    scan_range(ideal, 0..u64::MAX)
}

/// Scans the column subsets whose lexicographic ranks lie in `range`.
pub fn scan_range<K: Field>(ideal: &Ideal<K>, range: Range<u64>) -> Result<ScanOutcome> {
    let part = QuadraticPart::new(ideal)?;
    if part.dim() > MAX_SCAN_DIM {
        return Err(Error::Refused(format!(
            "dim I_2 = {} exceeds the scan limit {MAX_SCAN_DIM}",
            part.dim()
        )));
    }
    let total = part.candidate_count();
    let end = range.end.min(total);
    let start = range.start.min(end);
    if end - start > MAX_SCAN_CANDIDATES {
        return Err(Error::Refused(format!(
            "{} candidate sets exceed the limit {MAX_SCAN_CANDIDATES}; pass a smaller range",
            end - start
        )));
    }
    let n = ideal.ambient();
    let target = hilbert_series(ideal, &MonomialOrder::degrevlex(n))?;
    let mut survivors = Vec::new();
    let mut checked = 0u64;
    for cols in combinations_in_range(part.columns.len(), part.dim(), start, end) {
        if !part.is_basis(&cols) {
            continue;
        }
        checked += 1;
        let m: Vec<Monomial> = cols.iter().map(|&j| part.columns[j]).collect();
        if MonomialIdeal::new(n, m.iter().copied()).hilbert_series()? == target {
            survivors.push(m);
        }
    }
    Ok(if survivors.is_empty() {
        ScanOutcome::NoQuadraticGb { bases_checked: checked, hilbert: target }
    } else {
        ScanOutcome::Inconclusive { survivors, hilbert: target }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ExtElement;
    use crate::field::Q;

    fn m(v: &[usize]) -> Monomial {
        Monomial::from_vars(v).unwrap()
    }

    fn poly(n: usize, terms: &[(&[usize], i64)]) -> ExtElement {
        ExtElement::from_terms(n, terms.iter().map(|(v, c)| (m(v), <Q as Field>::from_i64(*c))))
    }

    #[test]
    fn principal_quadric_has_certificate() {
        let i = Ideal::new(4, vec![poly(4, &[(&[1, 2], 1), (&[3, 4], 1)])]).unwrap();
        let out = fixed_coordinate_quadratic_scan(&i).unwrap();
        assert_eq!(
            out,
            ScanOutcome::NoQuadraticGb { bases_checked: 2, hilbert: HilbertSeries::new(vec![1, 4, 5]) }
        );
    }

    #[test]
    fn monomial_ideal_survives() {
        let i = Ideal::<Q>::from_monomials(4, &[m(&[1, 2]), m(&[2, 3])]).unwrap();
        match fixed_coordinate_quadratic_scan(&i).unwrap() {
            ScanOutcome::Inconclusive { survivors, .. } => {
                assert_eq!(survivors, vec![vec![m(&[1, 2]), m(&[2, 3])]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_quadric_rejected() {
        let i = Ideal::new(3, vec![poly(3, &[(&[1], 1)])]).unwrap();
        assert!(fixed_coordinate_quadratic_scan(&i).is_err());
    }
}
