//! Invertible linear changes of coordinates on `E_1`, extended to algebra
//! automorphisms of `E`.

use crate::element::{ExtElement, LinearForm};
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::linalg::Matrix;
use crate::monomial::Monomial;

/// Row `i` of the matrix holds the image of `e_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange<K = Q> {
    matrix: Matrix<K>,
}

impl<K: Field> LinearChange<K> {
    pub fn new(matrix: Matrix<K>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.det().is_zero() {
            return Err(Error::SingularChange);
        }
        Ok(LinearChange { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LinearChange { matrix: Matrix::identity(n) }
    }

    /// `e_i ↦ images[i-1]`.
    pub fn from_images(images: &[LinearForm<K>]) -> Result<Self> {
        let n = images.len();
        if let Some(bad) = images.iter().find(|l| l.ambient() != n) {
            return Err(Error::AmbientMismatch { left: n, right: bad.ambient() });
        }
        Self::new(Matrix::from_rows(images.iter().map(|l| l.coeffs().to_vec()).collect()))
    }

    /// The change that rewrites everything in the coordinates `f_1, …, f_n`:
    /// after substitution, the element that used to be `f_i` reads `e_i`.
    pub fn from_new_coordinates(forms: &[LinearForm<K>]) -> Result<Self> {
        Self::from_images(forms)?.inverse()
    }

    pub fn ambient(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Matrix<K> {
        &self.matrix
    }

    pub fn image_of_var(&self, i: usize) -> LinearForm<K> {
        LinearForm::new(self.matrix.row(i - 1).to_vec())
    }

    /// Apply `self`, then `then`.
    pub fn compose(&self, then: &Self) -> Result<Self> {
        if self.ambient() != then.ambient() {
            return Err(Error::AmbientMismatch { left: self.ambient(), right: then.ambient() });
        }
        Ok(LinearChange { matrix: self.matrix.mul(&then.matrix) })
    }

    pub fn inverse(&self) -> Result<Self> {
        self.matrix.inverse().map(|matrix| LinearChange { matrix }).ok_or(Error::SingularChange)
    }

    pub fn apply_linear(&self, l: &LinearForm<K>) -> Result<LinearForm<K>> {
        let n = self.ambient();
        if l.ambient() != n {
            return Err(Error::AmbientMismatch { left: l.ambient(), right: n });
        }
        let mut out = vec![K::zero(); n];
        for (i, c) in l.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = slot.clone() + c.clone() * self.matrix.get(i, j).clone();
            }
        }
        Ok(LinearForm::new(out))
    }

    /// The algebra map extending the variable substitution.
    pub fn substitute(&self, f: &ExtElement<K>) -> Result<ExtElement<K>> {
        let n = self.ambient();
        if f.ambient() != n {
            return Err(Error::AmbientMismatch { left: f.ambient(), right: n });
        }
        let images: Vec<ExtElement<K>> =
            (1..=n).map(|i| self.image_of_var(i).to_element()).collect();
        let mut out = ExtElement::zero(n);
        for (m, c) in f.terms() {
            out.add_scaled(c, &product_of_images(n, m, &images));
        }
        Ok(out)
    }
}

fn product_of_images<K: Field>(n: usize, m: Monomial, images: &[ExtElement<K>]) -> ExtElement<K> {
    let mut acc = ExtElement::one(n);
    for i in m.vars() {
        acc = &acc * &images[i - 1];
        if acc.is_zero() {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::from_i64s(c)
    }

    #[test]
    fn identity_is_neutral() {
        let f = &(&ExtElement::<Q>::var(3, 1) * &ExtElement::var(3, 2)) + &ExtElement::var(3, 3);
        assert_eq!(LinearChange::identity(3).substitute(&f).unwrap(), f);
    }

    #[test]
    fn singular_matrix_rejected() {
        let err = LinearChange::from_images(&[lf(&[1, 1]), lf(&[2, 2])]).unwrap_err();
        assert_eq!(err, Error::SingularChange);
    }

    #[test]
    fn inverse_undoes_substitution() {
        let c = LinearChange::from_images(&[lf(&[1, 2, 0]), lf(&[0, 1, 3]), lf(&[1, 0, 1])]).unwrap();
        let f = &ExtElement::<Q>::var(3, 1) * &ExtElement::var(3, 3);
        let g = c.substitute(&f).unwrap();
        assert_eq!(c.inverse().unwrap().substitute(&g).unwrap(), f);
        assert_eq!(c.compose(&c.inverse().unwrap()).unwrap(), LinearChange::identity(3));
    }

    #[test]
    fn new_coordinates_read_as_variables() {
        let forms = [lf(&[1, 0, 0, 1]), lf(&[0, 1, 1, 0]), lf(&[1, 0, 0, -1]), lf(&[0, 1, -1, 0])];
        let c = LinearChange::from_new_coordinates(&forms).unwrap();
        for (i, f) in forms.iter().enumerate() {
            assert_eq!(c.apply_linear(f).unwrap(), LinearForm::var(4, i + 1));
        }
        assert_eq!(*c.image_of_var(1).coeff(1), rational(1, 2));
    }
}
