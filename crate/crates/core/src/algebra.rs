//! Concrete associative algebras: real scalars, complex scalars, and
//! dense n-by-n complex matrices, plus their invertible elements.
//!
//! The topology is a norm (absolute value, or Frobenius for matrices);
//! every limit statement elsewhere in the crate is a rate check against
//! this norm.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::Coeff;

/// Condition-estimate threshold above which matrix inversion is refused.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Relative tolerance for invertibility certification.
pub const INVERSE_TOL: f64 = 1e-12;

/// An element of one of the supported associative algebras.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraElement {
    Real(f64),
    Complex(Complex64),
    Matrix(DMatrix<Complex64>),
}

impl AlgebraElement {
    pub fn real(x: f64) -> Self {
        AlgebraElement::Real(x)
    }

    pub fn complex(re: f64, im: f64) -> Self {
        AlgebraElement::Complex(Complex64::new(re, im))
    }

    /// Square matrix from row-major real entries.
    pub fn matrix_from_rows(n: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != n * n {
            return Err(Error::DimMismatch {
                expected: n * n,
                got: rows.len(),
            });
        }
        let data: Vec<Complex64> = rows.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Ok(AlgebraElement::Matrix(DMatrix::from_row_slice(n, n, &data)))
    }

    pub fn identity_matrix(n: usize) -> Self {
        AlgebraElement::Matrix(DMatrix::identity(n, n))
    }

    pub fn zero_matrix(n: usize) -> Self {
        AlgebraElement::Matrix(DMatrix::zeros(n, n))
    }

    fn backend_name(&self) -> String {
        match self {
            AlgebraElement::Real(_) => "scalar-real".into(),
            AlgebraElement::Complex(_) => "scalar-complex".into(),
            AlgebraElement::Matrix(m) => format!("matrix({})", m.nrows()),
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::BackendMismatch(format!(
            "{} vs {}",
            self.backend_name(),
            other.backend_name()
        ))
    }

    /// Commutator `xy - yx`. Identically zero on the scalar backends.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let xy = self.mul(other)?;
        let yx = other.mul(self)?;
        xy.sub(&yx)
    }

    /// Flatten to a complex coefficient vector (row-major for matrices).
    pub fn to_flat(&self) -> Vec<Complex64> {
        match self {
            AlgebraElement::Real(x) => vec![Complex64::new(*x, 0.0)],
            AlgebraElement::Complex(c) => vec![*c],
            AlgebraElement::Matrix(m) => m.transpose().as_slice().to_vec(),
        }
    }

    /// Rebuild from a flat vector, using `self` as the shape template.
    pub fn from_flat(&self, flat: &[Complex64]) -> Result<Self> {
        match self {
            AlgebraElement::Real(_) => Ok(AlgebraElement::Real(flat[0].re)),
            AlgebraElement::Complex(_) => Ok(AlgebraElement::Complex(flat[0])),
            AlgebraElement::Matrix(m) => {
                let n = m.nrows();
                if flat.len() != n * n {
                    return Err(Error::DimMismatch {
                        expected: n * n,
                        got: flat.len(),
                    });
                }
                Ok(AlgebraElement::Matrix(DMatrix::from_row_slice(n, n, flat)))
            }
        }
    }
}

impl Coeff for AlgebraElement {
    fn add(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (AlgebraElement::Real(a), AlgebraElement::Real(b)) => Ok(AlgebraElement::Real(a + b)),
            (AlgebraElement::Complex(a), AlgebraElement::Complex(b)) => {
                Ok(AlgebraElement::Complex(a + b))
            }
            (AlgebraElement::Matrix(a), AlgebraElement::Matrix(b))
                if a.nrows() == b.nrows() =>
            {
                Ok(AlgebraElement::Matrix(a + b))
            }
            _ => Err(self.mismatch(rhs)),
        }
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (AlgebraElement::Real(a), AlgebraElement::Real(b)) => Ok(AlgebraElement::Real(a * b)),
            (AlgebraElement::Complex(a), AlgebraElement::Complex(b)) => {
                Ok(AlgebraElement::Complex(a * b))
            }
            (AlgebraElement::Matrix(a), AlgebraElement::Matrix(b))
                if a.nrows() == b.nrows() =>
            {
                Ok(AlgebraElement::Matrix(a * b))
            }
            _ => Err(self.mismatch(rhs)),
        }
    }

    fn neg(&self) -> Self {
        match self {
            AlgebraElement::Real(a) => AlgebraElement::Real(-a),
            AlgebraElement::Complex(a) => AlgebraElement::Complex(-a),
            AlgebraElement::Matrix(a) => AlgebraElement::Matrix(-a),
        }
    }

    fn zero_like(&self) -> Self {
        match self {
            AlgebraElement::Real(_) => AlgebraElement::Real(0.0),
            AlgebraElement::Complex(_) => AlgebraElement::Complex(Complex64::new(0.0, 0.0)),
            AlgebraElement::Matrix(m) => AlgebraElement::Matrix(DMatrix::zeros(m.nrows(), m.ncols())),
        }
    }

    fn one_like(&self) -> Self {
        match self {
            AlgebraElement::Real(_) => AlgebraElement::Real(1.0),
            AlgebraElement::Complex(_) => AlgebraElement::Complex(Complex64::new(1.0, 0.0)),
            AlgebraElement::Matrix(m) => {
                AlgebraElement::Matrix(DMatrix::identity(m.nrows(), m.ncols()))
            }
        }
    }

    fn inverse(&self) -> Result<Self> {
        match self {
            AlgebraElement::Real(a) => {
                if *a == 0.0 {
                    Err(Error::NonInvertible("zero real scalar".into()))
                } else {
                    Ok(AlgebraElement::Real(1.0 / a))
                }
            }
            AlgebraElement::Complex(a) => {
                if a.norm() == 0.0 {
                    Err(Error::NonInvertible("zero complex scalar".into()))
                } else {
                    Ok(AlgebraElement::Complex(a.inv()))
                }
            }
            AlgebraElement::Matrix(m) => {
                let inv = m
                    .clone()
                    .try_inverse()
                    .ok_or_else(|| Error::NonInvertible("singular matrix".into()))?;
                let cond = m.norm() * inv.norm();
                if !cond.is_finite() || cond > CONDITION_LIMIT {
                    return Err(Error::NonInvertible(format!(
                        "condition estimate {cond:.3e} exceeds {CONDITION_LIMIT:.0e}"
                    )));
                }
                Ok(AlgebraElement::Matrix(inv))
            }
        }
    }

    fn scale(&self, lambda: f64) -> Self {
        match self {
            AlgebraElement::Real(a) => AlgebraElement::Real(a * lambda),
            AlgebraElement::Complex(a) => AlgebraElement::Complex(a * lambda),
            AlgebraElement::Matrix(m) => AlgebraElement::Matrix(m * Complex64::new(lambda, 0.0)),
        }
    }

    fn norm(&self) -> f64 {
        match self {
            AlgebraElement::Real(a) => a.abs(),
            AlgebraElement::Complex(a) => a.norm(),
            AlgebraElement::Matrix(m) => m.norm(),
        }
    }

    fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
}

/// An algebra element certified to have a two-sided inverse.
#[derive(Debug, Clone)]
pub struct GroupElement {
    element: AlgebraElement,
}

impl GroupElement {
    /// Certify invertibility: `|g g^{-1} - 1| <= 1e-12 max(1, |g|)`.
    pub fn new(element: AlgebraElement) -> Result<Self> {
        let inv = element.inverse()?;
        let residual = element
            .mul(&inv)?
            .sub(&element.one_like())?
            .norm();
        if residual > INVERSE_TOL * element.norm().max(1.0) {
            return Err(Error::NonInvertible(format!(
                "inverse residual {residual:.3e}"
            )));
        }
        Ok(GroupElement { element })
    }

    pub fn element(&self) -> &AlgebraElement {
        &self.element
    }

    pub fn into_element(self) -> AlgebraElement {
        self.element
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        GroupElement::new(self.element.inverse()?)
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        Ok(GroupElement {
            element: self.element.mul(&other.element)?,
        })
    }
}

/// Truncated exponential `sum_{k<=order} (t x)^k / k!`. Any smooth curve
/// through the identity is a motion; this one doubles as the analytic
/// oracle with initial direction `x`.
pub fn exp_truncated(x: &AlgebraElement, t: f64, order: u32) -> Result<GroupElement> {
    if order == 0 {
        return Err(Error::Config("exp_truncated needs order >= 1".into()));
    }
    let mut acc = x.one_like();
    let mut term = x.one_like();
    for k in 1..=order {
        term = term.mul(&x.scale(t))?.scale(1.0 / k as f64);
        acc = acc.add(&term)?;
    }
    GroupElement::new(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e12() -> AlgebraElement {
        AlgebraElement::matrix_from_rows(2, &[0.0, 1.0, 0.0, 0.0]).unwrap()
    }

    fn e21() -> AlgebraElement {
        AlgebraElement::matrix_from_rows(2, &[0.0, 0.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn commutator_of_self_is_zero() {
        let x = e12();
        assert_eq!(x.commutator(&x).unwrap().norm(), 0.0);
    }

    #[test]
    fn commutator_e12_e21() {
        // Hand oracle: E12 E21 = diag(1,0), E21 E12 = diag(0,1).
        let expect = AlgebraElement::matrix_from_rows(2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        let got = e12().commutator(&e21()).unwrap();
        assert!(got.sub(&expect).unwrap().norm() == 0.0);
    }

    #[test]
    fn scalar_commutator_vanishes() {
        let a = AlgebraElement::real(3.0);
        let b = AlgebraElement::real(5.0);
        assert_eq!(a.commutator(&b).unwrap().norm(), 0.0);
    }

    #[test]
    fn commutator_rejects_mixed_backends() {
        let a = AlgebraElement::real(3.0);
        let b = e12();
        assert!(matches!(
            a.commutator(&b),
            Err(Error::BackendMismatch(_))
        ));
    }

    #[test]
    fn inverse_examples() {
        let id = AlgebraElement::identity_matrix(3);
        assert!(id.inverse().unwrap().sub(&id).unwrap().norm() == 0.0);

        let d = AlgebraElement::matrix_from_rows(2, &[2.0, 0.0, 0.0, 4.0]).unwrap();
        let expect = AlgebraElement::matrix_from_rows(2, &[0.5, 0.0, 0.0, 0.25]).unwrap();
        assert!(d.inverse().unwrap().sub(&expect).unwrap().norm() < 1e-15);

        assert!(matches!(
            AlgebraElement::real(0.0).inverse(),
            Err(Error::NonInvertible(_))
        ));
    }

    #[test]
    fn inverse_rejects_ill_conditioned() {
        let m = AlgebraElement::matrix_from_rows(2, &[1.0, 0.0, 0.0, 1e-15]).unwrap();
        assert!(m.inverse().is_err());
    }

    #[test]
    fn group_element_certified() {
        let g = GroupElement::new(e12().add(&e12().one_like()).unwrap()).unwrap();
        let gi = g.inverse().unwrap();
        let prod = g.mul(&gi).unwrap();
        let residual = prod
            .element()
            .sub(&prod.element().one_like())
            .unwrap()
            .norm();
        assert!(residual <= 1e-12);
    }

    #[test]
    fn exp_truncated_examples() {
        // x = 0 gives the identity.
        let z = AlgebraElement::zero_matrix(2);
        let g = exp_truncated(&z, 1.0, 5).unwrap();
        assert!(g
            .element()
            .sub(&z.one_like())
            .unwrap()
            .norm()
            == 0.0);

        // scalar e to 1e-12 via the reference series.
        let one = AlgebraElement::real(1.0);
        let g = exp_truncated(&one, 1.0, 20).unwrap();
        let AlgebraElement::Real(v) = g.element() else {
            panic!()
        };
        assert!((v - std::f64::consts::E).abs() < 1e-12);

        // nilpotent: series terminates at 1 + tN.
        let n = e12();
        let g = exp_truncated(&n, 0.7, 9).unwrap();
        let expect = n.one_like().add(&n.scale(0.7)).unwrap();
        assert!(g.element().sub(&expect).unwrap().norm() == 0.0);
    }
}
