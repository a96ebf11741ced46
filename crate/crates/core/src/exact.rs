//! Exact rational coefficient backends.
//!
//! Jets over these elements satisfy their algebraic contracts
//! coefficient-by-coefficient with no tolerance: ring axioms hold
//! exactly, and `F * F^{-1}` is exactly the unit jet through the
//! truncation order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::jets::Coeff;

/// A rational scalar or a dense square matrix of rationals (row-major).
#[derive(Debug, Clone, PartialEq)]
pub enum RationalElement {
    Scalar(BigRational),
    Matrix { n: usize, data: Vec<BigRational> },
}

impl RationalElement {
    pub fn from_int(x: i64) -> Self {
        RationalElement::Scalar(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        RationalElement::Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Row-major matrix of small integers.
    pub fn matrix_from_ints(n: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(RationalElement::Matrix {
            n,
            data: entries
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        })
    }

    fn mismatch(&self, other: &Self) -> Error {
        let tag = |e: &Self| match e {
            RationalElement::Scalar(_) => "rational-scalar".to_string(),
            RationalElement::Matrix { n, .. } => format!("rational-matrix({n})"),
        };
        Error::BackendMismatch(format!("{} vs {}", tag(self), tag(other)))
    }

    /// Exact Gauss-Jordan inverse.
    fn matrix_inverse(n: usize, data: &[BigRational]) -> Result<Vec<BigRational>> {
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| data[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::NonInvertible("singular rational matrix".into()))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &p;
                inv[col][j] /= &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        let t = &a[col][j] * &f;
                        a[r][j] -= t;
                        let t = &inv[col][j] * &f;
                        inv[r][j] -= t;
                    }
                }
            }
        }
        Ok(inv.into_iter().flatten().collect())
    }
}

impl Coeff for RationalElement {
    fn add(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (RationalElement::Scalar(a), RationalElement::Scalar(b)) => {
                Ok(RationalElement::Scalar(a + b))
            }
            (
                RationalElement::Matrix { n: na, data: a },
                RationalElement::Matrix { n: nb, data: b },
            ) if na == nb => Ok(RationalElement::Matrix {
                n: *na,
                data: a.iter().zip(b).map(|(x, y)| x + y).collect(),
            }),
            _ => Err(self.mismatch(rhs)),
        }
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (RationalElement::Scalar(a), RationalElement::Scalar(b)) => {
                Ok(RationalElement::Scalar(a * b))
            }
            (
                RationalElement::Matrix { n: na, data: a },
                RationalElement::Matrix { n: nb, data: b },
            ) if na == nb => {
                let n = *na;
                let mut out = vec![BigRational::zero(); n * n];
                for i in 0..n {
                    for k in 0..n {
                        if a[i * n + k].is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let t = &a[i * n + k] * &b[k * n + j];
                            out[i * n + j] += t;
                        }
                    }
                }
                Ok(RationalElement::Matrix { n, data: out })
            }
            _ => Err(self.mismatch(rhs)),
        }
    }

    fn neg(&self) -> Self {
        match self {
            RationalElement::Scalar(a) => RationalElement::Scalar(-a),
            RationalElement::Matrix { n, data } => RationalElement::Matrix {
                n: *n,
                data: data.iter().map(|x| -x).collect(),
            },
        }
    }

    fn zero_like(&self) -> Self {
        match self {
            RationalElement::Scalar(_) => RationalElement::Scalar(BigRational::zero()),
            RationalElement::Matrix { n, .. } => RationalElement::Matrix {
                n: *n,
                data: vec![BigRational::zero(); n * n],
            },
        }
    }

    fn one_like(&self) -> Self {
        match self {
            RationalElement::Scalar(_) => RationalElement::Scalar(BigRational::one()),
            RationalElement::Matrix { n, .. } => RationalElement::Matrix {
                n: *n,
                data: (0..n * n)
                    .map(|k| {
                        if k % (n + 1) == 0 {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect(),
            },
        }
    }

    fn inverse(&self) -> Result<Self> {
        match self {
            RationalElement::Scalar(a) => {
                if a.is_zero() {
                    Err(Error::NonInvertible("zero rational".into()))
                } else {
                    Ok(RationalElement::Scalar(a.recip()))
                }
            }
            RationalElement::Matrix { n, data } => Ok(RationalElement::Matrix {
                n: *n,
                data: Self::matrix_inverse(*n, data)?,
            }),
        }
    }

    fn scale(&self, lambda: f64) -> Self {
        // Every finite f64 is an exact rational.
        let l = BigRational::from_float(lambda).unwrap_or_else(BigRational::zero);
        match self {
            RationalElement::Scalar(a) => RationalElement::Scalar(a * &l),
            RationalElement::Matrix { n, data } => RationalElement::Matrix {
                n: *n,
                data: data.iter().map(|x| x * &l).collect(),
            },
        }
    }

    fn norm(&self) -> f64 {
        let abs = |x: &BigRational| x.abs().to_f64().unwrap_or(f64::INFINITY);
        match self {
            RationalElement::Scalar(a) => abs(a),
            RationalElement::Matrix { data, .. } => {
                data.iter().map(abs).map(|x| x * x).sum::<f64>().sqrt()
            }
        }
    }

    fn is_zero(&self, _tol: f64) -> bool {
        match self {
            RationalElement::Scalar(a) => a.is_zero(),
            RationalElement::Matrix { data, .. } => data.iter().all(|x| x.is_zero()),
        }
    }
}
