//! Truncated Taylor series over an associative algebra.
//!
//! A [`Jet`] stores the first `m` Taylor coefficients of a function
//! `F(t) = sum_k t^{k/root} coeffs[k] + (higher order)` in the possibly
//! fractional variable `s = t^{1/root}`. All arithmetic truncates to the
//! shorter operand: coefficients beyond what both operands know are
//! unknown, not zero.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficient ring for jets. Implemented by the float backends
/// ([`crate::algebra::AlgebraElement`]), the exact rational backends
/// ([`crate::exact::RationalElement`]), and plain `Complex64` scalars.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn add(&self, rhs: &Self) -> Result<Self>;
    fn sub(&self, rhs: &Self) -> Result<Self>;
    fn mul(&self, rhs: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    /// Additive identity with the same backend shape as `self`.
    fn zero_like(&self) -> Self;
    /// Multiplicative identity with the same backend shape as `self`.
    fn one_like(&self) -> Self;
    fn inverse(&self) -> Result<Self>;
    fn scale(&self, lambda: f64) -> Self;
    fn norm(&self) -> f64;
    /// Zero test. Exact backends ignore `tol`.
    fn is_zero(&self, tol: f64) -> bool;
}

impl Coeff for Complex64 {
    fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn inverse(&self) -> Result<Self> {
        if self.norm() == 0.0 {
            return Err(Error::NonInvertible("zero complex scalar".into()));
        }
        Ok(self.inv())
    }
    fn scale(&self, lambda: f64) -> Self {
        self * lambda
    }
    fn norm(&self) -> f64 {
        num_complex::Complex::norm(*self)
    }
    fn is_zero(&self, tol: f64) -> bool {
        Coeff::norm(self) <= tol
    }
}

/// Relative zero-test scale used throughout the float mode.
pub const ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet<C: Coeff> {
    coeffs: Vec<C>,
    root: u32,
}

impl<C: Coeff> Jet<C> {
    /// Jet with the given coefficients in the variable `s = t^{1/root}`.
    pub fn new(coeffs: Vec<C>, root: u32) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Config("jet needs at least one coefficient".into()));
        }
        if root == 0 {
            return Err(Error::Config("jet root must be positive".into()));
        }
        Ok(Jet { coeffs, root })
    }

    /// Integer-variable jet (root 1).
    pub fn from_coeffs(coeffs: Vec<C>) -> Result<Self> {
        Jet::new(coeffs, 1)
    }

    /// Constant jet `1` of the given length, shaped like `like`.
    pub fn one(like: &C, len: usize, root: u32) -> Self {
        let mut coeffs = vec![like.zero_like(); len.max(1)];
        coeffs[0] = like.one_like();
        Jet { coeffs, root }
    }

    /// Constant jet `0` of the given length, shaped like `like`.
    pub fn zero(like: &C, len: usize, root: u32) -> Self {
        Jet {
            coeffs: vec![like.zero_like(); len.max(1)],
            root,
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// Largest coefficient norm; the scale against which zero tests run.
    pub fn scale_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn truncate(mut self, len: usize) -> Self {
        self.coeffs.truncate(len.max(1));
        self
    }

    /// Reroot into the finer variable `s = t^{1/new_root}`. `new_root`
    /// must be a multiple of the current root; coefficients spread to
    /// indices `k * (new_root / root)`.
    pub fn reroot(&self, new_root: u32) -> Result<Self> {
        if new_root == 0 || new_root % self.root != 0 {
            return Err(Error::RootIncompatible {
                requested: new_root,
                actual: self.root,
            });
        }
        let factor = (new_root / self.root) as usize;
        if factor == 1 {
            return Ok(self.clone());
        }
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; (self.coeffs.len() - 1) * factor + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * factor] = c.clone();
        }
        Ok(Jet {
            coeffs,
            root: new_root,
        })
    }

    /// Bring two jets to a common root (the lcm) and a common length
    /// (the shorter one; unknown coefficients are not padded with zeros).
    pub fn harmonize(&self, other: &Self) -> Result<(Self, Self)> {
        let root = lcm(self.root, other.root);
        let a = self.reroot(root)?;
        let b = other.reroot(root)?;
        let len = a.coeffs.len().min(b.coeffs.len());
        Ok((a.truncate(len), b.truncate(len)))
    }

    /// Coefficientwise sum, after harmonizing roots.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.harmonize(other)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x.add(y))
            .collect::<Result<Vec<_>>>()?;
        Ok(Jet {
            coeffs,
            root: a.root,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            root: self.root,
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, lambda: f64) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c.scale(lambda)).collect(),
            root: self.root,
        }
    }

    /// Cauchy product, factor order preserved; roots harmonized first.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.harmonize(other)?;
        let len = a.coeffs.len();
        let zero = a.coeffs[0].zero_like();
        let mut coeffs = vec![zero; len];
        for k in 0..len {
            let mut acc = coeffs[k].clone();
            for l in 0..=k {
                acc = acc.add(&a.coeffs[l].mul(&b.coeffs[k - l])?)?;
            }
            coeffs[k] = acc;
        }
        Ok(Jet {
            coeffs,
            root: a.root,
        })
    }

    /// Multiplicative inverse through the truncation order:
    /// `G_0 = F_0^{-1}`, `G_k = -G_0 sum_{l=1..k} F_l G_{k-l}`.
    pub fn inverse(&self) -> Result<Self> {
        let g0 = self.coeffs[0]
            .inverse()
            .map_err(|_| Error::NonInvertibleLeadingTerm)?;
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(g0.clone());
        for k in 1..self.coeffs.len() {
            let mut acc = self.coeffs[0].zero_like();
            for l in 1..=k {
                acc = acc.add(&self.coeffs[l].mul(&out[k - l])?)?;
            }
            out.push(g0.mul(&acc)?.neg());
        }
        Ok(Jet {
            coeffs: out,
            root: self.root,
        })
    }

    /// Substitution `H(t) := F(t^p)`: spreads coefficient `k` to index
    /// `k * p`, truncated to `out_len`.
    pub fn compose_power(&self, p: u32, out_len: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::Config("compose_power needs p >= 1".into()));
        }
        let p = p as usize;
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; out_len.max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * p < coeffs.len() {
                coeffs[k * p] = c.clone();
            }
        }
        Ok(Jet {
            coeffs,
            root: self.root,
        })
    }

    /// Argument rescaling `H(t) := F(lambda t)`: coefficient `k` picks up
    /// a factor `lambda^k`.
    pub fn rescale(&self, lambda: f64) -> Self {
        let mut factor = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c.scale(factor);
                factor *= lambda;
                out
            })
            .collect();
        Jet {
            coeffs,
            root: self.root,
        }
    }

    /// Decide the fractional order claim `F = o_f(t^m)`: true iff the
    /// coefficients at indices `0..=m*root` all vanish. Errs with
    /// [`Error::OrderUndecidable`] when the jet is too short to know.
    pub fn order_claim(&self, m: u32) -> Result<bool> {
        let upto = (m as usize) * (self.root as usize);
        if upto >= self.coeffs.len() {
            return Err(Error::OrderUndecidable {
                m,
                root: self.root,
                len: self.coeffs.len(),
            });
        }
        let tol = ZERO_TOL * self.scale_norm();
        Ok(self.coeffs[..=upto].iter().all(|c| c.is_zero(tol)))
    }

    /// Evaluate the truncated polynomial at `t >= 0` (Horner in
    /// `s = t^{1/root}`).
    pub fn eval(&self, t: f64) -> Result<C> {
        let s = t.powf(1.0 / self.root as f64);
        let mut acc = self.coeffs.last().unwrap().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.scale(s).add(c)?;
        }
        Ok(acc)
    }

    /// Max-norm distance to another jet at common root/length.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        let diff = self.sub(other)?;
        Ok(diff.scale_norm())
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn jet(xs: &[f64]) -> Jet<Complex64> {
        Jet::from_coeffs(xs.iter().map(|&x| c(x)).collect()).unwrap()
    }

    // Independent polynomial convolution oracle (truncated).
    fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
        let len = a.len().min(b.len());
        let mut out = vec![0.0; len];
        for k in 0..len {
            for l in 0..=k {
                out[k] += a[l] * b[k - l];
            }
        }
        out
    }

    #[test]
    fn add_componentwise() {
        let sum = jet(&[1.0, 2.0]).add(&jet(&[3.0, 4.0])).unwrap();
        assert_eq!(sum.coeffs(), &[c(4.0), c(6.0)]);
    }

    #[test]
    fn add_cancels() {
        let f = jet(&[1.5, -2.0, 3.0]);
        let z = f.add(&f.neg()).unwrap();
        assert!(z.scale_norm() == 0.0);
    }

    #[test]
    fn add_harmonizes_roots() {
        // F = 1 + 2t at root 1, G = 5s at root 2 (s = sqrt(t)).
        // In s the expansions are (1,0,2) and (0,5); G only knows
        // coefficients through s^1, so the sum is truncated there.
        let f = jet(&[1.0, 2.0]);
        let g = Jet::new(vec![c(0.0), c(5.0)], 2).unwrap();
        let sum = f.add(&g).unwrap();
        assert_eq!(sum.root(), 2);
        assert_eq!(sum.coeffs(), &[c(1.0), c(5.0)]);
        // Substitution oracle: evaluate both routes at a small t.
        let t = 0.01;
        let direct = f.eval(t).unwrap() + g.eval(t).unwrap();
        let via_sum = sum.eval(t).unwrap() + c(2.0 * t); // add back the truncated 2 s^2 term
        assert!((direct - via_sum).norm() < 1e-14);
    }

    #[test]
    fn scale_examples() {
        let f = jet(&[1.0, 3.0]);
        assert_eq!(f.scale(0.0).coeffs(), &[c(0.0), c(0.0)]);
        assert_eq!(f.scale(1.0).coeffs(), f.coeffs());
        assert_eq!(f.scale(2.0).coeffs(), &[c(2.0), c(6.0)]);
    }

    #[test]
    fn mul_matches_convolution_oracle() {
        let a = [1.0, 2.0];
        let b = [3.0, 4.0];
        let prod = jet(&a).mul(&jet(&b)).unwrap();
        let oracle = convolve(&a, &b);
        assert_eq!(prod.coeffs(), &[c(oracle[0]), c(oracle[1])]);
        assert_eq!(prod.coeffs(), &[c(3.0), c(10.0)]);
    }

    #[test]
    fn mul_unit_identity() {
        let f = jet(&[2.0, -1.0, 0.5]);
        let one = Jet::one(&c(0.0), 3, 1);
        assert_eq!(f.mul(&one).unwrap(), f);
        assert_eq!(one.mul(&f).unwrap(), f);
    }

    #[test]
    fn inverse_geometric_series() {
        // (1 + t)^{-1} = 1 - t + t^2 - t^3
        let f = jet(&[1.0, 1.0, 0.0, 0.0]);
        let inv = f.inverse().unwrap();
        assert_eq!(inv.coeffs(), &[c(1.0), c(-1.0), c(1.0), c(-1.0)]);
        let prod = f.mul(&inv).unwrap();
        assert!(prod.sub(&Jet::one(&c(0.0), 4, 1)).unwrap().scale_norm() < 1e-15);
    }

    #[test]
    fn inverse_unit_is_unit() {
        let one: Jet<Complex64> = Jet::one(&c(0.0), 5, 1);
        assert_eq!(one.inverse().unwrap(), one);
    }

    #[test]
    fn inverse_rejects_zero_leading_term() {
        let f = jet(&[0.0, 1.0]);
        assert!(matches!(
            f.inverse(),
            Err(Error::NonInvertibleLeadingTerm)
        ));
    }

    #[test]
    fn compose_power_spreads_indices() {
        let f = jet(&[1.0, 1.0]);
        let h = f.compose_power(2, 3).unwrap();
        assert_eq!(h.coeffs(), &[c(1.0), c(0.0), c(1.0)]);
        assert_eq!(f.compose_power(1, 2).unwrap(), f);
        let g = jet(&[5.0, 6.0, 7.0]);
        let h = g.compose_power(3, 7).unwrap();
        assert_eq!(
            h.coeffs(),
            &[c(5.0), c(0.0), c(0.0), c(6.0), c(0.0), c(0.0), c(7.0)]
        );
    }

    #[test]
    fn rescale_powers() {
        let f = jet(&[1.0, 1.0, 1.0]);
        assert_eq!(f.rescale(1.0), f);
        assert_eq!(f.rescale(2.0).coeffs(), &[c(1.0), c(2.0), c(4.0)]);
        let back = f.rescale(2.0).rescale(0.5);
        assert!(back.sub(&f).unwrap().scale_norm() < 1e-12);
    }

    #[test]
    fn reroot_spread_and_eval() {
        let f = jet(&[1.0, 2.0]);
        assert_eq!(f.reroot(1).unwrap(), f);
        let r = f.reroot(2).unwrap();
        assert_eq!(r.root(), 2);
        assert_eq!(r.coeffs(), &[c(1.0), c(0.0), c(2.0)]);
        // Direct polynomial evaluation oracle at t = 0.01.
        let t = 0.01;
        assert!((f.eval(t).unwrap() - r.eval(t).unwrap()).norm() <= 1e-12);
    }

    #[test]
    fn reroot_rejects_non_multiple() {
        let f = Jet::new(vec![c(1.0)], 2).unwrap();
        assert!(matches!(f.reroot(3), Err(Error::RootIncompatible { .. })));
    }

    #[test]
    fn order_claims() {
        let z = Jet::zero(&c(0.0), 4, 1);
        assert!(z.order_claim(0).unwrap());
        assert!(z.order_claim(3).unwrap());

        let f = jet(&[0.0, 0.0, 5.0]);
        assert!(f.order_claim(1).unwrap());
        assert!(!f.order_claim(2).unwrap());
        assert!(matches!(
            f.order_claim(3),
            Err(Error::OrderUndecidable { .. })
        ));
    }

    #[test]
    fn order_claim_product_adds() {
        // claim 1 jets (root 1) have zeros through index 1
        let f = jet(&[0.0, 0.0, 2.0, 1.0, 0.5, 0.25]);
        let g = jet(&[0.0, 0.0, -1.0, 3.0, 2.0, 1.0]);
        assert!(f.order_claim(1).unwrap());
        assert!(g.order_claim(1).unwrap());
        let prod = f.mul(&g).unwrap();
        assert!(prod.order_claim(2).unwrap());
    }
}
