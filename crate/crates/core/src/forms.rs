//! Multilinear forms on chart vector fields: transpose and alternating
//! structure, iterated derivative operators, differential operators,
//! and the exterior derivative with its `dd = 0` property.
//!
//! Forms are stored by dense coefficient expressions on the standard
//! chart frame; function-linearity in every slot makes the action on
//! arbitrary fields a finite contraction against those coefficients.
//!
//! Argument convention used throughout: `apply(&[A_0, ..., A_{r-1}])`
//! lists the arguments innermost-first, i.e. `A_0` is the field written
//! closest to the form in the juxtaposition notation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::fields::{derivation_apply, lie_bracket, SmoothFunction, VectorField};

/// An `arity`-linear form with expression coefficients on the chart
/// frame. `alternating` records a sampled certification performed at
/// construction.
#[derive(Debug, Clone)]
pub struct SForm {
    arity: usize,
    dim: usize,
    coeffs: Vec<Expr>,
    alternating: bool,
}

const ALTERNATING_TOL: f64 = 1e-9;
const ALTERNATING_SAMPLES: usize = 64;

fn index_of(tuple: &[usize], dim: usize) -> usize {
    tuple.iter().rev().fold(0, |acc, &i| acc * dim + i)
}

fn tuples(arity: usize, dim: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |i| {
                    let mut t2 = t.clone();
                    t2.push(i);
                    t2
                })
            })
            .collect();
    }
    out
}

impl SForm {
    /// Build a form from dense coefficients indexed by
    /// `index_of(tuple)`. When `alternating` is claimed for arity >= 2,
    /// slot antisymmetry is certified on sampled points; a violation is
    /// reported as [`Error::NotAlternating`] with the residual.
    pub fn new(arity: usize, dim: usize, coeffs: Vec<Expr>, alternating: bool) -> Result<Self> {
        let expect = dim.pow(arity as u32);
        if coeffs.len() != expect {
            return Err(Error::DimMismatch {
                expected: expect,
                got: coeffs.len(),
            });
        }
        let form = SForm {
            arity,
            dim,
            coeffs,
            alternating,
        };
        if alternating && arity >= 2 {
            let residual = form.antisymmetry_residual(ALTERNATING_SAMPLES, 0x41)?;
            if residual > ALTERNATING_TOL * form.sampled_scale(0x41)? {
                return Err(Error::NotAlternating(residual));
            }
        }
        Ok(form)
    }

    /// Parse dense coefficients from expression strings, ordered by
    /// `index_of`.
    pub fn parse(arity: usize, dim: usize, sources: &[&str], alternating: bool) -> Result<Self> {
        let coeffs = sources
            .iter()
            .map(|s| crate::expr::parse(s, dim, 1))
            .collect::<Result<Vec<_>>>()?;
        SForm::new(arity, dim, coeffs, alternating)
    }

    /// The 0-form given by a scalar function.
    pub fn from_function(f: &SmoothFunction) -> SForm {
        SForm {
            arity: 0,
            dim: f.dim(),
            coeffs: vec![f.expr().clone()],
            alternating: true,
        }
    }

    pub fn zero(arity: usize, dim: usize) -> SForm {
        SForm {
            arity,
            dim,
            coeffs: vec![Expr::constant(0.0); dim.pow(arity as u32)],
            alternating: true,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    pub fn coeff(&self, tuple: &[usize]) -> &Expr {
        &self.coeffs[index_of(tuple, self.dim)]
    }

    fn check_args(&self, n: usize) -> Result<()> {
        if n != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: n,
            });
        }
        Ok(())
    }

    /// Numeric action on fields, innermost-first.
    pub fn apply(&self, args: &[&VectorField], z: &[Complex64]) -> Result<Complex64> {
        self.check_args(args.len())?;
        let vals = args
            .iter()
            .map(|x| x.eval(z))
            .collect::<Result<Vec<_>>>()?;
        let mut acc = Complex64::new(0.0, 0.0);
        for tuple in tuples(self.arity, self.dim) {
            let c = self.coeffs[index_of(&tuple, self.dim)].eval(z)?;
            if c.norm() == 0.0 {
                continue;
            }
            let prod = tuple
                .iter()
                .enumerate()
                .fold(Complex64::new(1.0, 0.0), |p, (k, &i)| p * vals[k][i]);
            acc += c * prod;
        }
        Ok(acc)
    }

    /// Symbolic action on fields, as an expression in the chart point.
    pub fn action_expr(&self, args: &[&VectorField]) -> Result<Expr> {
        self.check_args(args.len())?;
        let mut acc = Expr::constant(0.0);
        for tuple in tuples(self.arity, self.dim) {
            let mut term = self.coeffs[index_of(&tuple, self.dim)].clone();
            for (k, &i) in tuple.iter().enumerate() {
                term = Expr::mul(term, args[k].components()[i].clone());
            }
            acc = Expr::add(acc, term);
        }
        Ok(acc)
    }

    /// Swap the two slots of a bilinear form. An involution; equals the
    /// form itself iff symmetric, its negative iff alternating.
    pub fn transpose(&self) -> Result<SForm> {
        self.check_args(2).map_err(|_| Error::ArityMismatch {
            expected: 2,
            got: self.arity,
        })?;
        let mut coeffs = self.coeffs.clone();
        for a in 0..self.dim {
            for b in 0..self.dim {
                coeffs[index_of(&[a, b], self.dim)] =
                    self.coeffs[index_of(&[b, a], self.dim)].clone();
            }
        }
        Ok(SForm {
            arity: 2,
            dim: self.dim,
            coeffs,
            alternating: self.alternating,
        })
    }

    /// Largest sampled antisymmetry violation over random slot pairs.
    pub fn antisymmetry_residual(&self, samples: usize, seed: u64) -> Result<f64> {
        if self.arity < 2 {
            return Ok(0.0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let z: Vec<Complex64> = (0..self.dim)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
                .collect();
            let mut tuple: Vec<usize> =
                (0..self.arity).map(|_| rng.gen_range(0..self.dim)).collect();
            let p = rng.gen_range(0..self.arity - 1);
            let a = self.coeffs[index_of(&tuple, self.dim)].eval(&z)?;
            tuple.swap(p, p + 1);
            let b = self.coeffs[index_of(&tuple, self.dim)].eval(&z)?;
            worst = worst.max((a + b).norm());
        }
        Ok(worst)
    }

    fn sampled_scale(&self, seed: u64) -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut scale: f64 = 1.0;
        for _ in 0..16 {
            let z: Vec<Complex64> = (0..self.dim)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
                .collect();
            for c in &self.coeffs {
                scale = scale.max(c.eval(&z)?.norm());
            }
        }
        Ok(scale)
    }
}

/// Iterated derivative action `(X_1 d) (X_2 d) ... (X_s d) f` at `z`;
/// the rightmost field acts first. `s = 0` returns `f(z)`.
pub fn dform_derivative_operator(
    f: &SmoothFunction,
    fields: &[&VectorField],
    z: &[Complex64],
) -> Result<Complex64> {
    let mut g = f.clone();
    for x in fields.iter().rev() {
        g = x.apply(&g)?;
    }
    g.eval(z)
}

/// A differential operator `sum_s A_s D^s` with dense contravariant
/// tensor coefficients per order.
#[derive(Debug, Clone)]
pub struct DifferentialOperator {
    dim: usize,
    tensors: Vec<Vec<Expr>>,
}

impl DifferentialOperator {
    pub fn new(dim: usize, tensors: Vec<Vec<Expr>>) -> Result<Self> {
        for (s, t) in tensors.iter().enumerate() {
            let expect = dim.pow(s as u32);
            if t.len() != expect {
                return Err(Error::ArityMismatch {
                    expected: expect,
                    got: t.len(),
                });
            }
        }
        Ok(DifferentialOperator { dim, tensors })
    }

    pub fn order(&self) -> usize {
        self.tensors.len().saturating_sub(1)
    }

    /// `(I f)(z) = sum_s sum_tuple A_s[tuple](z) (d_{i_1} ... d_{i_s} f)(z)`.
    pub fn apply(&self, f: &SmoothFunction, z: &[Complex64]) -> Result<Complex64> {
        if f.dim() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: f.dim(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, tensor) in self.tensors.iter().enumerate() {
            for tuple in tuples(s, self.dim) {
                let a = tensor[index_of(&tuple, self.dim)].eval(z)?;
                if a.norm() == 0.0 {
                    continue;
                }
                let mut partial = f.expr().clone();
                for &i in &tuple {
                    partial = partial.diff(i);
                }
                acc += a * partial.eval(z)?;
            }
        }
        Ok(acc)
    }
}

/// Exterior derivative as an `(arity+1)`-form, computed on the chart
/// frame where bracket terms vanish: the coefficient at a tuple is the
/// signed alternating sum of slot partial derivatives of the lower
/// coefficients.
pub fn exterior_derivative(b: &SForm) -> Result<SForm> {
    if !b.alternating {
        return Err(Error::NotAlternating(
            b.antisymmetry_residual(ALTERNATING_SAMPLES, 0x41)?,
        ));
    }
    let d = b.dim;
    let s = b.arity;
    let mut coeffs = vec![Expr::constant(0.0); d.pow((s + 1) as u32)];
    for tuple in tuples(s + 1, d) {
        let mut acc = Expr::constant(0.0);
        for j in 0..=s {
            let mut rest = tuple.clone();
            let i = rest.remove(j);
            let term = b.coeffs[index_of(&rest, d)].diff(i);
            let term = if j % 2 == 0 {
                term
            } else {
                Expr::neg(term)
            };
            acc = Expr::add(acc, term);
        }
        coeffs[index_of(&tuple, d)] = acc;
    }
    Ok(SForm {
        arity: s + 1,
        dim: d,
        coeffs,
        alternating: true,
    })
}

/// Literal evaluation of the exterior derivative's defining action on
/// arbitrary fields (innermost-first argument list `X_0, ..., X_s`):
/// the alternating sum of slot derivatives plus the signed bracket
/// double sum. Used to cross-check [`exterior_derivative`].
pub fn exterior_action(b: &SForm, args: &[&VectorField], z: &[Complex64]) -> Result<Complex64> {
    let s = b.arity;
    if args.len() != s + 1 {
        return Err(Error::ArityMismatch {
            expected: s + 1,
            got: args.len(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=s {
        let mut rest: Vec<&VectorField> = args.to_vec();
        let xj = rest.remove(j);
        let inner = SmoothFunction::new(b.dim, b.action_expr(&rest)?);
        let val = derivation_apply(xj, &inner, z)?;
        acc += if j % 2 == 0 { val } else { -val };
    }
    for i in 0..s {
        for l in (i + 1)..=s {
            let bracket = lie_bracket(args[i], args[l])?;
            let mut rest: Vec<&VectorField> = vec![&bracket];
            for (k, a) in args.iter().enumerate() {
                if k != i && k != l {
                    rest.push(a);
                }
            }
            let val = b.apply(&rest, z)?;
            acc += if (i + l) % 2 == 0 { val } else { -val };
        }
    }
    Ok(acc)
}

const CLOSED_TOL: f64 = 1e-9;

/// Sampled test that `dB = 0`: evaluates every coefficient of the
/// exterior derivative at `samples` random points.
pub fn is_closed(b: &SForm, samples: usize, seed: u64) -> Result<bool> {
    let db = exterior_derivative(b)?;
    let scale = b.sampled_scale(seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let z: Vec<Complex64> = (0..b.dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
            .collect();
        for c in &db.coeffs {
            if c.eval(&z)?.norm() > CLOSED_TOL * scale {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sampled test that `dB' = B`, certifying `bprime` as an exactness
/// witness for `b`.
pub fn is_exact_witness(b: &SForm, bprime: &SForm, samples: usize, seed: u64) -> Result<bool> {
    if bprime.arity + 1 != b.arity || bprime.dim != b.dim {
        return Ok(false);
    }
    let db = exterior_derivative(bprime)?;
    let scale = b.sampled_scale(seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let z: Vec<Complex64> = (0..b.dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
            .collect();
        for (c, e) in db.coeffs.iter().zip(&b.coeffs) {
            if (c.eval(&z)? - e.eval(&z)?).norm() > CLOSED_TOL * scale {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
