//! Vector fields on open chart domains of `C^d`, acting as derivations
//! on smooth functions, together with their Lie bracket, pullbacks along
//! diffeomorphisms, and the flow that realizes a field as the initial
//! direction of a one-parameter motion on function values.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{directional_jet, Expr};
use crate::extrapolate;

/// A scalar function of `dim` chart variables.
#[derive(Debug, Clone)]
pub struct SmoothFunction {
    dim: usize,
    expr: Expr,
}

impl SmoothFunction {
    pub fn new(dim: usize, expr: Expr) -> Self {
        SmoothFunction { dim, expr }
    }

    pub fn parse(src: &str, dim: usize) -> Result<Self> {
        Ok(SmoothFunction {
            dim,
            expr: crate::expr::parse(src, dim, 1)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        self.check_dim(z.len())?;
        self.expr.eval(z)
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got,
            });
        }
        Ok(())
    }

    /// Pointwise product, for Leibniz-rule checks.
    pub fn product(&self, other: &SmoothFunction) -> Result<SmoothFunction> {
        if other.dim != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(SmoothFunction {
            dim: self.dim,
            expr: Expr::mul(self.expr.clone(), other.expr.clone()),
        })
    }
}

/// A vector field `X = sum_j X_j d/dz_j` with expression components.
#[derive(Debug, Clone)]
pub struct VectorField {
    dim: usize,
    components: Vec<Expr>,
}

impl VectorField {
    pub fn new(dim: usize, components: Vec<Expr>) -> Result<Self> {
        if components.len() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: components.len(),
            });
        }
        Ok(VectorField { dim, components })
    }

    pub fn parse(sources: &[&str], dim: usize) -> Result<Self> {
        let components = sources
            .iter()
            .map(|s| crate::expr::parse(s, dim, 1))
            .collect::<Result<Vec<_>>>()?;
        VectorField::new(dim, components)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        if z.len() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    pub fn scale(&self, c: f64) -> VectorField {
        VectorField {
            dim: self.dim,
            components: self
                .components
                .iter()
                .map(|e| Expr::mul(Expr::constant(c), e.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        if other.dim != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(VectorField {
            dim: self.dim,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| Expr::add(a.clone(), b.clone()))
                .collect(),
        })
    }

    /// The symbolic derivation `X f = sum_j X_j df/dz_j`, itself a
    /// smooth function, so derivations can be iterated.
    pub fn apply(&self, f: &SmoothFunction) -> Result<SmoothFunction> {
        if f.dim != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: f.dim,
            });
        }
        let mut acc = Expr::constant(0.0);
        for (j, xj) in self.components.iter().enumerate() {
            acc = Expr::add(acc, Expr::mul(xj.clone(), f.expr.diff(j)));
        }
        Ok(SmoothFunction {
            dim: self.dim,
            expr: acc,
        })
    }
}

/// `(X f)(z)` computed as the first coefficient of the jet of
/// `t -> f(z + t X(z))`; agrees with the symbolic route and avoids
/// building the derivative expression.
pub fn derivation_apply(x: &VectorField, f: &SmoothFunction, z: &[Complex64]) -> Result<Complex64> {
    f.check_dim(z.len())?;
    let dir = x.eval(z)?;
    let jet = directional_jet(&f.expr, z, &dir, 2)?;
    Ok(jet[1])
}

/// Lie bracket `[X, Y] = (DY) X - (DX) Y`, built symbolically from the
/// component Jacobians.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    if x.dim != y.dim {
        return Err(Error::DimMismatch {
            expected: x.dim,
            got: y.dim,
        });
    }
    let d = x.dim;
    let mut components = Vec::with_capacity(d);
    for i in 0..d {
        let mut acc = Expr::constant(0.0);
        for j in 0..d {
            acc = Expr::add(
                acc,
                Expr::sub(
                    Expr::mul(x.components[j].clone(), y.components[i].diff(j)),
                    Expr::mul(y.components[j].clone(), x.components[i].diff(j)),
                ),
            );
        }
        components.push(acc);
    }
    VectorField::new(d, components)
}

/// A diffeomorphism between chart domains, given by forward and inverse
/// component expressions. The inverse claim is validated on sample
/// points at construction.
#[derive(Debug, Clone)]
pub struct Diffeo {
    dim: usize,
    forward: Vec<Expr>,
    inverse: Vec<Expr>,
}

const DIFFEO_TOL: f64 = 1e-10;

impl Diffeo {
    pub fn new(dim: usize, forward: Vec<Expr>, inverse: Vec<Expr>) -> Result<Self> {
        if forward.len() != dim || inverse.len() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: forward.len().max(inverse.len()),
            });
        }
        let h = Diffeo {
            dim,
            forward,
            inverse,
        };
        for p in validation_points(dim) {
            let round = h.apply_inverse(&h.apply(&p)?)?;
            let err: f64 = round
                .iter()
                .zip(&p)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if err > DIFFEO_TOL {
                return Err(Error::Config(format!(
                    "inverse fails the roundtrip test: residual {err:.3e}"
                )));
            }
        }
        Ok(h)
    }

    pub fn parse(forward: &[&str], inverse: &[&str], dim: usize) -> Result<Self> {
        let f = forward
            .iter()
            .map(|s| crate::expr::parse(s, dim, 1))
            .collect::<Result<Vec<_>>>()?;
        let g = inverse
            .iter()
            .map(|s| crate::expr::parse(s, dim, 1))
            .collect::<Result<Vec<_>>>()?;
        Diffeo::new(dim, f, g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.forward.iter().map(|e| e.eval(z)).collect()
    }

    pub fn apply_inverse(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.inverse.iter().map(|e| e.eval(z)).collect()
    }

    /// Composite `self . other` (apply `other` first).
    pub fn compose(&self, other: &Diffeo) -> Result<Diffeo> {
        if other.dim != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let forward = self
            .forward
            .iter()
            .map(|e| e.compose(&other.forward))
            .collect::<Result<Vec<_>>>()?;
        let inverse = other
            .inverse
            .iter()
            .map(|e| e.compose(&self.inverse))
            .collect::<Result<Vec<_>>>()?;
        Diffeo::new(self.dim, forward, inverse)
    }
}

fn validation_points(dim: usize) -> Vec<Vec<Complex64>> {
    // A small deterministic stencil inside the unit box.
    let seeds = [0.13, -0.27, 0.41];
    seeds
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            (0..dim)
                .map(|j| Complex64::new(s + 0.07 * (j as f64) - 0.01 * (k as f64), 0.0))
                .collect()
        })
        .collect()
}

/// Pullback of a function along a diffeomorphism:
/// `(U(h) f)(z) = f(h^{-1}(z))`.
pub fn pullback(h: &Diffeo, f: &SmoothFunction) -> Result<SmoothFunction> {
    if f.dim != h.dim {
        return Err(Error::DimMismatch {
            expected: h.dim,
            got: f.dim,
        });
    }
    Ok(SmoothFunction {
        dim: h.dim,
        expr: f.expr.compose(&h.inverse)?,
    })
}

// Dormand-Prince 5(4) tableau.
const DP_C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

pub const FLOW_TOL: f64 = 1e-12;

/// Flow of `X` from `z0` for time `time` (either sign), integrated with
/// an adaptive embedded Runge-Kutta 5(4) pair at local tolerance
/// [`FLOW_TOL`].
pub fn flow(x: &VectorField, time: f64, z0: &[Complex64]) -> Result<Vec<Complex64>> {
    if z0.len() != x.dim {
        return Err(Error::DimMismatch {
            expected: x.dim,
            got: z0.len(),
        });
    }
    let dir = if time >= 0.0 { 1.0 } else { -1.0 };
    let total = time.abs();
    if total == 0.0 {
        return Ok(z0.to_vec());
    }
    let mut z = z0.to_vec();
    let mut t = 0.0f64;
    let mut h = (total / 16.0).min(0.1).max(1e-6);
    let min_step = 1e-14 * total.max(1.0);
    let deriv = |z: &[Complex64]| -> Result<Vec<Complex64>> {
        Ok(x.eval(z)?.iter().map(|v| v * dir).collect())
    };
    while t < total {
        h = h.min(total - t);
        if h < min_step {
            return Err(Error::StepFailure(h));
        }
        let mut k: Vec<Vec<Complex64>> = Vec::with_capacity(7);
        for i in 0..7 {
            let _ = DP_C[i];
            let mut stage = z.clone();
            for (j, kj) in k.iter().enumerate() {
                let a = DP_A[i][j];
                if a != 0.0 {
                    for (s, v) in stage.iter_mut().zip(kj) {
                        *s += v * (h * a);
                    }
                }
            }
            k.push(deriv(&stage)?);
        }
        let mut z5 = z.clone();
        let mut err: f64 = 0.0;
        for c in 0..z.len() {
            let mut acc5 = Complex64::new(0.0, 0.0);
            let mut acc4 = Complex64::new(0.0, 0.0);
            for i in 0..7 {
                acc5 += k[i][c] * DP_B5[i];
                acc4 += k[i][c] * DP_B4[i];
            }
            z5[c] += acc5 * h;
            err = err.max(((acc5 - acc4) * h).norm());
        }
        let scale = FLOW_TOL * (1.0 + z.iter().map(|v| v.norm()).fold(0.0, f64::max));
        if err <= scale {
            t += h;
            z = z5;
            let ratio = if err > 0.0 { scale / err } else { 10.0 };
            h *= (0.9 * ratio.powf(0.2)).clamp(0.2, 5.0);
        } else {
            h *= (0.9 * (scale / err).powf(0.2)).clamp(0.05, 0.9);
        }
    }
    Ok(z)
}

/// Outcome of checking that the flow motion of `X` acts on a function
/// with initial direction `-(X f)(z)`.
#[derive(Debug, Clone)]
pub struct DirectionCheck {
    pub extracted: Complex64,
    pub expected: Complex64,
    pub residual: f64,
    pub residual_rate: f64,
}

/// The pullback motion `(A(t) f)(z) = f(phi_{-t}(z))` of the flow of `X`
/// has initial direction `-(X f)(z)`. Extract the direction numerically
/// over `t_k = eps 2^{-k}` and compare against the derivation value.
pub fn accessible_direction_check(
    x: &VectorField,
    f: &SmoothFunction,
    z: &[Complex64],
    eps: f64,
    steps: usize,
) -> Result<DirectionCheck> {
    let base = f.eval(z)?;
    let mut samples = Vec::with_capacity(steps);
    let mut ts = Vec::with_capacity(steps);
    for k in 1..=steps {
        let t = eps * 0.5f64.powi(k as i32);
        let moved = flow(x, -t, z)?;
        let val = (f.eval(&moved)? - base) / t;
        samples.push(vec![val]);
        ts.push(t);
    }
    let ext = extrapolate::richardson(&samples, 0.5, &ts)?;
    let extracted = ext.value[0];
    let expected = -derivation_apply(x, f, z)?;
    let residual = (extracted - expected).norm() / expected.norm().max(1.0);
    Ok(DirectionCheck {
        extracted,
        expected,
        residual,
        residual_rate: ext.residual_rate,
    })
}
