//! Smooth two-point kernels `F(z, z')` on a chart product, their
//! left/right Lie derivatives and partial Jacobians, second-order
//! Taylor identities along curves, the symmetric second difference, and
//! the two cone/Cauchy-Schwarz inequality checks.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::{directional_jet, Expr};
use crate::fields::{lie_bracket, VectorField};

/// Which kernel slot a directional operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Left,
    Right,
}

/// A kernel with an expression in `2 dim` variables: the first `dim`
/// are the left point, the rest the right point.
#[derive(Debug, Clone)]
pub struct Kernel {
    dim: usize,
    expr: Expr,
}

impl Kernel {
    pub fn new(dim: usize, expr: Expr) -> Self {
        Kernel { dim, expr }
    }

    /// Parse a two-slot expression: `z1..zd` for the left point,
    /// `w1..wd` for the right point.
    pub fn parse(src: &str, dim: usize) -> Result<Self> {
        Ok(Kernel {
            dim,
            expr: crate::expr::parse(src, dim, 2)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn eval(&self, z: &[Complex64], zp: &[Complex64]) -> Result<Complex64> {
        self.check(z, zp)?;
        let args: Vec<Complex64> = z.iter().chain(zp).copied().collect();
        self.expr.eval(&args)
    }

    fn check(&self, z: &[Complex64], zp: &[Complex64]) -> Result<()> {
        if z.len() != self.dim || zp.len() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: z.len().max(zp.len()),
            });
        }
        Ok(())
    }

    /// Jet coefficients of `t -> F(z + t v, z' + t w)`; pass a zero
    /// direction to freeze a slot.
    pub fn joint_jet(
        &self,
        z: &[Complex64],
        zp: &[Complex64],
        v: &[Complex64],
        w: &[Complex64],
        len: usize,
    ) -> Result<Vec<Complex64>> {
        self.check(z, zp)?;
        if v.len() != self.dim || w.len() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: v.len().max(w.len()),
            });
        }
        let base: Vec<Complex64> = z.iter().chain(zp).copied().collect();
        let dir: Vec<Complex64> = v.iter().chain(w).copied().collect();
        directional_jet(&self.expr, &base, &dir, len)
    }

    fn zero_dir(&self) -> Vec<Complex64> {
        vec![Complex64::new(0.0, 0.0); self.dim]
    }

    /// Slot-directional jet of the kernel in one argument.
    pub fn slot_jet(
        &self,
        slot: Slot,
        v: &[Complex64],
        z: &[Complex64],
        zp: &[Complex64],
        len: usize,
    ) -> Result<Vec<Complex64>> {
        match slot {
            Slot::Left => self.joint_jet(z, zp, v, &self.zero_dir(), len),
            Slot::Right => self.joint_jet(z, zp, &self.zero_dir(), v, len),
        }
    }

    /// Symbolic slot-directional derivative along a constant direction:
    /// `sum_j v_j d F / d slot_j` as a new kernel.
    pub fn slot_derivative(&self, slot: Slot, v: &[Complex64]) -> Result<Kernel> {
        if v.len() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let offset = match slot {
            Slot::Left => 0,
            Slot::Right => self.dim,
        };
        let mut acc = Expr::constant(0.0);
        for (j, &vj) in v.iter().enumerate() {
            let c = Expr::Const(vj);
            acc = Expr::add(acc, Expr::mul(c, self.expr.diff(offset + j)));
        }
        Ok(Kernel {
            dim: self.dim,
            expr: acc,
        })
    }
}

fn field_slot_expr(x: &VectorField, slot: Slot, dim: usize) -> Result<Vec<Expr>> {
    // Reinterpret field components (variables 0..d-1) in kernel
    // variable space: the right slot shifts variables by d.
    match slot {
        Slot::Left => Ok(x.components().to_vec()),
        Slot::Right => {
            let subst: Vec<Expr> = (0..dim).map(|k| Expr::var(dim + k)).collect();
            x.components().iter().map(|c| c.compose(&subst)).collect()
        }
    }
}

fn lie_derivative(x: &VectorField, f: &Kernel, slot: Slot) -> Result<Kernel> {
    if x.dim() != f.dim {
        return Err(Error::DimMismatch {
            expected: f.dim,
            got: x.dim(),
        });
    }
    let comps = field_slot_expr(x, slot, f.dim)?;
    let offset = match slot {
        Slot::Left => 0,
        Slot::Right => f.dim,
    };
    let mut acc = Expr::constant(0.0);
    for (j, c) in comps.into_iter().enumerate() {
        acc = Expr::add(acc, Expr::mul(c, f.expr.diff(offset + j)));
    }
    Ok(Kernel {
        dim: f.dim,
        expr: acc,
    })
}

/// `L_X F(z, z') = X(z) . dF/dz (z, z')`.
pub fn left_lie_derivative(x: &VectorField, f: &Kernel) -> Result<Kernel> {
    lie_derivative(x, f, Slot::Left)
}

/// `R_X F(z, z') = X(z') . dF/dz' (z, z')`.
pub fn right_lie_derivative(x: &VectorField, f: &Kernel) -> Result<Kernel> {
    lie_derivative(x, f, Slot::Right)
}

/// First-order coefficient of the slot-directional jet: the partial
/// Jacobian of the kernel contracted with the tangent vector `v`.
pub fn partial_jacobian_apply(
    f: &Kernel,
    slot: Slot,
    v: &[Complex64],
    z: &[Complex64],
    zp: &[Complex64],
) -> Result<Complex64> {
    Ok(f.slot_jet(slot, v, z, zp, 2)?[1])
}

/// Residuals of the bracket identities `[L_X, L_Y] F = L_{[X,Y]} F`
/// and `[R_X, R_Y] F = R_{[X,Y]} F` at one point pair.
pub fn lr_bracket_check(
    x: &VectorField,
    y: &VectorField,
    f: &Kernel,
    z: &[Complex64],
    zp: &[Complex64],
) -> Result<(f64, f64)> {
    let bracket = lie_bracket(x, y)?;
    let mut out = [0.0f64; 2];
    for (k, slot) in [Slot::Left, Slot::Right].into_iter().enumerate() {
        let xf = lie_derivative(x, f, slot)?;
        let yf = lie_derivative(y, f, slot)?;
        let xyf = lie_derivative(x, &yf, slot)?.eval(z, zp)?;
        let yxf = lie_derivative(y, &xf, slot)?.eval(z, zp)?;
        let direct = lie_derivative(&bracket, f, slot)?.eval(z, zp)?;
        out[k] = (xyf - yxf - direct).norm();
    }
    Ok((out[0], out[1]))
}

/// A curve into the chart with an explicit second-order jet at 0.
#[derive(Clone)]
pub struct Curve {
    eval: Arc<dyn Fn(f64) -> Result<Vec<Complex64>> + Send + Sync>,
    position: Vec<Complex64>,
    velocity: Vec<Complex64>,
    acceleration: Vec<Complex64>,
}

impl Curve {
    pub fn new(
        eval: Arc<dyn Fn(f64) -> Result<Vec<Complex64>> + Send + Sync>,
        position: Vec<Complex64>,
        velocity: Vec<Complex64>,
        acceleration: Vec<Complex64>,
    ) -> Result<Self> {
        let d = position.len();
        if velocity.len() != d || acceleration.len() != d {
            return Err(Error::DimMismatch {
                expected: d,
                got: velocity.len().max(acceleration.len()),
            });
        }
        let at0 = eval(0.0)?;
        let err: f64 = at0
            .iter()
            .zip(&position)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if err > 1e-12 {
            return Err(Error::Config(format!(
                "curve evaluator disagrees with its position jet by {err:.3e}"
            )));
        }
        Ok(Curve {
            eval,
            position,
            velocity,
            acceleration,
        })
    }

    /// The straight line `c(t) = z + t v`, the canonical curve
    /// realizing a tangent vector.
    pub fn line(z: &[Complex64], v: &[Complex64]) -> Result<Self> {
        if z.len() != v.len() {
            return Err(Error::DimMismatch {
                expected: z.len(),
                got: v.len(),
            });
        }
        let zc = z.to_vec();
        let vc = v.to_vec();
        let zero = vec![Complex64::new(0.0, 0.0); z.len()];
        Curve::new(
            Arc::new(move |t| {
                Ok(zc
                    .iter()
                    .zip(&vc)
                    .map(|(a, b)| a + b * t)
                    .collect())
            }),
            z.to_vec(),
            v.to_vec(),
            zero,
        )
    }

    pub fn eval(&self, t: f64) -> Result<Vec<Complex64>> {
        (self.eval)(t)
    }

    pub fn position(&self) -> &[Complex64] {
        &self.position
    }

    pub fn velocity(&self) -> &[Complex64] {
        &self.velocity
    }

    pub fn acceleration(&self) -> &[Complex64] {
        &self.acceleration
    }
}

/// `d/dt F(c(t), z')|_0` (slot Left) or `d/dt F(z, b(t))|_0` (slot
/// Right): the partial Jacobian applied to the curve velocity.
pub fn curve_derivative(
    f: &Kernel,
    c: &Curve,
    slot: Slot,
    other: &[Complex64],
) -> Result<Complex64> {
    match slot {
        Slot::Left => partial_jacobian_apply(f, Slot::Left, &c.velocity, &c.position, other),
        Slot::Right => partial_jacobian_apply(f, Slot::Right, &c.velocity, other, &c.position),
    }
}

/// Mixed second derivative `d^2/dt du F(c(t), b(u))|_0`: the left and
/// right partial Jacobians applied in succession to the two velocities.
pub fn curve_mixed_derivative(f: &Kernel, c: &Curve, b: &Curve) -> Result<Complex64> {
    let lf = f.slot_derivative(Slot::Left, &c.velocity)?;
    partial_jacobian_apply(&lf, Slot::Right, &b.velocity, &c.position, &b.position)
}

/// Anticommutator `[v D_L, w D_R]_+ F (z, z')`: both orders of the two
/// slot-directional derivatives, summed. Equal to twice the mixed
/// derivative for smooth kernels.
pub fn anticommutator(
    f: &Kernel,
    v: &[Complex64],
    w: &[Complex64],
    z: &[Complex64],
    zp: &[Complex64],
) -> Result<Complex64> {
    let lf = f.slot_derivative(Slot::Left, v)?;
    let rf = f.slot_derivative(Slot::Right, w)?;
    let lr = partial_jacobian_apply(&lf, Slot::Right, w, z, zp)?;
    let rl = partial_jacobian_apply(&rf, Slot::Left, v, z, zp)?;
    Ok(lr + rl)
}

/// Second-order Taylor coefficients of the kernel along curves:
/// `left[k]` is the `t^k` coefficient of `F(c(t), z')`, `right[k]` of
/// `F(z, b(t))`, and `joint[k]` of `F(c(t), b(t))`.
#[derive(Debug, Clone)]
pub struct Taylor2 {
    pub left: [Complex64; 3],
    pub right: [Complex64; 3],
    pub joint: [Complex64; 3],
}

fn second_order_block(
    f: &Kernel,
    slot: Slot,
    c: &Curve,
    z: &[Complex64],
    zp: &[Complex64],
) -> Result<(Complex64, Complex64)> {
    // first derivative v D F; second derivative (v,v) D^2 F + a D F
    let d1 = partial_jacobian_apply(f, slot, &c.velocity, z, zp)?;
    let dv = f.slot_derivative(slot, &c.velocity)?;
    let vv = partial_jacobian_apply(&dv, slot, &c.velocity, z, zp)?;
    let acc = partial_jacobian_apply(f, slot, &c.acceleration, z, zp)?;
    Ok((d1, vv + acc))
}

/// Assemble the Taylor coefficients through order 2 from the curve jets
/// and the kernel's slot derivatives.
pub fn taylor2_expand(f: &Kernel, c: &Curve, b: &Curve) -> Result<Taylor2> {
    let z = c.position.clone();
    let zp = b.position.clone();
    let f00 = f.eval(&z, &zp)?;
    let (l1, l2) = second_order_block(f, Slot::Left, c, &z, &zp)?;
    let (r1, r2) = second_order_block(f, Slot::Right, b, &z, &zp)?;
    let mixed = curve_mixed_derivative(f, c, b)?;
    let half = Complex64::new(0.5, 0.0);
    Ok(Taylor2 {
        left: [f00, l1, half * l2],
        right: [f00, r1, half * r2],
        // the cross term is the anticommutator block, i.e. twice the
        // mixed derivative
        joint: [f00, l1 + r1, half * (l2 + r2) + mixed],
    })
}

/// Symmetric second difference
/// `S = F(z,z) - F(c(t),z) - F(z,c(t)) + F(c(t),c(t))` with `z = c(0)`;
/// behaves as `(t^2/2)` times the velocity anticommutator as `t -> 0`.
pub fn second_difference(f: &Kernel, c: &Curve, t: f64) -> Result<Complex64> {
    let z = c.position.clone();
    let ct = c.eval(t)?;
    Ok(f.eval(&z, &z)? - f.eval(&ct, &z)? - f.eval(&z, &ct)? + f.eval(&ct, &ct)?)
}

/// A closed cone in the complex plane, presented by a signed membership
/// margin (nonnegative inside, negative outside).
#[derive(Clone)]
pub enum Cone {
    /// The nonnegative reals embedded in the plane.
    NonnegReal,
    Custom(Arc<dyn Fn(Complex64) -> f64 + Send + Sync>),
}

impl Cone {
    pub fn margin(&self, v: Complex64) -> f64 {
        match self {
            Cone::NonnegReal => v.re - v.im.abs(),
            Cone::Custom(p) => p(v),
        }
    }
}

/// Outcome of a sampled inequality check.
#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub samples: usize,
    /// Smallest signed margin observed (conclusion side).
    pub min_margin: f64,
    pub scale: f64,
    pub pass: bool,
}

const MARGIN_TOL: f64 = 1e-9;

fn sample_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
        .collect()
}

/// Cone-propagation check: if the symmetrized double difference
/// `F(z,z) - F(z',z) - F(z,z') + F(z',z')` lies in the cone for all
/// point pairs (spot-verified on samples; a violation aborts with
/// `PremiseViolated`), then the diagonal anticommutator
/// `[X(z) D_L, X(z) D_R]_+ F(z,z)` lies in the cone too.
pub fn antif_check(
    f: &Kernel,
    cone: &Cone,
    x: &VectorField,
    samples: usize,
    seed: u64,
) -> Result<InequalityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scale: f64 = 1.0;
    for _ in 0..samples {
        let z = sample_point(&mut rng, f.dim);
        let zp = sample_point(&mut rng, f.dim);
        let e = f.eval(&z, &z)? - f.eval(&zp, &z)? - f.eval(&z, &zp)? + f.eval(&zp, &zp)?;
        scale = scale.max(e.norm());
        if cone.margin(e) < -MARGIN_TOL * scale {
            return Err(Error::PremiseViolated(format!(
                "double difference leaves the cone by {:.3e}",
                -cone.margin(e)
            )));
        }
    }
    let mut min_margin = f64::INFINITY;
    for _ in 0..samples {
        let z = sample_point(&mut rng, f.dim);
        let v = x.eval(&z)?;
        let a = anticommutator(f, &v, &v, &z, &z)?;
        scale = scale.max(a.norm());
        min_margin = min_margin.min(cone.margin(a));
    }
    Ok(InequalityReport {
        samples,
        min_margin,
        scale,
        pass: min_margin >= -MARGIN_TOL * scale,
    })
}

/// Cauchy-Schwarz propagation: if
/// `F(z,z') F(z',z) <= F(z,z) F(z',z')` on sampled pairs (premise;
/// complex values on the sample set also abort), then
/// `R_X F(z,z) L_X F(z,z) <= (1/2) F(z,z) [L_X, R_X]_+ F(z,z)`.
pub fn csf_check(
    f: &Kernel,
    x: &VectorField,
    samples: usize,
    seed: u64,
) -> Result<InequalityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let real = |v: Complex64, scale: f64| -> Result<f64> {
        if v.im.abs() > MARGIN_TOL * scale.max(1.0) {
            return Err(Error::PremiseViolated(format!(
                "kernel value {v} is not real on the sample set"
            )));
        }
        Ok(v.re)
    };
    let mut scale: f64 = 1.0;
    for _ in 0..samples {
        let z = sample_point(&mut rng, f.dim);
        let zp = sample_point(&mut rng, f.dim);
        let lhs = f.eval(&z, &zp)? * f.eval(&zp, &z)?;
        let rhs = f.eval(&z, &z)? * f.eval(&zp, &zp)?;
        scale = scale.max(lhs.norm()).max(rhs.norm());
        let (lhs, rhs) = (real(lhs, scale)?, real(rhs, scale)?);
        if lhs > rhs + MARGIN_TOL * scale {
            return Err(Error::PremiseViolated(format!(
                "product bound fails by {:.3e}",
                lhs - rhs
            )));
        }
    }
    let lf = left_lie_derivative(x, f)?;
    let rf = right_lie_derivative(x, f)?;
    let lrf = left_lie_derivative(x, &rf)?;
    let rlf = right_lie_derivative(x, &lf)?;
    let mut min_margin = f64::INFINITY;
    for _ in 0..samples {
        let z = sample_point(&mut rng, f.dim);
        let lhs = rf.eval(&z, &z)? * lf.eval(&z, &z)?;
        let anti = lrf.eval(&z, &z)? + rlf.eval(&z, &z)?;
        let rhs = f.eval(&z, &z)? * anti * 0.5;
        scale = scale.max(lhs.norm()).max(rhs.norm());
        let margin = real(rhs, scale)? - real(lhs, scale)?;
        min_margin = min_margin.min(margin);
    }
    Ok(InequalityReport {
        samples,
        min_margin,
        scale,
        pass: min_margin >= -MARGIN_TOL * scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extrapolate::fit_log_slope;

    fn pt(xs: &[f64]) -> Vec<Complex64> {
        xs.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn bilinear_kernel_lie_derivatives() {
        let f = Kernel::parse("z1 * w1", 1).unwrap();
        let one = VectorField::parse(&["1"], 1).unwrap();
        let z = pt(&[0.7]);
        let zp = pt(&[-0.4]);
        let lf = left_lie_derivative(&one, &f).unwrap();
        let rf = right_lie_derivative(&one, &f).unwrap();
        assert!((lf.eval(&z, &zp).unwrap() - zp[0]).norm() < 1e-14);
        assert!((rf.eval(&z, &zp).unwrap() - z[0]).norm() < 1e-14);

        // right-slot-independent kernel has vanishing right derivative
        let g = Kernel::parse("exp(z1)", 1).unwrap();
        let rg = right_lie_derivative(&one, &g).unwrap();
        assert!(rg.eval(&z, &zp).unwrap().norm() == 0.0);
    }

    #[test]
    fn lie_derivative_matches_partial_jacobian() {
        let f = Kernel::parse("sin(z1 * w2) + z2^2 * w1", 2).unwrap();
        let x = VectorField::parse(&["z2", "z1^2"], 2).unwrap();
        let z = pt(&[0.3, -0.5]);
        let zp = pt(&[0.6, 0.2]);
        let via_lie = left_lie_derivative(&x, &f).unwrap().eval(&z, &zp).unwrap();
        let v = x.eval(&z).unwrap();
        let via_jac = partial_jacobian_apply(&f, Slot::Left, &v, &z, &zp).unwrap();
        assert!((via_lie - via_jac).norm() < 1e-12);
        // right side too, with the field evaluated at the right point
        let via_lie = right_lie_derivative(&x, &f).unwrap().eval(&z, &zp).unwrap();
        let w = x.eval(&zp).unwrap();
        let via_jac = partial_jacobian_apply(&f, Slot::Right, &w, &z, &zp).unwrap();
        assert!((via_lie - via_jac).norm() < 1e-12);
    }

    #[test]
    fn jacobian_linearity_and_zero() {
        let f = Kernel::parse("exp(z1 + 2*w1)", 1).unwrap();
        let z = pt(&[0.2]);
        let zp = pt(&[0.1]);
        let zero = partial_jacobian_apply(&f, Slot::Left, &pt(&[0.0]), &z, &zp).unwrap();
        assert!(zero.norm() == 0.0);
        let a = partial_jacobian_apply(&f, Slot::Left, &pt(&[1.3]), &z, &zp).unwrap();
        let b = partial_jacobian_apply(&f, Slot::Left, &pt(&[-0.4]), &z, &zp).unwrap();
        let ab = partial_jacobian_apply(&f, Slot::Left, &pt(&[0.9]), &z, &zp).unwrap();
        assert!((a + b - ab).norm() < 1e-12);
    }

    #[test]
    fn bracket_identities() {
        let f = Kernel::parse("z1^2 * w2 + z2 * w1^3", 2).unwrap();
        let x = VectorField::parse(&["1", "0"], 2).unwrap();
        let y = VectorField::parse(&["0", "z1"], 2).unwrap();
        let (l, r) = lr_bracket_check(&x, &y, &f, &pt(&[0.4, 0.7]), &pt(&[-0.3, 0.5])).unwrap();
        assert!(l < 1e-10 && r < 1e-10, "residuals {l:.3e} {r:.3e}");

        // equal fields commute exactly
        let (l, r) = lr_bracket_check(&x, &x, &f, &pt(&[0.4, 0.7]), &pt(&[-0.3, 0.5])).unwrap();
        assert!(l == 0.0 && r == 0.0);
    }

    #[test]
    fn curve_derivatives() {
        let f = Kernel::parse("z1 * w1", 1).unwrap();
        let z = pt(&[0.5]);
        let zp = pt(&[-0.8]);
        let c = Curve::line(&z, &pt(&[1.0])).unwrap();
        let d = curve_derivative(&f, &c, Slot::Left, &zp).unwrap();
        assert!((d - zp[0]).norm() < 1e-14);

        let still = Curve::line(&z, &pt(&[0.0])).unwrap();
        assert!(curve_derivative(&f, &still, Slot::Left, &zp)
            .unwrap()
            .norm()
            == 0.0);

        // mixed derivative with unit velocities
        let b = Curve::line(&zp, &pt(&[1.0])).unwrap();
        let m = curve_mixed_derivative(&f, &c, &b).unwrap();
        assert!((m.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn curve_jet_matches_divided_differences() {
        // c(t) = z + t v + t^2 a: the forward divided difference
        // deviates from the velocity jet by exactly t |a| (rate 1)
        let z = pt(&[0.3]);
        let v = pt(&[0.9]);
        let a = pt(&[-0.4]);
        let (zc, vc, ac) = (z.clone(), v.clone(), a.clone());
        let c = Curve::new(
            Arc::new(move |t| {
                Ok(vec![zc[0] + vc[0] * t + ac[0] * (t * t)])
            }),
            z,
            v,
            a.iter().map(|x| x * 2.0).collect(),
        )
        .unwrap();
        let mut pairs = Vec::new();
        for k in 3..10 {
            let t = 0.5f64.powi(k);
            let fd = (c.eval(t).unwrap()[0] - c.position()[0]) / t;
            pairs.push((t, (fd - c.velocity()[0]).norm()));
        }
        let rate = fit_log_slope(&pairs, 1e-15).unwrap();
        assert!(rate > 0.98, "observed rate {rate}");
    }

    #[test]
    fn taylor_coefficients_of_squared_line() {
        // F(c(t), b(t)) = (z + t)^2 for the bilinear kernel and equal
        // unit-velocity lines
        let f = Kernel::parse("z1 * w1", 1).unwrap();
        let z = pt(&[0.6]);
        let c = Curve::line(&z, &pt(&[1.0])).unwrap();
        let t2 = taylor2_expand(&f, &c, &c).unwrap();
        assert!((t2.joint[0].re - 0.36).abs() < 1e-14);
        assert!((t2.joint[1].re - 1.2).abs() < 1e-14);
        assert!((t2.joint[2].re - 1.0).abs() < 1e-14);
        // single-slot blocks are linear in t
        assert!((t2.left[1].re - z[0].re).abs() < 1e-14);
        assert!(t2.left[2].norm() < 1e-14);
        // anticommutator block: twice the unit mixed derivative
        let a = anticommutator(&f, &pt(&[1.0]), &pt(&[1.0]), &z, &z).unwrap();
        assert!((a.re - 2.0).abs() < 1e-14);
    }

    #[test]
    fn taylor_coefficients_match_jet_oracle() {
        let f = Kernel::parse("exp(-(z1 - w1)^2) + z1 * w1^2", 1).unwrap();
        let z = pt(&[0.4]);
        let zp = pt(&[-0.2]);
        let c = Curve::line(&z, &pt(&[0.7])).unwrap();
        let b = Curve::line(&zp, &pt(&[-0.3])).unwrap();
        let t2 = taylor2_expand(&f, &c, &b).unwrap();
        let jet = f
            .joint_jet(&z, &zp, c.velocity(), b.velocity(), 3)
            .unwrap();
        for k in 0..3 {
            assert!(
                (t2.joint[k] - jet[k]).norm() < 1e-13,
                "coefficient {k} disagrees"
            );
        }
    }

    #[test]
    fn mixed_partials_are_symmetric() {
        let f = Kernel::parse("sin(z1 * w1) + exp(z2 - w2)", 2).unwrap();
        let z = pt(&[0.3, 0.8]);
        let zp = pt(&[-0.1, 0.4]);
        let v = pt(&[0.5, -0.7]);
        let w = pt(&[0.2, 0.9]);
        let lf = f.slot_derivative(Slot::Left, &v).unwrap();
        let rf = f.slot_derivative(Slot::Right, &w).unwrap();
        let lr = partial_jacobian_apply(&lf, Slot::Right, &w, &z, &zp).unwrap();
        let rl = partial_jacobian_apply(&rf, Slot::Left, &v, &z, &zp).unwrap();
        assert!((lr - rl).norm() < 1e-12);
    }

    #[test]
    fn second_difference_of_bilinear_kernel_is_exact() {
        let f = Kernel::parse("z1 * w1", 1).unwrap();
        let c = Curve::line(&pt(&[0.9]), &pt(&[1.0])).unwrap();
        for &t in &[0.5, 0.1, 0.02] {
            let s = second_difference(&f, &c, t).unwrap();
            assert!((s.re - t * t).abs() < 1e-13);
        }
    }

    #[test]
    fn second_difference_of_additive_kernel_vanishes() {
        let f = Kernel::parse("exp(z1) + w1^3", 1).unwrap();
        let c = Curve::line(&pt(&[0.2]), &pt(&[1.4])).unwrap();
        let s = second_difference(&f, &c, 0.3).unwrap();
        assert!(s.norm() < 1e-14);
    }

    #[test]
    fn second_difference_ratio_converges_to_half_anticommutator() {
        let f = Kernel::parse("exp(-(z1 - w1)^2)", 1).unwrap();
        let z = pt(&[0.4]);
        let v = pt(&[1.0]);
        let c = Curve::line(&z, &v).unwrap();
        let target = anticommutator(&f, &v, &v, &z, &z).unwrap() * 0.5;
        let mut pairs = Vec::new();
        for k in 3..=12 {
            let t = 0.5f64.powi(k);
            let s = second_difference(&f, &c, t).unwrap();
            pairs.push((t, (s / (t * t) - target).norm()));
        }
        let rate = fit_log_slope(&pairs, 1e-13).unwrap();
        assert!(rate > 0.8, "fitted rate {rate}");
    }

    #[test]
    fn cone_check_bilinear_and_gaussian() {
        let x = VectorField::parse(&["z1 + 2"], 1).unwrap();
        let f = Kernel::parse("z1 * w1", 1).unwrap();
        let r = antif_check(&f, &Cone::NonnegReal, &x, 200, 5).unwrap();
        assert!(r.pass, "min margin {:.3e}", r.min_margin);
        let g = Kernel::parse("exp(-(z1 - w1)^2)", 1).unwrap();
        let r = antif_check(&g, &Cone::NonnegReal, &x, 200, 5).unwrap();
        assert!(r.pass, "min margin {:.3e}", r.min_margin);
        // a kernel violating the premise aborts: the double difference
        // of -z*w is -(z - z')^2
        let bad = Kernel::parse("-z1*w1", 1).unwrap();
        assert!(matches!(
            antif_check(&bad, &Cone::NonnegReal, &x, 200, 5),
            Err(Error::PremiseViolated(_))
        ));
    }

    #[test]
    fn cauchy_schwarz_checks() {
        let x = VectorField::parse(&["1 + z1^2"], 1).unwrap();
        let one = Kernel::parse("1", 1).unwrap();
        let r = csf_check(&one, &x, 100, 9).unwrap();
        assert!(r.pass);
        let g = Kernel::parse("exp(-(z1 - w1)^2)", 1).unwrap();
        let r = csf_check(&g, &x, 1000, 9).unwrap();
        assert!(r.pass, "min margin {:.3e}", r.min_margin);
        let poly = Kernel::parse("1 + z1 * w1", 1).unwrap();
        let r = csf_check(&poly, &x, 1000, 9).unwrap();
        assert!(r.pass, "min margin {:.3e}", r.min_margin);
    }
}
