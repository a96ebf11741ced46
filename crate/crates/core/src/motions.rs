//! Motions: curves `A : [0, eps) -> G` through the identity of the
//! invertible elements of a backend algebra, written
//! `A(t) = 1 + t X_n(t^{1/n})` with a profile `X_n` continuous at 0.
//!
//! The initial direction `X^A = lim (A(t) - 1)/t` is extracted by
//! Richardson extrapolation in the variable `s = t^{1/n}`, the variable
//! in which the profile is continuous. The three constructions
//! (inverse, scaled product, group commutator) realize the Lie algebra
//! structure on initial directions.

use std::sync::Arc;

use crate::algebra::{AlgebraElement, GroupElement};
use crate::error::{Error, Result};
use crate::extrapolate::{self, Extrapolated};
use crate::jets::{lcm, Coeff, Jet};

pub type MotionEval = Arc<dyn Fn(f64) -> Result<GroupElement> + Send + Sync>;

/// A motion, represented by a pointwise evaluator. The optional profile
/// jet records the Taylor coefficients of `X_n(s)` when they are known
/// in closed form.
#[derive(Clone)]
pub struct Motion {
    eval: MotionEval,
    exponent: u32,
    epsilon: f64,
    profile_jet: Option<Jet<AlgebraElement>>,
}

/// Extracted initial direction together with extraction diagnostics.
#[derive(Debug, Clone)]
pub struct InitialDirection {
    pub value: AlgebraElement,
    /// Fitted decay exponent of the extrapolation residual; positive for
    /// anything that actually is a motion.
    pub residual_rate: f64,
    /// `(t_k, residual)` table from the extraction.
    pub steps: Vec<(f64, f64)>,
}

impl Motion {
    pub fn new(
        eval: MotionEval,
        exponent: u32,
        epsilon: f64,
        profile_jet: Option<Jet<AlgebraElement>>,
    ) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::Config("motion exponent must be positive".into()));
        }
        if !(epsilon > 0.0) {
            return Err(Error::Config("motion epsilon must be positive".into()));
        }
        let at0 = eval(0.0)?;
        let residual = at0
            .element()
            .sub(&at0.element().one_like())?
            .norm();
        if residual > 1e-12 {
            return Err(Error::NotAMotion(format!(
                "A(0) differs from the identity by {residual:.3e}"
            )));
        }
        Ok(Motion {
            eval,
            exponent,
            epsilon,
            profile_jet,
        })
    }

    /// The constant motion `A(t) = 1`.
    pub fn constant(like: &AlgebraElement, epsilon: f64) -> Result<Self> {
        let one = like.one_like();
        let jet = Jet::from_coeffs(vec![one.zero_like()])?;
        Motion::new(
            Arc::new(move |_t| GroupElement::new(one.clone())),
            1,
            epsilon,
            Some(jet),
        )
    }

    /// The affine motion `A(t) = 1 + t x`.
    pub fn affine(x: AlgebraElement, epsilon: f64) -> Result<Self> {
        let jet = Jet::from_coeffs(vec![x.clone()])?;
        let xc = x.clone();
        Motion::new(
            Arc::new(move |t| GroupElement::new(xc.one_like().add(&xc.scale(t))?)),
            1,
            epsilon,
            Some(jet),
        )
    }

    /// Truncated-exponential motion `A(t) = sum_{k<=order} (t x)^k / k!`.
    pub fn exponential(x: AlgebraElement, epsilon: f64, order: u32) -> Result<Self> {
        let xc = x.clone();
        // profile X_1(t) = (exp(tx)-1)/t = x + t x^2/2 + ...
        let mut coeffs = Vec::new();
        let mut term = x.clone();
        let mut fact = 1.0;
        for k in 1..=order.min(8) {
            fact *= k as f64;
            coeffs.push(term.scale(1.0 / fact));
            term = term.mul(&x)?;
        }
        let jet = Jet::from_coeffs(coeffs)?;
        Motion::new(
            Arc::new(move |t| crate::algebra::exp_truncated(&xc, t, order)),
            1,
            epsilon,
            Some(jet),
        )
    }

    pub fn eval(&self, t: f64) -> Result<GroupElement> {
        if t < 0.0 || t >= self.epsilon {
            return Err(Error::Config(format!(
                "t = {t} outside the motion domain [0, {})",
                self.epsilon
            )));
        }
        (self.eval)(t)
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn profile_jet(&self) -> Option<&Jet<AlgebraElement>> {
        self.profile_jet.as_ref()
    }

    /// Jet of `t -> A(t^n) = 1 + t^n X_n(t)` when the profile is known:
    /// coefficient 0 is the unit, coefficients `1..n-1` vanish, and the
    /// profile coefficients start at index `n`.
    pub fn hat_jet(&self, len: usize) -> Option<Jet<AlgebraElement>> {
        let profile = self.profile_jet.as_ref()?;
        let n = self.exponent as usize;
        let one = profile.coeffs()[0].one_like();
        let mut coeffs = vec![one.zero_like(); len.max(n + 1)];
        coeffs[0] = one;
        for (k, c) in profile.coeffs().iter().enumerate() {
            if n + k < coeffs.len() {
                coeffs[n + k] = c.clone();
            }
        }
        Some(Jet::from_coeffs(coeffs).unwrap())
    }

    /// Extract the initial direction by two-level Richardson
    /// extrapolation of `(A(t_k) - 1)/t_k` on `t_k = eps 2^{-k}`, in the
    /// variable `s = t^{1/n}`.
    pub fn initial_direction(&self, steps: usize) -> Result<InitialDirection> {
        if steps < 4 {
            return Err(Error::Config("initial_direction needs steps >= 4".into()));
        }
        let mut samples = Vec::with_capacity(steps);
        let mut ts = Vec::with_capacity(steps);
        let mut template = None;
        for k in 1..=steps {
            let t = self.epsilon * 0.5f64.powi(k as i32);
            let a = (self.eval)(t)?;
            let quot = a
                .element()
                .sub(&a.element().one_like())?
                .scale(1.0 / t);
            template.get_or_insert_with(|| quot.clone());
            samples.push(quot.to_flat());
            ts.push(t);
        }
        let rho = 0.5f64.powf(1.0 / self.exponent as f64);
        let Extrapolated {
            value,
            residual_rate,
            steps,
        } = extrapolate::richardson(&samples, rho, &ts)?;
        let template = template.unwrap();
        Ok(InitialDirection {
            value: template.from_flat(&value)?,
            residual_rate,
            steps,
        })
    }
}

/// Pointwise inverse motion `C(t) = A(t)^{-1}`; initial direction `-X^A`.
pub fn motion_inverse(a: &Motion) -> Result<Motion> {
    let eval = a.eval.clone();
    Motion::new(
        Arc::new(move |t| eval(t)?.inverse()),
        a.exponent,
        a.epsilon,
        None,
    )
}

/// Scaled product motion `C(t) = A(lambda t) B(mu t)` for
/// `lambda, mu >= 0`; initial direction `lambda X^A + mu X^B`.
pub fn motion_product(a: &Motion, b: &Motion, lambda: f64, mu: f64) -> Result<Motion> {
    if lambda < 0.0 || mu < 0.0 {
        return Err(Error::Config("motion_product scales must be >= 0".into()));
    }
    let slack = |eps: f64, s: f64| if s == 0.0 { f64::INFINITY } else { eps / s };
    let epsilon = slack(a.epsilon, lambda).min(slack(b.epsilon, mu));
    if !epsilon.is_finite() && (lambda > 0.0 || mu > 0.0) {
        return Err(Error::Config("empty motion domain".into()));
    }
    let epsilon = if epsilon.is_finite() { epsilon } else { a.epsilon };
    let ea = a.eval.clone();
    let eb = b.eval.clone();
    Motion::new(
        Arc::new(move |t| ea(lambda * t)?.mul(&eb(mu * t)?)),
        lcm(a.exponent, b.exponent),
        epsilon,
        None,
    )
}

/// Group-commutator motion `C(u) = A(s) B(s) A(s)^{-1} B(s)^{-1}` with
/// `s = sqrt(u)`; the square-root reparametrization doubles the
/// exponent. Initial direction `[X^A, X^B]`.
pub fn motion_group_commutator(a: &Motion, b: &Motion) -> Result<Motion> {
    let eps_shared = a.epsilon.min(b.epsilon);
    let epsilon = (eps_shared * eps_shared).min(eps_shared);
    let ea = a.eval.clone();
    let eb = b.eval.clone();
    Motion::new(
        Arc::new(move |u| {
            let s = u.sqrt();
            let ga = ea(s)?;
            let gb = eb(s)?;
            ga.mul(&gb)?.mul(&ga.inverse()?)?.mul(&gb.inverse()?)
        }),
        2 * lcm(a.exponent, b.exponent),
        epsilon,
        None,
    )
}

/// Fit the decay exponent `q` of
/// `|A(t)B(t) - B(t)A(t) - t^2 [X^A, X^B]| ~ c t^q` over a geometric
/// step sequence. Returns `f64::INFINITY` when the remainder sits at the
/// noise floor throughout (identically vanishing remainders).
pub fn commutator_remainder_rate(a: &Motion, b: &Motion, steps: usize) -> Result<f64> {
    let xa = a.initial_direction(steps)?.value;
    let xb = b.initial_direction(steps)?.value;
    let bracket = xa.commutator(&xb)?;
    let eps = a.epsilon.min(b.epsilon);
    let scale = xa.norm().max(xb.norm()).max(1.0);
    let mut pairs = Vec::with_capacity(steps);
    for k in 1..=steps {
        let t = eps * 0.5f64.powi(k as i32);
        let ga = (a.eval)(t)?;
        let gb = (b.eval)(t)?;
        let comm = ga
            .element()
            .mul(gb.element())?
            .sub(&gb.element().mul(ga.element())?)?;
        let residual = comm.sub(&bracket.scale(t * t))?.norm();
        pairs.push((t, residual));
    }
    let floor = 1e-13 * scale * scale;
    match extrapolate::fit_log_slope(&pairs, floor) {
        Some(q) if q.is_finite() => Ok(q),
        Some(_) | None => Ok(f64::INFINITY),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement;

    fn mat(rows: &[f64]) -> AlgebraElement {
        AlgebraElement::matrix_from_rows(2, rows).unwrap()
    }

    fn e12() -> AlgebraElement {
        mat(&[0.0, 1.0, 0.0, 0.0])
    }

    fn e21() -> AlgebraElement {
        mat(&[0.0, 0.0, 1.0, 0.0])
    }

    #[test]
    fn constant_motion_has_zero_direction() {
        let m = Motion::constant(&AlgebraElement::identity_matrix(2), 1.0).unwrap();
        let d = m.initial_direction(8).unwrap();
        assert!(d.value.norm() < 1e-13);
    }

    #[test]
    fn affine_motion_recovers_direction_exactly() {
        let x = mat(&[0.1, 0.4, -0.2, 0.3]);
        let m = Motion::affine(x.clone(), 1.0).unwrap();
        let d = m.initial_direction(8).unwrap();
        assert!(d.value.sub(&x).unwrap().norm() < 1e-13);
    }

    #[test]
    fn exponential_motion_direction_within_1e10() {
        let x = mat(&[0.3, -0.5, 0.7, 0.2]);
        let m = Motion::exponential(x.clone(), 1.0, 20).unwrap();
        let d = m.initial_direction(12).unwrap();
        let rel = d.value.sub(&x).unwrap().norm() / x.norm();
        assert!(rel < 1e-10, "relative error {rel:.3e}");
        assert!(d.residual_rate > 0.5);
    }

    #[test]
    fn fractional_profile_motion() {
        // A(t) = 1 + t (X + sqrt(t) Y): exponent 2, direction X.
        let x = e12();
        let y = e21();
        let xc = x.clone();
        let yc = y.clone();
        let m = Motion::new(
            Arc::new(move |t: f64| {
                let profile = xc.add(&yc.scale(t.sqrt())).unwrap();
                GroupElement::new(profile.one_like().add(&profile.scale(t)).unwrap())
            }),
            2,
            1.0,
            Some(Jet::from_coeffs(vec![x.clone(), y.clone()]).unwrap()),
        )
        .unwrap();
        let d = m.initial_direction(10).unwrap();
        assert!(d.value.sub(&x).unwrap().norm() < 1e-9);

        // hat jet: 1 at index 0, zeros below the exponent, profile after.
        let hat = m.hat_jet(4).unwrap();
        assert!(hat.coeffs()[0].sub(&x.one_like()).unwrap().norm() == 0.0);
        assert!(hat.coeffs()[1].norm() == 0.0);
        assert!(hat.coeffs()[2].sub(&x).unwrap().norm() == 0.0);
        assert!(hat.coeffs()[3].sub(&y).unwrap().norm() == 0.0);
    }

    #[test]
    fn inverse_motion_negates_direction() {
        let x = mat(&[0.2, 0.5, -0.3, 0.1]);
        let m = Motion::exponential(x.clone(), 1.0, 20).unwrap();
        let inv = motion_inverse(&m).unwrap();
        let d = inv.initial_direction(12).unwrap();
        let rel = d.value.add(&x).unwrap().norm() / x.norm();
        assert!(rel < 1e-8, "relative error {rel:.3e}");

        // double inverse restores the direction
        let dd = motion_inverse(&inv).unwrap().initial_direction(12).unwrap();
        assert!(dd.value.sub(&x).unwrap().norm() / x.norm() < 1e-10);
    }

    #[test]
    fn inverse_of_constant_is_constant() {
        let m = Motion::constant(&AlgebraElement::identity_matrix(2), 1.0).unwrap();
        let inv = motion_inverse(&m).unwrap();
        let d = inv.initial_direction(8).unwrap();
        assert!(d.value.norm() < 1e-13);
    }

    #[test]
    fn product_motion_combines_directions() {
        let x = mat(&[0.3, -0.1, 0.2, 0.4]);
        let y = mat(&[-0.2, 0.6, 0.1, -0.5]);
        let a = Motion::exponential(x.clone(), 1.0, 20).unwrap();
        let b = Motion::exponential(y.clone(), 1.0, 20).unwrap();

        let only_a = motion_product(&a, &b, 1.0, 0.0).unwrap();
        let d = only_a.initial_direction(12).unwrap();
        assert!(d.value.sub(&x).unwrap().norm() / x.norm() < 1e-8);

        let cancel = motion_product(&a, &motion_inverse(&a).unwrap(), 1.0, 1.0).unwrap();
        let d = cancel.initial_direction(12).unwrap();
        assert!(d.value.norm() < 1e-8);

        let c = motion_product(&a, &b, 2.0, 3.0).unwrap();
        let d = c.initial_direction(12).unwrap();
        let expect = x.scale(2.0).add(&y.scale(3.0)).unwrap();
        assert!(d.value.sub(&expect).unwrap().norm() / expect.norm() < 1e-8);
    }

    #[test]
    fn group_commutator_direction() {
        let a = Motion::exponential(e12(), 1.0, 20).unwrap();
        let b = Motion::exponential(e21(), 1.0, 20).unwrap();
        let c = motion_group_commutator(&a, &b).unwrap();
        assert_eq!(c.exponent(), 2);
        let d = c.initial_direction(12).unwrap();
        let expect = e12().commutator(&e21()).unwrap();
        assert!(
            d.value.sub(&expect).unwrap().norm() < 1e-7,
            "residual {:.3e}",
            d.value.sub(&expect).unwrap().norm()
        );
    }

    #[test]
    fn group_commutator_of_equal_motions_vanishes() {
        let a = Motion::exponential(e12(), 1.0, 20).unwrap();
        let c = motion_group_commutator(&a, &a).unwrap();
        let d = c.initial_direction(10).unwrap();
        assert!(d.value.norm() < 1e-9);
    }

    #[test]
    fn commuting_diagonal_motions_commute() {
        let x = mat(&[0.4, 0.0, 0.0, -0.3]);
        let y = mat(&[-0.1, 0.0, 0.0, 0.8]);
        let a = Motion::exponential(x, 1.0, 20).unwrap();
        let b = Motion::exponential(y, 1.0, 20).unwrap();
        let c = motion_group_commutator(&a, &b).unwrap();
        let d = c.initial_direction(10).unwrap();
        assert!(d.value.norm() < 1e-9);
    }

    #[test]
    fn remainder_rate_for_exp_motions() {
        let x = mat(&[0.3, -0.5, 0.7, 0.2]);
        let y = mat(&[0.1, 0.6, -0.4, -0.2]);
        let a = Motion::exponential(x, 1.0, 20).unwrap();
        let b = Motion::exponential(y, 1.0, 20).unwrap();
        let q = commutator_remainder_rate(&a, &b, 12).unwrap();
        assert!(q >= 2.9, "fitted rate {q}");
    }

    #[test]
    fn remainder_of_affine_motions_is_exact() {
        // (1+tX)(1+tY) - (1+tY)(1+tX) = t^2 [X,Y] identically.
        let a = Motion::affine(e12(), 1.0).unwrap();
        let b = Motion::affine(e21(), 1.0).unwrap();
        let q = commutator_remainder_rate(&a, &b, 10).unwrap();
        assert!(q.is_infinite(), "expected noise-floor rate, got {q}");
    }

    #[test]
    fn divergent_curve_is_not_a_motion() {
        let one = AlgebraElement::identity_matrix(2);
        let onec = one.clone();
        let m = Motion::new(
            Arc::new(move |t: f64| {
                GroupElement::new(onec.add(&onec.scale(t.sqrt())).unwrap())
            }),
            1,
            1.0,
            None,
        )
        .unwrap();
        // (A(t)-1)/t = t^{-1/2} diverges.
        assert!(matches!(
            m.initial_direction(10),
            Err(Error::NotAMotion(_))
        ));
    }
}
