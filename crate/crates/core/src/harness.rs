//! Seeded property suites over every module, with machine-readable
//! reports. A fixed `(suite, seed, config)` triple determines every
//! random draw, so reruns produce identical verdicts and residuals.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, GroupElement};
use crate::error::{Error, Result};
use crate::exact::RationalElement;
use crate::expr::Expr;
use crate::extrapolate::fit_log_slope;
use crate::fields::{
    accessible_direction_check, derivation_apply, lie_bracket, pullback, Diffeo, SmoothFunction,
    VectorField,
};
use crate::forms::{
    dform_derivative_operator, exterior_action, exterior_derivative, SForm,
};
use crate::jets::{Coeff, Jet};
use crate::kernels::{
    anticommutator, antif_check, csf_check, left_lie_derivative, lr_bracket_check,
    partial_jacobian_apply, right_lie_derivative, second_difference, Cone, Curve, Kernel, Slot,
};
use crate::motions::{
    commutator_remainder_rate, motion_group_commutator, motion_inverse, motion_product, Motion,
};

/// Configuration of a suite run. Defaults: dimension 2, jet length 8,
/// matrix size 3, 200 samples, unit tolerance scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub suite: String,
    pub seed: u64,
    pub dim: usize,
    pub order: usize,
    pub matrix_size: usize,
    pub samples: usize,
    pub tol_scale: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: "all".into(),
            seed: 0,
            dim: 2,
            order: 8,
            matrix_size: 3,
            samples: 200,
            tol_scale: 1.0,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.dim > 6 {
            return Err(Error::Config("dim must be in 1..=6".into()));
        }
        if self.order < 2 || self.order > 32 {
            return Err(Error::Config("order must be in 2..=32".into()));
        }
        if self.matrix_size == 0 || self.matrix_size > 8 {
            return Err(Error::Config("matrix size must be in 1..=8".into()));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be positive".into()));
        }
        if !(self.tol_scale > 0.0) {
            return Err(Error::Config("tol-scale must be positive".into()));
        }
        if !SUITES.contains(&self.suite.as_str()) && self.suite != "all" {
            return Err(Error::Config(format!(
                "unknown suite '{}'; expected one of {} or all",
                self.suite,
                SUITES.join(", ")
            )));
        }
        Ok(())
    }
}

pub const SUITES: &[&str] = &[
    "backends", "jets", "landau", "motions", "fields", "forms", "kernels",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One verified law: the residual actually observed, the tolerance it
/// was held to, and any fitted convergence rate with its step table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyRecord {
    pub name: String,
    pub law: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub steps: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub records: Vec<PropertyRecord>,
    pub summary: Summary,
    /// Wall-clock duration; the only nondeterministic field.
    pub wall_ms: f64,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.summary.failed > 0
    }
}

/// Every law name a full run must cover; the `all` suite fails its own
/// self-test if a law here has no record.
pub const LAW_MANIFEST: &[&str] = &[
    "commutator_antisymmetry",
    "commutator_jacobi",
    "group_inverse_contract",
    "backend_mismatch_rejected",
    "jet_ring_associativity",
    "jet_ring_distributivity",
    "jet_unit_neutral",
    "jet_inverse_contract_float",
    "jet_inverse_contract_exact",
    "jet_power_substitution",
    "jet_rescale_consistency",
    "landau_rule_i_constant_term",
    "landau_rule_ii_zero",
    "landau_rule_iii_self",
    "landau_rule_iv_weaken",
    "landau_rule_v_cancel_power",
    "landau_rule_vi_smooth_factor",
    "landau_rule_vii_shift_power",
    "landau_rule_viii_sum",
    "landau_rule_ix_product",
    "motion_direction_exponential",
    "motion_inverse_direction",
    "motion_product_direction",
    "motion_commutator_direction",
    "motion_commutator_remainder_rate",
    "motion_profile_prefix",
    "field_leibniz_rule",
    "field_jacobi_action",
    "field_bracket_operator_commutator",
    "field_bracket_bilinearity",
    "field_pullback_contravariance",
    "field_flow_direction",
    "form_slot_function_linearity",
    "form_transpose_involution",
    "exterior_one_form_specialization",
    "exterior_two_form_specialization",
    "exterior_dd_zero",
    "second_derivative_bracket_defect",
    "kernel_lie_vs_jacobian",
    "kernel_bracket_identities",
    "kernel_mixed_partial_symmetry",
    "kernel_taylor_oracle_rate",
    "kernel_second_difference_rate",
    "kernel_cone_propagation",
    "kernel_cauchy_schwarz",
];

fn fnv(name: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn rng_for(cfg: &SuiteConfig, law: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ fnv(law))
}

fn residual_record(law: &str, tolerance: f64, outcome: Result<f64>) -> PropertyRecord {
    match outcome {
        Ok(residual) => PropertyRecord {
            name: law.to_string(),
            law: law.to_string(),
            status: if residual <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
            residual: Some(residual),
            tolerance,
            rate: None,
            steps: vec![],
        },
        Err(e) => error_record(law, tolerance, e),
    }
}

fn rate_record(law: &str, min_rate: f64, outcome: Result<(f64, Vec<(f64, f64)>)>) -> PropertyRecord {
    match outcome {
        Ok((rate, steps)) => PropertyRecord {
            name: law.to_string(),
            law: law.to_string(),
            status: if rate >= min_rate {
                Status::Pass
            } else {
                Status::Fail
            },
            residual: None,
            tolerance: min_rate,
            rate: Some(rate),
            steps,
        },
        Err(e) => error_record(law, min_rate, e),
    }
}

fn error_record(law: &str, tolerance: f64, e: Error) -> PropertyRecord {
    PropertyRecord {
        name: format!("{law} [{e}]"),
        law: law.to_string(),
        status: Status::Fail,
        residual: None,
        tolerance,
        rate: None,
        steps: vec![],
    }
}

// ---------- random input generators ----------

fn rand_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> AlgebraElement {
    let rows: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-scale..scale)).collect();
    AlgebraElement::matrix_from_rows(n, &rows).expect("square data")
}

fn rand_invertible(rng: &mut ChaCha8Rng, n: usize) -> AlgebraElement {
    // diagonal dominance guarantees invertibility
    let m = rand_matrix(rng, n, 1.0);
    m.add(&AlgebraElement::identity_matrix(n).scale(n as f64 + 1.0))
        .expect("same backend")
}

fn rand_c(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn rand_cjet(rng: &mut ChaCha8Rng, len: usize, root: u32) -> Jet<Complex64> {
    let mut coeffs: Vec<Complex64> = (0..len).map(|_| rand_c(rng)).collect();
    if coeffs[0].norm() < 0.1 {
        coeffs[0] += Complex64::new(1.0, 0.0);
    }
    Jet::new(coeffs, root).expect("nonempty")
}

fn rand_rational_scalar_jet(rng: &mut ChaCha8Rng, len: usize) -> Jet<RationalElement> {
    let coeffs: Vec<RationalElement> = (0..len)
        .map(|k| {
            let mut num = rng.gen_range(-9i64..=9);
            if k == 0 && num == 0 {
                num = 1;
            }
            RationalElement::ratio(num, rng.gen_range(1i64..=9))
        })
        .collect();
    Jet::from_coeffs(coeffs).expect("nonempty")
}

fn rand_rational_matrix_jet(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Jet<RationalElement> {
    let coeffs: Vec<RationalElement> = (0..len)
        .map(|k| {
            let mut entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-3i64..=3)).collect();
            if k == 0 {
                // strict diagonal dominance for an invertible lead
                for d in 0..n {
                    entries[d * n + d] += 4 * n as i64;
                }
            }
            RationalElement::matrix_from_ints(n, &entries).expect("square data")
        })
        .collect();
    Jet::from_coeffs(coeffs).expect("nonempty")
}

fn rand_point(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Vec<Complex64> {
    (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-radius..radius), 0.0))
        .collect()
}

fn exponent_tuples(dim: usize, deg: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|t| {
                let used: usize = t.iter().sum();
                (0..=(deg - used)).map(move |e| {
                    let mut t2 = t.clone();
                    t2.push(e);
                    t2
                })
            })
            .collect();
    }
    out
}

fn rand_poly(rng: &mut ChaCha8Rng, dim: usize, deg: usize, scale: f64) -> Expr {
    let mut acc = Expr::constant(0.0);
    for tuple in exponent_tuples(dim, deg) {
        let c = rng.gen_range(-scale..scale);
        if c.abs() < 0.05 * scale {
            continue;
        }
        let mut term = Expr::constant(c);
        for (v, &e) in tuple.iter().enumerate() {
            if e > 0 {
                term = Expr::mul(term, Expr::pow(Expr::var(v), e as i32));
            }
        }
        acc = Expr::add(acc, term);
    }
    acc
}

fn rand_field(rng: &mut ChaCha8Rng, dim: usize, deg: usize, scale: f64) -> VectorField {
    let comps = (0..dim).map(|_| rand_poly(rng, dim, deg, scale)).collect();
    VectorField::new(dim, comps).expect("component count")
}

fn rand_one_form(rng: &mut ChaCha8Rng, dim: usize, deg: usize) -> SForm {
    let coeffs = (0..dim).map(|_| rand_poly(rng, dim, deg, 1.0)).collect();
    SForm::new(1, dim, coeffs, true).expect("one-forms are alternating")
}

fn rand_two_form(rng: &mut ChaCha8Rng, dim: usize, deg: usize) -> SForm {
    // antisymmetric coefficient matrix of polynomial entries
    let mut coeffs = vec![Expr::constant(0.0); dim * dim];
    for a in 0..dim {
        for b in (a + 1)..dim {
            let p = rand_poly(rng, dim, deg, 1.0);
            coeffs[a + dim * b] = p.clone();
            coeffs[b + dim * a] = Expr::neg(p);
        }
    }
    SForm::new(2, dim, coeffs, true).expect("antisymmetric by construction")
}

// ---------- suites ----------

fn suite_backends(cfg: &SuiteConfig) -> Vec<PropertyRecord> {
    let n = cfg.matrix_size;
    let mut out = Vec::new();

    out.push(residual_record("commutator_antisymmetry", 1e-12 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "commutator_antisymmetry");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            let x = rand_matrix(&mut rng, n, 1.0);
            let y = rand_matrix(&mut rng, n, 1.0);
            let r = x.commutator(&y)?.add(&y.commutator(&x)?)?.norm();
            worst = worst.max(r / (x.norm() * y.norm()).max(1.0));
        }
        Ok(worst)
    })()));

    out.push(residual_record("commutator_jacobi", 1e-12 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "commutator_jacobi");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            let x = rand_matrix(&mut rng, n, 1.0);
            let y = rand_matrix(&mut rng, n, 1.0);
            let z = rand_matrix(&mut rng, n, 1.0);
            let s = x
                .commutator(&y.commutator(&z)?)?
                .add(&y.commutator(&z.commutator(&x)?)?)?
                .add(&z.commutator(&x.commutator(&y)?)?)?;
            worst = worst.max(s.norm() / (x.norm() * y.norm() * z.norm()).max(1.0));
        }
        Ok(worst)
    })()));

    out.push(residual_record("group_inverse_contract", 1e-12 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "group_inverse_contract");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            let g = GroupElement::new(rand_invertible(&mut rng, n))?;
            let r = g
                .mul(&g.inverse()?)?
                .element()
                .sub(&AlgebraElement::identity_matrix(n))?
                .norm();
            worst = worst.max(r / g.element().norm().max(1.0));
        }
        Ok(worst)
    })()));

    out.push(residual_record("backend_mismatch_rejected", 0.0, (|| {
        let x = AlgebraElement::real(1.0);
        let y = AlgebraElement::identity_matrix(n);
        match x.commutator(&y) {
            Err(Error::BackendMismatch(_)) => Ok(0.0),
            Ok(_) | Err(_) => Ok(1.0),
        }
    })()));

    out
}

fn suite_jets(cfg: &SuiteConfig) -> Vec<PropertyRecord> {
    let len = cfg.order;
    let mut out = Vec::new();

    out.push(residual_record("jet_ring_associativity", 1e-12 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "jet_ring_associativity");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            let f = rand_cjet(&mut rng, len, 1);
            let g = rand_cjet(&mut rng, len, 1);
            let h = rand_cjet(&mut rng, len, 1);
            let a = f.mul(&g)?.mul(&h)?;
            let b = f.mul(&g.mul(&h)?)?;
            let scale = (f.scale_norm() * g.scale_norm() * h.scale_norm()).max(1.0);
            worst = worst.max(a.distance(&b)? / scale);
        }
        Ok(worst)
    })()));

    out.push(residual_record("jet_ring_distributivity", 1e-12 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "jet_ring_distributivity");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            let f = rand_cjet(&mut rng, len, 1);
            let g = rand_cjet(&mut rng, len, 1);
            let h = rand_cjet(&mut rng, len, 1);
            let a = f.mul(&g.add(&h)?)?;
            let b = f.mul(&g)?.add(&f.mul(&h)?)?;
            let scale = (f.scale_norm() * (g.scale_norm() + h.scale_norm())).max(1.0);
            worst = worst.max(a.distance(&b)? / scale);
        }
        Ok(worst)
    })()));

    out.push(residual_record("jet_unit_neutral", 0.0, (|| {
        let mut rng = rng_for(cfg, "jet_unit_neutral");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            let f = rand_cjet(&mut rng, len, 1);
            let one = Jet::one(&Complex64::new(0.0, 0.0), len, 1);
            worst = worst.max(f.mul(&one)?.distance(&f)?);
            worst = worst.max(one.mul(&f)?.distance(&f)?);
        }
        Ok(worst)
    })()));

    out.push(residual_record("jet_inverse_contract_float", 1e-12 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "jet_inverse_contract_float");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            let f = rand_cjet(&mut rng, len, 1);
            let inv = f.inverse()?;
            let one = Jet::one(&Complex64::new(0.0, 0.0), len, 1);
            let scale = (f.scale_norm() * inv.scale_norm()).max(1.0);
            worst = worst.max(f.mul(&inv)?.distance(&one)? / scale);
            worst = worst.max(inv.mul(&f)?.distance(&one)? / scale);
        }
        Ok(worst)
    })()));

    out.push(residual_record("jet_inverse_contract_exact", 0.0, (|| {
        let mut rng = rng_for(cfg, "jet_inverse_contract_exact");
        let n = cfg.matrix_size;
        for k in 0..cfg.samples / 2 {
            let f = if k % 2 == 0 {
                rand_rational_scalar_jet(&mut rng, len)
            } else {
                rand_rational_matrix_jet(&mut rng, n, len)
            };
            let one = Jet::one(&f.coeffs()[0], len, 1);
            if f.mul(&f.inverse()?)? != one || f.inverse()?.mul(&f)? != one {
                return Ok(1.0);
            }
        }
        Ok(0.0)
    })()));

    out.push(residual_record("jet_power_substitution", 1e-12 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "jet_power_substitution");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            let f = rand_cjet(&mut rng, len, 1);
            let p = rng.gen_range(2u32..=3);
            let h = f.compose_power(p, (len - 1) * p as usize + 1)?;
            let t = rng.gen_range(0.05..0.4);
            let a = h.eval(t)?;
            let b = f.eval(t.powi(p as i32))?;
            worst = worst.max(a.sub(&b)?.norm() / f.scale_norm().max(1.0));
        }
        Ok(worst)
    })()));

    out.push(residual_record("jet_rescale_consistency", 1e-12 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "jet_rescale_consistency");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            let f = rand_cjet(&mut rng, len, 1);
            let lambda = rng.gen_range(0.2..1.5);
            let t = rng.gen_range(0.05..0.5);
            let a = f.rescale(lambda).eval(t)?;
            let b = f.eval(lambda * t)?;
            worst = worst.max(a.sub(&b)?.norm() / f.scale_norm().max(1.0));
        }
        Ok(worst)
    })()));

    out
}

/// A jet carrying a higher-order vanishing claim: zero coefficients
/// through index `m * root` inclusive, random afterwards.
fn tagged_jet(rng: &mut ChaCha8Rng, m: u32, root: u32, tail: usize) -> Jet<Complex64> {
    let zero_len = (m * root) as usize + 1;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); zero_len + tail];
    for c in coeffs.iter_mut().skip(zero_len) {
        *c = rand_c(rng);
    }
    Jet::new(coeffs, root).expect("nonempty")
}

/// Multiply by the monomial `t^k`: prepend `k * root` zero
/// coefficients.
fn shift_jet(f: &Jet<Complex64>, k: u32) -> Jet<Complex64> {
    let pad = (k * f.root()) as usize;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); pad];
    coeffs.extend_from_slice(f.coeffs());
    Jet::new(coeffs, f.root()).expect("nonempty")
}

/// Drop the first `k * root` coefficients (divide by `t^k`); the
/// caller guarantees they vanish.
fn unshift_jet(f: &Jet<Complex64>, k: u32) -> Jet<Complex64> {
    let cut = (k * f.root()) as usize;
    Jet::new(f.coeffs()[cut..].to_vec(), f.root()).expect("nonempty")
}

fn suite_landau(cfg: &SuiteConfig) -> Vec<PropertyRecord> {
    let mut out = Vec::new();
    // each rule is a claim-propagation check on `samples` random
    // tagged jets; the "residual" counts violations
    let run = |law: &'static str,
               body: &dyn Fn(&mut ChaCha8Rng) -> Result<bool>|
     -> PropertyRecord {
        residual_record(law, 0.0, (|| {
            let mut rng = rng_for(cfg, law);
            let mut violations = 0usize;
            for _ in 0..cfg.samples {
                if !body(&mut rng)? {
                    violations += 1;
                }
            }
            Ok(violations as f64)
        })())
    };

    out.push(run("landau_rule_i_constant_term", &|rng| {
        // a vanishing claim at any order kills the constant term
        let m = rng.gen_range(0u32..3);
        let root = rng.gen_range(1u32..4);
        let d = tagged_jet(rng, m, root, 4);
        Ok(d.order_claim(m)? && d.coeffs()[0].norm() == 0.0)
    }));

    out.push(run("landau_rule_ii_zero", &|rng| {
        let m = rng.gen_range(0u32..4);
        let root = rng.gen_range(1u32..4);
        let z = Jet::zero(&Complex64::new(0.0, 0.0), ((m + 1) * root) as usize + 2, root);
        z.order_claim(m)
    }));

    out.push(run("landau_rule_iii_self", &|rng| {
        let m = rng.gen_range(0u32..3);
        let root = rng.gen_range(1u32..4);
        let f = rand_cjet(rng, ((m + 1) * root) as usize + 3, root);
        f.sub(&f)?.order_claim(m)
    }));

    out.push(run("landau_rule_iv_weaken", &|rng| {
        let m = rng.gen_range(1u32..4);
        let mp = rng.gen_range(0..=m);
        let root = rng.gen_range(1u32..4);
        let f = tagged_jet(rng, m, root, 4);
        Ok(f.order_claim(m)? && f.order_claim(mp)?)
    }));

    out.push(run("landau_rule_v_cancel_power", &|rng| {
        let m = rng.gen_range(1u32..4);
        let mp = rng.gen_range(0..=m);
        let root = rng.gen_range(1u32..4);
        // build t^{m'} F directly with claim m, then divide
        let g = tagged_jet(rng, m, root, 4);
        let f = unshift_jet(&g, mp);
        Ok(g.order_claim(m)? && f.order_claim(m - mp)?)
    }));

    out.push(run("landau_rule_vi_smooth_factor", &|rng| {
        let m = rng.gen_range(0u32..3);
        let root = rng.gen_range(1u32..4);
        let f = tagged_jet(rng, m, root, (2 * root) as usize + 4);
        // a smooth factor of t, rerooted to the claim's variable
        let smooth = rand_cjet(rng, 3, 1).reroot(root)?;
        f.mul(&smooth)?.order_claim(m)
    }));

    out.push(run("landau_rule_vii_shift_power", &|rng| {
        let m = rng.gen_range(0u32..3);
        let mp = rng.gen_range(0u32..3);
        let root = rng.gen_range(1u32..4);
        let f = tagged_jet(rng, m, root, 4);
        shift_jet(&f, mp).order_claim(m + mp)
    }));

    out.push(run("landau_rule_viii_sum", &|rng| {
        let m = rng.gen_range(0u32..3);
        let mp = rng.gen_range(0u32..3);
        let root = rng.gen_range(1u32..3);
        let rootp = rng.gen_range(1u32..3);
        let tail = (4 * root.max(rootp)) as usize + 4;
        let f = tagged_jet(rng, m, root, tail);
        let g = tagged_jet(rng, mp, rootp, tail);
        f.add(&g)?.order_claim(m.min(mp))
    }));

    out.push(run("landau_rule_ix_product", &|rng| {
        let m = rng.gen_range(0u32..3);
        let mp = rng.gen_range(0u32..3);
        let root = rng.gen_range(1u32..3);
        let f = tagged_jet(rng, m, root, ((mp + 1) * root) as usize + 4);
        let g = tagged_jet(rng, mp, root, ((m + 1) * root) as usize + 4);
        f.mul(&g)?.order_claim(m + mp)
    }));

    out
}

fn suite_motions(cfg: &SuiteConfig) -> Vec<PropertyRecord> {
    let n = cfg.matrix_size;
    let mut out = Vec::new();
    let pair_count = cfg.samples.min(50);

    out.push(residual_record("motion_direction_exponential", 1e-8, (|| {
        let mut rng = rng_for(cfg, "motion_direction_exponential");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples.min(100) {
            let x = rand_matrix(&mut rng, n, 1.0);
            let m = Motion::exponential(x.clone(), 1.0, 20)?;
            let d = m.initial_direction(12)?;
            worst = worst.max(d.value.sub(&x)?.norm() / x.norm().max(1e-3));
        }
        Ok(worst)
    })()));

    out.push(residual_record("motion_inverse_direction", 1e-8, (|| {
        let mut rng = rng_for(cfg, "motion_inverse_direction");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples.min(100) {
            let x = rand_matrix(&mut rng, n, 1.0);
            let m = motion_inverse(&Motion::exponential(x.clone(), 1.0, 20)?)?;
            let d = m.initial_direction(12)?;
            worst = worst.max(d.value.add(&x)?.norm() / x.norm().max(1e-3));
        }
        Ok(worst)
    })()));

    out.push(residual_record("motion_product_direction", 1e-8, (|| {
        let mut rng = rng_for(cfg, "motion_product_direction");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples.min(100) {
            let x = rand_matrix(&mut rng, n, 1.0);
            let y = rand_matrix(&mut rng, n, 1.0);
            let (lambda, mu) = (rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0));
            let a = Motion::exponential(x.clone(), 2.0, 20)?;
            let b = Motion::exponential(y.clone(), 2.0, 20)?;
            let c = motion_product(&a, &b, lambda, mu)?;
            let d = c.initial_direction(12)?;
            let expect = x.scale(lambda).add(&y.scale(mu))?;
            worst = worst.max(d.value.sub(&expect)?.norm() / expect.norm().max(1e-3));
        }
        Ok(worst)
    })()));

    out.push(residual_record("motion_commutator_direction", 1e-7, (|| {
        let mut rng = rng_for(cfg, "motion_commutator_direction");
        let mut worst: f64 = 0.0;
        for _ in 0..pair_count {
            let x = rand_matrix(&mut rng, n, 1.0);
            let y = rand_matrix(&mut rng, n, 1.0);
            let a = Motion::exponential(x.clone(), 1.0, 20)?;
            let b = Motion::exponential(y.clone(), 1.0, 20)?;
            let c = motion_group_commutator(&a, &b)?;
            // convergence is in sqrt(u), so the extraction needs more
            // depth than the integer-exponent motions
            let d = c.initial_direction(20)?;
            let expect = x.commutator(&y)?;
            worst = worst.max(d.value.sub(&expect)?.norm() / (x.norm() * y.norm()).max(1e-3));
        }
        Ok(worst)
    })()));

    out.push(rate_record("motion_commutator_remainder_rate", 2.9, (|| {
        let mut rng = rng_for(cfg, "motion_commutator_remainder_rate");
        let mut min_rate = f64::INFINITY;
        let mut rates = Vec::new();
        for i in 0..pair_count.min(10) {
            let x = rand_matrix(&mut rng, n, 1.0);
            let y = rand_matrix(&mut rng, n, 1.0);
            let a = Motion::exponential(x, 0.5, 24)?;
            let b = Motion::exponential(y, 0.5, 24)?;
            let q = commutator_remainder_rate(&a, &b, 10)?;
            rates.push((i as f64, q));
            min_rate = min_rate.min(q);
        }
        Ok((min_rate, rates))
    })()));

    out.push(residual_record("motion_profile_prefix", 0.0, (|| {
        let mut rng = rng_for(cfg, "motion_profile_prefix");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples.min(50) {
            let x = rand_matrix(&mut rng, n, 1.0);
            let m = Motion::exponential(x.clone(), 1.0, 20)?;
            let hat = m.hat_jet(4).expect("profile known");
            worst = worst.max(hat.coeffs()[0].sub(&x.one_like())?.norm());
            worst = worst.max(hat.coeffs()[1].sub(&x)?.norm());
        }
        Ok(worst)
    })()));

    out
}

fn suite_fields(cfg: &SuiteConfig) -> Vec<PropertyRecord> {
    let mut out = Vec::new();
    let dims = [cfg.dim, cfg.dim + 1];

    out.push(residual_record("field_leibniz_rule", 1e-12 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "field_leibniz_rule");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            for &d in &dims {
                let x = rand_field(&mut rng, d, 3, 1.0);
                let f = SmoothFunction::new(d, rand_poly(&mut rng, d, 3, 1.0));
                let g = SmoothFunction::new(d, rand_poly(&mut rng, d, 3, 1.0));
                let z = rand_point(&mut rng, d, 1.0);
                let lhs = derivation_apply(&x, &f.product(&g)?, &z)?;
                let fv = f.eval(&z)?;
                let gv = g.eval(&z)?;
                let rhs = derivation_apply(&x, &f, &z)? * gv + fv * derivation_apply(&x, &g, &z)?;
                let scale = (fv.norm() + gv.norm() + 1.0).powi(2);
                worst = worst.max((lhs - rhs).norm() / scale);
            }
        }
        Ok(worst)
    })()));

    out.push(residual_record("field_jacobi_action", 1e-10 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "field_jacobi_action");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples / 2 {
            for &d in &dims {
                let x = rand_field(&mut rng, d, 2, 1.0);
                let y = rand_field(&mut rng, d, 2, 1.0);
                let w = rand_field(&mut rng, d, 2, 1.0);
                let f = SmoothFunction::new(d, rand_poly(&mut rng, d, 3, 1.0));
                let z = rand_point(&mut rng, d, 1.0);
                let term = |a: &VectorField, b: &VectorField, c: &VectorField| -> Result<Complex64> {
                    derivation_apply(&lie_bracket(a, &lie_bracket(b, c)?)?, &f, &z)
                };
                let s = term(&x, &y, &w)? + term(&y, &w, &x)? + term(&w, &x, &y)?;
                worst = worst.max(s.norm());
            }
        }
        Ok(worst)
    })()));

    out.push(residual_record(
        "field_bracket_operator_commutator",
        1e-10 * cfg.tol_scale,
        (|| {
            let mut rng = rng_for(cfg, "field_bracket_operator_commutator");
            let mut worst: f64 = 0.0;
            for _ in 0..cfg.samples {
                for &d in &dims {
                    let x = rand_field(&mut rng, d, 2, 1.0);
                    let y = rand_field(&mut rng, d, 2, 1.0);
                    let f = SmoothFunction::new(d, rand_poly(&mut rng, d, 3, 1.0));
                    let z = rand_point(&mut rng, d, 1.0);
                    let lhs = derivation_apply(&lie_bracket(&x, &y)?, &f, &z)?;
                    let xyf = x.apply(&y.apply(&f)?)?.eval(&z)?;
                    let yxf = y.apply(&x.apply(&f)?)?.eval(&z)?;
                    worst = worst.max((lhs - (xyf - yxf)).norm());
                }
            }
            Ok(worst)
        })(),
    ));

    out.push(residual_record("field_bracket_bilinearity", 1e-12 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "field_bracket_bilinearity");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            let d = cfg.dim;
            let x = rand_field(&mut rng, d, 2, 1.0);
            let y = rand_field(&mut rng, d, 2, 1.0);
            let w = rand_field(&mut rng, d, 2, 1.0);
            let alpha = rng.gen_range(-2.0..2.0);
            let z = rand_point(&mut rng, d, 1.0);
            let lhs = lie_bracket(&x.scale(alpha).add(&y)?, &w)?.eval(&z)?;
            let a = lie_bracket(&x, &w)?.scale(alpha).eval(&z)?;
            let b = lie_bracket(&y, &w)?.eval(&z)?;
            // antisymmetry alongside linearity
            let anti = lie_bracket(&w, &x)?.eval(&z)?;
            let direct = lie_bracket(&x, &w)?.eval(&z)?;
            for i in 0..d {
                worst = worst.max((lhs[i] - a[i] - b[i]).norm());
                worst = worst.max((anti[i] + direct[i]).norm());
            }
        }
        Ok(worst)
    })()));

    out.push(residual_record(
        "field_pullback_contravariance",
        1e-12 * cfg.tol_scale,
        (|| {
            let mut rng = rng_for(cfg, "field_pullback_contravariance");
            let mut worst: f64 = 0.0;
            for _ in 0..cfg.samples.min(50) {
                let d = cfg.dim;
                // shear diffeo (z1 + p(z2..), rest): exact closed-form inverse
                let p = rand_poly(&mut rng, d, 2, 0.5);
                let mut fwd: Vec<Expr> = (0..d).map(Expr::var).collect();
                let mut inv = fwd.clone();
                let shear = p.compose(
                    &(0..d)
                        .map(|k| if k == 0 { Expr::constant(0.0) } else { Expr::var(k) })
                        .collect::<Vec<_>>(),
                )?;
                fwd[0] = Expr::add(Expr::var(0), shear.clone());
                inv[0] = Expr::sub(Expr::var(0), shear);
                let h1 = Diffeo::new(d, fwd, inv)?;
                let scale = rng.gen_range(0.5..2.0);
                let h2 = Diffeo::new(
                    d,
                    (0..d)
                        .map(|k| Expr::mul(Expr::constant(scale), Expr::var(k)))
                        .collect(),
                    (0..d)
                        .map(|k| Expr::mul(Expr::constant(1.0 / scale), Expr::var(k)))
                        .collect(),
                )?;
                let f = SmoothFunction::new(d, rand_poly(&mut rng, d, 3, 1.0));
                let z = rand_point(&mut rng, d, 0.8);
                let composed = pullback(&h1.compose(&h2)?, &f)?.eval(&z)?;
                let staged = pullback(&h1, &pullback(&h2, &f)?)?.eval(&z)?;
                worst = worst.max((composed - staged).norm());
            }
            Ok(worst)
        })(),
    ));

    out.push(residual_record("field_flow_direction", 1e-7, (|| {
        let mut rng = rng_for(cfg, "field_flow_direction");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples.min(20) {
            let d = cfg.dim;
            // moderate coefficients keep the flow bounded on [0, 1/4]
            let x = rand_field(&mut rng, d, 2, 0.5);
            let f = SmoothFunction::new(d, rand_poly(&mut rng, d, 3, 1.0));
            let z = rand_point(&mut rng, d, 0.3);
            let check = accessible_direction_check(&x, &f, &z, 0.25, 10)?;
            worst = worst.max(check.residual);
        }
        Ok(worst)
    })()));

    out
}

fn suite_forms(cfg: &SuiteConfig) -> Vec<PropertyRecord> {
    let mut out = Vec::new();

    out.push(residual_record(
        "form_slot_function_linearity",
        1e-12 * cfg.tol_scale,
        (|| {
            let mut rng = rng_for(cfg, "form_slot_function_linearity");
            let mut worst: f64 = 0.0;
            for _ in 0..cfg.samples.min(100) {
                let d = cfg.dim;
                let b = rand_two_form(&mut rng, d, 2);
                let y = rand_field(&mut rng, d, 2, 1.0);
                let w = rand_field(&mut rng, d, 2, 1.0);
                let u = rand_field(&mut rng, d, 2, 1.0);
                let fexpr = rand_poly(&mut rng, d, 2, 1.0);
                let gexpr = rand_poly(&mut rng, d, 2, 1.0);
                let z = rand_point(&mut rng, d, 1.0);
                // (fY + gW, U) expands over both slots
                let fy = VectorField::new(
                    d,
                    y.components()
                        .iter()
                        .map(|c| Expr::mul(fexpr.clone(), c.clone()))
                        .collect(),
                )?;
                let gw = VectorField::new(
                    d,
                    w.components()
                        .iter()
                        .map(|c| Expr::mul(gexpr.clone(), c.clone()))
                        .collect(),
                )?;
                let mixed = fy.add(&gw)?;
                let lhs = b.apply(&[&mixed, &u], &z)?;
                let fv = fexpr.eval(&z)?;
                let gv = gexpr.eval(&z)?;
                let rhs = fv * b.apply(&[&y, &u], &z)? + gv * b.apply(&[&w, &u], &z)?;
                worst = worst.max((lhs - rhs).norm());
            }
            Ok(worst)
        })(),
    ));

    out.push(residual_record("form_transpose_involution", 0.0, (|| {
        let mut rng = rng_for(cfg, "form_transpose_involution");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples.min(50) {
            let d = cfg.dim;
            let b = rand_two_form(&mut rng, d, 2);
            let tt = b.transpose()?.transpose()?;
            let x = rand_field(&mut rng, d, 1, 1.0);
            let y = rand_field(&mut rng, d, 1, 1.0);
            let z = rand_point(&mut rng, d, 1.0);
            worst = worst.max((b.apply(&[&x, &y], &z)? - tt.apply(&[&x, &y], &z)?).norm());
            // alternating forms transpose to their negative
            worst = worst
                .max((b.transpose()?.apply(&[&x, &y], &z)? + b.apply(&[&x, &y], &z)?).norm());
        }
        Ok(worst)
    })()));

    out.push(residual_record(
        "exterior_one_form_specialization",
        1e-12 * cfg.tol_scale,
        (|| {
            let mut rng = rng_for(cfg, "exterior_one_form_specialization");
            let mut worst: f64 = 0.0;
            for _ in 0..cfg.samples.min(100) {
                let d = cfg.dim;
                let theta = rand_one_form(&mut rng, d, 2);
                let x = rand_field(&mut rng, d, 2, 1.0);
                let y = rand_field(&mut rng, d, 2, 1.0);
                let z = rand_point(&mut rng, d, 1.0);
                let general = exterior_action(&theta, &[&x, &y], &z)?;
                let frame = exterior_derivative(&theta)?.apply(&[&x, &y], &z)?;
                let xth = SmoothFunction::new(d, theta.action_expr(&[&x])?);
                let yth = SmoothFunction::new(d, theta.action_expr(&[&y])?);
                let special = derivation_apply(&x, &yth, &z)?
                    - derivation_apply(&y, &xth, &z)?
                    - theta.apply(&[&lie_bracket(&x, &y)?], &z)?;
                worst = worst.max((general - special).norm());
                worst = worst.max((general - frame).norm());
            }
            Ok(worst)
        })(),
    ));

    out.push(residual_record(
        "exterior_two_form_specialization",
        1e-11 * cfg.tol_scale,
        (|| {
            let mut rng = rng_for(cfg, "exterior_two_form_specialization");
            let mut worst: f64 = 0.0;
            for _ in 0..cfg.samples.min(50) {
                let d = 3;
                let omega = rand_two_form(&mut rng, d, 2);
                let x = rand_field(&mut rng, d, 2, 1.0);
                let y = rand_field(&mut rng, d, 2, 1.0);
                let w = rand_field(&mut rng, d, 2, 1.0);
                let z = rand_point(&mut rng, d, 1.0);
                let general = exterior_action(&omega, &[&x, &y, &w], &z)?;
                let frame = exterior_derivative(&omega)?.apply(&[&x, &y, &w], &z)?;
                // three slot derivatives and three bracket corrections
                let act = |a: &VectorField, b: &VectorField| -> Result<SmoothFunction> {
                    Ok(SmoothFunction::new(d, omega.action_expr(&[a, b])?))
                };
                let special = derivation_apply(&x, &act(&y, &w)?, &z)?
                    - derivation_apply(&y, &act(&x, &w)?, &z)?
                    + derivation_apply(&w, &act(&x, &y)?, &z)?
                    - omega.apply(&[&lie_bracket(&x, &y)?, &w], &z)?
                    + omega.apply(&[&lie_bracket(&x, &w)?, &y], &z)?
                    - omega.apply(&[&lie_bracket(&y, &w)?, &x], &z)?;
                worst = worst.max((general - special).norm());
                worst = worst.max((general - frame).norm());
            }
            Ok(worst)
        })(),
    ));

    out.push(residual_record("exterior_dd_zero", 1e-10 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "exterior_dd_zero");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples.min(100) {
            let theta = rand_one_form(&mut rng, 3, 3);
            let ddtheta = exterior_derivative(&exterior_derivative(&theta)?)?;
            let x = rand_field(&mut rng, 3, 2, 1.0);
            let y = rand_field(&mut rng, 3, 2, 1.0);
            let w = rand_field(&mut rng, 3, 2, 1.0);
            let z = rand_point(&mut rng, 3, 1.0);
            worst = worst.max(ddtheta.apply(&[&x, &y, &w], &z)?.norm());
        }
        Ok(worst)
    })()));

    out.push(residual_record(
        "second_derivative_bracket_defect",
        1e-12 * cfg.tol_scale,
        (|| {
            let mut rng = rng_for(cfg, "second_derivative_bracket_defect");
            let mut worst: f64 = 0.0;
            for _ in 0..cfg.samples.min(100) {
                let d = cfg.dim;
                let x = rand_field(&mut rng, d, 2, 1.0);
                let y = rand_field(&mut rng, d, 2, 1.0);
                let f = SmoothFunction::new(d, rand_poly(&mut rng, d, 3, 1.0));
                let z = rand_point(&mut rng, d, 1.0);
                let xy = dform_derivative_operator(&f, &[&x, &y], &z)?;
                let yx = dform_derivative_operator(&f, &[&y, &x], &z)?;
                let br = derivation_apply(&lie_bracket(&x, &y)?, &f, &z)?;
                worst = worst.max((xy - yx - br).norm());
            }
            Ok(worst)
        })(),
    ));

    out
}

fn suite_kernels(cfg: &SuiteConfig) -> Vec<PropertyRecord> {
    let mut out = Vec::new();
    let d = cfg.dim;

    fn rand_kernel(rng: &mut ChaCha8Rng, d: usize, deg: usize) -> Kernel {
        Kernel::new(d, rand_poly(rng, 2 * d, deg, 1.0))
    }

    out.push(residual_record("kernel_lie_vs_jacobian", 1e-12 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "kernel_lie_vs_jacobian");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples {
            let f = rand_kernel(&mut rng, d, 3);
            let x = rand_field(&mut rng, d, 2, 1.0);
            let z = rand_point(&mut rng, d, 1.0);
            let zp = rand_point(&mut rng, d, 1.0);
            let a = left_lie_derivative(&x, &f)?.eval(&z, &zp)?;
            let b = partial_jacobian_apply(&f, Slot::Left, &x.eval(&z)?, &z, &zp)?;
            worst = worst.max((a - b).norm());
            let a = right_lie_derivative(&x, &f)?.eval(&z, &zp)?;
            let b = partial_jacobian_apply(&f, Slot::Right, &x.eval(&zp)?, &z, &zp)?;
            worst = worst.max((a - b).norm());
        }
        Ok(worst)
    })()));

    out.push(residual_record("kernel_bracket_identities", 1e-10 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "kernel_bracket_identities");
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.samples.min(100) {
            let f = rand_kernel(&mut rng, d, 3);
            let x = rand_field(&mut rng, d, 2, 1.0);
            let y = rand_field(&mut rng, d, 2, 1.0);
            let z = rand_point(&mut rng, d, 1.0);
            let zp = rand_point(&mut rng, d, 1.0);
            let (l, r) = lr_bracket_check(&x, &y, &f, &z, &zp)?;
            worst = worst.max(l).max(r);
        }
        Ok(worst)
    })()));

    out.push(residual_record(
        "kernel_mixed_partial_symmetry",
        1e-12 * cfg.tol_scale,
        (|| {
            let mut rng = rng_for(cfg, "kernel_mixed_partial_symmetry");
            let mut worst: f64 = 0.0;
            for _ in 0..cfg.samples {
                let f = rand_kernel(&mut rng, d, 3);
                let z = rand_point(&mut rng, d, 1.0);
                let zp = rand_point(&mut rng, d, 1.0);
                let v = rand_point(&mut rng, d, 1.0);
                let w = rand_point(&mut rng, d, 1.0);
                let lf = f.slot_derivative(Slot::Left, &v)?;
                let rf = f.slot_derivative(Slot::Right, &w)?;
                let lr = partial_jacobian_apply(&lf, Slot::Right, &w, &z, &zp)?;
                let rl = partial_jacobian_apply(&rf, Slot::Left, &v, &z, &zp)?;
                worst = worst.max((lr - rl).norm());
            }
            Ok(worst)
        })(),
    ));

    out.push(rate_record("kernel_taylor_oracle_rate", 1.8, (|| {
        let mut rng = rng_for(cfg, "kernel_taylor_oracle_rate");
        let f = Kernel::parse("exp(-(z1 - w1)^2) + z1 * w1^2", 1)?;
        let z = rand_point(&mut rng, 1, 0.5);
        let zp = rand_point(&mut rng, 1, 0.5);
        let c = Curve::line(&z, &[Complex64::new(0.8, 0.0)])?;
        let b = Curve::line(&zp, &[Complex64::new(-0.6, 0.0)])?;
        let t2 = crate::kernels::taylor2_expand(&f, &c, &b)?;
        // central second difference of F(c(t), b(t)) estimates twice
        // the t^2 coefficient
        let phi = |t: f64| -> Result<Complex64> { f.eval(&c.eval(t)?, &b.eval(t)?) };
        let mut pairs = Vec::new();
        for k in 2..=8 {
            let t = 0.5f64.powi(k);
            let est = (phi(t)? - phi(0.0)? * 2.0 + phi(-t)?) / (t * t);
            pairs.push((t, (est * 0.5 - t2.joint[2]).norm()));
        }
        let rate = fit_log_slope(&pairs, 1e-12).unwrap_or(f64::INFINITY);
        Ok((rate, pairs))
    })()));

    out.push(rate_record("kernel_second_difference_rate", 0.5, (|| {
        let mut rng = rng_for(cfg, "kernel_second_difference_rate");
        let f = Kernel::parse("exp(-(z1 - w1)^2)", 1)?;
        let z = rand_point(&mut rng, 1, 0.5);
        let v = [Complex64::new(1.0, 0.0)];
        let c = Curve::line(&z, &v)?;
        let target = anticommutator(&f, &v, &v, &z, &z)? * 0.5;
        let mut pairs = Vec::new();
        for k in 3..=12 {
            let t = 0.5f64.powi(k);
            let s = second_difference(&f, &c, t)?;
            pairs.push((t, (s / (t * t) - target).norm()));
        }
        let rate = fit_log_slope(&pairs, 1e-13).unwrap_or(f64::INFINITY);
        Ok((rate, pairs))
    })()));

    out.push(residual_record("kernel_cone_propagation", 1e-9 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "kernel_cone_propagation");
        let x = VectorField::new(1, vec![rand_poly(&mut rng, 1, 2, 1.0)])?;
        let mut worst = f64::NEG_INFINITY;
        for src in ["z1 * w1", "exp(-(z1 - w1)^2)"] {
            let f = Kernel::parse(src, 1)?;
            let r = antif_check(&f, &Cone::NonnegReal, &x, 1000, cfg.seed)?;
            worst = worst.max(-r.min_margin / r.scale);
        }
        Ok(worst.max(0.0))
    })()));

    out.push(residual_record("kernel_cauchy_schwarz", 1e-9 * cfg.tol_scale, (|| {
        let mut rng = rng_for(cfg, "kernel_cauchy_schwarz");
        let x = VectorField::new(1, vec![rand_poly(&mut rng, 1, 2, 1.0)])?;
        let mut worst = f64::NEG_INFINITY;
        for src in ["exp(-(z1 - w1)^2)", "1 + z1 * w1"] {
            let f = Kernel::parse(src, 1)?;
            let r = csf_check(&f, &x, 1000, cfg.seed)?;
            worst = worst.max(-r.min_margin / r.scale);
        }
        Ok(worst.max(0.0))
    })()));

    out
}

/// Run one suite (or `all`) and collect a deterministic report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let mut records = Vec::new();
    let run_one = |name: &str, records: &mut Vec<PropertyRecord>| {
        let sub = SuiteConfig {
            suite: name.to_string(),
            ..cfg.clone()
        };
        match name {
            "backends" => records.extend(suite_backends(&sub)),
            "jets" => records.extend(suite_jets(&sub)),
            "landau" => records.extend(suite_landau(&sub)),
            "motions" => records.extend(suite_motions(&sub)),
            "fields" => records.extend(suite_fields(&sub)),
            "forms" => records.extend(suite_forms(&sub)),
            "kernels" => records.extend(suite_kernels(&sub)),
            _ => unreachable!("validated suite name"),
        }
    };
    if cfg.suite == "all" {
        for name in SUITES {
            run_one(name, &mut records);
        }
        // coverage self-test: every manifest law must have a record
        let missing: Vec<&str> = LAW_MANIFEST
            .iter()
            .filter(|law| !records.iter().any(|r| &r.law == *law))
            .copied()
            .collect();
        records.push(PropertyRecord {
            name: if missing.is_empty() {
                "coverage_manifest".into()
            } else {
                format!("coverage_manifest [missing: {}]", missing.join(", "))
            },
            law: "coverage_manifest".into(),
            status: if missing.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            residual: Some(missing.len() as f64),
            tolerance: 0.0,
            rate: None,
            steps: vec![],
        });
    } else {
        run_one(&cfg.suite, &mut records);
    }
    records.sort_by(|a, b| a.name.cmp(&b.name));
    let summary = Summary {
        passed: records.iter().filter(|r| r.status == Status::Pass).count(),
        failed: records.iter().filter(|r| r.status == Status::Fail).count(),
        skipped: records.iter().filter(|r| r.status == Status::Skip).count(),
    };
    Ok(Report {
        schema_version: 1,
        suite: cfg.suite.clone(),
        seed: cfg.seed,
        records,
        summary,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Serialize a report to pretty JSON (schema v1).
pub fn report_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}

/// Human-readable verdict table.
pub fn report_table(r: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "suite {} (seed {}): {} passed, {} failed, {} skipped\n",
        r.suite, r.seed, r.summary.passed, r.summary.failed, r.summary.skipped
    ));
    for rec in &r.records {
        let status = match rec.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let detail = match (rec.residual, rec.rate) {
            (_, Some(rate)) => format!("rate {rate:.3} (min {})", rec.tolerance),
            (Some(res), None) => format!("residual {res:.3e} (tol {:.1e})", rec.tolerance),
            _ => String::new(),
        };
        out.push_str(&format!("  {status}  {:<40} {detail}\n", rec.name));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: &str, samples: usize) -> SuiteConfig {
        SuiteConfig {
            suite: suite.into(),
            seed: 42,
            samples,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn unknown_suite_is_a_config_error() {
        assert!(matches!(
            run_suite(&cfg("frobnicate", 10)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn backends_suite_passes() {
        let r = run_suite(&cfg("backends", 50)).unwrap();
        assert!(!r.failed(), "{}", report_table(&r));
    }

    #[test]
    fn jets_suite_passes() {
        let r = run_suite(&cfg("jets", 50)).unwrap();
        assert!(!r.failed(), "{}", report_table(&r));
    }

    #[test]
    fn landau_suite_passes() {
        let r = run_suite(&cfg("landau", 100)).unwrap();
        assert!(!r.failed(), "{}", report_table(&r));
    }

    #[test]
    fn motions_suite_passes() {
        let r = run_suite(&cfg("motions", 10)).unwrap();
        assert!(!r.failed(), "{}", report_table(&r));
    }

    #[test]
    fn fields_suite_passes() {
        let r = run_suite(&cfg("fields", 20)).unwrap();
        assert!(!r.failed(), "{}", report_table(&r));
    }

    #[test]
    fn forms_suite_passes() {
        let r = run_suite(&cfg("forms", 20)).unwrap();
        assert!(!r.failed(), "{}", report_table(&r));
    }

    #[test]
    fn kernels_suite_passes() {
        let r = run_suite(&cfg("kernels", 30)).unwrap();
        assert!(!r.failed(), "{}", report_table(&r));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(&cfg("jets", 30)).unwrap();
        let b = run_suite(&cfg("jets", 30)).unwrap();
        let strip = |mut r: Report| {
            r.wall_ms = 0.0;
            report_json(&r)
        };
        assert_eq!(strip(a), strip(b));
    }

    #[test]
    fn report_serialization_roundtrip() {
        let r = run_suite(&cfg("backends", 5)).unwrap();
        let json = report_json(&r);
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back.records.len(), r.records.len());
        assert_eq!(back.schema_version, 1);
    }
}
