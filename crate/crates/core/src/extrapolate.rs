//! Richardson extrapolation on geometric step sequences, plus
//! log-log rate fitting. Shared by the motion and kernel limit checks.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub fn vec_sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Least-squares slope of `log y` against `log x`, ignoring entries at
/// or below `floor`. `None` when fewer than two usable points remain.
pub fn fit_log_slope(pairs: &[(f64, f64)], floor: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = pairs
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > floor && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-30 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// Result of a sequence extrapolation.
#[derive(Debug, Clone)]
pub struct Extrapolated {
    /// Extrapolated limit (flat coefficient vector).
    pub value: Vec<Complex64>,
    /// Fitted decay exponent of the raw residuals against the step size.
    pub residual_rate: f64,
    /// Step table `(t_k, |g_k - value|)` for diagnostics.
    pub steps: Vec<(f64, f64)>,
}

/// Two-level Richardson extrapolation of samples `g_k = g(s_k)` on a
/// geometric node sequence `s_{k+1} = rho * s_k`, assuming
/// `g(s) = L + a s + b s^2 + O(s^3)`. `ts` are the raw step parameters
/// used only for the diagnostic table and rate fit.
pub fn richardson(samples: &[Vec<Complex64>], rho: f64, ts: &[f64]) -> Result<Extrapolated> {
    if samples.len() < 4 {
        return Err(Error::NotAMotion(format!(
            "need at least 4 extrapolation samples, got {}",
            samples.len()
        )));
    }
    if !(0.0 < rho && rho < 1.0) {
        return Err(Error::Config(format!("extrapolation ratio {rho} not in (0,1)")));
    }
    let lvl1: Vec<Vec<Complex64>> = samples
        .windows(2)
        .map(|w| combine(&w[1], &w[0], rho))
        .collect();
    let lvl2: Vec<Vec<Complex64>> = lvl1
        .windows(2)
        .map(|w| combine(&w[1], &w[0], rho * rho))
        .collect();
    let value = lvl2.last().unwrap().clone();

    let scale = samples
        .iter()
        .map(|g| vec_norm(g))
        .fold(vec_norm(&value), f64::max);
    let steps: Vec<(f64, f64)> = ts
        .iter()
        .zip(samples)
        .map(|(&t, g)| (t, vec_norm(&vec_sub(g, &value))))
        .collect();

    // Divergence guard: successive sample differences must not grow as
    // the step shrinks (they contract by ~rho for any profile that is
    // continuous at 0).
    if !scale.is_finite() {
        return Err(Error::NotAMotion("non-finite difference quotients".into()));
    }
    // Rounding noise in the samples grows like 1/t, so increments are
    // only evidence of divergence when they are significant relative
    // to the overall sample scale.
    let floor = 1e-8 * scale.max(1.0);
    let diffs: Vec<f64> = samples
        .windows(2)
        .map(|w| vec_norm(&vec_sub(&w[1], &w[0])))
        .filter(|d| *d > floor)
        .collect();
    if diffs.len() >= 3 {
        let first = diffs.first().unwrap();
        let last = diffs.last().unwrap();
        if *last > 4.0 * first {
            return Err(Error::NotAMotion(format!(
                "difference quotients diverge (increment {first:.3e} -> {last:.3e})"
            )));
        }
    }

    let residual_rate =
        fit_log_slope(&steps, 1e-14 * scale.max(1.0)).unwrap_or(f64::INFINITY);
    Ok(Extrapolated {
        value,
        residual_rate,
        steps,
    })
}

fn combine(finer: &[Complex64], coarser: &[Complex64], rho: f64) -> Vec<Complex64> {
    finer
        .iter()
        .zip(coarser)
        .map(|(f, c)| (f - c * rho) / (1.0 - rho))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn extrapolates_smooth_sequence() {
        // g(s) = 2 + 3 s - 5 s^2 + s^3 should extrapolate to 2 with two
        // Richardson levels leaving only the cubic term.
        let mut samples = Vec::new();
        let mut ts = Vec::new();
        for k in 1..=10 {
            let s = 0.5f64.powi(k);
            samples.push(vec![c(2.0 + 3.0 * s - 5.0 * s * s + s * s * s)]);
            ts.push(s);
        }
        let out = richardson(&samples, 0.5, &ts).unwrap();
        assert!((out.value[0].re - 2.0).abs() < 1e-8);
        assert!(out.residual_rate > 0.8 && out.residual_rate < 1.3);
    }

    #[test]
    fn rejects_divergent_sequence() {
        let mut samples = Vec::new();
        let mut ts = Vec::new();
        for k in 1..=8 {
            let s = 0.5f64.powi(k);
            samples.push(vec![c(1.0 / s)]);
            ts.push(s);
        }
        assert!(matches!(
            richardson(&samples, 0.5, &ts),
            Err(Error::NotAMotion(_))
        ));
    }

    #[test]
    fn slope_fit_recovers_exponent() {
        let pairs: Vec<(f64, f64)> = (1..10)
            .map(|k| {
                let t = 0.5f64.powi(k);
                (t, 3.0 * t.powf(2.5))
            })
            .collect();
        let q = fit_log_slope(&pairs, 0.0).unwrap();
        assert!((q - 2.5).abs() < 1e-10);
    }
}
