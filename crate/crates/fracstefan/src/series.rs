//! Integrals of the self-similar kernel and the closed-form Caputo
//! derivative of the similarity solution, plus the classical (alpha = 1)
//! error-function profile used by limit checks.
//!
//! With z = -x^(1+alpha)/(1+alpha) and the kernel-family coefficients
//! c_n:
//!
//!   f_alpha(x)      = int_0^x sigma_alpha(w) dw
//!                   = x^alpha sum_n c_n z^n / ((n+1)(1+alpha) - 1)
//!   moment_alpha(x) = int_0^x w sigma_alpha(w) dw
//!                   = (x^(1+alpha)/(1+alpha)) sum_n c_n z^n / (n+1)
//!
//! Both series share the cancellation behaviour of the kernel series,
//! so evaluation runs in the double-double tier first and escalates to
//! arbitrary precision when the tracked noise exceeds its budget.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::mpseries::{sigma_family_sum_mp, sigma_family_sums_mp, SeriesWeight};
use crate::quad::gauss_legendre_nodes;
use crate::special::{
    gamma, ml_eval, sigma_alpha, sigma_family_argument, sigma_family_gamma_argument,
    sum_series_dd, KernelOrder, MLParams, Truncation, DD_NOISE_LIMIT,
};

/// 1/((n+1)(1+alpha) - 1) in double-double.
fn f_weight(alpha: f64, n: usize) -> Dd {
    Dd::from_f64(1.0)
        .add_f64(alpha)
        .mul_f64(n as f64 + 1.0)
        .add_f64(-1.0)
        .recip()
}

fn sum_with_fallback(
    alpha: f64,
    x: f64,
    tr: &Truncation,
    dd_weight: &dyn Fn(usize) -> Dd,
    mp_weight: SeriesWeight,
) -> Result<f64> {
    MLParams::sigma_family(alpha)?;
    let zd = sigma_family_argument(alpha, x);
    let a_fn = |n: usize| sigma_family_gamma_argument(alpha, n);
    match sum_series_dd(alpha, &a_fn, zd, tr, dd_weight) {
        Ok(out) if out.noise <= DD_NOISE_LIMIT => Ok(out.value),
        Ok(_) | Err(Error::Convergence { .. }) => {
            Ok(sigma_family_sum_mp(alpha, &[x], mp_weight)?[0])
        }
        Err(e) => Err(e),
    }
}

/// Cumulative kernel integral f_alpha(x) = int_0^x sigma_alpha(w) dw.
///
/// Defined for x >= 0 with f_alpha(0) = 0; strictly increasing; tends
/// to Gamma(alpha)(1+alpha) as x -> infinity.
pub fn f_alpha(a: KernelOrder, x: f64, tr: &Truncation) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!("f_alpha requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let alpha = a.alpha();
    let s = sum_with_fallback(alpha, x, tr, &|n| f_weight(alpha, n), SeriesWeight::FDenom)?;
    Ok(x.powf(alpha) * s)
}

/// First-moment integral moment_alpha(x) = int_0^x w sigma_alpha(w) dw.
///
/// Also equals int_0^x w^alpha E_{alpha,1+1/alpha,1}(-w^(1+alpha)/(1+alpha)) dw,
/// the integral appearing in the closed-form Caputo derivative of the
/// similarity solution.
pub fn moment_alpha(a: KernelOrder, x: f64, tr: &Truncation) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!("moment_alpha requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let alpha = a.alpha();
    let s = sum_with_fallback(
        alpha,
        x,
        tr,
        &|n| Dd::from_f64(n as f64 + 1.0).recip(),
        SeriesWeight::MomentDenom,
    )?;
    Ok(x.powf(1.0 + alpha) / (1.0 + alpha) * s)
}

/// One row of a kernel table: the kernel and its two integrals at w.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct KernelRow {
    pub w: f64,
    pub sigma: f64,
    pub f: f64,
    pub moment: f64,
}

/// Kernel table at many nodes. Nodes the double-double tier can handle
/// are evaluated directly; the rest are batched into one
/// arbitrary-precision pass that shares the coefficient recurrence.
pub fn kernel_rows(a: KernelOrder, ws: &[f64], tr: &Truncation) -> Result<Vec<KernelRow>> {
    let alpha = a.alpha();
    let one_plus = 1.0 + alpha;
    MLParams::sigma_family(alpha)?;
    let mut rows: Vec<Option<KernelRow>> = vec![None; ws.len()];
    let mut escalate: Vec<usize> = Vec::new();
    for (i, &w) in ws.iter().enumerate() {
        if !(w > 0.0) {
            return Err(Error::domain(format!("kernel table nodes must be positive, got {w}")));
        }
        let zd = sigma_family_argument(alpha, w);
        let a_fn = |n: usize| sigma_family_gamma_argument(alpha, n);
        let one = sum_series_dd(alpha, &a_fn, zd, tr, &|_| Dd::ONE);
        let fs = sum_series_dd(alpha, &a_fn, zd, tr, &|n| f_weight(alpha, n));
        let ms = sum_series_dd(alpha, &a_fn, zd, tr, &|n| Dd::from_f64(n as f64 + 1.0).recip());
        match (one, fs, ms) {
            (Ok(o), Ok(f), Ok(m))
                if o.noise.max(f.noise).max(m.noise) <= DD_NOISE_LIMIT =>
            {
                rows[i] = Some(KernelRow {
                    w,
                    sigma: w.powf(alpha - 1.0) * o.value,
                    f: w.powf(alpha) * f.value,
                    moment: w.powf(one_plus) / one_plus * m.value,
                });
            }
            (Err(Error::Domain(d)), _, _) => return Err(Error::Domain(d)),
            _ => escalate.push(i),
        }
    }
    if !escalate.is_empty() {
        let nodes: Vec<f64> = escalate.iter().map(|&i| ws[i]).collect();
        let sums = sigma_family_sums_mp(
            alpha,
            &nodes,
            &[SeriesWeight::One, SeriesWeight::FDenom, SeriesWeight::MomentDenom],
        )?;
        for (&i, s) in escalate.iter().zip(&sums) {
            let w = ws[i];
            rows[i] = Some(KernelRow {
                w,
                sigma: w.powf(alpha - 1.0) * s[0],
                f: w.powf(alpha) * s[1],
                moment: w.powf(one_plus) / one_plus * s[2],
            });
        }
    }
    Ok(rows.into_iter().map(|r| r.unwrap()).collect())
}

/// Caputo spatial derivative of the similarity solution
/// u(x,t) = A + B f_alpha(x / t^(1/(1+alpha))):
///
///   D^alpha u (x,t) = B t^(-alpha/(1+alpha)) [Gamma(alpha) - moment_alpha(w)/(1+alpha)],
///
/// with w = x / t^(1/(1+alpha)).
pub fn caputo_of_solution(a: KernelOrder, b: f64, x: f64, t: f64, tr: &Truncation) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("caputo_of_solution requires t > 0, got {t}")));
    }
    if !(x >= 0.0) {
        return Err(Error::domain(format!("caputo_of_solution requires x >= 0, got {x}")));
    }
    let alpha = a.alpha();
    let w = x / t.powf(1.0 / (1.0 + alpha));
    let m = moment_alpha(a, w, tr)?;
    Ok(b * t.powf(-alpha / (1.0 + alpha)) * (gamma(alpha)? - m / (1.0 + alpha)))
}

/// Both kernel integrals by quadrature instead of term-wise
/// integration: the substitution w = x u^(1/alpha) removes the
/// w^(alpha-1) factor exactly, giving
///
///   f_alpha(x)      = (x^alpha / alpha)       int_0^1 E(z(u)) du
///   moment_alpha(x) = (x^(1+alpha) / alpha)   int_0^1 u^(1/alpha) E(z(u)) du
///
/// with smooth integrands sharing the same E samples. Cross-check
/// route, independent of the term-wise weights.
pub fn f_and_moment_quadrature(a: KernelOrder, x: f64, tr: &Truncation) -> Result<(f64, f64)> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!("requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok((0.0, 0.0));
    }
    let alpha = a.alpha();
    let p = MLParams::sigma_family(alpha)?;

    // Panel boundaries graded cubically toward u = 0, where the
    // integrands have a u^(1/alpha)-type corner that uniform panels
    // resolve only algebraically.
    let (order, panels) = (20usize, 6usize);
    let nodes = gauss_legendre_nodes(order);
    let mut us = Vec::with_capacity(order * panels);
    let mut wts = Vec::with_capacity(order * panels);
    for panel in 0..panels {
        let lo = (panel as f64 / panels as f64).powi(3);
        let hi = ((panel + 1) as f64 / panels as f64).powi(3);
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for &(xn, wn) in &nodes {
            us.push(mid + half * xn);
            wts.push(wn * half);
        }
    }
    let ws: Vec<f64> = us.iter().map(|u| x * u.powf(1.0 / alpha)).collect();

    // E at every node; nodes the double-double tier cannot resolve are
    // batched into one arbitrary-precision pass sharing the recurrence
    let mut values = vec![0.0f64; ws.len()];
    let mut escalate: Vec<usize> = Vec::new();
    for (i, &w) in ws.iter().enumerate() {
        let z = -w.powf(1.0 + alpha) / (1.0 + alpha);
        match ml_eval(&p, z, tr) {
            Ok(v) => values[i] = v,
            Err(Error::Convergence { .. }) => escalate.push(i),
            Err(e) => return Err(e),
        }
    }
    if !escalate.is_empty() {
        let deep_ws: Vec<f64> = escalate.iter().map(|&i| ws[i]).collect();
        let deep = sigma_family_sum_mp(alpha, &deep_ws, SeriesWeight::One)?;
        for (slot, v) in escalate.into_iter().zip(deep) {
            values[slot] = v;
        }
    }

    let mut f_sum = 0.0f64;
    let mut m_sum = 0.0f64;
    for ((&v, &wt), &u) in values.iter().zip(&wts).zip(&us) {
        f_sum += v * wt;
        m_sum += v * wt * u.powf(1.0 / alpha);
    }
    Ok((x.powf(alpha) / alpha * f_sum, x.powf(1.0 + alpha) / alpha * m_sum))
}

/// f_alpha by quadrature; see [`f_and_moment_quadrature`].
pub fn f_alpha_quadrature(a: KernelOrder, x: f64, tr: &Truncation) -> Result<f64> {
    Ok(f_and_moment_quadrature(a, x, tr)?.0)
}

/// moment_alpha by quadrature; see [`f_and_moment_quadrature`].
pub fn moment_alpha_quadrature(a: KernelOrder, x: f64, tr: &Truncation) -> Result<f64> {
    Ok(f_and_moment_quadrature(a, x, tr)?.1)
}

/// Error function, independent of the kernel-series machinery:
/// Maclaurin series for |x| <= 2.5, Lentz continued fraction for the
/// complement beyond (the series loses digits to cancellation there).
pub fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x <= 2.5 {
        // 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1))
        let x2 = x * x;
        let mut term = x;
        let mut sum = 0.0f64;
        let mut n = 0usize;
        loop {
            sum += term / (2.0 * n as f64 + 1.0);
            n += 1;
            term *= -x2 / n as f64;
            if term.abs() / (2.0 * n as f64 + 1.0) < 1e-18 * sum.abs().max(1e-300) {
                break;
            }
        }
        2.0 / std::f64::consts::PI.sqrt() * sum
    } else {
        1.0 - erfc_cf(x)
    }
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    if x <= 2.5 {
        1.0 - erf(x)
    } else {
        erfc_cf(x)
    }
}

/// erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
/// by the modified Lentz algorithm; x >= 2.5 only.
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x.max(tiny);
    let mut c = f;
    let mut d = 0.0f64;
    for k in 1..200 {
        let a = k as f64 / 2.0;
        // continued fraction: b = x, a_k = k/2
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / std::f64::consts::PI.sqrt() / f
}

/// The alpha = 1 profile: f_1(x) = sqrt(pi) erf(x/2), since
/// sigma_1(w) = exp(-(w/2)^2).
pub fn classical_erf_profile(x: f64) -> f64 {
    std::f64::consts::PI.sqrt() * erf(0.5 * x)
}

/// sigma, re-exported here so kernel consumers need only this module.
pub fn sigma(a: KernelOrder, w: f64, tr: &Truncation) -> Result<f64> {
    sigma_alpha(a, w, tr)
}
