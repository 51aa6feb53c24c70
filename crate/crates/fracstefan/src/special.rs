//! Log-Gamma, the three-parametric Mittag-Leffler function
//! `E_{alpha,m,l}(z)` and the self-similar kernel
//! `sigma_alpha(w) = w^(alpha-1) E_{alpha,1+1/alpha,1}(-w^(1+alpha)/(1+alpha))`.
//!
//! The series is alternating for the kernel family and its intermediate
//! terms can dwarf the sum, so all summation runs in double-double
//! precision with a tracked cancellation-noise estimate. Callers that
//! need the kernel outside the double-double range escalate to the
//! arbitrary-precision engine in [`crate::mpseries`].

use crate::dd::{lgamma_dd, Dd};
use crate::error::{Error, Result};

/// Parameters (alpha, m, l) of the three-parametric Mittag-Leffler function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MLParams {
    pub alpha: f64,
    pub m: f64,
    pub l: f64,
}

impl MLParams {
    /// Validates alpha > 0, m > 0 and the admissibility condition
    /// alpha(jm + l) != -1, -2, -3, ... for j = 0, 1, 2, ...
    pub fn new(alpha: f64, m: f64, l: f64) -> Result<MLParams> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
        }
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::domain(format!("m must be positive, got {m}")));
        }
        if !l.is_finite() {
            return Err(Error::domain(format!("l must be finite, got {l}")));
        }
        // alpha(jm+l) is increasing in j, so only finitely many j can land
        // on a negative integer.
        let mut j = 0u32;
        loop {
            let a = alpha * (j as f64 * m + l);
            if a > -0.5 {
                break;
            }
            if (a - a.round()).abs() < 1e-12 && a.round() <= -1.0 {
                return Err(Error::domain(format!(
                    "inadmissible parameters: alpha(jm+l) = {a} is a negative integer at j = {j}"
                )));
            }
            j += 1;
            if j > 100_000 {
                break;
            }
        }
        Ok(MLParams { alpha, m, l })
    }

    /// The kernel family m = 1 + 1/alpha, l = 1 of the self-similar solutions.
    pub fn sigma_family(alpha: f64) -> Result<MLParams> {
        MLParams::new(alpha, 1.0 + 1.0 / alpha, 1.0)
    }
}

/// Series/quadrature tolerance and term caps governing numeric evaluation.
#[derive(Clone, Copy, Debug)]
pub struct Truncation {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Truncation {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> Result<Truncation> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::domain(format!("rel_tol must be in (0,1), got {rel_tol}")));
        }
        if !(abs_tol >= 0.0) {
            return Err(Error::domain(format!("abs_tol must be nonnegative, got {abs_tol}")));
        }
        if max_terms < 8 {
            return Err(Error::domain(format!("max_terms must be >= 8, got {max_terms}")));
        }
        Ok(Truncation { rel_tol, abs_tol, max_terms })
    }
}

impl Default for Truncation {
    fn default() -> Truncation {
        Truncation { rel_tol: 1e-15, abs_tol: 1e-30, max_terms: 200_000 }
    }
}

/// Fractional order alpha in (0, 1]; alpha = 1 admitted for
/// classical-limit checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelOrder {
    alpha: f64,
}

impl KernelOrder {
    pub fn new(alpha: f64) -> Result<KernelOrder> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain(format!("alpha must be in (0, 1], got {alpha}")));
        }
        Ok(KernelOrder { alpha })
    }

    #[inline]
    pub fn alpha(self) -> f64 {
        self.alpha
    }
}

/// ln Gamma(x) for x > 0; relative error below 1e-13 on [1e-3, 1e4].
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(lgamma_dd(Dd::from_f64(x)).to_f64())
}

/// Gamma(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(log_gamma(x)?.exp())
}

/// The coefficient c_n = prod_{j=0}^{n-1} Gamma(alpha(jm+l)+1) / Gamma(alpha(jm+l+1)+1),
/// computed in log space.
pub fn ml_coefficient(p: &MLParams, n: usize) -> Result<f64> {
    let mut acc = Dd::ZERO;
    for j in 0..n {
        let a = p.alpha * (j as f64 * p.m + p.l) + 1.0;
        let b = a + p.alpha;
        if a <= 0.0 || b <= 0.0 {
            return Err(Error::domain(format!(
                "Gamma argument nonpositive in c_{n} at j = {j} (a = {a})"
            )));
        }
        acc = acc.add(lgamma_dd(Dd::from_f64(a)).sub(lgamma_dd(Dd::from_f64(b))));
    }
    Ok(acc.exp().to_f64())
}

/// Outcome of a double-double series summation.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SeriesOutcome {
    pub value: f64,
    pub terms: usize,
    pub max_term: f64,
    /// Estimated absolute cancellation noise of `value`.
    pub noise: f64,
}

/// Overflow guard on intermediate term magnitude.
const TERM_OVERFLOW_GUARD: f64 = 1e300;

/// Absolute noise above which a double-double summation is reported as
/// failed rather than silently inaccurate.
pub(crate) const DD_NOISE_LIMIT: f64 = 1e-12;

/// -x^(1+alpha)/(1+alpha) in double-double, via exp((1+alpha) ln x);
/// the f64 `powf` rounding would otherwise leak into the weighted sums
/// at the scale of the largest term.
pub(crate) fn sigma_family_argument(alpha: f64, x: f64) -> Dd {
    debug_assert!(x > 0.0);
    let one_plus = Dd::from_f64(1.0).add_f64(alpha);
    Dd::from_f64(x).ln().mul(one_plus).exp().div(one_plus).neg()
}

/// Gamma argument a_n = alpha(n m + l) + 1 in double-double, from the
/// raw f64 parameters. For the kernel family this is NOT used: m = 1 +
/// 1/alpha carries an f64 rounding that the cancellation would amplify.
pub(crate) fn generic_gamma_argument(p: &MLParams, n: usize) -> Dd {
    Dd::from_f64(n as f64)
        .mul_f64(p.m)
        .add_f64(p.l)
        .mul_f64(p.alpha)
        .add_f64(1.0)
}

/// Kernel-family Gamma argument a_n = n(1+alpha) + alpha + 1 exactly in
/// double-double, bypassing the rounded m = 1 + 1/alpha.
pub(crate) fn sigma_family_gamma_argument(alpha: f64, n: usize) -> Dd {
    Dd::from_f64(1.0)
        .add_f64(alpha)
        .mul_f64(n as f64)
        .add_f64(alpha)
        .add_f64(1.0)
}

/// Sums sum_n weight(n) c_n z^n with the term recurrence
/// term_{n+1} = term_n * z * exp(lg(alpha(nm+l)+1) - lg(alpha(nm+l+1)+1)).
///
/// The weight must be produced in double-double: an f64-rounded weight
/// perturbs each term relatively by ~1e-16, which the cancellation then
/// amplifies by the largest-term magnitude.
///
/// Stops once |weighted term| <= rel_tol |partial| + abs_tol for two
/// consecutive terms (the series alternates for the kernel family, so a
/// single small term is not trusted).
pub(crate) fn sum_series_dd(
    alpha: f64,
    a_fn: &dyn Fn(usize) -> Dd,
    zd: Dd,
    tr: &Truncation,
    weight: &dyn Fn(usize) -> Dd,
) -> Result<SeriesOutcome> {
    let mut term = Dd::ONE;
    let mut sum = Dd::ZERO;
    let mut max_term = 0.0f64;
    let mut small_streak = 0u32;
    let mut n = 0usize;
    loop {
        let w = weight(n);
        let contrib = term.mul(w);
        sum = sum.add(contrib);
        max_term = max_term.max(contrib.hi.abs());

        if n + 1 >= tr.max_terms {
            return Err(Error::Convergence {
                message: format!("series did not converge within {} terms", tr.max_terms),
                partial: sum.to_f64(),
                last_term: contrib.to_f64(),
            });
        }

        let a = a_fn(n);
        let b = a.add_f64(alpha);
        if a.hi <= 0.0 || b.hi <= 0.0 {
            return Err(Error::domain(format!(
                "Gamma argument nonpositive in series term {n} (a = {})",
                a.to_f64()
            )));
        }
        let ratio = lgamma_dd(a).sub(lgamma_dd(b)).exp();
        term = term.mul(zd).mul(ratio);
        n += 1;

        if term.hi.abs() > TERM_OVERFLOW_GUARD {
            return Err(Error::Convergence {
                message: format!("series term exceeded overflow guard at n = {n}"),
                partial: sum.to_f64(),
                last_term: term.to_f64(),
            });
        }

        let next_w = weight(n).hi.abs();
        if term.hi.abs() * next_w <= tr.rel_tol * sum.hi.abs() + tr.abs_tol {
            small_streak += 1;
            if small_streak >= 2 && n >= 2 {
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    let value = sum.to_f64();
    let noise = max_term * n as f64 * 1e-27;
    Ok(SeriesOutcome { value, terms: n, max_term, noise })
}

/// Evaluates E_{alpha,m,l}(z) = sum_n c_n z^n.
pub fn ml_eval(p: &MLParams, z: f64, tr: &Truncation) -> Result<f64> {
    let out = sum_series_dd(p.alpha, &|n| generic_gamma_argument(p, n), Dd::from_f64(z), tr, &|_| {
        Dd::ONE
    })?;
    if out.noise > DD_NOISE_LIMIT {
        return Err(Error::Convergence {
            message: format!(
                "cancellation noise {:.2e} exceeds double-double resolution (max term {:.2e})",
                out.noise, out.max_term
            ),
            partial: out.value,
            last_term: 0.0,
        });
    }
    Ok(out.value)
}

/// Like [`ml_eval`] but also returns the number of terms summed.
pub fn ml_eval_with_terms(p: &MLParams, z: f64, tr: &Truncation) -> Result<(f64, usize)> {
    let out = sum_series_dd(p.alpha, &|n| generic_gamma_argument(p, n), Dd::from_f64(z), tr, &|_| {
        Dd::ONE
    })?;
    if out.noise > DD_NOISE_LIMIT {
        return Err(Error::Convergence {
            message: format!(
                "cancellation noise {:.2e} exceeds double-double resolution (max term {:.2e})",
                out.noise, out.max_term
            ),
            partial: out.value,
            last_term: 0.0,
        });
    }
    Ok((out.value, out.terms))
}

/// The self-similar kernel sigma_alpha(w) = w^(alpha-1) E_{alpha,1+1/alpha,1}(-w^(1+alpha)/(1+alpha)).
///
/// Diverges at w = 0+ for alpha < 1, so w must be positive.
pub fn sigma_alpha(a: KernelOrder, w: f64, tr: &Truncation) -> Result<f64> {
    if !(w > 0.0) {
        return Err(Error::domain(format!(
            "sigma_alpha requires w > 0 (sigma_alpha(0+) = +inf for alpha < 1), got {w}"
        )));
    }
    let alpha = a.alpha();
    MLParams::sigma_family(alpha)?;
    let zd = sigma_family_argument(alpha, w);
    let e = match sum_series_dd(alpha, &|n| sigma_family_gamma_argument(alpha, n), zd, tr, &|_| {
        Dd::ONE
    }) {
        Ok(out) if out.noise <= DD_NOISE_LIMIT => out.value,
        Ok(_) | Err(Error::Convergence { .. }) => crate::mpseries::ml_sigma_family_mp(alpha, w)?,
        Err(e) => return Err(e),
    };
    Ok(w.powf(alpha - 1.0) * e)
}

/// Predicted natural log of the largest series term for the kernel
/// family at argument magnitude |z|; used to size escalation precision.
pub(crate) fn sigma_family_ln_max_term(alpha: f64, abs_z: f64) -> f64 {
    if abs_z <= 1.0 {
        return 0.0;
    }
    alpha * abs_z.powf(1.0 / alpha) / (1.0 + alpha)
}
