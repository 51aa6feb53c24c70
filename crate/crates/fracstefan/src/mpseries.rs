//! Arbitrary-precision summation for the kernel-family series.
//!
//! For alpha well below 1 the alternating series behind
//! `sigma_alpha` has intermediate terms of magnitude
//! exp(alpha |z|^(1/alpha) / (1+alpha)) — at alpha = 1/4, w = 10 that is
//! ~10^3557 — while the sum itself is order one. No fixed-precision
//! float survives that cancellation, so this module sums in MPFR with
//! the precision sized from the predicted largest term.
//!
//! When alpha is (close to) a small rational p/q the coefficient ratio
//! Gamma(a_n)/Gamma(a_n + alpha) with a_n = n(1+alpha) + alpha + 1
//! recurs with period q up to an integer argument shift of p + q, so
//! after 2q Gamma evaluations every later ratio is a short rational
//! update. Otherwise each ratio falls back to a pair of ln-Gamma calls.

use crate::error::{Error, Result};
use crate::special::sigma_family_ln_max_term;
use rug::ops::Pow;
use rug::Float;

const LN_2: f64 = std::f64::consts::LN_2;

/// Weight applied to term n of the kernel-family series; covers the
/// three members actually needed (the kernel itself and its two
/// integrals).
#[derive(Clone, Copy, Debug)]
pub(crate) enum SeriesWeight {
    /// E itself: weight 1.
    One,
    /// Cumulative kernel integral f: weight 1/((n+1)(1+alpha) - 1).
    FDenom,
    /// First moment integral: weight 1/(n+1).
    MomentDenom,
}

impl SeriesWeight {
    fn apply(self, prec: u32, alpha: &Float, n: usize) -> Float {
        match self {
            SeriesWeight::One => Float::with_val(prec, 1u32),
            SeriesWeight::FDenom => {
                let d = Float::with_val(prec, n as u32 + 1) * Float::with_val(prec, alpha + 1u32)
                    - 1u32;
                Float::with_val(prec, 1u32) / d
            }
            SeriesWeight::MomentDenom => Float::with_val(prec, 1u32) / (n as u32 + 1),
        }
    }
}

/// alpha as an exact small rational, if one is within 1e-14.
fn small_rational(alpha: f64) -> Option<(u32, u32)> {
    // Continued-fraction convergents of alpha with denominator <= 64.
    let (mut h0, mut h1) = (1i64, 0i64);
    let (mut k0, mut k1) = (0i64, 1i64);
    let mut x = alpha;
    for _ in 0..32 {
        let a = x.floor();
        let h = a as i64 * h0 + h1;
        let k = a as i64 * k0 + k1;
        if k > 64 {
            break;
        }
        if k > 0 && (alpha - h as f64 / k as f64).abs() <= 1e-14 {
            return Some((h as u32, k as u32));
        }
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        let frac = x - a;
        if frac < 1e-12 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}

enum Ratios {
    /// Residue classes mod q: (current Gamma argument a, current ratio).
    Stride { base: Vec<(Float, Float)>, shift: u32, q: usize },
    /// ln Gamma(a) - ln Gamma(a + alpha) per term.
    Generic { alpha: Float, one_plus_alpha: Float },
}

/// One node of a batched summation.
struct Node {
    prec: u32,
    z: Float,
    term: Float,
    sums: Vec<Float>,
    tol: Float,
    streak: u32,
    done: bool,
}

/// Sums sum_n weight_k(n) c_n z_i^n for z_i = -w_i^(1+alpha)/(1+alpha)
/// for every node w_i and every requested weight, sharing the term
/// sequence and the coefficient-ratio recurrence across all of them.
pub(crate) fn sigma_family_sums_mp(
    alpha: f64,
    ws: &[f64],
    weights: &[SeriesWeight],
) -> Result<Vec<Vec<f64>>> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!("alpha must be in (0,1], got {alpha}")));
    }
    if ws.iter().any(|w| !(*w > 0.0)) {
        return Err(Error::domain("all nodes must be positive".to_string()));
    }
    if ws.is_empty() {
        return Ok(Vec::new());
    }

    // Per-node precision from the predicted largest term; shared tables
    // run at the maximum.
    let precs: Vec<u32> = ws
        .iter()
        .map(|&w| {
            let abs_z = w.powf(1.0 + alpha) / (1.0 + alpha);
            let ln_max = sigma_family_ln_max_term(alpha, abs_z);
            ((ln_max / LN_2).ceil() as u32).saturating_add(180)
        })
        .collect();
    let max_prec = *precs.iter().max().unwrap();
    if max_prec > 2_000_000 {
        return Err(Error::Convergence {
            message: format!(
                "required precision {max_prec} bits is beyond the configured budget"
            ),
            partial: 0.0,
            last_term: 0.0,
        });
    }

    let rational = small_rational(alpha);
    let alpha_mp = match rational {
        Some((p, q)) => Float::with_val(max_prec, p) / q,
        None => Float::with_val(max_prec, alpha),
    };
    let one_plus = Float::with_val(max_prec, &alpha_mp + 1u32);

    let mut ratios = match rational {
        Some((p, q)) => {
            let mut base = Vec::with_capacity(q as usize);
            for j in 0..q {
                let a = Float::with_val(max_prec, j) * &one_plus
                    + Float::with_val(max_prec, &alpha_mp + 1u32);
                let g1 = a.clone().gamma();
                let g2 = Float::with_val(max_prec, &a + &alpha_mp).gamma();
                base.push((a, g1 / g2));
            }
            Ratios::Stride { base, shift: p + q, q: q as usize }
        }
        None => Ratios::Generic {
            alpha: alpha_mp.clone(),
            one_plus_alpha: one_plus.clone(),
        },
    };

    let mut nodes: Vec<Node> = ws
        .iter()
        .zip(&precs)
        .map(|(&w, &prec)| {
            let wf = Float::with_val(prec, w);
            let z = -(wf.pow(&one_plus) / Float::with_val(prec, &one_plus + 0u32));
            Node {
                prec,
                z,
                term: Float::with_val(prec, 1u32),
                sums: vec![Float::with_val(prec, 0u32); weights.len()],
                tol: Float::with_val(prec, 2f64).pow(-(prec as i32) + 40),
                streak: 0,
                done: false,
            }
        })
        .collect();

    let max_terms = 400_000usize;
    let mut n = 0usize;
    let mut live = nodes.len();
    while live > 0 {
        if n >= max_terms {
            return Err(Error::Convergence {
                message: format!("arbitrary-precision series did not converge within {max_terms} terms"),
                partial: 0.0,
                last_term: 0.0,
            });
        }
        let r = ratios.step(max_prec, &alpha_mp, n);
        for node in nodes.iter_mut().filter(|nd| !nd.done) {
            for (k, weight) in weights.iter().enumerate() {
                let w = weight.apply(node.prec, &alpha_mp, n);
                node.sums[k] += Float::with_val(node.prec, &node.term * &w);
            }
            node.term *= &node.z;
            node.term *= &r;
            let small = node.term.clone().abs() < node.tol;
            if small && n >= 2 {
                node.streak += 1;
                if node.streak >= 2 {
                    node.done = true;
                    live -= 1;
                }
            } else {
                node.streak = 0;
            }
        }
        n += 1;
    }
    Ok(nodes
        .iter()
        .map(|nd| nd.sums.iter().map(|s| s.to_f64()).collect())
        .collect())
}

/// Single-weight convenience wrapper around [`sigma_family_sums_mp`].
pub(crate) fn sigma_family_sum_mp(
    alpha: f64,
    ws: &[f64],
    weight: SeriesWeight,
) -> Result<Vec<f64>> {
    Ok(sigma_family_sums_mp(alpha, ws, &[weight])?
        .into_iter()
        .map(|mut v| v.remove(0))
        .collect())
}

impl Ratios {
    /// Ratio for term n and in-place advance of its residue class.
    fn step(&mut self, prec: u32, alpha: &Float, n: usize) -> Float {
        match self {
            Ratios::Stride { base, shift, q } => {
                let j = n % *q;
                let (a, r) = &mut base[j];
                let out = r.clone();
                let mut num = Float::with_val(prec, 1u32);
                let mut den = Float::with_val(prec, 1u32);
                for i in 0..*shift {
                    num *= Float::with_val(prec, &*a + i);
                    den *= Float::with_val(prec, &*a + alpha) + i;
                }
                *r *= num / den;
                *a += *shift;
                out
            }
            Ratios::Generic { alpha, one_plus_alpha } => {
                let a = Float::with_val(prec, n as u32) * &*one_plus_alpha
                    + Float::with_val(prec, &*alpha + 1u32);
                let l1 = a.clone().ln_gamma();
                let l2 = Float::with_val(prec, &a + &*alpha).ln_gamma();
                Float::with_val(prec, &l1 - &l2).exp()
            }
        }
    }
}

/// E_{alpha,1+1/alpha,1}(-w^(1+alpha)/(1+alpha)) at a single node.
pub(crate) fn ml_sigma_family_mp(alpha: f64, w: f64) -> Result<f64> {
    Ok(sigma_family_sum_mp(alpha, &[w], SeriesWeight::One)?[0])
}
