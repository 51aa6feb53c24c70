//! Integral-equation continuation of the kernel sigma_alpha.
//!
//! Applying the fractional power rule to the defining equation
//! RL D^alpha sigma = -z sigma/(1+alpha) and inverting the derivative
//! gives the weakly singular second-kind Volterra equation
//!
//!   sigma(z) = z^(alpha-1)
//!            - 1/((1+alpha) Gamma(alpha)) int_0^z p sigma(p) (z-p)^(alpha-1) dp.
//!
//! Marching it on a uniform grid with product integration (piecewise-
//! linear g(p) = p sigma(p) against exact moments of the singular
//! weight) costs O(N^2) plain f64 work and never meets the series
//! cancellation, so it covers small alpha and large z where even the
//! arbitrary-precision series becomes unaffordable. The march is seeded
//! from series values on z <= 1 to avoid startup error from the p^alpha
//! behaviour of g near zero.

use crate::error::{Error, Result};
use crate::special::{gamma, sigma_alpha, KernelOrder, Truncation};

/// sigma_alpha sampled on the uniform grid z_i = i h, i = 0..=n.
pub struct KernelMarch {
    pub alpha: f64,
    pub h: f64,
    /// values[i] = sigma_alpha(i h); values[0] is +inf for alpha < 1.
    pub values: Vec<f64>,
}

/// Marches the Volterra equation to z_max with step h.
pub fn march_sigma(a: KernelOrder, h: f64, z_max: f64, tr: &Truncation) -> Result<KernelMarch> {
    let alpha = a.alpha();
    if !(h > 0.0 && h < 0.5) {
        return Err(Error::domain(format!("march step must be in (0, 0.5), got {h}")));
    }
    if !(z_max > h) {
        return Err(Error::domain(format!("z_max must exceed the step, got {z_max}")));
    }
    let n = (z_max / h).ceil() as usize;
    if n > 2_000_000 {
        return Err(Error::domain(format!("march grid of {n} nodes is beyond the budget")));
    }
    let kconst = 1.0 / ((1.0 + alpha) * gamma(alpha)?);
    let h_alpha = h.powf(alpha);

    // Panel weights by distance d = n - i >= 1:
    //   contribution of panel [z_i, z_{i+1}] to int_0^{z_n} g (z_n-p)^(a-1) dp
    //   = g_i A_d + g_{i+1} B_d,
    //   B_d = h^a [d M0_d - (d^(1+a) - (d-1)^(1+a))/(1+a)],  A_d = h^a M0_d - B_d,
    //   M0_d = (d^a - (d-1)^a)/a.
    let mut aw = vec![0.0f64; n + 1];
    let mut bw = vec![0.0f64; n + 1];
    for d in 1..=n {
        let df = d as f64;
        let m0 = (df.powf(alpha) - (df - 1.0).powf(alpha)) / alpha;
        let m1 = (df.powf(1.0 + alpha) - (df - 1.0).powf(1.0 + alpha)) / (1.0 + alpha);
        let b = h_alpha * (df * m0 - m1);
        aw[d] = h_alpha * m0 - b;
        bw[d] = b;
    }

    let mut sigma = vec![0.0f64; n + 1];
    let mut g = vec![0.0f64; n + 1]; // g_i = z_i sigma_i; g_0 = 0 exactly
    sigma[0] = if alpha < 1.0 { f64::INFINITY } else { 1.0 };

    // Seed from the series where it is cheap and certain.
    let seed_end = ((1.0 / h).floor() as usize).min(n);
    for i in 1..=seed_end {
        let z = i as f64 * h;
        let s = sigma_alpha(a, z, tr)?;
        sigma[i] = s;
        g[i] = z * s;
    }

    // Implicit last-panel coefficient of g_n: B_1 = h^a / (a (a+1)).
    let b1 = h_alpha / (alpha * (alpha + 1.0));
    for i in (seed_end + 1).max(1)..=n {
        let z = i as f64 * h;
        // history part: all panels, with the unknown g_i excluded
        let mut hist = 0.0f64;
        for j in 0..i {
            let d = i - j;
            hist += g[j] * aw[d];
            if d > 1 {
                hist += g[j + 1] * bw[d];
            }
        }
        let rhs = z.powf(alpha - 1.0) - kconst * hist;
        let s = rhs / (1.0 + kconst * z * b1);
        sigma[i] = s;
        g[i] = z * s;
    }

    Ok(KernelMarch { alpha, h, values: sigma })
}

impl KernelMarch {
    /// Linear interpolation between grid nodes; z must lie in coverage.
    pub fn value_at(&self, z: f64) -> Result<f64> {
        let top = (self.values.len() - 1) as f64 * self.h;
        if !(z > 0.0 && z <= top) {
            return Err(Error::domain(format!("z = {z} outside marched range (0, {top}]")));
        }
        let idx = (z / self.h).floor() as usize;
        let idx = idx.min(self.values.len() - 2);
        let frac = z / self.h - idx as f64;
        Ok(self.values[idx] * (1.0 - frac) + self.values[idx + 1] * frac)
    }

    /// Minimum kernel value and its location over z >= from.
    pub fn min_from(&self, from: f64) -> (f64, f64) {
        let start = ((from / self.h).ceil() as usize).max(1);
        let mut best = (f64::INFINITY, 0.0);
        for (i, &v) in self.values.iter().enumerate().skip(start) {
            if v < best.0 {
                best = (v, i as f64 * self.h);
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr() -> Truncation {
        Truncation::default()
    }

    #[test]
    fn march_matches_frozen_values() {
        // (alpha, z, sigma) frozen multi-precision references
        let cases = [
            (0.25, 5.0, 0.027738687457326613134),
            (0.25, 10.0, 0.0061079585519394351923),
            (0.5, 5.0, 0.022957469285407396259),
            (0.5, 10.0, 0.0037197528836478522389),
            (0.9, 10.0, 0.00056617560149068319531),
        ];
        for (alpha, z, want) in cases {
            let a = KernelOrder::new(alpha).unwrap();
            let m = march_sigma(a, 1e-3, z + 0.01, &tr()).unwrap();
            let got = m.value_at(z).unwrap();
            assert!(
                (got - want).abs() < 2e-6,
                "alpha={alpha} z={z}: got {got} want {want}"
            );
        }
    }

    #[test]
    fn march_positive_on_range() {
        for &alpha in &[0.15f64, 0.5, 0.85] {
            let a = KernelOrder::new(alpha).unwrap();
            let m = march_sigma(a, 2e-3, 20.0, &tr()).unwrap();
            let (min, at) = m.min_from(m.h);
            assert!(min > 0.0, "alpha={alpha}: min {min} at z={at}");
        }
    }

    #[test]
    fn classical_march_is_gaussian() {
        let a = KernelOrder::new(1.0).unwrap();
        let m = march_sigma(a, 1e-3, 6.0, &tr()).unwrap();
        for &z in &[1.5f64, 3.0, 5.0] {
            let got = m.value_at(z).unwrap();
            let want = (-(z / 2.0) * (z / 2.0)).exp();
            assert!((got - want).abs() < 1e-6, "z={z}: {got} vs {want}");
        }
    }

    #[test]
    fn bad_inputs_rejected() {
        let a = KernelOrder::new(0.5).unwrap();
        assert!(march_sigma(a, 0.0, 5.0, &tr()).is_err());
        assert!(march_sigma(a, 1e-3, 1e-4, &tr()).is_err());
        let m = march_sigma(a, 1e-2, 2.0, &tr()).unwrap();
        assert!(m.value_at(3.0).is_err());
        assert!(m.value_at(0.0).is_err());
    }
}
