//! Discretized fractional operators on [0, x], independent of the
//! series representations: product-integration Riemann-Liouville
//! integral, L1 Caputo derivative, and a differenced Riemann-Liouville
//! derivative. These are the verifier's tools for recomputing the
//! governing equations without trusting the closed forms under test.

use crate::error::{Error, Result};
use crate::special::{gamma, log_gamma};

/// Strictly increasing sample grid starting at 0.
#[derive(Clone, Debug)]
pub struct Grid1D {
    nodes: Vec<f64>,
}

impl Grid1D {
    pub fn new(nodes: Vec<f64>) -> Result<Grid1D> {
        if nodes.len() < 3 {
            return Err(Error::domain("grid needs at least 3 nodes".to_string()));
        }
        if nodes[0] != 0.0 {
            return Err(Error::domain(format!("grid must start at 0, got {}", nodes[0])));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain("grid nodes must be strictly increasing".to_string()));
        }
        Ok(Grid1D { nodes })
    }

    pub fn uniform(x_max: f64, n: usize) -> Result<Grid1D> {
        if !(x_max > 0.0) {
            return Err(Error::domain(format!("x_max must be positive, got {x_max}")));
        }
        Grid1D::new((0..=n).map(|i| x_max * i as f64 / n as f64).collect())
    }

    /// Nodes clustered at the origin: x_i = x_max (i/n)^grading. Used
    /// when the integrand behaves like x^mu with mu < 1 near zero.
    pub fn graded(x_max: f64, n: usize, grading: f64) -> Result<Grid1D> {
        if !(x_max > 0.0) {
            return Err(Error::domain(format!("x_max must be positive, got {x_max}")));
        }
        if !(grading >= 1.0) {
            return Err(Error::domain(format!("grading must be >= 1, got {grading}")));
        }
        Grid1D::new(
            (0..=n)
                .map(|i| x_max * (i as f64 / n as f64).powf(grading))
                .collect(),
        )
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn last(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// Samples a function on the grid.
    pub fn sample(&self, f: &dyn Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }
}

fn check_samples(grid: &Grid1D, values: &[f64], x: f64) -> Result<()> {
    if values.len() != grid.nodes.len() {
        return Err(Error::domain(format!(
            "expected {} samples, got {}",
            grid.nodes.len(),
            values.len()
        )));
    }
    if !(x > 0.0 && x <= grid.last() * (1.0 + 1e-12)) {
        return Err(Error::domain(format!(
            "evaluation point {x} outside grid coverage (0, {}]",
            grid.last()
        )));
    }
    Ok(())
}

/// Riemann-Liouville integral I^beta f(x) = (1/Gamma(beta)) int_0^x
/// f(p)(x-p)^(beta-1) dp, with f piecewise linear on the grid and the
/// singular weight integrated exactly per segment.
pub fn rl_integral_num(grid: &Grid1D, values: &[f64], beta: f64, x: f64) -> Result<f64> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::domain(format!("beta must be in (0, 1], got {beta}")));
    }
    check_samples(grid, values, x)?;
    let nodes = &grid.nodes;
    let mut acc = 0.0f64;
    for i in 0..nodes.len() - 1 {
        let lo = nodes[i];
        if lo >= x {
            break;
        }
        let hi = nodes[i + 1].min(x);
        let u2 = x - lo; // u = x - p decreases across the segment
        let u1 = x - hi;
        let m0 = (u2.powf(beta) - u1.powf(beta)) / beta;
        let m1 = (u2.powf(1.0 + beta) - u1.powf(1.0 + beta)) / (1.0 + beta);
        let slope = (values[i + 1] - values[i]) / (nodes[i + 1] - nodes[i]);
        // int (p - lo)(x-p)^(beta-1) dp = (x - lo) m0 - m1
        acc += values[i] * m0 + slope * ((x - lo) * m0 - m1);
    }
    Ok(acc / gamma(beta)?)
}

/// Caputo derivative by the L1 scheme: (1/Gamma(1-alpha)) int_0^x
/// f'(p)(x-p)^(-alpha) dp with f' piecewise constant per segment.
pub fn caputo_num(grid: &Grid1D, values: &[f64], alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha must be in (0, 1), got {alpha}")));
    }
    check_samples(grid, values, x)?;
    let nodes = &grid.nodes;
    let om = 1.0 - alpha;
    let mut acc = 0.0f64;
    for i in 0..nodes.len() - 1 {
        let lo = nodes[i];
        if lo >= x {
            break;
        }
        let hi = nodes[i + 1].min(x);
        let u2 = x - lo;
        let u1 = x - hi;
        let slope = (values[i + 1] - values[i]) / (nodes[i + 1] - nodes[i]);
        acc += slope * (u2.powf(om) - u1.powf(om)) / om;
    }
    Ok(acc / gamma(om)?)
}

/// Riemann-Liouville derivative D^alpha f(x) = d/dx I^(1-alpha) f(x),
/// via a central difference of the product-integrated integral with
/// step `h_diff`. The grid must cover x + h_diff.
pub fn rl_derivative_num(
    grid: &Grid1D,
    values: &[f64],
    alpha: f64,
    x: f64,
    h_diff: f64,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha must be in (0, 1), got {alpha}")));
    }
    if !(h_diff > 0.0 && h_diff < x) {
        return Err(Error::domain(format!("h_diff must be in (0, x), got {h_diff}")));
    }
    let up = rl_integral_num(grid, values, 1.0 - alpha, x + h_diff)?;
    let dn = rl_integral_num(grid, values, 1.0 - alpha, x - h_diff)?;
    Ok((up - dn) / (2.0 * h_diff))
}

/// Closed-form fractional integral of a power:
/// I^beta p^mu (x) = Gamma(mu+1)/Gamma(mu+beta+1) x^(mu+beta), mu > -1.
pub fn power_rule_integral(beta: f64, mu: f64, x: f64) -> Result<f64> {
    if !(mu > -1.0) {
        return Err(Error::domain(format!("power rule needs mu > -1, got {mu}")));
    }
    if !(beta > 0.0) || !(x >= 0.0) {
        return Err(Error::domain("beta must be positive and x nonnegative".to_string()));
    }
    let lg = log_gamma(mu + 1.0)? - log_gamma(mu + beta + 1.0)?;
    Ok(lg.exp() * x.powf(mu + beta))
}

/// Closed-form Riemann-Liouville derivative of a power:
/// D^alpha p^mu (x) = Gamma(mu+1)/Gamma(mu-alpha+1) x^(mu-alpha),
/// identically zero when mu = alpha - 1 (the Gamma pole in the
/// denominator kills the term).
pub fn power_rule_rl_derivative(alpha: f64, mu: f64, x: f64) -> Result<f64> {
    if !(mu > -1.0) {
        return Err(Error::domain(format!("power rule needs mu > -1, got {mu}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) || !(x > 0.0) {
        return Err(Error::domain("alpha must be in (0,1) and x positive".to_string()));
    }
    let denom_arg = mu - alpha + 1.0;
    if (denom_arg - denom_arg.round()).abs() < 1e-14 && denom_arg.round() <= 0.0 {
        return Ok(0.0);
    }
    let lg = log_gamma(mu + 1.0)? - log_gamma(denom_arg)?;
    Ok(lg.exp() * x.powf(mu - alpha))
}
