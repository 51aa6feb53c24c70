//! Discrete fractional operators against their power rules: the
//! Riemann-Liouville integral by product integration and the Caputo
//! derivative by the L1 scheme, both on graded grids.

use fracstefan::frac_ops::{
    caputo_num, power_rule_integral, power_rule_rl_derivative, rl_integral_num, Grid1D,
};
use fracstefan::special::gamma;

fn main() -> fracstefan::Result<()> {
    let g = Grid1D::graded(1.0, 800, 2.0)?;
    let mu = 1.2;
    let vals = g.sample(&|x| x.powf(mu));

    let beta = 0.5;
    let got = rl_integral_num(&g, &vals, beta, 1.0)?;
    let want = power_rule_integral(beta, mu, 1.0)?;
    println!("I^{beta} x^{mu} at 1: {got} (closed form {want}, err {:.2e})", (got - want).abs());

    let alpha = 0.5;
    let got = caputo_num(&g, &vals, alpha, 1.0)?;
    let want = gamma(mu + 1.0)? / gamma(mu + 1.0 - alpha)?;
    println!("D^{alpha} x^{mu} at 1: {got} (closed form {want}, err {:.2e})", (got - want).abs());

    // the exact-zero case of the RL power rule: D^alpha x^(alpha-1) = 0
    let zero = power_rule_rl_derivative(0.5, -0.5, 1.0)?;
    println!("RL D^0.5 x^(-0.5) at 1 = {zero} (exactly zero by the power rule)");
    Ok(())
}
