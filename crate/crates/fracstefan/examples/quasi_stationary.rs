//! The quasi-stationary closed-form solution: the profile solves the
//! stationary equation d/dx D^alpha u = 0 while the front still obeys
//! the Stefan condition exactly.

use fracstefan::special::{KernelOrder, Truncation};
use fracstefan::stefan::quasi_stationary;

fn main() -> fracstefan::Result<()> {
    let tr = Truncation::default();
    for alpha in [0.25, 0.5, 1.0] {
        let sol = quasi_stationary(KernelOrder::new(alpha)?)?;
        println!("alpha = {alpha}: s(t) = {} t^(1/{})", sol.front_coeff, 1.0 + alpha);
        for t in [1.0, 4.0] {
            let s = sol.front_position(t)?;
            println!(
                "  t = {t}: s = {s}, u(0,t) = {}, u(s,t) = {:.3e}, stefan residual = {:.3e}",
                sol.evaluate(0.0, t, &tr)?,
                sol.evaluate(s, t, &tr)?,
                sol.stefan_residual(t, &tr)?
            );
        }
    }
    Ok(())
}
