//! Solve the temperature-driven (Dirichlet) free-boundary problem and
//! print the front coefficient, profile constants and a short profile.

use fracstefan::special::{KernelOrder, Truncation};
use fracstefan::stefan::{build_dirichlet, DirichletProblem, RootBracket};

fn main() -> fracstefan::Result<()> {
    let tr = Truncation::default();
    for alpha in [0.5, 0.75, 1.0] {
        let p = DirichletProblem::new(KernelOrder::new(alpha)?, 1.0, 0.0)?;
        let sol = build_dirichlet(&p, &RootBracket::default(), &tr)?;
        println!(
            "alpha = {alpha}: xi = {}, A = {}, B = {}",
            sol.front_coeff, sol.a, sol.b
        );
        let t = 1.0;
        let s = sol.front_position(t)?;
        for i in 0..=4 {
            let x = s * i as f64 / 4.0;
            println!("  u({x:.4}, {t}) = {}", sol.evaluate(x, t, &tr)?);
        }
        println!("  stefan residual at t = 1: {}", sol.stefan_residual(t, &tr)?);
    }
    Ok(())
}
