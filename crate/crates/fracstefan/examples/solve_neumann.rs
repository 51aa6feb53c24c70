//! Solve the flux-driven (Neumann) free-boundary problem: the fixed
//! face carries the flux g0 t^(-alpha/(1+alpha)) and the front
//! temperature is gm.

use fracstefan::special::{KernelOrder, Truncation};
use fracstefan::stefan::{build_neumann, NeumannProblem, RootBracket};

fn main() -> fracstefan::Result<()> {
    let tr = Truncation::default();
    for alpha in [0.5, 0.75, 1.0] {
        let p = NeumannProblem::new(KernelOrder::new(alpha)?, 1.0, 0.0)?;
        let sol = build_neumann(&p, &RootBracket::default(), &tr)?;
        println!(
            "alpha = {alpha}: eta = {}, A = {}, B = {}",
            sol.front_coeff, sol.a, sol.b
        );
        for t in [0.5, 1.0, 2.0] {
            println!(
                "  s({t}) = {}, sdot({t}) = {}, flux at 0 = {}",
                sol.front_position(t)?,
                sol.front_speed(t)?,
                sol.caputo(0.0, t, &tr)?
            );
        }
    }
    Ok(())
}
