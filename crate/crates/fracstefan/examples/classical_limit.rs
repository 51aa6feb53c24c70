//! Watch the fractional objects converge to their classical
//! counterparts as alpha -> 1: the profile integral approaches
//! sqrt(pi) erf(x/2) and the front coefficients approach the classical
//! transcendental roots.

use fracstefan::verify::{classical_limit_report, VerificationConfig};

fn main() -> fracstefan::Result<()> {
    let rows = classical_limit_report(&VerificationConfig::default())?;
    println!("{:>7} {:>14} {:>14} {:>14}", "alpha", "sup|f-erf|", "|xi-xi_1|", "|eta-eta_1|");
    for r in rows {
        println!(
            "{:>7} {:>14.6e} {:>14.6e} {:>14.6e}",
            r.alpha, r.f_gap_sup, r.xi_gap, r.eta_gap
        );
    }
    Ok(())
}
