//! Recompute the governing equations with independent discretizations
//! and print the residual report for one Dirichlet solution, plus the
//! kernel non-negativity scan.

use fracstefan::special::{KernelOrder, Truncation};
use fracstefan::stefan::{build_dirichlet, DirichletProblem, RootBracket};
use fracstefan::verify::{kernel_nonnegativity_scan, pde_residual, VerificationConfig};

fn main() -> fracstefan::Result<()> {
    let cfg = VerificationConfig::default();
    let p = DirichletProblem::new(KernelOrder::new(0.75)?, 1.0, 0.0)?;
    let sol = build_dirichlet(&p, &RootBracket::default(), &Truncation::default())?;
    let report = pde_residual(&sol, &cfg)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));

    let mut scan_cfg = cfg;
    scan_cfg.z_max = 12.0;
    let scan = kernel_nonnegativity_scan(&scan_cfg)?;
    println!(
        "kernel scan: min {} at z = {} (alpha = {})",
        scan.min_value, scan.argmin_z, scan.alpha_at_min
    );
    Ok(())
}
